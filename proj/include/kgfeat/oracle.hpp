#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kgfeat/config.hpp"
#include "kgfeat/graph.hpp"
#include "kgfeat/ontology.hpp"
#include "kgfeat/pathfeat.hpp"
#include "kgfeat/support.hpp"

namespace kgfeat {

/// Brute-force reference for small inputs: per-seed BFS distances, paths
/// enumerated iteration by iteration, pattern supports recomputed by direct
/// position-wise capture tests over the alive paths, pairwise most-specific
/// retention (no prefix tree), and literal (C1)-(C3) selection. Exists to
/// cross-check the miner and to let users validate configurations; everything
/// here favors obviousness over speed.
class ReferenceMiner {
public:
    struct Result {
        // Neighbor features: vertex -> seeds reaching it (all reached, not
        // just the interesting ones).
        std::map<VertexId, SupportSet> reached;
        std::vector<VertexId> interesting_neighbors;
        std::map<VertexId, SupportSet> type_supports;  // kTopClass included
        std::vector<VertexId> interesting_types;
        // Path features in F with their supports.
        std::map<std::vector<Atom>, SupportSet> features;
    };

    ReferenceMiner(const CanonicalGraph& g, const OntologyIndex& ont, const MiningConfig& cfg,
                   const SymbolTable& vertices, const SymbolTable& predicates)
        : g_(g), ont_(ont), cfg_(cfg), seed_count_(static_cast<std::uint32_t>(g.seeds().size())) {
        UriMatcher pred_bl = cfg.effective_predicate_blacklist();
        pred_blacklisted_.assign(predicates.size(), 0);
        for (PredicateId p = 0; p < predicates.size(); ++p)
            pred_blacklisted_[p] = pred_bl.matches(predicates.resolve(p)) ? 1 : 0;
        exp_blocked_ = ont.compile(cfg.b_exp_types, g, vertices);
        gen_blocked_ = ont.compile(cfg.b_gen_types, g, vertices);
        blocked_.assign(g.vertex_count(), 0);
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            blocked_[v] = ont.is_instance_of_blacklisted(v, exp_blocked_) ? 1 : 0;
        hub_.assign(g.vertex_count(), 0);
        for (VertexId v = 0; v < g.vertex_count(); ++v) hub_[v] = naive_degree(v) > cfg.d ? 1 : 0;
        compute_distances();
    }

    Result run() {
        Result res;
        // Neighbors: v is reached by s iff 1 <= dist(s, v) <= k.
        for (std::uint32_t s = 0; s < seed_count_; ++s)
            for (VertexId v = 0; v < g_.vertex_count(); ++v) {
                std::uint32_t d = dist_[s][v];
                if (d >= 1 && d <= cfg_.k) {
                    auto [it, fresh] = res.reached.try_emplace(v, SupportSet(seed_count_));
                    it->second.set(s);
                }
            }
        for (const auto& [v, supp] : res.reached) {
            std::size_t c = supp.count();
            if (c >= cfg_.l_min && c <= cfg_.l_max) res.interesting_neighbors.push_back(v);
        }
        // Types over the full reached set.
        for (const auto& [v, supp] : res.reached)
            for (VertexId cls : ont_.generalizations(v, cfg_.t, gen_blocked_)) {
                auto [it, fresh] = res.type_supports.try_emplace(cls, SupportSet(seed_count_));
                it->second |= supp;
            }
        std::set<VertexId> interesting;
        for (const auto& [cls, supp] : res.type_supports)
            if (supp.count() >= cfg_.l_min) {
                res.interesting_types.push_back(cls);
                interesting.insert(cls);
            }
        if (seed_count_ == 0 || cfg_.l_min > seed_count_) return res;

        mine_paths(res, interesting);
        return res;
    }

private:
    struct OPath {
        std::vector<Atom> atoms;
        VertexId last;
        SupportSet support;
    };

    std::uint64_t naive_degree(VertexId v) const {
        std::uint64_t deg = 0;
        for (const auto& [p, w] : g_.out(v))
            if (!pred_blacklisted_[p]) ++deg;
        if (cfg_.u)
            for (const auto& [p, w] : g_.in(v))
                if (!pred_blacklisted_[p] && w != v) ++deg;
        return deg;
    }

    // Plain one-source-at-a-time BFS under the traversal constraints. The
    // root's own slot stays unset until (and unless) a cycle reaches back to
    // it, mirroring the main BFS.
    void compute_distances() {
        const std::uint32_t inf = UINT32_MAX;
        dist_.assign(seed_count_, std::vector<std::uint32_t>(g_.vertex_count(), inf));
        for (std::uint32_t s = 0; s < seed_count_; ++s) {
            VertexId root = g_.seeds()[s];
            auto& dist = dist_[s];
            std::deque<VertexId> frontier{root};
            std::uint32_t level = 0;
            while (!frontier.empty() && level < cfg_.k) {
                std::deque<VertexId> next;
                for (VertexId v : frontier) {
                    if (hub_[v]) continue;
                    auto relax = [&](PredicateId p, VertexId w) {
                        if (pred_blacklisted_[p] || blocked_[w]) return;
                        if (dist[w] != inf) return;
                        dist[w] = level + 1;
                        next.push_back(w);
                    };
                    for (const auto& [p, w] : g_.out(v)) relax(p, w);
                    if (cfg_.u)
                        for (const auto& [p, w] : g_.in(v)) relax(p, w);
                }
                frontier = std::move(next);
                ++level;
            }
        }
    }

    bool arc_exists(VertexId from, const Atom& a) const {
        const auto& adj = a.dir == Dir::forward ? g_.out(from) : g_.in(from);
        for (const auto& [p, w] : adj)
            if (p == a.predicate && w == a.element.id) return true;
        return false;
    }

    /// Support of a path: the seeds it was expanded from. Everything past the
    /// first atom is seed-independent, so only the first arc (plus the h=1
    /// expansion gates) decides membership.
    SupportSet path_support(const std::vector<Atom>& atoms) const {
        SupportSet supp(seed_count_);
        const Atom& first = atoms.front();
        for (std::uint32_t s = 0; s < seed_count_; ++s) {
            VertexId root = g_.seeds()[s];
            if (hub_[root]) continue;
            if (!arc_exists(root, first)) continue;
            if (blocked_[first.element.id] || pred_blacklisted_[first.predicate]) continue;
            if (dist_[s][first.element.id] != 1) continue;  // anti-loop at h=1
            supp.set(s);
        }
        return supp;
    }

    bool element_captures(const Element& pat, const Element& concrete) const {
        if (pat == concrete) return true;
        if (!pat.is_class()) return false;
        return ont_.instantiates(concrete.id, pat.id, cfg_.t, gen_blocked_);
    }

    bool captures(const std::vector<Atom>& pattern, const std::vector<Atom>& path) const {
        if (pattern.size() != path.size()) return false;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            if (pattern[i].predicate != path[i].predicate || pattern[i].dir != path[i].dir)
                return false;
            if (!element_captures(pattern[i].element, path[i].element)) return false;
        }
        return true;
    }

    // Local subsumption test mirroring the definition: same predicate and
    // direction position-wise; an individual is below classes it instantiates
    // within t, a class below superclasses within t-1 hops, everything below
    // top.
    bool element_below(const Element& a, const Element& b) const {
        if (a == b) return true;
        if (!b.is_class()) return false;
        if (b.id == kTopClass) return !gen_blocked_.contains(kTopClass);
        if (!a.is_class()) return ont_.instantiates(a.id, b.id, cfg_.t, gen_blocked_);
        if (cfg_.t == 0) return false;
        std::unordered_set<VertexId> visited{a.id};
        std::deque<VertexId> frontier{a.id};
        for (std::uint32_t hop = 1; hop + 1 <= cfg_.t && !frontier.empty(); ++hop) {
            std::deque<VertexId> next;
            for (VertexId c : frontier)
                for (VertexId s : ont_.direct_superclasses(c))
                    if (visited.insert(s).second) {
                        if (s == b.id) return true;
                        next.push_back(s);
                    }
            frontier = std::move(next);
        }
        return false;
    }

    bool more_specific(const std::vector<Atom>& p1, const std::vector<Atom>& p2) const {
        if (p1.size() != p2.size()) return false;
        for (std::size_t i = 0; i < p1.size(); ++i) {
            if (p1[i].predicate != p2[i].predicate || p1[i].dir != p2[i].dir) return false;
            if (!element_below(p1[i].element, p2[i].element)) return false;
        }
        return true;
    }

    void mine_paths(Result& res, const std::set<VertexId>& interesting) {
        std::map<std::vector<Atom>, SupportSet> selected;
        std::vector<OPath> alive;  // virtual seed roots, one per non-hub seed
        for (std::uint32_t s = 0; s < seed_count_; ++s) {
            OPath p{{}, g_.seeds()[s], SupportSet(seed_count_)};
            p.support.set(s);
            alive.push_back(std::move(p));
        }
        std::set<std::vector<Atom>> surviving_patterns;  // from previous iteration

        for (std::uint32_t h = 1; h <= cfg_.k && !alive.empty(); ++h) {
            // Expand.
            std::map<std::vector<Atom>, OPath> expanded;
            for (const OPath& P : alive) {
                if (hub_[P.last]) continue;
                auto extend = [&](PredicateId p, VertexId w, Dir dir) {
                    if (pred_blacklisted_[p] || blocked_[w]) return;
                    bool ok = false;
                    for (std::uint32_t s : P.support.to_indices())
                        if (dist_[s][w] == h) ok = true;
                    if (!ok) return;
                    std::vector<Atom> atoms = P.atoms;
                    atoms.push_back({p, dir, Element::individual(w)});
                    SupportSet supp = path_support(atoms);
                    expanded.emplace(std::move(atoms), OPath{{}, w, supp});
                };
                for (const auto& [p, w] : g_.out(P.last)) extend(p, w, Dir::forward);
                if (cfg_.u)
                    for (const auto& [p, w] : g_.in(P.last)) extend(p, w, Dir::backward);
            }
            std::vector<OPath> paths;
            for (auto& [atoms, op] : expanded) {
                OPath p{atoms, op.last, op.support};
                paths.push_back(std::move(p));
            }

            // Generalize: every per-position replacement by an interesting
            // type the element instantiates, kept only when the length h-1
            // prefix is the expanded path's own prefix or survived the
            // previous iteration.
            std::map<std::vector<Atom>, SupportSet> patterns;
            std::map<std::vector<Atom>, std::vector<std::size_t>> captured;
            for (std::size_t pi = 0; pi < paths.size(); ++pi) {
                const OPath& q = paths[pi];
                std::vector<std::vector<Element>> choices;
                for (const Atom& a : q.atoms) {
                    std::vector<Element> opts{a.element};
                    for (VertexId cls : interesting)
                        if (element_captures(Element::of_class(cls), a.element))
                            opts.push_back(Element::of_class(cls));
                    choices.push_back(std::move(opts));
                }
                std::vector<std::size_t> pick(q.atoms.size(), 0);
                while (true) {
                    bool all_self = true;
                    std::vector<Atom> cand = q.atoms;
                    for (std::size_t i = 0; i < cand.size(); ++i) {
                        cand[i].element = choices[i][pick[i]];
                        if (pick[i] != 0) all_self = false;
                    }
                    if (!all_self) {
                        std::vector<Atom> prefix(cand.begin(), cand.end() - 1);
                        std::vector<Atom> path_prefix(q.atoms.begin(), q.atoms.end() - 1);
                        if (prefix == path_prefix || surviving_patterns.count(prefix)) {
                            auto [it, fresh] = patterns.try_emplace(cand, SupportSet(seed_count_));
                            it->second |= q.support;
                            captured[cand].push_back(pi);
                        }
                    }
                    std::size_t i = 0;
                    for (; i < pick.size(); ++i) {
                        if (++pick[i] < choices[i].size()) break;
                        pick[i] = 0;
                    }
                    if (i == pick.size()) break;
                }
            }

            // Keep most specific: single-path generalizations go first, then
            // pairwise dominance within each support-set group.
            std::map<std::vector<Atom>, SupportSet> kept;
            for (const auto& [atoms, supp] : patterns)
                if (captured.at(atoms).size() > 1) kept.emplace(atoms, supp);
            std::map<std::vector<Atom>, SupportSet> survivors;
            for (const auto& [atoms, supp] : kept) {
                bool dominated = false;
                for (const auto& [other, osupp] : kept) {
                    if (other == atoms || !(osupp == supp)) continue;
                    if (more_specific(other, atoms)) {
                        dominated = true;
                        break;
                    }
                }
                if (!dominated) survivors.emplace(atoms, supp);
            }

            // Select for F: (C1) support bounds, (C3) no generalized path with
            // the same support, (C2) same-support prefixes block unless they
            // all end with a class, in which case the longer feature replaces
            // them.
            auto consider = [&](const std::vector<Atom>& atoms, const SupportSet& supp,
                                bool pattern) {
                std::size_t card = supp.count();
                if (card < cfg_.l_min || card > cfg_.l_max) return;
                if (pattern) {
                    for (std::size_t pi : captured.at(atoms))
                        if (paths[pi].support == supp) return;
                }
                std::vector<std::vector<Atom>> blockers;
                for (std::size_t j = 1; j < atoms.size(); ++j) {
                    std::vector<Atom> prefix(atoms.begin(), atoms.begin() + j);
                    auto it = selected.find(prefix);
                    if (it != selected.end() && it->second == supp) blockers.push_back(prefix);
                }
                for (const auto& b : blockers)
                    if (!b.back().element.is_class()) return;
                for (const auto& b : blockers) selected.erase(b);
                selected.emplace(atoms, supp);
            };
            for (const OPath& p : paths) consider(p.atoms, p.support, false);
            for (const auto& [atoms, supp] : survivors) consider(atoms, supp, true);

            // Next iteration: drop sub-l_min patterns, keep paths that pass
            // l_min or are generalized by a remaining pattern.
            surviving_patterns.clear();
            for (const auto& [atoms, supp] : survivors)
                if (supp.count() >= cfg_.l_min) surviving_patterns.insert(atoms);
            std::vector<OPath> next;
            for (const OPath& p : paths) {
                bool keep = p.support.count() >= cfg_.l_min;
                if (!keep)
                    for (const auto& atoms : surviving_patterns)
                        if (captures(atoms, p.atoms)) {
                            keep = true;
                            break;
                        }
                if (keep) next.push_back(p);
            }
            alive = std::move(next);
        }
        res.features = std::move(selected);
    }

    const CanonicalGraph& g_;
    const OntologyIndex& ont_;
    const MiningConfig& cfg_;
    std::uint32_t seed_count_;
    std::vector<char> pred_blacklisted_;
    std::vector<char> blocked_;
    std::vector<char> hub_;
    CompiledClassSet exp_blocked_;
    CompiledClassSet gen_blocked_;
    std::vector<std::vector<std::uint32_t>> dist_;
};

}  // namespace kgfeat
