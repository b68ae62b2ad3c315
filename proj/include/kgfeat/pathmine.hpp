#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kgfeat/config.hpp"
#include "kgfeat/graph.hpp"
#include "kgfeat/neighbors.hpp"
#include "kgfeat/ontology.hpp"
#include "kgfeat/parallel.hpp"
#include "kgfeat/pathfeat.hpp"
#include "kgfeat/prefix_tree.hpp"
#include "kgfeat/support.hpp"

namespace kgfeat {

struct ReplaceEvent {
    FeatureId added;
    std::vector<FeatureId> removed;  // same-support prefixes replaced in F
};

struct IterationTrace {
    std::uint32_t h = 0;
    std::size_t paths_alive = 0;          // |P_h|
    std::size_t paths_expanded = 0;       // new concrete paths of length h
    std::size_t patterns_generated = 0;   // pattern candidates before retention
    std::size_t one_path_discarded = 0;   // patterns generalizing a single path
    std::size_t tree_discarded = 0;       // dominated by a more specific co-candidate
    std::size_t patterns_surviving = 0;
    std::vector<FeatureId> added;         // features entering F this iteration
    std::vector<ReplaceEvent> replaced;   // C2-exception replacements
    std::vector<FeatureId> survivors;     // populated when record_survivors
    std::size_t invariant_violations = 0; // populated when validate
};

struct PathFeatureEntry {
    FeatureId fid;
    SupportSet support;
};

struct PathMiningOptions {
    bool record_survivors = false;
    bool validate = false;
};

struct PathMiningResult {
    std::vector<PathFeatureEntry> features;  // final path/pattern features in F
    std::vector<IterationTrace> iterations;

    std::size_t generated_total = 0;  // paths + pattern candidates over all h
    std::size_t retained_total = 0;   // |features|
    bool config_conflict = false;     // e.g. l_min > |N^C|

    /// Supports of every feature that was a concrete path or a retention
    /// survivor, plus expansion parents; kept for invariant checking and
    /// reporting.
    std::unordered_map<FeatureId, SupportSet> supports;
    std::unordered_map<FeatureId, FeatureId> expansion_links;
};

namespace detail {

struct AlivePath {
    FeatureId fid;  // kNoFeature for the virtual seed roots of iteration 1
    VertexId last;
    SupportSet support;
    std::vector<FeatureId> generalizers;
};

struct PatternAcc {
    SupportSet support;
    std::vector<FeatureId> captured;  // concrete expanded paths, deduped later
    FeatureId parent = kNoFeature;    // first emission source (path or pattern)
};

}  // namespace detail

/// Algorithm: iterate h = 1..k over (expand, generalize, keep most specific,
/// select). Output is deterministic for any thread count: expansion and
/// selection are single-writer, retention parallelism is per support-set
/// group with a deterministic merge.
inline PathMiningResult mine_path_features(const CanonicalGraph& g, const OntologyIndex& ont,
                                           const NeighborhoodResult& nres, const MiningConfig& cfg,
                                           const CompiledClassSet& gen_blocked, FeatureTable& table,
                                           const PathMiningOptions& opts = {}) {
    PathMiningResult res;
    const std::uint32_t width = nres.seed_count;
    if (width == 0 || cfg.l_min > width) {
        res.config_conflict = cfg.l_min > width;
        return res;
    }

    // T_{>=l_min} class membership, and per-vertex "interesting
    // generalizations" memo (genset intersected with T).
    std::unordered_set<VertexId> interesting_classes;
    for (const auto& [cls, supp] : nres.interesting_types) interesting_classes.insert(cls);
    std::unordered_map<VertexId, std::vector<VertexId>> igen_cache;
    auto interesting_gens = [&](VertexId v) -> const std::vector<VertexId>& {
        auto it = igen_cache.find(v);
        if (it != igen_cache.end()) return it->second;
        std::vector<VertexId> out;
        auto git = nres.generalization_sets.find(v);
        if (git != nres.generalization_sets.end()) {
            for (VertexId cls : git->second)
                if (interesting_classes.count(cls)) out.push_back(cls);
        }
        return igen_cache.emplace(v, std::move(out)).first->second;
    };

    // F as selected so far: fid -> support. Needed for (C2) prefix checks and
    // replacement.
    std::unordered_map<FeatureId, SupportSet> selected;
    std::vector<FeatureId> selected_order;

    std::vector<detail::AlivePath> alive;
    alive.reserve(g.seeds().size());
    for (std::uint32_t i = 0; i < g.seeds().size(); ++i) {
        detail::AlivePath a{kNoFeature, g.seeds()[i], SupportSet(width), {}};
        a.support.set(i);
        alive.push_back(std::move(a));
    }

    for (std::uint32_t h = 1; h <= cfg.k && !alive.empty(); ++h) {
        IterationTrace trace;
        trace.h = h;
        trace.paths_alive = alive.size();

        // ---- Expand paths in P_h and generalize into patterns -------------
        struct NewPath {
            FeatureId fid;
            VertexId last;
            SupportSet support;
        };
        std::vector<NewPath> new_paths;
        std::unordered_map<FeatureId, std::size_t> path_index;
        std::unordered_map<FeatureId, detail::PatternAcc> patterns;
        std::vector<FeatureId> pattern_order;

        const auto& level_h = nres.frontier[h];
        std::vector<Atom> scratch;
        for (const detail::AlivePath& P : alive) {
            if (nres.is_hub[P.last]) continue;  // hubs are reached, never expanded
            std::span<const Atom> parent_atoms =
                P.fid == kNoFeature ? std::span<const Atom>{} : table.atoms(P.fid);

            auto try_extend = [&](PredicateId pred, VertexId w, Dir dir) {
                if (nres.pred_blacklisted[pred] || nres.blocked[w]) return;
                // Anti-loop rule: some supporting seed must have shortest
                // distance exactly h to the extension vertex.
                auto fit = level_h.find(w);
                if (fit == level_h.end() || !P.support.intersects(fit->second)) return;

                scratch.assign(parent_atoms.begin(), parent_atoms.end());
                scratch.push_back({pred, dir, Element::individual(w)});
                FeatureId fid = table.intern(scratch);
                auto [iit, fresh] = path_index.try_emplace(fid, new_paths.size());
                if (fresh) {
                    new_paths.push_back({fid, w, P.support});
                    if (P.fid != kNoFeature) res.expansion_links.emplace(fid, P.fid);
                } else {
                    new_paths[iit->second].support |= P.support;
                }
                const SupportSet& psup = P.support;

                auto emit = [&](std::span<const Atom> px, FeatureId source, const Atom& tail) {
                    scratch.assign(px.begin(), px.end());
                    scratch.push_back(tail);
                    FeatureId pf = table.intern(scratch);
                    auto [pit, pfresh] = patterns.try_emplace(pf);
                    if (pfresh) {
                        pit->second.support = SupportSet(width);
                        pit->second.parent = source;
                        pattern_order.push_back(pf);
                    }
                    pit->second.support |= psup;
                    pit->second.captured.push_back(fid);
                };

                // (a) the concrete path generalized at its new last element;
                // (b) every surviving generalizer of P expanded with the
                //     concrete atom and with each interesting type.
                for (VertexId cls : interesting_gens(w))
                    emit(parent_atoms, P.fid, {pred, dir, Element::of_class(cls)});
                for (FeatureId gfid : P.generalizers) {
                    std::span<const Atom> gatoms = table.atoms(gfid);
                    emit(gatoms, gfid, {pred, dir, Element::individual(w)});
                    for (VertexId cls : interesting_gens(w))
                        emit(gatoms, gfid, {pred, dir, Element::of_class(cls)});
                }
            };

            for (const auto& [pred, w] : g.out(P.last)) try_extend(pred, w, Dir::forward);
            if (cfg.u)
                for (const auto& [pred, w] : g.in(P.last)) try_extend(pred, w, Dir::backward);
        }

        trace.paths_expanded = new_paths.size();
        trace.patterns_generated = patterns.size();
        res.generated_total += new_paths.size() + patterns.size();

        for (const NewPath& np : new_paths) res.supports[np.fid] = np.support;

        if (opts.validate) {
            // |SupportSet(P)| <= min over elements of |SupportSet(E)|.
            auto element_bound_ok = [&](FeatureId fid, const SupportSet& supp) {
                for (const Atom& a : table.atoms(fid)) {
                    const SupportSet* es = a.element.is_class()
                                               ? nres.type_support(a.element.id)
                                               : nres.support_of(a.element.id);
                    if (es && supp.count() > es->count()) return false;
                }
                return true;
            };
            for (const NewPath& np : new_paths)
                if (!element_bound_ok(np.fid, np.support)) ++trace.invariant_violations;
            for (FeatureId pf : pattern_order)
                if (!element_bound_ok(pf, patterns.at(pf).support)) ++trace.invariant_violations;
        }

        // ---- Keep most specific path features ------------------------------
        // Patterns generalizing one concrete path first, then per-support-set
        // prefix trees.
        std::unordered_set<FeatureId> dropped;
        for (FeatureId pf : pattern_order) {
            auto& acc = patterns.at(pf);
            std::sort(acc.captured.begin(), acc.captured.end());
            acc.captured.erase(std::unique(acc.captured.begin(), acc.captured.end()),
                               acc.captured.end());
            if (acc.captured.size() == 1) {
                dropped.insert(pf);
                ++trace.one_path_discarded;
            }
        }

        std::map<SupportSet, std::vector<FeatureId>> groups;
        for (FeatureId pf : pattern_order)
            if (!dropped.count(pf)) groups[patterns.at(pf).support].push_back(pf);

        std::vector<const std::vector<FeatureId>*> group_list;
        group_list.reserve(groups.size());
        for (auto& [supp, fids] : groups) {
            std::sort(fids.begin(), fids.end());
            group_list.push_back(&fids);
        }
        std::vector<std::vector<FeatureId>> outcomes(group_list.size());
        parallel_chunks(group_list.size(), cfg.threads,
                        [&](std::size_t, std::size_t lo, std::size_t hi) {
                            for (std::size_t gi = lo; gi < hi; ++gi) {
                                MostSpecificTree tree(ont, cfg.t, gen_blocked);
                                for (FeatureId pf : *group_list[gi])
                                    tree.insert(table.atoms(pf), pf);
                                for (FeatureId pf : *group_list[gi])
                                    if (tree.dominated(table.atoms(pf), pf))
                                        outcomes[gi].push_back(pf);
                            }
                        });
        for (const auto& oc : outcomes) {
            for (FeatureId pf : oc) dropped.insert(pf);
            trace.tree_discarded += oc.size();
        }

        std::vector<FeatureId> survivors;
        for (FeatureId pf : pattern_order)
            if (!dropped.count(pf)) survivors.push_back(pf);
        trace.patterns_surviving = survivors.size();

        if (opts.validate) {
            // Mutual non-dominance inside every same-support survivor group.
            std::map<SupportSet, std::vector<FeatureId>> sg;
            for (FeatureId pf : survivors) sg[patterns.at(pf).support].push_back(pf);
            for (const auto& [supp, fids] : sg)
                for (FeatureId a : fids)
                    for (FeatureId b : fids)
                        if (a != b && feature_more_specific(table.atoms(a), table.atoms(b), ont,
                                                            cfg.t, gen_blocked))
                            ++trace.invariant_violations;
        }
        if (opts.record_survivors) trace.survivors = survivors;

        for (FeatureId pf : survivors) {
            res.supports[pf] = patterns.at(pf).support;
            if (patterns.at(pf).parent != kNoFeature)
                res.expansion_links.emplace(pf, patterns.at(pf).parent);
        }

        // ---- Select features for F and paths for P_{h+1} -------------------
        auto consider = [&](FeatureId fid, const SupportSet& supp, bool pattern,
                            const std::vector<FeatureId>* captured) {
            std::size_t card = supp.count();
            if (card < cfg.l_min || card > cfg.l_max) return;  // (C1)
            if (pattern && captured) {                         // (C3)
                for (FeatureId pfid : *captured)
                    if (res.supports.at(pfid) == supp) return;
            }
            // (C2): same-support strict prefixes already in F block the
            // feature, except that prefixes ending with a class are replaced
            // by the longer feature.
            auto atoms = table.atoms(fid);
            std::vector<FeatureId> blockers;
            bool hard_block = false;
            for (std::size_t j = 1; j < atoms.size(); ++j) {
                auto pfx = table.find(atoms.subspan(0, j));
                if (!pfx) continue;
                auto sit = selected.find(*pfx);
                if (sit == selected.end() || !(sit->second == supp)) continue;
                blockers.push_back(*pfx);
                if (!table.atoms(*pfx).back().element.is_class()) hard_block = true;
            }
            if (hard_block) return;
            if (!blockers.empty()) {
                ReplaceEvent ev{fid, blockers};
                for (FeatureId b : blockers) selected.erase(b);
                trace.replaced.push_back(std::move(ev));
            }
            selected.emplace(fid, supp);
            selected_order.push_back(fid);
            trace.added.push_back(fid);
        };

        for (const NewPath& np : new_paths) consider(np.fid, np.support, false, nullptr);
        for (FeatureId pf : survivors)
            consider(pf, patterns.at(pf).support, true, &patterns.at(pf).captured);

        // Monotonicity pruning: sub-l_min patterns leave the dependency
        // structure; a path stays alive if its own support passes l_min or a
        // surviving interesting pattern generalizes it.
        std::unordered_map<FeatureId, std::vector<FeatureId>> gens_of_path;
        for (FeatureId pf : survivors) {
            const auto& acc = patterns.at(pf);
            if (acc.support.count() < cfg.l_min) continue;
            for (FeatureId pfid : acc.captured) gens_of_path[pfid].push_back(pf);
        }
        std::vector<detail::AlivePath> next;
        for (const NewPath& np : new_paths) {
            auto git = gens_of_path.find(np.fid);
            bool has_gen = git != gens_of_path.end() && !git->second.empty();
            if (np.support.count() < cfg.l_min && !has_gen) continue;
            detail::AlivePath a{np.fid, np.last, np.support, {}};
            if (has_gen) a.generalizers = git->second;
            next.push_back(std::move(a));
        }
        alive = std::move(next);
        res.iterations.push_back(std::move(trace));
    }

    for (FeatureId fid : selected_order) {
        auto it = selected.find(fid);
        if (it == selected.end()) continue;  // replaced later
        res.features.push_back({fid, it->second});
    }
    res.retained_total = res.features.size();
    return res;
}

}  // namespace kgfeat
