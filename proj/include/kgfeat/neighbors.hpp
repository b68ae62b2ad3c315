#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "kgfeat/config.hpp"
#include "kgfeat/graph.hpp"
#include "kgfeat/ontology.hpp"
#include "kgfeat/parallel.hpp"
#include "kgfeat/support.hpp"

namespace kgfeat {

/// Arcs visible to the traversal for one configuration: direction per u,
/// blacklisted predicates excluded. Arcs into b_exp-blocked vertices still
/// count toward the degree.
inline std::uint64_t effective_degree(const CanonicalGraph& g, VertexId v, bool u,
                                      const std::vector<char>& blacklisted_pred) {
    std::uint64_t deg = 0;
    for (const auto& [p, w] : g.out(v))
        if (!blacklisted_pred[p]) ++deg;
    if (u) {
        for (const auto& [p, w] : g.in(v))
            if (!blacklisted_pred[p] && w != v) ++deg;  // self-loop counted once
    }
    return deg;
}

struct NeighborhoodResult {
    std::uint32_t seed_count = 0;

    /// support[v]: seeds from which v was reached via 1..k permitted arcs.
    std::unordered_map<VertexId, SupportSet> support;

    /// frontier[h][v]: seeds whose shortest permitted distance to v is exactly
    /// h (h = 0..k; level 0 is the seeds themselves). This is the bitset-per-
    /// level shape the path miner's anti-loop rule reads.
    std::vector<std::unordered_map<VertexId, SupportSet>> frontier;

    std::vector<char> is_hub;         // per canonical vertex
    std::vector<char> blocked;        // per canonical vertex (b_exp-types)
    std::vector<char> pred_blacklisted;  // per predicate id

    std::vector<VertexId> interesting_neighbors;  // l_min <= support <= l_max, sorted

    /// Interesting types over N(N^C): classes (kTopClass included) whose
    /// accumulated support reaches l_min. Sorted by class id.
    std::vector<std::pair<VertexId, SupportSet>> interesting_types;

    /// Memoized generalization sets (classes only, unrestricted by T_{>=lmin})
    /// for every reached vertex, under the run's t and b_gen.
    std::unordered_map<VertexId, std::vector<VertexId>> generalization_sets;

    /// All classes with at least one reached instance, with supports (the
    /// "Types before l_min" tally), sorted.
    std::vector<std::pair<VertexId, SupportSet>> reached_types;

    bool reached(VertexId v) const { return support.count(v) != 0; }

    const SupportSet* support_of(VertexId v) const {
        auto it = support.find(v);
        return it == support.end() ? nullptr : &it->second;
    }

    std::vector<VertexId> reached_sorted() const {
        std::vector<VertexId> out;
        out.reserve(support.size());
        for (const auto& [v, s] : support) out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool type_is_interesting(VertexId cls) const {
        auto it = std::lower_bound(interesting_types.begin(), interesting_types.end(), cls,
                                   [](const auto& a, VertexId c) { return a.first < c; });
        return it != interesting_types.end() && it->first == cls;
    }

    const SupportSet* type_support(VertexId cls) const {
        auto it = std::lower_bound(reached_types.begin(), reached_types.end(), cls,
                                   [](const auto& a, VertexId c) { return a.first < c; });
        return it != reached_types.end() && it->first == cls ? &it->second : nullptr;
    }
};

/// Step 2: multi-source level-synchronous BFS from the canonical seeds,
/// constrained by k, d, u, b_predicates and b_exp-types. Hubs are recorded
/// when reached but never expanded; blocked vertices are neither reached nor
/// traversed; seeds are not their own neighbors. Deterministic for any thread
/// count.
inline NeighborhoodResult mine_neighbors(const CanonicalGraph& g, const OntologyIndex& ont,
                                         const MiningConfig& cfg, const SymbolTable& predicates,
                                         const CompiledClassSet& exp_blocked) {
    NeighborhoodResult res;
    const auto& seeds = g.seeds();
    res.seed_count = static_cast<std::uint32_t>(seeds.size());

    res.pred_blacklisted.assign(predicates.size(), 0);
    UriMatcher pred_bl = cfg.effective_predicate_blacklist();
    for (PredicateId p = 0; p < predicates.size(); ++p)
        res.pred_blacklisted[p] = pred_bl.matches(predicates.resolve(p)) ? 1 : 0;

    res.blocked = ont.blocked_vertex_flags(exp_blocked);
    res.blocked.resize(g.vertex_count(), 0);

    res.is_hub.assign(g.vertex_count(), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        res.is_hub[v] = effective_degree(g, v, cfg.u, res.pred_blacklisted) > cfg.d ? 1 : 0;

    res.frontier.assign(cfg.k + 1, {});
    // `seen` deliberately starts empty: a seed reached back through a cycle
    // of >= 1 arcs is recorded like any vertex (only the trivial distance-0
    // self is excluded from neighborhoods).
    std::unordered_map<VertexId, SupportSet> seen;
    for (std::uint32_t i = 0; i < seeds.size(); ++i) {
        auto [it, fresh] = res.frontier[0].try_emplace(seeds[i], SupportSet(res.seed_count));
        it->second.set(i);
    }

    for (std::uint32_t h = 1; h <= cfg.k; ++h) {
        const auto& prev = res.frontier[h - 1];
        if (prev.empty()) break;
        std::vector<VertexId> order;
        order.reserve(prev.size());
        for (const auto& [v, bits] : prev) order.push_back(v);
        std::sort(order.begin(), order.end());

        // Two-phase: chunks collect candidate bits against the frozen `seen`,
        // then a single merge applies them. Values are order-independent.
        std::vector<std::unordered_map<VertexId, SupportSet>> local(
            std::max<std::uint32_t>(cfg.threads, 1));
        parallel_chunks(order.size(), cfg.threads, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
            auto& mine = local[chunk];
            for (std::size_t idx = lo; idx < hi; ++idx) {
                VertexId v = order[idx];
                // Blocked vertices are never in a frontier; hubs (and anything
                // at the k-th level) stop here. Seeds expand even when their
                // own class is blacklisted: b_exp guards reaching, not roots.
                if (res.is_hub[v]) continue;
                const SupportSet& bits = prev.at(v);
                auto relax = [&](PredicateId p, VertexId w) {
                    if (res.pred_blacklisted[p] || res.blocked[w]) return;
                    SupportSet fresh = bits;
                    auto seen_it = seen.find(w);
                    if (seen_it != seen.end()) fresh = fresh.and_not(seen_it->second);
                    if (!fresh.any()) return;
                    auto [it, inserted] = mine.try_emplace(w, SupportSet(res.seed_count));
                    it->second |= fresh;
                };
                for (const auto& [p, w] : g.out(v)) relax(p, w);
                if (cfg.u)
                    for (const auto& [p, w] : g.in(v)) relax(p, w);
            }
        });

        auto& level = res.frontier[h];
        for (auto& part : local)
            for (auto& [w, bits] : part) {
                auto [it, inserted] = level.try_emplace(w, SupportSet(res.seed_count));
                it->second |= bits;
            }
        // Re-clip against seen once more (two chunks may both have discovered
        // w; union is still only the genuinely new bits) and commit.
        for (auto it = level.begin(); it != level.end();) {
            auto seen_it = seen.find(it->first);
            if (seen_it != seen.end()) it->second = it->second.and_not(seen_it->second);
            if (!it->second.any()) {
                it = level.erase(it);
                continue;
            }
            auto [sit, fresh] = seen.try_emplace(it->first, SupportSet(res.seed_count));
            sit->second |= it->second;
            ++it;
        }
    }

    for (std::uint32_t h = 1; h <= cfg.k; ++h)
        for (const auto& [v, bits] : res.frontier[h]) {
            auto [it, fresh] = res.support.try_emplace(v, SupportSet(res.seed_count));
            it->second |= bits;
        }

    for (const auto& [v, s] : res.support) {
        std::size_t c = s.count();
        if (c >= cfg.l_min && c <= cfg.l_max) res.interesting_neighbors.push_back(v);
    }
    std::sort(res.interesting_neighbors.begin(), res.interesting_neighbors.end());
    return res;
}

/// Interesting types are computed over N(N^C), not N_l(N^C): vertices below
/// l_min can still instantiate interesting classes. A class is kept when its
/// accumulated support reaches l_min; l_max does not apply.
inline void compute_interesting_types(NeighborhoodResult& res, const OntologyIndex& ont,
                                      const MiningConfig& cfg, const CompiledClassSet& gen_blocked) {
    std::map<VertexId, SupportSet> acc;  // ordered so output is sorted
    std::vector<VertexId> reached = res.reached_sorted();
    for (VertexId v : reached) {
        auto gens = ont.generalizations(v, cfg.t, gen_blocked);
        auto [it, fresh] = res.generalization_sets.emplace(v, std::move(gens));
        for (VertexId cls : it->second) {
            auto [ait, afresh] = acc.try_emplace(cls, SupportSet(res.seed_count));
            ait->second |= res.support.at(v);
        }
    }
    res.reached_types.assign(acc.begin(), acc.end());
    res.interesting_types.clear();
    for (const auto& [cls, supp] : acc)
        if (supp.count() >= cfg.l_min) res.interesting_types.emplace_back(cls, supp);
}

}  // namespace kgfeat
