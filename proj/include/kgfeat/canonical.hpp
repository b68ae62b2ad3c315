#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "kgfeat/graph.hpp"
#include "kgfeat/ntriples.hpp"
#include "kgfeat/symbols.hpp"

namespace kgfeat {

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint8_t> rank_;
};

}  // namespace detail

/// Contracts the undirected spanning subgraph of sameAs arcs (symmetry +
/// transitivity come for free from connected components), rewrites every other
/// arc through the quotient map, and maps the seed set. sameAs arcs themselves
/// do not survive; duplicate canonical arcs collapse; self-loops produced by
/// contracting non-sameAs arcs inside a component are kept.
inline CanonicalGraph canonicalize(const RawGraph& raw, const SymbolTable& vertices,
                                   std::optional<PredicateId> sameas_predicate,
                                   const std::vector<VertexId>& seeds) {
    const std::size_t n = raw.vertex_count;
    detail::UnionFind uf(n);
    if (sameas_predicate) {
        for (const Arc& a : raw.arcs)
            if (a.predicate == *sameas_predicate) uf.unite(a.source, a.target);
    }

    CanonicalGraph::Builder b;
    b.lambda().assign(n, 0);
    std::vector<std::uint32_t> root_to_canonical(n, UINT32_MAX);
    std::uint32_t next_id = 0;
    for (VertexId v = 0; v < n; ++v) {
        std::uint32_t root = uf.find(v);
        if (root_to_canonical[root] == UINT32_MAX) root_to_canonical[root] = next_id++;
        b.lambda()[v] = root_to_canonical[root];
    }

    b.members().assign(next_id, {});
    for (VertexId v = 0; v < n; ++v) b.members()[b.lambda()[v]].push_back(v);

    b.representative().assign(next_id, 0);
    for (std::uint32_t c = 0; c < next_id; ++c) {
        auto& mem = b.members()[c];
        std::sort(mem.begin(), mem.end());
        VertexId best = mem.front();
        for (VertexId m : mem)
            if (vertices.resolve(m) < vertices.resolve(best)) best = m;
        b.representative()[c] = best;
    }

    b.out().assign(next_id, {});
    b.in().assign(next_id, {});
    std::unordered_set<detail::TripleKey, detail::TripleKeyHash> seen;
    std::size_t arc_count = 0;
    for (const Arc& a : raw.arcs) {
        if (sameas_predicate && a.predicate == *sameas_predicate) continue;
        VertexId s = b.lambda()[a.source];
        VertexId o = b.lambda()[a.target];
        if (!seen.insert({s, a.predicate, o}).second) continue;
        b.out()[s].emplace_back(a.predicate, o);
        b.in()[o].emplace_back(a.predicate, s);
        ++arc_count;
    }
    b.set_arc_count(arc_count);

    // Seeds identified by the quotient collapse to one canonical seed; the
    // merge is reported so the caller can surface it.
    std::unordered_set<VertexId> seen_seed;
    std::vector<std::vector<VertexId>> seed_members(next_id);
    for (VertexId s : seeds) {
        if (s >= n)
            throw InputError("seed id out of range");
        VertexId c = b.lambda()[s];
        seed_members[c].push_back(s);
        if (seen_seed.insert(c).second) b.seeds().push_back(c);
    }
    for (VertexId c : b.seeds()) {
        if (seed_members[c].size() > 1) {
            std::vector<std::string> uris;
            for (VertexId m : seed_members[c]) uris.push_back(vertices.resolve(m));
            std::sort(uris.begin(), uris.end());
            b.merged_seed_groups().push_back(std::move(uris));
        }
    }
    return b.finish();
}

}  // namespace kgfeat
