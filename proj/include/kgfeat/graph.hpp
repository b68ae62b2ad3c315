#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "kgfeat/error.hpp"
#include "kgfeat/symbols.hpp"

namespace kgfeat {

using VertexId = std::uint32_t;
using PredicateId = std::uint32_t;

struct Arc {
    VertexId source;
    PredicateId predicate;
    VertexId target;
};

/// Directed labeled multigraph straight out of the triple file. Vertices are
/// exactly the ids of the vertex symbol table (0..n-1); literals and arcs
/// incident to literals were dropped during parsing.
struct RawGraph {
    std::size_t vertex_count = 0;
    std::vector<Arc> arcs;

    // parse tallies
    std::size_t lines_parsed = 0;
    std::size_t triples_kept = 0;
    std::size_t literals_dropped = 0;
    std::size_t duplicates_dropped = 0;
};

/// Quotient of a RawGraph under sameAs contraction. Adjacency is sorted by
/// (predicate, endpoint) so iteration order is deterministic everywhere.
class CanonicalGraph {
public:
    std::size_t vertex_count() const { return out_.size(); }

    const std::vector<std::pair<PredicateId, VertexId>>& out(VertexId v) const { return out_[v]; }
    const std::vector<std::pair<PredicateId, VertexId>>& in(VertexId v) const { return in_[v]; }

    VertexId to_canonical(VertexId raw) const { return lambda_[raw]; }
    const std::vector<VertexId>& lambda() const { return lambda_; }
    const std::vector<std::vector<VertexId>>& members() const { return members_; }
    const std::vector<VertexId>& members_of(VertexId canonical) const { return members_[canonical]; }

    /// Lexicographically smallest member URI: the deterministic representative.
    const std::string& label(VertexId canonical, const SymbolTable& vertices) const {
        if (canonical >= representative_.size())
            throw NotFoundError("canonical vertex " + std::to_string(canonical) + " out of range");
        return vertices.resolve(representative_[canonical]);
    }

    const std::vector<VertexId>& seeds() const { return seeds_; }
    std::size_t arc_count() const { return arc_count_; }

    /// Seed groups whose members were identified by canonicalization (>= 2 raw
    /// seeds mapping to one canonical seed); reported, not an error.
    const std::vector<std::vector<std::string>>& merged_seed_groups() const { return merged_seed_groups_; }

    // Construction interface (used by canonicalize()).
    struct Builder;

private:
    friend struct Builder;
    std::vector<std::vector<std::pair<PredicateId, VertexId>>> out_;
    std::vector<std::vector<std::pair<PredicateId, VertexId>>> in_;
    std::vector<VertexId> lambda_;
    std::vector<std::vector<VertexId>> members_;
    std::vector<VertexId> representative_;
    std::vector<VertexId> seeds_;
    std::vector<std::vector<std::string>> merged_seed_groups_;
    std::size_t arc_count_ = 0;
};

struct CanonicalGraph::Builder {
    CanonicalGraph g;
    std::vector<std::vector<std::pair<PredicateId, VertexId>>>& out() { return g.out_; }
    std::vector<std::vector<std::pair<PredicateId, VertexId>>>& in() { return g.in_; }
    std::vector<VertexId>& lambda() { return g.lambda_; }
    std::vector<std::vector<VertexId>>& members() { return g.members_; }
    std::vector<VertexId>& representative() { return g.representative_; }
    std::vector<VertexId>& seeds() { return g.seeds_; }
    std::vector<std::vector<std::string>>& merged_seed_groups() { return g.merged_seed_groups_; }
    void set_arc_count(std::size_t n) { g.arc_count_ = n; }

    CanonicalGraph finish() {
        for (auto& adj : g.out_) std::sort(adj.begin(), adj.end());
        for (auto& adj : g.in_) std::sort(adj.begin(), adj.end());
        return std::move(g);
    }
};

}  // namespace kgfeat
