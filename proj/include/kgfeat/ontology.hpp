#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kgfeat/config.hpp"
#include "kgfeat/graph.hpp"
#include "kgfeat/symbols.hpp"

namespace kgfeat {

/// Sentinel id of the synthetic top class. Top is instantiated by every
/// vertex at every level t >= 0 and never appears in the input file.
inline constexpr VertexId kTopClass = UINT32_MAX;

/// A blacklist resolved against the actual class vertices of one graph, so
/// membership checks are O(1) id lookups instead of string matching.
struct CompiledClassSet {
    bool top_blocked = false;
    std::unordered_set<VertexId> classes;

    bool contains(VertexId cls) const {
        if (cls == kTopClass) return top_blocked;
        return classes.count(cls) != 0;
    }
    bool empty() const { return !top_blocked && classes.empty(); }
};

/// Index of rdf:type and rdfs:subClassOf arcs over a canonical graph.
/// Level semantics: the type arc is hop 1 and each subClassOf arc adds one
/// hop, so instantiates(v, T, t) holds iff T is reachable in at most t hops
/// (minimum-hop when several routes exist). Cycles in subClassOf are
/// tolerated via visited sets. All queries are pure reads after build().
class OntologyIndex {
public:
    OntologyIndex() = default;

    OntologyIndex(const CanonicalGraph& g, PredicateId type_pred, PredicateId subclass_pred) {
        build(g, type_pred, subclass_pred);
    }

    void build(const CanonicalGraph& g, PredicateId type_pred, PredicateId subclass_pred) {
        type_pred_ = type_pred;
        subclass_pred_ = subclass_pred;
        direct_types_.assign(g.vertex_count(), {});
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            for (const auto& [p, w] : g.out(v)) {
                if (p == type_pred) {
                    direct_types_[v].push_back(w);
                    class_ids_.insert(w);
                } else if (p == subclass_pred) {
                    supers_[v].push_back(w);
                    subs_[w].push_back(v);
                    class_ids_.insert(v);
                    class_ids_.insert(w);
                }
            }
        }
        for (auto& ts : direct_types_) {
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        }
        for (auto& [c, ss] : supers_) {
            std::sort(ss.begin(), ss.end());
            ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
        }
        for (auto& [c, ss] : subs_) {
            std::sort(ss.begin(), ss.end());
            ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
        }
    }

    PredicateId type_predicate() const { return type_pred_; }
    PredicateId subclass_predicate() const { return subclass_pred_; }

    /// true iff e is the target of a type arc, an endpoint of a subClassOf
    /// arc, or the synthetic top.
    bool is_class(VertexId e) const { return e == kTopClass || class_ids_.count(e) != 0; }

    const std::vector<VertexId>& direct_types(VertexId v) const {
        static const std::vector<VertexId> kEmpty;
        return v < direct_types_.size() ? direct_types_[v] : kEmpty;
    }

    const std::vector<VertexId>& direct_superclasses(VertexId cls) const {
        static const std::vector<VertexId> kEmpty;
        auto it = supers_.find(cls);
        return it == supers_.end() ? kEmpty : it->second;
    }

    const std::unordered_set<VertexId>& class_ids() const { return class_ids_; }

    /// Resolves a URI/prefix matcher to the set of classes whose member URIs
    /// match. Matching considers every raw member URI of the canonical class
    /// vertex plus the reserved top name.
    CompiledClassSet compile(const UriMatcher& matcher, const CanonicalGraph& g,
                             const SymbolTable& vertices) const {
        CompiledClassSet out;
        if (matcher.empty()) return out;
        out.top_blocked = matcher.matches(kTopUri);
        for (VertexId c : class_ids_) {
            for (VertexId m : g.members_of(c)) {
                if (matcher.matches(vertices.resolve(m))) {
                    out.classes.insert(c);
                    break;
                }
            }
        }
        return out;
    }

    /// inst(v, T, t, b_gen): T = top always holds (unless top is blocked);
    /// otherwise T must be reachable by one type arc plus at most t-1
    /// subClassOf arcs and must not be blacklisted.
    bool instantiates(VertexId v, VertexId T, std::uint32_t t, const CompiledClassSet& b_gen) const {
        if (b_gen.contains(T)) return false;
        if (T == kTopClass) return true;
        if (t == 0) return false;
        std::unordered_set<VertexId> visited;
        std::deque<VertexId> frontier;
        for (VertexId c : direct_types(v))
            if (visited.insert(c).second) frontier.push_back(c);
        for (std::uint32_t level = 1; level <= t && !frontier.empty(); ++level) {
            std::deque<VertexId> next;
            for (VertexId c : frontier) {
                if (c == T) return true;
                for (VertexId s : direct_superclasses(c))
                    if (visited.insert(s).second) next.push_back(s);
            }
            frontier = std::move(next);
        }
        return false;
    }

    bool instantiates(VertexId v, VertexId T, std::uint32_t t, const UriMatcher& b_gen,
                      const CanonicalGraph& g, const SymbolTable& vertices) const {
        return instantiates(v, T, t, compile(b_gen, g, vertices));
    }

    /// All classes generalizing v at level <= t, top included (unless blocked).
    /// Sorted; kTopClass sorts last.
    std::vector<VertexId> generalizations(VertexId v, std::uint32_t t, const CompiledClassSet& b_gen) const {
        std::vector<VertexId> out;
        if (!b_gen.contains(kTopClass)) out.push_back(kTopClass);
        if (t > 0) {
            std::unordered_set<VertexId> visited;
            std::deque<VertexId> frontier;
            for (VertexId c : direct_types(v))
                if (visited.insert(c).second) frontier.push_back(c);
            for (std::uint32_t level = 1; level <= t && !frontier.empty(); ++level) {
                std::deque<VertexId> next;
                for (VertexId c : frontier) {
                    if (!b_gen.contains(c)) out.push_back(c);
                    for (VertexId s : direct_superclasses(c))
                        if (visited.insert(s).second) next.push_back(s);
                }
                frontier = std::move(next);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Ancestors of cls within max_hops subClassOf arcs (cls excluded).
    std::vector<VertexId> bounded_ancestors(VertexId cls, std::uint32_t max_hops) const {
        std::vector<VertexId> out;
        if (cls == kTopClass || max_hops == 0) return out;
        std::unordered_set<VertexId> visited{cls};
        std::deque<VertexId> frontier{cls};
        for (std::uint32_t hop = 1; hop <= max_hops && !frontier.empty(); ++hop) {
            std::deque<VertexId> next;
            for (VertexId c : frontier)
                for (VertexId s : direct_superclasses(c))
                    if (visited.insert(s).second) {
                        out.push_back(s);
                        next.push_back(s);
                    }
            frontier = std::move(next);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Classes that reach a member of `targets` through zero or more
    /// subClassOf arcs (i.e. the downward closure of the targets, targets
    /// included). Cycle-safe.
    std::unordered_set<VertexId> downward_closure(const CompiledClassSet& targets) const {
        std::unordered_set<VertexId> out;
        std::deque<VertexId> frontier;
        for (VertexId c : targets.classes)
            if (out.insert(c).second) frontier.push_back(c);
        while (!frontier.empty()) {
            VertexId c = frontier.front();
            frontier.pop_front();
            auto it = subs_.find(c);
            if (it == subs_.end()) continue;
            for (VertexId s : it->second)
                if (out.insert(s).second) frontier.push_back(s);
        }
        return out;
    }

    /// b_exp-types semantics: true iff some class reachable from v via one
    /// type arc then any number of subClassOf arcs is blacklisted. Unbounded,
    /// unlike inst.
    bool is_instance_of_blacklisted(VertexId v, const CompiledClassSet& b_exp) const {
        if (b_exp.empty()) return false;
        std::unordered_set<VertexId> visited;
        std::deque<VertexId> frontier;
        for (VertexId c : direct_types(v))
            if (visited.insert(c).second) frontier.push_back(c);
        while (!frontier.empty()) {
            VertexId c = frontier.front();
            frontier.pop_front();
            if (b_exp.contains(c)) return true;
            for (VertexId s : direct_superclasses(c))
                if (visited.insert(s).second) frontier.push_back(s);
        }
        return false;
    }

    bool is_instance_of_blacklisted(VertexId v, const UriMatcher& b_exp, const CanonicalGraph& g,
                                    const SymbolTable& vertices) const {
        return is_instance_of_blacklisted(v, compile(b_exp, g, vertices));
    }

    /// Per-vertex blocked flags for the whole graph, computed via one backward
    /// closure from the blacklisted classes (equivalent to calling
    /// is_instance_of_blacklisted on every vertex, but O(V+E)).
    std::vector<char> blocked_vertex_flags(const CompiledClassSet& b_exp) const {
        std::vector<char> blocked(direct_types_.size(), 0);
        if (b_exp.empty()) return blocked;
        auto closure = downward_closure(b_exp);
        for (VertexId v = 0; v < direct_types_.size(); ++v)
            for (VertexId c : direct_types_[v])
                if (closure.count(c)) {
                    blocked[v] = 1;
                    break;
                }
        return blocked;
    }

    const std::string& class_label(VertexId cls, const CanonicalGraph& g, const SymbolTable& vertices) const {
        static const std::string kTopName = kTopUri;
        if (cls == kTopClass) return kTopName;
        return g.label(cls, vertices);
    }

private:
    PredicateId type_pred_ = 0;
    PredicateId subclass_pred_ = 0;
    std::vector<std::vector<VertexId>> direct_types_;
    std::unordered_map<VertexId, std::vector<VertexId>> supers_;
    std::unordered_map<VertexId, std::vector<VertexId>> subs_;
    std::unordered_set<VertexId> class_ids_;
};

}  // namespace kgfeat
