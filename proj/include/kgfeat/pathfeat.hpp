#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgfeat/graph.hpp"
#include "kgfeat/ontology.hpp"
#include "kgfeat/symbols.hpp"

namespace kgfeat {

enum class Dir : std::uint8_t { forward, backward };

/// A path element: a concrete individual or an ontology class (kTopClass for
/// the synthetic top).
struct Element {
    enum class Kind : std::uint8_t { individual, cls } kind;
    VertexId id;

    static Element individual(VertexId v) { return {Kind::individual, v}; }
    static Element of_class(VertexId c) { return {Kind::cls, c}; }
    static Element top() { return {Kind::cls, kTopClass}; }

    bool is_class() const { return kind == Kind::cls; }
    bool operator==(const Element&) const = default;
    auto operator<=>(const Element&) const = default;
};

/// One atomic element of a path feature: an arc labeled `predicate`, traversed
/// forward or backward (backward only occurs under u=true), incident to
/// `element`.
struct Atom {
    PredicateId predicate;
    Dir dir;
    Element element;

    bool operator==(const Atom&) const = default;
    auto operator<=>(const Atom&) const = default;

    std::uint64_t packed() const {
        return (std::uint64_t(predicate) << 34) | (std::uint64_t(dir == Dir::backward) << 33) |
               (std::uint64_t(element.is_class()) << 32) | std::uint64_t(element.id);
    }
};

using FeatureId = std::uint32_t;
inline constexpr FeatureId kNoFeature = UINT32_MAX;

inline bool is_pattern(std::span<const Atom> atoms) {
    for (const Atom& a : atoms)
        if (a.element.is_class()) return true;
    return false;
}

/// Interns atom sequences so every path feature is carried around as one
/// dense integer; the atom list is stored once.
class FeatureTable {
public:
    FeatureId intern(std::span<const Atom> atoms) {
        std::vector<std::uint64_t> key = pack(atoms);
        auto it = map_.find(key);
        if (it != map_.end()) return it->second;
        FeatureId id = static_cast<FeatureId>(atoms_.size());
        atoms_.emplace_back(atoms.begin(), atoms.end());
        map_.emplace(std::move(key), id);
        return id;
    }

    std::optional<FeatureId> find(std::span<const Atom> atoms) const {
        auto it = map_.find(pack(atoms));
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    std::span<const Atom> atoms(FeatureId id) const {
        if (id >= atoms_.size())
            throw NotFoundError("feature id " + std::to_string(id) + " out of range");
        return atoms_[id];
    }

    std::size_t size() const { return atoms_.size(); }

private:
    static std::vector<std::uint64_t> pack(std::span<const Atom> atoms) {
        std::vector<std::uint64_t> key;
        key.reserve(atoms.size());
        for (const Atom& a : atoms) key.push_back(a.packed());
        return key;
    }
    struct KeyHash {
        std::size_t operator()(const std::vector<std::uint64_t>& k) const {
            std::size_t h = 1469598103934665603ull;
            for (std::uint64_t w : k) {
                h ^= static_cast<std::size_t>(w);
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    std::unordered_map<std::vector<std::uint64_t>, FeatureId, KeyHash> map_;
    std::vector<std::vector<Atom>> atoms_;
};

/// Element subsumption as the pattern generator can produce it: an individual
/// is below every class it instantiates within t levels; a class is below its
/// superclasses reachable in at most t-1 subClassOf hops (a class enters a
/// pattern at level >= 1, so t-1 is the widest producible gap); everything is
/// below top. Reflexive.
inline bool element_at_most(const Element& a, const Element& b, const OntologyIndex& ont,
                            std::uint32_t t, const CompiledClassSet& b_gen) {
    if (a == b) return true;
    if (!b.is_class()) return false;
    if (b.id == kTopClass) return !b_gen.contains(kTopClass);
    if (!a.is_class())
        return ont.instantiates(a.id, b.id, t, b_gen);
    if (b_gen.contains(b.id) || t == 0) return false;
    auto anc = ont.bounded_ancestors(a.id, t - 1);
    return std::binary_search(anc.begin(), anc.end(), b.id);
}

inline bool atom_more_specific(const Atom& a, const Atom& b, const OntologyIndex& ont,
                               std::uint32_t t, const CompiledClassSet& b_gen) {
    return a.predicate == b.predicate && a.dir == b.dir &&
           element_at_most(a.element, b.element, ont, t, b_gen);
}

/// P1 is more specific than P2 iff they have equal length and every atomic
/// element of P1 is more specific than P2's at the same position. Reflexive;
/// a partial order up to interning equality.
inline bool feature_more_specific(std::span<const Atom> p1, std::span<const Atom> p2,
                                  const OntologyIndex& ont, std::uint32_t t,
                                  const CompiledClassSet& b_gen) {
    if (p1.size() != p2.size()) return false;
    for (std::size_t i = 0; i < p1.size(); ++i)
        if (!atom_more_specific(p1[i], p2[i], ont, t, b_gen)) return false;
    return true;
}

/// Stable text form used as the matrix column name:
///   -[pred]->(uri) per forward atom, <-[pred]-(uri) per backward atom,
///   class elements suffixed #class.
inline std::string render(std::span<const Atom> atoms, const CanonicalGraph& g,
                          const SymbolTable& vertices, const SymbolTable& predicates) {
    std::string out;
    for (const Atom& a : atoms) {
        const std::string& pred = predicates.resolve(a.predicate);
        std::string label = a.element.id == kTopClass && a.element.is_class()
                                ? std::string(kTopUri)
                                : g.label(a.element.id, vertices);
        if (a.dir == Dir::forward) {
            out += "-[";
            out += pred;
            out += "]->(";
        } else {
            out += "<-[";
            out += pred;
            out += "]-(";
        }
        out += label;
        out += ")";
        if (a.element.is_class()) out += "#class";
    }
    return out;
}

/// Every pattern obtained by independently replacing each element of a path
/// by itself or one of its generalizations, the path itself excluded. Used by
/// the reference oracle and the generalization-count checks; the miner builds
/// patterns incrementally instead.
inline std::vector<std::vector<Atom>> enumerate_generalizations(std::span<const Atom> path,
                                                                const OntologyIndex& ont,
                                                                std::uint32_t t,
                                                                const CompiledClassSet& b_gen) {
    std::vector<std::vector<Element>> choices;
    for (const Atom& a : path) {
        std::vector<Element> opts{a.element};
        if (!a.element.is_class())
            for (VertexId cls : ont.generalizations(a.element.id, t, b_gen))
                opts.push_back(Element::of_class(cls));
        choices.push_back(std::move(opts));
    }
    std::vector<std::vector<Atom>> out;
    std::vector<Atom> current(path.begin(), path.end());
    std::vector<std::size_t> pick(path.size(), 0);
    while (true) {
        bool all_self = true;
        for (std::size_t i = 0; i < path.size(); ++i) {
            current[i].element = choices[i][pick[i]];
            if (pick[i] != 0) all_self = false;
        }
        if (!all_self) out.push_back(current);
        // odometer
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
    return out;
}

}  // namespace kgfeat
