#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "kgfeat/ontology.hpp"
#include "kgfeat/pathfeat.hpp"

namespace kgfeat {

/// Most-specific retention structure for one (iteration, support set) scope:
/// predicates and elements are indexed on alternating levels, so the depth is
/// twice the current pattern length. A fresh tree is built per scope; all
/// candidates of the scope are inserted, then each one is queried for a
/// strictly more specific co-candidate. Survivors are exactly the minimal
/// elements of the specificity order, independent of insertion order (the
/// t-bounded subsumption is not transitive, so evict-on-arrival would be
/// order-sensitive).
class MostSpecificTree {
public:
    MostSpecificTree(const OntologyIndex& ont, std::uint32_t t, const CompiledClassSet& b_gen)
        : ont_(ont), t_(t), b_gen_(b_gen) {}

    void insert(std::span<const Atom> atoms, FeatureId id) {
        Node* node = &root_;
        for (const Atom& a : atoms) {
            node = &node->children[pred_key(a)];
            node = &node->children[element_key(a.element)];
        }
        node->leaf = id;
    }

    /// true iff a stored pattern other than `self` is more specific than
    /// `atoms` (equality cannot collide: equal atom sequences intern to the
    /// same id and appear once per scope).
    bool dominated(std::span<const Atom> atoms, FeatureId self) const {
        return descend(root_, atoms, 0, self);
    }

    bool empty() const { return root_.children.empty(); }

private:
    struct Node {
        std::map<std::uint64_t, Node> children;
        FeatureId leaf = kNoFeature;
    };

    static std::uint64_t pred_key(const Atom& a) {
        return (std::uint64_t(a.predicate) << 1) | (a.dir == Dir::backward ? 1 : 0);
    }
    static std::uint64_t element_key(const Element& e) {
        return (std::uint64_t(e.is_class()) << 32) | std::uint64_t(e.id);
    }
    static Element key_element(std::uint64_t k) {
        return {(k >> 32) ? Element::Kind::cls : Element::Kind::individual,
                static_cast<VertexId>(k & 0xFFFFFFFFu)};
    }

    bool descend(const Node& node, std::span<const Atom> atoms, std::size_t i,
                 FeatureId self) const {
        if (i == atoms.size()) return node.leaf != kNoFeature && node.leaf != self;
        const Atom& a = atoms[i];
        auto pit = node.children.find(pred_key(a));
        if (pit == node.children.end()) return false;
        for (const auto& [ekey, child] : pit->second.children) {
            if (element_at_most(key_element(ekey), a.element, ont_, t_, b_gen_) &&
                descend(child, atoms, i + 1, self))
                return true;
        }
        return false;
    }

    const OntologyIndex& ont_;
    std::uint32_t t_;
    const CompiledClassSet& b_gen_;
    Node root_;
};

}  // namespace kgfeat
