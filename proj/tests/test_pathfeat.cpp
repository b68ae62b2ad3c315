#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "kgfeat/pathfeat.hpp"

using namespace kgfeat;
using fixtures::ex;

namespace {

CompiledClassSet none;

Atom fwd(PredicateId p, Element e) { return {p, Dir::forward, e}; }

}  // namespace

TEST_CASE("atom specificity follows instantiation and subsumption", "[pathfeat]") {
    auto tg = fixtures::example_graph();
    PredicateId p1 = tg.pid(ex("p1")), p2 = tg.pid(ex("p2"));
    Element v2 = Element::individual(tg.canon("v2"));
    Element v3 = Element::individual(tg.canon("v3"));
    Element T1 = Element::of_class(tg.canon("T1"));
    Element T2 = Element::of_class(tg.canon("T2"));
    Element T3 = Element::of_class(tg.canon("T3"));

    // individual below a class it instantiates, within t
    CHECK(atom_more_specific(fwd(p2, v3), fwd(p2, T3), tg.ont, 2, none));
    CHECK_FALSE(atom_more_specific(fwd(p2, v3), fwd(p2, T3), tg.ont, 1, none));
    // class below its superclass
    CHECK(atom_more_specific(fwd(p2, T2), fwd(p2, T3), tg.ont, 2, none));
    CHECK_FALSE(atom_more_specific(fwd(p2, T3), fwd(p2, T2), tg.ont, 2, none));
    // predicate mismatch
    CHECK_FALSE(atom_more_specific(fwd(p1, v2), fwd(p2, v2), tg.ont, 2, none));
    // direction mismatch
    CHECK_FALSE(atom_more_specific({p1, Dir::backward, v2}, fwd(p1, v2), tg.ont, 2, none));
    // everything below top
    CHECK(atom_more_specific(fwd(p1, v2), fwd(p1, Element::top()), tg.ont, 0, none));
    CHECK(atom_more_specific(fwd(p1, T1), fwd(p1, Element::top()), tg.ont, 0, none));
    // reflexive
    CHECK(atom_more_specific(fwd(p1, v2), fwd(p1, v2), tg.ont, 0, none));
}

TEST_CASE("feature specificity is position-wise with equal length", "[pathfeat]") {
    auto tg = fixtures::example_graph();
    PredicateId p1 = tg.pid(ex("p1")), p2 = tg.pid(ex("p2"));
    std::vector<Atom> concrete{fwd(p1, Element::individual(tg.canon("v2"))),
                               fwd(p2, Element::individual(tg.canon("v3")))};
    std::vector<Atom> pattern{fwd(p1, Element::of_class(tg.canon("T1"))),
                              fwd(p2, Element::of_class(tg.canon("T3")))};
    CHECK(feature_more_specific(concrete, pattern, tg.ont, 2, none));
    CHECK_FALSE(feature_more_specific(pattern, concrete, tg.ont, 2, none));
    CHECK(feature_more_specific(pattern, pattern, tg.ont, 2, none));
    std::vector<Atom> shorter{pattern[0]};
    CHECK_FALSE(feature_more_specific(shorter, pattern, tg.ont, 2, none));
}

TEST_CASE("feature specificity is a partial order on random hierarchies", "[pathfeat]") {
    std::mt19937 rng(41);
    for (int round = 0; round < 200; ++round) {
        auto inst = fixtures::random_instance(rng);
        auto tg = fixtures::build(inst.triples, inst.seeds);
        std::uint32_t t = inst.cfg.t;

        // sample random atoms over the instance vocabulary
        std::vector<Element> elems;
        for (VertexId v = 0; v < tg.graph.vertex_count(); ++v) {
            if (tg.ont.is_class(v))
                elems.push_back(Element::of_class(v));
            else
                elems.push_back(Element::individual(v));
        }
        elems.push_back(Element::top());
        auto rand_feature = [&](std::size_t len) {
            std::vector<Atom> atoms;
            for (std::size_t i = 0; i < len; ++i)
                atoms.push_back({static_cast<PredicateId>(rng() % 2), Dir::forward,
                                 elems[rng() % elems.size()]});
            return atoms;
        };
        std::vector<std::vector<Atom>> sample;
        for (int i = 0; i < 12; ++i) sample.push_back(rand_feature(1 + rng() % 2));

        for (const auto& a : sample) {
            REQUIRE(feature_more_specific(a, a, tg.ont, t, none));  // reflexive
            for (const auto& b : sample) {
                bool ab = feature_more_specific(a, b, tg.ont, t, none);
                bool ba = feature_more_specific(b, a, tg.ont, t, none);
                if (ab && ba) REQUIRE(a == b);  // antisymmetric up to equality
                for (const auto& c : sample) {
                    if (!ab || !feature_more_specific(b, c, tg.ont, t, none)) continue;
                    // Transitivity holds position-wise whenever one side of
                    // the composition is an equality (or the outer element is
                    // top); the t-bounded relation does not compose across
                    // two strict generalization hops.
                    bool composable = true;
                    for (std::size_t i = 0; i < a.size(); ++i)
                        if (!(a[i].element == b[i].element || b[i].element == c[i].element ||
                              c[i].element == Element::top()))
                            composable = false;
                    if (composable)
                        REQUIRE(feature_more_specific(a, c, tg.ont, t, none));
                }
            }
        }
    }
}

TEST_CASE("rendering is deterministic and marks classes and direction", "[pathfeat]") {
    auto tg = fixtures::example_graph();
    std::vector<Atom> atoms{fwd(tg.pid(ex("p1")), Element::of_class(tg.canon("T1"))),
                            {tg.pid(ex("p2")), Dir::backward, Element::individual(tg.canon("v3"))},
                            fwd(tg.pid(ex("p3")), Element::top())};
    CHECK(render(atoms, tg.graph, tg.vertices, tg.predicates) ==
          "-[http://ex/p1]->(http://ex/T1)#class"
          "<-[http://ex/p2]-(http://ex/v3)"
          "-[http://ex/p3]->(urn:kgfeat:top)#class");
}

TEST_CASE("generalization enumeration counts", "[pathfeat]") {
    auto tg = fixtures::example_graph();
    PredicateId p1 = tg.pid(ex("p1")), p2 = tg.pid(ex("p2")), p3 = tg.pid(ex("p3"));
    std::vector<Atom> two{fwd(p1, Element::individual(tg.canon("v2"))),
                          fwd(p2, Element::individual(tg.canon("v3")))};
    // v2 in {v2, T1, top} x v3 in {v3, T2, T3, top}, minus the path itself
    CHECK(enumerate_generalizations(two, tg.ont, 2, none).size() == 11);

    std::vector<Atom> three = two;
    three.push_back(fwd(p3, Element::individual(tg.canon("v6"))));
    // x v6 in {v6, top}
    CHECK(enumerate_generalizations(three, tg.ont, 2, none).size() == 23);

    // nothing to generalize with when t = 0 and top is blacklisted
    CompiledClassSet no_top;
    no_top.top_blocked = true;
    CHECK(enumerate_generalizations(two, tg.ont, 0, no_top).empty());
}

TEST_CASE("enumerated patterns all capture the source path", "[pathfeat]") {
    auto tg = fixtures::example_graph();
    PredicateId p1 = tg.pid(ex("p1")), p2 = tg.pid(ex("p2"));
    std::vector<Atom> path{fwd(p1, Element::individual(tg.canon("v2"))),
                           fwd(p2, Element::individual(tg.canon("v3")))};
    for (const auto& pat : enumerate_generalizations(path, tg.ont, 2, none)) {
        REQUIRE(pat.size() == path.size());
        CHECK(feature_more_specific(path, pat, tg.ont, 2, none));
        CHECK(is_pattern(pat));
    }
}
