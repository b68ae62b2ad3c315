#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "kgfeat/canonical.hpp"

using namespace kgfeat;
using fixtures::ex;
using fixtures::Triple;

namespace {

// Independent union-find for the oracle checks, intentionally the dumb kind.
struct SlowDsu {
    std::vector<std::uint32_t> parent;
    explicit SlowDsu(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t x) { return parent[x] == x ? x : find(parent[x]); }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

TEST_CASE("no sameAs arcs means identity quotient", "[canonical]") {
    auto tg = fixtures::build({{ex("a"), ex("p"), ex("b")}, {ex("b"), ex("p"), ex("c")}}, {"a"});
    CHECK(tg.graph.vertex_count() == 3);
    CHECK(tg.graph.arc_count() == 2);
    for (VertexId v = 0; v < 3; ++v) CHECK(tg.graph.members_of(tg.graph.to_canonical(v)).size() == 1);
}

TEST_CASE("sameAs chain contracts transitively and symmetrically", "[canonical]") {
    const std::string sameas = kDefaultSameAsUri;
    auto tg = fixtures::build({{ex("a"), sameas, ex("b")},
                               {ex("b"), sameas, ex("c")},
                               {ex("c"), ex("p"), ex("d")}},
                              {"a"});
    CHECK(tg.graph.vertex_count() == 2);
    VertexId abc = tg.canon("a");
    CHECK(tg.canon("b") == abc);
    CHECK(tg.canon("c") == abc);
    CHECK(tg.graph.members_of(abc).size() == 3);
    REQUIRE(tg.graph.out(abc).size() == 1);
    CHECK(tg.graph.out(abc)[0].second == tg.canon("d"));
    // representative is the lexicographic minimum
    CHECK(tg.graph.label(abc, tg.vertices) == ex("a"));
    // no sameAs arc survives
    CHECK(tg.graph.arc_count() == 1);
}

TEST_CASE("merged vertices expose the union of both neighborhoods", "[canonical]") {
    const std::string sameas = kDefaultSameAsUri;
    auto tg = fixtures::build({{ex("drug1"), sameas, ex("drug2")},
                               {ex("drug1"), ex("p"), ex("x1")},
                               {ex("drug1"), ex("p"), ex("x2")},
                               {ex("drug2"), ex("q"), ex("y1")},
                               {ex("drug2"), ex("q"), ex("y2")}},
                              {"drug1"});
    VertexId d = tg.canon("drug1");
    CHECK(tg.graph.out(d).size() == 4);
    std::set<VertexId> targets;
    for (auto [p, w] : tg.graph.out(d)) targets.insert(w);
    CHECK(targets ==
          std::set<VertexId>{tg.canon("x1"), tg.canon("x2"), tg.canon("y1"), tg.canon("y2")});
}

TEST_CASE("seeds merged by canonicalization collapse and are reported", "[canonical]") {
    const std::string sameas = kDefaultSameAsUri;
    auto tg = fixtures::build({{ex("s1"), sameas, ex("s2")}, {ex("s1"), ex("p"), ex("o")}},
                              {"s1", "s2"});
    CHECK(tg.graph.seeds().size() == 1);
    REQUIRE(tg.graph.merged_seed_groups().size() == 1);
    CHECK(tg.graph.merged_seed_groups()[0] == std::vector<std::string>{ex("s1"), ex("s2")});
}

TEST_CASE("self-loops from contracted non-sameAs arcs are kept", "[canonical]") {
    const std::string sameas = kDefaultSameAsUri;
    auto tg =
        fixtures::build({{ex("a"), sameas, ex("b")}, {ex("a"), ex("p"), ex("b")}}, {"a"});
    VertexId ab = tg.canon("a");
    REQUIRE(tg.graph.out(ab).size() == 1);
    CHECK(tg.graph.out(ab)[0].second == ab);
}

TEST_CASE("quotient soundness and idempotence on random graphs", "[canonical]") {
    std::mt19937 rng(13);
    for (int round = 0; round < 200; ++round) {
        std::uint32_t n = 3 + rng() % 10;
        std::vector<Triple> triples;
        std::set<std::pair<std::uint32_t, std::uint32_t>> sameas_pairs;
        auto name = [](std::uint32_t i) { return "r" + std::to_string(i); };
        std::uint32_t arcs = 2 + rng() % 12;
        for (std::uint32_t i = 0; i < arcs; ++i)
            triples.push_back({ex(name(rng() % n)), ex("p" + std::to_string(rng() % 2)),
                               ex(name(rng() % n))});
        std::uint32_t merges = rng() % 4;
        for (std::uint32_t i = 0; i < merges; ++i) {
            std::uint32_t a = rng() % n, b = rng() % n;
            triples.push_back({ex(name(a)), kDefaultSameAsUri, ex(name(b))});
            sameas_pairs.insert({a, b});
        }
        // make sure every vertex appears even without arcs
        for (std::uint32_t i = 0; i < n; ++i)
            triples.push_back({ex(name(i)), ex("p0"), ex(name(i))});

        auto tg = fixtures::build(triples, {name(0)});

        // oracle components over raw ids
        SlowDsu dsu(tg.raw.vertex_count);
        auto sameas_id = tg.predicates.find(kDefaultSameAsUri);
        for (const Arc& a : tg.raw.arcs)
            if (sameas_id && a.predicate == *sameas_id) dsu.unite(a.source, a.target);
        std::set<std::uint32_t> roots;
        for (std::uint32_t v = 0; v < tg.raw.vertex_count; ++v) roots.insert(dsu.find(v));
        REQUIRE(tg.graph.vertex_count() == roots.size());
        for (std::uint32_t a = 0; a < tg.raw.vertex_count; ++a)
            for (std::uint32_t b = 0; b < tg.raw.vertex_count; ++b)
                REQUIRE((dsu.find(a) == dsu.find(b)) ==
                        (tg.graph.to_canonical(a) == tg.graph.to_canonical(b)));

        // quotient soundness: canonical arcs <-> raw non-sameAs arcs
        std::set<std::tuple<VertexId, PredicateId, VertexId>> canon_arcs;
        for (VertexId v = 0; v < tg.graph.vertex_count(); ++v)
            for (auto [p, w] : tg.graph.out(v)) canon_arcs.insert({v, p, w});
        std::set<std::tuple<VertexId, PredicateId, VertexId>> mapped;
        for (const Arc& a : tg.raw.arcs) {
            if (sameas_id && a.predicate == *sameas_id) continue;
            mapped.insert({tg.graph.to_canonical(a.source), a.predicate,
                           tg.graph.to_canonical(a.target)});
        }
        REQUIRE(canon_arcs == mapped);

        // idempotence: canonicalizing the quotient graph again merges nothing
        RawGraph again;
        again.vertex_count = tg.graph.vertex_count();
        for (const auto& [v, p, w] : canon_arcs) again.arcs.push_back({v, p, w});
        CanonicalGraph second = canonicalize(again, tg.vertices, sameas_id, {});
        CHECK(second.vertex_count() == tg.graph.vertex_count());
    }
}
