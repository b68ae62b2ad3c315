#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "kgfeat/pathfeat.hpp"
#include "kgfeat/symbols.hpp"

using namespace kgfeat;

TEST_CASE("interning is idempotent and dense", "[symbols]") {
    SymbolTable t;
    SymbolId a1 = t.intern("http://ex/a");
    SymbolId a2 = t.intern("http://ex/a");
    CHECK(a1 == a2);

    SymbolTable t2;
    CHECK(t2.intern("x") == 0);
    CHECK(t2.intern("y") == 1);
    CHECK(t2.intern("z") == 2);
    CHECK(t2.size() == 3);
}

TEST_CASE("empty strings are rejected", "[symbols]") {
    SymbolTable t;
    CHECK_THROWS_AS(t.intern(""), InputError);
}

TEST_CASE("resolve of an unknown id fails", "[symbols]") {
    SymbolTable t;
    t.intern("a");
    CHECK_THROWS_AS(t.resolve(5), NotFoundError);
}

TEST_CASE("round-trip over random URIs", "[symbols]") {
    std::mt19937 rng(7);
    const char alphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789/:#-_.";
    std::vector<std::string> uris;
    uris.reserve(100000);
    for (int i = 0; i < 100000; ++i) {
        std::string s = "http://";
        std::size_t len = 5 + rng() % 40;
        for (std::size_t j = 0; j < len; ++j) s += alphabet[rng() % (sizeof(alphabet) - 1)];
        uris.push_back(std::move(s));
    }
    SymbolTable t;
    std::vector<SymbolId> ids;
    ids.reserve(uris.size());
    for (const auto& u : uris) ids.push_back(t.intern(u));
    for (std::size_t i = 0; i < uris.size(); ++i) REQUIRE(t.resolve(ids[i]) == uris[i]);
    // ids form a gap-free prefix of the naturals
    SymbolId max_id = 0;
    for (SymbolId id : ids) max_id = std::max(max_id, id);
    CHECK(max_id + 1 == t.size());
}

TEST_CASE("feature table interns by element-wise identity", "[symbols]") {
    FeatureTable ft;
    std::vector<Atom> a{{0, Dir::forward, Element::individual(3)},
                        {1, Dir::forward, Element::of_class(4)}};
    std::vector<Atom> b = a;
    std::vector<Atom> c = a;
    c[1].element = Element::individual(4);  // same id, different kind
    std::vector<Atom> d = a;
    d[0].dir = Dir::backward;

    FeatureId fa = ft.intern(a);
    CHECK(ft.intern(b) == fa);
    CHECK(ft.intern(c) != fa);
    CHECK(ft.intern(d) != fa);
    CHECK(ft.atoms(fa).size() == 2);
    CHECK(ft.find(a).has_value());
    std::vector<Atom> prefix{a[0]};
    CHECK(ft.find(prefix) == std::nullopt);
}
