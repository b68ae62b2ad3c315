#pragma once

#include <array>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "kgfeat/canonical.hpp"
#include "kgfeat/config.hpp"
#include "kgfeat/graph.hpp"
#include "kgfeat/neighbors.hpp"
#include "kgfeat/ontology.hpp"
#include "kgfeat/symbols.hpp"

namespace fixtures {

using namespace kgfeat;

using Triple = std::array<std::string, 3>;

inline std::string ex(const std::string& name) { return "http://ex/" + name; }

/// Builds a RawGraph directly from triples (same semantics as the file
/// parser: dedup, vertices = interned order).
struct TestGraph {
    SymbolTable vertices{SymbolTable::Kind::vertex};
    SymbolTable predicates{SymbolTable::Kind::predicate};
    RawGraph raw;
    CanonicalGraph graph;
    OntologyIndex ont;

    VertexId canon(const std::string& name) const {
        auto id = vertices.find(ex(name));
        if (!id) throw std::runtime_error("unknown test vertex: " + name);
        return graph.to_canonical(*id);
    }
    PredicateId pid(const std::string& uri) const {
        auto id = predicates.find(uri);
        if (!id) throw std::runtime_error("unknown test predicate: " + uri);
        return *id;
    }
};

inline TestGraph build(const std::vector<Triple>& triples, const std::vector<std::string>& seed_names,
                       const MiningConfig& cfg = {}) {
    TestGraph tg;
    std::unordered_set<std::string> seen;
    for (const auto& [s, p, o] : triples) {
        VertexId sv = tg.vertices.intern(s);
        PredicateId pv = tg.predicates.intern(p);
        VertexId ov = tg.vertices.intern(o);
        if (!seen.insert(s + "\t" + p + "\t" + o).second) {
            ++tg.raw.duplicates_dropped;
            continue;
        }
        tg.raw.arcs.push_back({sv, pv, ov});
        ++tg.raw.triples_kept;
    }
    tg.raw.vertex_count = tg.vertices.size();
    std::vector<VertexId> seeds;
    for (const auto& n : seed_names) seeds.push_back(*tg.vertices.find(ex(n)));
    auto sameas = tg.predicates.find(cfg.sameas_uri);
    tg.graph = canonicalize(tg.raw, tg.vertices, sameas, seeds);
    PredicateId type_pred = tg.predicates.intern(cfg.type_uri);
    PredicateId sub_pred = tg.predicates.intern(cfg.subclassof_uri);
    tg.ont.build(tg.graph, type_pred, sub_pred);
    return tg;
}

/// Hand encoding of the running example graph: two seeds n1/n2, individuals
/// v1..v9, classes T1..T6, five extra out-neighbors of v1 making it a hub
/// under d = 4. The synthetic top class is not part of the file.
inline std::vector<Triple> example_triples() {
    const std::string type = kDefaultTypeUri;
    const std::string sub = kDefaultSubClassOfUri;
    std::vector<Triple> t;
    auto arc = [&](const std::string& s, const std::string& p, const std::string& o) {
        t.push_back({ex(s), p[0] == 'h' ? p : ex(p), ex(o)});
    };
    arc("n1", "p4", "v1");
    arc("n2", "p4", "v1");
    arc("n1", "p6", "v8");
    arc("n2", "p6", "v9");
    arc("v7", "p5", "n2");
    arc("n1", "p1", "v2");
    arc("v2", "p2", "v3");
    arc("v3", "p3", "v6");
    arc("n2", "p1", "v4");
    arc("v4", "p2", "v5");
    arc("v5", "p3", "v6");
    arc("v2", type, "T1");
    arc("v3", type, "T2");
    arc("v8", type, "T5");
    arc("v8", type, "T6");
    arc("v9", type, "T5");
    arc("v9", type, "T6");
    arc("v4", type, "T1");
    arc("v5", type, "T4");
    arc("T2", sub, "T3");
    arc("T4", sub, "T3");
    for (int i = 1; i <= 5; ++i) arc("v1", "p7", "d" + std::to_string(i));
    return t;
}

/// Example 1 / Fig. 2 parameters: k=3, t=2, d=4, u=false, l in [2,3], default
/// predicate blacklist (type + subClassOf).
inline MiningConfig example_config() {
    MiningConfig cfg;
    cfg.k = 3;
    cfg.t = 2;
    cfg.d = 4;
    cfg.l_min = 2;
    cfg.l_max = 3;
    cfg.u = false;
    return cfg;
}

inline TestGraph example_graph(const MiningConfig& cfg = example_config()) {
    return build(example_triples(), {"n1", "n2"}, cfg);
}

struct MinedExample {
    TestGraph tg;
    MiningConfig cfg;
    CompiledClassSet exp_blocked;
    CompiledClassSet gen_blocked;
    NeighborhoodResult nres;
};

inline MinedExample mined_example(MiningConfig cfg = example_config()) {
    MinedExample m{example_graph(cfg), cfg, {}, {}, {}};
    m.exp_blocked = m.tg.ont.compile(cfg.b_exp_types, m.tg.graph, m.tg.vertices);
    m.gen_blocked = m.tg.ont.compile(cfg.b_gen_types, m.tg.graph, m.tg.vertices);
    m.nres = mine_neighbors(m.tg.graph, m.tg.ont, cfg, m.tg.predicates, m.exp_blocked);
    compute_interesting_types(m.nres, m.tg.ont, cfg, m.gen_blocked);
    return m;
}

/// Random instance for the oracle-equivalence and property suites: <= 30
/// vertices, <= 4-deep class hierarchy, small predicate vocabulary.
struct RandomInstance {
    std::vector<Triple> triples;
    std::vector<std::string> seeds;
    MiningConfig cfg;
};

inline RandomInstance random_instance(std::mt19937& rng) {
    RandomInstance inst;
    auto pick = [&](std::uint32_t lo, std::uint32_t hi) {
        return lo + static_cast<std::uint32_t>(rng() % (hi - lo + 1));
    };
    const std::string type = kDefaultTypeUri;
    const std::string sub = kDefaultSubClassOfUri;

    std::uint32_t n_ind = pick(6, 16);
    std::uint32_t n_cls = pick(2, 8);
    std::uint32_t n_pred = pick(2, 4);
    std::uint32_t n_seed = pick(2, 5);
    std::uint32_t n_arcs = pick(n_ind, 3 * n_ind);

    std::vector<std::string> ind, cls, preds;
    for (std::uint32_t i = 0; i < n_ind; ++i) ind.push_back("i" + std::to_string(i));
    for (std::uint32_t i = 0; i < n_cls; ++i) cls.push_back("C" + std::to_string(i));
    for (std::uint32_t i = 0; i < n_pred; ++i) preds.push_back(ex("q" + std::to_string(i)));

    std::unordered_set<std::string> dedup;
    auto add = [&](const std::string& s, const std::string& p, const std::string& o) {
        if (dedup.insert(s + "|" + p + "|" + o).second) inst.triples.push_back({s, p, o});
    };

    // class DAG, <= 4 levels: C_i may specialize classes with larger index
    for (std::uint32_t i = 0; i + 1 < n_cls; ++i)
        if (rng() % 100 < 60) add(ex(cls[i]), sub, ex(cls[pick(i + 1, n_cls - 1)]));
    // type arcs
    for (std::uint32_t i = 0; i < n_ind; ++i) {
        std::uint32_t count = rng() % 100 < 75 ? pick(1, 2) : 0;
        for (std::uint32_t c = 0; c < count; ++c)
            add(ex(ind[i]), type, ex(cls[rng() % n_cls]));
    }
    // individual arcs
    for (std::uint32_t a = 0; a < n_arcs; ++a)
        add(ex(ind[rng() % n_ind]), preds[rng() % n_pred], ex(ind[rng() % n_ind]));
    // occasional sameAs
    if (rng() % 100 < 25)
        add(ex(ind[rng() % n_ind]), kDefaultSameAsUri, ex(ind[rng() % n_ind]));

    // every seed must exist as a graph vertex
    for (std::uint32_t s = 0; s < n_seed; ++s) {
        inst.seeds.push_back(ind[s]);
        add(ex(ind[s]), preds[rng() % n_pred], ex(ind[(s + 1) % n_ind]));
    }

    inst.cfg.k = pick(1, 3);
    inst.cfg.t = pick(0, 3);
    inst.cfg.d = rng() % 100 < 20 ? kNoLimit : pick(2, 6);
    inst.cfg.l_min = pick(1, 3);
    inst.cfg.l_max = rng() % 100 < 50 ? kNoLimit : pick(inst.cfg.l_min, 4);
    inst.cfg.u = rng() % 100 < 30;
    if (rng() % 100 < 20) {
        UriMatcher m;
        m.add(ex("C" + std::to_string(rng() % n_cls)));
        inst.cfg.b_exp_types = m;
    }
    if (rng() % 100 < 20) {
        UriMatcher m;
        m.add(ex("C" + std::to_string(rng() % n_cls)));
        inst.cfg.b_gen_types = m;
    }
    return inst;
}

}  // namespace fixtures
