#pragma once

#include <chrono>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgfeat/canonical.hpp"
#include "kgfeat/config.hpp"
#include "kgfeat/features.hpp"
#include "kgfeat/graph.hpp"
#include "kgfeat/neighbors.hpp"
#include "kgfeat/ntriples.hpp"
#include "kgfeat/ontology.hpp"
#include "kgfeat/pathfeat.hpp"
#include "kgfeat/pathmine.hpp"
#include "kgfeat/symbols.hpp"

namespace kgfeat {

struct PipelineInput {
    std::string graph_path;
    std::string seeds_path;      // one of seeds_path / seed_class_uri
    std::string seed_class_uri;
};

/// Everything a caller (CLI, tests) may want to inspect after a run, plus the
/// structured report.
struct PipelineResult {
    SymbolTable vertices{SymbolTable::Kind::vertex};
    SymbolTable predicates{SymbolTable::Kind::predicate};
    FeatureTable feature_table;
    RawGraph raw;
    CanonicalGraph graph;
    OntologyIndex ontology;
    NeighborhoodResult neighborhood;
    PathMiningResult paths;
    std::vector<FeatureColumn> columns;          // after filtering
    std::vector<FeatureColumn> columns_unfiltered;
    std::vector<std::string> warnings;
    nlohmann::json report;
};

namespace detail {

class StageClock {
public:
    void start(const std::string& name) {
        name_ = name;
        begin_ = std::chrono::steady_clock::now();
    }
    void stop(nlohmann::json& stages) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - begin_)
                      .count();
        stages[name_] = ms;
    }

private:
    std::string name_;
    std::chrono::steady_clock::time_point begin_;
};

}  // namespace detail

inline nlohmann::json trace_to_json(const IterationTrace& tr, const PipelineResult& r) {
    nlohmann::json j;
    j["h"] = tr.h;
    j["paths_alive"] = tr.paths_alive;
    j["paths_expanded"] = tr.paths_expanded;
    j["patterns_generated"] = tr.patterns_generated;
    j["one_path_discarded"] = tr.one_path_discarded;
    j["tree_discarded"] = tr.tree_discarded;
    j["patterns_surviving"] = tr.patterns_surviving;
    nlohmann::json added = nlohmann::json::array();
    for (FeatureId fid : tr.added)
        added.push_back(render(r.feature_table.atoms(fid), r.graph, r.vertices, r.predicates));
    j["added"] = std::move(added);
    nlohmann::json replaced = nlohmann::json::array();
    for (const ReplaceEvent& ev : tr.replaced) {
        nlohmann::json e;
        e["added"] = render(r.feature_table.atoms(ev.added), r.graph, r.vertices, r.predicates);
        nlohmann::json rm = nlohmann::json::array();
        for (FeatureId fid : ev.removed)
            rm.push_back(render(r.feature_table.atoms(fid), r.graph, r.vertices, r.predicates));
        e["removed"] = std::move(rm);
        replaced.push_back(std::move(e));
    }
    j["replaced"] = std::move(replaced);
    return j;
}

/// Runs ingest -> canonicalize -> neighbors/types -> path mining -> filter,
/// optionally emitting the matrix files. The emitted files are byte-identical
/// across runs with identical inputs and config, for any thread count.
inline PipelineResult run_pipeline(const MiningConfig& cfg, const PipelineInput& input,
                                   const std::optional<std::string>& out_dir,
                                   const PathMiningOptions& mining_opts = {}) {
    PipelineResult r;
    nlohmann::json& report = r.report;
    nlohmann::json stages;
    detail::StageClock clock;

    {
        auto diags = validate_config(cfg);
        for (const auto& d : diags) {
            if (d.level == Diagnostic::Level::error)
                throw ConfigError(d.message);
            r.warnings.push_back(d.message);
        }
    }

    clock.start("ingest_ms");
    r.raw = load_triples(input.graph_path, r.vertices, r.predicates);

    std::vector<VertexId> raw_seeds;
    if (!input.seeds_path.empty()) {
        SeedList sl = load_seed_list(input.seeds_path, r.vertices);
        raw_seeds = sl.seeds;
        for (const auto& uri : sl.not_in_graph)
            r.warnings.push_back("seed not in graph, skipped: " + uri);
    }
    clock.stop(stages);

    clock.start("canonicalize_ms");
    std::optional<PredicateId> sameas = r.predicates.find(cfg.sameas_uri);
    r.graph = canonicalize(r.raw, r.vertices, sameas, raw_seeds);
    clock.stop(stages);

    clock.start("ontology_ms");
    // Type/subClassOf predicates may be absent from small graphs; interning
    // them is harmless and keeps ids valid.
    PredicateId type_pred = r.predicates.intern(cfg.type_uri);
    PredicateId subclass_pred = r.predicates.intern(cfg.subclassof_uri);
    r.ontology.build(r.graph, type_pred, subclass_pred);

    if (!input.seed_class_uri.empty()) {
        // Seeds defined in intension: all instances of the class, at
        // unbounded level, ordered by representative URI.
        auto cls_id = r.vertices.find(input.seed_class_uri);
        if (!cls_id)
            throw InputError("seed class not in graph: " + input.seed_class_uri);
        UriMatcher m;
        m.add(input.seed_class_uri);
        CompiledClassSet target = r.ontology.compile(m, r.graph, r.vertices);
        auto blocked = r.ontology.blocked_vertex_flags(target);  // same unbounded reach
        std::vector<std::pair<std::string, VertexId>> found;
        for (VertexId v = 0; v < r.graph.vertex_count(); ++v)
            if (blocked[v]) found.emplace_back(r.graph.label(v, r.vertices), v);
        std::sort(found.begin(), found.end());
        std::vector<VertexId> seeds;
        for (auto& [uri, v] : found) seeds.push_back(v);
        // Rebuild the canonical graph with the intensional seed set attached.
        std::vector<VertexId> as_raw;
        for (VertexId c : seeds) as_raw.push_back(r.graph.members_of(c).front());
        r.graph = canonicalize(r.raw, r.vertices, sameas, as_raw);
        r.ontology.build(r.graph, type_pred, subclass_pred);
    }

    for (const auto& group : r.graph.merged_seed_groups()) {
        std::string msg = "seeds merged by sameAs canonicalization:";
        for (const auto& uri : group) msg += " " + uri;
        r.warnings.push_back(msg);
    }
    for (VertexId s : r.graph.seeds())
        if (r.ontology.is_class(s))
            r.warnings.push_back("seed is an ontology class, treated as an individual: " +
                                 r.graph.label(s, r.vertices));
    for (VertexId c = 0; c < r.graph.vertex_count(); ++c)
        if (r.graph.members_of(c).size() > 1 && r.ontology.is_class(c)) {
            r.warnings.push_back("sameAs merge involves an ontology class: " +
                                 r.graph.label(c, r.vertices));
        }
    clock.stop(stages);

    clock.start("neighbors_ms");
    CompiledClassSet exp_blocked = r.ontology.compile(cfg.b_exp_types, r.graph, r.vertices);
    CompiledClassSet gen_blocked = r.ontology.compile(cfg.b_gen_types, r.graph, r.vertices);
    r.neighborhood = mine_neighbors(r.graph, r.ontology, cfg, r.predicates, exp_blocked);
    compute_interesting_types(r.neighborhood, r.ontology, cfg, gen_blocked);
    clock.stop(stages);

    clock.start("paths_ms");
    if (cfg.l_min > r.graph.seeds().size())
        r.warnings.push_back("l_min exceeds the number of canonical seeds; no feature can qualify");
    r.paths = mine_path_features(r.graph, r.ontology, r.neighborhood, cfg, gen_blocked,
                                 r.feature_table, mining_opts);
    clock.stop(stages);

    clock.start("filter_ms");
    r.columns_unfiltered =
        build_columns(r.neighborhood, r.paths, r.feature_table, r.graph, r.vertices, r.predicates);
    DomainFilterIndex filter(cfg, r.ontology, r.graph, r.vertices);
    r.columns = apply_filter(r.columns_unfiltered, filter, r.feature_table);
    clock.stop(stages);

    if (out_dir) {
        clock.start("emit_ms");
        emit_matrix_dir(r.columns, r.graph, r.vertices, *out_dir);
        clock.stop(stages);
    }

    // Report: the "generated vs retained" distinction quantifies the pruning.
    report["stages"] = std::move(stages);
    report["graph"] = {{"raw_vertices", r.raw.vertex_count},
                       {"raw_arcs", r.raw.arcs.size()},
                       {"literals_dropped", r.raw.literals_dropped},
                       {"duplicates_dropped", r.raw.duplicates_dropped},
                       {"canonical_vertices", r.graph.vertex_count()},
                       {"canonical_arcs", r.graph.arc_count()},
                       {"canonical_seeds", r.graph.seeds().size()}};
    std::size_t neighbors_before = r.neighborhood.support.size();
    std::size_t types_before = r.neighborhood.reached_types.size();
    std::size_t path_cols = 0, pattern_cols = 0, neighbor_cols = 0;
    for (const auto& c : r.columns_unfiltered) {
        if (c.kind == FeatureColumn::Kind::neighbor) ++neighbor_cols;
        else if (c.kind == FeatureColumn::Kind::path) ++path_cols;
        else ++pattern_cols;
    }
    report["features"] = {{"neighbors_reached", neighbors_before},
                          {"types_reached", types_before},
                          {"neighbors_interesting", r.neighborhood.interesting_neighbors.size()},
                          {"types_interesting", r.neighborhood.interesting_types.size()},
                          {"path_features_generated", r.paths.generated_total},
                          {"path_features_in_f", r.paths.retained_total},
                          {"paths_in_f", path_cols},
                          {"patterns_in_f", pattern_cols},
                          {"columns_before_filter", r.columns_unfiltered.size()},
                          {"columns_after_filter", r.columns.size()},
                          {"matrix_rows", r.graph.seeds().size()},
                          {"matrix_columns", r.columns.size()}};
    nlohmann::json iters = nlohmann::json::array();
    for (const auto& tr : r.paths.iterations) iters.push_back(trace_to_json(tr, r));
    report["iterations"] = std::move(iters);
    report["warnings"] = r.warnings;
    if (r.paths.config_conflict)
        report["config_conflict"] = true;
    return r;
}

inline void write_report(const PipelineResult& r, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write report file: " + path);
    out << r.report.dump(2) << '\n';
}

/// Reachability statistics in the shape of the full-neighborhood report rows:
/// unbounded-k BFS (same d/u/blacklist constraints), total neighbors, total
/// instantiable types, and the k/t at which the exploration saturates.
inline nlohmann::json neighborhood_stats(const MiningConfig& cfg, const PipelineInput& input) {
    MiningConfig probe = cfg;
    probe.k = 1;  // fixpoint loop below raises it
    SymbolTable vertices{SymbolTable::Kind::vertex};
    SymbolTable predicates{SymbolTable::Kind::predicate};
    RawGraph raw = load_triples(input.graph_path, vertices, predicates);
    std::vector<VertexId> raw_seeds;
    if (!input.seeds_path.empty()) {
        SeedList sl = load_seed_list(input.seeds_path, vertices);
        raw_seeds = sl.seeds;
    }
    std::optional<PredicateId> sameas = predicates.find(cfg.sameas_uri);
    CanonicalGraph g = canonicalize(raw, vertices, sameas, raw_seeds);
    PredicateId type_pred = predicates.intern(cfg.type_uri);
    PredicateId subclass_pred = predicates.intern(cfg.subclassof_uri);
    OntologyIndex ont(g, type_pred, subclass_pred);
    CompiledClassSet exp_blocked = ont.compile(cfg.b_exp_types, g, vertices);

    // Grow k until the frontier dies out.
    std::uint32_t k = 1;
    NeighborhoodResult res;
    while (true) {
        probe.k = k;
        res = mine_neighbors(g, ont, probe, predicates, exp_blocked);
        if (res.frontier[k].empty()) break;
        ++k;
    }
    std::uint32_t k_reached = k == 1 ? (res.frontier[1].empty() ? 0 : 1) : k - 1;

    // Types at unbounded level: grow t until the generalization sets saturate.
    CompiledClassSet gen_blocked = ont.compile(cfg.b_gen_types, g, vertices);
    std::uint32_t t_reached = 0;
    std::size_t type_count = 1;  // top
    {
        std::size_t prev = 0;
        std::uint32_t t = 0;
        std::unordered_set<VertexId> classes;
        while (true) {
            classes.clear();
            for (const auto& [v, supp] : res.support)
                for (VertexId cls : ont.generalizations(v, t, gen_blocked)) classes.insert(cls);
            if (t > 0 && classes.size() == prev) break;
            prev = classes.size();
            t_reached = t;
            ++t;
        }
        type_count = prev;
    }

    nlohmann::json out;
    out["seeds"] = g.seeds().size();
    out["neighbors"] = res.support.size();
    out["types"] = type_count;
    out["k_reached"] = k_reached;
    out["t_reached"] = t_reached;
    out["d"] = cfg.d == kNoLimit ? nlohmann::json("inf") : nlohmann::json(cfg.d);
    out["u"] = cfg.u;
    return out;
}

}  // namespace kgfeat
