#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kgfeat/config.hpp"
#include "kgfeat/config_io.hpp"
#include "kgfeat/oracle.hpp"
#include "kgfeat/pipeline.hpp"

namespace {

struct CommonArgs {
    std::string graph;
    std::string seeds;
    std::string seed_class;
    std::string config_file;
    std::string out_dir = "out";
    std::string report_file;
    std::string dump_tables_dir;

    std::string k, t, d, l_min, l_max, threads;
    bool u = false;
    std::string b_predicates, b_exp_types, b_gen_types;
    std::string type_uri, subclassof_uri, sameas_uri;
    std::vector<std::string> filter_group_args;
    std::string filter_names;
};

void add_common_options(CLI::App* cmd, CommonArgs& a, bool mining_params) {
    cmd->add_option("--graph", a.graph, "N-Triples input file")->required();
    cmd->add_option("--seeds", a.seeds, "seed list file, one URI per line");
    cmd->add_option("--seed-class", a.seed_class, "use all instances of this class as seeds");
    cmd->add_option("--config", a.config_file, "JSON config file (flags override it)");
    cmd->add_option("--report", a.report_file, "write the run report JSON here");
    cmd->add_option("--d", a.d, "maximum (out-)degree for expansion, or 'inf'");
    cmd->add_flag("--u", a.u, "traverse all arcs, not only outgoing ones");
    cmd->add_option("--b-predicates", a.b_predicates,
                    "blacklist file of predicates not to traverse (replaces the default "
                    "type/subClassOf entries)");
    cmd->add_option("--b-exp-types", a.b_exp_types,
                    "blacklist file of classes whose instances are not reached");
    cmd->add_option("--type-uri", a.type_uri, "rdf:type predicate URI");
    cmd->add_option("--subclassof-uri", a.subclassof_uri, "rdfs:subClassOf predicate URI");
    cmd->add_option("--sameas-uri", a.sameas_uri, "owl:sameAs predicate URI");
    cmd->add_option("--threads", a.threads, "worker count (output is identical for any value)");
    if (mining_params) {
        cmd->add_option("--k", a.k, "maximum path feature length");
        cmd->add_option("--t", a.t, "maximum generalization level");
        cmd->add_option("--l-min", a.l_min, "minimum feature support");
        cmd->add_option("--l-max", a.l_max, "maximum feature support, or 'inf'");
        cmd->add_option("--b-gen-types", a.b_gen_types,
                        "blacklist file of classes not used in generalization");
        cmd->add_option("--out", a.out_dir, "output directory for the matrix files");
        cmd->add_option("--filter-group", a.filter_group_args,
                        "name=<file> class group for domain filtering (repeatable)");
        cmd->add_option("--filter", a.filter_names, "comma-separated group names to apply");
        cmd->add_option("--dump-tables", a.dump_tables_dir,
                        "debug: dump symbol tables and canonical members as TSV");
    }
}

kgfeat::MiningConfig build_config(const CommonArgs& a, const CLI::App* cmd) {
    kgfeat::MiningConfig cfg;
    if (!a.config_file.empty()) kgfeat::load_config_json(a.config_file, cfg);

    auto set = [&](const char* flag) {
        const CLI::Option* o = cmd->get_option_no_throw(flag);
        return o != nullptr && o->count() > 0;
    };
    if (set("--k")) cfg.k = kgfeat::parse_limit(a.k);
    if (set("--t")) cfg.t = kgfeat::parse_limit(a.t);
    if (set("--d")) cfg.d = kgfeat::parse_limit(a.d);
    if (set("--l-min")) cfg.l_min = kgfeat::parse_limit(a.l_min);
    if (set("--l-max")) cfg.l_max = kgfeat::parse_limit(a.l_max);
    if (set("--u")) cfg.u = true;
    if (set("--threads")) cfg.threads = kgfeat::parse_limit(a.threads);
    if (set("--type-uri")) cfg.type_uri = a.type_uri;
    if (set("--subclassof-uri")) cfg.subclassof_uri = a.subclassof_uri;
    if (set("--sameas-uri")) cfg.sameas_uri = a.sameas_uri;
    if (set("--b-predicates")) {
        cfg.b_predicates = kgfeat::UriMatcher::from_file(a.b_predicates);
        cfg.b_predicates_set = true;
    }
    if (set("--b-exp-types")) cfg.b_exp_types = kgfeat::UriMatcher::from_file(a.b_exp_types);
    if (set("--b-gen-types")) cfg.b_gen_types = kgfeat::UriMatcher::from_file(a.b_gen_types);

    for (const std::string& spec : a.filter_group_args) {
        auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw kgfeat::ConfigError("--filter-group expects name=<file>: " + spec);
        kgfeat::DomainFilterGroup g;
        g.name = spec.substr(0, eq);
        g.classes = kgfeat::UriMatcher::from_file(spec.substr(eq + 1));
        cfg.filter_groups.push_back(std::move(g));
    }
    if (!a.filter_names.empty()) {
        cfg.active_filters.clear();
        std::size_t pos = 0;
        while (pos <= a.filter_names.size()) {
            auto comma = a.filter_names.find(',', pos);
            if (comma == std::string::npos) comma = a.filter_names.size();
            if (comma > pos) cfg.active_filters.push_back(a.filter_names.substr(pos, comma - pos));
            pos = comma + 1;
        }
    }
    if (a.graph.empty())
        throw kgfeat::ConfigError("--graph is required");
    if (a.seeds.empty() == a.seed_class.empty())
        throw kgfeat::ConfigError("exactly one of --seeds / --seed-class is required");
    return cfg;
}

void dump_tables(const kgfeat::PipelineResult& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream v(dir + "/vertices.tsv"), p(dir + "/predicates.tsv"), m(dir + "/members.tsv");
    r.vertices.dump_tsv(v);
    r.predicates.dump_tsv(p);
    for (kgfeat::VertexId c = 0; c < r.graph.vertex_count(); ++c) {
        m << c;
        for (kgfeat::VertexId raw : r.graph.members_of(c)) m << '\t' << r.vertices.resolve(raw);
        m << '\n';
    }
}

int run_mine(const CommonArgs& a, const CLI::App* cmd) {
    kgfeat::MiningConfig cfg = build_config(a, cmd);
    kgfeat::PipelineInput input{a.graph, a.seeds, a.seed_class};
    kgfeat::PipelineResult r = kgfeat::run_pipeline(cfg, input, a.out_dir);
    if (!a.report_file.empty()) kgfeat::write_report(r, a.report_file);
    if (!a.dump_tables_dir.empty()) dump_tables(r, a.dump_tables_dir);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "rows " << r.graph.seeds().size() << ", columns " << r.columns.size()
              << " (path features generated " << r.paths.generated_total << ", retained "
              << r.paths.retained_total << ")\n"
              << "matrix written to " << a.out_dir << '\n';
    return 0;
}

int run_stats(const CommonArgs& a, const CLI::App* cmd) {
    kgfeat::MiningConfig cfg = build_config(a, cmd);
    kgfeat::PipelineInput input{a.graph, a.seeds, a.seed_class};
    auto stats = kgfeat::neighborhood_stats(cfg, input);
    std::string text = stats.dump(2);
    std::cout << text << '\n';
    if (!a.report_file.empty()) {
        std::ofstream out(a.report_file);
        if (!out)
            throw kgfeat::InputError("cannot write report file: " + a.report_file);
        out << text << '\n';
    }
    return 0;
}

int run_oracle(const CommonArgs& a, const CLI::App* cmd) {
    kgfeat::MiningConfig cfg = build_config(a, cmd);
    // Reference implementation: same inputs and outputs as `mine`, computed
    // the slow, obvious way. Intended for validating configurations on small
    // graphs.
    kgfeat::SymbolTable vertices{kgfeat::SymbolTable::Kind::vertex};
    kgfeat::SymbolTable predicates{kgfeat::SymbolTable::Kind::predicate};
    kgfeat::RawGraph raw = kgfeat::load_triples(a.graph, vertices, predicates);
    std::vector<kgfeat::VertexId> raw_seeds;
    if (!a.seeds.empty()) {
        auto sl = kgfeat::load_seed_list(a.seeds, vertices);
        raw_seeds = sl.seeds;
        for (const auto& uri : sl.not_in_graph)
            std::cerr << "warning: seed not in graph, skipped: " << uri << '\n';
    } else {
        throw kgfeat::ConfigError("oracle mode requires --seeds");
    }
    auto sameas = predicates.find(cfg.sameas_uri);
    kgfeat::CanonicalGraph g = kgfeat::canonicalize(raw, vertices, sameas, raw_seeds);
    kgfeat::PredicateId type_pred = predicates.intern(cfg.type_uri);
    kgfeat::PredicateId subclass_pred = predicates.intern(cfg.subclassof_uri);
    kgfeat::OntologyIndex ont(g, type_pred, subclass_pred);

    kgfeat::ReferenceMiner ref(g, ont, cfg, vertices, predicates);
    auto res = ref.run();

    std::filesystem::create_directories(a.out_dir);
    std::ofstream f(a.out_dir + "/features.tsv"), r(a.out_dir + "/rows.tsv");
    std::size_t idx = 0;
    for (kgfeat::VertexId v : res.interesting_neighbors)
        f << idx++ << "\tneighbor\t" << g.label(v, vertices) << '\t'
          << res.reached.at(v).count() << '\n';
    for (const auto& [atoms, supp] : res.features)
        f << idx++ << '\t' << (kgfeat::is_pattern(atoms) ? "pattern" : "path") << '\t'
          << kgfeat::render(atoms, g, vertices, predicates) << '\t' << supp.count() << '\n';
    for (std::size_t row = 0; row < g.seeds().size(); ++row)
        r << row << '\t' << g.label(g.seeds()[row], vertices) << '\n';
    std::cout << "oracle features written to " << a.out_dir << " (" << idx << " features)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mines interesting neighbors, paths, and path patterns from a knowledge "
                 "graph around a set of seed vertices and emits a binary seed x feature matrix"};
    app.require_subcommand(1);

    CommonArgs mine_args, stats_args, oracle_args;
    CLI::App* mine = app.add_subcommand("mine", "run the full mining pipeline");
    add_common_options(mine, mine_args, true);
    CLI::App* stats = app.add_subcommand(
        "stats", "neighborhood reachability statistics (unbounded k, saturation levels)");
    add_common_options(stats, stats_args, false);
    CLI::App* oracle = app.add_subcommand(
        "oracle", "brute-force reference miner for validating configurations on small inputs");
    add_common_options(oracle, oracle_args, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (mine->parsed()) return run_mine(mine_args, mine);
        if (stats->parsed()) return run_stats(stats_args, stats);
        if (oracle->parsed()) return run_oracle(oracle_args, oracle);
    } catch (const kgfeat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const kgfeat::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
