#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "kgfeat/config.hpp"
#include "kgfeat/graph.hpp"
#include "kgfeat/neighbors.hpp"
#include "kgfeat/ontology.hpp"
#include "kgfeat/pathfeat.hpp"
#include "kgfeat/pathmine.hpp"

namespace kgfeat {

struct FeatureColumn {
    enum class Kind { neighbor, path, pattern } kind;
    VertexId vertex = 0;       // neighbor columns
    FeatureId feature = kNoFeature;  // path/pattern columns
    SupportSet support;
    std::string rendered;
};

inline const char* kind_name(FeatureColumn::Kind k) {
    switch (k) {
        case FeatureColumn::Kind::neighbor: return "neighbor";
        case FeatureColumn::Kind::path: return "path";
        default: return "pattern";
    }
}

/// Assembles the final feature set: interesting neighbors first (sorted by
/// URI), then path features sorted by (length, rendered form).
inline std::vector<FeatureColumn> build_columns(const NeighborhoodResult& nres,
                                                const PathMiningResult& pres,
                                                const FeatureTable& table, const CanonicalGraph& g,
                                                const SymbolTable& vertices,
                                                const SymbolTable& predicates) {
    std::vector<FeatureColumn> cols;
    for (VertexId v : nres.interesting_neighbors) {
        FeatureColumn c;
        c.kind = FeatureColumn::Kind::neighbor;
        c.vertex = v;
        c.support = *nres.support_of(v);
        c.rendered = g.label(v, vertices);
        cols.push_back(std::move(c));
    }
    std::sort(cols.begin(), cols.end(),
              [](const FeatureColumn& a, const FeatureColumn& b) { return a.rendered < b.rendered; });

    std::vector<FeatureColumn> paths;
    for (const PathFeatureEntry& e : pres.features) {
        FeatureColumn c;
        auto atoms = table.atoms(e.fid);
        c.kind = is_pattern(atoms) ? FeatureColumn::Kind::pattern : FeatureColumn::Kind::path;
        c.feature = e.fid;
        c.support = e.support;
        c.rendered = render(atoms, g, vertices, predicates);
        paths.push_back(std::move(c));
    }
    std::sort(paths.begin(), paths.end(), [&table](const FeatureColumn& a, const FeatureColumn& b) {
        std::size_t la = table.atoms(a.feature).size();
        std::size_t lb = table.atoms(b.feature).size();
        if (la != lb) return la < lb;
        return a.rendered < b.rendered;
    });
    cols.insert(cols.end(), std::make_move_iterator(paths.begin()),
                std::make_move_iterator(paths.end()));
    return cols;
}

/// Optional domain filter: named groups of class URIs/prefixes combined
/// disjunctively. A neighbor is kept iff it instantiates (at unbounded level,
/// like b_exp-types) a class of a selected group; a path feature is kept iff
/// one of its elements is such an individual or is a class matched by /
/// subsumed under a group class. Zero selected groups = identity.
class DomainFilterIndex {
public:
    DomainFilterIndex(const MiningConfig& cfg, const OntologyIndex& ont, const CanonicalGraph& g,
                      const SymbolTable& vertices) {
        for (const std::string& name : cfg.active_filters) {
            const DomainFilterGroup* grp = nullptr;
            for (const auto& gdef : cfg.filter_groups)
                if (gdef.name == name) grp = &gdef;
            if (!grp)
                throw ConfigError("unknown filter group: " + name);
            CompiledClassSet matched = ont.compile(grp->classes, g, vertices);
            if (matched.top_blocked) top_matched_ = true;
            auto closure = ont.downward_closure(matched);
            matched_classes_.insert(closure.begin(), closure.end());
        }
        active_ = !cfg.active_filters.empty();
        if (active_) {
            vertex_qualifies_.assign(g.vertex_count(), 0);
            for (VertexId v = 0; v < g.vertex_count(); ++v)
                for (VertexId c : ont.direct_types(v))
                    if (matched_classes_.count(c)) {
                        vertex_qualifies_[v] = 1;
                        break;
                    }
        }
    }

    bool active() const { return active_; }

    bool keeps(const FeatureColumn& col, const FeatureTable& table) const {
        if (!active_) return true;
        if (col.kind == FeatureColumn::Kind::neighbor) return vertex_qualifies_[col.vertex];
        for (const Atom& a : table.atoms(col.feature)) {
            if (a.element.is_class()) {
                if (a.element.id == kTopClass ? top_matched_ : matched_classes_.count(a.element.id))
                    return true;
            } else if (vertex_qualifies_[a.element.id]) {
                return true;
            }
        }
        return false;
    }

private:
    bool active_ = false;
    bool top_matched_ = false;
    std::unordered_set<VertexId> matched_classes_;
    std::vector<char> vertex_qualifies_;
};

inline std::vector<FeatureColumn> apply_filter(std::vector<FeatureColumn> cols,
                                               const DomainFilterIndex& filter,
                                               const FeatureTable& table) {
    if (!filter.active()) return cols;
    std::vector<FeatureColumn> out;
    for (auto& c : cols)
        if (filter.keeps(c, table)) out.push_back(std::move(c));
    return out;
}

/// Writes the binary matrix as three files:
///   features.tsv  column-index, kind, rendered feature, support cardinal
///   rows.tsv      row-index, seed URI
///   matrix.coo    row<TAB>col lines for true cells, row-major sorted
/// Byte-identical across runs for identical inputs and config.
inline void emit_matrix(const std::vector<FeatureColumn>& cols, const CanonicalGraph& g,
                        const SymbolTable& vertices, std::ostream& features_tsv,
                        std::ostream& rows_tsv, std::ostream& matrix_coo) {
    for (std::size_t i = 0; i < cols.size(); ++i)
        features_tsv << i << '\t' << kind_name(cols[i].kind) << '\t' << cols[i].rendered << '\t'
                     << cols[i].support.count() << '\n';
    const auto& seeds = g.seeds();
    for (std::size_t r = 0; r < seeds.size(); ++r)
        rows_tsv << r << '\t' << g.label(seeds[r], vertices) << '\n';
    for (std::size_t r = 0; r < seeds.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (cols[c].support.test(static_cast<std::uint32_t>(r)))
                matrix_coo << r << '\t' << c << '\n';
}

inline void emit_matrix_dir(const std::vector<FeatureColumn>& cols, const CanonicalGraph& g,
                            const SymbolTable& vertices, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream f(out_dir + "/features.tsv"), r(out_dir + "/rows.tsv"), m(out_dir + "/matrix.coo");
    if (!f || !r || !m)
        throw InputError("cannot write matrix files under " + out_dir);
    emit_matrix(cols, g, vertices, f, r, m);
}

/// Matrix re-reader; used by the round-trip tests and by downstream scripts.
struct LoadedMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_kinds;
    std::vector<std::string> col_names;
    std::vector<std::size_t> col_supports;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
};

inline LoadedMatrix load_matrix_dir(const std::string& dir) {
    LoadedMatrix out;
    std::ifstream f(dir + "/features.tsv"), r(dir + "/rows.tsv"), m(dir + "/matrix.coo");
    if (!f || !r || !m)
        throw InputError("cannot read matrix files under " + dir);
    std::string line;
    while (std::getline(f, line)) {
        std::istringstream ss(line);
        std::string idx, kind, name, supp;
        std::getline(ss, idx, '\t');
        std::getline(ss, kind, '\t');
        std::getline(ss, name, '\t');
        std::getline(ss, supp, '\t');
        out.col_kinds.push_back(kind);
        out.col_names.push_back(name);
        out.col_supports.push_back(std::stoull(supp));
    }
    while (std::getline(r, line)) {
        auto tab = line.find('\t');
        out.row_labels.push_back(line.substr(tab + 1));
    }
    while (std::getline(m, line)) {
        auto tab = line.find('\t');
        out.cells.emplace_back(std::stoull(line.substr(0, tab)), std::stoull(line.substr(tab + 1)));
    }
    return out;
}

}  // namespace kgfeat
