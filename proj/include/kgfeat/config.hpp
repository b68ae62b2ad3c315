#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kgfeat/error.hpp"

namespace kgfeat {

inline constexpr const char* kDefaultTypeUri = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kDefaultSubClassOfUri = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr const char* kDefaultSameAsUri = "http://www.w3.org/2002/07/owl#sameAs";

/// Reserved name of the synthetic top class; never read from input files.
inline constexpr const char* kTopUri = "urn:kgfeat:top";

inline constexpr std::uint32_t kNoLimit = std::numeric_limits<std::uint32_t>::max();

/// URI blacklist / class-group matcher: exact URIs plus prefixes (a line with
/// a trailing '*' matches every URI starting with the part before the star).
class UriMatcher {
public:
    UriMatcher() = default;

    void add(std::string_view entry) {
        if (entry.empty()) return;
        lines_.emplace_back(entry);
        if (entry.back() == '*')
            prefixes_.emplace_back(entry.substr(0, entry.size() - 1));
        else
            exact_.emplace(entry);
    }

    static UriMatcher from_lines(const std::vector<std::string>& lines) {
        UriMatcher m;
        for (const auto& l : lines) m.add(l);
        return m;
    }

    static UriMatcher from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw InputError("cannot open blacklist file: " + path);
        UriMatcher m;
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
                line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            m.add(line);
        }
        return m;
    }

    bool matches(std::string_view uri) const {
        if (exact_.count(std::string(uri))) return true;
        for (const auto& p : prefixes_)
            if (uri.size() >= p.size() && uri.compare(0, p.size(), p) == 0) return true;
        return false;
    }

    bool empty() const { return exact_.empty() && prefixes_.empty(); }
    const std::vector<std::string>& lines() const { return lines_; }

private:
    std::unordered_set<std::string> exact_;
    std::vector<std::string> prefixes_;
    std::vector<std::string> lines_;
};

struct DomainFilterGroup {
    std::string name;
    UriMatcher classes;
};

struct Diagnostic {
    enum class Level { warning, error } level;
    std::string message;
};

/// Every mining parameter of the pipeline in one place. CLI flags and the
/// JSON config file both populate this; flags win over file values.
struct MiningConfig {
    std::uint32_t k = 3;            // maximum path feature length, >= 1
    std::uint32_t t = 1;            // maximum generalization level, >= 0
    std::uint32_t d = 500;          // maximum (out-)degree to allow expansion
    std::uint32_t l_min = 1;        // minimum feature support
    std::uint32_t l_max = kNoLimit; // maximum feature support (kNoLimit = inf)
    bool u = false;                 // false: out-arcs only; true: all arcs

    std::string type_uri = kDefaultTypeUri;
    std::string subclassof_uri = kDefaultSubClassOfUri;
    std::string sameas_uri = kDefaultSameAsUri;

    UriMatcher b_predicates;  // empty means "use defaults" (type + subClassOf)
    bool b_predicates_set = false;
    UriMatcher b_exp_types;
    UriMatcher b_gen_types;

    std::vector<DomainFilterGroup> filter_groups;
    std::vector<std::string> active_filters;

    std::uint32_t threads = 1;

    /// Predicates not to traverse. Defaults keep exploration over individuals
    /// by blacklisting the type/subClassOf predicates unless the user supplied
    /// an explicit list.
    UriMatcher effective_predicate_blacklist() const {
        if (b_predicates_set) return b_predicates;
        UriMatcher m;
        m.add(type_uri);
        m.add(subclassof_uri);
        return m;
    }
};

inline std::vector<Diagnostic> validate_config(const MiningConfig& cfg) {
    std::vector<Diagnostic> diags;
    auto err = [&](std::string m) { diags.push_back({Diagnostic::Level::error, std::move(m)}); };
    auto warn = [&](std::string m) { diags.push_back({Diagnostic::Level::warning, std::move(m)}); };

    if (cfg.k < 1) err("k must be >= 1");
    if (cfg.l_min > cfg.l_max) err("l_min must be <= l_max");
    if (cfg.t >= 4 && cfg.b_gen_types.empty())
        warn("t >= 4 with no b_gen_types blacklist may generate very general patterns");
    if (cfg.d == kNoLimit)
        warn("d is unbounded; hub pruning is disabled");
    std::unordered_set<std::string> names;
    for (const auto& g : cfg.filter_groups)
        if (!names.insert(g.name).second) err("duplicate filter group name: " + g.name);
    for (const auto& f : cfg.active_filters)
        if (!names.count(f)) err("unknown filter group name: " + f);
    return diags;
}

inline std::uint32_t parse_limit(std::string_view s) {
    if (s == "inf" || s == "INF" || s == "+inf")
        return kNoLimit;
    std::uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw ConfigError("expected a non-negative integer or 'inf', got: " + std::string(s));
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
        if (v > kNoLimit)
            throw ConfigError("value out of range: " + std::string(s));
    }
    if (s.empty())
        throw ConfigError("expected a non-negative integer or 'inf'");
    return static_cast<std::uint32_t>(v);
}

}  // namespace kgfeat
