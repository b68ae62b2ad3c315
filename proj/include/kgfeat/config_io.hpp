#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "kgfeat/config.hpp"
#include "kgfeat/error.hpp"

namespace kgfeat {

/// JSON config file mirroring the mining parameters; CLI flags override any
/// value given here. Blacklists and filter groups are inline string arrays
/// (trailing '*' marks a prefix).
///
/// {
///   "k": 3, "t": 2, "d": 500, "l_min": 5, "l_max": "inf", "u": false,
///   "type_uri": "...", "subclassof_uri": "...", "sameas_uri": "...",
///   "b_predicates": ["...", "http://example.org/prov*"],
///   "b_exp_types": [], "b_gen_types": [],
///   "filter_groups": {"pathway": ["http://example.org/Pathway"]},
///   "filter": ["pathway"],
///   "threads": 1
/// }
inline void load_config_json(const std::string& path, MiningConfig& cfg) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config file " + path + ": top level must be an object");

    auto get_limit = [&](const nlohmann::json& v, const char* key) -> std::uint32_t {
        if (v.is_string()) return parse_limit(v.get<std::string>());
        if (v.is_number_unsigned() || v.is_number_integer()) {
            auto n = v.get<std::int64_t>();
            if (n < 0) throw ConfigError(std::string(key) + " must be non-negative");
            return n >= kNoLimit ? kNoLimit : static_cast<std::uint32_t>(n);
        }
        throw ConfigError(std::string(key) + " must be a number or \"inf\"");
    };
    auto get_lines = [&](const nlohmann::json& v, const char* key) {
        if (!v.is_array()) throw ConfigError(std::string(key) + " must be an array of strings");
        std::vector<std::string> lines;
        for (const auto& e : v) lines.push_back(e.get<std::string>());
        return lines;
    };

    for (const auto& [key, val] : j.items()) {
        if (key == "k") cfg.k = get_limit(val, "k");
        else if (key == "t") cfg.t = get_limit(val, "t");
        else if (key == "d") cfg.d = get_limit(val, "d");
        else if (key == "l_min") cfg.l_min = get_limit(val, "l_min");
        else if (key == "l_max") cfg.l_max = get_limit(val, "l_max");
        else if (key == "u") cfg.u = val.get<bool>();
        else if (key == "type_uri") cfg.type_uri = val.get<std::string>();
        else if (key == "subclassof_uri") cfg.subclassof_uri = val.get<std::string>();
        else if (key == "sameas_uri") cfg.sameas_uri = val.get<std::string>();
        else if (key == "threads") cfg.threads = get_limit(val, "threads");
        else if (key == "b_predicates") {
            cfg.b_predicates = UriMatcher::from_lines(get_lines(val, "b_predicates"));
            cfg.b_predicates_set = true;
        } else if (key == "b_exp_types") {
            cfg.b_exp_types = UriMatcher::from_lines(get_lines(val, "b_exp_types"));
        } else if (key == "b_gen_types") {
            cfg.b_gen_types = UriMatcher::from_lines(get_lines(val, "b_gen_types"));
        } else if (key == "filter_groups") {
            if (!val.is_object()) throw ConfigError("filter_groups must be an object");
            for (const auto& [name, uris] : val.items())
                cfg.filter_groups.push_back(
                    {name, UriMatcher::from_lines(get_lines(uris, "filter_groups"))});
        } else if (key == "filter") {
            for (const auto& e : val) cfg.active_filters.push_back(e.get<std::string>());
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
}

}  // namespace kgfeat
