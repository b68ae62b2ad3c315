#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kgfeat/error.hpp"
#include "kgfeat/graph.hpp"
#include "kgfeat/symbols.hpp"

namespace kgfeat {

namespace detail {

inline std::size_t hash_triple(VertexId s, PredicateId p, VertexId o) {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(s);
    mix((std::uint64_t(p) << 32) | 0x9e3779b9u);
    mix((std::uint64_t(o) << 1) | 1u);
    return h;
}

struct TripleKey {
    VertexId s;
    PredicateId p;
    VertexId o;
    bool operator==(const TripleKey&) const = default;
};
struct TripleKeyHash {
    std::size_t operator()(const TripleKey& t) const { return hash_triple(t.s, t.p, t.o); }
};

inline std::string_view skip_ws(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

enum class TermKind { iri, blank, literal };

struct Term {
    TermKind kind;
    std::string_view text;  // IRI without <>, blank label including _:
};

/// Parses one RDF term at the head of `s`, returning the rest of the line.
/// Supported subset: <iri>, _:label, "literal" with \-escapes and an optional
/// ^^<datatype> or @lang tail.
inline Term parse_term(std::string_view& s, std::size_t line_no) {
    s = skip_ws(s);
    if (s.empty())
        throw ParseError(line_no, "unexpected end of line, expected a term");
    if (s.front() == '<') {
        auto end = s.find('>');
        if (end == std::string_view::npos)
            throw ParseError(line_no, "unterminated IRI");
        Term t{TermKind::iri, s.substr(1, end - 1)};
        if (t.text.empty())
            throw ParseError(line_no, "empty IRI");
        s = s.substr(end + 1);
        return t;
    }
    if (s.size() >= 2 && s[0] == '_' && s[1] == ':') {
        std::size_t end = 2;
        while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
        if (end == 2)
            throw ParseError(line_no, "empty blank node label");
        Term t{TermKind::blank, s.substr(0, end)};
        s = s.substr(end);
        return t;
    }
    if (s.front() == '"') {
        std::size_t i = 1;
        while (i < s.size()) {
            if (s[i] == '\\') {
                i += 2;
                continue;
            }
            if (s[i] == '"') break;
            ++i;
        }
        if (i >= s.size())
            throw ParseError(line_no, "unterminated literal");
        std::string_view body = s.substr(0, i + 1);
        s = s.substr(i + 1);
        // optional datatype / language tag, consumed and ignored
        if (!s.empty() && s.substr(0, 2) == "^^") {
            s = s.substr(2);
            if (s.empty() || s.front() != '<')
                throw ParseError(line_no, "expected <datatype> after ^^");
            auto end = s.find('>');
            if (end == std::string_view::npos)
                throw ParseError(line_no, "unterminated datatype IRI");
            s = s.substr(end + 1);
        } else if (!s.empty() && s.front() == '@') {
            std::size_t end = 1;
            while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
            s = s.substr(end);
        }
        return Term{TermKind::literal, body};
    }
    throw ParseError(line_no, "unrecognized term start: '" + std::string(1, s.front()) + "'");
}

}  // namespace detail

/// Streams an N-Triples subset file into a RawGraph. One arc per IRI-object
/// triple; literal-object triples are tallied and dropped; exact duplicate
/// triples collapse to one arc. Lines starting with '#' are comments.
inline RawGraph load_triples(const std::string& path, SymbolTable& vertices, SymbolTable& predicates) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open graph file: " + path);

    RawGraph g;
    std::unordered_set<detail::TripleKey, detail::TripleKeyHash> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        std::string_view rest(line);
        rest = detail::skip_ws(rest);
        if (rest.empty() || rest.front() == '#') continue;
        ++g.lines_parsed;

        detail::Term subj = detail::parse_term(rest, line_no);
        if (subj.kind == detail::TermKind::literal)
            throw ParseError(line_no, "literal in subject position");
        detail::Term pred = detail::parse_term(rest, line_no);
        if (pred.kind != detail::TermKind::iri)
            throw ParseError(line_no, "predicate must be an IRI");
        detail::Term obj = detail::parse_term(rest, line_no);

        rest = detail::skip_ws(rest);
        if (rest.empty() || rest.front() != '.')
            throw ParseError(line_no, "expected '.' terminator");
        rest = detail::skip_ws(rest.substr(1));
        if (!rest.empty() && rest.front() != '#')
            throw ParseError(line_no, "trailing content after '.'");

        VertexId s = vertices.intern(subj.text);
        if (obj.kind == detail::TermKind::literal) {
            ++g.literals_dropped;
            continue;
        }
        PredicateId p = predicates.intern(pred.text);
        VertexId o = vertices.intern(obj.text);
        if (!seen.insert({s, p, o}).second) {
            ++g.duplicates_dropped;
            continue;
        }
        g.arcs.push_back({s, p, o});
        ++g.triples_kept;
    }
    g.vertex_count = vertices.size();
    return g;
}

struct SeedList {
    std::vector<VertexId> seeds;          // raw vertex ids, input order, deduplicated
    std::vector<std::string> not_in_graph;  // URIs listed but absent from the graph
};

/// One absolute URI per line (optionally wrapped in <>). URIs absent from the
/// graph are reported, not fatal.
inline SeedList load_seed_list(const std::string& path, const SymbolTable& vertices) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open seed file: " + path);
    SeedList out;
    std::unordered_set<VertexId> dedup;
    std::string line;
    bool any_line = false;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::string_view uri(line);
        uri = detail::skip_ws(uri);
        if (uri.empty() || uri.front() == '#') continue;
        any_line = true;
        if (uri.size() >= 2 && uri.front() == '<' && uri.back() == '>')
            uri = uri.substr(1, uri.size() - 2);
        auto id = vertices.find(uri);
        if (!id) {
            out.not_in_graph.emplace_back(uri);
            continue;
        }
        if (dedup.insert(*id).second)
            out.seeds.push_back(*id);
    }
    if (!any_line)
        throw InputError("seed file is empty: " + path);
    return out;
}

}  // namespace kgfeat
