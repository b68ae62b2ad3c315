#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgfeat/error.hpp"

namespace kgfeat {

using SymbolId = std::uint32_t;

/// Bidirectional URI <-> dense integer interner. Ids are dense: after n
/// distinct interns they are exactly {0..n-1}, in call order. Construction is
/// single-writer; once frozen the table is safe to read from any thread.
class SymbolTable {
public:
    enum class Kind { vertex, predicate, feature };

    explicit SymbolTable(Kind kind = Kind::vertex) : kind_(kind) {}

    SymbolId intern(std::string_view s) {
        if (s.empty())
            throw InputError("cannot intern an empty string");
        auto it = forward_.find(s);
        if (it != forward_.end())
            return it->second;
        reverse_.emplace_back(s);
        SymbolId id = static_cast<SymbolId>(reverse_.size() - 1);
        forward_.emplace(reverse_.back(), id);
        return id;
    }

    /// Lookup without interning; used for terms that must already exist
    /// (e.g. seed URIs that are expected to be graph vertices).
    std::optional<SymbolId> find(std::string_view s) const {
        auto it = forward_.find(s);
        if (it == forward_.end())
            return std::nullopt;
        return it->second;
    }

    const std::string& resolve(SymbolId id) const {
        if (id >= reverse_.size())
            throw NotFoundError("symbol id " + std::to_string(id) + " out of range (size " +
                                std::to_string(reverse_.size()) + ")");
        return reverse_[id];
    }

    std::size_t size() const { return reverse_.size(); }
    Kind kind() const { return kind_; }

    // Two-column TSV (id, string), ordered by id.
    void dump_tsv(std::ostream& out) const {
        for (std::size_t i = 0; i < reverse_.size(); ++i)
            out << i << '\t' << reverse_[i] << '\n';
    }

private:
    struct SvHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };
    struct SvEq {
        using is_transparent = void;
        bool operator()(std::string_view a, std::string_view b) const { return a == b; }
    };

    Kind kind_;
    std::unordered_map<std::string, SymbolId, SvHash, SvEq> forward_;
    std::vector<std::string> reverse_;
};

}  // namespace kgfeat
