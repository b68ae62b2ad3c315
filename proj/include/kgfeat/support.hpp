#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace kgfeat {

/// Fixed-width bitset over seed ordinals 0..n-1. Equality is bit-exact and
/// the set is hashable, so it can key the per-support-set grouping used by
/// the most-specific retention pass.
class SupportSet {
public:
    SupportSet() : nbits_(0) {}
    explicit SupportSet(std::uint32_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    void set(std::uint32_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::uint32_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    std::uint32_t size_bits() const { return nbits_; }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }

    bool intersects(const SupportSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    /// a `is subset of` b.
    bool is_subset_of(const SupportSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    SupportSet& operator|=(const SupportSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    SupportSet& operator&=(const SupportSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    SupportSet and_not(const SupportSet& o) const {
        SupportSet r(*this);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
        return r;
    }

    friend bool operator==(const SupportSet& a, const SupportSet& b) {
        return a.nbits_ == b.nbits_ && a.words_ == b.words_;
    }
    friend bool operator!=(const SupportSet& a, const SupportSet& b) { return !(a == b); }

    /// Deterministic total order for grouping/iteration.
    friend bool operator<(const SupportSet& a, const SupportSet& b) {
        if (a.nbits_ != b.nbits_) return a.nbits_ < b.nbits_;
        return a.words_ < b.words_;
    }

    std::vector<std::uint32_t> to_indices() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 0; i < nbits_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint64_t w : words_) {
            h ^= static_cast<std::size_t>(w);
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    std::uint32_t nbits_;
    std::vector<std::uint64_t> words_;
};

struct SupportSetHash {
    std::size_t operator()(const SupportSet& s) const { return s.hash(); }
};

}  // namespace kgfeat
