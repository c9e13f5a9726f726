#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace qmax {

// Fixed-capacity dynamic bitset used for element subsets (ideals, subrings).
// Capacity is the ambient ring size, set at construction and never changed.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    int capacity() const { return nbits_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    int count() const {
        int c = 0;
        for (auto w : w_) c += __builtin_popcountll(w);
        return c;
    }
    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }
    bool is_proper_subset_of(const Bitset& o) const {
        return is_subset_of(o) && *this != o;
    }
    bool intersects(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    // Member indices, ascending.
    std::vector<int> members() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                int b = __builtin_ctzll(w);
                f(static_cast<int>(k * 64 + b));
                w &= w - 1;
            }
        }
    }

    int first() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return static_cast<int>(k * 64 + __builtin_ctzll(w_[k]));
        return -1;
    }

    // Canonical order on equal-capacity sets: ascending member list,
    // lexicographically. {0,2} < {0,3}; the set owning the first
    // differing index is the smaller one.
    bool lex_before(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t d = w_[k] ^ o.w_[k];
            if (d) return (w_[k] >> __builtin_ctzll(d)) & 1u;
        }
        return false;
    }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::size_t>(nbits_);
        for (auto w : w_) h = (h * 0x100000001b3ull) ^ w;
        return h;
    }

private:
    int nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace qmax
