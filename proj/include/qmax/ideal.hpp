#pragma once

#include <string>
#include <vector>

#include "qmax/bitset.hpp"
#include "qmax/errors.hpp"
#include "qmax/ring.hpp"

namespace qmax {

// An ideal of a finite ring, stored as a bit-vector over element indices.
struct Ideal {
    std::uint64_t ring_id = 0;
    Bitset members;

    bool contains(Elem a) const { return members.test(a); }
    int count() const { return members.count(); }
    bool operator==(const Ideal& o) const { return ring_id == o.ring_id && members == o.members; }
    bool operator!=(const Ideal& o) const { return !(*this == o); }
};

inline void require_same_ring(const Ring& R, const Ideal& I) {
    if (I.ring_id != R.id()) throw invalid_parameter("ideal belongs to a different ring");
}

// Canonical order: cardinality, then ascending member list lexicographically.
inline bool ideal_before(const Ideal& a, const Ideal& b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.members.lex_before(b.members);
}

inline bool is_ideal_set(const Ring& R, const Bitset& bits) {
    if (!bits.test(R.zero())) return false;
    auto mem = bits.members();
    for (Elem x : mem)
        for (Elem y : mem)
            if (!bits.test(R.add(x, y))) return false;
    for (Elem x : mem)
        for (Elem r = 0; r < R.size(); ++r)
            if (!bits.test(R.mul(r, x))) return false;
    return true;
}

inline Ideal ideal_from_bits(const Ring& R, Bitset bits) {
    return Ideal{R.id(), std::move(bits)};
}

inline Ideal zero_ideal(const Ring& R) {
    Bitset b(R.size());
    b.set(R.zero());
    return {R.id(), std::move(b)};
}

inline Ideal unit_ideal(const Ring& R) {
    Bitset b(R.size());
    for (Elem a = 0; a < R.size(); ++a) b.set(a);
    return {R.id(), std::move(b)};
}

inline bool is_proper(const Ring& R, const Ideal& I) { return I.count() < R.size(); }

// Ra = { ra : r in R }; a itself is a member since R is unital.
inline Ideal principal_ideal(const Ring& R, Elem a) {
    Bitset b(R.size());
    for (Elem r = 0; r < R.size(); ++r) b.set(R.mul(r, a));
    return {R.id(), std::move(b)};
}

inline Ideal ideal_generated_by(const Ring& R, const std::vector<Elem>& gens) {
    return {R.id(), detail::ideal_closure_bits(R, gens)};
}

inline Ideal ideal_sum(const Ring& R, const Ideal& I, const Ideal& J) {
    require_same_ring(R, I);
    require_same_ring(R, J);
    Bitset b(R.size());
    auto jm = J.members.members();
    I.members.for_each([&](Elem x) {
        for (Elem y : jm) b.set(R.add(x, y));
    });
    return {R.id(), std::move(b)};
}

// ideal generated by pairwise products
inline Ideal ideal_product(const Ring& R, const Ideal& I, const Ideal& J) {
    require_same_ring(R, I);
    require_same_ring(R, J);
    Bitset prod(R.size());
    auto jm = J.members.members();
    I.members.for_each([&](Elem x) {
        for (Elem y : jm) prod.set(R.mul(x, y));
    });
    // additive closure of the product set (already closed under ambient mult)
    Bitset b(R.size());
    std::vector<Elem> work;
    auto push = [&](Elem x) {
        if (!b.test(x)) {
            b.set(x);
            work.push_back(x);
        }
    };
    prod.for_each(push);
    for (std::size_t k = 0; k < work.size(); ++k)
        for (std::size_t j = 0; j <= k; ++j) push(R.add(work[k], work[j]));
    return {R.id(), std::move(b)};
}

inline Ideal ideal_intersection(const Ring& R, const Ideal& I, const Ideal& J) {
    require_same_ring(R, I);
    require_same_ring(R, J);
    return {R.id(), I.members & J.members};
}

inline Ideal ideal_power(const Ring& R, const Ideal& I, int e) {
    Ideal out = unit_ideal(R);
    for (int i = 0; i < e; ++i) out = ideal_product(R, out, I);
    return out;
}

// (I : x) = { r : rx in I }
inline Ideal colon_by_element(const Ring& R, const Ideal& I, Elem x) {
    require_same_ring(R, I);
    Bitset b(R.size());
    for (Elem r = 0; r < R.size(); ++r)
        if (I.contains(R.mul(r, x))) b.set(r);
    return {R.id(), std::move(b)};
}

// (I : J) = { r : rJ subset of I }
inline Ideal colon(const Ring& R, const Ideal& I, const Ideal& J) {
    require_same_ring(R, I);
    require_same_ring(R, J);
    Bitset b(R.size());
    auto jm = J.members.members();
    for (Elem r = 0; r < R.size(); ++r) {
        bool ok = true;
        for (Elem j : jm)
            if (!I.contains(R.mul(r, j))) {
                ok = false;
                break;
            }
        if (ok) b.set(r);
    }
    return {R.id(), std::move(b)};
}

inline Ideal annihilator(const Ring& R, Elem x) {
    return colon_by_element(R, zero_ideal(R), x);
}

// sqrt(I) = { x : x^m in I for some m }; m <= |R| always suffices.
inline Ideal radical(const Ring& R, const Ideal& I) {
    require_same_ring(R, I);
    Bitset b(R.size());
    for (Elem x = 0; x < R.size(); ++x) {
        Elem p = x;
        for (int m = 0; m < R.size(); ++m) {
            if (I.contains(p)) {
                b.set(x);
                break;
            }
            p = R.mul(p, x);
        }
        if (I.contains(p)) b.set(x);
    }
    return {R.id(), std::move(b)};
}

// prime: ab in I forces a in I or b in I (exhaustive over pairs not in I)
inline bool is_prime(const Ring& R, const Ideal& I) {
    require_same_ring(R, I);
    if (!is_proper(R, I)) throw invalid_parameter("is_prime: I must be proper");
    for (Elem a = 0; a < R.size(); ++a) {
        if (I.contains(a)) continue;
        for (Elem b = a; b < R.size(); ++b) {
            if (I.contains(b)) continue;
            if (I.contains(R.mul(a, b))) return false;
        }
    }
    return true;
}

// primary: ab in I forces a in I or b in sqrt(I)
inline bool is_primary(const Ring& R, const Ideal& I) {
    require_same_ring(R, I);
    if (!is_proper(R, I)) throw invalid_parameter("is_primary: I must be proper");
    Ideal rad = radical(R, I);
    for (Elem a = 0; a < R.size(); ++a) {
        if (I.contains(a)) continue;
        for (Elem b = 0; b < R.size(); ++b) {
            if (rad.contains(b)) continue;
            if (I.contains(R.mul(a, b))) return false;
        }
    }
    return true;
}

inline std::string ideal_to_string(const Ring& R, const Ideal& I) {
    std::string s = "{";
    bool fst = true;
    I.members.for_each([&](Elem a) {
        if (!fst) s += ",";
        s += R.name(a);
        fst = false;
    });
    return s + "}";
}

// Push an ideal through a surjective-onto-its-image map: { f(x) : x in I }.
inline Bitset image_bits(const RingMap& f, const Bitset& sub) {
    Bitset out(f.target->size());
    sub.for_each([&](Elem a) { out.set(f.image[a]); });
    return out;
}

}  // namespace qmax
