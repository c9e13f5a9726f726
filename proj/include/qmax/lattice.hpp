#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "qmax/ideal.hpp"
#include "qmax/ring.hpp"

namespace qmax {

// The complete ideal lattice of a finite ring: every ideal (the unit ideal
// included, always last in canonical order), the containment relation, the
// covering relation, and the derived distinguished sets.
//
// Enumeration is by sum-closure of principal ideals: every ideal of a
// finite ring is a finite sum of principal ideals, so closing the set of
// principal ideals under (+ one principal) reaches everything. The
// brute-force subgroup enumeration kept in the verification module is the
// independent oracle for this.
struct IdealLattice {
    std::uint64_t ring_id = 0;
    int n = 0;
    std::vector<Ideal> ideals;  // canonical order: (cardinality, member list)
    int unit_index = -1;

    std::vector<Bitset> above;  // above[i] = { j : ideals[i] subset of ideals[j] }
    std::vector<Bitset> below;
    std::vector<Bitset> covers_up;  // { j : ideals[j] covers ideals[i] }
    std::vector<std::pair<int, int>> cover_pairs;

    std::vector<int> maximal_ideals;  // indices of proper ideals
    std::vector<int> prime_ideals;
    Ideal jacobson;
    Ideal nilradical;

    std::unordered_map<Bitset, int, BitsetHash> index_map;

    int proper_count() const { return static_cast<int>(ideals.size()) - 1; }

    int index_of(const Ideal& I) const {
        auto it = index_map.find(I.members);
        return it == index_map.end() ? -1 : it->second;
    }
    int index_of_checked(const Ideal& I) const {
        int i = index_of(I);
        if (i < 0) throw internal_inconsistency("ideal not present in lattice");
        return i;
    }

    bool leq(int i, int j) const { return above[i].test(j); }
    bool is_cover(int lower, int upper) const { return covers_up[lower].test(upper); }
    bool is_maximal_index(int i) const {
        for (int m : maximal_ideals)
            if (m == i) return true;
        return false;
    }
    // number of proper ideals containing ideals[i], including itself
    int o_count(int i) const { return above[i].count() - 1; }
};

inline IdealLattice compute_all_ideals(const Ring& R, const Limits& lim = Limits::global()) {
    IdealLattice L;
    L.ring_id = R.id();
    L.n = R.size();

    // principal ideals
    std::vector<Bitset> principals;
    std::unordered_map<Bitset, int, BitsetHash> seen;
    for (Elem a = 0; a < R.size(); ++a) {
        Bitset p = principal_ideal(R, a).members;
        if (seen.emplace(p, 0).second) principals.push_back(std::move(p));
    }

    // close under "+ principal"
    std::vector<Bitset> found;
    seen.clear();
    std::vector<std::size_t> work;
    auto push = [&](Bitset b) {
        if (seen.emplace(b, 0).second) {
            found.push_back(std::move(b));
            work.push_back(found.size() - 1);
            if (static_cast<int>(found.size()) > lim.max_ideals)
                throw resource_limit("ideal count exceeds cap " + std::to_string(lim.max_ideals));
        }
    };
    for (auto& p : principals) push(p);
    for (std::size_t k = 0; k < work.size(); ++k) {
        Bitset cur = found[work[k]];
        auto curm = cur.members();
        for (auto& p : principals) {
            if (p.is_subset_of(cur)) continue;
            Bitset s(R.size());
            p.for_each([&](Elem x) {
                for (Elem y : curm) s.set(R.add(x, y));
            });
            push(std::move(s));
        }
    }

    L.ideals.reserve(found.size());
    for (auto& b : found) L.ideals.push_back(Ideal{R.id(), std::move(b)});
    std::sort(L.ideals.begin(), L.ideals.end(), ideal_before);
    const int K = static_cast<int>(L.ideals.size());
    L.unit_index = K - 1;
    for (int i = 0; i < K; ++i) L.index_map.emplace(L.ideals[i].members, i);

    // containment
    L.above.assign(K, Bitset(K));
    L.below.assign(K, Bitset(K));
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
            if (L.ideals[i].members.is_subset_of(L.ideals[j].members)) {
                L.above[i].set(j);
                L.below[j].set(i);
            }

    // covering: i < j strictly with nothing properly between
    L.covers_up.assign(K, Bitset(K));
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            if (i == j || !L.leq(i, j)) continue;
            Bitset between = L.above[i] & L.below[j];
            if (between.count() == 2) {  // exactly {i, j}
                L.covers_up[i].set(j);
                L.cover_pairs.emplace_back(i, j);
            }
        }

    // maximal = proper ideals covered only by the unit ideal
    for (int i = 0; i < K - 1; ++i)
        if (L.above[i].count() == 2)  // itself and R
            L.maximal_ideals.push_back(i);

    for (int i = 0; i < K - 1; ++i)
        if (is_prime(R, L.ideals[i])) L.prime_ideals.push_back(i);

    Bitset jac(R.size());
    for (Elem a = 0; a < R.size(); ++a) jac.set(a);
    for (int m : L.maximal_ideals) jac &= L.ideals[m].members;
    L.jacobson = Ideal{R.id(), std::move(jac)};
    L.nilradical = Ideal{R.id(), R.nilpotents()};
    return L;
}

// Memoized lattice access. Thread-safe: writes synchronized, reads share
// immutable lattices. Keyed by ring id (unique per constructed ring).
namespace detail {
struct LatticeCache {
    std::mutex mu;
    std::unordered_map<std::uint64_t, std::shared_ptr<const IdealLattice>> map;
    static LatticeCache& instance() {
        static LatticeCache c;
        return c;
    }
};
}  // namespace detail

inline std::shared_ptr<const IdealLattice> lattice_of(const Ring& R,
                                                      const Limits& lim = Limits::global()) {
    auto& c = detail::LatticeCache::instance();
    {
        std::lock_guard<std::mutex> g(c.mu);
        auto it = c.map.find(R.id());
        if (it != c.map.end()) return it->second;
    }
    auto lat = std::make_shared<IdealLattice>(compute_all_ideals(R, lim));
    std::lock_guard<std::mutex> g(c.mu);
    auto [it, fresh] = c.map.emplace(R.id(), lat);
    return it->second;
}

inline void clear_lattice_cache() {
    auto& c = detail::LatticeCache::instance();
    std::lock_guard<std::mutex> g(c.mu);
    c.map.clear();
}

inline bool is_maximal(const Ring& R, const Ideal& I, const IdealLattice& L) {
    require_same_ring(R, I);
    int i = L.index_of(I);
    return i >= 0 && L.is_maximal_index(i);
}

inline bool covers(const Ring& R, const Ideal& lower, const Ideal& upper, const IdealLattice& L) {
    require_same_ring(R, lower);
    require_same_ring(R, upper);
    int i = L.index_of_checked(lower), j = L.index_of_checked(upper);
    return L.is_cover(i, j);
}

// Length of R/I as an R-module: covering steps from I up to R along one
// greedy chain, cross-checked against a second chain (Jordan-Hoelder makes
// all maximal chains equal in this Artinian setting).
inline int length_of_quotient(const Ring& R, const Ideal& I, const IdealLattice& L) {
    require_same_ring(R, I);
    if (!is_proper(R, I)) return 0;
    auto climb = [&](bool low) {
        int cur = L.index_of_checked(I);
        int steps = 0;
        while (cur != L.unit_index) {
            int next = -1;
            L.covers_up[cur].for_each([&](int j) {
                if (next < 0 || (low ? j < next : j > next)) next = j;
            });
            require(next >= 0, "length: no cover found below the unit ideal");
            cur = next;
            ++steps;
        }
        return steps;
    };
    int a = climb(true), b = climb(false);
    require(a == b, "length: two maximal chains disagree");
    return a;
}

inline int count_o(const Ring& R, const Ideal& I, const IdealLattice& L) {
    require_same_ring(R, I);
    if (!is_proper(R, I)) throw invalid_parameter("count_o: I must be proper");
    return L.o_count(L.index_of_checked(I));
}

inline int count_O(const Ring& R, const IdealLattice& L) {
    require(L.ring_id == R.id(), "count_O: lattice belongs to a different ring");
    return L.proper_count();
}

// Maximal ideals of R containing I, as lattice indices.
inline std::vector<int> maximals_over(const Ideal& I, const IdealLattice& L) {
    std::vector<int> out;
    int i = L.index_of_checked(I);
    for (int m : L.maximal_ideals)
        if (L.leq(i, m)) out.push_back(m);
    return out;
}

// --- local factor decomposition ------------------------------------------

struct LocalFactorization {
    RingPtr ring;
    std::vector<Elem> idempotents;      // minimal nonzero, orthogonal, sum 1
    std::vector<RingPtr> factors;       // eR with unit e
    std::vector<RingMap> projections;   // x -> xe

    // factor whose idempotent lies outside the maximal ideal M
    int factor_of_maximal(const Ring& R, const Ideal& M) const {
        require_same_ring(R, M);
        for (std::size_t i = 0; i < idempotents.size(); ++i)
            if (!M.contains(idempotents[i])) return static_cast<int>(i);
        throw internal_inconsistency("no idempotent outside a maximal ideal");
    }
};

namespace detail {

// eR as a ring with unit e (not a unital subring of R unless e = 1).
inline std::pair<RingPtr, RingMap> make_factor_ring(const RingPtr& Rp, Elem e) {
    const Ring& R = *Rp;
    Bitset sub(R.size());
    for (Elem x = 0; x < R.size(); ++x) sub.set(R.mul(x, e));
    auto mem = sub.members();
    const int N = static_cast<int>(mem.size());
    std::vector<int> idx(R.size(), -1);
    for (int i = 0; i < N; ++i) idx[mem[i]] = i;
    std::vector<std::uint16_t> add(static_cast<std::size_t>(N) * N), mul(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            add[static_cast<std::size_t>(i) * N + j] = static_cast<std::uint16_t>(idx[R.add(mem[i], mem[j])]);
            mul[static_cast<std::size_t>(i) * N + j] = static_cast<std::uint16_t>(idx[R.mul(mem[i], mem[j])]);
        }
    std::vector<std::string> names(N);
    for (int i = 0; i < N; ++i) names[i] = R.name(mem[i]);
    auto F = std::make_shared<Ring>(std::move(add), std::move(mul), idx[R.zero()], idx[e],
                                    "locfactor(" + R.label() + "," + R.name(e) + ")",
                                    std::move(names));
    RingMap pr{Rp, F, std::vector<std::uint16_t>(R.size())};
    for (Elem x = 0; x < R.size(); ++x) pr.image[x] = static_cast<std::uint16_t>(idx[R.mul(x, e)]);
    pr.certify();
    return {F, std::move(pr)};
}

}  // namespace detail

// Peirce decomposition into local factors via the minimal nonzero
// idempotents (every finite commutative ring is a finite product of local
// rings; the minimal idempotents are orthogonal and sum to 1).
inline LocalFactorization local_factors(const RingPtr& Rp) {
    const Ring& R = *Rp;
    std::vector<Elem> idems;
    for (Elem e = 0; e < R.size(); ++e)
        if (e != R.zero() && R.mul(e, e) == e) idems.push_back(e);
    std::vector<Elem> minimal;
    for (Elem e : idems) {
        bool min = true;
        for (Elem f : idems)
            if (f != e && R.mul(f, e) == f) {
                min = false;
                break;
            }
        if (min) minimal.push_back(e);
    }
    Elem s = R.zero();
    for (Elem e : minimal) s = R.add(s, e);
    require(s == R.one(), "minimal idempotents do not sum to 1");
    for (std::size_t i = 0; i < minimal.size(); ++i)
        for (std::size_t j = i + 1; j < minimal.size(); ++j)
            require(R.mul(minimal[i], minimal[j]) == R.zero(),
                    "minimal idempotents not orthogonal");

    LocalFactorization out;
    out.ring = Rp;
    out.idempotents = minimal;
    for (Elem e : minimal) {
        auto [F, pr] = detail::make_factor_ring(Rp, e);
        auto lat = lattice_of(*F);
        require(lat->maximal_ideals.size() == 1, "local factor is not local");
        out.factors.push_back(F);
        out.projections.push_back(std::move(pr));
    }
    return out;
}

inline bool is_local(const Ring& R) { return lattice_of(R)->maximal_ideals.size() == 1; }

// Localization of a finite ring at an element: R_f = eR where e is the
// idempotent in the multiplicative semigroup generated by f. Empty when f
// is nilpotent (the localization would be the zero ring).
inline std::optional<std::pair<RingPtr, RingMap>> localize_at_element(const RingPtr& Rp, Elem f) {
    const Ring& R = *Rp;
    Elem p = f;
    for (int k = 0; k < 2 * R.size() + 2; ++k) {
        if (R.mul(p, p) == p) {
            if (p == R.zero()) return std::nullopt;
            return detail::make_factor_ring(Rp, p);
        }
        p = R.mul(p, f);
    }
    throw internal_inconsistency("no idempotent power found");
}

}  // namespace qmax
