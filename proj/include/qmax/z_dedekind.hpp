#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qmax/qmax.hpp"

namespace qmax {

// Dedekind specialization over the integers: ideals (n) of Z classified by
// factorization, cross-checked against the table ring Z/n. Z is a PID, so
// principal data is all there is.
struct IntegerIdeal {
    long n = 0;
    std::vector<std::pair<long, int>> factorization;  // primes ascending
};

inline IntegerIdeal factor_integer(long n) {
    if (n < 2) throw invalid_parameter("factor_integer: n must be >= 2");
    IntegerIdeal out{n, {}};
    long m = n;
    for (long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.factorization.emplace_back(p, e);
        }
    if (m > 1) out.factorization.emplace_back(m, 1);
    return out;
}

struct ZClassification {
    QClass tag = QClass::None;
    bool two_absorbing = false;  // per Cor 5.6(1): equals quasi-maximality
    IntegerIdeal ideal;
};

// (n) in Z: inert iff n = p, decomposed iff n = pq, ramified iff n = p^2.
// n = 1 is the unit ideal and n = 0 the zero ideal (prime, not maximal);
// both rejected.
inline ZClassification classify_z_ideal(long n) {
    if (n == 0)
        throw invalid_parameter("classify_z_ideal: (0) is prime but not maximal in Z; rejected");
    if (n < 2) throw invalid_parameter("classify_z_ideal: n must be >= 2 (n=1 is the unit ideal)");
    ZClassification out;
    out.ideal = factor_integer(n);
    const auto& f = out.ideal.factorization;
    if (f.size() == 1 && f[0].second == 1)
        out.tag = QClass::Inert;
    else if (f.size() == 1 && f[0].second == 2)
        out.tag = QClass::Ramified;
    else if (f.size() == 2 && f[0].second == 1 && f[1].second == 1)
        out.tag = QClass::Decomposed;
    else
        out.tag = QClass::None;
    out.two_absorbing = out.tag != QClass::None;
    return out;
}

// (n) in QMax(Z) iff 0 in QMax(Z/n): compare the factorization-based tag
// with the table-ring classification of (0).
inline bool z_crosscheck(long n, const Limits& lim = Limits::global()) {
    ZClassification zc = classify_z_ideal(n);
    auto R = make_zmod(n, lim);
    QMaxClass c = classify_qmax(*R, zero_ideal(*R), *lattice_of(*R, lim));
    return zc.tag == c.tag;
}

// Bounded triple search for 2-absorbing over Z: the conditions on (n)
// depend only on residues mod n, so representatives 0..n-1 suffice.
inline std::optional<std::array<long, 3>> z_two_absorbing_violation(long n) {
    if (n < 2) throw invalid_parameter("z_two_absorbing_violation: n must be >= 2");
    for (long a = 1; a < n; ++a)
        for (long b = a; b < n; ++b) {
            long ab = a * b % n;
            if (ab == 0) continue;
            for (long c = b; c < n; ++c) {
                if (ab * c % n != 0) continue;
                if (b * c % n == 0 || a * c % n == 0) continue;
                return std::array<long, 3>{a, b, c};
            }
        }
    return std::nullopt;
}

struct Prop55Report {
    long bound = 0;
    int primes_checked = 0;
    bool all_pass = true;
    std::vector<long> failures;
};

// Prop 5.5 over Z: (p^2) is ramified quasi-maximal for every prime p, both
// by factorization and by the finite quotient check.
inline Prop55Report prop_5_5_witness(long bound, const Limits& lim = Limits::global()) {
    if (bound < 2) throw invalid_parameter("prop_5_5_witness: bound must be >= 2");
    Prop55Report rep;
    rep.bound = bound;
    for (long p = 2; p <= bound; ++p) {
        if (!detail::is_prime_int(p)) continue;
        ++rep.primes_checked;
        bool ok = classify_z_ideal(p * p).tag == QClass::Ramified && z_crosscheck(p * p, lim);
        if (!ok) {
            rep.all_pass = false;
            rep.failures.push_back(p);
        }
    }
    return rep;
}

}  // namespace qmax
