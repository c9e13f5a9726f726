#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmax/bitset.hpp"
#include "qmax/errors.hpp"

namespace qmax {

using Elem = int;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// A finite commutative unital ring given by explicit operation tables over
// indexed elements. Immutable after construction; safe to share across
// threads. Index 0 is always the zero element in rings built by this
// library, but the zero/one indices are stored explicitly.
class Ring {
public:
    Ring(std::vector<std::uint16_t> add, std::vector<std::uint16_t> mul, Elem zero,
         Elem one, std::string label, std::vector<std::string> names,
         std::vector<std::pair<std::string, Elem>> named_gens = {})
        : n_(static_cast<int>(names.size())),
          add_(std::move(add)),
          mul_(std::move(mul)),
          zero_(zero),
          one_(one),
          label_(std::move(label)),
          names_(std::move(names)),
          named_gens_(std::move(named_gens)),
          id_(next_id()) {
        if (n_ < 1 || static_cast<int>(add_.size()) != n_ * n_ ||
            static_cast<int>(mul_.size()) != n_ * n_)
            throw invalid_parameter("ring tables malformed");
        if (n_ == 1 || zero_ == one_)
            throw invalid_parameter("the zero ring (1 = 0) is rejected");
        build_neg();
    }

    int size() const { return n_; }
    Elem zero() const { return zero_; }
    Elem one() const { return one_; }
    std::uint64_t id() const { return id_; }
    const std::string& label() const { return label_; }
    const std::string& name(Elem a) const { return names_[a]; }
    const std::vector<std::pair<std::string, Elem>>& named_gens() const { return named_gens_; }

    Elem add(Elem a, Elem b) const { return add_[a * n_ + b]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * n_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }

    Elem pow(Elem a, long e) const {
        Elem r = one_, base = a;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
        }
        return r;
    }

    // k * 1 for an integer k (k may be negative).
    Elem from_int(long k) const {
        long c = characteristic();
        k %= c;
        if (k < 0) k += c;
        Elem r = zero_;
        Elem step = one_;
        for (long bit = 1; bit <= k; bit <<= 1) {
            if (k & bit) r = add(r, step);
            step = add(step, step);
        }
        return r;
    }

    // Additive order of 1, i.e. c(R).
    long characteristic() const {
        long c = 1;
        Elem x = one_;
        while (x != zero_) {
            x = add(x, one_);
            ++c;
        }
        return c;
    }

    bool is_unit(Elem a) const {
        for (Elem b = 0; b < n_; ++b)
            if (mul(a, b) == one_) return true;
        return false;
    }
    std::optional<Elem> inverse(Elem a) const {
        for (Elem b = 0; b < n_; ++b)
            if (mul(a, b) == one_) return b;
        return std::nullopt;
    }
    bool is_nilpotent(Elem a) const {
        Elem x = a;
        for (int i = 0; i < n_; ++i) {
            if (x == zero_) return true;
            x = mul(x, a);
        }
        return x == zero_;
    }

    Bitset units() const {
        Bitset u(n_);
        for (Elem a = 0; a < n_; ++a)
            if (is_unit(a)) u.set(a);
        return u;
    }
    Bitset nilpotents() const {
        Bitset u(n_);
        for (Elem a = 0; a < n_; ++a)
            if (is_nilpotent(a)) u.set(a);
        return u;
    }
    // Z(R): elements killed by some nonzero element (0 included).
    Bitset zero_divisors() const {
        Bitset u(n_);
        for (Elem a = 0; a < n_; ++a)
            for (Elem b = 0; b < n_; ++b)
                if (b != zero_ && mul(a, b) == zero_) {
                    u.set(a);
                    break;
                }
        return u;
    }

    bool is_field() const {
        for (Elem a = 0; a < n_; ++a)
            if (a != zero_ && !is_unit(a)) return false;
        return true;
    }

private:
    static std::uint64_t next_id() {
        static std::atomic<std::uint64_t> ctr{1};
        return ctr.fetch_add(1);
    }
    void build_neg() {
        neg_.assign(n_, -1);
        for (Elem a = 0; a < n_; ++a) {
            for (Elem b = 0; b < n_; ++b)
                if (add(a, b) == zero_) {
                    neg_[a] = b;
                    break;
                }
            if (neg_[a] < 0) throw invalid_parameter("element without additive inverse");
        }
    }

    int n_;
    std::vector<std::uint16_t> add_, mul_;
    Elem zero_, one_;
    std::string label_;
    std::vector<std::string> names_;
    std::vector<std::pair<std::string, Elem>> named_gens_;
    std::vector<Elem> neg_;
    std::uint64_t id_;
};

// Exhaustive verification of the commutative unital ring axioms. O(n^3);
// meant for tests and for validating externally supplied tables.
inline bool check_ring_axioms(const Ring& R, std::string* why = nullptr) {
    auto fail = [&](const char* m) {
        if (why) *why = m;
        return false;
    };
    const int n = R.size();
    for (Elem a = 0; a < n; ++a) {
        if (R.add(R.zero(), a) != a) return fail("zero is not additive identity");
        if (R.mul(R.one(), a) != a) return fail("one is not multiplicative identity");
        bool inv = false;
        for (Elem b = 0; b < n && !inv; ++b) inv = R.add(a, b) == R.zero();
        if (!inv) return fail("missing additive inverse");
    }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            if (R.add(a, b) != R.add(b, a)) return fail("addition not commutative");
            if (R.mul(a, b) != R.mul(b, a)) return fail("multiplication not commutative");
        }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c) {
                if (R.add(R.add(a, b), c) != R.add(a, R.add(b, c)))
                    return fail("addition not associative");
                if (R.mul(R.mul(a, b), c) != R.mul(a, R.mul(b, c)))
                    return fail("multiplication not associative");
                if (R.mul(a, R.add(b, c)) != R.add(R.mul(a, b), R.mul(a, c)))
                    return fail("distributivity fails");
            }
    return true;
}

// A ring morphism given element-wise. Maps are certified on construction
// via certify(); is_homomorphism() re-checks exhaustively.
struct RingMap {
    RingPtr source;
    RingPtr target;
    std::vector<std::uint16_t> image;  // one target index per source element

    Elem operator()(Elem a) const { return image[a]; }

    bool is_homomorphism() const {
        const Ring& R = *source;
        const Ring& S = *target;
        if (static_cast<int>(image.size()) != R.size()) return false;
        if (image[R.zero()] != S.zero() || image[R.one()] != S.one()) return false;
        for (Elem a = 0; a < R.size(); ++a)
            for (Elem b = 0; b < R.size(); ++b) {
                if (S.add(image[a], image[b]) != image[R.add(a, b)]) return false;
                if (S.mul(image[a], image[b]) != image[R.mul(a, b)]) return false;
            }
        return true;
    }

    bool is_injective() const {
        std::vector<char> seen(target->size(), 0);
        for (auto v : image) {
            if (seen[v]) return false;
            seen[v] = 1;
        }
        return true;
    }
    bool is_surjective() const {
        std::vector<char> seen(target->size(), 0);
        int c = 0;
        for (auto v : image)
            if (!seen[v]) {
                seen[v] = 1;
                ++c;
            }
        return c == target->size();
    }

    Bitset image_set() const {
        Bitset b(target->size());
        for (auto v : image) b.set(v);
        return b;
    }

    // Preimage of a target subset.
    Bitset preimage(const Bitset& sub) const {
        Bitset b(source->size());
        for (Elem a = 0; a < source->size(); ++a)
            if (sub.test(image[a])) b.set(a);
        return b;
    }

    void certify() const {
        if (!is_homomorphism()) throw internal_inconsistency("map is not a ring homomorphism");
    }
};

inline RingMap identity_map(const RingPtr& R) {
    RingMap f{R, R, std::vector<std::uint16_t>(R->size())};
    for (Elem a = 0; a < R->size(); ++a) f.image[a] = static_cast<std::uint16_t>(a);
    return f;
}

inline RingMap compose(const RingMap& g, const RingMap& f) {
    // g after f
    if (f.target->id() != g.source->id())
        throw invalid_parameter("compose: mismatched rings");
    RingMap h{f.source, g.target, std::vector<std::uint16_t>(f.source->size())};
    for (Elem a = 0; a < f.source->size(); ++a) h.image[a] = g.image[f.image[a]];
    return h;
}

namespace detail {

inline void check_size_cap(long n, const Limits& lim) {
    if (n > lim.max_ring_size)
        throw resource_limit("ring size " + std::to_string(n) + " exceeds cap " +
                             std::to_string(lim.max_ring_size));
}

// Smallest subset containing seeds (plus 0), closed under addition and
// multiplication by every ring element. Local helper so ring construction
// does not depend on the ideal module; ideal.hpp delegates here.
inline Bitset ideal_closure_bits(const Ring& R, const std::vector<Elem>& seeds) {
    Bitset in(R.size());
    std::vector<Elem> work;
    auto push = [&](Elem x) {
        if (!in.test(x)) {
            in.set(x);
            work.push_back(x);
        }
    };
    push(R.zero());
    for (Elem g : seeds)
        for (Elem r = 0; r < R.size(); ++r) push(R.mul(r, g));
    for (std::size_t k = 0; k < work.size(); ++k) {
        Elem x = work[k];
        for (std::size_t j = 0; j <= k; ++j) push(R.add(x, work[j]));
    }
    // closed under ambient multiplication by construction of the generators;
    // re-close to cover sums times ring elements
    for (std::size_t k = 0; k < work.size(); ++k) {
        Elem x = work[k];
        for (Elem r = 0; r < R.size(); ++r) push(R.mul(r, x));
        for (std::size_t j = 0; j <= k; ++j) push(R.add(x, work[j]));
    }
    return in;
}

}  // namespace detail

// --- constructions -----------------------------------------------------

inline RingPtr make_zmod(long n, const Limits& lim = Limits::global()) {
    if (n < 2) throw invalid_parameter("make_zmod: n must be >= 2");
    detail::check_size_cap(n, lim);
    const int m = static_cast<int>(n);
    std::vector<std::uint16_t> add(m * m), mul(m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            add[a * m + b] = static_cast<std::uint16_t>((a + b) % m);
            mul[a * m + b] = static_cast<std::uint16_t>((static_cast<long>(a) * b) % m);
        }
    std::vector<std::string> names(m);
    for (int a = 0; a < m; ++a) names[a] = std::to_string(a);
    return std::make_shared<Ring>(std::move(add), std::move(mul), 0, n == 1 ? 0 : 1,
                                  "Z/" + std::to_string(n), std::move(names));
}

namespace detail {

inline std::string poly_name(const Ring& base, const std::vector<Elem>& digits,
                             const std::string& var) {
    std::string out;
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
        Elem c = digits[i];
        if (c == base.zero()) continue;
        std::string term;
        std::string cn = base.name(c);
        if (i == 0) {
            term = cn;
        } else {
            std::string xp = (i == 1) ? var : var + "^" + std::to_string(i);
            if (c == base.one())
                term = xp;
            else if (cn.find_first_of("+*") != std::string::npos)
                term = "(" + cn + ")*" + xp;
            else
                term = cn + "*" + xp;
        }
        if (!out.empty()) out += "+";
        out += term;
    }
    return out.empty() ? base.name(base.zero()) : out;
}

inline std::string next_var(const Ring& base) {
    static const char* vars[] = {"x", "y", "z", "w", "v"};
    for (const char* v : vars) {
        bool used = false;
        for (auto& [nm, e] : base.named_gens()) used |= (nm == v);
        if (!used) return v;
    }
    throw invalid_parameter("too many nested polynomial variables");
}

}  // namespace detail

struct PolyQuotient {
    RingPtr ring;
    RingMap inclusion;  // base -> quotient
    Elem var;           // the class of x
};

// base[x]/(f) for a monic f, elements encoded as coefficient vectors in
// base-size positional order (coefficient of x^i is digit i).
inline PolyQuotient make_poly_quotient(const RingPtr& base, const std::vector<Elem>& monic,
                                       const Limits& lim = Limits::global(),
                                       std::string var_name = "") {
    const Ring& B = *base;
    const int d = static_cast<int>(monic.size()) - 1;
    if (d < 1) throw invalid_parameter("make_poly_quotient: degree must be >= 1");
    if (monic.back() != B.one()) throw invalid_parameter("make_poly_quotient: modulus not monic");
    long n = 1;
    for (int i = 0; i < d; ++i) {
        n *= B.size();
        detail::check_size_cap(n, lim);
    }
    const int m = B.size();
    const int N = static_cast<int>(n);
    const std::string var = var_name.empty() ? detail::next_var(B) : var_name;

    auto digits = [&](int e) {
        std::vector<Elem> dg(d);
        for (int i = 0; i < d; ++i) {
            dg[i] = e % m;
            e /= m;
        }
        return dg;
    };
    auto index = [&](const std::vector<Elem>& dg) {
        long e = 0;
        for (int i = d - 1; i >= 0; --i) e = e * m + dg[i];
        return static_cast<int>(e);
    };

    std::vector<std::uint16_t> add(static_cast<std::size_t>(N) * N);
    for (int a = 0; a < N; ++a) {
        auto da = digits(a);
        for (int b = 0; b <= a; ++b) {
            auto db = digits(b);
            std::vector<Elem> dc(d);
            for (int i = 0; i < d; ++i) dc[i] = B.add(da[i], db[i]);
            std::uint16_t c = static_cast<std::uint16_t>(index(dc));
            add[static_cast<std::size_t>(a) * N + b] = c;
            add[static_cast<std::size_t>(b) * N + a] = c;
        }
    }

    // reduction of x^d: -(f_0 + ... + f_{d-1} x^{d-1})
    std::vector<Elem> red(d);
    for (int i = 0; i < d; ++i) red[i] = B.neg(monic[i]);

    // multiply-by-x map on element indices
    std::vector<int> xshift(N);
    for (int a = 0; a < N; ++a) {
        auto da = digits(a);
        Elem lead = da[d - 1];
        std::vector<Elem> dc(d, B.zero());
        for (int i = d - 1; i >= 1; --i) dc[i] = da[i - 1];
        for (int i = 0; i < d; ++i) dc[i] = B.add(dc[i], B.mul(lead, red[i]));
        xshift[a] = index(dc);
    }

    // scalar multiplication by base coefficients, on element indices
    std::vector<std::vector<int>> scal(m, std::vector<int>(N));
    for (Elem c = 0; c < m; ++c)
        for (int a = 0; a < N; ++a) {
            auto da = digits(a);
            for (auto& t : da) t = B.mul(c, t);
            scal[c][a] = index(da);
        }

    std::vector<std::uint16_t> mul(static_cast<std::size_t>(N) * N);
    std::vector<int> xs(d);  // a, a*x, a*x^2, ...
    for (int a = 0; a < N; ++a) {
        xs[0] = a;
        for (int i = 1; i < d; ++i) xs[i] = xshift[xs[i - 1]];
        for (int b = 0; b <= a; ++b) {
            auto db = digits(b);
            int acc = 0;  // index of zero
            for (int i = 0; i < d; ++i)
                if (db[i] != B.zero()) acc = add[static_cast<std::size_t>(acc) * N + scal[db[i]][xs[i]]];
            mul[static_cast<std::size_t>(a) * N + b] = static_cast<std::uint16_t>(acc);
            mul[static_cast<std::size_t>(b) * N + a] = static_cast<std::uint16_t>(acc);
        }
    }

    std::vector<std::string> names(N);
    for (int a = 0; a < N; ++a) names[a] = detail::poly_name(B, digits(a), var);
    std::vector<std::pair<std::string, Elem>> gens = B.named_gens();
    std::vector<Elem> xdig(d, B.zero());
    if (d == 1) {
        // x reduces immediately; still expose the reduced class
    } else {
        xdig[1] = B.one();
    }
    Elem xelem = d == 1 ? scal[B.one()][0] : index(xdig);
    if (d == 1) {
        // x == -f0 in the degree-1 quotient
        std::vector<Elem> dg{B.neg(monic[0])};
        xelem = index(dg);
    }
    // base elements embed as constant polynomials = digit-0 values
    std::vector<std::uint16_t> incl(m);
    for (Elem c = 0; c < m; ++c) {
        std::vector<Elem> dg(d, B.zero());
        dg[0] = c;
        incl[c] = static_cast<std::uint16_t>(index(dg));
    }
    for (auto& [nm, e] : gens) e = incl[e];
    gens.emplace_back(var, xelem);

    std::string lbl = "poly(" + B.label() + ", " + detail::poly_name(B, monic, var) + ")";
    auto ring = std::make_shared<Ring>(std::move(add), std::move(mul), 0, incl[B.one()],
                                       std::move(lbl), std::move(names), std::move(gens));
    RingMap inc{base, ring, std::move(incl)};
    inc.certify();
    return {ring, std::move(inc), xelem};
}

struct ProductRing {
    RingPtr ring;
    std::vector<RingMap> projections;
};

inline ProductRing make_product(const std::vector<RingPtr>& factors,
                                const Limits& lim = Limits::global()) {
    if (factors.empty()) throw invalid_parameter("make_product: need at least one factor");
    long n = 1;
    for (auto& f : factors) {
        n *= f->size();
        detail::check_size_cap(n, lim);
    }
    const int N = static_cast<int>(n);
    const int k = static_cast<int>(factors.size());

    auto split = [&](int e) {
        std::vector<Elem> v(k);
        for (int i = k - 1; i >= 0; --i) {
            v[i] = e % factors[i]->size();
            e /= factors[i]->size();
        }
        return v;
    };
    auto join = [&](const std::vector<Elem>& v) {
        long e = 0;
        for (int i = 0; i < k; ++i) e = e * factors[i]->size() + v[i];
        return static_cast<int>(e);
    };

    std::vector<std::uint16_t> add(static_cast<std::size_t>(N) * N), mul(static_cast<std::size_t>(N) * N);
    for (int a = 0; a < N; ++a) {
        auto va = split(a);
        for (int b = 0; b <= a; ++b) {
            auto vb = split(b);
            std::vector<Elem> s(k), p(k);
            for (int i = 0; i < k; ++i) {
                s[i] = factors[i]->add(va[i], vb[i]);
                p[i] = factors[i]->mul(va[i], vb[i]);
            }
            std::uint16_t si = static_cast<std::uint16_t>(join(s));
            std::uint16_t pi = static_cast<std::uint16_t>(join(p));
            add[static_cast<std::size_t>(a) * N + b] = add[static_cast<std::size_t>(b) * N + a] = si;
            mul[static_cast<std::size_t>(a) * N + b] = mul[static_cast<std::size_t>(b) * N + a] = pi;
        }
    }

    std::vector<Elem> ones(k), zeros(k);
    for (int i = 0; i < k; ++i) {
        ones[i] = factors[i]->one();
        zeros[i] = factors[i]->zero();
    }
    std::vector<std::string> names(N);
    for (int a = 0; a < N; ++a) {
        auto v = split(a);
        std::string nm = "(";
        for (int i = 0; i < k; ++i) {
            if (i) nm += ",";
            nm += factors[i]->name(v[i]);
        }
        names[a] = nm + ")";
    }
    std::string lbl;
    for (int i = 0; i < k; ++i) {
        if (i) lbl += " x ";
        lbl += factors[i]->label();
    }
    if (k == 1) lbl = factors[0]->label();

    auto ring = std::make_shared<Ring>(std::move(add), std::move(mul), join(zeros), join(ones),
                                       std::move(lbl), std::move(names));
    ProductRing out{ring, {}};
    for (int i = 0; i < k; ++i) {
        RingMap pr{ring, factors[i], std::vector<std::uint16_t>(N)};
        for (int a = 0; a < N; ++a) pr.image[a] = static_cast<std::uint16_t>(split(a)[i]);
        pr.certify();
        out.projections.push_back(std::move(pr));
    }
    return out;
}

struct Idealization {
    RingPtr ring;      // R(+)E
    RingMap inclusion;  // R -> R(+)E, r |-> (r,0)
    RingMap retraction; // R(+)E -> R, (r,e) |-> r
};

// Nagata idealization R(+)E for an ideal E of R used as the module:
// (r,i)(s,j) = (rs, rj+si).
inline Idealization make_idealization(const RingPtr& Rp, const Bitset& Ebits,
                                      const Limits& lim = Limits::global()) {
    const Ring& R = *Rp;
    if (Ebits.capacity() != R.size() || !Ebits.test(R.zero()))
        throw invalid_parameter("make_idealization: E must be a subset containing 0");
    std::vector<Elem> E = Ebits.members();
    const int ne = static_cast<int>(E.size());
    long n = static_cast<long>(R.size()) * ne;
    detail::check_size_cap(n, lim);
    std::vector<int> pos(R.size(), -1);
    for (int i = 0; i < ne; ++i) pos[E[i]] = i;
    // ideal closure sanity
    for (Elem e : E) {
        for (Elem f : E)
            if (pos[R.add(e, f)] < 0) throw invalid_parameter("make_idealization: E not closed under +");
        for (Elem r = 0; r < R.size(); ++r)
            if (pos[R.mul(r, e)] < 0)
                throw invalid_parameter("make_idealization: E not closed under ring multiplication");
    }

    const int N = static_cast<int>(n);
    auto join = [&](Elem r, Elem e) { return r * ne + pos[e]; };
    std::vector<std::uint16_t> add(static_cast<std::size_t>(N) * N), mul(static_cast<std::size_t>(N) * N);
    for (Elem r1 = 0; r1 < R.size(); ++r1)
        for (int i1 = 0; i1 < ne; ++i1) {
            int a = r1 * ne + i1;
            for (Elem r2 = 0; r2 < R.size(); ++r2)
                for (int i2 = 0; i2 < ne; ++i2) {
                    int b = r2 * ne + i2;
                    add[static_cast<std::size_t>(a) * N + b] =
                        static_cast<std::uint16_t>(join(R.add(r1, r2), R.add(E[i1], E[i2])));
                    mul[static_cast<std::size_t>(a) * N + b] = static_cast<std::uint16_t>(
                        join(R.mul(r1, r2), R.add(R.mul(r1, E[i2]), R.mul(r2, E[i1]))));
                }
        }

    std::vector<std::string> names(N);
    for (Elem r = 0; r < R.size(); ++r)
        for (int i = 0; i < ne; ++i) names[r * ne + i] = "(" + R.name(r) + "," + R.name(E[i]) + ")";
    std::string lbl = "idealize(" + R.label() + ", {";
    {
        bool fst = true;
        for (Elem e : E) {
            if (e == R.zero()) continue;
            if (!fst) lbl += ",";
            lbl += R.name(e);
            fst = false;
        }
        lbl += "})";
    }
    auto ring = std::make_shared<Ring>(std::move(add), std::move(mul), join(R.zero(), R.zero()),
                                       join(R.one(), R.zero()), std::move(lbl), std::move(names));
    RingMap inc{Rp, ring, std::vector<std::uint16_t>(R.size())};
    for (Elem r = 0; r < R.size(); ++r) inc.image[r] = static_cast<std::uint16_t>(join(r, R.zero()));
    RingMap ret{ring, Rp, std::vector<std::uint16_t>(N)};
    for (Elem r = 0; r < R.size(); ++r)
        for (int i = 0; i < ne; ++i) ret.image[r * ne + i] = static_cast<std::uint16_t>(r);
    inc.certify();
    ret.certify();
    return {ring, std::move(inc), std::move(ret)};
}

struct QuotientRing {
    RingPtr ring;
    RingMap surjection;  // R -> R/I
};

// R/I with elements the cosets, ordered by least member index.
inline QuotientRing quotient_ring(const RingPtr& Rp, const Bitset& Ibits,
                                  std::string label = "") {
    const Ring& R = *Rp;
    if (Ibits.capacity() != R.size()) throw invalid_parameter("quotient_ring: wrong ring");
    if (Ibits.count() == R.size()) throw invalid_parameter("quotient_ring: I must be proper");
    if (!Ibits.test(R.zero())) throw invalid_parameter("quotient_ring: not an ideal");

    std::vector<int> rep(R.size(), -1);
    std::vector<Elem> reps;
    for (Elem a = 0; a < R.size(); ++a) {
        if (rep[a] >= 0) continue;
        // a is the least member of its coset (scan order is ascending)
        reps.push_back(a);
        Ibits.for_each([&](Elem i) { rep[R.add(a, i)] = a; });
        if (rep[a] != a) throw invalid_parameter("quotient_ring: subset is not an ideal");
    }
    const int N = static_cast<int>(reps.size());
    std::vector<int> idx(R.size(), -1);
    for (int i = 0; i < N; ++i) idx[reps[i]] = i;

    std::vector<std::uint16_t> add(static_cast<std::size_t>(N) * N), mul(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            add[static_cast<std::size_t>(i) * N + j] =
                static_cast<std::uint16_t>(idx[rep[R.add(reps[i], reps[j])]]);
            mul[static_cast<std::size_t>(i) * N + j] =
                static_cast<std::uint16_t>(idx[rep[R.mul(reps[i], reps[j])]]);
        }
    std::vector<std::string> names(N);
    for (int i = 0; i < N; ++i) names[i] = R.name(reps[i]);
    std::vector<std::pair<std::string, Elem>> gens;
    for (auto& [nm, e] : R.named_gens()) gens.emplace_back(nm, idx[rep[e]]);
    if (label.empty()) label = "quot(" + R.label() + ")";

    auto ring = std::make_shared<Ring>(std::move(add), std::move(mul), idx[rep[R.zero()]],
                                       idx[rep[R.one()]], std::move(label), std::move(names),
                                       std::move(gens));
    RingMap sur{Rp, ring, std::vector<std::uint16_t>(R.size())};
    for (Elem a = 0; a < R.size(); ++a) sur.image[a] = static_cast<std::uint16_t>(idx[rep[a]]);
    sur.certify();
    return {ring, std::move(sur)};
}

// Smallest subset of S containing the seeds, 0 and 1, closed under the two
// operations (a finite set closed under + is automatically a subgroup).
inline Bitset subring_closure(const Ring& S, const std::vector<Elem>& seeds) {
    Bitset in(S.size());
    std::vector<Elem> work;
    auto push = [&](Elem x) {
        if (!in.test(x)) {
            in.set(x);
            work.push_back(x);
        }
    };
    push(S.zero());
    push(S.one());
    for (Elem g : seeds) push(g);
    for (std::size_t k = 0; k < work.size(); ++k) {
        Elem x = work[k];
        for (std::size_t j = 0; j <= k; ++j) {
            push(S.add(x, work[j]));
            push(S.mul(x, work[j]));
        }
    }
    return in;
}

struct Subring {
    RingPtr ring;
    RingMap inclusion;  // subring -> ambient
};

// Reindex a multiplicatively/additively closed subset (containing 0 and 1)
// as a ring of its own, with the inclusion map into the ambient ring.
inline Subring make_subring(const RingPtr& Sp, const Bitset& members, std::string label = "") {
    const Ring& S = *Sp;
    if (!members.test(S.zero()) || !members.test(S.one()))
        throw invalid_parameter("make_subring: must contain 0 and 1");
    std::vector<Elem> mem = members.members();
    const int N = static_cast<int>(mem.size());
    std::vector<int> idx(S.size(), -1);
    for (int i = 0; i < N; ++i) idx[mem[i]] = i;
    std::vector<std::uint16_t> add(static_cast<std::size_t>(N) * N), mul(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            int s = idx[S.add(mem[i], mem[j])];
            int p = idx[S.mul(mem[i], mem[j])];
            if (s < 0 || p < 0) throw invalid_parameter("make_subring: subset not closed");
            add[static_cast<std::size_t>(i) * N + j] = static_cast<std::uint16_t>(s);
            mul[static_cast<std::size_t>(i) * N + j] = static_cast<std::uint16_t>(p);
        }
    std::vector<std::string> names(N);
    for (int i = 0; i < N; ++i) names[i] = S.name(mem[i]);
    std::vector<std::pair<std::string, Elem>> gens;
    for (auto& [nm, e] : S.named_gens())
        if (idx[e] >= 0) gens.emplace_back(nm, idx[e]);
    if (label.empty()) label = "sub(" + S.label() + ", #" + std::to_string(N) + ")";
    auto ring = std::make_shared<Ring>(std::move(add), std::move(mul), idx[S.zero()], idx[S.one()],
                                       std::move(label), std::move(names), std::move(gens));
    RingMap inc{ring, Sp, std::vector<std::uint16_t>(N)};
    for (int i = 0; i < N; ++i) inc.image[i] = static_cast<std::uint16_t>(mem[i]);
    inc.certify();
    return {ring, std::move(inc)};
}

// --- finite fields ------------------------------------------------------

namespace detail {

// dense polynomials over Z/p, lowest degree first, for irreducibility tests
inline std::vector<int> polymod_trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline std::vector<int> polymod_rem(std::vector<int> a, const std::vector<int>& b, int p) {
    // b monic-normalized on the fly
    int db = static_cast<int>(b.size()) - 1;
    int lead_inv = 1;
    for (int t = 1; t < p; ++t)
        if (b[db] * t % p == 1) lead_inv = t;
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        int da = static_cast<int>(a.size()) - 1;
        int c = a[da] * lead_inv % p;
        if (c)
            for (int i = 0; i <= db; ++i)
                a[da - db + i] = ((a[da - db + i] - c * b[i]) % p + p) % p;
        a = polymod_trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

inline bool is_irreducible_modp(const std::vector<int>& f, int p) {
    int d = static_cast<int>(f.size()) - 1;
    if (d < 1) return false;
    // trial division by all monic polynomials of degree 1..d/2
    for (int deg = 1; 2 * deg <= d; ++deg) {
        long count = 1;
        for (int i = 0; i < deg; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            std::vector<int> g(deg + 1);
            long c = code;
            for (int i = 0; i < deg; ++i) {
                g[i] = static_cast<int>(c % p);
                c /= p;
            }
            g[deg] = 1;
            if (polymod_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

// lexicographically least irreducible monic of degree k over F_p
inline std::vector<int> least_irreducible(int p, int k) {
    long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long code = 0; code < count; ++code) {
        std::vector<int> f(k + 1);
        long c = code;
        for (int i = 0; i < k; ++i) {
            f[i] = static_cast<int>(c % p);
            c /= p;
        }
        f[k] = 1;
        if (is_irreducible_modp(f, p)) return f;
    }
    throw internal_inconsistency("no irreducible polynomial found");
}

inline bool is_prime_int(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

// GF(p^k), built as Z/p for k=1 and as a quotient by the least irreducible
// monic otherwise.
inline RingPtr make_gf(long p, int k, const Limits& lim = Limits::global()) {
    if (!detail::is_prime_int(p)) throw invalid_parameter("make_gf: p must be prime");
    if (k < 1) throw invalid_parameter("make_gf: k must be >= 1");
    long q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    std::string lbl = "GF(" + std::to_string(q) + ")";
    if (k == 1) {
        auto zp = make_zmod(p, lim);
        // same tables, field label
        std::vector<std::uint16_t> add(p * p), mul(p * p);
        std::vector<std::string> names(p);
        for (int a = 0; a < p; ++a) {
            names[a] = zp->name(a);
            for (int b = 0; b < p; ++b) {
                add[a * p + b] = static_cast<std::uint16_t>(zp->add(a, b));
                mul[a * p + b] = static_cast<std::uint16_t>(zp->mul(a, b));
            }
        }
        return std::make_shared<Ring>(std::move(add), std::move(mul), 0, 1, std::move(lbl),
                                      std::move(names));
    }
    auto f = detail::least_irreducible(static_cast<int>(p), k);
    std::vector<Elem> coeffs(f.begin(), f.end());
    auto pq = make_poly_quotient(make_zmod(p, lim), coeffs, lim, "x");
    // relabel
    const Ring& Q = *pq.ring;
    std::vector<std::uint16_t> add(static_cast<std::size_t>(Q.size()) * Q.size()),
        mul(static_cast<std::size_t>(Q.size()) * Q.size());
    std::vector<std::string> names(Q.size());
    for (int a = 0; a < Q.size(); ++a) {
        names[a] = Q.name(a);
        for (int b = 0; b < Q.size(); ++b) {
            add[static_cast<std::size_t>(a) * Q.size() + b] = static_cast<std::uint16_t>(Q.add(a, b));
            mul[static_cast<std::size_t>(a) * Q.size() + b] = static_cast<std::uint16_t>(Q.mul(a, b));
        }
    }
    return std::make_shared<Ring>(std::move(add), std::move(mul), Q.zero(), Q.one(),
                                  std::move(lbl), std::move(names), Q.named_gens());
}

// --- isomorphism / embedding search --------------------------------------

namespace detail {

// Greedy minimal generating sequence: adjoin the least element outside the
// closure until the whole ring is generated.
inline std::vector<Elem> generator_sequence(const Ring& A) {
    std::vector<Elem> gens;
    Bitset have = subring_closure(A, {});
    while (have.count() < A.size()) {
        Elem g = -1;
        for (Elem a = 0; a < A.size(); ++a)
            if (!have.test(a)) {
                g = a;
                break;
            }
        gens.push_back(g);
        std::vector<Elem> seeds = gens;
        have = subring_closure(A, seeds);
    }
    return gens;
}

// Extend a partial map (defined on `dom`) by the images of the generators;
// propagates through add/mul closure, failing on any conflict or (for
// embeddings) non-injectivity.
inline bool propagate_hom(const Ring& A, const Ring& B, std::vector<int>& img,
                          std::vector<Elem>& dom) {
    std::vector<char> used(B.size(), 0);
    for (Elem a : dom) used[img[a]] = 1;
    for (std::size_t k = 0; k < dom.size(); ++k) {
        Elem x = dom[k];
        for (std::size_t j = 0; j <= k; ++j) {
            Elem y = dom[j];
            struct {
                Elem s, t;
            } ops[2] = {{A.add(x, y), B.add(img[x], img[y])},
                        {A.mul(x, y), B.mul(img[x], img[y])}};
            for (auto [s, t] : ops) {
                if (img[s] < 0) {
                    if (used[t]) return false;  // injectivity
                    img[s] = t;
                    used[t] = 1;
                    dom.push_back(s);
                } else if (img[s] != t) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool embed_search(const Ring& A, const Ring& B, const std::vector<Elem>& gens,
                         std::size_t pos, std::vector<int>& img, std::vector<Elem>& dom) {
    if (pos == gens.size()) return true;
    Elem g = gens[pos];
    if (img[g] >= 0) return embed_search(A, B, gens, pos + 1, img, dom);
    for (Elem c = 0; c < B.size(); ++c) {
        std::vector<int> img2 = img;
        std::vector<Elem> dom2 = dom;
        bool dup = false;
        for (Elem d : dom2) dup |= (img2[d] == c);
        if (dup) continue;
        img2[g] = c;
        dom2.push_back(g);
        if (propagate_hom(A, B, img2, dom2) && embed_search(A, B, gens, pos + 1, img2, dom2)) {
            img = std::move(img2);
            dom = std::move(dom2);
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Injective unital homomorphism A -> B, if any, by backtracking on the
// images of a generating sequence. An isomorphism when sizes match.
inline std::optional<RingMap> find_embedding(const RingPtr& Ap, const RingPtr& Bp) {
    const Ring& A = *Ap;
    const Ring& B = *Bp;
    if (A.size() > B.size()) return std::nullopt;
    std::vector<int> img(A.size(), -1);
    std::vector<Elem> dom;
    img[A.zero()] = B.zero();
    dom.push_back(A.zero());
    if (B.one() == img[A.zero()]) return std::nullopt;
    img[A.one()] = B.one();
    dom.push_back(A.one());
    if (!detail::propagate_hom(A, B, img, dom)) return std::nullopt;
    auto gens = detail::generator_sequence(A);
    if (!detail::embed_search(A, B, gens, 0, img, dom)) return std::nullopt;
    RingMap f{Ap, Bp, std::vector<std::uint16_t>(A.size())};
    for (Elem a = 0; a < A.size(); ++a) {
        if (img[a] < 0) return std::nullopt;
        f.image[a] = static_cast<std::uint16_t>(img[a]);
    }
    if (!f.is_homomorphism() || !f.is_injective()) return std::nullopt;
    return f;
}

inline std::optional<RingMap> find_isomorphism(const RingPtr& Ap, const RingPtr& Bp) {
    if (Ap->size() != Bp->size()) return std::nullopt;
    return find_embedding(Ap, Bp);
}

inline bool are_isomorphic(const RingPtr& A, const RingPtr& B) {
    return find_isomorphism(A, B).has_value();
}

}  // namespace qmax
