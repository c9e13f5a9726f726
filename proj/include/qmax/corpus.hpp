#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmax/extensions.hpp"
#include "qmax/spec_parse.hpp"

namespace qmax {

// Deterministic test corpus: rings, extensions and morphisms enumerated in
// a fixed order. The seed is recorded in reports; enumeration itself is
// deterministic and the seed only matters if a caller samples from it.
struct CorpusOptions {
    int zmod_to = 200;        // all Z/n, 2 <= n <= zmod_to
    int max_ring_size = 128;  // cap for constructed (non-Z/n) corpus rings
    int max_ext_ambient = 64; // cap for extension ambient rings
    std::uint64_t seed = 0;
};

struct RingItem {
    std::string label;
    std::function<RingPtr()> build;
};

struct ExtensionItem {
    std::string label;
    std::function<Extension()> build;
};

struct MapItem {
    std::string label;
    bool surjective;
    std::function<RingMap()> build;
};

namespace corpus_detail {

inline RingPtr cached_spec(const std::string& spec) {
    // small process-wide cache so repeated corpus iteration reuses tables
    static std::mutex mu;
    static std::map<std::string, RingPtr> cache;
    std::lock_guard<std::mutex> g(mu);
    auto it = cache.find(spec);
    if (it != cache.end()) return it->second;
    RingPtr r = parse_ring_spec(spec);
    cache.emplace(spec, r);
    return r;
}

// K embedded diagonally in K x K
inline Extension diagonal_extension(const RingPtr& K) {
    auto P = make_product({K, K});
    Bitset diag(P.ring->size());
    for (Elem a = 0; a < K->size(); ++a) diag.set(a * K->size() + a);
    return extension_from_subring(P.ring, diag, "diag(" + K->label() + ")");
}

// (R < S) padded to (R x T < S x T)
inline Extension pad_extension(const Extension& E, const RingPtr& T) {
    auto A = make_product({E.Rp(), T});
    auto B = make_product({E.Sp(), T});
    const int nt = T->size();
    RingMap f{A.ring, B.ring, std::vector<std::uint16_t>(A.ring->size())};
    for (Elem r = 0; r < E.R().size(); ++r)
        for (Elem t = 0; t < nt; ++t)
            f.image[r * nt + t] = static_cast<std::uint16_t>(E.incl.image[r] * nt + t);
    f.certify();
    return make_extension(std::move(f));
}

// R' -> R'(+)(R'/M'), r |-> (r, 0)
inline Extension idealization_mod_extension(const RingPtr& Rp, const Ideal& M) {
    RingPtr S = make_idealization_mod_quotient(Rp, M);
    int nq = S->size() / Rp->size();
    RingMap f{Rp, S, std::vector<std::uint16_t>(Rp->size())};
    for (Elem r = 0; r < Rp->size(); ++r) f.image[r] = static_cast<std::uint16_t>(r * nq);
    f.certify();
    return make_extension(std::move(f));
}

// R' -> R'[X]/(tX, X^2-tu), r |-> r + 0*y
inline Extension spir_type2_extension(const RingPtr& Rp, Elem t, Elem u) {
    RingPtr S = make_spir_type2(Rp, t, u);
    int nq = S->size() / Rp->size();
    RingMap f{Rp, S, std::vector<std::uint16_t>(Rp->size())};
    for (Elem r = 0; r < Rp->size(); ++r) f.image[r] = static_cast<std::uint16_t>(r * nq);
    f.certify();
    return make_extension(std::move(f));
}

}  // namespace corpus_detail

inline std::vector<RingItem> ring_corpus(const CorpusOptions& opt = {}) {
    std::vector<RingItem> out;
    auto spec = [&](const std::string& s) {
        out.push_back({s, [s] { return corpus_detail::cached_spec(s); }});
    };

    // all Z/n
    for (int n = 2; n <= opt.zmod_to; ++n) spec("Z/" + std::to_string(n));

    // finite fields up to 64
    for (long q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29,
                   31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64})
        spec("GF(" + std::to_string(q) + ")");

    // monic quotients of degree 2..3 over Z/p, p <= 5
    for (int p : {2, 3, 5})
        for (int d = 2; d <= 3; ++d) {
            long sz = 1;
            for (int i = 0; i < d; ++i) sz *= p;
            if (sz > opt.max_ring_size) continue;
            long count = 1;
            for (int i = 0; i < d; ++i) count *= p;
            for (long code = 0; code < count; ++code) {
                std::string poly;
                long c = code;
                std::vector<int> coef(d + 1, 0);
                for (int i = 0; i < d; ++i) {
                    coef[i] = static_cast<int>(c % p);
                    c /= p;
                }
                coef[d] = 1;
                poly = "[";
                for (int i = 0; i <= d; ++i) poly += (i ? "," : "") + std::to_string(coef[i]);
                poly += "]";
                spec("poly(Z/" + std::to_string(p) + ", " + poly + ")");
            }
        }

    // products of two and of three corpus rings
    {
        std::vector<std::pair<std::string, int>> pool;
        for (int n = 2; n <= 36; ++n) pool.emplace_back("Z/" + std::to_string(n), n);
        for (long q : {4, 8, 9, 16, 25, 27}) pool.emplace_back("GF(" + std::to_string(q) + ")", q);
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i; j < pool.size(); ++j)
                if (pool[i].second * pool[j].second <= 2 * opt.max_ring_size)
                    spec(pool[i].first + " x " + pool[j].first);
        std::vector<std::pair<std::string, int>> pool3;
        for (int n = 2; n <= 12; ++n) pool3.emplace_back("Z/" + std::to_string(n), n);
        pool3.emplace_back("GF(4)", 4);
        pool3.emplace_back("GF(9)", 9);
        for (std::size_t i = 0; i < pool3.size(); ++i)
            for (std::size_t j = i; j < pool3.size(); ++j)
                for (std::size_t k = j; k < pool3.size(); ++k)
                    if (pool3[i].second * pool3[j].second * pool3[k].second <=
                        2 * opt.max_ring_size)
                        spec(pool3[i].first + " x " + pool3[j].first + " x " + pool3[k].first);
    }

    // idealizations R(+)E over small rings, E running over nonzero ideals
    for (const std::string rs :
         {"Z/2", "Z/3", "Z/4", "Z/6", "Z/8", "Z/9", "Z/12", "GF(4)", "GF(8)", "GF(9)",
          "poly(Z/2, x^2)", "poly(Z/3, x^2)"}) {
        RingPtr R = corpus_detail::cached_spec(rs);
        auto L = lattice_of(*R);
        for (std::size_t ii = 1; ii < L->ideals.size(); ++ii) {  // skip (0)
            const Ideal& E = L->ideals[ii];
            if (R->size() * E.count() > 96) continue;
            std::string gens;
            E.members.for_each([&](Elem a) {
                if (a == R->zero()) return;
                if (!gens.empty()) gens += ",";
                gens += "#" + std::to_string(a);
            });
            spec("idealize(" + rs + ", " + gens + ")");
        }
    }

    // Example 4.22 rings T = k[X,Y]/(X^2, Y^2, XY)
    for (const std::string k : {"GF(2)", "GF(3)", "GF(5)"})
        spec("mvq(" + k + ", x^2, y^2, xy)");

    return out;
}

inline std::vector<ExtensionItem> extension_corpus(const CorpusOptions& opt = {}) {
    std::vector<ExtensionItem> out;
    auto add = [&](const std::string& label, std::function<Extension()> f) {
        out.push_back({label, std::move(f)});
    };
    auto sub_of = [&](const std::string& amb, const std::string& elems) {
        add("ext(sub(" + amb + ", " + elems + "), " + amb + ")", [amb, elems] {
            RingPtr S = corpus_detail::cached_spec(amb);
            return subring_generated(S, parse_elements(*S, elems));
        });
    };

    // field towers (prime relative degree is minimal inert; others not minimal)
    const std::pair<long, long> towers[] = {{2, 4},  {2, 8},  {2, 16}, {2, 32}, {2, 64},
                                            {4, 16}, {4, 64}, {8, 64}, {3, 9},  {3, 27},
                                            {5, 25}, {7, 49}};
    for (auto [a, b] : towers) {
        if (b > opt.max_ext_ambient) continue;
        std::string la = "GF(" + std::to_string(a) + ")", lb = "GF(" + std::to_string(b) + ")";
        add("ext(" + la + ", " + lb + ")", [la, lb] {
            auto emb = find_embedding(corpus_detail::cached_spec(la),
                                      corpus_detail::cached_spec(lb));
            require(emb.has_value(), "subfield embedding must exist");
            return make_extension(std::move(*emb));
        });
    }

    // prime subrings
    for (const std::string amb :
         {"GF(4)", "GF(8)", "GF(9)", "GF(25)", "GF(27)", "poly(Z/2, x^2)", "poly(Z/2, x^3)",
          "poly(Z/3, x^2)", "poly(Z/4, x^2)", "GF(2) x GF(2)", "GF(3) x GF(3)",
          "Z/4 x Z/4", "GF(2) x poly(Z/2, x^2)", "mvq(GF(2), x^2, y^2, xy)",
          "mvq(GF(3), x^2, y^2, xy)"})
        sub_of(amb, "");

    // diagonals K < K x K
    for (const std::string k : {"GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(7)", "GF(8)", "Z/4",
                                 "Z/9", "Z/6"})
        add("diag(" + k + ")",
            [k] { return corpus_detail::diagonal_extension(corpus_detail::cached_spec(k)); });

    // base < base[x]/(f)
    const std::pair<const char*, const char*> polys[] = {
        {"Z/2", "x^2"},       {"Z/2", "x^3"},   {"Z/2", "x^2+x+1"}, {"Z/2", "x^2+x"},
        {"Z/3", "x^2"},       {"Z/3", "x^2+1"}, {"Z/3", "x^2+x"},   {"Z/4", "x^2"},
        {"Z/4", "x^2+x+1"},   {"Z/5", "x^2"},   {"Z/5", "x^2+2"},   {"GF(4)", "y^2"},
        {"GF(4)", "y^2+y+x"}, {"Z/8", "x^2"},   {"Z/6", "x^2"},     {"Z/9", "x^2+1"}};
    for (auto [base, f] : polys) {
        std::string lbl = std::string("poly-incl(") + base + ", " + f + ")";
        std::string b = base, ff = f;
        add(lbl, [b, ff] {
            RingPtr base_ring = corpus_detail::cached_spec(b);
            auto pq = make_poly_quotient(base_ring, parse_detail::parse_monic(*base_ring, ff));
            return make_extension(pq.inclusion);
        });
    }

    // idealization-built minimal ramified extensions R(+)I < R(+)J, I covered by J
    for (const std::string rs : {"Z/4", "Z/9", "Z/8", "Z/6", "Z/12", "GF(4)", "Z/25",
                                  "poly(Z/2, x^2)", "Z/18", "Z/16", "GF(3)", "GF(5)"}) {
        RingPtr R = corpus_detail::cached_spec(rs);
        auto L = lattice_of(*R);
        int taken = 0;
        for (auto [i, j] : L->cover_pairs) {
            if (j == static_cast<int>(L->ideals.size()) - 1) continue;
            if (R->size() * L->ideals[j].count() > opt.max_ext_ambient) continue;
            if (taken++ >= 6) break;
            Ideal I = L->ideals[i], J = L->ideals[j];
            add("idealization-min(" + rs + ", " + ideal_to_string(*R, I) + " < " +
                    ideal_to_string(*R, J) + ")",
                [R, I, J] { return idealization_minimal(R, I, J); });
        }
    }

    // retract-style inclusions R < R(+)E
    for (const std::string rs : {"Z/4", "GF(2)", "GF(3)", "Z/6", "Z/9"}) {
        RingPtr R = corpus_detail::cached_spec(rs);
        auto L = lattice_of(*R);
        for (std::size_t ii = 1; ii < L->ideals.size(); ++ii) {
            const Ideal E = L->ideals[ii];
            if (R->size() * E.count() > opt.max_ext_ambient) continue;
            add("retract(" + rs + ", E=" + ideal_to_string(*R, E) + ")", [R, E] {
                auto idz = make_idealization(R, E.members);
                return make_extension(idz.inclusion);
            });
        }
    }

    // Example 4.22 coordinate subrings k[x] < T and k[y] < T
    for (const std::string k : {"GF(2)", "GF(3)"}) {
        std::string amb = "mvq(" + k + ", x^2, y^2, xy)";
        sub_of(amb, "x");
        sub_of(amb, "y");
    }

    // F_p + (x^2) inside F_p[x]/(x^3)
    sub_of("poly(Z/2, x^3)", "x^2");
    sub_of("poly(Z/3, x^3)", "x^2");

    // minimal extensions recovered from quasi-maximal ideals (Thm 4.15)
    for (const std::string rs :
         {"GF(16)", "GF(64)", "Z/4 x Z/4", "Z/9 x Z/3", "GF(4) x GF(4)", "Z/8 x Z/2",
          "poly(Z/2, x^3)", "poly(Z/3, x^3)", "Z/16", "Z/27", "poly(GF(4), y^2)",
          "Z/25 x Z/5", "Z/6 x Z/6", "GF(8) x GF(8)", "Z/49"}) {
        RingPtr S = corpus_detail::cached_spec(rs);
        if (S->size() > opt.max_ext_ambient) continue;
        auto L = lattice_of(*S);
        int taken = 0;
        for (int i = 0; i < L->proper_count() && taken < 4; ++i) {
            const Ideal I = L->ideals[i];
            if (!classify_qmax_by_type(*S, I, *L).is_qmax()) continue;
            BuildResult br = build_minimal_from_qmax(S, I);
            if (!br.ext) continue;
            ++taken;
            add("built(" + rs + ", " + ideal_to_string(*S, I) + ")", [S, I] {
                BuildResult b = build_minimal_from_qmax(S, I);
                require(b.ext.has_value(), "thm4.15 build became infeasible");
                return std::move(*b.ext);
            });
        }
    }

    // product-padded copies of small minimal extensions
    {
        auto pad = [&](const std::string& base_label, std::function<Extension()> mk,
                       const std::string& t) {
            add("pad(" + base_label + ", " + t + ")", [mk, t] {
                return corpus_detail::pad_extension(mk(), corpus_detail::cached_spec(t));
            });
        };
        pad("diag(GF(2))",
            [] { return corpus_detail::diagonal_extension(corpus_detail::cached_spec("GF(2)")); },
            "GF(3)");
        pad("diag(GF(2))",
            [] { return corpus_detail::diagonal_extension(corpus_detail::cached_spec("GF(2)")); },
            "Z/4");
        pad("ext(GF(2),GF(4))",
            [] {
                auto emb = find_embedding(corpus_detail::cached_spec("GF(2)"),
                                          corpus_detail::cached_spec("GF(4)"));
                return make_extension(std::move(*emb));
            },
            "GF(3)");
        pad("poly-incl(Z/2,x^2)",
            [] {
                RingPtr b = corpus_detail::cached_spec("Z/2");
                return make_extension(make_poly_quotient(b, {0, 0, 1}).inclusion);
            },
            "GF(3)");
        pad("poly-incl(Z/2,x^2)",
            [] {
                RingPtr b = corpus_detail::cached_spec("Z/2");
                return make_extension(make_poly_quotient(b, {0, 0, 1}).inclusion);
            },
            "Z/4");
    }

    return out;
}

// The Prop 4.13 instance family: minimal ramified R' < S' with I = (0)
// ramified and shared, S' either the idealization model or a type-(**)
// ring.
inline std::vector<ExtensionItem> prop_4_13_corpus() {
    std::vector<ExtensionItem> out;
    for (const std::string rs :
         {"poly(Z/2, x^2)", "poly(Z/3, x^2)", "poly(Z/5, x^2)", "poly(GF(4), y^2)", "Z/4",
          "Z/9", "Z/25"}) {
        RingPtr R = corpus_detail::cached_spec(rs);
        auto L = lattice_of(*R);
        auto sp = is_spir(*R, *L);
        require(sp.has_value() && sp->nilpotency_index == 2, "prop4.13 corpus: want SPIR index 2");
        Ideal M = principal_ideal(*R, sp->generator);
        out.push_back({"p413-star(" + rs + ")", [R, M] {
                           return corpus_detail::idealization_mod_extension(R, M);
                       }});
        Elem t = sp->generator;
        int added = 0;
        for (Elem u = 0; u < R->size() && added < 2; ++u) {
            if (!R->is_unit(u)) continue;
            ++added;
            out.push_back({"p413-type2(" + rs + ", u=" + R->name(u) + ")",
                           [R, t, u] { return corpus_detail::spir_type2_extension(R, t, u); }});
        }
    }
    return out;
}

// surjections and inclusions for the Lambda morphism checks
inline std::vector<MapItem> map_corpus(const CorpusOptions& opt = {}) {
    std::vector<MapItem> out;
    for (const std::string rs :
         {"Z/8", "Z/12", "Z/16", "Z/24", "Z/30", "Z/36", "Z/4 x Z/3", "GF(2) x GF(2)",
          "Z/4 x Z/4", "Z/9", "Z/27", "poly(Z/2, x^3)", "Z/60", "Z/48",
          "mvq(GF(2), x^2, y^2, xy)"}) {
        RingPtr R = corpus_detail::cached_spec(rs);
        auto L = lattice_of(*R);
        for (int i = 0; i < L->proper_count(); ++i) {
            Ideal I = L->ideals[i];
            out.push_back({"surj(" + rs + " -> mod " + ideal_to_string(*R, I) + ")", true,
                           [R, I] { return quotient_ring(R, I.members).surjection; }});
        }
    }
    auto exts = extension_corpus(opt);
    for (auto& e : exts) {
        auto b = e.build;
        out.push_back({"incl(" + e.label + ")", false, [b] { return b().incl; }});
    }
    return out;
}

}  // namespace qmax
