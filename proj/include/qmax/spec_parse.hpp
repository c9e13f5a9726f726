#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "qmax/extensions.hpp"
#include "qmax/ring.hpp"

namespace qmax {

// Ring-spec grammar accepted by the CLI and the test corpus:
//   Z/<n> | GF(<q>) | GF(<p>^<k>) | <ring> x <ring>
//   | poly(<ring>, <monic poly>) | mvq(<ring>, <relations>)
//   | idealize(<ring>, <ideal-gens>) | sub(<ring>, <elems>)
//   | quot(<ring>, <ideal-gens>)
// Polynomials either as surface syntax (x^2+x+1) or an integer coefficient
// list low-to-high ([1,1,1]).
//
// Element expressions: an integer k (meaning k*1), a raw index #k, an exact
// element label, or an arithmetic expression in the ring's named generators.

struct ParseError : invalid_parameter {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : invalid_parameter(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

namespace parse_detail {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", i);
    }
    bool eat_word(const std::string& w) {
        skip_ws();
        if (s.compare(i, w.size(), w) == 0) {
            i += w.size();
            return true;
        }
        return false;
    }
    long read_int() {
        skip_ws();
        std::size_t start = i;
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = s[i] == '-';
            ++i;
        }
        long v = 0;
        bool any = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            ++i;
            any = true;
        }
        if (!any) throw ParseError("expected an integer", start);
        return neg ? -v : v;
    }
    // everything up to the matching ')' at depth 0, commas included
    std::string read_to_close() { return read_arg(')', ')'); }

    // argument text up to the matching delimiter at depth 0
    std::string read_arg(char stop1 = ',', char stop2 = ')') {
        skip_ws();
        int depth = 0;
        std::size_t start = i;
        while (i < s.size()) {
            char c = s[i];
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') {
                if (depth == 0 && c == stop2) break;
                --depth;
            }
            if (depth == 0 && (c == stop1)) break;
            ++i;
        }
        std::string out = s.substr(start, i - start);
        while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
        return out;
    }
};

// polynomial value over a base ring during expression evaluation
struct PolyVal {
    std::vector<Elem> c;  // low-to-high; empty = 0
};

struct PolyCtx {
    const Ring& base;
    std::string var;  // the indeterminate; may be empty for pure elements

    PolyVal constant(Elem e) const {
        if (e == base.zero()) return {};
        return {{e}};
    }
    PolyVal add(PolyVal a, const PolyVal& b) const {
        if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), base.zero());
        for (std::size_t k = 0; k < b.c.size(); ++k) a.c[k] = base.add(a.c[k], b.c[k]);
        trim(a);
        return a;
    }
    PolyVal neg(PolyVal a) const {
        for (auto& x : a.c) x = base.neg(x);
        return a;
    }
    PolyVal mul(const PolyVal& a, const PolyVal& b) const {
        if (a.c.empty() || b.c.empty()) return {};
        PolyVal r;
        r.c.assign(a.c.size() + b.c.size() - 1, base.zero());
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = base.add(r.c[i + j], base.mul(a.c[i], b.c[j]));
        trim(r);
        return r;
    }
    PolyVal pow(PolyVal a, long e) const {
        PolyVal r = constant(base.one());
        for (; e > 0; --e) r = mul(r, a);
        return r;
    }
    void trim(PolyVal& a) const {
        while (!a.c.empty() && a.c.back() == base.zero()) a.c.pop_back();
    }
};

// expr := term (('+'|'-') term)* ; term := pow (['*'] pow)* ;
// pow := atom ['^' int] ; atom := int | ident | '(' expr ')'
inline PolyVal parse_poly_expr(Cursor& cur, const PolyCtx& ctx,
                               const std::map<std::string, Elem>& gens);

inline PolyVal parse_poly_atom(Cursor& cur, const PolyCtx& ctx,
                               const std::map<std::string, Elem>& gens) {
    cur.skip_ws();
    if (cur.peek() == '(') {
        cur.expect('(');
        PolyVal v = parse_poly_expr(cur, ctx, gens);
        cur.expect(')');
        return v;
    }
    char c = cur.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
        long k = cur.read_int();
        return ctx.constant(ctx.base.from_int(k));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t start = cur.i;
        std::string name;
        while (cur.i < cur.s.size() && std::isalnum(static_cast<unsigned char>(cur.s[cur.i])))
            name += cur.s[cur.i++];
        if (!ctx.var.empty() && name == ctx.var) return PolyVal{{ctx.base.zero(), ctx.base.one()}};
        auto it = gens.find(name);
        if (it != gens.end()) return ctx.constant(it->second);
        throw ParseError("unknown name '" + name + "'", start);
    }
    throw ParseError("expected a polynomial atom", cur.i);
}

inline PolyVal parse_poly_pow(Cursor& cur, const PolyCtx& ctx,
                              const std::map<std::string, Elem>& gens) {
    PolyVal v = parse_poly_atom(cur, ctx, gens);
    if (cur.eat('^')) {
        long e = cur.read_int();
        if (e < 0) throw ParseError("negative exponent", cur.i);
        v = ctx.pow(v, e);
    }
    return v;
}

inline PolyVal parse_poly_term(Cursor& cur, const PolyCtx& ctx,
                               const std::map<std::string, Elem>& gens) {
    PolyVal v = parse_poly_pow(cur, ctx, gens);
    for (;;) {
        cur.skip_ws();
        char c = cur.peek();
        if (c == '*') {
            cur.expect('*');
            v = ctx.mul(v, parse_poly_pow(cur, ctx, gens));
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
            v = ctx.mul(v, parse_poly_pow(cur, ctx, gens));  // juxtaposition
        } else {
            return v;
        }
    }
}

inline PolyVal parse_poly_expr(Cursor& cur, const PolyCtx& ctx,
                               const std::map<std::string, Elem>& gens) {
    PolyVal v;
    bool neg = cur.eat('-');
    v = parse_poly_term(cur, ctx, gens);
    if (neg) v = ctx.neg(v);
    for (;;) {
        if (cur.eat('+'))
            v = ctx.add(v, parse_poly_term(cur, ctx, gens));
        else if (cur.eat('-'))
            v = ctx.add(v, ctx.neg(parse_poly_term(cur, ctx, gens)));
        else
            return v;
    }
}

}  // namespace parse_detail

inline RingPtr parse_ring_spec(const std::string& text, const Limits& lim = Limits::global());
inline RingPtr make_multivariate_quotient_text(const RingPtr& base,
                                               const std::vector<std::string>& relations,
                                               const Limits& lim = Limits::global());

// Evaluate one element expression in R.
inline Elem parse_element(const Ring& R, const std::string& text) {
    std::string t = text;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    if (t.empty()) throw invalid_parameter("empty element expression");
    if (t[0] == '#') {
        long idx = std::stol(t.substr(1));
        if (idx < 0 || idx >= R.size()) throw invalid_parameter("element index out of range: " + t);
        return static_cast<Elem>(idx);
    }
    for (Elem a = 0; a < R.size(); ++a)
        if (R.name(a) == t) return a;
    // arithmetic in the named generators
    std::map<std::string, Elem> gens;
    for (auto& [nm, e] : R.named_gens()) gens[nm] = e;
    parse_detail::Cursor cur{t, 0};
    parse_detail::PolyCtx ctx{R, ""};
    parse_detail::PolyVal v = parse_detail::parse_poly_expr(cur, ctx, gens);
    if (!cur.eof()) throw ParseError("trailing input in element expression", cur.i);
    if (v.c.size() > 1) throw invalid_parameter("expression is not an element: " + t);
    return v.c.empty() ? R.zero() : v.c[0];
}

inline std::vector<Elem> parse_elements(const Ring& R, const std::string& csv) {
    std::vector<Elem> out;
    if (csv.empty()) return out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= csv.size(); ++i) {
        if (i < csv.size() && (csv[i] == '(' || csv[i] == '[')) ++depth;
        if (i < csv.size() && (csv[i] == ')' || csv[i] == ']')) --depth;
        if (i == csv.size() || (csv[i] == ',' && depth == 0)) {
            std::string tok = csv.substr(start, i - start);
            bool blank = true;
            for (char c : tok) blank &= std::isspace(static_cast<unsigned char>(c)) != 0;
            if (!blank) out.push_back(parse_element(R, tok));
            start = i + 1;
        }
    }
    return out;
}

inline Ideal parse_ideal(const Ring& R, const std::string& gens_csv) {
    return ideal_generated_by(R, parse_elements(R, gens_csv));
}

namespace parse_detail {

// monic polynomial over the base ring: [c0,c1,...] or an expression in one
// indeterminate (any new single letter)
inline std::vector<Elem> parse_monic(const Ring& base, const std::string& text) {
    Cursor cur{text, 0};
    cur.skip_ws();
    std::vector<Elem> coeffs;
    if (cur.peek() == '[') {
        cur.expect('[');
        for (;;) {
            coeffs.push_back(base.from_int(cur.read_int()));
            if (!cur.eat(',')) break;
        }
        cur.expect(']');
    } else {
        // find the indeterminate: first letter that is not a base generator
        std::map<std::string, Elem> gens;
        for (auto& [nm, e] : base.named_gens()) gens[nm] = e;
        std::string var;
        for (std::size_t i = 0; i < text.size(); ++i)
            if (std::isalpha(static_cast<unsigned char>(text[i]))) {
                std::string nm(1, text[i]);
                if (!gens.count(nm)) {
                    var = nm;
                    break;
                }
            }
        if (var.empty()) throw invalid_parameter("polynomial has no indeterminate: " + text);
        PolyCtx ctx{base, var};
        PolyVal v = parse_poly_expr(cur, ctx, gens);
        if (!cur.eof()) throw ParseError("trailing input in polynomial", cur.i);
        coeffs = v.c;
    }
    if (coeffs.size() < 2) throw invalid_parameter("polynomial must have degree >= 1");
    if (coeffs.back() != base.one()) throw invalid_parameter("polynomial is not monic");
    return coeffs;
}

inline RingPtr parse_term(Cursor& cur, const Limits& lim);

inline RingPtr parse_ring(Cursor& cur, const Limits& lim) {
    std::vector<RingPtr> factors{parse_term(cur, lim)};
    for (;;) {
        cur.skip_ws();
        // product separator: a standalone 'x'
        if (cur.i < cur.s.size() && cur.s[cur.i] == 'x' &&
            (cur.i + 1 == cur.s.size() ||
             !std::isalnum(static_cast<unsigned char>(cur.s[cur.i + 1])))) {
            ++cur.i;
            factors.push_back(parse_term(cur, lim));
        } else {
            break;
        }
    }
    if (factors.size() == 1) return factors[0];
    return make_product(factors, lim).ring;
}

inline RingPtr parse_term(Cursor& cur, const Limits& lim) {
    cur.skip_ws();
    if (cur.eat('(')) {
        RingPtr r = parse_ring(cur, lim);
        cur.expect(')');
        return r;
    }
    if (cur.eat_word("Z/")) return make_zmod(cur.read_int(), lim);
    if (cur.eat_word("GF(")) {
        long q = cur.read_int();
        int k = 1;
        if (cur.eat('^')) {
            k = static_cast<int>(cur.read_int());
            cur.expect(')');
            return make_gf(q, k, lim);
        }
        cur.expect(')');
        // GF(q) with q a prime power
        long base = 0;
        for (long d = 2; d <= q; ++d)
            if (q % d == 0) {
                base = d;
                break;
            }
        k = 0;
        long acc = 1;
        while (acc < q) {
            acc *= base;
            ++k;
        }
        if (acc != q) throw invalid_parameter("GF(q): q must be a prime power");
        return make_gf(base, k, lim);
    }
    if (cur.eat_word("poly(")) {
        RingPtr base = parse_ring(cur, lim);
        cur.expect(',');
        std::string ptxt = cur.read_arg();
        cur.expect(')');
        return make_poly_quotient(base, parse_monic(*base, ptxt), lim).ring;
    }
    if (cur.eat_word("mvq(")) {
        RingPtr base = parse_ring(cur, lim);
        cur.expect(',');
        std::vector<std::string> rels;
        for (;;) {
            rels.push_back(cur.read_arg());
            if (!cur.eat(',')) break;
        }
        cur.expect(')');
        return make_multivariate_quotient_text(base, rels, lim);
    }
    if (cur.eat_word("idealize(")) {
        RingPtr base = parse_ring(cur, lim);
        cur.expect(',');
        std::string gens = cur.read_to_close();
        cur.expect(')');
        Ideal E = parse_ideal(*base, gens);
        return make_idealization(base, E.members, lim).ring;
    }
    if (cur.eat_word("sub(")) {
        RingPtr base = parse_ring(cur, lim);
        cur.expect(',');
        std::string elems = cur.read_to_close();
        cur.expect(')');
        return subring_generated(base, parse_elements(*base, elems)).incl.source;
    }
    if (cur.eat_word("quot(")) {
        RingPtr base = parse_ring(cur, lim);
        cur.expect(',');
        std::string gens = cur.read_to_close();
        cur.expect(')');
        Ideal I = parse_ideal(*base, gens);
        if (!is_proper(*base, I)) throw invalid_parameter("quot: ideal must be proper");
        return quotient_ring(base, I.members).ring;
    }
    throw ParseError("expected a ring spec", cur.i);
}

}  // namespace parse_detail

// mvq from relation texts: monomials set to zero. Every variable needs a
// pure power among the relations (finiteness); built by iterated monic
// quotients, then a final quotient by the cross monomials.
inline RingPtr make_multivariate_quotient_text(const RingPtr& base,
                                               const std::vector<std::string>& relations,
                                               const Limits& lim) {
    // parse each relation as a monomial: product of var^exp
    struct Mono {
        std::map<std::string, int> exps;
    };
    std::vector<Mono> monos;
    std::map<std::string, int> pure_power;  // var -> exponent
    for (const std::string& rel : relations) {
        Mono m;
        parse_detail::Cursor cur{rel, 0};
        while (!cur.eof()) {
            char c = cur.peek();
            if (c == '*') {
                cur.expect('*');
                continue;
            }
            if (!std::isalpha(static_cast<unsigned char>(c)))
                throw ParseError("mvq relation must be a monomial in the variables", cur.i);
            std::string var(1, cur.s[cur.i++]);
            for (auto& [nm, e] : base->named_gens())
                if (nm == var)
                    throw invalid_parameter("mvq variable collides with base generator " + nm);
            int e = 1;
            if (cur.eat('^')) e = static_cast<int>(cur.read_int());
            m.exps[var] += e;
        }
        if (m.exps.empty()) throw invalid_parameter("empty mvq relation");
        if (m.exps.size() == 1) {
            auto [v, e] = *m.exps.begin();
            auto it = pure_power.find(v);
            if (it == pure_power.end() || e < it->second) pure_power[v] = e;
        }
        monos.push_back(std::move(m));
    }
    std::map<std::string, int> vars;  // all variables
    for (auto& m : monos)
        for (auto& [v, e] : m.exps) vars[v] = 1;
    for (auto& [v, one] : vars)
        if (!pure_power.count(v))
            throw resource_limit("mvq: variable " + v + " has no pure power relation (not finite)");

    std::string label = "mvq(" + base->label();
    for (const std::string& rel : relations) label += ", " + rel;
    label += ")";

    RingPtr T = base;
    for (auto& [v, e] : pure_power) {
        std::vector<Elem> monic(e + 1, T->zero());
        monic[e] = T->one();
        T = make_poly_quotient(T, monic, lim, v).ring;
    }
    // cross monomials generate the remaining ideal
    std::vector<Elem> gens;
    std::map<std::string, Elem> gen_map;
    for (auto& [nm, e] : T->named_gens()) gen_map[nm] = e;
    for (auto& m : monos) {
        if (m.exps.size() == 1) continue;
        Elem val = T->one();
        for (auto& [v, e] : m.exps)
            for (int k = 0; k < e; ++k) val = T->mul(val, gen_map.at(v));
        gens.push_back(val);
    }
    if (gens.empty()) return T;
    Ideal I = ideal_generated_by(*T, gens);
    if (!is_proper(*T, I)) throw invalid_parameter("mvq relations collapse the ring");
    return quotient_ring(T, I.members, std::move(label)).ring;
}

inline RingPtr parse_ring_spec(const std::string& text, const Limits& lim) {
    parse_detail::Cursor cur{text, 0};
    RingPtr r = parse_detail::parse_ring(cur, lim);
    if (!cur.eof()) throw ParseError("trailing input in ring spec", cur.i);
    return r;
}

// ext(<subring spec>, <ambient spec>): canonical inclusion for sub(...) of
// the same ambient; otherwise an embedding search.
inline Extension parse_extension_spec(const std::string& text,
                                      const Limits& lim = Limits::global()) {
    parse_detail::Cursor cur{text, 0};
    if (!cur.eat_word("ext(")) throw ParseError("expected ext(<subring>, <ambient>)", cur.i);
    std::string sub_txt = cur.read_arg();
    cur.expect(',');
    std::string amb_txt = cur.read_arg();
    cur.expect(')');
    if (!cur.eof()) throw ParseError("trailing input in extension spec", cur.i);

    RingPtr ambient = parse_ring_spec(amb_txt, lim);
    // fast path: sub(<same ambient>, elems)
    parse_detail::Cursor sc{sub_txt, 0};
    if (sc.eat_word("sub(")) {
        std::string inner = sc.read_arg();
        sc.expect(',');
        std::string elems = sc.read_to_close();
        sc.expect(')');
        auto strip = [](std::string t) {
            t.erase(std::remove_if(t.begin(), t.end(),
                                   [](unsigned char c) { return std::isspace(c) != 0; }),
                    t.end());
            return t;
        };
        std::string a = strip(inner), b = strip(amb_txt);
        if (sc.eof() && a == b)
            return subring_generated(ambient, parse_elements(*ambient, elems));
    }
    RingPtr sub = parse_ring_spec(sub_txt, lim);
    auto emb = find_embedding(sub, ambient);
    if (!emb) throw invalid_parameter("no embedding of " + sub->label() + " into " +
                                      ambient->label());
    return make_extension(std::move(*emb));
}

}  // namespace qmax
