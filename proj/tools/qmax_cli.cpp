// qmax: exact computation over finite commutative unital rings.
//
// Subcommands: analyze | classify | verify | construct | lattice | z-ideal.
// Reports are deterministic for fixed (spec, seed, caps); wall time is
// printed in human output and included in JSON only under --timing.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmax/corpus.hpp"
#include "qmax/transfer.hpp"
#include "qmax/spec_parse.hpp"
#include "qmax/verify.hpp"
#include "qmax/z_dedekind.hpp"

using json = nlohmann::ordered_json;
using namespace qmax;

namespace {

struct GlobalFlags {
    bool json_out = false;
    bool timing = false;
    std::uint64_t seed = 0;
    int max_size = 0;    // 0 = default
    int max_ideals = 0;  // 0 = default
    long timeout_ms = 0; // 0 = none
};

std::chrono::steady_clock::time_point g_start;

double elapsed_ms() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - g_start)
        .count();
}

void check_timeout(const GlobalFlags& g) {
    if (g.timeout_ms > 0 && elapsed_ms() > static_cast<double>(g.timeout_ms))
        throw resource_limit("timeout exceeded");
}

json base_report(const GlobalFlags& g, const std::string& command_echo) {
    json r;
    r["command"] = command_echo;
    r["seed"] = g.seed;
    json caps;
    caps["max_ring_size"] = Limits::global().max_ring_size;
    caps["max_ideals"] = Limits::global().max_ideals;
    caps["max_intermediate_ring_size"] = Limits::global().max_intermediate_ring_size;
    r["caps"] = caps;
    return r;
}

void finish_report(const GlobalFlags& g, json& r) {
    if (g.timing) r["wall_ms"] = static_cast<long>(elapsed_ms());
    if (g.json_out) std::cout << r.dump(2) << "\n";
}

json ideal_json(const Ideal& I) {
    json a = json::array();
    I.members.for_each([&](Elem e) { a.push_back(e); });
    return a;
}

json qclass_json(const Ring& R, const QMaxClass& c) {
    json w;
    w["class"] = qclass_name(c.tag);
    json wit;
    if (c.m1) wit["m1"] = ideal_json(*c.m1);
    if (c.m2) wit["m2"] = ideal_json(*c.m2);
    if (c.violator) {
        wit["violating_element"] = *c.violator;
        wit["violating_element_name"] = R.name(*c.violator);
    }
    w["witnesses"] = wit;
    return w;
}

int cmd_classify(const GlobalFlags& g, const std::string& spec, const std::string& gens) {
    RingPtr R = parse_ring_spec(spec);
    Ideal I = parse_ideal(*R, gens);
    if (!is_proper(*R, I)) throw invalid_parameter("classify: ideal is the whole ring");
    auto L = lattice_of(*R);

    QMaxClass c = classify_qmax(*R, I, *L);
    TwoAbsorbing ta = is_two_absorbing(*R, I);
    LambdaSet lam = lambda_set(*R, I);
    Theorem23Report t23 = theorem_2_3_report(R, I, *L);

    json r = base_report(g, "classify " + spec + " --ideal " + gens);
    r["ring"] = R->label();
    r["ring_size"] = R->size();
    r["ideal"] = ideal_json(I);
    r.update(qclass_json(*R, c));
    r["quasi_maximal"] = c.is_qmax();
    r["two_absorbing"] = ta.ok;
    if (ta.triple) r["violating_triple"] = {(*ta.triple)[0], (*ta.triple)[1], (*ta.triple)[2]};
    if (I.count() == 1) r["nonstandard_zero_ideal"] = true;
    if (ta.ok) {
        AbsorbStructure st = badawi_structure(*R, I, *L);
        r["structure"] = st.case_a ? "a" : "b";
    }
    r["primal"] = is_primal(*R, I);
    r["semi_primal"] = is_semi_primal(*R, I, *L);
    json lj = json::array();
    lam.members.for_each([&](Elem e) { lj.push_back(e); });
    r["lambda"] = lj;
    r["o_count"] = t23.o_count;
    r["theorem_2_3_agrees"] = t23.all_agree();

    if (!g.json_out) {
        std::printf("ring %s (%d elements)\n", R->label().c_str(), R->size());
        std::printf("ideal %s (%d elements)\n", ideal_to_string(*R, I).c_str(), I.count());
        std::printf("class: %s%s\n", qclass_name(c.tag),
                    c.is_qmax() ? " (quasi-maximal)" : "");
        if (c.tag == QClass::Decomposed)
            std::printf("  = %s /\\ %s\n", ideal_to_string(*R, *c.m1).c_str(),
                        ideal_to_string(*R, *c.m2).c_str());
        if (c.tag == QClass::Ramified)
            std::printf("  M = %s, M^2 <= I < M\n", ideal_to_string(*R, *c.m1).c_str());
        if (c.violator)
            std::printf("  witness a = %s: I + Ra is neither R nor maximal\n",
                        R->name(*c.violator).c_str());
        std::printf("2-absorbing: %s", ta.ok ? "yes" : "no");
        if (ta.triple)
            std::printf("  (violating triple %s, %s, %s)", R->name((*ta.triple)[0]).c_str(),
                        R->name((*ta.triple)[1]).c_str(), R->name((*ta.triple)[2]).c_str());
        std::printf("\n");
        std::printf("primal: %s   semi-primal: %s\n", r["primal"].get<bool>() ? "yes" : "no",
                    r["semi_primal"].get<bool>() ? "yes" : "no");
        std::printf("|Lambda(I)| = %d   o(I) = %d\n", lam.members.count(), t23.o_count);
        std::printf("theorem 2.3 conditions agree: %s\n",
                    t23.all_agree() ? "yes" : "NO (inconsistency!)");
        std::printf("wall: %.1f ms\n", elapsed_ms());
    }
    finish_report(g, r);
    return t23.all_agree() ? 0 : 1;
}

// analyze for an extension spec: conductor/support data, minimal typing and
// the per-instance transfer-suite report
int cmd_analyze_extension(const GlobalFlags& g, const std::string& spec) {
    Extension E = parse_extension_spec(spec);
    json r = base_report(g, "analyze " + spec);
    r["subring"] = E.R().label();
    r["subring_size"] = E.R().size();
    r["ambient"] = E.S().label();
    r["ambient_size"] = E.S().size();
    r["conductor"] = ideal_json(E.conductor);
    json supp = json::array();
    for (const Ideal& M : E.support) supp.push_back(ideal_json(M));
    r["support"] = supp;
    r["integral"] = true;  // finite extensions are integral
    ResidualData rd = residual_data(E);
    r["i_extension"] = rd.i_extension;
    r["infra_integral"] = rd.infra_integral;
    r["subintegral"] = rd.subintegral;
    MinimalType mt = E.image.count() == E.S().size() ? MinimalType{} : classify_minimal(E);
    r["minimal_type"] = minimal_tag_name(mt.tag);
    if (mt.tag != MinimalTag::NotMinimal) r["thm_4_1"] = thm_4_1_check(E, mt);

    json insts = json::array();
    long pass = 0, fail = 0, hyp = 0;
    for (const PropInstance& pi : transfer_suite(E)) {
        json e;
        e["prop"] = pi.prop;
        e["instance"] = pi.instance;
        e["status"] = status_name(pi.status);
        e["witness"] = pi.detail;
        insts.push_back(e);
        if (pi.status == CheckStatus::Pass) ++pass;
        if (pi.status == CheckStatus::Fail) ++fail;
        if (pi.status == CheckStatus::HypothesisNotMet) ++hyp;
    }
    r["transfer_suite"] = insts;

    if (!g.json_out) {
        std::printf("%s inside %s\n", E.R().label().c_str(), E.S().label().c_str());
        std::printf("conductor %s, |Supp(S/R)| = %zu\n",
                    ideal_to_string(E.S(), E.conductor).c_str(), E.support.size());
        std::printf("i-extension: %s  infra-integral: %s  subintegral: %s\n",
                    rd.i_extension ? "yes" : "no", rd.infra_integral ? "yes" : "no",
                    rd.subintegral ? "yes" : "no");
        std::printf("minimal: %s\n", minimal_tag_name(mt.tag));
        std::printf("transfer suite: %ld pass, %ld fail, %ld hypothesis-not-met\n", pass, fail,
                    hyp);
        std::printf("wall: %.1f ms\n", elapsed_ms());
    }
    finish_report(g, r);
    return fail == 0 ? 0 : 1;
}

int cmd_analyze(const GlobalFlags& g, const std::string& spec) {
    std::string t = spec;
    t.erase(0, t.find_first_not_of(" \t"));
    if (t.rfind("ext(", 0) == 0) return cmd_analyze_extension(g, spec);
    RingPtr R = parse_ring_spec(spec);
    auto L = lattice_of(*R);
    json r = base_report(g, "analyze " + spec);
    r["ring"] = R->label();
    r["size"] = R->size();
    r["characteristic"] = R->characteristic();
    r["is_field"] = R->is_field();
    r["units"] = R->units().count();
    r["ideal_count"] = static_cast<long>(L->ideals.size());
    r["proper_ideals"] = L->proper_count();
    r["maximal_ideals"] = static_cast<long>(L->maximal_ideals.size());
    r["prime_ideals"] = static_cast<long>(L->prime_ideals.size());
    r["jacobson"] = ideal_json(L->jacobson);
    r["nilradical"] = ideal_json(L->nilradical);
    auto sp = is_spir(*R, *L);
    r["spir"] = sp.has_value();
    if (sp) {
        r["spir_generator"] = sp->generator;
        r["spir_index"] = sp->nilpotency_index;
    }
    r["kasch"] = is_kasch(*R, *L);
    auto lf = local_factors(R);
    json fs = json::array();
    for (auto& f : lf.factors) fs.push_back(f->size());
    r["local_factor_sizes"] = fs;
    json qm = json::array();
    for (auto& [I, c] : qmax_all(*R, *L)) {
        json e;
        e["ideal"] = ideal_json(I);
        e["class"] = qclass_name(c.tag);
        qm.push_back(e);
    }
    r["classification"] = qm;

    if (!g.json_out) {
        std::printf("%s: %d elements, char %ld%s\n", R->label().c_str(), R->size(),
                    R->characteristic(), R->is_field() ? ", field" : "");
        std::printf("ideals: %zu (%d proper), maximal: %zu, prime: %zu\n", L->ideals.size(),
                    L->proper_count(), L->maximal_ideals.size(), L->prime_ideals.size());
        std::printf("local factors:");
        for (auto& f : lf.factors) std::printf(" %d", f->size());
        std::printf("\nSPIR: %s   Kasch: %s\n", sp ? "yes" : "no",
                    r["kasch"].get<bool>() ? "yes" : "no");
        for (auto& [I, c] : qmax_all(*R, *L))
            std::printf("  %-30s %s\n", ideal_to_string(*R, I).c_str(), qclass_name(c.tag));
        std::printf("wall: %.1f ms\n", elapsed_ms());
    }
    finish_report(g, r);
    return 0;
}

int cmd_lattice(const GlobalFlags& g, const std::string& spec) {
    RingPtr R = parse_ring_spec(spec);
    auto L = lattice_of(*R);
    json r = base_report(g, "lattice " + spec);
    r["ring"] = R->label();
    json ids = json::array();
    for (const Ideal& I : L->ideals) ids.push_back(ideal_json(I));
    r["ideals"] = ids;
    json cov = json::array();
    for (auto [i, j] : L->cover_pairs) cov.push_back({i, j});
    r["cover_pairs"] = cov;
    json mx = json::array();
    for (int m : L->maximal_ideals) mx.push_back(m);
    r["maximal"] = mx;
    json pr = json::array();
    for (int p : L->prime_ideals) pr.push_back(p);
    r["prime"] = pr;

    if (!g.json_out) {
        std::printf("%s: %zu ideals\n", R->label().c_str(), L->ideals.size());
        for (std::size_t i = 0; i < L->ideals.size(); ++i)
            std::printf("  [%2zu] %s%s\n", i, ideal_to_string(*R, L->ideals[i]).c_str(),
                        L->is_maximal_index(static_cast<int>(i)) ? "  (maximal)" : "");
        std::printf("cover pairs:");
        for (auto [i, j] : L->cover_pairs) std::printf(" %zu<%zu", (std::size_t)i, (std::size_t)j);
        std::printf("\nwall: %.1f ms\n", elapsed_ms());
    }
    finish_report(g, r);
    return 0;
}

int cmd_construct(const GlobalFlags& g, const std::string& spec, const std::string& gens) {
    RingPtr S = parse_ring_spec(spec);
    Ideal I = parse_ideal(*S, gens);
    if (!is_proper(*S, I)) throw invalid_parameter("construct: ideal is the whole ring");
    auto L = lattice_of(*S);
    QMaxClass c = classify_qmax(*S, I, *L);
    if (!c.is_qmax())
        throw invalid_parameter("construct: the ideal is not quasi-maximal in " + S->label());

    BuildResult br = build_minimal_from_qmax(S, I);
    json r = base_report(g, "construct " + spec + " --ideal " + gens);
    r["ring"] = S->label();
    r["ideal"] = ideal_json(I);
    r["ideal_class"] = qclass_name(c.tag);
    if (br.ext) {
        MinimalType mt = classify_minimal(*br.ext);
        r["success"] = true;
        r["subring_size"] = br.ext->R().size();
        json mem = json::array();
        br.ext->image.for_each([&](Elem e) { mem.push_back(e); });
        r["subring_members"] = mem;
        r["minimal_type"] = minimal_tag_name(mt.tag);
        r["conductor"] = ideal_json(br.ext->conductor);
        if (!g.json_out) {
            std::printf("built subring of size %d inside %s\n", br.ext->R().size(),
                        S->label().c_str());
            std::printf("minimal type: %s, conductor %s\n", minimal_tag_name(mt.tag),
                        ideal_to_string(*S, br.ext->conductor).c_str());
            std::printf("members:");
            br.ext->image.for_each(
                [&](Elem e) { std::printf(" %s", S->name(e).c_str()); });
            std::printf("\nwall: %.1f ms\n", elapsed_ms());
        }
        finish_report(g, r);
        return 0;
    }
    r["success"] = false;
    r["failed_condition"] = br.failed_condition;
    if (!g.json_out)
        std::printf("no minimal extension with this conductor: %s\nwall: %.1f ms\n",
                    br.failed_condition.c_str(), elapsed_ms());
    finish_report(g, r);
    return 0;
}

int cmd_zideal(const GlobalFlags& g, long n) {
    ZClassification zc = classify_z_ideal(n);
    json r = base_report(g, "z-ideal " + std::to_string(n));
    r["n"] = n;
    json f = json::array();
    for (auto [p, e] : zc.ideal.factorization) f.push_back({p, e});
    r["factorization"] = f;
    r["class"] = qclass_name(zc.tag);
    r["two_absorbing"] = zc.two_absorbing;
    bool crosschecked = false, crosscheck_ok = true;
    if (n <= Limits::global().max_ring_size) {
        crosschecked = true;
        crosscheck_ok = z_crosscheck(n);
        r["crosscheck_zmod"] = crosscheck_ok;
    }
    if (!g.json_out) {
        std::printf("(%ld) in Z: %s, 2-absorbing: %s", n, qclass_name(zc.tag),
                    zc.two_absorbing ? "yes" : "no");
        if (crosschecked) std::printf(", Z/%ld crosscheck: %s", n, crosscheck_ok ? "ok" : "FAIL");
        std::printf("\nwall: %.1f ms\n", elapsed_ms());
    }
    finish_report(g, r);
    return crosscheck_ok ? 0 : 1;
}

int cmd_verify(const GlobalFlags& g, const std::string& suite, int max_size,
               const std::string& props) {
    CorpusOptions opt;
    opt.seed = g.seed;
    if (max_size > 0) {
        opt.max_ring_size = max_size;
        opt.max_ext_ambient = std::min(max_size, 64);
        opt.zmod_to = std::min(opt.zmod_to, max_size);
    }
    std::vector<std::string> names;
    if (suite == "all")
        names = suite_names();
    else
        names.push_back(suite);

    json r = base_report(g, "verify " + suite);
    r["max_size"] = max_size;
    if (!props.empty()) r["props"] = props;
    json out = json::array();
    bool any_fail = false;
    for (const std::string& name : names) {
        check_timeout(g);
        SuiteReport rep = run_suite(name, opt, name == "transfer" ? props : "");
        any_fail = any_fail || !rep.ok();
        json s;
        s["suite"] = rep.suite;
        s["instances"] = rep.instances;
        s["passed"] = rep.passed;
        s["failed"] = rep.failed;
        s["hypothesis_not_met"] = rep.hyp_not_met;
        json cs = json::object();
        for (auto& [k, v] : rep.counters) cs[k] = v;
        s["counters"] = cs;
        json fl = json::array();
        for (auto& f : rep.failures) fl.push_back(f);
        s["failures"] = fl;
        out.push_back(s);
        if (!g.json_out) {
            std::printf("[%s] %s  instances=%ld passed=%ld failed=%ld hypothesis-not-met=%ld\n",
                        rep.ok() ? "pass" : "FAIL", rep.suite.c_str(), rep.instances,
                        rep.passed, rep.failed, rep.hyp_not_met);
            for (auto& f : rep.failures) std::printf("    %s\n", f.c_str());
        }
        clear_lattice_cache();
    }
    r["suites"] = out;
    if (!g.json_out) std::printf("wall: %.1f ms\n", elapsed_ms());
    finish_report(g, r);
    return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    g_start = std::chrono::steady_clock::now();
    CLI::App app{"exact computation over finite commutative unital rings"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_flag("--json", g.json_out, "emit a JSON report on stdout");
    app.add_flag("--timing", g.timing, "include wall time in JSON output");
    app.add_option("--seed", g.seed, "corpus seed (recorded in reports)");
    app.add_option("--max-size", g.max_size, "ring size cap");
    app.add_option("--max-ideals", g.max_ideals, "ideal count cap per ring");
    app.add_option("--timeout-ms", g.timeout_ms, "soft wall-clock limit");

    std::string spec, gens = "0";
    long zn = 0;
    std::string suite = "all", props;
    int verify_max_size = 0;

    auto* classify = app.add_subcommand("classify", "classify an ideal of a ring");
    classify->add_option("spec", spec, "ring spec")->required();
    classify->add_option("--ideal", gens, "ideal generators (comma separated)");

    auto* analyze = app.add_subcommand("analyze", "summarize a ring");
    analyze->add_option("spec", spec, "ring spec")->required();

    auto* lattice = app.add_subcommand("lattice", "print the full ideal lattice");
    lattice->add_option("spec", spec, "ring spec")->required();

    auto* construct = app.add_subcommand("construct",
                                         "build R with (R:S) = I from a quasi-maximal I");
    construct->add_option("spec", spec, "ambient ring spec")->required();
    construct->add_option("--ideal", gens, "ideal generators");

    auto* zideal = app.add_subcommand("z-ideal", "classify the ideal (n) of Z");
    zideal->add_option("n", zn, "generator")->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "suite name or 'all'");
    verify->add_option("--max-size", verify_max_size, "corpus ring size cap");
    verify->add_option("--props", props, "restrict the transfer suite to matching props");

    CLI11_PARSE(app, argc, argv);

    try {
        if (g.max_size > 0) Limits::global().max_ring_size = g.max_size;
        if (g.max_ideals > 0) Limits::global().max_ideals = g.max_ideals;
        if (classify->parsed()) return cmd_classify(g, spec, gens);
        if (analyze->parsed()) return cmd_analyze(g, spec);
        if (lattice->parsed()) return cmd_lattice(g, spec);
        if (construct->parsed()) return cmd_construct(g, spec, gens);
        if (zideal->parsed()) return cmd_zideal(g, zn);
        if (verify->parsed()) return cmd_verify(g, suite, verify_max_size, props);
    } catch (const resource_limit& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return 3;
    } catch (const invalid_parameter& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 1;
    }
    return 2;
}
