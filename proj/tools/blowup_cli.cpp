#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "blowup/beilinson.hpp"
#include "blowup/chow.hpp"
#include "blowup/instanton.hpp"
#include "blowup/projcoh.hpp"
#include "blowup/report.hpp"
#include "blowup/sections.hpp"
#include "blowup/sheafdag.hpp"
#include "blowup/stability.hpp"

using nlohmann::json;
using namespace blowup;

namespace {

json interval_json(const DimInterval& v) {
    json j;
    if (v.has_hi) {
        j["value"] = {v.lo.get_str(), v.hi.get_str()};
        if (v.exact()) j["exact"] = true;
    } else {
        j["value"] = {v.lo.get_str(), nullptr};
    }
    return j;
}

json chow_json(const ChowClass& c) {
    json j;
    j["n"] = c.dim();
    j["one"] = c.coeff_one().get_str();
    j["xi"] = json::array();
    for (int k = 1; k <= c.dim(); ++k) j["xi"].push_back(c.coeff_xi(k).get_str());
    j["alpha"] = json::array();
    for (int l = 1; l <= c.dim() - 1; ++l)
        j["alpha"].push_back(c.coeff_alpha(l).get_str());
    j["display"] = c.str();
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

Build build_for(int n) { return n == 4 ? build_even4() : build_odd(n); }

HoppeRegion region_for(int n) {
    if (n == 4) {
        Polarization L = Polarization::custom(4, {1, 1});
        return HoppeRegion::make(L, Rat(-7, 2));
    }
    Polarization L = Polarization::standard(n);
    return HoppeRegion::make(L, Rat(-delta({0, 1}, L)));
}

std::vector<SubvarietySpec> parse_components(const std::string& spec, int n) {
    std::vector<SubvarietySpec> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "wp") out.push_back(SubvarietySpec::wp(n));
        else if (item == "kappa") out.push_back(SubvarietySpec::kappa(n));
        else if (item == "q1") out.push_back(SubvarietySpec::q1());
        else if (item == "q2") out.push_back(SubvarietySpec::q2());
        else throw CLI::ValidationError("unknown component: " + item);
    }
    if (out.empty()) throw CLI::ValidationError("no components given");
    return out;
}

// Solver over the defining sequences of a construction, with the standard
// twist box, middle-range facts, and duality links.
void prepare(CohomologySolver& sol, const Build& b) {
    std::vector<TwistPair> box;
    for (long p = -4; p <= 2; ++p)
        for (long q = -static_cast<long>(b.n) - 2; q <= 3; ++q)
            box.push_back({p, q});
    sol.instantiate_twists(box);
    for (long a = -3; a <= 3; ++a)
        for (long bq = -static_cast<long>(b.n) - 1; bq <= 4; ++bq)
            for (int i = 2; i <= b.n - 2; ++i)
                if (middle_bound(b, a, bq, i) == 0)
                    sol.add_fact(twist(b.E, {a, bq}), i,
                                 DimInterval::exact_val(0), "FORMULA");
    sol.add_duality_links();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations for rank-2 instanton sheaves on the blow-up of P^n at a point"};
    app.require_subcommand(1);
    bool strict = false;
    app.add_flag("--strict", strict, "nonzero exit on INCONCLUSIVE verdicts");

    int exit_code = 0;
    auto verdict_exit = [&](const std::string& v) {
        if (v == "FAIL" || v == "VIOLATION" || v == "NOT-INSTANTON") exit_code = 1;
        else if (strict && v != "PASS" && v != "INSTANTON" &&
                 v != "SEMISTABLE-CERTIFIED")
            exit_code = 1;
    };

    // chow ------------------------------------------------------------------
    auto* chow = app.add_subcommand("chow", "intersection ring of the blow-up");
    int cn = 5;
    long cp1 = 0, cq1 = 0, cp2 = 0, cq2 = 0, ce = 1, chp = 0, chq = 0;
    auto* chow_mul = chow->add_subcommand("mul", "product of two divisor classes");
    chow_mul->add_option("--n", cn);
    chow_mul->add_option("--p1", cp1)->required();
    chow_mul->add_option("--q1", cq1)->required();
    chow_mul->add_option("--p2", cp2)->required();
    chow_mul->add_option("--q2", cq2)->required();
    chow_mul->callback([&] {
        ChowClass a = ChowClass::divisor(cn, Rat(cp1), Rat(cq1));
        ChowClass b = ChowClass::divisor(cn, Rat(cp2), Rat(cq2));
        emit(chow_json(a * b));
    });
    auto* chow_deg = chow->add_subcommand("degree", "degree of a divisor power");
    chow_deg->add_option("--n", cn);
    chow_deg->add_option("--p", cp1)->required();
    chow_deg->add_option("--q", cq1)->required();
    chow_deg->add_option("--e", ce, "exponent, default n");
    chow_deg->callback([&] {
        int e = ce == 1 && chow_deg->count("--e") == 0 ? cn : static_cast<int>(ce);
        Rat d = ChowClass::divisor(cn, Rat(cp1), Rat(cq1)).pow(e).degree();
        emit({{"n", cn}, {"divisor", {cp1, cq1}}, {"e", e}, {"degree", d.get_str()}});
    });
    auto* chow_chern = chow->add_subcommand("chern", "Chern class of the tangent bundle");
    chow_chern->add_option("--n", cn);
    chow_chern->callback([&] { emit(chow_json(chern_tangent(cn))); });
    auto* chow_todd = chow->add_subcommand("todd", "Todd class of the tangent bundle");
    chow_todd->add_option("--n", cn);
    chow_todd->callback([&] { emit(chow_json(todd_tangent(cn))); });
    auto* chow_chi = chow->add_subcommand("chi", "Euler characteristic of O(p,q)");
    chow_chi->add_option("--n", cn);
    chow_chi->add_option("--p", chp)->required();
    chow_chi->add_option("--q", chq)->required();
    chow_chi->callback([&] {
        Int closed = chi_line(chp, chq, cn);
        Rat rr = hrr_chi(exp_divisor(cn, Rat(chp), Rat(chq)), cn);
        emit({{"n", cn},
              {"twist", {chp, chq}},
              {"chi", closed.get_str()},
              {"riemann_roch", rr.get_str()},
              {"match", rr == Rat(closed)}});
        if (rr != Rat(closed)) exit_code = 1;
    });

    // coh -------------------------------------------------------------------
    auto* coh = app.add_subcommand("coh", "cohomology of line bundles and differentials");
    int kn = 5, kl = 1;
    long kp = 0, kq = 0;
    std::string sheaf = "prototype", twists = "exceptional";
    auto* coh_line = coh->add_subcommand("line", "h^i(O(p,q))");
    coh_line->add_option("--n", kn);
    coh_line->add_option("--p", kp)->required();
    coh_line->add_option("--q", kq)->required();
    coh_line->callback([&] {
        json h = json::array();
        for (const Int& v : h_line_all(kp, kq, kn)) h.push_back(v.get_str());
        emit({{"n", kn}, {"twist", {kp, kq}}, {"h", h},
              {"chi", chi_line(kp, kq, kn).get_str()}});
    });
    auto* coh_omega = coh->add_subcommand("omega", "h^i(Omega^l(p,q))");
    coh_omega->add_option("--n", kn);
    coh_omega->add_option("--l", kl)->required();
    coh_omega->add_option("--p", kp)->required();
    coh_omega->add_option("--q", kq)->required();
    coh_omega->callback([&] {
        json h = json::array();
        for (const Int& v : h_omega_all(kl, kp, kq, kn)) h.push_back(v.get_str());
        emit({{"n", kn}, {"l", kl}, {"twist", {kp, kq}}, {"h", h}});
    });
    auto* coh_table = coh->add_subcommand("table", "cohomology table of a constructed sheaf");
    coh_table->add_option("--n", kn);
    coh_table->add_option("--sheaf", sheaf, "prototype");
    coh_table->add_option("--twists", twists, "exceptional");
    coh_table->callback([&] {
        if (sheaf != "prototype" || twists != "exceptional")
            throw CLI::ValidationError("supported: --sheaf prototype --twists exceptional");
        Build b = build_for(kn);
        CohomologySolver sol(*b.reg);
        prepare(sol, b);
        json cols = json::array();
        for (const auto& t : exceptional_collection(kn).bundles) {
            json col;
            col["twist"] = {t.p, t.q};
            col["h"] = json::array();
            for (int i = 0; i <= kn; ++i)
                col["h"].push_back(interval_json(sol.h(twist(b.E, t), i)));
            cols.push_back(col);
        }
        emit({{"n", kn}, {"sheaf", b.E->id}, {"columns", cols}});
    });

    // sections --------------------------------------------------------------
    auto* sections = app.add_subcommand("sections", "section spaces of ideal sheaves");
    int sn = 5;
    long sp = 2, sq = 0;
    std::string comps = "wp,kappa";
    bool srandom = false;
    std::uint64_t sseed = 0;
    auto* sec_h0 = sections->add_subcommand("h0-ideal", "h^0(I_X(p,q)) by evaluation matrices");
    sec_h0->add_option("--n", sn);
    sec_h0->add_option("--p", sp)->required();
    sec_h0->add_option("--q", sq)->required();
    sec_h0->add_option("--components", comps, "comma list: wp,kappa,q1,q2");
    sec_h0->add_flag("--random", srandom, "random generic coefficients");
    sec_h0->add_option("--seed", sseed);
    sec_h0->callback([&] {
        auto X = parse_components(comps, sn);
        GenericityConfig cfg{srandom, sseed};
        EvalSystem es = restrict_matrix(X, sp, sq, cfg);
        emit({{"n", sn},
              {"twist", {sp, sq}},
              {"components", comps},
              {"config", {{"random", srandom}, {"seed", sseed}}},
              {"source_dim", es.source_dim},
              {"target_dim", es.target_dim},
              {"h0", h0_ideal(X, sp, sq, cfg)}});
    });

    // stability -------------------------------------------------------------
    auto* stab = app.add_subcommand("stability", "slope semistability certificates");
    int tn = 5;
    std::string tsheaf = "prototype";
    auto* stab_region = stab->add_subcommand("region", "section-vanishing test region");
    stab_region->add_option("--n", tn);
    stab_region->callback([&] {
        HoppeRegion reg = region_for(tn);
        json j = reg.to_json();
        j["closed_form_match"] = reg.closed_form_check();
        emit(j);
    });
    auto* stab_cert = stab->add_subcommand("certify", "certify or refute semistability");
    stab_cert->add_option("--n", tn);
    stab_cert->add_option("--sheaf", tsheaf, "prototype | even-example");
    stab_cert->callback([&] {
        Build b = tsheaf == "even-example" ? build_even4() : build_for(tn);
        StabilityCertificate cert = certify(b.E, b.L, *b.reg);
        emit(cert.to_json());
        verdict_exit(cert.verdict);
    });

    // monad -----------------------------------------------------------------
    auto* monad = app.add_subcommand("monad", "Beilinson-type monads");
    int mn = 5, mp = -1;
    auto* monad_tables = monad->add_subcommand("tables", "index tables of the display");
    monad_tables->add_option("--n", mn);
    monad_tables->add_option("--p", mp, "term degree, |p| <= 2");
    monad_tables->callback([&] {
        json rows = json::array();
        for (const auto& r : contribution_tables(mp, mn)) {
            json entries = json::array();
            for (const auto& e : r.entries) entries.push_back({{"h", e.h}, {"q", e.q}});
            rows.push_back({{"s", r.s}, {"entries", entries}});
        }
        emit({{"n", mn}, {"p", mp}, {"rows", rows}});
    });
    auto* monad_terms = monad->add_subcommand("terms", "evaluated terms C^p of the prototype");
    monad_terms->add_option("--n", mn);
    monad_terms->callback([&] {
        Build b = build_for(mn);
        CohomologySolver sol(*b.reg);
        prepare(sol, b);
        json terms = json::array();
        for (int p : {-1, 0, 1})
            terms.push_back(c_terms(sol, b.E, p, mn).to_json());
        emit({{"n", mn}, {"sheaf", b.E->id}, {"terms", terms}});
    });
    auto* monad_assemble = monad->add_subcommand("assemble", "assemble the full monad");
    monad_assemble->add_option("--n", mn);
    monad_assemble->callback([&] {
        Build b = build_for(mn);
        CohomologySolver sol(*b.reg);
        prepare(sol, b);
        Monad m = monad_for(b.E, sol, mn);
        emit(m.to_json());
    });

    // instanton -------------------------------------------------------------
    auto* inst = app.add_subcommand("instanton", "construction and verification");
    int in = 5;
    std::string divisor = "H", component = "wp";
    long ikmin = -6, ikmax = 6;
    bool markdown = false;
    auto* inst_build = inst->add_subcommand("build", "construct the sheaf and its registry");
    inst_build->add_option("--n", in);
    inst_build->callback([&] {
        Build b = build_for(in);
        emit({{"n", b.n},
              {"sheaf", expr_to_json(b.E)},
              {"polarization", {b.L.twist.p, b.L.twist.q}},
              {"registry", b.reg->to_json()}});
    });
    auto* inst_check = inst->add_subcommand("check", "verify the definition");
    inst_check->add_option("--n", in);
    inst_check->add_flag("--markdown", markdown, "human-readable report");
    inst_check->callback([&] {
        InstantonReport rep = check(build_for(in));
        if (markdown) std::cout << rep.markdown();
        else emit(rep.to_json());
        verdict_exit(rep.verdict);
    });
    auto* inst_restrict = inst->add_subcommand("restrict", "restriction to a divisor");
    inst_restrict->add_option("--n", in);
    inst_restrict->add_option("--divisor", divisor, "H | E");
    inst_restrict->add_option("--kmin", ikmin);
    inst_restrict->add_option("--kmax", ikmax);
    inst_restrict->callback([&] {
        Build b = build_for(in);
        json rows = json::array();
        bool ok = true;
        for (const auto& r : restrict_to_divisor(b, divisor, ikmin, ikmax)) {
            rows.push_back(r.to_json());
            ok = ok && r.chi_match && r.h2_zero;
        }
        emit({{"n", in}, {"divisor", divisor}, {"rows", rows}, {"all_match", ok}});
        if (!ok) exit_code = 1;
    });
    auto* inst_moduli = inst->add_subcommand("moduli", "dimension bound at the prototype");
    inst_moduli->add_option("--n", in);
    inst_moduli->callback([&] { emit(moduli_dimension(build_for(in)).to_json()); });
    auto* inst_ulrich = inst->add_subcommand("ulrich", "twisted vanishing families");
    inst_ulrich->add_option("--n", in);
    inst_ulrich->callback([&] { emit(ulrich_check(build_for(in)).to_json()); });
    auto* inst_elem = inst->add_subcommand("elementary", "elementary transformation");
    inst_elem->add_option("--n", in);
    inst_elem->add_option("--component", component, "wp | kappa");
    inst_elem->callback([&] {
        Build b = build_for(in);
        SubvarietySpec Y = component == "kappa" ? SubvarietySpec::kappa(in)
                                                : SubvarietySpec::wp(in);
        InstantonReport rep = check_elementary(b, Y);
        emit(rep.to_json());
        verdict_exit(rep.verdict);
    });

    // paper -----------------------------------------------------------------
    auto* paper = app.add_subcommand("paper", "consolidated reproduction");
    auto* repro = paper->add_subcommand("reproduce-all", "run the full suite");
    repro->callback([&] {
        AcceptanceRun run = reproduce_all();
        emit(run.to_json());
        if (!run.all_pass) exit_code = 1;
    });

    // Let the global --strict flag appear after any subcommand.
    auto enable_fallthrough = [](auto&& self, CLI::App* a) -> void {
        a->fallthrough(true);
        for (auto* sub : a->get_subcommands({})) self(self, sub);
    };
    enable_fallthrough(enable_fallthrough, &app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        emit({{"error", e.what()}});
        return 2;
    }
    return exit_code;
}
