#include "blowup/instanton.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "blowup/projcoh.hpp"
#include "blowup/sections.hpp"

namespace blowup {

namespace {

nlohmann::json interval_json(const DimInterval& v) {
    nlohmann::json j;
    if (v.has_hi) {
        j["value"] = {v.lo.get_str(), v.hi.get_str()};
        if (v.exact()) j["exact"] = true;
    } else {
        j["value"] = {v.lo.get_str(), nullptr};
    }
    return j;
}

std::vector<TwistPair> twist_box(long pmin, long pmax, long qmin, long qmax) {
    std::vector<TwistPair> ts;
    for (long p = pmin; p <= pmax; ++p)
        for (long q = qmin; q <= qmax; ++q) ts.push_back({p, q});
    return ts;
}

// Track the construction in a solver: twisted copies of the defining
// sequences, closed-form middle-range facts, and the duality links.
void prepare_solver(CohomologySolver& sol, const Build& b, long qlo, long qhi,
                    long plo = -4, long phi = 2) {
    sol.instantiate_twists(twist_box(plo, phi, qlo, qhi));
    for (long a = plo + 1; a <= phi + 1; ++a)
        for (long bq = qlo + 1; bq <= qhi + 1; ++bq)
            for (int i = 2; i <= b.n - 2; ++i)
                if (middle_bound(b, a, bq, i) == 0)
                    sol.add_fact(twist(b.E, {a, bq}), i,
                                 DimInterval::exact_val(0), "FORMULA");
    sol.add_duality_links();
}

std::string verdict_of(const DimInterval& v) {
    if (v.exact() && v.lo == 0) return "PASS";
    if (v.lo > 0) return "FAIL";
    return "INCONCLUSIVE";
}

}  // namespace

Build build_odd(int n) {
    if (n < 5 || n % 2 == 0)
        throw std::invalid_argument("construction defined for odd n >= 5");
    Build b;
    b.n = n;
    b.reg = std::make_shared<Registry>();
    b.X = {SubvarietySpec::wp(n), SubvarietySpec::kappa(n)};
    b.S = {2, 0};
    b.F = serre_construct(b.X, b.S, "E", *b.reg);
    b.E = twist(b.F, {-1, -1});
    b.L = Polarization::standard(n);
    return b;
}

Build build_even4() {
    Build b;
    b.n = 4;
    b.reg = std::make_shared<Registry>();
    b.X = {SubvarietySpec::q1(), SubvarietySpec::q2()};
    b.S = {2, 1};
    b.F = serre_construct(b.X, b.S, "E", *b.reg);
    b.E = twist(b.F, {-1, -1});
    b.L = Polarization::custom(4, {1, 1});
    return b;
}

nlohmann::json ConditionItem::to_json() const {
    nlohmann::json j = interval_json(value);
    j["label"] = label;
    j["twist"] = {twist.p, twist.q};
    j["i"] = i;
    j["verdict"] = verdict;
    return j;
}

Int middle_bound(const Build& b, long a, long bq, int i) {
    // E(a,b) = F(a-1,b-1); the defining sequence bounds h^i by the line part
    // plus h^i(I_X(quot)); the ideal restriction sequence bounds the latter by
    // the component models plus the line part of the quotient twist.
    TwistPair sub{a - 1, bq - 1};
    TwistPair quot = b.S + sub;
    Int total = h_line(i, sub.p, sub.q, b.n) + h_line(i, quot.p, quot.q, b.n);
    for (const auto& Y : b.X)
        total += h_model(Y, i - 1, Y.restriction_degree(quot.p, quot.q));
    return total;
}

MiddleRangeResult middle_vanishing(const Build& b, long grid) {
    MiddleRangeResult r;
    r.grid = grid;
    r.sampled_ok = true;
    for (long a = -grid; a <= grid && r.sampled_ok; ++a)
        for (long bq = -grid; bq <= grid && r.sampled_ok; ++bq)
            for (int i = 2; i <= b.n - 2; ++i)
                if (middle_bound(b, a, bq, i) != 0) {
                    r.sampled_ok = false;
                    r.notes.push_back("nonzero bound at twist (" +
                                      std::to_string(a) + "," + std::to_string(bq) +
                                      "), i=" + std::to_string(i));
                }
    // Structural argument: line bundles on the blow-up have cohomology only in
    // degrees {0, 1, n-1, n}, and the component models are aCM, so every term
    // of the bound vanishes identically in the middle range.
    r.symbolic_ok = true;
    for (int i = 2; i <= b.n - 2 && r.symbolic_ok; ++i)
        for (long p = -2 * grid; p <= 2 * grid && r.symbolic_ok; ++p)
            for (long q = -2 * grid; q <= 2 * grid; ++q)
                if (h_line(i, p, q, b.n) != 0) {
                    r.symbolic_ok = false;
                    break;
                }
    for (const auto& Y : b.X) {
        int d = (Y.kind == SubvarietySpec::Kind::WP ||
                 Y.kind == SubvarietySpec::Kind::KAPPA)
                    ? b.n - 2
                    : 2;
        for (int j = 1; j <= d - 1 && r.symbolic_ok; ++j)
            for (long m = -3 * grid; m <= 3 * grid; ++m)
                if (h_model(Y, j, m) != 0) {
                    r.symbolic_ok = false;
                    break;
                }
    }
    if (r.symbolic_ok)
        r.notes.push_back(
            "line-bundle cohomology on the blow-up sits in degrees {0,1,n-1,n} "
            "and the component models have no intermediate cohomology, so the "
            "middle-range bound vanishes for every twist");
    return r;
}

InstantonReport check(const Build& b, const CheckOptions& opts) {
    const int n = b.n;
    CohomologySolver sol(*b.reg, opts.cfg);
    prepare_solver(sol, b, -static_cast<long>(n) - 2, 3);

    InstantonReport rep;
    rep.sheaf_id = b.E->id;
    rep.n = n;

    struct Spec {
        const char* label;
        TwistPair t;
        int i;
    };
    std::vector<Spec> specs = {
        {"(i) h^0(E(0,-2))", {0, -2}, 0},
        {"(i) h^0(E(-1,0))", {-1, 0}, 0},
        {"(ii) h^1(E(-1,-1))", {-1, -1}, 1},
        {"(ii) h^{n-1}(E(0,3-n))", {0, 3 - n}, n - 1},
        {"(iii) h^n(E(0,2-n))", {0, 2 - n}, n},
        {"(iii) h^n(E(-1,4-n))", {-1, 4 - n}, n},
    };
    if (n >= 4) {
        specs.push_back({"(iv) h^1(E(0,-3))", {0, -3}, 1});
        specs.push_back({"(iv) h^{n-1}(E(-1,5-n))", {-1, 5 - n}, n - 1});
    }
    for (const auto& s : specs) {
        ConditionItem it;
        it.label = s.label;
        it.twist = s.t;
        it.i = s.i;
        it.value = sol.h(twist(b.E, s.t), s.i);
        it.verdict = verdict_of(it.value);
        rep.items.push_back(it);
    }
    if (n >= 4) rep.middle = middle_vanishing(b, n + 2);

    ChowClass c = chern_of(b.E, *b.reg);
    ChowClass c1 = c.graded_part(1);
    rep.det = {rat_to_long(c1.coeff_xi(1)), rat_to_long(c1.coeff_alpha(1))};
    rep.expected_det = {2 * b.L.twist.p - 2, 2 * b.L.twist.q + 1 - n};
    rep.c1_ok = rep.det == rep.expected_det;
    rep.charge_value = charge(c.graded_part(2), b.L);

    if (opts.with_stability) rep.stability = certify(b.E, b.L, *b.reg, opts.cfg);
    if (opts.with_monad) {
        try {
            rep.monad = monad_for(b.E, sol, n);
        } catch (const std::exception& ex) {
            rep.notes.push_back(std::string("monad assembly failed: ") + ex.what());
        }
    }

    bool all_pass = rep.c1_ok;
    bool any_fail = false;
    for (const auto& it : rep.items) {
        if (it.verdict == "FAIL") any_fail = true;
        if (it.verdict != "PASS") all_pass = false;
    }
    if (n >= 4 && !(rep.middle.sampled_ok && rep.middle.symbolic_ok)) all_pass = false;
    if (opts.with_stability) {
        if (rep.stability->verdict == "VIOLATION") any_fail = true;
        if (rep.stability->verdict != "SEMISTABLE-CERTIFIED") all_pass = false;
    }
    rep.verdict = all_pass ? "INSTANTON" : (any_fail ? "NOT-INSTANTON" : "INCONCLUSIVE");
    return rep;
}

InstantonReport check_elementary(const Build& b, const SubvarietySpec& Y,
                                 const CheckOptions& opts) {
    auto reg2 = std::make_shared<Registry>(*b.reg);
    ExprPtr G = elementary_transform(b.E, Y, "G", *reg2);
    Build bg = b;
    bg.reg = reg2;

    const int n = b.n;
    CohomologySolver sol(*reg2, opts.cfg);
    prepare_solver(sol, bg, -static_cast<long>(n) - 2, 3);

    InstantonReport rep;
    rep.sheaf_id = "G";
    rep.n = n;

    struct Spec {
        const char* label;
        TwistPair t;
        int i;
    };
    std::vector<Spec> specs = {
        {"(i) h^0(G(0,-2))", {0, -2}, 0},
        {"(i) h^0(G(-1,0))", {-1, 0}, 0},
        {"(ii) h^1(G(-1,-1))", {-1, -1}, 1},
        {"(ii) h^{n-1}(G(0,3-n))", {0, 3 - n}, n - 1},
        {"(iii) h^n(G(0,2-n))", {0, 2 - n}, n},
        {"(iii) h^n(G(-1,4-n))", {-1, 4 - n}, n},
    };
    if (n >= 4) {
        specs.push_back({"(iv) h^1(G(0,-3))", {0, -3}, 1});
        specs.push_back({"(iv) h^{n-1}(G(-1,5-n))", {-1, 5 - n}, n - 1});
    }
    for (const auto& s : specs) {
        ConditionItem it;
        it.label = s.label;
        it.twist = s.t;
        it.i = s.i;
        it.value = sol.h(twist(G, s.t), s.i);
        it.verdict = verdict_of(it.value);
        rep.items.push_back(it);
    }
    // Middle range for G: h^i(G ox L') <= h^{i-1}(O_Y part) + h^i(E ox L'),
    // and the bound on E is already closed form.
    if (n >= 4) {
        rep.middle = middle_vanishing(b, n + 2);
        if (rep.middle.sampled_ok) {
            for (long a = -(n + 2); a <= n + 2 && rep.middle.sampled_ok; ++a)
                for (long bq = -(n + 2); bq <= n + 2; ++bq)
                    for (int i = 2; i <= n - 2; ++i)
                        if (h_model(Y, i - 1, Y.restriction_degree(a, bq)) != 0) {
                            rep.middle.sampled_ok = false;
                            rep.middle.notes.push_back(
                                "transform quotient contributes at twist (" +
                                std::to_string(a) + "," + std::to_string(bq) + ")");
                        }
        }
    }

    ChowClass c = chern_of(G, *reg2);
    ChowClass c1 = c.graded_part(1);
    rep.det = {rat_to_long(c1.coeff_xi(1)), rat_to_long(c1.coeff_alpha(1))};
    rep.expected_det = {2 * b.L.twist.p - 2, 2 * b.L.twist.q + 1 - n};
    rep.c1_ok = rep.det == rep.expected_det;
    rep.charge_value = charge(c.graded_part(2), b.L);

    if (opts.with_stability) {
        StabilityCertificate base = certify(b.E, b.L, *b.reg, opts.cfg);
        rep.stability = transfer_to_subsheaf(base, "G");
    }

    bool all_pass = rep.c1_ok;
    bool any_fail = false;
    for (const auto& it : rep.items) {
        if (it.verdict == "FAIL") any_fail = true;
        if (it.verdict != "PASS") all_pass = false;
    }
    if (n >= 4 && !(rep.middle.sampled_ok && rep.middle.symbolic_ok)) all_pass = false;
    if (opts.with_stability) {
        if (rep.stability->verdict == "VIOLATION") any_fail = true;
        if (rep.stability->verdict != "SEMISTABLE-CERTIFIED") all_pass = false;
    }
    rep.verdict = all_pass ? "INSTANTON" : (any_fail ? "NOT-INSTANTON" : "INCONCLUSIVE");
    return rep;
}

nlohmann::json InstantonReport::to_json() const {
    nlohmann::json j;
    j["sheaf"] = sheaf_id;
    j["n"] = n;
    j["verdict"] = verdict;
    j["items"] = nlohmann::json::array();
    for (const auto& it : items) j["items"].push_back(it.to_json());
    j["middle_range"] = {{"symbolic", middle.symbolic_ok},
                         {"sampled", middle.sampled_ok},
                         {"grid", middle.grid},
                         {"notes", middle.notes}};
    j["c1"] = {{"det", {det.p, det.q}},
               {"expected", {expected_det.p, expected_det.q}},
               {"ok", c1_ok}};
    j["charge"] = charge_value.get_str();
    if (stability) j["stability"] = stability->to_json();
    if (monad) j["monad"] = monad->to_json();
    j["notes"] = notes;
    return j;
}

std::string InstantonReport::markdown() const {
    std::ostringstream os;
    os << "## Instanton report: " << sheaf_id << " (n=" << n << ")\n\n";
    os << "Verdict: **" << verdict << "**\n\n";
    for (const auto& it : items)
        os << "- " << it.label << " = " << it.value.str() << " [" << it.verdict
           << "]\n";
    os << "- middle range: symbolic " << (middle.symbolic_ok ? "ok" : "FAIL")
       << ", sampled " << (middle.sampled_ok ? "ok" : "FAIL") << " on |a|,|b| <= "
       << middle.grid << "\n";
    os << "- det " << det.str() << " vs expected " << expected_det.str() << " ["
       << (c1_ok ? "ok" : "MISMATCH") << "]\n";
    os << "- charge " << charge_value.get_str() << "\n";
    if (stability) os << "- stability: " << stability->verdict << "\n";
    if (monad) os << "- monad: " << monad->str() << "\n";
    for (const auto& s : notes) os << "- " << s << "\n";
    return os.str();
}

nlohmann::json DivisorRestriction::to_json() const {
    nlohmann::json j;
    j["divisor"] = divisor;
    j["k"] = k;
    j["table"] = nlohmann::json::array();
    for (const auto& v : table) j["table"].push_back(interval_json(v));
    j["model"] = nlohmann::json::array();
    for (const auto& m : model) j["model"].push_back(m.get_str());
    j["chi"] = {{"engine", chi_engine.get_str()}, {"model", chi_model.get_str()}};
    j["chi_match"] = chi_match;
    j["h2_zero"] = h2_zero;
    j["exact_entries_match"] = exact_entries_match;
    return j;
}

std::vector<DivisorRestriction> restrict_to_divisor(const Build& b,
                                                    const std::string& divisor,
                                                    long kmin, long kmax) {
    if (divisor != "H" && divisor != "E")
        throw std::invalid_argument("divisor must be H or E");
    const int n = b.n;
    auto reg2 = std::make_shared<Registry>(*b.reg);
    Build b2 = b;
    b2.reg = reg2;
    CohomologySolver sol(*reg2);

    // Only the twist rows the restriction sequences touch, plus their Serre
    // duality partners, are instantiated.
    std::vector<TwistPair> e_twists;
    for (long k = kmin; k <= kmax; ++k) {
        if (divisor == "H") {
            e_twists.push_back({k - 1, 0});
            e_twists.push_back({k, 0});
        } else {
            e_twists.push_back({-1, k + 1});
            e_twists.push_back({0, k});
        }
    }
    std::vector<TwistPair> base_ts;
    for (const auto& t : e_twists) {
        TwistPair ft{t.p - 1, t.q - 1};
        base_ts.push_back(ft);
        base_ts.push_back({-b.S.p - 2 - ft.p, -b.S.q + 1 - n - ft.q});
    }
    sol.instantiate_twists(base_ts);
    for (const auto& t : e_twists)
        for (int i = 2; i <= n - 2; ++i)
            if (middle_bound(b2, t.p, t.q, i) == 0)
                sol.add_fact(twist(b.E, t), i, DimInterval::exact_val(0), "FORMULA");
    sol.add_duality_links();

    std::vector<ExprPtr> quots;
    for (long k = kmin; k <= kmax; ++k) {
        ExprPtr sub, mid;
        if (divisor == "H") {
            sub = twist(b.E, {k - 1, 0});
            mid = twist(b.E, {k, 0});
        } else {
            sub = twist(b.E, {-1, k + 1});
            mid = twist(b.E, {0, k});
        }
        std::string id = "E|" + divisor + "(" + std::to_string(k) + ")";
        // Virtual rank-0 Chern data so the Euler characteristic is available.
        NamedData d;
        d.rank = 0;
        d.total_chern = chern_of(mid, *reg2) * chern_of(sub, *reg2).inverse();
        d.locally_free = false;
        reg2->define_named(id, d);
        ExprPtr q = named(n, id);
        reg2->add_ses({"restrict-" + id, sub, mid, q, "RESTRICTION"});
        quots.push_back(q);
    }
    sol.instantiate_twists({{0, 0}});

    BottTable base{n - 1};
    std::vector<DivisorRestriction> out;
    for (long k = kmin; k <= kmax; ++k) {
        DivisorRestriction r;
        r.divisor = divisor;
        r.k = k;
        ExprPtr q = quots[static_cast<size_t>(k - kmin)];
        r.table = sol.h_all(q);
        for (int i = 0; i <= n; ++i) {
            Int m = 0;
            if (i <= n - 1) {
                if (divisor == "H")
                    m = base.h_line(i, k - 1) * 2;
                else
                    m = base.h_line(i, k) + base.h_line(i, k - 2);
            }
            r.model.push_back(m);
        }
        Rat chi = hrr_chi(chern_character(q, *reg2), n);
        r.chi_engine = Int(chi.get_num());
        r.chi_model = 0;
        for (int i = 0; i <= n; ++i)
            r.chi_model += (i % 2 == 0 ? r.model[i] : -r.model[i]);
        r.chi_match = r.chi_engine == r.chi_model;
        r.h2_zero = r.table[2].exact() && r.table[2].lo == 0;
        r.exact_entries_match = true;
        for (int i = 0; i <= n; ++i)
            if (r.table[i].exact() && r.table[i].lo != r.model[i])
                r.exact_entries_match = false;
        out.push_back(std::move(r));
    }
    return out;
}

nlohmann::json ModuliReport::to_json() const {
    nlohmann::json j;
    j["steps"] = nlohmann::json::array();
    for (const auto& s : steps)
        j["steps"].push_back({{"label", s.label}, {"value", s.value},
                              {"provenance", s.provenance}});
    j["delta01_ideal"] = delta_ix.str();
    j["normal_term"] = normal_term.get_str();
    j["delta01_ideal_square"] = {{"engine", delta_i2.get_str()},
                                 {"printed", printed_delta_i2.get_str()}};
    j["delta01_endomorphisms"] = delta_ee.get_str();
    j["h0_E_ox_K"] = interval_json(h0_ek);
    j["h0_E_ox_K_printed_bound"] = printed_h0_ek_bound.get_str();
    j["h0_endomorphisms"] = interval_json(h0_ee);
    j["h1_endomorphisms"] = {{"engine", interval_json(h1_ee)},
                             {"printed", {printed_h1_lo.get_str(), printed_h1_hi.get_str()}}};
    j["higher_vanish"] = higher_vanish;
    j["trace_size"] = trace.size();
    return j;
}

ModuliReport moduli_dimension(const Build& b) {
    if (b.n != 5)
        throw std::invalid_argument("moduli chain is transcribed for n = 5");
    const int n = 5;
    auto reg2 = std::make_shared<Registry>(*b.reg);
    Build b2 = b;
    b2.reg = reg2;

    CohomologySolver sol(*reg2);
    prepare_solver(sol, b2, -n - 2, 3);

    auto X = b.X;
    ExprPtr EE = named(n, "EoxEdual");
    ExprPtr EIX = named(n, "EoxI");  // E ox I_X(1,1) = F ox I_X
    ExprPtr IX0 = ideal_twist(X, {0, 0});
    ExprPtr IX2 = ideal_twist(X, {2, 0});
    ExprPtr Q = sum({push(SubvarietySpec::kappa(n), -1),
                     push(SubvarietySpec::kappa(n), 1),
                     push(SubvarietySpec::wp(n), 1),
                     push(SubvarietySpec::wp(n), 1)});
    NamedData d2;
    d2.rank = 1;
    d2.total_chern = chern_of(IX2, *reg2) * chern_of(Q, *reg2).inverse();
    d2.locally_free = false;
    reg2->define_named("I2X", d2);
    ExprPtr I2 = named(n, "I2X");

    reg2->add_ses({"h-seq1-src", twist(b.E, {-1, 1}), EE, EIX, "USER-AXIOM"});
    reg2->add_ses({"h-seq2-src", IX0, EIX, I2, "USER-AXIOM"});
    reg2->add_ses({"rest-X-twist", I2, IX2, Q, "USER-AXIOM"});
    ExprPtr EK = named(n, "EoxK02");
    ExprPtr Emid = sum({twist(b.E, {-1, 2}), twist(b.E, {0, 1}), twist(b.E, {0, 1}),
                        twist(b.E, {0, 1}), twist(b.E, {0, 1}), twist(b.E, {0, 1}),
                        twist(b.E, {0, 1})});
    ExprPtr EOm = named(n, "EoxOmega3(0,5)");
    reg2->add_ses({"claim-seq", EK, Emid, EOm, "USER-AXIOM"});
    reg2->add_ses({"K-seq-twist", twist(b.E, {-1, 1}), EK, EE, "USER-AXIOM"});
    sol.instantiate_twists({{0, 0}});

    // Simple sheaves: at least the identity endomorphism.
    sol.add_fact(EE, 0, DimInterval::at_least(1), "USER");

    ModuliReport rep;
    auto step = [&](const std::string& label, const std::string& value,
                    const std::string& prov) {
        rep.steps.push_back({label, value, prov});
    };

    rep.delta_ix = sol.delta01(IX2);
    step("delta01(I_X(2,0))", rep.delta_ix.str(), "ORACLE+LES");
    DimInterval q0 = sol.h(Q, 0);
    rep.normal_term = q0.lo;
    step("h0 of the normal term", q0.str(), "FORMULA");

    rep.higher_vanish = true;
    for (int i = 2; i <= n; ++i) {
        DimInterval v = sol.h(EE, i);
        if (!(v.exact() && v.lo == 0)) rep.higher_vanish = false;
    }
    step("h^i(E ox E^v) for i >= 2", rep.higher_vanish ? "all zero" : "not resolved",
         "LES");

    // Connecting dimensions of the two hyperplane-section steps.
    DimInterval c1v = sol.h(twist(b.E, {-1, 1}), 1);
    DimInterval c2v = sol.h(IX0, 1);
    step("h^1(E(-1,1))", c1v.str(), "LES");
    step("h^1(I_X)", c2v.str(), "LES");
    bool chain_ok = c1v.exact() && c1v.lo == 1 && c2v.exact() && c2v.lo == 1;

    // Engine value of delta01(I^2_X(2,0)) from its Euler characteristic and
    // the vanishing of its higher cohomology.
    Rat chi_i2 = hrr_chi(chern_character(I2, *reg2), n);
    bool i2_higher = true;
    for (int i = 2; i <= n; ++i) {
        DimInterval v = sol.h(I2, i);
        if (!(v.exact() && v.lo == 0)) i2_higher = false;
    }
    rep.delta_i2 = Int(chi_i2.get_num());
    step("delta01(I^2_X(2,0)) = chi (higher cohomology vanishes)",
         rep.delta_i2.get_str() + (i2_higher ? "" : " [higher not resolved]"),
         "FORMULA+LES");

    // Each six-term sequence with a one-dimensional connecting space drops
    // delta01 by one.
    rep.delta_ee = rep.delta_i2 - 2;
    step("delta01(E ox E^v) = delta01(I^2) - 2", rep.delta_ee.get_str(),
         chain_ok ? "LES" : "LES [connecting spaces not resolved]");

    // Claim bound: h0(E ox K(0,2)) <= h0(E(-1,2)) + 6 h0(E(0,1)).
    DimInterval a1 = sol.h(twist(b.E, {-1, 2}), 0);
    DimInterval a2 = sol.h(twist(b.E, {0, 1}), 0);
    step("h0(E(-1,2))", a1.str(), "LES");
    step("h0(E(0,1))", a2.str(), "ORACLE+LES");
    Int ek_hi = (a1.has_hi ? a1.hi : a1.lo) + 6 * (a2.has_hi ? a2.hi : a2.lo);
    rep.h0_ek = DimInterval::range(0, ek_hi);
    step("h0(E ox K(0,2)) bound", rep.h0_ek.str(), "LES");

    // Kernel sequence: h0(E ox E^v) <= h0(E ox K(0,2)) + h1(E(-1,1)).
    rep.h0_ee = DimInterval::range(1, ek_hi + c1v.hi);
    step("h0(E ox E^v)", rep.h0_ee.str(), "USER+LES");
    rep.h1_ee = DimInterval::range(rep.h0_ee.lo - rep.delta_ee,
                                   rep.h0_ee.hi - rep.delta_ee);
    step("h1(E ox E^v) = h0 - delta01", rep.h1_ee.str(), "LES");

    rep.trace = sol.trace();
    return rep;
}

nlohmann::json UlrichReport::to_json() const {
    nlohmann::json j;
    j["items"] = nlohmann::json::array();
    for (const auto& it : items) {
        nlohmann::json ji = interval_json(it.value);
        ji["label"] = it.label;
        ji["twist"] = {it.twist.p, it.twist.q};
        ji["i"] = it.i;
        ji["vanishes"] = it.vanishes;
        j["items"].push_back(ji);
    }
    j["failure"] = interval_json(failure);
    j["printed_failure"] = printed_failure.get_str();
    j["only_failure_at_top"] = only_failure_at_top;
    return j;
}

UlrichReport ulrich_check(const Build& b) {
    if (b.n != 5)
        throw std::invalid_argument("the Ulrich check is transcribed for n = 5");
    const int n = 5;
    CohomologySolver sol(*b.reg);
    sol.instantiate_twists(twist_box(-7, 2, -7, 2));
    Build b2 = b;
    for (long a = -6; a <= 3; ++a)
        for (long bq = -6; bq <= 3; ++bq)
            for (int i = 2; i <= n - 2; ++i)
                if (middle_bound(b2, a, bq, i) == 0)
                    sol.add_fact(twist(b.E, {a, bq}), i,
                                 DimInterval::exact_val(0), "FORMULA");
    sol.add_duality_links();

    UlrichReport rep;
    rep.only_failure_at_top = true;
    for (int i = 1; i <= n; ++i) {
        UlrichItem it;
        it.twist = {-i, -i};
        it.i = i;
        it.label = "h^" + std::to_string(i) + "(F(" + std::to_string(-i) + "," +
                   std::to_string(-i) + "))";
        it.value = sol.h(twist(b.F, it.twist), i);
        it.vanishes = it.value.exact() && it.value.lo == 0;
        if (i == n) {
            rep.failure = it.value;
        } else if (!it.vanishes) {
            rep.only_failure_at_top = false;
        }
        rep.items.push_back(it);
    }
    for (int j = 0; j < n; ++j) {
        UlrichItem it;
        it.twist = {-j - 1, -j - 1};
        it.i = j;
        it.label = "h^" + std::to_string(j) + "(F(" + std::to_string(-j - 1) + "," +
                   std::to_string(-j - 1) + "))";
        it.value = sol.h(twist(b.F, it.twist), j);
        it.vanishes = it.value.exact() && it.value.lo == 0;
        if (!it.vanishes) rep.only_failure_at_top = false;
        rep.items.push_back(it);
    }
    return rep;
}

}  // namespace blowup
