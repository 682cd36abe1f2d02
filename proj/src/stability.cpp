#include "blowup/stability.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "blowup/projcoh.hpp"
#include "blowup/sections.hpp"

namespace blowup {

namespace {

// floor of an exact rational.
Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

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

}  // namespace

HoppeRegion HoppeRegion::make(const Polarization& L, const Rat& mu) {
    HoppeRegion r;
    r.n = L.n;
    r.L = L;
    r.mu = mu;
    r.cp = delta({1, 0}, L);
    r.cq = delta({0, 1}, L);
    if (r.cq <= 0 || r.cp <= r.cq)
        throw std::invalid_argument("polarisation degenerates the test region");
    return r;
}

bool HoppeRegion::contains(long p, long q) const {
    return Rat(q) * Rat(cq) > mu - Rat(p) * Rat(cp);
}

bool HoppeRegion::on_boundary(long p, long q) const {
    return Rat(q) * Rat(cq) == mu - Rat(p) * Rat(cp);
}

long HoppeRegion::q_min(long p) const {
    Rat r = (mu - Rat(p) * Rat(cp)) / Rat(cq);
    return to_long(rat_floor(r)) + 1;
}

std::optional<long> HoppeRegion::boundary_q(long p) const {
    Rat r = (mu - Rat(p) * Rat(cp)) / Rat(cq);
    if (r.get_den() == 1) return to_long(r.get_num());
    return std::nullopt;
}

bool HoppeRegion::closed_form_check() const {
    Rat cpr(cp), cqr(cq);
    if (n % 2 == 1 && n >= 3) {
        Polarization std_L = Polarization::standard(n);
        if (!(L.twist == std_L.twist)) return false;
        // q > -1 - p / (1 - t), t = ((n-3)/(n-1))^(n-1).
        Rat t(n - 3, n - 1);
        Rat tn(1);
        for (int k = 0; k < n - 1; ++k) tn *= t;
        return mu == -cqr && cpr * (Rat(1) - tn) == cqr;
    }
    if (n == 4 && L.twist == TwistPair{1, 1}) {
        // q > -1/2 - (8/7) p.
        return -mu / cqr == Rat(1, 2) && cpr * 7 == cqr * 8;
    }
    return false;
}

nlohmann::json HoppeRegion::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["polarization"] = {L.twist.p, L.twist.q};
    j["mu"] = mu.get_str();
    j["delta_xi"] = cp.get_str();
    j["delta_alpha"] = cq.get_str();
    j["inequality"] = "q*" + cq.get_str() + " > " + mu.get_str() + " - p*" + cp.get_str();
    j["closed_form_check"] = closed_form_check();
    return j;
}

nlohmann::json StabilityCase::to_json() const {
    nlohmann::json j = interval_json(h0);
    j["p"] = p;
    j["q"] = q;
    j["mechanism"] = mechanism;
    j["detail"] = detail;
    if (boundary) j["boundary"] = true;
    return j;
}

nlohmann::json StabilityCertificate::to_json() const {
    nlohmann::json j;
    j["sheaf"] = sheaf_id;
    j["verdict"] = verdict;
    j["region"] = region.to_json();
    j["window"] = {window_pmin, window_pmax};
    j["cases"] = nlohmann::json::array();
    for (const auto& c : cases) j["cases"].push_back(c.to_json());
    j["boundary_cases"] = nlohmann::json::array();
    for (const auto& c : boundary) j["boundary_cases"].push_back(c.to_json());
    if (witness) j["witness"] = witness->to_json();
    j["notes"] = notes;
    return j;
}

std::string StabilityCertificate::markdown() const {
    std::ostringstream os;
    os << "## Semistability certificate: " << sheaf_id << "\n\n";
    os << "Verdict: **" << verdict << "**\n\n";
    os << "Region: q * " << region.cq.get_str() << " > " << region.mu.get_str()
       << " - p * " << region.cp.get_str() << " (theta = O(-p,-q))\n\n";
    os << "Window: " << window_pmin << " <= p <= " << window_pmax << "\n\n";
    os << "| p | q | mechanism | h0 | detail |\n|---|---|---|---|---|\n";
    for (const auto& c : cases)
        os << "| " << c.p << " | " << c.q << " | " << c.mechanism << " | "
           << c.h0.str() << " | " << c.detail << " |\n";
    if (!boundary.empty()) {
        os << "\nBoundary twists (stability test set only):\n\n";
        for (const auto& c : boundary)
            os << "- (" << c.p << "," << c.q << "): " << c.mechanism << ", h0 = "
               << c.h0.str() << "\n";
    }
    if (witness)
        os << "\nViolation witness: theta = O(" << -witness->p << ","
           << -witness->q << "), h0 = " << witness->h0.str() << "\n";
    for (const auto& s : notes) os << "\n- " << s << "\n";
    return os.str();
}

namespace {

struct SerreShape {
    std::vector<SubvarietySpec> X;
    TwistPair sub_t;  // twist of the line subsheaf in the defining sequence
    TwistPair S;      // twist of the ideal quotient
    TwistPair fold;   // twist folded into E relative to the sequence's middle
    int n = 0;
};

SerreShape find_shape(const ExprPtr& E, const Registry& reg) {
    if (E->kind != SheafExpr::Kind::Named)
        throw std::invalid_argument("certify needs a named rank-2 sheaf");
    for (const auto& ses : reg.sequences()) {
        if (ses.provenance != "SERRE-CONSTRUCTION") continue;
        if (ses.mid->kind != SheafExpr::Kind::Named || ses.mid->id != E->id) continue;
        if (ses.quot->kind != SheafExpr::Kind::IdealTwist)
            throw std::invalid_argument("defining sequence has no ideal quotient");
        SerreShape s;
        s.X = ses.quot->comps;
        s.sub_t = ses.sub->twist;
        s.S = ses.quot->twist;
        s.fold = E->twist + (-ses.mid->twist);
        s.n = E->n;
        return s;
    }
    throw std::invalid_argument("no defining sequence registered for " + E->id);
}

// Decide h^0(E(-p,-q)) through the defining sequence
//   0 -> O(sub + tau) -> F(tau) -> I_X(S + tau) -> 0,  tau = fold + (-p,-q).
StabilityCase classify(const SerreShape& sh, long p, long q,
                       const GenericityConfig& cfg) {
    StabilityCase c;
    c.p = p;
    c.q = q;
    TwistPair tau = sh.fold + TwistPair{-p, -q};
    TwistPair sub = sh.sub_t + tau;
    TwistPair quot = sh.S + tau;
    Int hO0 = h_line(0, sub.p, sub.q, sh.n);
    Int hO1 = h_line(1, sub.p, sub.q, sh.n);
    std::ostringstream d;
    d << "sub O" << sub.str() << ", quot I_X" << quot.str();
    if (hO0 > 0) {
        c.mechanism = "LINE-BOUND";
        c.h0 = DimInterval::at_least(hO0);
        d << ": h0 of the line subsheaf is " << hO0.get_str();
        c.detail = d.str();
        return c;
    }
    Int bound = h0_line_model(quot.p, quot.q, sh.n);
    if (bound == 0) {
        c.mechanism = "LINE-BOUND";
        c.h0 = DimInterval::exact_val(0);
        d << ": h0(O" << quot.str() << ") = 0";
        c.detail = d.str();
        return c;
    }
    Int oracle = h0_ideal(sh.X, quot.p, quot.q, cfg);
    c.mechanism = "ORACLE";
    if (oracle == 0) {
        c.h0 = DimInterval::exact_val(0);
        d << ": section matrix gives h0(I_X" << quot.str() << ") = 0";
    } else if (hO1 == 0) {
        c.h0 = DimInterval::exact_val(oracle);
        d << ": h1 of the line subsheaf vanishes, h0 = h0(I_X" << quot.str()
          << ") = " << oracle.get_str();
    } else {
        Int lo = oracle - hO1;
        if (lo < 0) lo = 0;
        c.h0 = DimInterval::range(lo, oracle);
        d << ": only bounded, h0(I_X) = " << oracle.get_str() << ", h1(O) = "
          << hO1.get_str();
    }
    c.detail = d.str();
    return c;
}

// Symbolic tail: both h^0(O(sub)) and the line bound on h^0(I_X(quot)) vanish.
bool tail_vanishes(int n, TwistPair sub_base, TwistPair quot_base, long p, long q) {
    TwistPair sub = sub_base + TwistPair{-p, -q};
    TwistPair quot = quot_base + TwistPair{-p, -q};
    return h_line(0, sub.p, sub.q, n) == 0 && h0_line_model(quot.p, quot.q, n) == 0;
}

}  // namespace

StabilityCertificate certify(const ExprPtr& E, const Polarization& L,
                             const Registry& reg, const GenericityConfig& cfg) {
    SerreShape sh = find_shape(E, reg);
    ChowClass c1 = chern_of(E, reg).graded_part(1);
    Rat mu = slope(c1, 2, L);
    StabilityCertificate cert;
    cert.sheaf_id = E->id;
    cert.region = HoppeRegion::make(L, mu);
    cert.sub_base = sh.sub_t + sh.fold;
    cert.quot_base = sh.S + sh.fold;

    // Window: for p below -cq/(cp-cq) the region forces q > -p and the
    // line bound h^0(O(quot)) is zero; above the window 1-p style source
    // twists go negative.  One extra column on each side is kept explicit.
    Rat limit = Rat(cert.region.cq) / Rat(cert.region.cp - cert.region.cq);
    cert.window_pmin = -(to_long(-rat_floor(-limit)) + 1);
    cert.window_pmax = 1;
    cert.notes.push_back(
        "p > " + std::to_string(cert.window_pmax) +
        ": the line subsheaf twist and the ideal source twist both have negative "
        "first entry, so h0(E(-p,-q)) = 0 for every q (LINE-BOUND tail)");
    cert.notes.push_back(
        "q above a recorded zero at the same p is dominated by multiplication "
        "with a section of O(0,1) (FRONTIER-MONOTONE)");
    cert.notes.push_back(
        "p < " + std::to_string(cert.window_pmin) +
        ": the region forces q > -p, where the ideal source twist has negative "
        "total degree (LINE-BOUND tail)");

    bool inconclusive = false;
    for (long p = cert.window_pmin; p <= cert.window_pmax; ++p) {
        long q0 = cert.region.q_min(p);
        StabilityCase c = classify(sh, p, q0, cfg);
        if (!(c.h0.has_hi && c.h0.hi == 0)) {
            if (c.h0.lo > 0) {
                // Keep the witness closest to the frontier corner.
                if (!cert.witness ||
                    std::abs(c.p) + std::abs(c.q) <
                        std::abs(cert.witness->p) + std::abs(cert.witness->q))
                    cert.witness = c;
            } else {
                inconclusive = true;
            }
        }
        cert.cases.push_back(c);
        if (auto qb = cert.region.boundary_q(p)) {
            StabilityCase b = classify(sh, p, *qb, cfg);
            b.boundary = true;
            cert.boundary.push_back(b);
        }
    }
    if (cert.witness)
        cert.verdict = "VIOLATION";
    else if (inconclusive)
        cert.verdict = "INCONCLUSIVE";
    else
        cert.verdict = "SEMISTABLE-CERTIFIED";
    return cert;
}

bool covered(const StabilityCertificate& cert, long p, long q) {
    if (!cert.region.contains(p, q)) return false;
    if (p >= cert.window_pmin && p <= cert.window_pmax) {
        // Dominated by the frontier case at the same p.
        for (const auto& c : cert.cases)
            if (c.p == p && c.q <= q && c.h0.has_hi && c.h0.hi == 0) return true;
        return false;
    }
    // Tail columns: covered when the symbolic argument applies both at the
    // frontier and at the point itself (domination handles the rest).
    long qf = cert.region.q_min(p);
    return tail_vanishes(cert.region.n, cert.sub_base, cert.quot_base, p, qf) &&
           tail_vanishes(cert.region.n, cert.sub_base, cert.quot_base, p, q);
}

StabilityCertificate transfer_to_subsheaf(const StabilityCertificate& base,
                                          const std::string& sub_id) {
    StabilityCertificate cert = base;
    cert.sheaf_id = sub_id;
    cert.notes.push_back(
        "transferred from " + base.sheaf_id + ": the subsheaf has the same first "
        "Chern class and slope, and every h0 upper bound restricts along the "
        "inclusion");
    if (cert.verdict == "VIOLATION") {
        // An upper bound does not transfer a violation; the subsheaf is only
        // undecided at the witness twist.
        cert.verdict = "INCONCLUSIVE";
        for (auto& c : cert.cases)
            if (!(c.h0.has_hi && c.h0.hi == 0))
                c.h0 = DimInterval::range(0, c.h0.has_hi ? c.h0.hi : c.h0.lo);
        cert.witness.reset();
    }
    return cert;
}

}  // namespace blowup
