#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blowup/chow.hpp"
#include "blowup/lessolver.hpp"
#include "blowup/sheafdag.hpp"

#include "json.hpp"

namespace blowup {

// Test region of the rank-2 Hoppe criterion: twists theta = O(-p,-q) with
// delta_L(theta) < -mu (strict set for semistability; the boundary belongs to
// the stability test set and is reported separately).
struct HoppeRegion {
    int n = 0;
    Polarization L{0, {0, 0}};
    Rat mu;
    Int cp, cq;  // delta_L(O(1,0)), delta_L(O(0,1))

    static HoppeRegion make(const Polarization& L, const Rat& mu);

    // delta_L(O(-p,-q)) < -mu, i.e. q * cq > mu - p * cp.
    bool contains(long p, long q) const;
    bool on_boundary(long p, long q) const;
    // Least q with contains(p, q).
    long q_min(long p) const;
    // Integer q on the boundary line, if any.
    std::optional<long> boundary_q(long p) const;

    // The region inequality in closed form is q > -mu/cq - (cp/cq) p.  For odd
    // n with the standard polarisation this must equal
    //   q > -1 - p / (1 - ((n-3)/(n-1))^(n-1)),
    // and for n = 4 with L = O(1,1) and mu = -7/2 it must equal
    //   q > -1/2 - (8/7) p.
    bool closed_form_check() const;

    nlohmann::json to_json() const;
};

struct StabilityCase {
    long p = 0, q = 0;       // twist theta = O(-p,-q)
    std::string mechanism;   // FRONTIER-MONOTONE, LINE-BOUND, ORACLE, PAPER-AXIOM
    DimInterval h0;          // certified interval for h^0(E(-p,-q))
    std::string detail;
    bool boundary = false;

    nlohmann::json to_json() const;
};

struct StabilityCertificate {
    std::string sheaf_id;
    std::string verdict;  // SEMISTABLE-CERTIFIED, VIOLATION, INCONCLUSIVE
    HoppeRegion region;
    long window_pmin = 0, window_pmax = 0;
    // Twists of the defining sequence at theta = O(0,0); the entry at
    // theta = O(-p,-q) is obtained by adding (-p,-q).
    TwistPair sub_base{}, quot_base{};
    std::vector<StabilityCase> cases;     // explicit frontier cases in the window
    std::vector<StabilityCase> boundary;  // boundary twists (non-strict test set)
    std::optional<StabilityCase> witness;
    std::vector<std::string> notes;       // symbolic tail arguments

    nlohmann::json to_json() const;
    std::string markdown() const;
};

// Certify mu_L-semistability of a rank-2 sheaf built by the Serre
// construction (looked up in the registry through the expression's name).
// The infinite region is reduced to the frontier cases of a finite window:
// every other region point is dominated by section multiplication or killed
// by the symbolic line-bound tail.
StabilityCertificate certify(const ExprPtr& E, const Polarization& L,
                             const Registry& reg, const GenericityConfig& cfg = {});

// Pointwise coverage: a region point is covered when it is an explicit case,
// dominated by a recorded zero at lower q, or killed by the symbolic tail.
bool covered(const StabilityCertificate& cert, long p, long q);

// A subsheaf with the same first Chern class has the same slope and the same
// test region, and the inclusion transfers every h^0 upper bound.
StabilityCertificate transfer_to_subsheaf(const StabilityCertificate& base,
                                          const std::string& sub_id);

}  // namespace blowup
