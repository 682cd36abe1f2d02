#pragma once

#include <string>
#include <vector>

#include "blowup/lessolver.hpp"
#include "blowup/sheafdag.hpp"

#include "json.hpp"

namespace blowup {

// Row of the contribution table for the degree-p term of the total complex:
// cohomological degree s together with the contributing (h, q) pairs.  The
// summand attached to (h, q) at degree s is
//   H^s(F ox O(-h, h-q)) ox Omega^q(-h, q),   h in {0,1}, q in [0, n-1].
struct ContributionEntry {
    int h = 0, q = 0;
    friend bool operator==(const ContributionEntry&, const ContributionEntry&) = default;
};

struct ContributionRow {
    int s = 0;
    std::vector<ContributionEntry> entries;
};

// The contribution tables for p in {-1, 0, 1} and the obstruction lists for
// p = +-2 (the terms that must vanish for the complex to be three-term).
// Entries with q outside [0, n-1] are dropped.
std::vector<ContributionRow> contribution_tables(int p, int n);

// One summand of a monad term: multiplicity ox bundle, with the simplified
// bundle form (Omega^0 = O, Omega^{n-1}(-h, n-1) = O(-h, -1)).
struct MonadSummand {
    Int mult;
    int s = 0, h = 0, q = 0;
    TwistPair query_twist;  // the twist of F whose h^s gives the multiplicity
    ExprPtr bundle;
};

struct MonadTerm {
    int p = 0;
    std::vector<MonadSummand> summands;  // nonzero multiplicities only
    // Audit: every (twist, s) the assembly consulted.
    std::vector<std::pair<TwistPair, int>> queries;

    bool zero() const { return summands.empty(); }
    long rank() const;
    ChowClass total_chern(const Registry& reg) const;
    ChowClass character(const Registry& reg) const;
    std::string str() const;
    nlohmann::json to_json() const;
};

// The degree-p term of the total complex of F, with every consulted
// cohomology value required to be exact.
MonadTerm c_terms(CohomologySolver& solver, const ExprPtr& F, int p, int n);

struct Monad {
    ExprPtr E;
    MonadTerm cm1, c0, c1;  // C^{-1} -> C^0 -> C^1

    std::string str() const;
    nlohmann::json to_json() const;
};

// Assemble the three-term monad of a sheaf whose table satisfies the
// vanishing obstructions: verifies C^{+-2} = 0 first, then evaluates the
// degree -1, 0, 1 terms.  Throws when an obstruction entry is nonzero.
Monad monad_for(const ExprPtr& E, CohomologySolver& solver, int n);

}  // namespace blowup
