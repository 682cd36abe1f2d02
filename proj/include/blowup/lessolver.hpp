#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blowup/sheafdag.hpp"

namespace blowup {

// Integer interval [lo, hi], hi possibly absent (unbounded).  A dimension is
// known exactly when lo == hi.
struct DimInterval {
    Int lo = 0;
    bool has_hi = false;
    Int hi = 0;

    static DimInterval exact_val(Int v) { return {v, true, v}; }
    static DimInterval range(Int lo, Int hi) { return {lo, true, hi}; }
    static DimInterval at_least(Int lo) { return {lo, false, 0}; }
    static DimInterval unknown() { return {0, false, 0}; }

    bool exact() const { return has_hi && lo == hi; }
    bool contains(const Int& v) const { return v >= lo && (!has_hi || v <= hi); }
    bool empty() const { return has_hi && lo > hi; }
    std::string str() const;
    friend bool operator==(const DimInterval&, const DimInterval&) = default;
};

// Signed interval for h^0 - h^1 style differences.
struct SignedInterval {
    bool has_lo = false;
    Int lo = 0;
    bool has_hi = false;
    Int hi = 0;
    bool exact() const { return has_lo && has_hi && lo == hi; }
    std::string str() const;
};

// Interval solver over the long exact cohomology sequences of the registered
// short exact sequences, plus Euler characteristics, Serre duality links for
// locally free named sheaves, and injected facts.  Every tightening step is
// logged to a replayable trace.
class CohomologySolver {
public:
    explicit CohomologySolver(const Registry& reg, GenericityConfig cfg = {});

    // Make h^0..h^n of the expression solver variables, seeding the closed
    // forms (and the section-matrix h^0 of ideal twists) as exact facts.
    void track(const ExprPtr& e);

    // Inject an external fact; provenance tags the trace entry.
    void add_fact(const ExprPtr& e, int i, DimInterval v, const std::string& provenance);

    // Add twisted copies of every registered sequence (twisting by a line
    // bundle preserves exactness).
    void instantiate_twists(const std::vector<TwistPair>& twists);

    // Link h^i(F) = h^{n-i}(F^v ox omega) for every tracked locally free
    // named sheaf with integral first Chern class.
    void add_duality_links();

    void solve();

    DimInterval h(const ExprPtr& e, int i);
    std::vector<DimInterval> h_all(const ExprPtr& e);
    SignedInterval delta01(const ExprPtr& e);

    const std::vector<std::string>& trace() const { return trace_; }
    nlohmann::json report() const;

private:
    struct LesConstraint {
        std::string name;
        std::vector<std::string> terms;  // h^0(A), h^0(B), h^0(C), h^1(A), ...
    };
    struct ChiConstraint {
        std::string name;
        std::vector<std::string> terms;  // h^0..h^n of one expression
        Int chi;
    };
    struct EqConstraint {
        std::string a, b;
    };

    std::string var_key(const ExprPtr& e, int i) const;
    DimInterval& var(const std::string& key);
    bool tighten(const std::string& key, const DimInterval& v, const std::string& why);
    void add_ses_constraints(const SESRecord& ses);
    bool propagate_les(const LesConstraint& c);
    bool propagate_chi(const ChiConstraint& c);
    bool propagate_eq(const EqConstraint& c);
    bool enumerate_components();

    const Registry& reg_;
    GenericityConfig cfg_;
    std::map<std::string, DimInterval> vars_;
    std::map<std::string, ExprPtr> tracked_;  // expr key -> expr
    std::vector<LesConstraint> les_;
    std::vector<ChiConstraint> chi_;
    std::vector<EqConstraint> eq_;
    std::vector<std::string> trace_;
    std::vector<std::string> seen_ses_;
    bool dirty_ = true;
};

}  // namespace blowup
