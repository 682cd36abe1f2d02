#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blowup/chow.hpp"
#include "blowup/rational.hpp"
#include "blowup/sections.hpp"

#include "json.hpp"

namespace blowup {

// Expression DAG for the sheaves the computations manipulate.  Twists are
// normalised into the nodes: twisting a node by O(a,b) folds (a,b) into its
// stored twist (for supported sheaves on subvarieties, into the model degree).
struct SheafExpr;
using ExprPtr = std::shared_ptr<const SheafExpr>;

struct SheafExpr {
    enum class Kind { Line, Omega, Push, Sum, IdealTwist, Named };

    Kind kind;
    int n;               // ambient dimension
    TwistPair twist{};   // Line/Omega/IdealTwist twist; Named folded twist
    int l = 0;           // Omega: exterior power on the P^{n-1} base
    SubvarietySpec sub{SubvarietySpec::Kind::WP, 0};  // Push component
    long m = 0;          // Push: model twist degree
    std::vector<ExprPtr> children;         // Sum
    std::vector<SubvarietySpec> comps;     // IdealTwist
    std::string id;      // Named

    std::string key() const;
    long rank() const;
};

ExprPtr line(int n, TwistPair t);
ExprPtr omega(int n, int l, TwistPair t);
ExprPtr push(const SubvarietySpec& sub, long m);
ExprPtr sum(std::vector<ExprPtr> children);
ExprPtr ideal_twist(std::vector<SubvarietySpec> comps, TwistPair t);
ExprPtr named(int n, std::string id, TwistPair folded = {});

// Fold O(a,b) into an expression.
ExprPtr twist(const ExprPtr& e, TwistPair t);

struct SESRecord {
    std::string name;
    ExprPtr sub, mid, quot;  // 0 -> sub -> mid -> quot -> 0
    std::string provenance;  // RESOLUTION, RESTRICTION, SERRE-CONSTRUCTION,
                             // ELEMENTARY-TRANSFORM, USER-AXIOM
};

// Chern/rank data backing a Named node at folded twist (0,0).
struct NamedData {
    long rank = 0;
    ChowClass total_chern{2};
    bool locally_free = false;  // enables the duality link E^v = E(-c1)
};

class Registry {
public:
    void define_named(const std::string& id, NamedData data);
    const NamedData* named_data(const std::string& id) const;
    void add_ses(SESRecord ses);
    const std::vector<SESRecord>& sequences() const { return ses_; }

    nlohmann::json to_json() const;

private:
    std::map<std::string, NamedData> named_;
    std::vector<SESRecord> ses_;
};

// c_k(F ox M) = sum_j binom(r-j, k-j) c_j(F) c1(M)^{k-j}.
ChowClass twist_chern(const ChowClass& total, long rank, const ChowClass& d);

// Total Chern class of the expression (universal class; rank-0 pushforwards
// get theirs from the Koszul resolutions of the components).
ChowClass chern_of(const ExprPtr& e, const Registry& reg);
// Chern character via the Newton identities, degree 0 term = rank.
ChowClass chern_character(const ExprPtr& e, const Registry& reg);

// Exact h^i when the node admits a closed form: Line/Omega by the pushforward
// rule, Push by the model cohomology, Sum when every child is exact, and the
// h^0 of an ideal twist from the section matrices.  Named nodes and the other
// h^i of ideal sheaves have no closed form here.
std::optional<Int> h_exact(const ExprPtr& e, int i, const GenericityConfig& cfg = {});

// Serre construction: a Named rank-2 expression F with det F = O(t) fitting in
// 0 -> O -> F -> I_X(t) -> 0; the sequence and the structural sequence
// 0 -> I_X(t) -> O(t) -> sum_i O_{Y_i}(deg) -> 0 are recorded in the registry.
ExprPtr serre_construct(const std::vector<SubvarietySpec>& X, TwistPair t,
                        const std::string& id, Registry& reg);

// Record the structural sequence of an ideal twist (restriction to the
// components) in the registry and return the quotient term.
ExprPtr ideal_structural_ses(const ExprPtr& ideal, Registry& reg);

// 0 -> G -> E -> O_Y -> 0 for a surjection onto the structure sheaf of a
// component; G is a new Named rank-2 sheaf with c2(G) = c2(E) + [Y].
ExprPtr elementary_transform(const ExprPtr& e, const SubvarietySpec& Y,
                             const std::string& id, Registry& reg);

nlohmann::json expr_to_json(const ExprPtr& e);
ExprPtr expr_from_json(const nlohmann::json& j);

}  // namespace blowup
