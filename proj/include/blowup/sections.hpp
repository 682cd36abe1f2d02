#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blowup/chow.hpp"
#include "blowup/rational.hpp"

namespace blowup {

// Dense exact-rational matrix with rank/kernel via Gaussian elimination.
class QMatrix {
public:
    QMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
    long rows() const { return rows_; }
    long cols() const { return cols_; }
    Rat& at(long r, long c) { return a_[r * cols_ + c]; }
    const Rat& at(long r, long c) const { return a_[r * cols_ + c]; }
    long rank() const;
    long kernel_dim() const { return cols_ - rank(); }
    // [this | other], same row count.
    QMatrix augment(const QMatrix& other) const;

private:
    long rows_, cols_;
    std::vector<Rat> a_;
};

// The codimension-2 subvarieties the constructions use.  Fixed coordinates:
// p0 = [1:0:...:0]; wp = {x0 = x1 = 0}; kappa = {y_n = 0} in exceptional
// coordinates y_1..y_n; Q1 = {x0 + x2 = 0} cap {quadric avoiding p0} (n=4);
// Q2 = {sum y_i^2 = 0} in the exceptional divisor (n=4).
struct SubvarietySpec {
    enum class Kind { WP, KAPPA, Q1, Q2 };
    Kind kind;
    int n;

    static SubvarietySpec wp(int n) { return {Kind::WP, n}; }
    static SubvarietySpec kappa(int n) { return {Kind::KAPPA, n}; }
    static SubvarietySpec q1() { return {Kind::Q1, 4}; }
    static SubvarietySpec q2() { return {Kind::Q2, 4}; }

    // Degree of O(p,q) restricted to the component's model space.
    long restriction_degree(long p, long q) const;
    // Degree of det(N) on the model: wp -> 2, kappa -> 0, Q1 -> 3, Q2 -> 1.
    long det_normal_degree() const;
    // c2 of the structure sheaf O_Y on the blow-up: wp -> -xi^2,
    // kappa -> a^2 - xi^2, Q1 -> -2 xi^2, Q2 -> 2(a^2 - xi^2).
    ChowClass c2_structure() const;
    // Cycle class [Y] = -c2_structure().
    ChowClass cycle_class() const;
    std::string name() const;
    std::string key() const;

    friend bool operator==(const SubvarietySpec&, const SubvarietySpec&) = default;
};

// Seeded pseudorandom coefficients for the "general" defining equations; the
// default is the fixed deterministic choice recorded above.
struct GenericityConfig {
    bool random = false;
    std::uint64_t seed = 0;
};

// Monomial-basis model of H^0(O(p,q)): degree-(p+q) monomials in x_0..x_n
// with x_0-exponent <= p.
struct SectionBasis {
    int n;
    long p, q;
    std::vector<std::vector<int>> monomials;  // exponent vectors, size n+1

    static SectionBasis build(long p, long q, int n);
    long size() const { return static_cast<long>(monomials.size()); }
};

long h0_line_model(long p, long q, int n);

// Joint evaluation map H^0(O(p,q)) -> sum_c Forms_{d_c}(model_c) together
// with the degree slices of the components' defining ideals (empty for the
// linear components).  h^0(I_X(p,q)) = source - rank[R|G] + rank G.
struct EvalSystem {
    long source_dim = 0;
    long target_dim = 0;
    QMatrix restriction{0, 0};  // target_dim x source_dim
    QMatrix ideal_slice{0, 0};  // target_dim x (#ideal generators in degree)
};

EvalSystem restrict_matrix(const std::vector<SubvarietySpec>& X, long p, long q,
                           const GenericityConfig& cfg = {});

long h0_ideal(const std::vector<SubvarietySpec>& X, long p, long q,
              const GenericityConfig& cfg = {});

// h^i of the model space of a component twisted by O_model(m): P^{n-2} for
// wp/kappa, a smooth quadric surface in P^3 for Q1/Q2.
Int h_model(const SubvarietySpec& Y, int i, long m);

}  // namespace blowup
