#pragma once

#include <string>
#include <vector>

#include "blowup/rational.hpp"

namespace blowup {

// A line-bundle twist O(p,q) = O(p*xi + q*alpha).
struct TwistPair {
    long p = 0;
    long q = 0;
    friend bool operator==(const TwistPair&, const TwistPair&) = default;
    TwistPair operator+(const TwistPair& o) const { return {p + o.p, q + o.q}; }
    TwistPair operator-() const { return {-p, -q}; }
    std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

// Element of A*(~P^n) = Z[alpha,xi]/(alpha^n, xi^2 - alpha*xi) written in the
// basis {1, xi^k (1<=k<=n), alpha^l (1<=l<=n-1)} with rational coefficients.
// Products of basis monomials reduce by xi^k*alpha^l = xi^{k+l} for k+l <= n
// (k >= 1) and vanish otherwise.
class ChowClass {
public:
    explicit ChowClass(int n);

    static ChowClass scalar(int n, const Rat& c);
    static ChowClass xi_power(int n, int k);     // xi^k, 1 <= k <= n
    static ChowClass alpha_power(int n, int l);  // alpha^l, 1 <= l <= n-1
    static ChowClass divisor(int n, const Rat& p, const Rat& q);  // p*xi + q*alpha

    int dim() const { return n_; }
    const Rat& coeff_one() const { return r0_; }
    const Rat& coeff_xi(int k) const;     // 1 <= k <= n
    const Rat& coeff_alpha(int l) const;  // 1 <= l <= n-1

    // Homogeneous degree-d part (degree of xi^k and alpha^k is k).
    ChowClass graded_part(int d) const;
    bool is_zero() const;

    ChowClass operator+(const ChowClass& o) const;
    ChowClass operator-(const ChowClass& o) const;
    ChowClass operator*(const ChowClass& o) const;
    ChowClass operator*(const Rat& c) const;
    ChowClass pow(int k) const;
    bool operator==(const ChowClass& o) const;

    // Integration against the point class: coefficient of xi^n.  All alpha^l
    // with l < n integrate to 0 (forced by alpha^{n-1}*xi = xi^n, alpha^n = 0).
    Rat degree() const;

    // Multiplicative inverse of a class with invertible degree-0 part.
    ChowClass inverse() const;

    std::string str() const;

private:
    int n_;
    Rat r0_;
    std::vector<Rat> r_;  // r_[k-1] = coefficient of xi^k
    std::vector<Rat> s_;  // s_[l-1] = coefficient of alpha^l
};

// Chern polynomial (1+alpha)^n (1+2xi-alpha) of the tangent bundle.
ChowClass chern_tangent(int n);

// Degree-<=n truncation of td(alpha)^n * td(xi) * td(xi-alpha),
// td(x) = x/(1-e^{-x}).
ChowClass todd_tangent(int n);

// Total Chern class 1 + p*xi + q*alpha of O(p,q).
ChowClass chern_line(int n, const TwistPair& t);

// Truncated exp(p*xi + q*alpha): the Chern character of O(p,q).
ChowClass exp_divisor(int n, const Rat& p, const Rat& q);

// chi(O(p,q)) = (1/n!)[(p+q+1)...(p+q+n) - q(q+1)...(q+n-1)].
Int chi_line(long p, long q, int n);

// Hirzebruch-Riemann-Roch pairing: deg(ch * Td).
Rat hrr_chi(const ChowClass& ch, int n);

// The polarisation O(1, N_n), N_3 = 1 and N_n = (n-3)/2 for odd n > 3.
// Even dimensions have no canonical choice and require an explicit override.
struct Polarization {
    int n;
    TwistPair twist;
    static Polarization standard(int n);  // odd n >= 3 only
    static Polarization custom(int n, TwistPair t) { return {n, t}; }
};

// omega = O(-2, 1-n).
struct CanonicalData {
    int n;
    TwistPair omega() const { return {-2, 1 - n}; }
};

// delta_L(theta) = deg(c1(theta) * c1(L)^{n-1}).
Int delta(const TwistPair& theta, const Polarization& L);
// slope = delta_L / rank for c1 given as a Chow class.
Rat slope(const ChowClass& c1, long rank, const Polarization& L);
// charge = deg(c2 * c1(L)^{n-2}).
Rat charge(const ChowClass& c2, const Polarization& L);

}  // namespace blowup
