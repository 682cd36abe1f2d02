#pragma once

#include <vector>

#include "blowup/chow.hpp"
#include "blowup/rational.hpp"

namespace blowup {

// Cohomology of line bundles and twisted differentials on the base P^dim
// (Bott's formulae).  Nonzero only for i = 0 (m > l), i = l (m = 0, value 1)
// and i = dim (m < l - dim).
struct BottTable {
    int dim;

    // h^i(P^dim, O(m))
    Int h_line(int i, long m) const;
    // h^i(P^dim, Omega^l(m))
    Int h_omega(int i, int l, long m) const;
};

// h^i(~P^n, O(p,q)) via the pushforward to P^{n-1}:
//   p >= 0 : sum_{k=0}^{p}    h^i(P^{n-1}, O(q+k))
//   p = -1 : 0
//   p <= -2: sum_{k=0}^{-2-p} h^{i-1}(P^{n-1}, O(q-k-1))
Int h_line(int i, long p, long q, int n);

// Same rule with base terms h^*(P^{n-1}, Omega^l(m)).
Int h_omega(int i, int l, long p, long q, int n);

// All of h^0..h^n at once.
std::vector<Int> h_line_all(long p, long q, int n);
std::vector<Int> h_omega_all(int l, long p, long q, int n);

// The printed closed-form rows, kept separate from the pushforward rule as an
// independent cross-check (each row on its own p-domain).
Int hi_lib_row(int i, long p, long q, int n);
Int hi_omega_row(int i, int l, long p, long q, int n);

struct ExceptionalReport {
    std::vector<TwistPair> bundles;
    bool all_vanish_except_structure = false;  // total vanishing, O(0,0) has h^0=1
    bool hom_orthogonal = false;               // h^*(theta_j^v ox theta_k) = 0, j > k
};

// O(-1,2-n),...,O(-1,1), O(0,1-n),...,O(0,0) with the verification run.
ExceptionalReport exceptional_collection(int n);

}  // namespace blowup
