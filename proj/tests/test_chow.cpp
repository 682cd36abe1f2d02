#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blowup/chow.hpp"

using namespace blowup;

TEST_CASE("ring rewrite rules") {
    int n = 5;
    ChowClass xi = ChowClass::xi_power(n, 1);
    ChowClass al = ChowClass::alpha_power(n, 1);
    CHECK(xi * al == ChowClass::xi_power(n, 2));
    CHECK((al.pow(5)).is_zero());
    // (xi + alpha)^4 = 15 xi^4 + alpha^4
    ChowClass s = (xi + al).pow(4);
    CHECK(s.coeff_xi(4) == Rat(15));
    CHECK(s.coeff_alpha(4) == Rat(1));
    CHECK(s.coeff_xi(3) == Rat(0));
    CHECK(s.coeff_alpha(3) == Rat(0));
}

TEST_CASE("integration against the point class") {
    int n = 5;
    CHECK(ChowClass::xi_power(n, 5).degree() == Rat(1));
    ChowClass s = (ChowClass::xi_power(n, 1) + ChowClass::alpha_power(n, 1)).pow(4);
    CHECK((ChowClass::alpha_power(n, 1) * s).degree() == Rat(15));
    CHECK((ChowClass::xi_power(n, 1) * s).degree() == Rat(16));
    CHECK(ChowClass::alpha_power(n, 4).degree() == Rat(0));
}

TEST_CASE("multiplication is commutative and associative") {
    int n = 5;
    std::vector<ChowClass> cs = {
        ChowClass::divisor(n, Rat(1), Rat(2)),
        ChowClass::divisor(n, Rat(-3), Rat(1)),
        ChowClass::xi_power(n, 2) + ChowClass::alpha_power(n, 1) * Rat(7),
    };
    for (const auto& a : cs)
        for (const auto& b : cs) {
            CHECK(a * b == b * a);
            for (const auto& c : cs) CHECK((a * b) * c == a * (b * c));
        }
}

TEST_CASE("inverse of a unit class") {
    int n = 5;
    ChowClass c = ChowClass::scalar(n, 1) + ChowClass::divisor(n, Rat(2), Rat(-1)) +
                  ChowClass::xi_power(n, 2) * Rat(3);
    CHECK(c * c.inverse() == ChowClass::scalar(n, 1));
}

TEST_CASE("tangent bundle classes") {
    for (int n : {3, 4, 5, 7}) {
        ChowClass c1 = chern_tangent(n).graded_part(1);
        // c1(T) = 2 xi + (n-1) alpha = -c1(omega)
        CHECK(c1.coeff_xi(1) == Rat(2));
        CHECK(c1.coeff_alpha(1) == Rat(n - 1));
        CanonicalData can{n};
        CHECK(can.omega() == TwistPair{-2, 1 - n});
        CHECK(todd_tangent(n).coeff_one() == Rat(1));
    }
}

TEST_CASE("closed-form Euler characteristic") {
    for (int n : {3, 4, 5, 7}) CHECK(chi_line(0, 0, n) == 1);
    CHECK(chi_line(1, -1, 5) == 1);
    for (int n : {3, 4, 5, 7})
        for (long q = -6; q <= 6; ++q) CHECK(chi_line(-1, q, n) == 0);
}

TEST_CASE("Riemann-Roch pairing") {
    for (int n : {3, 4, 5, 7})
        CHECK(hrr_chi(ChowClass::scalar(n, 1), n) == Rat(1));
    for (int n : {3, 5, 6})
        for (long p = -4; p <= 4; ++p)
            for (long q = -4; q <= 4; ++q)
                CHECK(hrr_chi(exp_divisor(n, Rat(p), Rat(q)), n) ==
                      Rat(chi_line(p, q, n)));
}

TEST_CASE("polarisation, slope, and charge") {
    Polarization L5 = Polarization::standard(5);
    CHECK(L5.twist == TwistPair{1, 1});
    CHECK(Polarization::standard(3).twist == TwistPair{1, 1});
    CHECK(Polarization::standard(7).twist == TwistPair{1, 2});
    CHECK(delta({1, 0}, L5) == 16);
    CHECK(delta({0, 1}, L5) == 15);
    ChowClass c1 = ChowClass::alpha_power(5, 1) * Rat(-2);
    CHECK(slope(c1, 2, L5) == Rat(-15));
    CHECK(charge(ChowClass::xi_power(5, 2), L5) == Rat(8));
    for (int n : {5, 7, 9}) {
        Polarization L = Polarization::standard(n);
        Int expected;
        mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>((n - 1) / 2),
                      static_cast<unsigned long>(n - 2));
        CHECK(charge(ChowClass::xi_power(n, 2), L) == Rat(expected));
    }
}
