#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blowup/projcoh.hpp"
#include "blowup/sections.hpp"

using namespace blowup;

TEST_CASE("section space model dimensions") {
    for (int n : {3, 4, 5}) CHECK(h0_line_model(0, 0, n) == 1);
    CHECK(h0_line_model(2, 0, 5) == 21);
    CHECK(h0_line_model(2, -1, 4) == 5);
}

TEST_CASE("monomial basis counts match h^0") {
    for (int n : {3, 4, 5, 7})
        for (long p = 0; p <= 6; ++p)
            for (long q = -6; q <= 6; ++q) {
                SectionBasis b = SectionBasis::build(p, q, n);
                CHECK(Int(b.size()) == h_line(0, p, q, n));
                for (const auto& m : b.monomials) {
                    CHECK(static_cast<int>(m.size()) == n + 1);
                    CHECK(m[0] <= p);
                    long total = 0;
                    for (int e : m) total += e;
                    CHECK(total == p + q);
                }
            }
}

TEST_CASE("evaluation systems for the odd construction") {
    std::vector<SubvarietySpec> X = {SubvarietySpec::wp(5), SubvarietySpec::kappa(5)};
    EvalSystem a = restrict_matrix(X, 1, -1);
    CHECK(a.source_dim == 1);
    CHECK(h0_ideal(X, 1, -1) == 0);
    CHECK(h0_ideal(X, 0, 1) == 0);
    CHECK(h0_ideal(X, 2, 0) == 10);
    for (long p = -15; p <= -1; ++p) CHECK(h0_ideal(X, 1 - p, p - 1) == 0);
}

TEST_CASE("evaluation system for the even construction") {
    std::vector<SubvarietySpec> X = {SubvarietySpec::q1(), SubvarietySpec::q2()};
    EvalSystem es = restrict_matrix(X, 2, -1);
    CHECK(es.source_dim == 5);
    CHECK(es.target_dim == 4);
    long kernel = es.source_dim - es.restriction.augment(es.ideal_slice).rank() +
                  es.ideal_slice.rank();
    CHECK(kernel >= 1);
    CHECK(h0_ideal(X, 2, -1) == 1);
}

TEST_CASE("h0 is stable under random generic coefficients") {
    std::vector<SubvarietySpec> X = {SubvarietySpec::wp(5), SubvarietySpec::kappa(5)};
    for (std::uint64_t seed : {1u, 7u, 12345u}) {
        GenericityConfig cfg{true, seed};
        CHECK(h0_ideal(X, 2, 0, cfg) == 10);
        CHECK(h0_ideal(X, 1, -1, cfg) == 0);
    }
}

TEST_CASE("h0 of the ideal is monotone under twist increase") {
    std::vector<SubvarietySpec> X = {SubvarietySpec::wp(5), SubvarietySpec::kappa(5)};
    for (long p = 0; p <= 3; ++p)
        for (long q = -3; q <= 3; ++q) {
            long base = h0_ideal(X, p, q);
            CHECK(h0_ideal(X, p + 1, q) >= base);
            CHECK(h0_ideal(X, p, q + 1) >= base);
        }
}

TEST_CASE("component model cohomology") {
    SubvarietySpec wp = SubvarietySpec::wp(5);
    CHECK(h_model(wp, 0, 0) == 1);
    CHECK(h_model(wp, 1, 0) == 0);
    CHECK(h_model(wp, 0, 2) == h0_line_model(2, 0, 3));
    SubvarietySpec q1 = SubvarietySpec::q1();
    CHECK(h_model(q1, 0, 0) == 1);
    CHECK(h_model(q1, 1, 0) == 0);
    CHECK(h_model(q1, 2, 0) == 0);
}

TEST_CASE("matrix rank over the rationals") {
    QMatrix m(3, 3);
    m.at(0, 0) = Rat(1); m.at(0, 1) = Rat(2); m.at(0, 2) = Rat(3);
    m.at(1, 0) = Rat(2); m.at(1, 1) = Rat(4); m.at(1, 2) = Rat(6);
    m.at(2, 0) = Rat(0); m.at(2, 1) = Rat(1); m.at(2, 2) = Rat(1);
    CHECK(m.rank() == 2);
    CHECK(m.kernel_dim() == 1);
}
