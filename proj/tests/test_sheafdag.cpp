#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blowup/projcoh.hpp"
#include "blowup/sheafdag.hpp"

using namespace blowup;

TEST_CASE("twist normalisation folds into nodes") {
    int n = 5;
    CHECK(twist(line(n, {1, 2}), {2, -1})->key() == line(n, {3, 1})->key());
    auto ix = ideal_twist({SubvarietySpec::wp(n), SubvarietySpec::kappa(n)}, {2, 0});
    CHECK(twist(ix, {-1, 1})->key() ==
          ideal_twist({SubvarietySpec::wp(n), SubvarietySpec::kappa(n)}, {1, 1})->key());
    auto p = push(SubvarietySpec::wp(n), 0);
    CHECK(twist(p, {1, 1})->key() ==
          push(SubvarietySpec::wp(n), SubvarietySpec::wp(n).restriction_degree(1, 1))->key());
    auto s = sum({line(n, {0, 0}), omega(n, 2, {1, 0})});
    auto st = twist(s, {1, 1});
    CHECK(st->children[0]->key() == line(n, {1, 1})->key());
    CHECK(st->children[1]->key() == omega(n, 2, {2, 1})->key());
}

TEST_CASE("twist normalisation is confluent") {
    int n = 5;
    std::vector<ExprPtr> nodes = {
        line(n, {1, -2}), omega(n, 3, {0, 1}),
        ideal_twist({SubvarietySpec::wp(n)}, {2, 0}),
        push(SubvarietySpec::kappa(n), 1),
        sum({line(n, {0, 0}), line(n, {-1, 1})}),
    };
    for (const auto& e : nodes) {
        auto a = twist(twist(e, {2, -1}), {-1, 3});
        auto b = twist(twist(e, {-1, 3}), {2, -1});
        auto c = twist(e, {1, 2});
        CHECK(a->key() == b->key());
        CHECK(a->key() == c->key());
    }
}

TEST_CASE("Serre construction records and Chern data") {
    Registry reg;
    auto X = std::vector<SubvarietySpec>{SubvarietySpec::wp(5), SubvarietySpec::kappa(5)};
    ExprPtr F = serre_construct(X, {2, 0}, "E", reg);
    CHECK(reg.named_data("E")->rank == 2);
    REQUIRE(!reg.sequences().empty());
    ChowClass cF = chern_of(F, reg);
    CHECK(cF.graded_part(1) == ChowClass::xi_power(5, 1) * Rat(2));
    // E = F(-1,-1): c1 = -2 alpha, c2 = xi^2
    ExprPtr E = twist(F, {-1, -1});
    ChowClass cE = chern_of(E, reg);
    CHECK(cE.graded_part(1) == ChowClass::alpha_power(5, 1) * Rat(-2));
    CHECK(cE.graded_part(2) == ChowClass::xi_power(5, 2));
}

TEST_CASE("even-dimensional construction Chern data") {
    Registry reg;
    auto X = std::vector<SubvarietySpec>{SubvarietySpec::q1(), SubvarietySpec::q2()};
    ExprPtr F = serre_construct(X, {2, 1}, "E", reg);
    ExprPtr E = twist(F, {-1, -1});
    ChowClass cE = chern_of(E, reg);
    CHECK(cE.graded_part(1) == ChowClass::alpha_power(4, 1) * Rat(-1));
    ChowClass want_c2 = (ChowClass::xi_power(4, 2) - ChowClass::alpha_power(4, 2)) * Rat(2);
    CHECK(cE.graded_part(2) == want_c2);
}

TEST_CASE("Whitney consistency on registered sequences") {
    Registry reg;
    auto X = std::vector<SubvarietySpec>{SubvarietySpec::wp(5), SubvarietySpec::kappa(5)};
    ExprPtr F = serre_construct(X, {2, 0}, "E", reg);
    elementary_transform(twist(F, {-1, -1}), SubvarietySpec::wp(5), "G", reg);
    for (const auto& ses : reg.sequences())
        CHECK(chern_of(ses.sub, reg) * chern_of(ses.quot, reg) ==
              chern_of(ses.mid, reg));
}

TEST_CASE("split bundle total Chern class") {
    Registry reg;
    auto s = sum({line(5, {1, 0}), line(5, {-1, 0})});
    CHECK(chern_of(s, reg) ==
          ChowClass::scalar(5, 1) - ChowClass::xi_power(5, 2));
}

TEST_CASE("Chern character is additive and matches Riemann-Roch") {
    Registry reg;
    auto a = line(5, {2, -1});
    auto b = omega(5, 2, {0, 1});
    auto s = sum({a, b});
    CHECK(chern_character(s, reg) ==
          chern_character(a, reg) + chern_character(b, reg));
    Int chi = 0;
    for (int i = 0; i <= 5; ++i) {
        Int v = h_line(i, 2, -1, 5) + h_omega(i, 2, 0, 1, 5);
        chi += (i % 2 == 0 ? v : -v);
    }
    CHECK(hrr_chi(chern_character(s, reg), 5) == Rat(chi));
}

TEST_CASE("prototype Euler characteristic vanishes") {
    Registry reg;
    auto X = std::vector<SubvarietySpec>{SubvarietySpec::wp(5), SubvarietySpec::kappa(5)};
    ExprPtr E = twist(serre_construct(X, {2, 0}, "E", reg), {-1, -1});
    CHECK(hrr_chi(chern_character(E, reg), 5) == Rat(0));
}

TEST_CASE("elementary transform raises the charge") {
    Registry reg;
    auto X = std::vector<SubvarietySpec>{SubvarietySpec::wp(5), SubvarietySpec::kappa(5)};
    ExprPtr E = twist(serre_construct(X, {2, 0}, "E", reg), {-1, -1});
    ExprPtr G = elementary_transform(E, SubvarietySpec::wp(5), "G", reg);
    ChowClass c2G = chern_of(G, reg).graded_part(2);
    CHECK(c2G == chern_of(E, reg).graded_part(2) + SubvarietySpec::wp(5).cycle_class());
    Polarization L = Polarization::standard(5);
    CHECK(charge(c2G, L) > Rat(8));
}

TEST_CASE("closed-form h of expression nodes") {
    CHECK(h_exact(line(5, {3, 1}), 0) == Int(125));
    CHECK(h_exact(omega(5, 1, {0, 2}), 0) == Int(10));
    CHECK(h_exact(sum({line(5, {1, -1}), line(5, {0, 0})}), 0) == Int(2));
    auto ix = ideal_twist({SubvarietySpec::wp(5), SubvarietySpec::kappa(5)}, {2, 0});
    CHECK(h_exact(ix, 0).has_value());
    CHECK(*h_exact(ix, 0) == Int(10));
    CHECK_FALSE(h_exact(named(5, "mystery"), 0).has_value());
}

TEST_CASE("expression JSON round trip") {
    auto exprs = std::vector<ExprPtr>{
        line(5, {1, -2}),
        omega(5, 3, {0, 1}),
        push(SubvarietySpec::kappa(5), 2),
        ideal_twist({SubvarietySpec::wp(5), SubvarietySpec::kappa(5)}, {2, 0}),
        sum({line(5, {0, 0}), omega(5, 1, {1, 1})}),
        named(5, "E", {1, 0}),
    };
    for (const auto& e : exprs)
        CHECK(expr_from_json(expr_to_json(e))->key() == e->key());
}
