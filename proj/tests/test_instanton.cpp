#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blowup/instanton.hpp"

using namespace blowup;

TEST_CASE("construction invariants") {
    Build b5 = build_odd(5);
    CHECK(b5.n == 5);
    CHECK(b5.L.twist == TwistPair{1, 1});
    CHECK(b5.reg->named_data("E")->rank == 2);
    CHECK_THROWS(build_odd(4));
    CHECK_THROWS(build_odd(3));
    Build b4 = build_even4();
    CHECK(b4.L.twist == TwistPair{1, 1});
    CHECK(b4.S == TwistPair{2, 1});
}

TEST_CASE("prototype verdict") {
    InstantonReport rep = check(build_odd(5));
    CHECK(rep.verdict == "INSTANTON");
    for (const auto& it : rep.items) CHECK(it.verdict == "PASS");
    CHECK(rep.middle.sampled_ok);
    CHECK(rep.middle.symbolic_ok);
    CHECK(rep.c1_ok);
    CHECK(rep.det == TwistPair{0, -2});
    CHECK(rep.charge_value == Rat(8));
    REQUIRE(rep.stability.has_value());
    CHECK(rep.stability->verdict == "SEMISTABLE-CERTIFIED");
    CHECK(rep.stability->cases.size() <= 40);
    REQUIRE(rep.monad.has_value());
    CHECK(rep.monad->str() ==
          "O(-1,-1) -> O(-1,0) + O(0,-1)^6 -> Omega^3(0,3)");
}

TEST_CASE("seven-dimensional verdict") {
    InstantonReport rep = check(build_odd(7));
    CHECK(rep.verdict == "INSTANTON");
    CHECK(rep.det == TwistPair{0, -2});
    CHECK(rep.charge_value == Rat(243));
}

TEST_CASE("even example: vanishing holds, semistability fails") {
    InstantonReport rep = check(build_even4());
    for (const auto& it : rep.items) CHECK(it.verdict == "PASS");
    CHECK(rep.middle.sampled_ok);
    CHECK(rep.middle.symbolic_ok);
    CHECK(rep.c1_ok);
    CHECK(rep.charge_value == Rat(2));
    REQUIRE(rep.stability.has_value());
    CHECK(rep.stability->verdict == "VIOLATION");
    CHECK(rep.verdict == "NOT-INSTANTON");
}

TEST_CASE("middle-range bound vanishes identically") {
    Build b = build_odd(5);
    for (long a = -7; a <= 7; ++a)
        for (long q = -7; q <= 7; ++q)
            for (int i = 2; i <= 3; ++i) CHECK(middle_bound(b, a, q, i) == 0);
    MiddleRangeResult mr = middle_vanishing(b, 7);
    CHECK(mr.sampled_ok);
    CHECK(mr.symbolic_ok);
}

TEST_CASE("elementary transform stays an instanton") {
    Build b = build_odd(5);
    InstantonReport rep = check_elementary(b, SubvarietySpec::wp(5));
    for (const auto& it : rep.items) CHECK(it.verdict == "PASS");
    CHECK(rep.verdict == "INSTANTON");
    CHECK(rep.charge_value > Rat(8));
}

TEST_CASE("restriction to the hyperplane divisor") {
    Build b = build_odd(5);
    auto rows = restrict_to_divisor(b, "H", -3, 3);
    CHECK(rows.size() == 7);
    for (const auto& r : rows) {
        CHECK(r.chi_match);
        CHECK(r.h2_zero);
        CHECK(r.exact_entries_match);
        if (r.k == 0)
            for (int i = 0; i <= 4; ++i) {
                CHECK(r.table[i].exact());
                CHECK(r.table[i].lo == 0);
            }
    }
}

TEST_CASE("restriction to the exceptional divisor") {
    Build b = build_odd(5);
    auto rows = restrict_to_divisor(b, "E", -3, 3);
    for (const auto& r : rows) {
        CHECK(r.chi_match);
        CHECK(r.h2_zero);
        CHECK(r.exact_entries_match);
        if (r.k == 0) {
            CHECK(r.table[0].exact());
            CHECK(r.table[0].lo == 1);
            for (int i = 1; i <= 4; ++i) {
                CHECK(r.table[i].exact());
                CHECK(r.table[i].lo == 0);
            }
        }
    }
}

TEST_CASE("moduli bookkeeping chain") {
    ModuliReport m = moduli_dimension(build_odd(5));
    CHECK(m.delta_ix.exact());
    CHECK(m.delta_ix.lo == 10);
    CHECK(m.normal_term == 12);
    CHECK(m.higher_vanish);
    CHECK(m.delta_i2 == -2);
    CHECK(m.delta_ee == -4);
    CHECK(m.h0_ek == DimInterval::range(0, 6));
    CHECK(m.h0_ee == DimInterval::range(1, 7));
    CHECK(m.h1_ee == DimInterval::range(5, 11));
    CHECK(!m.trace.empty());
}

TEST_CASE("twisted vanishing families") {
    UlrichReport u = ulrich_check(build_odd(5));
    for (const auto& it : u.items) {
        INFO(it.label);
        if (!(it.twist == TwistPair{-5, -5} && it.i == 5)) CHECK(it.vanishes);
    }
    CHECK(u.only_failure_at_top);
    CHECK(u.failure.exact());
    CHECK(u.failure.lo == 106);
}
