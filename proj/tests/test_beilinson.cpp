#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blowup/beilinson.hpp"
#include "blowup/instanton.hpp"
#include "blowup/projcoh.hpp"

using namespace blowup;

namespace {

void prepare(CohomologySolver& sol, const Build& b) {
    std::vector<TwistPair> box;
    for (long p = -4; p <= 2; ++p)
        for (long q = -static_cast<long>(b.n) - 2; q <= 3; ++q)
            box.push_back({p, q});
    sol.instantiate_twists(box);
    for (long a = -3; a <= 3; ++a)
        for (long bq = -static_cast<long>(b.n) - 1; bq <= 4; ++bq)
            for (int i = 2; i <= b.n - 2; ++i)
                if (middle_bound(b, a, bq, i) == 0)
                    sol.add_fact(twist(b.E, {a, bq}), i,
                                 DimInterval::exact_val(0), "FORMULA");
    sol.add_duality_links();
}

}  // namespace

TEST_CASE("index tables for the three displayed degrees") {
    for (int n : {5, 7}) {
        auto tm1 = contribution_tables(-1, n);
        REQUIRE(tm1.size() == 4);
        CHECK(tm1[0].s == 0);
        CHECK(tm1[0].entries.size() == 2);
        CHECK(tm1[0].entries[0].h == 0);
        CHECK(tm1[0].entries[0].q == 1);
        CHECK(tm1[0].entries[1].h == 1);
        CHECK(tm1[0].entries[1].q == 0);
        CHECK(tm1[2].s == n - 1);
        REQUIRE(tm1[2].entries.size() == 1);
        CHECK(tm1[2].entries[0].h == 1);
        CHECK(tm1[2].entries[0].q == n - 1);

        auto t0 = contribution_tables(0, n);
        CHECK(t0[0].entries.size() == 1);
        CHECK(t0[0].entries[0].h == 0);
        CHECK(t0[0].entries[0].q == 0);
        CHECK(t0[3].s == n);
        REQUIRE(t0[3].entries.size() == 1);
        CHECK(t0[3].entries[0].h == 1);
        CHECK(t0[3].entries[0].q == n - 1);

        auto t1 = contribution_tables(1, n);
        CHECK(t1[0].entries.empty());
        CHECK(t1[1].entries.size() == 1);
        CHECK(t1[2].entries.size() == 2);
        CHECK(t1[2].entries[0].q == n - 2);
        CHECK(t1[2].entries[1].q == n - 3);
    }
    CHECK_THROWS(contribution_tables(3, 5));
}

TEST_CASE("obstruction query list for the outer degrees") {
    for (int n : {5, 7}) {
        std::vector<std::pair<TwistPair, int>> got;
        for (const auto& row : contribution_tables(2, n))
            for (const auto& e : row.entries)
                got.emplace_back(TwistPair{-e.h, e.h - e.q}, row.s);
        std::vector<std::pair<TwistPair, int>> want = {
            {{0, 3 - n}, n - 1}, {{-1, 5 - n}, n - 1},
            {{0, 2 - n}, n}, {{-1, 4 - n}, n}};
        CHECK(got == want);
    }
}

TEST_CASE("entries outside the differential range are dropped") {
    // At n = 3 the q-range [0, 2] filters several printed entries.
    for (const auto& row : contribution_tables(-1, 3))
        for (const auto& e : row.entries) {
            CHECK(e.q >= 0);
            CHECK(e.q <= 2);
        }
}

TEST_CASE("prototype monad display and ranks") {
    Build b = build_odd(5);
    CohomologySolver sol(*b.reg);
    prepare(sol, b);
    Monad m = monad_for(b.E, sol, 5);
    CHECK(m.str() == "O(-1,-1) -> O(-1,0) + O(0,-1)^6 -> Omega^3(0,3)");
    CHECK(m.cm1.rank() == 1);
    CHECK(m.c0.rank() == 7);
    CHECK(m.c1.rank() == 4);
}

TEST_CASE("monad characters recover the sheaf") {
    Build b = build_odd(5);
    CohomologySolver sol(*b.reg);
    prepare(sol, b);
    Monad m = monad_for(b.E, sol, 5);
    ChowClass lhs = m.c0.character(*b.reg) - m.cm1.character(*b.reg) -
                    m.c1.character(*b.reg);
    CHECK(lhs == chern_character(b.E, *b.reg));
}

TEST_CASE("seven-dimensional monad terms") {
    Build b = build_odd(7);
    CohomologySolver sol(*b.reg);
    prepare(sol, b);
    Monad m = monad_for(b.E, sol, 7);
    CHECK(m.str() == "O(-1,-1) -> O(-1,0) + O(0,-1)^8 -> Omega^5(0,5)");
}

TEST_CASE("line bundle spectral terms converge to the bundle") {
    Registry reg;
    CohomologySolver sol(reg);
    auto F = line(5, {-1, 0});
    Monad m = monad_for(F, sol, 5);
    CHECK(m.cm1.zero());
    CHECK(m.c1.zero());
    CHECK(m.c0.character(reg) == chern_character(F, reg));
}

TEST_CASE("nonvanishing obstruction groups are rejected") {
    // Find a line bundle with a nonzero outer-degree obstruction entry, then
    // assembly must refuse.
    Registry reg;
    for (long q = -12; q <= 0; ++q) {
        bool nonzero = false;
        for (const auto& row : contribution_tables(2, 5))
            for (const auto& e : row.entries)
                if (h_line(row.s, -e.h, q + e.h - e.q, 5) != 0) nonzero = true;
        if (!nonzero) continue;
        CohomologySolver sol(reg);
        CHECK_THROWS(monad_for(line(5, {0, q}), sol, 5));
        return;
    }
    FAIL("no obstructed twist found in the scan");
}
