#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blowup/instanton.hpp"
#include "blowup/lessolver.hpp"
#include "blowup/projcoh.hpp"

using namespace blowup;

TEST_CASE("interval arithmetic basics") {
    DimInterval e = DimInterval::exact_val(3);
    CHECK(e.exact());
    CHECK(e.contains(3));
    CHECK_FALSE(e.contains(4));
    DimInterval r = DimInterval::range(1, 5);
    CHECK_FALSE(r.exact());
    CHECK(r.contains(5));
    CHECK(DimInterval::at_least(2).contains(100));
}

TEST_CASE("split bundles are recovered exactly") {
    Registry reg;
    auto a = line(5, {2, 1});
    auto b = omega(5, 2, {-3, 4});
    auto s = sum({a, b});
    reg.add_ses({"split", a, s, b, "USER-AXIOM"});
    CohomologySolver sol(reg);
    sol.track(s);
    sol.instantiate_twists({{0, 0}});
    for (int i = 0; i <= 5; ++i) {
        DimInterval v = sol.h(s, i);
        CHECK(v.exact());
        CHECK(v.lo == h_line(i, 2, 1, 5) + h_omega(i, 2, -3, 4, 5));
    }
}

TEST_CASE("sequence chase pins the prototype table entries") {
    Build b = build_odd(5);
    CohomologySolver sol(*b.reg);
    std::vector<TwistPair> box;
    for (long p = -4; p <= 2; ++p)
        for (long q = -7; q <= 3; ++q) box.push_back({p, q});
    sol.instantiate_twists(box);
    sol.add_duality_links();
    DimInterval v = sol.h(twist(b.E, {0, -4}), 4);
    CHECK(v.exact());
    CHECK(v.lo == 6);
    DimInterval w = sol.h(twist(b.E, {-1, 1}), 1);
    CHECK(w.exact());
    CHECK(w.lo == 1);
}

TEST_CASE("adding a fact never widens an interval") {
    Build b = build_odd(5);
    CohomologySolver sol(*b.reg);
    sol.instantiate_twists({{0, 0}, {1, 1}, {-1, -1}});
    ExprPtr e = b.E;
    DimInterval before = sol.h(e, 0);
    sol.add_fact(e, 0, DimInterval::range(0, before.has_hi ? before.hi : 10), "USER");
    DimInterval after = sol.h(e, 0);
    CHECK(after.lo >= before.lo);
    if (before.has_hi) {
        CHECK(after.has_hi);
        CHECK(after.hi <= before.hi);
    }
}

TEST_CASE("contradictory facts are rejected") {
    Registry reg;
    CohomologySolver sol(reg);
    auto e = line(5, {0, 0});
    sol.track(e);  // seeds h^0 = 1 exactly
    CHECK_THROWS(sol.add_fact(e, 0, DimInterval::exact_val(3), "USER"));
}

TEST_CASE("delta01 equals chi when higher cohomology vanishes") {
    Registry reg;
    CohomologySolver sol(reg);
    for (long p : {0L, 1L, 2L}) {
        auto e = line(5, {p, -1});
        SignedInterval d = sol.delta01(e);
        CHECK(d.exact());
        CHECK(d.lo == chi_line(p, -1, 5));
    }
}

TEST_CASE("traces are deterministic and replayable") {
    auto run = [] {
        Build b = build_odd(5);
        CohomologySolver sol(*b.reg);
        std::vector<TwistPair> box;
        for (long p = -2; p <= 2; ++p)
            for (long q = -4; q <= 2; ++q) box.push_back({p, q});
        sol.instantiate_twists(box);
        sol.add_duality_links();
        sol.solve();
        return sol.trace();
    };
    auto t1 = run();
    auto t2 = run();
    CHECK(!t1.empty());
    CHECK(t1 == t2);
}

TEST_CASE("solver report serialises") {
    Registry reg;
    CohomologySolver sol(reg);
    sol.track(line(4, {1, 1}));
    sol.solve();
    auto j = sol.report();
    CHECK(j.is_object());
}
