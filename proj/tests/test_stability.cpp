#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blowup/instanton.hpp"
#include "blowup/stability.hpp"

using namespace blowup;

namespace {

HoppeRegion odd_region(int n) {
    Polarization L = Polarization::standard(n);
    return HoppeRegion::make(L, Rat(-delta({0, 1}, L)));
}

}  // namespace

TEST_CASE("test region on the five-dimensional blow-up") {
    HoppeRegion r = odd_region(5);
    CHECK(r.mu == Rat(-15));
    CHECK(r.cp == 16);
    CHECK(r.cq == 15);
    CHECK(r.contains(1, -2));
    CHECK_FALSE(r.contains(0, -1));
    CHECK(r.on_boundary(0, -1));
    // region is exactly q > -1 - (16/15) p
    for (long p = -30; p <= 30; ++p)
        for (long q = -40; q <= 40; ++q)
            CHECK(r.contains(p, q) == (Rat(q) > Rat(-1) - Rat(16, 15) * Rat(p)));
}

TEST_CASE("closed-form region checks") {
    for (int n : {5, 7, 9}) CHECK(odd_region(n).closed_form_check());
    Polarization L4 = Polarization::custom(4, {1, 1});
    HoppeRegion r4 = HoppeRegion::make(L4, Rat(-7, 2));
    CHECK(r4.closed_form_check());
    for (long p = -20; p <= 20; ++p)
        for (long q = -30; q <= 30; ++q)
            CHECK(r4.contains(p, q) == (Rat(q) > Rat(-1, 2) - Rat(8, 7) * Rat(p)));
}

TEST_CASE("q_min is the least q inside the region") {
    HoppeRegion r = odd_region(7);
    for (long p = -20; p <= 20; ++p) {
        long q = r.q_min(p);
        CHECK(r.contains(p, q));
        CHECK_FALSE(r.contains(p, q - 1));
    }
}

TEST_CASE("prototype is certified semistable") {
    Build b = build_odd(5);
    StabilityCertificate cert = certify(b.E, b.L, *b.reg);
    CHECK(cert.verdict == "SEMISTABLE-CERTIFIED");
    CHECK(cert.cases.size() <= 40);
    CHECK_FALSE(cert.witness.has_value());
    for (const auto& c : cert.cases) {
        CHECK(c.h0.has_hi);
        CHECK(c.h0.hi == 0);
    }
    // every region point in a sample block is covered
    for (long p = -25; p <= 10; ++p)
        for (long q = cert.region.q_min(p); q <= cert.region.q_min(p) + 6; ++q)
            CHECK(covered(cert, p, q));
}

TEST_CASE("boundary twists are reported separately") {
    Build b = build_odd(5);
    StabilityCertificate cert = certify(b.E, b.L, *b.reg);
    bool found = false;
    for (const auto& c : cert.boundary)
        if (c.p == 0 && c.q == -1) {
            found = true;
            CHECK(c.h0.lo == 1);
        }
    CHECK(found);
}

TEST_CASE("seven-dimensional construction is certified") {
    Build b = build_odd(7);
    StabilityCertificate cert = certify(b.E, b.L, *b.reg);
    CHECK(cert.verdict == "SEMISTABLE-CERTIFIED");
}

TEST_CASE("even example is refuted with the expected witness") {
    Build b = build_even4();
    StabilityCertificate cert = certify(b.E, b.L, *b.reg);
    CHECK(cert.verdict == "VIOLATION");
    REQUIRE(cert.witness.has_value());
    CHECK(cert.witness->p == -1);
    CHECK(cert.witness->q == 1);
    CHECK(cert.witness->h0.lo >= 1);
}

TEST_CASE("certificates transfer to subsheaves") {
    Build b = build_odd(5);
    StabilityCertificate cert = certify(b.E, b.L, *b.reg);
    StabilityCertificate sub = transfer_to_subsheaf(cert, "G");
    CHECK(sub.verdict == "SEMISTABLE-CERTIFIED");
    CHECK(sub.sheaf_id == "G");
    CHECK(sub.cases.size() == cert.cases.size());
}

TEST_CASE("certificate serialises with interval convention") {
    Build b = build_odd(5);
    StabilityCertificate cert = certify(b.E, b.L, *b.reg);
    auto j = cert.to_json();
    CHECK(j["verdict"] == "SEMISTABLE-CERTIFIED");
    REQUIRE(!j["cases"].empty());
    auto first = j["cases"][0];
    CHECK(first["value"].is_array());
    CHECK(first["value"].size() == 2);
}
