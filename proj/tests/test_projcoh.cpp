#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blowup/projcoh.hpp"

using namespace blowup;

TEST_CASE("line bundle cohomology spot values") {
    CHECK(h_line(0, 1, -1, 5) == 1);
    for (int i = 1; i <= 5; ++i) CHECK(h_line(i, 1, -1, 5) == 0);
    CHECK(h_line(0, 3, 1, 5) == 125);
    // total vanishing across the exceptional twists
    for (int n : {3, 4, 5}) {
        for (long k = 1; k <= n - 1; ++k)
            for (int i = 0; i <= n; ++i) CHECK(h_line(i, 0, -k, n) == 0);
        for (long m = 2 - n; m <= 1; ++m)
            for (int i = 0; i <= n; ++i) CHECK(h_line(i, -1, m, n) == 0);
    }
}

TEST_CASE("twisted differentials spot values") {
    for (int n : {4, 5})
        for (int l = 0; l <= n - 1; ++l) {
            CHECK(h_omega(l, l, 0, 0, n) == 1);
            for (int i = 0; i <= n; ++i)
                if (i != l) CHECK(h_omega(i, l, 0, 0, n) == 0);
        }
    CHECK(h_omega(0, 1, 0, 2, 5) == 10);
    for (int l = 0; l <= 4; ++l)
        for (long q = -5; q <= 5; ++q)
            for (int i = 0; i <= 5; ++i) CHECK(h_omega(i, l, -1, q, 5) == 0);
}

TEST_CASE("alternating sums match the Euler characteristic") {
    for (int n : {3, 4, 5, 6, 7})
        for (long p = -8; p <= 8; ++p)
            for (long q = -8; q <= 8; ++q) {
                Int alt = 0;
                auto h = h_line_all(p, q, n);
                for (int i = 0; i <= n; ++i) alt += (i % 2 == 0 ? h[i] : -h[i]);
                CHECK(alt == chi_line(p, q, n));
            }
}

TEST_CASE("Serre duality and middle vanishing") {
    for (int n : {3, 4, 5, 7})
        for (long p = -6; p <= 6; ++p)
            for (long q = -6; q <= 6; ++q)
                for (int i = 0; i <= n; ++i) {
                    CHECK(h_line(i, p, q, n) == h_line(n - i, -2 - p, 1 - n - q, n));
                    if (i >= 2 && i <= n - 2) CHECK(h_line(i, p, q, n) == 0);
                }
}

TEST_CASE("closed-form rows agree with the pushforward rule") {
    for (int n : {3, 4, 5, 6})
        for (long p = -5; p <= 5; ++p)
            for (long q = -5; q <= 5; ++q) {
                for (int i : {0, 1, n - 1, n})
                    CHECK(h_line(i, p, q, n) == hi_lib_row(i, p, q, n));
                for (int l = 0; l <= n - 1; ++l)
                    for (int i : {0, 1, n - 1, n})
                        CHECK(h_omega(i, l, p, q, n) == hi_omega_row(i, l, p, q, n));
            }
}

TEST_CASE("omega at l = 0 reduces to line bundles") {
    for (long p = -4; p <= 4; ++p)
        for (long q = -4; q <= 4; ++q)
            for (int i = 0; i <= 5; ++i)
                CHECK(h_omega(i, 0, p, q, 5) == h_line(i, p, q, 5));
}

TEST_CASE("Bott base table") {
    BottTable b{4};
    CHECK(b.h_line(0, 3) == 35);
    CHECK(b.h_line(4, -5) == 1);
    CHECK(b.h_line(1, -2) == 0);
    CHECK(b.h_omega(1, 1, 0) == 1);
    CHECK(b.h_omega(0, 1, 2) == 10);
    CHECK(b.h_omega(4, 4, 0) == 1);
}

TEST_CASE("exceptional collection") {
    ExceptionalReport r5 = exceptional_collection(5);
    CHECK(r5.bundles.size() == 10);
    CHECK(r5.all_vanish_except_structure);
    CHECK(r5.hom_orthogonal);
    ExceptionalReport r3 = exceptional_collection(3);
    CHECK(r3.bundles.size() == 6);
    CHECK(r3.all_vanish_except_structure);
    CHECK(r3.hom_orthogonal);
}
