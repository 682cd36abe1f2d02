#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <iostream>

#include "blowup/report.hpp"

using namespace blowup;

namespace {

const AcceptanceRun& run() {
    static AcceptanceRun r = reproduce_all();
    return r;
}

void check_criterion(int index) {
    const auto& cs = run().criteria;
    REQUIRE(index >= 1);
    REQUIRE(static_cast<size_t>(index) <= cs.size());
    const CriterionResult& c = cs[index - 1];
    std::cout << "criterion " << c.index << ": " << (c.pass ? "PASS" : "FAIL")
              << " - " << c.name << std::endl;
    INFO(c.details.dump(2));
    CHECK(c.pass);
}

}  // namespace

TEST_CASE("criterion 1: Riemann-Roch vs closed-form chi") { check_criterion(1); }
TEST_CASE("criterion 2: formula cross-validation") { check_criterion(2); }
TEST_CASE("criterion 3: sections oracle") { check_criterion(3); }
TEST_CASE("criterion 4: slope and region") { check_criterion(4); }
TEST_CASE("criterion 5: charges") { check_criterion(5); }
TEST_CASE("criterion 6: golden cohomology table") { check_criterion(6); }
TEST_CASE("criterion 7: monad and index tables") { check_criterion(7); }
TEST_CASE("criterion 8: instanton verdicts") { check_criterion(8); }
TEST_CASE("criterion 9: even-case failure") { check_criterion(9); }
TEST_CASE("criterion 10: divisor restrictions") { check_criterion(10); }
TEST_CASE("criterion 11: property-based checks") { check_criterion(11); }
TEST_CASE("criterion 12: documented comparisons") { check_criterion(12); }
