#pragma once

#include <string>
#include <vector>

#include "blowup/instanton.hpp"

#include "json.hpp"

namespace blowup {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    nlohmann::json details;
};

struct AcceptanceRun {
    std::vector<CriterionResult> criteria;
    bool all_pass = false;

    nlohmann::json to_json() const;
};

// Run the full reproduction suite: every headline computation re-derived and
// checked against its frozen expected value or closed-form oracle.
AcceptanceRun reproduce_all();

}  // namespace blowup
