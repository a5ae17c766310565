#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qgw {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// The eleven acceptance criteria, evaluated in order. `onResult` is called
/// as each one finishes. `only` restricts the run to the listed ids.
std::vector<CriterionResult> runAcceptance(const std::function<void(const CriterionResult&)>& onResult = {},
                                           const std::vector<int>& only = {});

std::string formatResult(const CriterionResult& r);

}  // namespace qgw
