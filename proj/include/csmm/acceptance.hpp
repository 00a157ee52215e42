#pragma once

#include <functional>
#include <string>
#include <vector>

namespace csmm {

struct CriterionResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;  // headline quantity for the one-line report
    std::string detail;     // clause-by-clause breakdown
};

// Replaceable internals for self-checks of the suite itself: a deliberately
// biased scalar risk must make the affected criteria fail.
struct AcceptanceHooks {
    std::function<double(double, double)> scalar_mse;  // (mu, tau) -> risk

    static AcceptanceHooks defaults();
};

// Names in run order: A1..A10.
const std::vector<std::string>& acceptance_names();

CriterionResult run_criterion(const std::string& name, const AcceptanceHooks& hooks);
CriterionResult run_criterion(const std::string& name);

// Empty subset runs everything.
std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& subset = {});

std::string format_criterion_line(const CriterionResult& r);

}  // namespace csmm
