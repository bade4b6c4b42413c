#ifndef SYMPJET_ACCEPTANCE_HPP
#define SYMPJET_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

namespace sympjet
{

struct CriterionResult {
    unsigned id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0; // exceeding it fails the criterion
};

// Runs the nine acceptance criteria with fixed seeds. `on_result` is called
// as each one finishes.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult &)> &on_result = {});

// "PASS  3  title: detail (1.2 s, limit 30 s)"
std::string format_result(const CriterionResult &r);

} // namespace sympjet

#endif
