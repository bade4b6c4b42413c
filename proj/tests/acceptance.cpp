#include <sympjet/acceptance.hpp>

#include <iostream>

int main()
{
    int failed = 0;
    sympjet::run_acceptance([&](const sympjet::CriterionResult &r) {
        std::cout << sympjet::format_result(r) << std::endl;
        failed += r.pass ? 0 : 1;
    });
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
    return failed == 0 ? 0 : 1;
}
