#ifndef SYMPJET_CLI_HPP
#define SYMPJET_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <sympjet/serialize.hpp>

namespace sympjet
{

struct JobOverrides {
    std::optional<unsigned> order;
    std::optional<std::uint64_t> seed;
};

// Runs one job and returns its report. Never throws: malformed jobs and
// domain errors are recorded in the report with their exit status
// (1 malformed input, 2 domain error).
Json run_job(const Json &job, const JobOverrides &overrides = {});
// Same, starting from the text of a job file; JSON syntax errors are reported
// with their line and column.
Json run_job_text(const std::string &text, const JobOverrides &overrides = {});

int report_exit_status(const Json &report);

// Human-readable rendering of a report; jets are printed as polynomials.
std::string render_text(const Json &report);

} // namespace sympjet

#endif
