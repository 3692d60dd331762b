#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>

#include "ternion/config.hpp"

namespace ternion::cli {

//! Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,        //!< failed property, SingularApproach, or runtime error
    exit_usage = 2,          //!< empty or invalid configuration
    exit_all_rows_failed = 3 //!< every scatter grid point failed
};

//! Worker threads for a batch of jobs: hardware concurrency capped by TERNION_THREADS.
unsigned thread_count(std::size_t jobs);

//! Run job(i) for i in [0, n) on thread_count(n) threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job);

//! Fill in the default output and manifest paths of a command.
RunConfig resolve_paths(RunConfig c);

// Each command expects a validated configuration with resolved paths. Setup
// errors caused by the configuration are raised as ConfigError.
int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_scatter(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_integrate_form(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_field_scan(const RunConfig& c, std::ostream& out, std::ostream& err);

//! Parse the command line, load and validate the configuration, and dispatch.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ternion::cli
