#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ternion::verify {

//! Outcome of one randomized property check.
struct PropertyResult {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;          //!< worst error against its tolerance
    std::string counterexample;  //!< JSON of the first failing input, empty on success
};

//! Suites accepted by run_suite besides "all".
const std::vector<std::string>& suite_names();

/*!
 * Run a property suite with samples drawn from mt19937_64.
 *
 * Each property seeds its own generator from (seed, property index), so results
 * do not depend on which other properties ran. Throws ConfigError for an
 * unknown suite name.
 */
std::vector<PropertyResult> run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace ternion::verify
