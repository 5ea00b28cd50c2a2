#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wlstar/automaton_io.hpp"

namespace wlstar::cli {

enum ExitCode : int {
  ok = 0,
  different = 1, // non-equivalent automata or failed verification
  bad_input = 2,
  oracle_inconsistent = 3,
  iteration_cap = 4,
};

// Everything `learn` knows about a run. Round-trips through report_to_json /
// report_from_json.
struct RunReport {
  struct Stats {
    std::size_t membership_queries = 0;
    std::size_t distinct_membership_queries = 0;
    std::size_t equivalence_queries = 0;
    std::size_t consistency_fixes = 0;
    std::size_t closure_fixes = 0;
    std::size_t null_row_repairs = 0;
    std::vector<std::string> counterexamples;
    std::vector<std::size_t> dim_history;
    std::vector<std::size_t> hypothesis_dims;
    std::size_t cells_stamped = 0;
    std::size_t iterations = 0;
    double wall_time_seconds = 0;
    bool operator==(const Stats&) const = default;
  };
  struct Verification {
    std::optional<std::size_t> depth;
    std::optional<bool> passed;
    std::optional<std::string> counterexample;
    bool operator==(const Verification&) const = default;
  };
  struct Config {
    std::string semifield;
    double tolerance = 0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> max_iterations;
    bool operator==(const Config&) const = default;
  };

  Json automaton;
  Stats stats;
  Verification verification;
  Config config;

  bool operator==(const RunReport&) const = default;
};

Json report_to_json(const RunReport& report);
RunReport report_from_json(const Json& j);

// Prints the error to err and returns the matching exit code.
int handle_error(const Error& e, std::ostream& err);

// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wlstar::cli
