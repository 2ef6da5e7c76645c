#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "siri/select.hpp"
#include "siri/sim.hpp"

namespace siri::cli {

enum ExitCode { ok = 0, usage_error = 1, data_error = 2, numerical_failure = 3 };

struct RunConfig {
  std::string command;  // screen | select | cv-select | simulate | bench
  std::string input;
  std::string response = "y";
  HyperParams hyper;
  std::vector<int> q_grid{0, 1, 2, 3, 4};
  std::vector<double> alpha_grid;  // empty: grid for the data's p
  bool qnorm = false;
  bool full_ranking = false;
  std::string out;    // empty: stdout
  std::string truth;  // simulate sidecar; derived from `out` when empty
  std::string rows;   // bench per-replication CSV
  std::uint64_t seed = 1;
  int threads = 0;
  int verbosity = 0;

  // simulate / bench
  std::vector<std::string> scenarios{"2.3"};
  std::optional<int> n, p;
  std::optional<double> rho, sigma;
  PredictorLaw law = PredictorLaw::gaussian;
  int reps = 50;
  std::vector<std::string> methods{"ae"};
  std::optional<std::string> screening;
  bool timing = false;
};

// Reference settings of the named scenario with any overrides applied.
ScenarioSpec resolve_scenario(const RunConfig& config, const std::string& id);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and runs; usage problems print the usage text and return 1.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace siri::cli
