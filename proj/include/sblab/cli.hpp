#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sblab/processes.hpp"

namespace sblab {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // domination or coupling audit failed
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitInternal = 3;  // numerical failure or I/O error

/// Fully resolved command line.
struct RunSpec {
  std::string command;  // bounds | simulate | verify-coupling | oracle | report
  std::optional<ProcessConfig> process;
  std::string t_grid = "0:5:0.1";
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double cl = 0.999;
  bool assume_monotone = false;
  std::string out = "csv";  // csv | json; verify-coupling defaults to json
  std::string output;       // empty = stdout
  bool timestamp = true;
  std::vector<std::string> inputs;  // report only
};

nlohmann::json run_spec_to_json(RunSpec const& spec);
RunSpec run_spec_from_json(nlohmann::json const& j);

/// Runs one command. Diagnostics go to `err`; results go to the output file,
/// or to `out` when none is given.
int parse_and_dispatch(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sblab
