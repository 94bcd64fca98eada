#pragma once

// Configuration-driven runner behind the `fwkit` executable.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fwkit/diagnostics.hpp"
#include "fwkit/inexact.hpp"
#include "fwkit/instance.hpp"
#include "fwkit/solver.hpp"

namespace fwkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

/// Parsed run configuration; relative paths are resolved against the config
/// file's directory.
struct RunConfig {
  FamilySpec problem;
  std::uint64_t problem_seed = 0;
  SolverConfig solver;
  /// Stepsize L left unset in the file: filled with the instance constant.
  bool lipschitz_from_instance = false;
  std::optional<InexactSchedule> inexact;
  /// kappa_upper left unset: filled with L D^2.
  bool kappa_from_instance = false;
  std::vector<std::string> checks;
  std::filesystem::path prefix;
  std::string format = "csv";
  /// Compute f* with a reference run when the family does not provide it.
  bool reference = true;
};

/// Throws InputError with a path-qualified message on any schema violation.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Builds the instance and finishes the solver config (L, inexact oracle).
ProblemInstance prepare(RunConfig& config);

int run(const std::filesystem::path& config_path, std::ostream& log);
int compare(const std::vector<std::filesystem::path>& config_paths,
            const std::filesystem::path& out_path, std::ostream& log);
/// params are "key=value"; non-numeric values name data files.
int gen(const std::string& family, const std::vector<std::string>& params, std::uint64_t seed,
        const std::filesystem::path& prefix, std::ostream& log);

/// Entry point of the executable.
int main(int argc, char** argv);

}  // namespace fwkit::cli
