#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fwkit/active_set.hpp"
#include "fwkit/instance.hpp"
#include "fwkit/stepsize.hpp"

namespace fwkit {

enum class Variant { FW, AFW, PFW, FDFW, EFW, BCFW, WolfeMNP };
enum class Termination { GapTol, MaxIter, NumericalError };

std::string to_string(Variant v);
std::string to_string(Termination t);
Variant parse_variant(const std::string& name);

struct SolverConfig {
  Variant variant = Variant::FW;
  StepsizeRule stepsize = StepsizeRule::diminishing();
  /// Cap on the number of steps taken.
  std::size_t max_iter = 1000;
  double gap_tol = 1e-8;
  std::uint64_t seed = 0;
  double efw_inner_tol = 1e-12;
  std::size_t record_every = 1;
  /// Store the coordinate support of x_k in every record.
  bool record_supports = false;
  /// Replaces the seeded random direction whose LMO vertex is x_0.
  std::optional<Vector> start_direction;
  /// Replaces the exact oracle for choosing FW vertices (the gap stays exact).
  std::optional<Lmo> lmo;
};

/// Record k describes x_k and the step taken from it.
struct IterationRecord {
  std::size_t k = 0;
  StepKind kind = StepKind::None;
  /// Block index for BCFW steps, -1 otherwise.
  Index block = -1;
  double alpha = 0.0;
  double alpha_max = 0.0;
  double f = 0.0;
  /// Exact FW gap at x_k; NaN for BCFW iterations where it was not computed.
  double gap = 0.0;
  std::size_t support_size = 1;
  /// gamma(k): good steps taken before x_k.
  std::size_t good_steps = 0;
  /// <grad f(x_k), d_k> and ||d_k|| of the step taken (0 on the final record).
  double dir_deriv = 0.0;
  double dir_norm = 0.0;
  std::int64_t elapsed_ns = 0;
  std::vector<Index> support;
};

struct SolveReport {
  Variant variant = Variant::FW;
  StepsizeRule rule;
  std::vector<IterationRecord> records;
  std::optional<ActiveSet> final_set;
  /// BCFW: one active set per block.
  std::vector<ActiveSet> block_sets;
  Vector final_point;
  Termination termination = Termination::MaxIter;
  std::size_t steps = 0;
  /// gamma(k): FW steps with alpha = 1 plus steps with 0 < alpha < alpha_max.
  std::size_t good_steps = 0;
  std::string message;

  /// Everything except wall-clock timings.
  bool same_result(const SolveReport& other) const;
};

SolveReport solve(const ProblemInstance& inst, const SolverConfig& config);

SolveReport solve_fw(const ProblemInstance& inst, const SolverConfig& config);
SolveReport solve_afw(const ProblemInstance& inst, const SolverConfig& config);
SolveReport solve_pfw(const ProblemInstance& inst, const SolverConfig& config);
SolveReport solve_fdfw(const ProblemInstance& inst, const SolverConfig& config);
SolveReport solve_efw(const ProblemInstance& inst, const SolverConfig& config);
SolveReport solve_bcfw(const ProblemInstance& inst, const SolverConfig& config);
SolveReport solve_wolfe_mnp(const ProblemInstance& inst, const SolverConfig& config);
SolveReport solve_wolfe_mnp(std::vector<Vector> vertices, const SolverConfig& config);

/// Throws InputError/CapabilityError when the variant cannot run on the instance.
void check_compatibility(const ProblemInstance& inst, const SolverConfig& config);

/// Long AFW run with exact line search; returns (f, x) at gap <= gap_tol.
std::pair<double, Vector> reference_optimum(const ProblemInstance& inst, double gap_tol = 1e-12,
                                            std::size_t max_iter = 1000000);
/// Sets f_star (and x_star) from reference_optimum when f_star is unknown.
void ensure_f_star(ProblemInstance& inst, double gap_tol = 1e-12);

/// Good-step predicate shared by solvers and diagnostics.
bool is_good_step(StepKind kind, double alpha, double alpha_max);

}  // namespace fwkit
