#pragma once
// Shared plumbing of the solver family; not part of the public headers.

#include <chrono>
#include <random>

#include "fwkit/errors.hpp"
#include "fwkit/solver.hpp"

namespace fwkit::detail {

using Rng = std::mt19937_64;
using Clock = std::chrono::steady_clock;

/// Seeded Gaussian direction (or the configured override) for the start vertex.
Vector start_direction(const ProblemInstance& inst, const SolverConfig& config, Rng& rng);

/// Coordinates with |x_i| above the weight-drop threshold.
std::vector<Index> coordinate_support(const Vector& x);

/// Appends records on the record_every grid and always keeps the final one.
class Recorder {
 public:
  Recorder(const SolverConfig& config, SolveReport& report)
      : config_(config), report_(report), start_(Clock::now()) {}

  IterationRecord begin(std::size_t k, double f, double gap, std::size_t support,
                        const Vector& x) const;
  bool due(std::size_t k) const { return k % config_.record_every == 0; }
  /// Record describing x_k and the step just chosen from it.
  void step(IterationRecord r);
  /// Terminal record (kind None).
  void finish(IterationRecord r, Termination why);

 private:
  const SolverConfig& config_;
  SolveReport& report_;
  Clock::time_point start_;
};

/// Validates config fields common to all variants.
void check_config(const SolverConfig& config);

}  // namespace fwkit::detail
