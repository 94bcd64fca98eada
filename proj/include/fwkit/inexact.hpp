#pragma once

#include <cstdint>

#include "fwkit/region.hpp"

namespace fwkit {

/// Error budget of an approximate linear minimization oracle.
struct InexactSchedule {
  enum class Mode { Constant, Decaying };
  Mode mode = Mode::Constant;
  double delta = 0.0;
  /// Curvature bound used by the decaying schedule.
  double kappa_upper = 0.0;
  std::uint64_t seed = 0;

  static InexactSchedule constant(double delta, std::uint64_t seed = 0);
  /// delta_k = delta * kappa_upper / (k + 2)
  static InexactSchedule decaying(double delta, double kappa_upper, std::uint64_t seed = 0);

  double at(std::size_t k) const;
};

/// Oracle whose k-th call returns a vertex with linear value within delta_k of
/// the exact minimum. Among admissible vertices it picks one with the largest
/// slack (ties broken by the seeded generator), so the error is as large as
/// the schedule allows. Regions without a vertex list fall back to `inner`.
Lmo make_inexact_lmo(const Region& region, Lmo inner, InexactSchedule schedule);

}  // namespace fwkit
