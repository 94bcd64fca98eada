#pragma once

// Wolfe's corral algorithm for the point of minimum Euclidean norm in a
// polytope accessed through a vertex oracle.

#include <functional>
#include <span>
#include <vector>

#include "fwkit/types.hpp"

namespace fwkit {

/// Returns a vertex minimizing <g, p> over the polytope.
using VertexOracle = std::function<Vector(const Vector& g)>;

struct MinNormOptions {
  /// Stop when ||x||^2 - <x, s> <= gap_tol for the oracle vertex s.
  double gap_tol = 1e-12;
  std::size_t max_major = 10000;
  /// Cap on minor cycles summed over the run.
  std::size_t max_minor = 100000;
  /// Relative pivot threshold of the affine-hull factorization.
  double pivot_tol = 1e-12;
};

/// Snapshot passed to the observer after every major cycle.
struct MinNormCycle {
  std::size_t major;
  const Vector& point;
  double gap;
  std::size_t corral_size;
  std::size_t dropped;
};

struct MinNormResult {
  Vector point;
  std::vector<Vector> corral;
  std::vector<double> weights;
  std::size_t major_cycles = 0;
  std::size_t minor_cycles = 0;
  double gap = 0.0;
  bool converged = false;
};

/// Affine minimizer of the corral: coefficients lambda with sum 1 minimizing
/// ||sum lambda_i p_i||. Returns false when the points are affinely dependent
/// at the given pivot threshold.
bool affine_min_norm(std::span<const Vector> points, double pivot_tol, Vector& lambda);

MinNormResult wolfe_min_norm_point(const VertexOracle& oracle, Vector start,
                                   const MinNormOptions& options,
                                   const std::function<void(const MinNormCycle&)>& observer = {});

/// Min-norm point of conv(points); starts at the shortest point.
MinNormResult min_norm_point(std::span<const Vector> points, const MinNormOptions& options = {});

}  // namespace fwkit
