#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fwkit/objective.hpp"
#include "fwkit/region.hpp"

namespace fwkit {

/// Objective, feasible region and the constants the analysis needs.
struct ProblemInstance {
  std::string family;
  Objective objective;
  Region region;
  double lipschitz = 0.0;
  double mu = 0.0;
  double diameter = 0.0;
  std::optional<double> f_star;
  std::optional<Vector> x_star;
  /// L * D^2, an upper bound on the curvature constant.
  double curvature_upper = 0.0;
  /// ball_quadratic: lower bound c on ||grad f|| over the region.
  std::optional<double> gradient_lower;
  /// interior_quadratic: distance from x* to the relative boundary.
  std::optional<double> boundary_distance;
  /// face_quadratic: indices i with lambda_i(x*) = 0.
  std::optional<std::vector<Index>> optimal_face;
};

/// Fills L, mu, D and L D^2 from the objective and region.
ProblemInstance make_instance(std::string family, Objective objective, Region region,
                              std::optional<double> f_star = std::nullopt,
                              std::optional<Vector> x_star = std::nullopt);

/// Family name plus numeric parameters and optional data file paths.
struct FamilySpec {
  std::string family;
  std::map<std::string, double> params;
  std::map<std::string, std::string> files;
};

/// Dispatches on spec.family; throws InputError for unknown families or
/// inconsistent parameters.
ProblemInstance build_instance(const FamilySpec& spec, std::uint64_t seed);

/// Every family name build_instance accepts.
const std::vector<std::string>& known_families();

ProblemInstance build_lasso(Index m, Index n, double tau, double noise, Index sparsity,
                            std::uint64_t seed);
ProblemInstance build_meb_dual(const std::vector<Vector>& points);
ProblemInstance build_svm_dual(const std::vector<Vector>& points, const std::vector<int>& labels);
/// Minimization form of the max-clique StQP: -(x^T A_G x + 1/2 ||x||^2).
ProblemInstance build_max_clique(Index n, const std::vector<std::pair<Index, Index>>& edges);
ProblemInstance build_matcomp(Index m, Index n, Index rank, double density, double delta,
                              std::uint64_t seed);
ProblemInstance build_matcomp(Index m, Index n, std::vector<Observation> observed, double delta);
ProblemInstance build_simplex_distance(Index n);
ProblemInstance build_interior_quadratic(Index n, double offset, std::uint64_t seed);
ProblemInstance build_ball_quadratic(Index n, double radius, double c, std::uint64_t seed);
/// Strongly convex quadratic on the simplex whose minimizer is supported on
/// `face` coordinates, with strict complementarity and known x*, f*.
ProblemInstance build_face_quadratic(Index n, Index face, double condition, std::uint64_t seed);
ProblemInstance build_product(Index blocks, Index n);
/// Min-norm point of the base polytope of a built-in submodular function.
ProblemInstance build_base_polytope_mnp(SubmodularFunction fn);
/// Min-norm point of conv(vertices).
ProblemInstance build_hull_min_norm(std::vector<Vector> vertices);

/// Random generators shared by the builders and tests.
std::vector<Vector> random_points(Index count, Index dim, double offset, std::uint64_t seed);
std::vector<std::pair<Index, Index>> random_graph(Index n, double p, std::uint64_t seed);

}  // namespace fwkit
