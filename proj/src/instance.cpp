#include "fwkit/instance.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fwkit/errors.hpp"
#include "fwkit/io.hpp"

namespace fwkit {

namespace {

using Rng = std::mt19937_64;

Vector gaussian_vector(Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(rows, cols);
  // Column-major fill order so the stream maps to the flattened layout.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) a(i, j) = normal(rng);
  }
  return a;
}

Matrix random_orthogonal(Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, n, rng));
  return Matrix(qr.householderQ());
}

/// Q diag(s) with singular values spread geometrically over [1, sqrt(condition)].
Matrix conditioned_matrix(Index n, double condition, Rng& rng) {
  const Matrix q = random_orthogonal(n, rng);
  Vector s(n);
  for (Index i = 0; i < n; ++i) {
    const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    s[i] = std::pow(condition, 0.5 * t);
  }
  return q * s.asDiagonal();
}

std::vector<Index> random_subset(Index n, Index size, Rng& rng) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(static_cast<std::size_t>(size));
  std::sort(idx.begin(), idx.end());
  return idx;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

/// ||A (x - x*)||^2 expanded into factored form.
Objective centered_quadratic(const Matrix& a, const Vector& x_star) {
  const Vector ax = a * x_star;
  const Vector b = -2.0 * (a.transpose() * ax);
  return Objective::factored_quadratic(a, b, ax.squaredNorm(), 1);
}

}  // namespace

ProblemInstance make_instance(std::string family, Objective objective, Region region,
                              std::optional<double> f_star, std::optional<Vector> x_star) {
  if (objective.dimension() != region.dimension()) {
    throw InputError("objective and region dimensions differ");
  }
  ProblemInstance inst{std::move(family), std::move(objective), std::move(region), 0.0, 0.0,
                       0.0,  std::nullopt,         std::nullopt,      0.0, std::nullopt,
                       std::nullopt, std::nullopt};
  inst.lipschitz = lipschitz_upper(inst.objective);
  inst.mu = strong_convexity_lower(inst.objective);
  inst.diameter = diameter(inst.region);
  inst.curvature_upper = inst.lipschitz * inst.diameter * inst.diameter;
  if (x_star) {
    if (!is_feasible(inst.region, *x_star)) throw InputError("x_star is not feasible");
    const double v = inst.objective.value(*x_star);
    if (f_star && std::abs(*f_star - v) > 1e-9) throw InputError("f_star does not match f(x_star)");
    if (!f_star) f_star = v;
  }
  inst.f_star = f_star;
  inst.x_star = std::move(x_star);
  return inst;
}

std::vector<Vector> random_points(Index count, Index dim, double offset, std::uint64_t seed) {
  require(count > 0 && dim > 0, "random_points needs positive count and dimension");
  Rng rng(seed);
  Vector shift = gaussian_vector(dim, rng);
  shift *= offset / std::max(shift.norm(), 1e-300);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) out.push_back(gaussian_vector(dim, rng) + shift);
  return out;
}

std::vector<std::pair<Index, Index>> random_graph(Index n, double p, std::uint64_t seed) {
  require(n > 0 && p >= 0.0 && p <= 1.0, "random_graph needs n > 0 and p in [0,1]");
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<Index, Index>> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (u(rng) < p) edges.emplace_back(i, j);
    }
  }
  return edges;
}

ProblemInstance build_lasso(Index m, Index n, double tau, double noise, Index sparsity,
                            std::uint64_t seed) {
  require(m > 0 && n > 0, "lasso needs m, n > 0");
  require(tau > 0.0, "lasso needs tau > 0");
  require(noise >= 0.0, "lasso needs noise >= 0");
  require(sparsity >= 1 && sparsity <= n, "lasso sparsity must lie in [1, n]");
  Rng rng(seed);
  Matrix a = gaussian_matrix(m, n, rng) / std::sqrt(static_cast<double>(m));
  Vector planted = Vector::Zero(n);
  std::uniform_real_distribution<double> mag(0.5, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (Index i : random_subset(n, sparsity, rng)) planted[i] = (coin(rng) ? 1.0 : -1.0) * mag(rng);
  planted *= tau / planted.lpNorm<1>();
  Vector b = a * planted + noise * gaussian_vector(m, rng);
  return make_instance("lasso", Objective::least_squares(std::move(a), std::move(b)),
                       Region::l1_ball(tau, n));
}

ProblemInstance build_meb_dual(const std::vector<Vector>& points) {
  require(!points.empty(), "meb_dual needs points");
  const Index d = points.front().size();
  Matrix a(d, static_cast<Index>(points.size()));
  Vector b(static_cast<Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(points[i].size() == d, "meb_dual points must share a dimension");
    a.col(static_cast<Index>(i)) = points[i];
    b[static_cast<Index>(i)] = -points[i].squaredNorm();
  }
  const Index n = a.cols();
  return make_instance("meb_dual", Objective::factored_quadratic(std::move(a), std::move(b)),
                       Region::simplex(n));
}

ProblemInstance build_svm_dual(const std::vector<Vector>& points, const std::vector<int>& labels) {
  require(!points.empty() && points.size() == labels.size(), "svm_dual needs labeled points");
  const Index d = points.front().size();
  Matrix a(d, static_cast<Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(points[i].size() == d, "svm_dual points must share a dimension");
    require(labels[i] == 1 || labels[i] == -1, "svm_dual labels must be +1 or -1");
    a.col(static_cast<Index>(i)) = labels[i] * points[i];
  }
  const Index n = a.cols();
  return make_instance("svm_dual", Objective::factored_quadratic(std::move(a), Vector::Zero(n)),
                       Region::simplex(n));
}

ProblemInstance build_max_clique(Index n, const std::vector<std::pair<Index, Index>>& edges) {
  require(n > 0, "max_clique needs at least one node");
  Matrix q = -0.5 * Matrix::Identity(n, n);
  for (const auto& [u, v] : edges) {
    require(u >= 0 && u < n && v >= 0 && v < n, "max_clique edge outside the node range");
    require(u != v, "max_clique graphs must not have self loops");
    q(u, v) = -1.0;
    q(v, u) = -1.0;
  }
  return make_instance("max_clique", Objective::dense_quadratic(std::move(q), Vector::Zero(n)),
                       Region::simplex(n));
}

ProblemInstance build_matcomp(Index m, Index n, std::vector<Observation> observed, double delta) {
  return make_instance("matcomp", Objective::matrix_completion(std::move(observed), m, n),
                       Region::nuclear_ball(delta, m, n));
}

ProblemInstance build_matcomp(Index m, Index n, Index rank, double density, double delta,
                              std::uint64_t seed) {
  require(m > 0 && n > 0 && rank > 0, "matcomp needs positive shape and rank");
  require(density > 0.0 && density <= 1.0, "matcomp density must lie in (0,1]");
  require(delta > 0.0, "matcomp needs delta > 0");
  Rng rng(seed);
  const Matrix u = gaussian_matrix(m, rank, rng);
  const Matrix v = gaussian_matrix(rank, n, rng);
  const Matrix target = u * v / std::sqrt(static_cast<double>(rank));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Observation> observed;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) {
      if (coin(rng) < density) observed.push_back({i, j, target(i, j)});
    }
  }
  require(!observed.empty(), "matcomp sampled no observations; raise density");
  return build_matcomp(m, n, std::move(observed), delta);
}

ProblemInstance build_simplex_distance(Index n) {
  require(n >= 1, "simplex_distance needs n >= 1");
  Vector center = Vector::Constant(n, 1.0 / static_cast<double>(n));
  Vector x_star = center;
  return make_instance("simplex_distance", Objective::shifted_norm_square(std::move(center)),
                       Region::simplex(n), 0.0, std::move(x_star));
}

ProblemInstance build_interior_quadratic(Index n, double offset, std::uint64_t seed) {
  require(n >= 2, "interior_quadratic needs n >= 2");
  require(offset >= 0.0 && offset < 1.0, "interior_quadratic offset must lie in [0,1)");
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector w(n);
  for (Index i = 0; i < n; ++i) w[i] = u(rng);
  w /= w.sum();
  const double dn = static_cast<double>(n);
  Vector x_star = (1.0 - offset) * Vector::Constant(n, 1.0 / dn) + offset * w;
  const Matrix a = conditioned_matrix(n, 4.0, rng);
  ProblemInstance inst =
      make_instance("interior_quadratic", centered_quadratic(a, x_star), Region::simplex(n));
  inst.f_star = 0.0;
  inst.x_star = x_star;
  inst.boundary_distance = x_star.minCoeff() / std::sqrt(1.0 - 1.0 / dn);
  return inst;
}

ProblemInstance build_ball_quadratic(Index n, double radius, double c, std::uint64_t seed) {
  require(n >= 1 && radius > 0.0 && c >= 0.0, "ball_quadratic needs n >= 1, radius > 0, c >= 0");
  Rng rng(seed);
  Vector dir = gaussian_vector(n, rng);
  dir /= dir.norm();
  Vector center = (radius + 0.5 * c) * dir;
  Vector x_star = radius * dir;
  ProblemInstance inst = make_instance("ball_quadratic", Objective::shifted_norm_square(center),
                                       Region::l2_ball(radius, n), std::nullopt, x_star);
  if (c > 0.0) inst.gradient_lower = c;
  return inst;
}

ProblemInstance build_face_quadratic(Index n, Index face, double condition, std::uint64_t seed) {
  require(n >= 2 && face >= 1 && face < n, "face_quadratic needs 1 <= face < n");
  require(condition >= 1.0, "face_quadratic condition must be >= 1");
  Rng rng(seed);
  const Matrix a = conditioned_matrix(n, condition, rng);
  const std::vector<Index> support = random_subset(n, face, rng);
  std::uniform_real_distribution<double> u(1.0, 2.0);
  Vector x_star = Vector::Zero(n);
  for (Index i : support) x_star[i] = u(rng);
  x_star /= x_star.sum();
  // Gradient at x* is nu >= 0 with nu = 0 exactly on the support.
  std::uniform_real_distribution<double> gap(0.5, 1.5);
  Vector nu = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    if (x_star[i] == 0.0) nu[i] = gap(rng);
  }
  Vector b = nu - 2.0 * (a.transpose() * (a * x_star));
  ProblemInstance inst =
      make_instance("face_quadratic", Objective::factored_quadratic(a, b), Region::simplex(n),
                    std::nullopt, x_star);
  inst.optimal_face = support;
  return inst;
}

ProblemInstance build_product(Index blocks, Index n) {
  require(blocks >= 1 && n >= 1, "product needs blocks >= 1 and n >= 1");
  std::vector<Objective> objs;
  std::vector<Region> regions;
  for (Index i = 0; i < blocks; ++i) {
    objs.push_back(Objective::shifted_norm_square(Vector::Constant(n, 1.0 / double(n))));
    regions.push_back(Region::simplex(n));
  }
  Vector x_star = Vector::Constant(blocks * n, 1.0 / double(n));
  return make_instance("product", Objective::block_separable(std::move(objs)),
                       Region::product(std::move(regions)), 0.0, std::move(x_star));
}

ProblemInstance build_base_polytope_mnp(SubmodularFunction fn) {
  const Index n = fn.ground_size();
  return make_instance("base_polytope_mnp", Objective::shifted_norm_square(Vector::Zero(n)),
                       Region::base_polytope(std::move(fn)));
}

ProblemInstance build_hull_min_norm(std::vector<Vector> vertices) {
  require(!vertices.empty(), "hull_min_norm needs vertices");
  const Index d = vertices.front().size();
  return make_instance("hull_min_norm", Objective::shifted_norm_square(Vector::Zero(d)),
                       Region::vertex_hull(std::move(vertices)));
}

// ---------------------------------------------------------------- dispatch

namespace {

class Params {
 public:
  explicit Params(const FamilySpec& spec) : spec_(spec) {}

  double real(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    auto it = spec_.params.find(key);
    if (it != spec_.params.end()) {
      if (!std::isfinite(it->second)) throw InputError("parameter '" + key + "' is not finite");
      return it->second;
    }
    if (fallback) return *fallback;
    throw InputError("family " + spec_.family + " needs parameter '" + key + "'");
  }

  Index integer(const std::string& key, std::optional<Index> fallback = std::nullopt) const {
    auto it = spec_.params.find(key);
    if (it == spec_.params.end()) {
      if (fallback) return *fallback;
      throw InputError("family " + spec_.family + " needs parameter '" + key + "'");
    }
    const double v = it->second;
    if (!std::isfinite(v) || v != std::floor(v)) {
      throw InputError("parameter '" + key + "' must be an integer");
    }
    return static_cast<Index>(v);
  }

  std::optional<std::string> file(const std::string& key) const {
    auto it = spec_.files.find(key);
    if (it == spec_.files.end()) return std::nullopt;
    return it->second;
  }

 private:
  const FamilySpec& spec_;
};

SubmodularFunction builtin_submodular(const Params& p, std::uint64_t seed) {
  const Index kind = p.integer("function", 0);
  const Index n = p.integer("n", 5);
  switch (kind) {
    case 0: return SubmodularFunction::cardinality_cap(n, p.integer("cap", 1));
    case 1: {
      std::vector<WeightedEdge> edges;
      if (auto path = p.file("graph")) {
        edges = read_weighted_edge_list(*path);
      } else {
        for (const auto& [u, v] : random_graph(n, p.real("p", 0.5), seed)) edges.push_back({u, v, 1.0});
      }
      return SubmodularFunction::graph_cut(n, std::move(edges));
    }
    case 2: {
      Rng rng(seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      Vector w(n);
      for (Index i = 0; i < n; ++i) w[i] = u(rng);
      return SubmodularFunction::modular(std::move(w));
    }
    default: throw InputError("base_polytope_mnp function must be 0 (cap), 1 (cut) or 2 (modular)");
  }
}

}  // namespace

const std::vector<std::string>& known_families() {
  static const std::vector<std::string> names{
      "lasso",        "meb_dual",          "svm_dual",       "max_clique",
      "matcomp",      "simplex_distance",  "interior_quadratic", "ball_quadratic",
      "face_quadratic", "product",         "base_polytope_mnp", "hull_min_norm"};
  return names;
}

ProblemInstance build_instance(const FamilySpec& spec, std::uint64_t seed) {
  const Params p(spec);
  const std::string& f = spec.family;
  if (f == "lasso") {
    const Index n = p.integer("n");
    return build_lasso(p.integer("m"), n, p.real("tau", 1.0), p.real("noise", 0.1),
                       p.integer("sparsity", std::max<Index>(1, n / 10)), seed);
  }
  if (f == "meb_dual") {
    if (auto path = p.file("points")) return build_meb_dual(read_points(*path));
    return build_meb_dual(random_points(p.integer("n", 20), p.integer("d", 2), 0.0, seed));
  }
  if (f == "svm_dual") {
    std::vector<Vector> pts;
    std::vector<int> labels;
    if (auto path = p.file("points")) {
      read_labeled_points(*path, pts, labels);
    } else {
      const Index n = p.integer("n", 20), d = p.integer("d", 2);
      const double sep = p.real("separation", 2.0);
      pts = random_points(n, d, 0.0, seed);
      for (Index i = 0; i < n; ++i) {
        const int y = (i % 2 == 0) ? 1 : -1;
        pts[static_cast<std::size_t>(i)][0] += y * sep;
        labels.push_back(y);
      }
    }
    return build_svm_dual(pts, labels);
  }
  if (f == "max_clique") {
    if (auto path = p.file("graph")) {
      Index n = 0;
      auto edges = read_edge_list(*path, n);
      return build_max_clique(std::max(n, p.integer("n", 0)), edges);
    }
    const Index n = p.integer("n", 10);
    return build_max_clique(n, random_graph(n, p.real("p", 0.5), seed));
  }
  if (f == "matcomp") {
    const Index m = p.integer("m"), n = p.integer("n");
    if (auto path = p.file("observations")) {
      return build_matcomp(m, n, read_observations(*path), p.real("delta"));
    }
    return build_matcomp(m, n, p.integer("rank", 2), p.real("density", 0.3), p.real("delta"), seed);
  }
  if (f == "simplex_distance") return build_simplex_distance(p.integer("n"));
  if (f == "interior_quadratic") {
    return build_interior_quadratic(p.integer("n"), p.real("offset", 0.5), seed);
  }
  if (f == "ball_quadratic") {
    return build_ball_quadratic(p.integer("n"), p.real("radius", 1.0), p.real("c", 1.0), seed);
  }
  if (f == "face_quadratic") {
    return build_face_quadratic(p.integer("n"), p.integer("face"), p.real("condition", 4.0), seed);
  }
  if (f == "product") return build_product(p.integer("b"), p.integer("n"));
  if (f == "base_polytope_mnp") return build_base_polytope_mnp(builtin_submodular(p, seed));
  if (f == "hull_min_norm") {
    if (auto path = p.file("points")) return build_hull_min_norm(read_points(*path));
    return build_hull_min_norm(
        random_points(p.integer("count", 10), p.integer("d", 3), p.real("offset", 1.5), seed));
  }
  throw InputError("unknown problem family '" + f + "'");
}

}  // namespace fwkit
