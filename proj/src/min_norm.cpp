#include "fwkit/min_norm.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fwkit/errors.hpp"
#include "fwkit/kernels.hpp"

namespace fwkit {

bool affine_min_norm(std::span<const Vector> points, double pivot_tol, Vector& lambda) {
  const auto q = static_cast<Index>(points.size());
  // (G + e e^T) mu = e, lambda = mu / sum(mu); G + e e^T is positive definite
  // exactly when the points are affinely independent.
  Matrix m(q, q);
  for (Index i = 0; i < q; ++i) {
    for (Index j = 0; j <= i; ++j) {
      const double v = points[static_cast<std::size_t>(i)].dot(points[static_cast<std::size_t>(j)]) + 1.0;
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  Eigen::LDLT<Matrix> ldlt(m);
  if (ldlt.info() != Eigen::Success) return false;
  const Vector d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  if (!(d.minCoeff() > pivot_tol * std::max(dmax, 1.0))) return false;
  Vector mu = ldlt.solve(Vector::Ones(q));
  const double s = mu.sum();
  if (!std::isfinite(s) || s == 0.0) return false;
  lambda = mu / s;
  return true;
}

namespace {

Vector combine(const std::vector<Vector>& corral, const std::vector<double>& w) {
  Vector x = Vector::Zero(corral.front().size());
  for (std::size_t i = 0; i < corral.size(); ++i) x += w[i] * corral[i];
  return x;
}

void erase_at(std::vector<Vector>& corral, std::vector<double>& w, std::size_t i) {
  corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(i));
  w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
}

}  // namespace

MinNormResult wolfe_min_norm_point(const VertexOracle& oracle, Vector start,
                                   const MinNormOptions& options,
                                   const std::function<void(const MinNormCycle&)>& observer) {
  MinNormResult out;
  std::vector<Vector> corral{std::move(start)};
  std::vector<double> w{1.0};
  Vector x = corral.front();
  std::size_t dropped = 0;

  for (std::size_t major = 0;; ++major) {
    const Vector s = oracle(x);
    const double gap = x.squaredNorm() - x.dot(s);
    out.gap = gap;
    if (observer) observer({major, x, gap, corral.size(), dropped});
    out.major_cycles = major;
    if (gap <= options.gap_tol) {
      out.converged = true;
      break;
    }
    const bool present = std::any_of(corral.begin(), corral.end(), [&](const Vector& p) {
      return (p - s).lpNorm<Eigen::Infinity>() <= 1e-14 * std::max(1.0, s.lpNorm<Eigen::Infinity>());
    });
    if (present || major >= options.max_major) break;

    corral.push_back(s);
    w.push_back(0.0);
    dropped = 0;

    for (;;) {
      if (++out.minor_cycles > options.max_minor) {
        throw NumericalError("min-norm point: minor cycle cap reached", gap);
      }
      Vector lambda;
      while (!affine_min_norm(corral, options.pivot_tol, lambda)) {
        // Dependent corral: drop the lightest atom other than the newcomer.
        if (corral.size() <= 1) throw NumericalError("min-norm point: degenerate corral", gap);
        std::size_t victim = 0;
        for (std::size_t i = 1; i + 1 < corral.size(); ++i) {
          if (w[i] < w[victim]) victim = i;
        }
        const double moved = w[victim];
        erase_at(corral, w, victim);
        for (double& wi : w) wi /= (1.0 - moved);
        ++dropped;
      }
      const double min_lambda = lambda.minCoeff();
      if (min_lambda > 1e-15) {
        std::copy(lambda.data(), lambda.data() + lambda.size(), w.begin());
        x = combine(corral, w);
        break;
      }
      // Step from w toward lambda until the first weight hits zero.
      double best = std::numeric_limits<double>::infinity();
      std::size_t hit = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double li = lambda[static_cast<Index>(i)];
        if (li <= 1e-15) {
          const double t = w[i] - li > 0.0 ? w[i] / (w[i] - li) : 0.0;
          if (t < best) {
            best = t;
            hit = i;
          }
        }
      }
      const double theta = std::min(best, 1.0);
      for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = theta * lambda[static_cast<Index>(i)] + (1.0 - theta) * w[i];
      }
      w[hit] = 0.0;
      for (std::size_t i = w.size(); i-- > 0;) {
        if (w[i] <= 1e-15) {
          erase_at(corral, w, i);
          ++dropped;
        }
      }
      const double sum = std::accumulate(w.begin(), w.end(), 0.0);
      for (double& wi : w) wi /= sum;
      x = combine(corral, w);
    }
  }

  out.point = std::move(x);
  out.corral = std::move(corral);
  out.weights = std::move(w);
  return out;
}

MinNormResult min_norm_point(std::span<const Vector> points, const MinNormOptions& options) {
  if (points.empty()) throw InputError("min_norm_point needs at least one point");
  Index shortest = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].squaredNorm() < points[static_cast<std::size_t>(shortest)].squaredNorm()) {
      shortest = static_cast<Index>(i);
    }
  }
  VertexOracle oracle = [&](const Vector& g) {
    Vector scores(static_cast<Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) scores[static_cast<Index>(i)] = g.dot(points[i]);
    return points[static_cast<std::size_t>(kernels::argmin(kernels::view(scores)))];
  };
  return wolfe_min_norm_point(oracle, points[static_cast<std::size_t>(shortest)], options);
}

}  // namespace fwkit
