#include "fwkit/objective.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "fwkit/errors.hpp"
#include "fwkit/kernels.hpp"
#include "fwkit/svd.hpp"

namespace fwkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr Index kDenseSpectrumLimit = 512;

void require_input(const Objective& obj, const Vector& x) {
  if (x.size() != obj.dimension()) {
    throw InputError("objective " + obj.name() + " expects dimension " +
                     std::to_string(obj.dimension()) + ", got " + std::to_string(x.size()));
  }
  if (!x.allFinite()) throw InputError("objective input has non-finite entries");
}

Index flat(const Observation& o, Index rows) { return flat_index(o.i, o.j, rows); }

double sigma_max_squared(const Matrix& a) {
  const double s = top_singular_pair(a, 1e-10).sigma;
  return s * s;
}

double sigma_min_squared(const Matrix& a) {
  if (a.cols() > a.rows()) return 0.0;
  if (std::min(a.rows(), a.cols()) > kDenseSpectrumLimit) return 0.0;
  const Vector s = Eigen::BDCSVD<Matrix>(a).singularValues();
  const double m = s.size() ? s.minCoeff() : 0.0;
  return m * m;
}

}  // namespace

Objective Objective::factored_quadratic(Matrix a, Vector b, double c, int sign) {
  if (b.size() != a.cols()) throw InputError("factored quadratic: b must have A's column count");
  if (sign != 1 && sign != -1) throw InputError("factored quadratic: sign must be +1 or -1");
  if (!a.allFinite() || !b.allFinite() || !std::isfinite(c)) {
    throw InputError("factored quadratic: non-finite data");
  }
  return Objective(FactoredQuadratic{std::move(a), std::move(b), c, sign});
}

Objective Objective::least_squares(Matrix a, Vector b) {
  if (b.size() != a.rows()) throw InputError("least squares: b must have A's row count");
  if (!a.allFinite() || !b.allFinite()) throw InputError("least squares: non-finite data");
  return Objective(LeastSquares{std::move(a), std::move(b)});
}

Objective Objective::matrix_completion(std::vector<Observation> observed, Index rows, Index cols) {
  if (rows <= 0 || cols <= 0) throw InputError("matrix completion: bad shape");
  for (const auto& o : observed) {
    if (o.i < 0 || o.i >= rows || o.j < 0 || o.j >= cols) {
      throw InputError("matrix completion: observation outside the matrix");
    }
    if (!std::isfinite(o.value)) throw InputError("matrix completion: non-finite observation");
  }
  return Objective(MatrixCompletionLoss{std::move(observed), rows, cols});
}

Objective Objective::shifted_norm_square(Vector center) {
  if (center.size() == 0 || !center.allFinite()) throw InputError("shifted norm: bad center");
  return Objective(ShiftedNormSquare{std::move(center)});
}

Objective Objective::dense_quadratic(Matrix q, Vector b, double c) {
  if (q.rows() != q.cols() || b.size() != q.rows()) throw InputError("dense quadratic: shapes");
  if (!q.allFinite() || !b.allFinite() || !std::isfinite(c)) {
    throw InputError("dense quadratic: non-finite data");
  }
  Matrix sym = 0.5 * (q + q.transpose());
  return Objective(DenseQuadratic{std::move(sym), std::move(b), c});
}

Objective Objective::block_separable(std::vector<Objective> blocks) {
  if (blocks.empty()) throw InputError("block separable objective needs blocks");
  return Objective(BlockSeparable{std::move(blocks)});
}

Index Objective::dimension() const {
  return std::visit(overloaded{[](const FactoredQuadratic& o) { return o.a.cols(); },
                               [](const LeastSquares& o) { return o.a.cols(); },
                               [](const MatrixCompletionLoss& o) { return o.rows * o.cols; },
                               [](const ShiftedNormSquare& o) { return o.center.size(); },
                               [](const DenseQuadratic& o) { return o.q.rows(); },
                               [](const BlockSeparable& o) {
                                 Index d = 0;
                                 for (const auto& b : o.blocks) d += b.dimension();
                                 return d;
                               }},
                    repr_);
}

std::string Objective::name() const {
  return std::visit(
      overloaded{[](const FactoredQuadratic&) { return std::string("factored_quadratic"); },
                 [](const LeastSquares&) { return std::string("least_squares"); },
                 [](const MatrixCompletionLoss&) { return std::string("matrix_completion"); },
                 [](const ShiftedNormSquare&) { return std::string("shifted_norm_square"); },
                 [](const DenseQuadratic&) { return std::string("dense_quadratic"); },
                 [](const BlockSeparable&) { return std::string("block_separable"); }},
      repr_);
}

bool Objective::is_quadratic() const {
  if (const auto* b = get<BlockSeparable>()) {
    return std::all_of(b->blocks.begin(), b->blocks.end(),
                       [](const Objective& o) { return o.is_quadratic(); });
  }
  return true;
}

Evaluation Objective::eval(const Vector& x) const {
  require_input(*this, x);
  return std::visit(
      overloaded{
          [&](const FactoredQuadratic& o) {
            const Vector ax = kernels::apply(o.a, x);
            Vector g = kernels::apply_t(o.a, ax);
            g *= 2.0 * o.sign;
            g += o.b;
            return Evaluation{o.sign * ax.squaredNorm() + o.b.dot(x) + o.c, std::move(g)};
          },
          [&](const LeastSquares& o) {
            const Vector r = kernels::apply(o.a, x) - o.b;
            Vector g = kernels::apply_t(o.a, r);
            g *= 2.0;
            return Evaluation{r.squaredNorm(), std::move(g)};
          },
          [&](const MatrixCompletionLoss& o) {
            Vector g = Vector::Zero(x.size());
            double value = 0.0;
            for (const auto& ob : o.observed) {
              const Index idx = flat(ob, o.rows);
              const double r = x[idx] - ob.value;
              value += r * r;
              g[idx] += 2.0 * r;
            }
            return Evaluation{value, std::move(g)};
          },
          [&](const ShiftedNormSquare& o) {
            const Vector r = x - o.center;
            return Evaluation{r.squaredNorm(), Vector(2.0 * r)};
          },
          [&](const DenseQuadratic& o) {
            const Vector qx = kernels::apply(o.q, x);
            return Evaluation{x.dot(qx) + o.b.dot(x) + o.c, Vector(2.0 * qx + o.b)};
          },
          [&](const BlockSeparable& o) {
            Evaluation out{0.0, Vector(x.size())};
            Index off = 0;
            for (const auto& b : o.blocks) {
              const Index n = b.dimension();
              Evaluation e = b.eval(x.segment(off, n));
              out.value += e.value;
              out.gradient.segment(off, n) = e.gradient;
              off += n;
            }
            return out;
          }},
      repr_);
}

double Objective::value(const Vector& x) const {
  require_input(*this, x);
  return std::visit(
      overloaded{[&](const FactoredQuadratic& o) {
                   return o.sign * kernels::apply(o.a, x).squaredNorm() + o.b.dot(x) + o.c;
                 },
                 [&](const LeastSquares& o) { return (kernels::apply(o.a, x) - o.b).squaredNorm(); },
                 [&](const DenseQuadratic& o) {
                   return x.dot(kernels::apply(o.q, x)) + o.b.dot(x) + o.c;
                 },
                 [&](const ShiftedNormSquare& o) { return (x - o.center).squaredNorm(); },
                 [&](const auto&) { return eval(x).value; }},
      repr_);
}

Vector Objective::gradient(const Vector& x) const { return eval(x).gradient; }

double Objective::curvature(const Vector& d) const {
  if (d.size() != dimension()) throw InputError("curvature: direction dimension mismatch");
  return std::visit(
      overloaded{[&](const FactoredQuadratic& o) {
                   return o.sign * kernels::apply(o.a, d).squaredNorm();
                 },
                 [&](const LeastSquares& o) { return kernels::apply(o.a, d).squaredNorm(); },
                 [&](const MatrixCompletionLoss& o) {
                   double s = 0.0;
                   for (const auto& ob : o.observed) {
                     const double v = d[flat(ob, o.rows)];
                     s += v * v;
                   }
                   return s;
                 },
                 [&](const ShiftedNormSquare&) { return d.squaredNorm(); },
                 [&](const DenseQuadratic& o) { return d.dot(kernels::apply(o.q, d)); },
                 [&](const BlockSeparable& o) {
                   double s = 0.0;
                   Index off = 0;
                   for (const auto& b : o.blocks) {
                     const Index n = b.dimension();
                     s += b.curvature(d.segment(off, n));
                     off += n;
                   }
                   return s;
                 }},
      repr_);
}

double lipschitz_upper(const Objective& obj) {
  return std::visit(
      overloaded{[](const FactoredQuadratic& o) { return 2.0 * sigma_max_squared(o.a); },
                 [](const LeastSquares& o) { return 2.0 * sigma_max_squared(o.a); },
                 [](const MatrixCompletionLoss&) { return 2.0; },
                 [](const ShiftedNormSquare&) { return 2.0; },
                 [](const DenseQuadratic& o) {
                   const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(o.q).eigenvalues();
                   return 2.0 * ev.cwiseAbs().maxCoeff();
                 },
                 [](const BlockSeparable& o) {
                   double l = 0.0;
                   for (const auto& b : o.blocks) l = std::max(l, lipschitz_upper(b));
                   return l;
                 }},
      obj.repr());
}

double strong_convexity_lower(const Objective& obj) {
  return std::visit(
      overloaded{[](const FactoredQuadratic& o) {
                   return o.sign > 0 ? 2.0 * sigma_min_squared(o.a) : 0.0;
                 },
                 [](const LeastSquares& o) { return 2.0 * sigma_min_squared(o.a); },
                 [](const MatrixCompletionLoss& o) {
                   std::set<Index> seen;
                   for (const auto& ob : o.observed) seen.insert(flat(ob, o.rows));
                   return static_cast<Index>(seen.size()) == o.rows * o.cols ? 2.0 : 0.0;
                 },
                 [](const ShiftedNormSquare&) { return 2.0; },
                 [](const DenseQuadratic& o) {
                   if (o.q.rows() > kDenseSpectrumLimit) return 0.0;
                   const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(o.q).eigenvalues();
                   return 2.0 * std::max(ev.minCoeff(), 0.0);
                 },
                 [](const BlockSeparable& o) {
                   double mu = std::numeric_limits<double>::infinity();
                   for (const auto& b : o.blocks) mu = std::min(mu, strong_convexity_lower(b));
                   return mu;
                 }},
      obj.repr());
}

double exact_linesearch_quadratic(const Objective& obj, double slope, const Vector& d,
                                  double alpha_max) {
  if (!obj.is_quadratic()) throw CapabilityError("exact line search needs a quadratic objective");
  if (d.size() == 0 || d.lpNorm<Eigen::Infinity>() == 0.0) {
    throw InputError("exact line search: zero direction");
  }
  if (!(alpha_max > 0.0)) throw InputError("exact line search: alpha_max must be positive");
  const double q = obj.curvature(d);
  if (q > 0.0) return std::clamp(-slope / (2.0 * q), 0.0, alpha_max);
  // Concave or linear along d: the minimum sits at an endpoint; 0 wins ties.
  const double change = alpha_max * slope + alpha_max * alpha_max * q;
  return change < 0.0 ? alpha_max : 0.0;
}

double exact_linesearch_quadratic(const Objective& obj, const Vector& x, const Vector& d,
                                  double alpha_max) {
  return exact_linesearch_quadratic(obj, obj.gradient(x).dot(d), d, alpha_max);
}

bool is_convex(const Objective& obj) {
  if (const auto* fq = obj.get<FactoredQuadratic>()) return fq->sign > 0;
  if (const auto* dq = obj.get<DenseQuadratic>()) {
    const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(dq->q).eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    return ev.minCoeff() >= -1e-12 * scale;
  }
  if (const auto* bs = obj.get<BlockSeparable>()) {
    return std::all_of(bs->blocks.begin(), bs->blocks.end(),
                       [](const Objective& b) { return is_convex(b); });
  }
  return true;
}

}  // namespace fwkit
