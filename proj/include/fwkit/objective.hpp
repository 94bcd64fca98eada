#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fwkit/types.hpp"

namespace fwkit {

class Objective;

/// sign * ||A x||^2 + b^T x + c
struct FactoredQuadratic {
  Matrix a;
  Vector b;
  double c = 0.0;
  int sign = 1;
};
/// ||A x - b||^2
struct LeastSquares {
  Matrix a;
  Vector b;
};
struct Observation {
  Index i;  // zero-based row
  Index j;  // zero-based column
  double value;
};
/// sum over observed (i, j) of (X_ij - U_ij)^2, X flattened column-major.
struct MatrixCompletionLoss {
  std::vector<Observation> observed;
  Index rows;
  Index cols;
};
/// ||x - center||^2
struct ShiftedNormSquare {
  Vector center;
};
/// x^T Q x + b^T x + c with Q symmetric, possibly indefinite.
struct DenseQuadratic {
  Matrix q;
  Vector b;
  double c = 0.0;
};
/// sum_i f_i(x_i) over consecutive blocks.
struct BlockSeparable {
  std::vector<Objective> blocks;
};

struct Evaluation {
  double value;
  Vector gradient;
};

/// A differentiable objective with value/gradient oracle and known structure.
class Objective {
 public:
  using Repr = std::variant<FactoredQuadratic, LeastSquares, MatrixCompletionLoss,
                            ShiftedNormSquare, DenseQuadratic, BlockSeparable>;

  static Objective factored_quadratic(Matrix a, Vector b, double c = 0.0, int sign = 1);
  static Objective least_squares(Matrix a, Vector b);
  static Objective matrix_completion(std::vector<Observation> observed, Index rows, Index cols);
  static Objective shifted_norm_square(Vector center);
  static Objective dense_quadratic(Matrix q, Vector b, double c = 0.0);
  static Objective block_separable(std::vector<Objective> blocks);

  const Repr& repr() const { return repr_; }
  template <class T>
  const T* get() const {
    return std::get_if<T>(&repr_);
  }

  Index dimension() const;
  std::string name() const;
  /// True when f along any line is exactly a quadratic polynomial.
  bool is_quadratic() const;

  Evaluation eval(const Vector& x) const;
  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  /// q(d) such that f(x + a d) = f(x) + a <grad f(x), d> + a^2 q(d).
  double curvature(const Vector& d) const;

 private:
  explicit Objective(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
};

/// Upper bound on the gradient Lipschitz constant.
double lipschitz_upper(const Objective& obj);
/// Lower bound on the strong convexity modulus; 0 when unknown or absent.
double strong_convexity_lower(const Objective& obj);
/// False for negated factored quadratics and indefinite dense quadratics.
bool is_convex(const Objective& obj);
/// Smallest minimizer of f(x + a d) over [0, alpha_max].
double exact_linesearch_quadratic(const Objective& obj, const Vector& x, const Vector& d,
                                  double alpha_max);
/// Same, given the directional derivative <grad f(x), d> already computed.
double exact_linesearch_quadratic(const Objective& obj, double slope, const Vector& d,
                                  double alpha_max);

}  // namespace fwkit
