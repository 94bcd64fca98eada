#pragma once

#include <variant>

#include "fwkit/types.hpp"

namespace fwkit {

struct DenseAtom {
  Vector value;
};

/// sign * scale * e_index in R^dim (`index` is zero-based).
struct SignedUnitAtom {
  Index dim;
  Index index;
  int sign;
  double scale;
};

/// scale * u v^T, flattened column-major into R^(m*n) with m = |u|, n = |v|.
struct RankOneAtom {
  Vector u;
  Vector v;
  double scale;
};

enum class AtomKind { Dense, SignedUnit, RankOne };

/// An extreme point handed out by a linear minimization oracle.
///
/// Signed-unit and rank-one atoms keep their factored form so that inner
/// products with a gradient cost O(1) or O(|J|) instead of a full
/// densification.
class Atom {
 public:
  static Atom dense(Vector value);
  static Atom signed_unit(Index dim, Index index, int sign, double scale);
  static Atom rank_one(Vector u, Vector v, double scale);

  AtomKind kind() const;
  Index dimension() const;

  Vector densify() const;
  /// <g, densify()>
  double dot(const Vector& g) const;
  /// x += weight * densify()
  void add_to(Vector& x, double weight) const;
  double norm() const;

  /// Structural equality: same tag, fields within `tol`.
  bool equals(const Atom& other, double tol = 1e-12) const;

  const DenseAtom* as_dense() const { return std::get_if<DenseAtom>(&repr_); }
  const SignedUnitAtom* as_signed_unit() const { return std::get_if<SignedUnitAtom>(&repr_); }
  const RankOneAtom* as_rank_one() const { return std::get_if<RankOneAtom>(&repr_); }

 private:
  explicit Atom(std::variant<DenseAtom, SignedUnitAtom, RankOneAtom> repr)
      : repr_(std::move(repr)) {}

  std::variant<DenseAtom, SignedUnitAtom, RankOneAtom> repr_;
};

}  // namespace fwkit
