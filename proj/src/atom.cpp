#include "fwkit/atom.hpp"

#include <cmath>
#include <string>

#include "fwkit/errors.hpp"

namespace fwkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool close(const Vector& a, const Vector& b, double tol) {
  return a.size() == b.size() && (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

}  // namespace

Atom Atom::dense(Vector value) { return Atom(DenseAtom{std::move(value)}); }

Atom Atom::signed_unit(Index dim, Index index, int sign, double scale) {
  if (index < 0 || index >= dim) throw InputError("signed_unit index out of range");
  if (sign != 1 && sign != -1) throw InputError("signed_unit sign must be +1 or -1");
  if (!(scale > 0.0)) throw InputError("signed_unit scale must be positive");
  return Atom(SignedUnitAtom{dim, index, sign, scale});
}

Atom Atom::rank_one(Vector u, Vector v, double scale) {
  if (!(scale > 0.0)) throw InputError("rank_one scale must be positive");
  const double nu = u.norm(), nv = v.norm();
  // Factors must already be unit; tiny normalization noise is absorbed here.
  if (std::abs(nu - 1.0) > 1e-8 || std::abs(nv - 1.0) > 1e-8) {
    throw InputError("rank_one factors must have unit norm");
  }
  u /= nu;
  v /= nv;
  return Atom(RankOneAtom{std::move(u), std::move(v), scale});
}

AtomKind Atom::kind() const {
  return std::visit(overloaded{[](const DenseAtom&) { return AtomKind::Dense; },
                               [](const SignedUnitAtom&) { return AtomKind::SignedUnit; },
                               [](const RankOneAtom&) { return AtomKind::RankOne; }},
                    repr_);
}

Index Atom::dimension() const {
  return std::visit(overloaded{[](const DenseAtom& a) { return a.value.size(); },
                               [](const SignedUnitAtom& a) { return a.dim; },
                               [](const RankOneAtom& a) { return a.u.size() * a.v.size(); }},
                    repr_);
}

Vector Atom::densify() const {
  Vector out = Vector::Zero(dimension());
  add_to(out, 1.0);
  return out;
}

double Atom::dot(const Vector& g) const {
  if (g.size() != dimension()) throw StructuralError("atom/gradient dimension mismatch");
  return std::visit(
      overloaded{[&](const DenseAtom& a) { return a.value.dot(g); },
                 [&](const SignedUnitAtom& a) { return a.sign * a.scale * g[a.index]; },
                 [&](const RankOneAtom& a) {
                   const Eigen::Map<const Matrix> gm(g.data(), a.u.size(), a.v.size());
                   return a.scale * a.u.dot(gm * a.v);
                 }},
      repr_);
}

void Atom::add_to(Vector& x, double weight) const {
  if (x.size() != dimension()) throw StructuralError("atom/point dimension mismatch");
  std::visit(overloaded{[&](const DenseAtom& a) { x += weight * a.value; },
                        [&](const SignedUnitAtom& a) { x[a.index] += weight * a.sign * a.scale; },
                        [&](const RankOneAtom& a) {
                          Eigen::Map<Matrix> xm(x.data(), a.u.size(), a.v.size());
                          xm.noalias() += (weight * a.scale) * a.u * a.v.transpose();
                        }},
             repr_);
}

double Atom::norm() const {
  return std::visit(overloaded{[](const DenseAtom& a) { return a.value.norm(); },
                               [](const SignedUnitAtom& a) { return a.scale; },
                               [](const RankOneAtom& a) { return a.scale; }},
                    repr_);
}

bool Atom::equals(const Atom& other, double tol) const {
  if (kind() != other.kind() || dimension() != other.dimension()) return false;
  if (const auto* a = as_dense()) return close(a->value, other.as_dense()->value, tol);
  if (const auto* a = as_signed_unit()) {
    const auto* b = other.as_signed_unit();
    return a->index == b->index && a->sign == b->sign && std::abs(a->scale - b->scale) <= tol;
  }
  const auto* a = as_rank_one();
  const auto* b = other.as_rank_one();
  if (a->u.size() != b->u.size() || std::abs(a->scale - b->scale) > tol) return false;
  // u v^T == (-u)(-v)^T, so compare up to a joint sign flip.
  return (close(a->u, b->u, tol) && close(a->v, b->v, tol)) ||
         (close(a->u, -b->u, tol) && close(a->v, -b->v, tol));
}

}  // namespace fwkit
