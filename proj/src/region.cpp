#include "fwkit/region.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fwkit/errors.hpp"
#include "fwkit/kernels.hpp"
#include "fwkit/min_norm.hpp"
#include "fwkit/svd.hpp"

namespace fwkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_dim(const Region& region, const Vector& v, const char* what) {
  if (v.size() != region.dimension()) {
    throw InputError(std::string(what) + " has dimension " + std::to_string(v.size()) +
                     ", region " + region.name() + " expects " +
                     std::to_string(region.dimension()));
  }
}

void require_finite(const Vector& g) {
  if (!g.allFinite()) throw InputError("gradient has non-finite entries");
}

// Sum over a subset mask of a vector.
double masked_sum(const Vector& v, std::uint32_t mask) {
  double s = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    if (mask & (1u << i)) s += v[i];
  }
  return s;
}

std::vector<Index> mask_members(std::uint32_t mask, Index n) {
  std::vector<Index> out;
  for (Index i = 0; i < n; ++i) {
    if (mask & (1u << i)) out.push_back(i);
  }
  return out;
}

constexpr Index kMaxSubsetEnumeration = 20;

double nuclear_norm(const Vector& x, Index rows, Index cols) {
  const Eigen::Map<const Matrix> xm(x.data(), rows, cols);
  return Eigen::JacobiSVD<Matrix>(xm).singularValues().sum();
}

}  // namespace

// ---------------------------------------------------------------- construction

Region Region::simplex(Index n) {
  if (n <= 0) throw InputError("simplex dimension must be positive");
  return Region(Simplex{n});
}

Region Region::l1_ball(double radius, Index n) {
  if (!(radius > 0.0) || n <= 0) throw InputError("l1 ball needs radius > 0 and n > 0");
  return Region(L1Ball{radius, n});
}

Region Region::l2_ball(double radius, Index n) {
  if (!(radius > 0.0) || n <= 0) throw InputError("l2 ball needs radius > 0 and n > 0");
  return Region(L2Ball{radius, n});
}

Region Region::linf_ball(double radius, Index n) {
  if (!(radius > 0.0) || n <= 0) throw InputError("linf ball needs radius > 0 and n > 0");
  return Region(LinfBall{radius, n});
}

Region Region::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size() || lower.size() == 0) throw InputError("box bounds mismatch");
  if (!lower.allFinite() || !upper.allFinite()) throw InputError("box bounds must be finite");
  if ((lower.array() > upper.array()).any()) throw InputError("box needs lower <= upper");
  return Region(Box{std::move(lower), std::move(upper)});
}

Region Region::nuclear_ball(double radius, Index rows, Index cols) {
  if (!(radius > 0.0) || rows <= 0 || cols <= 0) throw InputError("nuclear ball parameters");
  return Region(NuclearBall{radius, rows, cols});
}

Region Region::base_polytope(SubmodularFunction fn) { return Region(BasePolytope{std::move(fn)}); }

Region Region::vertex_hull(std::vector<Vector> vertices) {
  if (vertices.empty()) throw InputError("vertex hull needs vertices");
  for (const auto& v : vertices) {
    if (v.size() != vertices.front().size()) throw InputError("vertex dimension mismatch");
    if (!v.allFinite()) throw InputError("vertex has non-finite entries");
  }
  return Region(VertexHull{std::move(vertices)});
}

Region Region::product(std::vector<Region> blocks) {
  if (blocks.empty()) throw InputError("product needs at least one block");
  for (const auto& b : blocks) {
    if (b.dimension() <= 0) throw InputError("product blocks must have positive dimension");
  }
  return Region(Product{std::move(blocks)});
}

Index Region::dimension() const {
  return std::visit(
      overloaded{[](const Simplex& r) { return r.n; }, [](const L1Ball& r) { return r.n; },
                 [](const L2Ball& r) { return r.n; }, [](const LinfBall& r) { return r.n; },
                 [](const Box& r) { return r.lower.size(); },
                 [](const NuclearBall& r) { return r.rows * r.cols; },
                 [](const BasePolytope& r) { return r.fn.ground_size(); },
                 [](const VertexHull& r) { return r.vertices.front().size(); },
                 [](const Product& r) {
                   Index d = 0;
                   for (const auto& b : r.blocks) d += b.dimension();
                   return d;
                 }},
      repr_);
}

std::string Region::name() const {
  return std::visit(overloaded{[](const Simplex&) { return std::string("simplex"); },
                               [](const L1Ball&) { return std::string("l1_ball"); },
                               [](const L2Ball&) { return std::string("l2_ball"); },
                               [](const LinfBall&) { return std::string("linf_ball"); },
                               [](const Box&) { return std::string("box"); },
                               [](const NuclearBall&) { return std::string("nuclear_ball"); },
                               [](const BasePolytope&) { return std::string("base_polytope"); },
                               [](const VertexHull&) { return std::string("vertex_hull"); },
                               [](const Product&) { return std::string("product"); }},
                    repr_);
}

bool Region::is_polytope() const {
  return std::visit(overloaded{[](const L2Ball&) { return false; },
                               [](const NuclearBall&) { return false; },
                               [](const Product& r) {
                                 return std::all_of(r.blocks.begin(), r.blocks.end(),
                                                    [](const Region& b) { return b.is_polytope(); });
                               },
                               [](const auto&) { return true; }},
                    repr_);
}

std::vector<Index> Region::block_offsets() const {
  const auto* p = get<Product>();
  if (!p) throw CapabilityError("block_offsets on a non-product region");
  std::vector<Index> off{0};
  for (const auto& b : p->blocks) off.push_back(off.back() + b.dimension());
  return off;
}

// ---------------------------------------------------------------- LMO

Atom lmo(const Region& region, const Vector& g) {
  require_dim(region, g, "gradient");
  require_finite(g);
  return std::visit(
      overloaded{
          [&](const Simplex& r) {
            return Atom::signed_unit(r.n, kernels::argmin(kernels::view(g)), 1, 1.0);
          },
          [&](const L1Ball& r) {
            const Index i = kernels::argmax_abs(kernels::view(g));
            return Atom::signed_unit(r.n, i, g[i] > 0.0 ? -1 : 1, r.radius);
          },
          [&](const L2Ball& r) {
            const double norm = g.norm();
            if (norm == 0.0) return Atom::dense(Vector::Zero(r.n));
            return Atom::dense(Vector(-r.radius * g / norm));
          },
          [&](const LinfBall& r) {
            Vector s(r.n);
            for (Index i = 0; i < r.n; ++i) s[i] = g[i] < 0.0 ? r.radius : -r.radius;
            return Atom::dense(std::move(s));
          },
          [&](const Box& r) {
            Vector s(r.lower.size());
            for (Index i = 0; i < s.size(); ++i) s[i] = g[i] < 0.0 ? r.upper[i] : r.lower[i];
            return Atom::dense(std::move(s));
          },
          [&](const NuclearBall& r) {
            const Matrix neg = -Eigen::Map<const Matrix>(g.data(), r.rows, r.cols);
            SingularPair top = top_singular_pair(neg);
            return Atom::rank_one(std::move(top.u), std::move(top.v), r.radius);
          },
          [&](const BasePolytope& r) { return Atom::dense(base_polytope_greedy(r.fn, -g)); },
          [&](const VertexHull& r) {
            Vector scores(static_cast<Index>(r.vertices.size()));
            for (std::size_t i = 0; i < r.vertices.size(); ++i) {
              scores[static_cast<Index>(i)] = g.dot(r.vertices[i]);
            }
            return Atom::dense(
                r.vertices[static_cast<std::size_t>(kernels::argmin(kernels::view(scores)))]);
          },
          [&](const Product& r) {
            Vector s(g.size());
            Index off = 0;
            for (const auto& block : r.blocks) {
              const Index d = block.dimension();
              s.segment(off, d) = lmo(block, g.segment(off, d)).densify();
              off += d;
            }
            return Atom::dense(std::move(s));
          }},
      region.repr());
}

Lmo exact_lmo(const Region& region) {
  return [&region](const Vector& g) { return lmo(region, g); };
}

double fw_gap(const Region& region, const Vector& x, const Vector& g) {
  require_dim(region, x, "point");
  return g.dot(x) - lmo(region, g).dot(g);
}

// ---------------------------------------------------------------- max step

namespace {

double ratio_test_box(const Vector& lower, const Vector& upper, const Vector& x, const Vector& d) {
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < x.size(); ++i) {
    if (d[i] > 0.0) best = std::min(best, (upper[i] - x[i]) / d[i]);
    if (d[i] < 0.0) best = std::min(best, (lower[i] - x[i]) / d[i]);
  }
  return std::max(best, 0.0);
}

double l1_step(double tau, const Vector& x, const Vector& d) {
  // ||x + a d||_1 is convex piecewise linear in a; walk its breakpoints.
  std::vector<std::pair<double, double>> kinks;  // (alpha, slope increase)
  double slope = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (d[i] == 0.0) continue;
    if (x[i] == 0.0) {
      slope += std::abs(d[i]);
    } else {
      slope += (x[i] > 0.0 ? d[i] : -d[i]);
      const double t = -x[i] / d[i];
      if (t > 0.0) kinks.emplace_back(t, 2.0 * std::abs(d[i]));
    }
  }
  std::sort(kinks.begin(), kinks.end());
  double alpha = 0.0;
  double value = x.lpNorm<1>();
  if (value >= tau && slope > 0.0) return 0.0;
  for (const auto& [t, bump] : kinks) {
    const double next = value + slope * (t - alpha);
    if (slope > 0.0 && next >= tau) return alpha + (tau - value) / slope;
    alpha = t;
    value = next;
    slope += bump;
  }
  if (!(slope > 0.0)) throw NumericalError("l1 ratio test found no boundary", slope);
  return alpha + (tau - value) / slope;
}

double nuclear_step(const NuclearBall& r, const Vector& x, const Vector& d) {
  auto inside = [&](double a) { return nuclear_norm(x + a * d, r.rows, r.cols) <= r.radius; };
  double lo = 0.0, hi = 1.0;
  while (inside(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericalError("nuclear ratio test diverged", hi);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return lo;
}

double base_polytope_step(const BasePolytope& r, const Vector& x, const Vector& d) {
  const Index n = r.fn.ground_size();
  if (n > kMaxSubsetEnumeration) {
    throw CapabilityError("max_feasible_step on base polytopes is limited to n <= 20");
  }
  if (std::abs(d.sum()) > 1e-9 * std::max(1.0, d.lpNorm<1>())) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const double dm = masked_sum(d, mask);
    if (dm <= 0.0) continue;
    const auto members = mask_members(mask, n);
    best = std::min(best, (r.fn(members) - masked_sum(x, mask)) / dm);
  }
  return std::max(best, 0.0);
}

}  // namespace

double max_feasible_step(const Region& region, const Vector& x, const Vector& d) {
  require_dim(region, x, "point");
  require_dim(region, d, "direction");
  if (d.lpNorm<Eigen::Infinity>() == 0.0) throw InputError("max_feasible_step: zero direction");
  return std::visit(
      overloaded{
          [&](const Simplex&) {
            if (std::abs(d.sum()) > 1e-9 * std::max(1.0, d.lpNorm<1>())) return 0.0;
            double best = std::numeric_limits<double>::infinity();
            for (Index i = 0; i < d.size(); ++i) {
              if (d[i] < 0.0) best = std::min(best, std::max(x[i], 0.0) / -d[i]);
            }
            return best;
          },
          [&](const L1Ball& r) { return l1_step(r.radius, x, d); },
          [&](const L2Ball& r) {
            const double a = d.squaredNorm(), b = x.dot(d);
            const double c = std::min(x.squaredNorm() - r.radius * r.radius, 0.0);
            return (-b + std::sqrt(b * b - a * c)) / a;
          },
          [&](const LinfBall& r) {
            return ratio_test_box(Vector::Constant(r.n, -r.radius), Vector::Constant(r.n, r.radius),
                                  x, d);
          },
          [&](const Box& r) { return ratio_test_box(r.lower, r.upper, x, d); },
          [&](const NuclearBall& r) { return nuclear_step(r, x, d); },
          [&](const BasePolytope& r) { return base_polytope_step(r, x, d); },
          [&](const VertexHull&) -> double {
            throw CapabilityError("max_feasible_step is not available for vertex hulls");
          },
          [&](const Product& r) {
            double best = std::numeric_limits<double>::infinity();
            Index off = 0;
            for (const auto& block : r.blocks) {
              const Index n = block.dimension();
              const Vector db = d.segment(off, n);
              if (db.lpNorm<Eigen::Infinity>() > 0.0) {
                best = std::min(best, max_feasible_step(block, x.segment(off, n), db));
              }
              off += n;
            }
            return best;
          }},
      region.repr());
}

bool is_feasible(const Region& region, const Vector& x, double tol) {
  require_dim(region, x, "point");
  if (!x.allFinite()) return false;
  return std::visit(
      overloaded{
          [&](const Simplex&) { return x.minCoeff() >= -tol && std::abs(x.sum() - 1.0) <= tol; },
          [&](const L1Ball& r) { return x.lpNorm<1>() <= r.radius + tol; },
          [&](const L2Ball& r) { return x.norm() <= r.radius + tol; },
          [&](const LinfBall& r) { return x.lpNorm<Eigen::Infinity>() <= r.radius + tol; },
          [&](const Box& r) {
            return ((x - r.lower).array() >= -tol).all() && ((r.upper - x).array() >= -tol).all();
          },
          [&](const NuclearBall& r) { return nuclear_norm(x, r.rows, r.cols) <= r.radius + tol; },
          [&](const BasePolytope& r) {
            const Index n = r.fn.ground_size();
            if (n > kMaxSubsetEnumeration) {
              throw CapabilityError("base polytope membership is limited to n <= 20");
            }
            std::vector<Index> all(static_cast<std::size_t>(n));
            std::iota(all.begin(), all.end(), Index{0});
            if (std::abs(x.sum() - r.fn(all)) > tol) return false;
            const std::uint32_t full = (1u << n) - 1u;
            for (std::uint32_t mask = 1; mask < full; ++mask) {
              if (masked_sum(x, mask) > r.fn(mask_members(mask, n)) + tol) return false;
            }
            return true;
          },
          [&](const VertexHull& r) {
            std::vector<Vector> shifted;
            shifted.reserve(r.vertices.size());
            for (const auto& v : r.vertices) shifted.push_back(v - x);
            return min_norm_point(shifted).point.norm() <= tol;
          },
          [&](const Product& r) {
            Index off = 0;
            for (const auto& block : r.blocks) {
              const Index n = block.dimension();
              if (!is_feasible(block, x.segment(off, n), tol)) return false;
              off += n;
            }
            return true;
          }},
      region.repr());
}

// ---------------------------------------------------------------- minimal face

MinimalFace MinimalFace::of_simplex(Index n, std::vector<Index> support) {
  MinimalFace f;
  f.simplex_ = true;
  f.n_ = n;
  f.support_ = std::move(support);
  return f;
}

MinimalFace MinimalFace::of_box(Vector lower, Vector upper, std::vector<int> fixed) {
  MinimalFace f;
  f.simplex_ = false;
  f.n_ = lower.size();
  f.lower_ = std::move(lower);
  f.upper_ = std::move(upper);
  f.fixed_ = std::move(fixed);
  return f;
}

std::vector<Atom> MinimalFace::vertices() const {
  std::vector<Atom> out;
  if (simplex_) {
    for (Index i : support_) out.push_back(Atom::signed_unit(n_, i, 1, 1.0));
    return out;
  }
  std::vector<Index> free;
  for (Index i = 0; i < n_; ++i) {
    if (fixed_[static_cast<std::size_t>(i)] == 0) free.push_back(i);
  }
  if (free.size() > 16) throw CapabilityError("box face has too many vertices to materialize");
  for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    Vector v(n_);
    for (Index i = 0; i < n_; ++i) {
      v[i] = fixed_[static_cast<std::size_t>(i)] > 0 ? upper_[i] : lower_[i];
    }
    for (std::size_t k = 0; k < free.size(); ++k) {
      if (mask & (1u << k)) v[free[k]] = upper_[free[k]];
    }
    out.push_back(Atom::dense(std::move(v)));
  }
  return out;
}

Atom MinimalFace::away_vertex(const Vector& g) const {
  if (simplex_) {
    Index best = support_.front();
    for (Index i : support_) {
      if (g[i] > g[best]) best = i;
    }
    return Atom::signed_unit(n_, best, 1, 1.0);
  }
  // Coordinatewise maximization of <g, v> over the face.
  Vector v(n_);
  for (Index i = 0; i < n_; ++i) {
    const int f = fixed_[static_cast<std::size_t>(i)];
    if (f > 0) {
      v[i] = upper_[i];
    } else if (f < 0) {
      v[i] = lower_[i];
    } else {
      v[i] = g[i] > 0.0 ? upper_[i] : lower_[i];
    }
  }
  return Atom::dense(std::move(v));
}

std::size_t MinimalFace::size_hint() const {
  if (simplex_) return support_.size();
  return static_cast<std::size_t>(std::count(fixed_.begin(), fixed_.end(), 0)) + 1;
}

MinimalFace minimal_face_vertices(const Region& region, const Vector& x) {
  require_dim(region, x, "point");
  constexpr double kFaceTol = 1e-12;
  if (const auto* s = region.get<Simplex>()) {
    std::vector<Index> support;
    for (Index i = 0; i < s->n; ++i) {
      if (x[i] > kFaceTol) support.push_back(i);
    }
    if (support.empty()) throw InputError("point is not in the simplex");
    return MinimalFace::of_simplex(s->n, std::move(support));
  }
  if (const auto* b = region.get<Box>()) {
    std::vector<int> fixed(static_cast<std::size_t>(x.size()), 0);
    for (Index i = 0; i < x.size(); ++i) {
      const double scale = std::max(1.0, b->upper[i] - b->lower[i]);
      if (b->upper[i] - x[i] <= kFaceTol * scale) {
        fixed[static_cast<std::size_t>(i)] = 1;
      } else if (x[i] - b->lower[i] <= kFaceTol * scale) {
        fixed[static_cast<std::size_t>(i)] = -1;
      }
    }
    return MinimalFace::of_box(b->lower, b->upper, std::move(fixed));
  }
  throw CapabilityError("minimal faces are only available for simplex and box regions");
}

// ---------------------------------------------------------------- diameter

namespace {

constexpr Index kBruteForceBaseDiameter = 7;

double max_pairwise_distance(const std::vector<Vector>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, (pts[i] - pts[j]).squaredNorm());
    }
  }
  return std::sqrt(best);
}

std::vector<Vector> base_polytope_vertices(const SubmodularFunction& fn) {
  const Index n = fn.ground_size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<Vector> out;
  do {
    Vector s(n);
    double previous = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const double current = fn(std::span<const Index>(order.data(), k + 1));
      s[order[k]] = current - previous;
      previous = current;
    }
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Vector& v) {
      return (v - s).lpNorm<Eigen::Infinity>() <= 1e-12;
    });
    if (!seen) out.push_back(std::move(s));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace

double diameter(const Region& region) {
  return std::visit(
      overloaded{[](const Simplex& r) { return r.n > 1 ? std::sqrt(2.0) : 0.0; },
                 [](const L1Ball& r) { return 2.0 * r.radius; },
                 [](const L2Ball& r) { return 2.0 * r.radius; },
                 [](const LinfBall& r) { return 2.0 * r.radius * std::sqrt(double(r.n)); },
                 [](const Box& r) { return (r.upper - r.lower).norm(); },
                 [](const NuclearBall& r) { return 2.0 * r.radius; },
                 [](const BasePolytope& r) {
                   const Index n = r.fn.ground_size();
                   if (n <= kBruteForceBaseDiameter) {
                     return max_pairwise_distance(base_polytope_vertices(r.fn));
                   }
                   std::vector<Index> all(static_cast<std::size_t>(n));
                   std::iota(all.begin(), all.end(), Index{0});
                   const double full = r.fn(all);
                   double spread = 0.0;
                   for (Index i = 0; i < n; ++i) {
                     std::vector<Index> rest;
                     for (Index j = 0; j < n; ++j) {
                       if (j != i) rest.push_back(j);
                     }
                     const Index single[] = {i};
                     spread = std::max(spread, std::abs(r.fn(single)) + std::abs(full - r.fn(rest)));
                   }
                   return 2.0 * spread * std::sqrt(double(n));
                 },
                 [](const VertexHull& r) { return max_pairwise_distance(r.vertices); },
                 [](const Product& r) {
                   double s = 0.0;
                   for (const auto& b : r.blocks) {
                     const double d = diameter(b);
                     s += d * d;
                   }
                   return std::sqrt(s);
                 }},
      region.repr());
}

std::optional<std::vector<Atom>> enumerate_vertices(const Region& region, std::size_t limit) {
  std::vector<Atom> out;
  if (const auto* s = region.get<Simplex>()) {
    if (static_cast<std::size_t>(s->n) > limit) return std::nullopt;
    for (Index i = 0; i < s->n; ++i) out.push_back(Atom::signed_unit(s->n, i, 1, 1.0));
    return out;
  }
  if (const auto* b = region.get<L1Ball>()) {
    if (static_cast<std::size_t>(2 * b->n) > limit) return std::nullopt;
    for (Index i = 0; i < b->n; ++i) {
      out.push_back(Atom::signed_unit(b->n, i, 1, b->radius));
      out.push_back(Atom::signed_unit(b->n, i, -1, b->radius));
    }
    return out;
  }
  if (const auto* h = region.get<VertexHull>()) {
    if (h->vertices.size() > limit) return std::nullopt;
    for (const auto& v : h->vertices) out.push_back(Atom::dense(v));
    return out;
  }
  const Vector* lower = nullptr;
  const Vector* upper = nullptr;
  Vector lo, hi;
  if (const auto* b = region.get<Box>()) {
    lower = &b->lower;
    upper = &b->upper;
  } else if (const auto* l = region.get<LinfBall>()) {
    lo = Vector::Constant(l->n, -l->radius);
    hi = Vector::Constant(l->n, l->radius);
    lower = &lo;
    upper = &hi;
  }
  if (lower) {
    const Index n = lower->size();
    if (n > 20 || (std::size_t{1} << n) > limit) return std::nullopt;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      Vector v(n);
      for (Index i = 0; i < n; ++i) v[i] = (mask & (1u << i)) ? (*upper)[i] : (*lower)[i];
      out.push_back(Atom::dense(std::move(v)));
    }
    return out;
  }
  if (const auto* bp = region.get<BasePolytope>()) {
    if (bp->fn.ground_size() > kBruteForceBaseDiameter) return std::nullopt;
    for (auto& v : base_polytope_vertices(bp->fn)) out.push_back(Atom::dense(std::move(v)));
    if (out.size() > limit) return std::nullopt;
    return out;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- pyramidal width

double pyramidal_width_bruteforce(std::span<const Vector> vertices) {
  const std::size_t count = vertices.size();
  if (count > 12) throw CapabilityError("pyramidal width brute force supports at most 12 vertices");
  if (count < 2) throw InputError("pyramidal width needs at least two vertices");
  const Index dim = vertices.front().size();
  double scale = 0.0;
  for (const auto& v : vertices) {
    if (v.size() != dim) throw InputError("vertex dimension mismatch");
    scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
  }
  scale = std::max(scale, 1.0);
  constexpr double kFaceTol = 1e-9;
  MinNormOptions opts;
  opts.gap_tol = 1e-15 * scale * scale;

  double width = std::numeric_limits<double>::infinity();
  const std::uint32_t full = (1u << count) - 1u;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::vector<Vector> inside, outside;
    for (std::size_t i = 0; i < count; ++i) {
      ((mask >> i) & 1u ? inside : outside).push_back(vertices[i]);
    }
    // S spans a face iff aff(S) misses conv(A \ S): project out aff(S)'s
    // direction space and measure the distance of the remaining hull.
    Matrix span_dirs(dim, static_cast<Index>(inside.size()) - 1);
    for (std::size_t i = 1; i < inside.size(); ++i) {
      span_dirs.col(static_cast<Index>(i) - 1) = inside[i] - inside[0];
    }
    Matrix projector = Matrix::Identity(dim, dim);
    if (span_dirs.cols() > 0) {
      Eigen::ColPivHouseholderQR<Matrix> qr(span_dirs);
      qr.setThreshold(1e-10);
      const Index rank = qr.rank();
      const Matrix q = Matrix(qr.householderQ()).leftCols(rank);
      projector -= q * q.transpose();
    }
    std::vector<Vector> projected;
    for (const auto& a : outside) projected.push_back(projector * (a - inside[0]));
    if (min_norm_point(projected, opts).point.norm() <= kFaceTol * scale) {
      if (inside.size() == 1) throw InputError("points are not in convex position");
      continue;
    }
    std::vector<Vector> difference;
    for (const auto& s : inside) {
      for (const auto& a : outside) difference.push_back(s - a);
    }
    width = std::min(width, min_norm_point(difference, opts).point.norm());
  }
  return width;
}

}  // namespace fwkit
