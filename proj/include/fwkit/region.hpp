#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fwkit/atom.hpp"
#include "fwkit/submodular.hpp"
#include "fwkit/types.hpp"

namespace fwkit {

class Region;

struct Simplex {
  Index n;
};
struct L1Ball {
  double radius;
  Index n;
};
struct L2Ball {
  double radius;
  Index n;
};
struct LinfBall {
  double radius;
  Index n;
};
struct Box {
  Vector lower;
  Vector upper;
};
/// Nuclear-norm ball of rows x cols matrices, iterates flattened column-major.
struct NuclearBall {
  double radius;
  Index rows;
  Index cols;
};
struct BasePolytope {
  SubmodularFunction fn;
};
/// conv(vertices) for an explicit vertex list.
struct VertexHull {
  std::vector<Vector> vertices;
};
struct Product {
  std::vector<Region> blocks;
};

/// A compact convex feasible set together with its oracles.
class Region {
 public:
  using Repr = std::variant<Simplex, L1Ball, L2Ball, LinfBall, Box, NuclearBall, BasePolytope,
                            VertexHull, Product>;

  static Region simplex(Index n);
  static Region l1_ball(double radius, Index n);
  static Region l2_ball(double radius, Index n);
  static Region linf_ball(double radius, Index n);
  static Region box(Vector lower, Vector upper);
  static Region nuclear_ball(double radius, Index rows, Index cols);
  static Region base_polytope(SubmodularFunction fn);
  static Region vertex_hull(std::vector<Vector> vertices);
  static Region product(std::vector<Region> blocks);

  const Repr& repr() const { return repr_; }
  template <class T>
  const T* get() const {
    return std::get_if<T>(&repr_);
  }

  Index dimension() const;
  std::string name() const;
  /// True for regions with finitely many extreme points (active-set variants apply).
  bool is_polytope() const;

  /// Product only: start offset of every block plus the total dimension.
  std::vector<Index> block_offsets() const;

 private:
  explicit Region(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
};

/// Linear minimization oracle as a callable; wrappers may carry state.
using Lmo = std::function<Atom(const Vector& g)>;

/// Extreme point minimizing <g, z> over the region; ties go to the lowest index.
Atom lmo(const Region& region, const Vector& g);
/// The exact oracle of `region` as an `Lmo`.
Lmo exact_lmo(const Region& region);

/// <g, x - lmo(g)>
double fw_gap(const Region& region, const Vector& x, const Vector& g);

/// sup { alpha >= 0 : x + alpha d in region }.
double max_feasible_step(const Region& region, const Vector& x, const Vector& d);

bool is_feasible(const Region& region, const Vector& x, double tol = 1e-9);

/// The minimal face of a simplex or box containing a point. Box faces stay
/// implicit (fixed coordinates plus free ones) so 2^free vertices are never
/// materialized.
class MinimalFace {
 public:
  static MinimalFace of_simplex(Index n, std::vector<Index> support);
  static MinimalFace of_box(Vector lower, Vector upper, std::vector<int> fixed);

  bool is_simplex_face() const { return simplex_; }
  /// Simplex faces: the support vertices. Box faces: materialized vertices,
  /// CapabilityError if more than 2^16.
  std::vector<Atom> vertices() const;
  /// Face vertex maximizing <g, v>.
  Atom away_vertex(const Vector& g) const;
  /// Simplex: |support|; box: number of free coordinates + 1.
  std::size_t size_hint() const;

  const std::vector<Index>& support() const { return support_; }
  /// Box only: -1 at lower bound, +1 at upper bound, 0 free.
  const std::vector<int>& fixed() const { return fixed_; }

 private:
  bool simplex_ = true;
  Index n_ = 0;
  std::vector<Index> support_;
  Vector lower_, upper_;
  std::vector<int> fixed_;
};

/// CapabilityError for anything other than Simplex and Box.
MinimalFace minimal_face_vertices(const Region& region, const Vector& x);

/// Closed-form Euclidean diameter, or the documented upper bound for large
/// base polytopes.
double diameter(const Region& region);

/// Every vertex of a polytope region, or nullopt when the region is not a
/// polytope or has more than `limit` vertices.
std::optional<std::vector<Atom>> enumerate_vertices(const Region& region, std::size_t limit = 1 << 16);

/// Pyramidal width of a vertex set as the minimum over proper faces F of
/// dist(F, conv(A \ F)); exponential in |vertices| so limited to 12 points.
double pyramidal_width_bruteforce(std::span<const Vector> vertices);

}  // namespace fwkit
