#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "fwkit/errors.hpp"
#include "fwkit/inexact.hpp"
#include "fwkit/kernels.hpp"
#include "fwkit/region.hpp"
#include "fwkit/svd.hpp"
#include "gen.hpp"

using namespace fwkit;
using fwkit::testing::Gen;
using fwkit::testing::unit;

namespace {

Vector from(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Vertices of B(r) by walking every permutation of the ground set.
std::vector<Vector> base_vertices(const SubmodularFunction& fn) {
  const Index n = fn.ground_size();
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Vector> out;
  do {
    Vector s(n);
    std::vector<Index> prefix;
    double prev = 0.0;
    for (Index i : perm) {
      prefix.push_back(i);
      std::vector<Index> sorted = prefix;
      std::sort(sorted.begin(), sorted.end());
      const double cur = fn(sorted);
      s[i] = cur - prev;
      prev = cur;
    }
    out.push_back(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Vector> brute_vertices(const Region& region, Gen& gen) {
  std::vector<Vector> out;
  if (auto* s = region.get<Simplex>()) {
    for (Index i = 0; i < s->n; ++i) out.push_back(unit(s->n, i));
  } else if (auto* l1 = region.get<L1Ball>()) {
    for (Index i = 0; i < l1->n; ++i) {
      out.push_back(l1->radius * unit(l1->n, i));
      out.push_back(-l1->radius * unit(l1->n, i));
    }
  } else if (auto* b = region.get<Box>()) {
    const Index n = b->lower.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      Vector v(n);
      for (Index i = 0; i < n; ++i) v[i] = (mask >> i) & 1u ? b->upper[i] : b->lower[i];
      out.push_back(v);
    }
  } else if (auto* bp = region.get<BasePolytope>()) {
    out = base_vertices(bp->fn);
  } else if (auto* l2 = region.get<L2Ball>()) {
    for (int t = 0; t < 1000; ++t) {
      Vector v = gen.gaussian(l2->n);
      out.push_back(v * (l2->radius * std::pow(gen.uniform(), 1.0 / l2->n) / v.norm()));
    }
  } else if (auto* li = region.get<LinfBall>()) {
    for (int t = 0; t < 1000; ++t) {
      Vector v(li->n);
      for (Index i = 0; i < li->n; ++i) v[i] = gen.uniform(-li->radius, li->radius);
      out.push_back(v);
    }
  } else if (auto* nb = region.get<NuclearBall>()) {
    for (int t = 0; t < 1000; ++t) {
      Matrix m = gen.gaussian(nb->rows, nb->cols);
      Eigen::JacobiSVD<Matrix> svd(m);
      m *= nb->radius * gen.uniform() / svd.singularValues().sum();
      out.emplace_back(Eigen::Map<Vector>(m.data(), m.size()));
    }
  }
  return out;
}

std::vector<Region> sample_regions() {
  std::vector<Region> r;
  r.push_back(Region::simplex(6));
  r.push_back(Region::l1_ball(2.5, 5));
  r.push_back(Region::box(from({-1, 0, 0.5, -2}), from({1, 2, 0.5, 3})));
  r.push_back(Region::base_polytope(SubmodularFunction::cardinality_cap(5, 2)));
  r.push_back(Region::base_polytope(
      SubmodularFunction::graph_cut(4, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 0.5}, {0, 3, 1.5}})));
  r.push_back(Region::l2_ball(1.5, 4));
  r.push_back(Region::linf_ball(0.7, 4));
  r.push_back(Region::nuclear_ball(2.0, 3, 4));
  return r;
}

}  // namespace

TEST(Lmo, Examples) {
  EXPECT_TRUE(lmo(Region::simplex(3), from({3, 1, 2})).equals(Atom::signed_unit(3, 1, 1, 1.0)));
  EXPECT_LT((lmo(Region::l1_ball(2, 2), from({1, -3})).densify() - from({0, 2})).norm(), 1e-15);
  Vector g = Vector::Zero(4);
  g[0] = -3;
  g[3] = -1;
  // power iteration stops on the Rayleigh quotient, so the factors are only
  // accurate to about the square root of its 1e-10 tolerance
  Vector s = lmo(Region::nuclear_ball(1, 2, 2), g).densify();
  EXPECT_LT((s - from({1, 0, 0, 0})).norm(), 1e-5);
}

TEST(Lmo, DegenerateGradients) {
  EXPECT_EQ(lmo(Region::l2_ball(2, 3), Vector::Zero(3)).densify(), Vector::Zero(3));
  EXPECT_EQ(lmo(Region::linf_ball(1, 3), from({0, -1, 1})).densify(), from({-1, 1, -1}));
  EXPECT_TRUE(lmo(Region::simplex(3), from({1, 0, 0})).equals(Atom::signed_unit(3, 1, 1, 1.0)));
  EXPECT_THROW(lmo(Region::simplex(2), from({NAN, 0})), InputError);
}

TEST(LmoProperty, BeatsEveryEnumeratedPoint) {
  for (const Region& region : sample_regions()) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Gen gen(seed * 7919 + static_cast<std::uint64_t>(region.dimension()));
      Vector g = gen.gaussian(region.dimension());
      const double best = lmo(region, g).dot(g);
      for (const Vector& v : brute_vertices(region, gen)) {
        ASSERT_LE(best, g.dot(v) + 1e-9 * std::max(1.0, std::abs(best)))
            << region.name() << " seed " << seed;
      }
    }
  }
}

TEST(BaseGreedy, Examples) {
  auto cap1 = SubmodularFunction::cardinality_cap(2, 1);
  EXPECT_EQ(base_polytope_greedy(cap1, from({0.7, 0.3})), from({1, 0}));
  EXPECT_EQ(base_polytope_greedy(cap1, from({0.3, 0.7})), from({0, 1}));
  auto modular = SubmodularFunction::modular(Vector::Ones(5));
  EXPECT_EQ(base_polytope_greedy(modular, Gen(3).gaussian(5)), Vector::Ones(5));
}

TEST(BaseGreedyProperty, OutputLiesInBasePolytope) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Gen gen(seed);
    const Index n = gen.integer(2, 6);
    std::vector<WeightedEdge> edges;
    for (Index u = 0; u < n; ++u)
      for (Index v = u + 1; v < n; ++v)
        if (gen.uniform() < 0.5) edges.push_back({u, v, gen.uniform(0.1, 2.0)});
    SubmodularFunction fns[] = {SubmodularFunction::cardinality_cap(n, gen.integer(1, n)),
                                SubmodularFunction::graph_cut(n, edges)};
    for (const auto& fn : fns) {
      Vector s = base_polytope_greedy(fn, gen.gaussian(n));
      std::vector<Index> all(static_cast<std::size_t>(n));
      std::iota(all.begin(), all.end(), 0);
      ASSERT_NEAR(s.sum(), fn(all), 1e-12);
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<Index> subset;
        double total = 0.0;
        for (Index i = 0; i < n; ++i)
          if ((mask >> i) & 1u) {
            subset.push_back(i);
            total += s[i];
          }
        ASSERT_LE(total, fn(subset) + 1e-12) << fn.name() << " seed " << seed;
      }
    }
  }
}

TEST(FwGap, Examples) {
  EXPECT_DOUBLE_EQ(fw_gap(Region::simplex(2), from({0.5, 0.5}), from({1, 1})), 0.0);
  EXPECT_DOUBLE_EQ(fw_gap(Region::simplex(2), from({1, 0}), from({1, 0})), 1.0);
  for (const Region& region : sample_regions()) {
    Vector x = lmo(region, Gen(1).gaussian(region.dimension())).densify();
    EXPECT_DOUBLE_EQ(fw_gap(region, x, Vector::Zero(region.dimension())), 0.0);
  }
}

TEST(MaxFeasibleStep, Examples) {
  Vector x = from({0.5, 0.5, 0});
  EXPECT_NEAR(max_feasible_step(Region::simplex(3), x, x - unit(3, 0)), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(
      max_feasible_step(Region::box(Vector::Zero(2), Vector::Ones(2)), from({0.5, 0.5}),
                        from({1, 0})),
      0.5);
  EXPECT_DOUBLE_EQ(max_feasible_step(Region::l2_ball(1, 2), from({0, 0}), from({1, 0})), 1.0);
  EXPECT_THROW(max_feasible_step(Region::simplex(3), x, Vector::Zero(3)), InputError);
}

namespace {

// Membership tests written from the definitions, not the library.
bool member(const Region& region, const Vector& x, double tol) {
  if (region.get<Simplex>()) return x.minCoeff() >= -tol && std::abs(x.sum() - 1.0) <= tol;
  if (auto* r = region.get<L1Ball>()) return x.lpNorm<1>() <= r->radius + tol;
  if (auto* r = region.get<L2Ball>()) return x.norm() <= r->radius + tol;
  if (auto* r = region.get<LinfBall>()) return x.lpNorm<Eigen::Infinity>() <= r->radius + tol;
  if (auto* r = region.get<Box>())
    return ((x - r->lower).array() >= -tol).all() && ((r->upper - x).array() >= -tol).all();
  if (auto* r = region.get<NuclearBall>()) {
    Eigen::JacobiSVD<Matrix> svd(Eigen::Map<const Matrix>(x.data(), r->rows, r->cols));
    return svd.singularValues().sum() <= r->radius + tol;
  }
  return false;
}

}  // namespace

TEST(MaxFeasibleStepProperty, BoundaryIsTight) {
  std::vector<Region> regions = {Region::simplex(5), Region::l1_ball(2, 4), Region::l2_ball(1.5, 3),
                                 Region::linf_ball(1, 4),
                                 Region::box(from({-1, 0, 2}), from({1, 3, 4})),
                                 Region::nuclear_ball(2, 2, 3)};
  for (const Region& region : regions) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Gen gen(seed);
      const Index n = region.dimension();
      // x is a random convex combination of two LMO vertices, d a random direction
      // (sum-zero on the simplex).
      Vector a = lmo(region, gen.gaussian(n)).densify();
      Vector b = lmo(region, gen.gaussian(n)).densify();
      const double t = gen.uniform(0.1, 0.9);
      Vector x = t * a + (1 - t) * b;
      Vector d = gen.gaussian(n);
      if (region.get<Simplex>()) d.array() -= d.mean();
      const double step = max_feasible_step(region, x, d);
      ASSERT_TRUE(std::isfinite(step));
      ASSERT_TRUE(member(region, Vector(x + step * d), 1e-9)) << region.name() << " seed " << seed;
      ASSERT_FALSE(member(region, Vector(x + (step + 1e-6) * d), 1e-9))
          << region.name() << " seed " << seed;
    }
  }
}

TEST(MinimalFace, Examples) {
  MinimalFace f = minimal_face_vertices(Region::simplex(3), from({0.5, 0.5, 0}));
  auto verts = f.vertices();
  ASSERT_EQ(verts.size(), 2u);
  EXPECT_EQ(verts[0].densify(), unit(3, 0));
  EXPECT_EQ(verts[1].densify(), unit(3, 1));
  EXPECT_EQ(minimal_face_vertices(Region::simplex(3), unit(3, 0)).vertices().size(), 1u);

  MinimalFace box = minimal_face_vertices(Region::box(Vector::Zero(2), Vector::Ones(2)),
                                          from({1, 0.3}));
  EXPECT_EQ(box.away_vertex(from({0, 1})).densify(), from({1, 1}));
  EXPECT_EQ(box.size_hint(), 2u);
  EXPECT_THROW(minimal_face_vertices(Region::l2_ball(1, 2), from({0, 0})), CapabilityError);
}

TEST(Diameter, Examples) {
  EXPECT_NEAR(diameter(Region::simplex(5)), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(diameter(Region::l1_ball(3, 7)), 6.0, 1e-15);
  EXPECT_NEAR(diameter(Region::box(Vector::Zero(3), Vector::Ones(3))), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(diameter(Region::l2_ball(2, 4)), 4.0, 1e-15);
}

TEST(PyramidalWidth, ClosedForms) {
  std::vector<Vector> seg = {unit(2, 0), unit(2, 1)};
  EXPECT_NEAR(pyramidal_width_bruteforce(seg), 2.0 / std::sqrt(2.0), 1e-9);
  std::vector<Vector> square = {from({0, 0}), from({1, 0}), from({0, 1}), from({1, 1})};
  EXPECT_NEAR(pyramidal_width_bruteforce(square), 1.0 / std::sqrt(2.0), 1e-9);
  std::vector<Vector> tri = {unit(3, 0), unit(3, 1), unit(3, 2)};
  EXPECT_NEAR(pyramidal_width_bruteforce(tri), 2.0 / std::sqrt(3.0 - 1.0 / 3.0), 1e-9);
  std::vector<Vector> many(13, Vector::Zero(2));
  EXPECT_THROW(pyramidal_width_bruteforce(many), CapabilityError);
}

TEST(TopSingularPair, MatchesDenseSvd) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen gen(seed);
    const Index m = gen.integer(1, 50), n = gen.integer(1, 50);
    Matrix a = gen.gaussian(m, n);
    Eigen::JacobiSVD<Matrix> svd(a);
    const double sigma = svd.singularValues()[0];
    SingularPair top = top_singular_pair(a);
    EXPECT_LE(std::abs(top.sigma - sigma), 1e-6 * sigma) << m << "x" << n;
    EXPECT_NEAR(top.u.norm(), 1.0, 1e-12);
    EXPECT_NEAR(top.v.norm(), 1.0, 1e-12);
  }
}

TEST(InexactLmo, ZeroScheduleIsExact) {
  Region region = Region::l1_ball(1.5, 6);
  Lmo inexact = make_inexact_lmo(region, exact_lmo(region), InexactSchedule::constant(0.0, 9));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Vector g = Gen(seed).gaussian(6);
    EXPECT_TRUE(inexact(g).equals(lmo(region, g)));
  }
}

TEST(InexactLmo, AdmissibleVertexWithinBudget) {
  Region region = Region::simplex(2);
  Lmo inexact = make_inexact_lmo(region, exact_lmo(region), InexactSchedule::constant(0.2, 1));
  Atom s = inexact(from({0.4, 0.5}));
  EXPECT_TRUE(s.equals(Atom::signed_unit(2, 1, 1, 1.0)));

  Region big = Region::simplex(10);
  auto schedule = InexactSchedule::constant(0.3, 4);
  Lmo noisy = make_inexact_lmo(big, exact_lmo(big), schedule);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Vector g = Gen(seed).gaussian(10);
    EXPECT_LE(noisy(g).dot(g), g.minCoeff() + 0.3 + 1e-15);
  }
}

TEST(InexactSchedule, DecayingFormula) {
  auto s = InexactSchedule::decaying(1.0, 4.0);
  EXPECT_DOUBLE_EQ(s.at(0), 2.0);
  EXPECT_DOUBLE_EQ(s.at(2), 1.0);
  EXPECT_DOUBLE_EQ(InexactSchedule::constant(0.5).at(17), 0.5);
}
