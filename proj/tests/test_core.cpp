#include <gtest/gtest.h>

#include "fwkit/active_set.hpp"
#include "fwkit/errors.hpp"
#include "gen.hpp"

using namespace fwkit;
using fwkit::testing::Gen;
using fwkit::testing::unit;

namespace {

Atom e(Index n, Index i) { return Atom::signed_unit(n, i, 1, 1.0); }

Vector from(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST(Atom, DensifyAndDotAgree) {
  Atom s = Atom::signed_unit(4, 2, -1, 3.0);
  EXPECT_EQ(s.densify(), from({0, 0, -3, 0}));
  EXPECT_DOUBLE_EQ(s.dot(from({1, 2, 3, 4})), -9.0);
  Vector u = from({0.6, 0.8}), v = from({0, 0.6, 0.8});
  Atom r = Atom::rank_one(u, v, 0.5);
  Vector g = Gen(1).gaussian(6);
  EXPECT_NEAR(r.dot(g), r.densify().dot(g), 1e-14);
  // column-major: (i, j) at i + 2 j
  EXPECT_DOUBLE_EQ(r.densify()[1 + 2 * 2], 0.5 * 0.8 * 0.8);
  EXPECT_THROW(Atom::rank_one(from({1, 2}), v, 1.0), InputError);
}

TEST(Atom, StructuralEquality) {
  EXPECT_TRUE(e(3, 1).equals(Atom::dense(unit(3, 1))) == false);
  EXPECT_TRUE(e(3, 1).equals(e(3, 1)));
  EXPECT_FALSE(e(3, 1).equals(e(3, 2)));
}

TEST(ReconstructPoint, ConvexCombination) {
  ActiveSet as({e(3, 0), e(3, 1)}, {0.5, 0.5});
  EXPECT_TRUE(reconstruct_point(as).isApprox(from({0.5, 0.5, 0})));
}

TEST(ReconstructPoint, SingleAtom) {
  ActiveSet as(Atom::dense(from({0.2, 0.8})));
  EXPECT_EQ(reconstruct_point(as), from({0.2, 0.8}));
}

TEST(ReconstructPoint, RankOneAtomsGiveDiagonal) {
  ActiveSet as({Atom::rank_one(unit(2, 0), unit(2, 0), 2.0),
                Atom::rank_one(unit(2, 1), unit(2, 1), 2.0)},
               {0.25, 0.75});
  Vector x = reconstruct_point(as);
  Eigen::Map<const Matrix> m(x.data(), 2, 2);
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 0.5;
  expect(1, 1) = 1.5;
  EXPECT_LT((m - expect).norm(), 1e-15);
}

TEST(ReconstructPoint, DimensionMismatchIsStructural) {
  EXPECT_THROW(ActiveSet({e(3, 0), e(4, 1)}, {0.5, 0.5}), StructuralError);
}

TEST(SelectAway, ArgmaxOfInnerProduct) {
  ActiveSet as({e(3, 0), e(3, 1)}, {0.5, 0.5});
  auto [v, w] = select_away_vertex(as, from({1, 2, 3}));
  EXPECT_TRUE(v.equals(e(3, 1)));
  EXPECT_DOUBLE_EQ(w, 0.5);
}

TEST(SelectAway, Singleton) {
  ActiveSet as(e(3, 0));
  auto [v, w] = select_away_vertex(as, from({5, -1, 7}));
  EXPECT_TRUE(v.equals(e(3, 0)));
  EXPECT_DOUBLE_EQ(w, 1.0);
}

TEST(SelectAway, TieGoesToFirstInserted) {
  ActiveSet as({e(3, 0), e(3, 2)}, {0.5, 0.5});
  auto [v, w] = select_away_vertex(as, from({2, 0, 2}));
  EXPECT_TRUE(v.equals(e(3, 0)));
  EXPECT_DOUBLE_EQ(w, 0.5);
}

TEST(ApplyStep, FrankWolfeStep) {
  ActiveSet as = apply_step(ActiveSet(e(3, 0)), StepDescriptor::frank_wolfe(e(3, 1)), 0.5);
  ASSERT_EQ(as.size(), 2u);
  EXPECT_DOUBLE_EQ(as.weights()[0], 0.5);
  EXPECT_DOUBLE_EQ(as.weights()[1], 0.5);
  EXPECT_TRUE(as.atoms()[1].equals(e(3, 1)));
}

TEST(ApplyStep, PairwiseTransferDropsAtom) {
  ActiveSet as({e(3, 0), e(3, 1)}, {0.5, 0.5});
  as = apply_step(as, StepDescriptor::pairwise(e(3, 2), e(3, 0)), 0.5);
  ASSERT_EQ(as.size(), 2u);
  EXPECT_FALSE(as.find(e(3, 0)).has_value());
  EXPECT_DOUBLE_EQ(as.weights()[*as.find(e(3, 1))], 0.5);
  EXPECT_DOUBLE_EQ(as.weights()[*as.find(e(3, 2))], 0.5);
}

TEST(ApplyStep, AwayDropStep) {
  ActiveSet as({e(3, 0), e(3, 1)}, {0.75, 0.25});
  StepDescriptor away = StepDescriptor::away_from(e(3, 1));
  EXPECT_NEAR(as.max_step(away), 1.0 / 3.0, 1e-15);
  as = apply_step(as, away, 1.0 / 3.0);
  ASSERT_EQ(as.size(), 1u);
  EXPECT_TRUE(as.atoms()[0].equals(e(3, 0)));
  EXPECT_DOUBLE_EQ(as.weights()[0], 1.0);
}

TEST(ApplyStep, AlphaBeyondCapIsContractViolation) {
  ActiveSet as({e(3, 0), e(3, 1)}, {0.75, 0.25});
  EXPECT_THROW(apply_step(as, StepDescriptor::away_from(e(3, 1)), 0.5), ContractViolation);
  EXPECT_THROW(apply_step(as, StepDescriptor::frank_wolfe(e(3, 2)), 1.5), ContractViolation);
  EXPECT_THROW(apply_step(as, StepDescriptor::pairwise(e(3, 2), e(3, 1)), 0.3),
               ContractViolation);
}

// Random walks of FW, away and pairwise steps over simplex vertices.
TEST(ActiveSetProperty, WeightsSparsityAndDrift) {
  const Index n = 8;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Gen gen(seed);
    ActiveSet as(e(n, gen.integer(0, n - 1)));
    Vector x = as.reconstruct_point();
    for (std::size_t k = 1; k <= 40; ++k) {
      StepDescriptor step;
      Index pick = gen.integer(0, 2);
      Atom s = e(n, gen.integer(0, n - 1));
      const Atom& v = as.atoms()[static_cast<std::size_t>(gen.integer(0, static_cast<Index>(as.size()) - 1))];
      if (pick == 0 || as.size() == 1) {
        step = StepDescriptor::frank_wolfe(s);
      } else if (pick == 1) {
        step = StepDescriptor::away_from(v);
      } else {
        if (s.equals(v)) continue;
        step = StepDescriptor::pairwise(s, v);
      }
      double cap = as.max_step(step);
      if (!(cap > 0.0)) continue;
      double alpha = std::min(cap, 1e6) * (gen.uniform() < 0.2 ? 1.0 : gen.uniform(0.01, 1.0));
      Vector d = Vector::Zero(n);
      if (step.toward) d += step.toward->densify() - x;
      if (step.away) d += x - step.away->densify();
      if (step.kind == StepKind::Pairwise) d = step.toward->densify() - step.away->densify();
      x += alpha * d;
      as.apply(step, alpha);

      double sum = 0.0;
      for (double w : as.weights()) {
        ASSERT_GE(w, 0.0);
        sum += w;
      }
      ASSERT_NEAR(sum, 1.0, 1e-10);
      ASSERT_LE(as.size(), k + 1);
      ASSERT_LT((as.reconstruct_point() - x).lpNorm<Eigen::Infinity>(), 1e-9)
          << "seed " << seed << " step " << k;
    }
  }
}
