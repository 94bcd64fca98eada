#include <gtest/gtest.h>

#include "fwkit/kernels.hpp"
#include "gen.hpp"

using namespace fwkit;
using fwkit::testing::Gen;

namespace {
constexpr Index kBig = kernels::kParallelThreshold * 3 + 17;
}

TEST(Kernels, ArgminTiesGoLow) {
  Vector v = Vector::Constant(kBig, 2.0);
  v[kBig - 5] = -1.0;
  v[kBig / 2] = -1.0;
  v[kBig / 3] = -1.0;
  EXPECT_EQ(kernels::serial::argmin(kernels::view(v)), kBig / 3);
  EXPECT_EQ(kernels::omp::argmin(kernels::view(v)), kBig / 3);
  v = -v;
  EXPECT_EQ(kernels::omp::argmax(kernels::view(v)), kBig / 3);
  EXPECT_EQ(kernels::omp::argmax_abs(kernels::view(v)), 0);
}

TEST(Kernels, ReductionsMatchSerial) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Vector v = Gen(seed).gaussian(kBig);
    // coarse values force ties
    v = (v * 4).array().round();
    auto s = kernels::view(static_cast<const Vector&>(v));
    EXPECT_EQ(kernels::serial::argmin(s), kernels::omp::argmin(s));
    EXPECT_EQ(kernels::serial::argmax(s), kernels::omp::argmax(s));
    EXPECT_EQ(kernels::serial::argmax_abs(s), kernels::omp::argmax_abs(s));
    EXPECT_EQ(kernels::serial::argmin(s), kernels::argmin(s));
  }
}

TEST(Kernels, GemvBitwiseEqual) {
  Gen gen(3);
  Matrix a = gen.gaussian(300, 257);
  Vector x = gen.gaussian(257), xt = gen.gaussian(300);
  Vector y1(300), y2(300), z1(257), z2(257);
  kernels::serial::gemv(a, kernels::view(static_cast<const Vector&>(x)), kernels::view(y1));
  kernels::omp::gemv(a, kernels::view(static_cast<const Vector&>(x)), kernels::view(y2));
  kernels::serial::gemv_t(a, kernels::view(static_cast<const Vector&>(xt)), kernels::view(z1));
  kernels::omp::gemv_t(a, kernels::view(static_cast<const Vector&>(xt)), kernels::view(z2));
  EXPECT_EQ(y1, y2);
  EXPECT_EQ(z1, z2);
  EXPECT_LT((y1 - a * x).norm(), 1e-10);
  EXPECT_LT((z1 - a.transpose() * xt).norm(), 1e-10);
  EXPECT_EQ(kernels::apply(a, x), y1);
  EXPECT_EQ(kernels::apply_t(a, xt), z1);
}
