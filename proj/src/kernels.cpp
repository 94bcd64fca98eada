#include "fwkit/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fwkit::kernels {

namespace {

struct Best {
  double value;
  Index index;
};

// Lexicographic on (value, index); `better` decides the value order.
template <typename Better>
Best pick(Best a, Best b, Better better) {
  if (b.index < 0) return a;
  if (a.index < 0) return b;
  if (better(b.value, a.value)) return b;
  if (better(a.value, b.value)) return a;
  return a.index < b.index ? a : b;
}

template <typename Key, typename Better>
Index serial_extreme(std::span<const double> v, Key key, Better better) {
  Best best{0.0, -1};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double k = key(v[i]);
    if (best.index < 0 || better(k, best.value)) best = {k, static_cast<Index>(i)};
  }
  return best.index;
}

template <typename Key, typename Better>
Index omp_extreme(std::span<const double> v, Key key, Better better) {
  Best global{0.0, -1};
  const auto n = static_cast<std::int64_t>(v.size());
#pragma omp parallel
  {
    Best local{0.0, -1};
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      const double k = key(v[static_cast<std::size_t>(i)]);
      if (local.index < 0 || better(k, local.value)) local = {k, static_cast<Index>(i)};
    }
#pragma omp critical(fwkit_extreme)
    global = pick(global, local, better);
  }
  return global.index;
}

constexpr auto identity = [](double x) { return x; };
constexpr auto absolute = [](double x) { return std::abs(x); };
constexpr auto less = [](double a, double b) { return a < b; };
constexpr auto greater = [](double a, double b) { return a > b; };

}  // namespace

namespace {

// y[i] for one block of rows. Columns are streamed in order, so every y[i]
// still sums a(i,0) x_0, a(i,1) x_1, ... left to right, exactly as the
// textbook loop does, but memory is read contiguously.
constexpr Index kRowBlock = 256;

void gemv_rows(const Matrix& a, std::span<const double> x, std::span<double> y, Index i0) {
  const Index m = a.rows(), n = a.cols();
  const Index len = std::min(kRowBlock, m - i0);
  double acc[kRowBlock] = {};
  for (Index j = 0; j < n; ++j) {
    const double* col = a.data() + j * m + i0;
    const double xj = x[static_cast<std::size_t>(j)];
    for (Index r = 0; r < len; ++r) acc[r] += col[r] * xj;
  }
  for (Index r = 0; r < len; ++r) y[static_cast<std::size_t>(i0 + r)] = acc[r];
}

}  // namespace

namespace serial {

Index argmin(std::span<const double> v) { return serial_extreme(v, identity, less); }
Index argmax(std::span<const double> v) { return serial_extreme(v, identity, greater); }
Index argmax_abs(std::span<const double> v) { return serial_extreme(v, absolute, greater); }

void gemv(const Matrix& a, std::span<const double> x, std::span<double> y) {
  for (Index i0 = 0; i0 < a.rows(); i0 += kRowBlock) gemv_rows(a, x, y, i0);
}

void gemv_t(const Matrix& a, std::span<const double> x, std::span<double> y) {
  const Index m = a.rows(), n = a.cols();
  for (Index j = 0; j < n; ++j) {
    const double* col = a.data() + j * m;
    double acc = 0.0;
    for (Index i = 0; i < m; ++i) acc += col[i] * x[static_cast<std::size_t>(i)];
    y[static_cast<std::size_t>(j)] = acc;
  }
}

}  // namespace serial

namespace omp {

Index argmin(std::span<const double> v) { return omp_extreme(v, identity, less); }
Index argmax(std::span<const double> v) { return omp_extreme(v, identity, greater); }
Index argmax_abs(std::span<const double> v) { return omp_extreme(v, absolute, greater); }

void gemv(const Matrix& a, std::span<const double> x, std::span<double> y) {
  const Index blocks = (a.rows() + kRowBlock - 1) / kRowBlock;
#pragma omp parallel for schedule(static)
  for (Index b = 0; b < blocks; ++b) gemv_rows(a, x, y, b * kRowBlock);
}

void gemv_t(const Matrix& a, std::span<const double> x, std::span<double> y) {
  const Index m = a.rows(), n = a.cols();
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j) {
    const double* col = a.data() + j * m;
    double acc = 0.0;
    for (Index i = 0; i < m; ++i) acc += col[i] * x[static_cast<std::size_t>(i)];
    y[static_cast<std::size_t>(j)] = acc;
  }
}

}  // namespace omp

namespace {
bool large(std::size_t work) { return static_cast<Index>(work) >= kParallelThreshold; }
}  // namespace

Index argmin(std::span<const double> v) {
  return large(v.size()) ? omp::argmin(v) : serial::argmin(v);
}
Index argmax(std::span<const double> v) {
  return large(v.size()) ? omp::argmax(v) : serial::argmax(v);
}
Index argmax_abs(std::span<const double> v) {
  return large(v.size()) ? omp::argmax_abs(v) : serial::argmax_abs(v);
}
void gemv(const Matrix& a, std::span<const double> x, std::span<double> y) {
  if (large(static_cast<std::size_t>(a.size()))) {
    omp::gemv(a, x, y);
  } else {
    serial::gemv(a, x, y);
  }
}
void gemv_t(const Matrix& a, std::span<const double> x, std::span<double> y) {
  if (large(static_cast<std::size_t>(a.size()))) {
    omp::gemv_t(a, x, y);
  } else {
    serial::gemv_t(a, x, y);
  }
}

Vector apply(const Matrix& a, const Vector& x) {
  Vector y(a.rows());
  gemv(a, view(x), view(y));
  return y;
}

Vector apply_t(const Matrix& a, const Vector& x) {
  Vector y(a.cols());
  gemv_t(a, view(x), view(y));
  return y;
}

}  // namespace fwkit::kernels
