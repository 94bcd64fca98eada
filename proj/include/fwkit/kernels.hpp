#pragma once

// Data-parallel inner loops used by the oracles and objectives.
//
// Every kernel exists twice: a plain serial reference in `kernels::serial`
// and an OpenMP version in `kernels::omp`. Both produce bitwise identical
// results: the reductions are exact (argmin/argmax) or each output entry is
// accumulated by one thread in a fixed order (gemv). The unqualified entry
// points pick the OpenMP path above `kParallelThreshold` work items.

#include <span>

#include "fwkit/types.hpp"

namespace fwkit::kernels {

inline constexpr Index kParallelThreshold = 1 << 15;

namespace serial {
Index argmin(std::span<const double> v);
Index argmax(std::span<const double> v);
Index argmax_abs(std::span<const double> v);
/// y = A x
void gemv(const Matrix& a, std::span<const double> x, std::span<double> y);
/// y = A^T x
void gemv_t(const Matrix& a, std::span<const double> x, std::span<double> y);
}  // namespace serial

namespace omp {
Index argmin(std::span<const double> v);
Index argmax(std::span<const double> v);
Index argmax_abs(std::span<const double> v);
void gemv(const Matrix& a, std::span<const double> x, std::span<double> y);
void gemv_t(const Matrix& a, std::span<const double> x, std::span<double> y);
}  // namespace omp

// Ties resolve to the lowest index on both paths.
Index argmin(std::span<const double> v);
Index argmax(std::span<const double> v);
Index argmax_abs(std::span<const double> v);
void gemv(const Matrix& a, std::span<const double> x, std::span<double> y);
void gemv_t(const Matrix& a, std::span<const double> x, std::span<double> y);

inline std::span<const double> view(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
inline std::span<double> view(Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

/// A x as a fresh vector.
Vector apply(const Matrix& a, const Vector& x);
/// A^T x as a fresh vector.
Vector apply_t(const Matrix& a, const Vector& x);

}  // namespace fwkit::kernels
