#pragma once

#include <cstdint>

#include "fwkit/types.hpp"

namespace fwkit {

struct SingularPair {
  double sigma;
  Vector u;  // unit, length rows
  Vector v;  // unit, length cols
  int iterations;
};

/// Top singular triple of `a` by power iteration on A^T A from a seeded
/// Gaussian start. Stops when the relative change of the Rayleigh quotient
/// drops below `tol`; throws NumericalError after `max_iter` iterations.
/// The sign is fixed so that the largest-magnitude entry of v is positive.
SingularPair top_singular_pair(const Matrix& a, double tol = 1e-10, int max_iter = 5000,
                               std::uint64_t seed = 0x5eedULL);

}  // namespace fwkit
