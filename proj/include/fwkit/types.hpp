#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>

namespace fwkit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Matrix-valued iterates (nuclear-norm ball) are stored flattened in
/// column-major order: entry (i, j) of an m x n matrix lives at i + j * m.
inline Index flat_index(Index i, Index j, Index rows) { return i + j * rows; }

}  // namespace fwkit
