#include "fwkit/svd.hpp"

#include <cmath>
#include <random>

#include "fwkit/errors.hpp"
#include "fwkit/kernels.hpp"

namespace fwkit {

SingularPair top_singular_pair(const Matrix& a, double tol, int max_iter, std::uint64_t seed) {
  const Index m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) throw InputError("top_singular_pair on an empty matrix");
  if (!a.allFinite()) throw InputError("top_singular_pair: non-finite entries");
  if (a.isZero(0.0)) {
    return {0.0, Vector::Unit(m, 0), Vector::Unit(n, 0), 0};
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Index j = 0; j < n; ++j) v[j] = normal(rng);
  v.normalize();

  Vector av(m), atav(n);
  double rayleigh = 0.0;
  int it = 0;
  for (;; ++it) {
    kernels::gemv(a, kernels::view(v), kernels::view(av));
    const double next = av.squaredNorm();
    const double change = std::abs(next - rayleigh);
    rayleigh = next;
    if (it > 0 && change <= tol * std::max(rayleigh, 1e-300)) break;
    if (it >= max_iter) {
      throw NumericalError("power iteration did not converge", change / std::max(rayleigh, 1e-300));
    }
    kernels::gemv_t(a, kernels::view(av), kernels::view(atav));
    const double norm = atav.norm();
    if (norm == 0.0) break;
    v = atav / norm;
  }

  Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  if (v[big] < 0.0) v = -v;
  kernels::gemv(a, kernels::view(v), kernels::view(av));
  const double sigma = av.norm();
  Vector u = sigma > 0.0 ? Vector(av / sigma) : Vector(Vector::Unit(m, 0));
  return {sigma, std::move(u), std::move(v), it};
}

}  // namespace fwkit
