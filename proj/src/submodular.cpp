#include "fwkit/submodular.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "fwkit/errors.hpp"

namespace fwkit {

SubmodularFunction::SubmodularFunction(Kind kind, Index n, Evaluator fn, std::string name)
    : kind_(kind), n_(n), fn_(std::move(fn)), name_(std::move(name)) {
  if (n_ <= 0) throw InputError("submodular ground set must be nonempty");
}

void SubmodularFunction::check_normalized() const {
  const double empty = fn_(std::span<const Index>{});
  if (std::abs(empty) > 1e-12) throw InputError("submodular oracle must satisfy r(empty) = 0");
}

SubmodularFunction SubmodularFunction::cardinality_cap(Index n, Index cap) {
  if (cap < 0) throw InputError("cardinality cap must be nonnegative");
  SubmodularFunction f(
      Kind::CardinalityCap, n,
      [cap](std::span<const Index> a) {
        return static_cast<double>(std::min<Index>(static_cast<Index>(a.size()), cap));
      },
      "cardinality_cap");
  f.cap_ = cap;
  f.check_normalized();
  return f;
}

SubmodularFunction SubmodularFunction::graph_cut(Index n, std::vector<WeightedEdge> edges) {
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw InputError("graph_cut edge out of range");
    if (e.weight < 0.0) throw InputError("graph_cut weights must be nonnegative");
  }
  auto shared = std::make_shared<const std::vector<WeightedEdge>>(edges);
  SubmodularFunction f(
      Kind::GraphCut, n,
      [shared, n](std::span<const Index> a) {
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        for (Index i : a) in[static_cast<std::size_t>(i)] = 1;
        double cut = 0.0;
        for (const auto& e : *shared) {
          if (in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)]) cut += e.weight;
        }
        return cut;
      },
      "graph_cut");
  f.edges_ = std::move(edges);
  f.check_normalized();
  return f;
}

SubmodularFunction SubmodularFunction::modular(Vector weights) {
  const Index n = weights.size();
  SubmodularFunction f(
      Kind::Modular, n,
      [weights](std::span<const Index> a) {
        double s = 0.0;
        for (Index i : a) s += weights[i];
        return s;
      },
      "modular");
  f.weights_ = std::move(weights);
  f.check_normalized();
  return f;
}

SubmodularFunction SubmodularFunction::custom(Index n, Evaluator fn, std::string name) {
  SubmodularFunction f(Kind::Custom, n, std::move(fn), std::move(name));
  f.check_normalized();
  return f;
}

Vector base_polytope_greedy(const SubmodularFunction& r, const Vector& w) {
  const Index n = r.ground_size();
  if (w.size() != n) throw InputError("greedy weight vector has wrong dimension");
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return w[a] > w[b]; });
  Vector s(n);
  double previous = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double current = r(std::span<const Index>(order.data(), k + 1));
    s[order[k]] = current - previous;
    previous = current;
  }
  return s;
}

}  // namespace fwkit
