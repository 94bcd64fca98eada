#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fwkit/types.hpp"

namespace fwkit {

struct WeightedEdge {
  Index u;  // zero-based
  Index v;
  double weight;
};

/// A set function r : 2^V -> R on V = {0, ..., n-1} with r(empty) = 0.
///
/// The built-ins (cardinality cap, graph cut, modular) remember their
/// parameters so instances can be written back out; `custom` wraps any
/// callable and is not serializable.
class SubmodularFunction {
 public:
  enum class Kind { CardinalityCap, GraphCut, Modular, Custom };
  using Evaluator = std::function<double(std::span<const Index>)>;

  static SubmodularFunction cardinality_cap(Index n, Index cap);
  static SubmodularFunction graph_cut(Index n, std::vector<WeightedEdge> edges);
  static SubmodularFunction modular(Vector weights);
  static SubmodularFunction custom(Index n, Evaluator fn, std::string name = "custom");

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  Index ground_size() const { return n_; }
  double operator()(std::span<const Index> subset) const { return fn_(subset); }

  Index cap() const { return cap_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  const Vector& modular_weights() const { return weights_; }

 private:
  SubmodularFunction(Kind kind, Index n, Evaluator fn, std::string name);
  void check_normalized() const;

  Kind kind_;
  Index n_;
  Evaluator fn_;
  std::string name_;
  Index cap_ = 0;
  std::vector<WeightedEdge> edges_;
  Vector weights_;
};

/// Maximizer of w^T s over the base polytope B(r): sort w decreasingly (ties
/// by lower index) and take marginal gains along the prefix chain.
Vector base_polytope_greedy(const SubmodularFunction& r, const Vector& w);

}  // namespace fwkit
