#include "fwkit/active_set.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fwkit/errors.hpp"

namespace fwkit {

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::FW: return "FW";
    case StepKind::Away: return "Away";
    case StepKind::Pairwise: return "Pairwise";
    case StepKind::InFace: return "InFace";
    case StepKind::Drop: return "Drop";
    case StepKind::FullCorrective: return "FullCorrective";
    case StepKind::Block: return "Block";
    case StepKind::None: return "None";
  }
  return "None";
}

ActiveSet::ActiveSet(Atom initial) {
  atoms_.push_back(std::move(initial));
  weights_.push_back(1.0);
}

ActiveSet::ActiveSet(std::vector<Atom> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty() || atoms_.size() != weights_.size()) {
    throw StructuralError("active set needs matching, nonempty atoms and weights");
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (atoms_[i].equals(atoms_[j])) throw StructuralError("duplicate atom in active set");
    }
  }
  check_invariants();
  prune_and_normalize();
}

void ActiveSet::check_invariants() const {
  const Index dim = atoms_.front().dimension();
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].dimension() != dim) throw StructuralError("atom dimension mismatch");
    if (!(weights_[i] >= 0.0)) throw ContractViolation("negative active-set weight");
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) throw ContractViolation("weights do not sum to one");
}

std::optional<std::size_t> ActiveSet::find(const Atom& atom) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].equals(atom)) return i;
  }
  return std::nullopt;
}

Vector ActiveSet::reconstruct_point() const {
  Vector x = Vector::Zero(dimension());
  for (std::size_t i = 0; i < atoms_.size(); ++i) atoms_[i].add_to(x, weights_[i]);
  return x;
}

std::size_t ActiveSet::away_index(const Vector& g) const {
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (weights_[i] <= 0.0) continue;
    const double value = atoms_[i].dot(g);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return best;
}

std::pair<Atom, double> ActiveSet::select_away_vertex(const Vector& g) const {
  const std::size_t i = away_index(g);
  return {atoms_[i], weights_[i]};
}

namespace {

bool moves_away(StepKind kind) {
  return kind == StepKind::Away || kind == StepKind::InFace || kind == StepKind::Drop;
}

}  // namespace

double ActiveSet::max_step(const StepDescriptor& step) const {
  const bool has_toward = step.toward.has_value();
  const bool has_away = step.away.has_value();
  if (step.kind == StepKind::FW && has_toward) return 1.0;
  if (has_toward && has_away &&
      (step.kind == StepKind::Pairwise || step.kind == StepKind::Drop)) {
    const auto v = find(*step.away);
    if (!v) throw ContractViolation("pairwise away atom is not active");
    return weights_[*v];
  }
  if (has_away && moves_away(step.kind)) {
    const auto v = find(*step.away);
    if (!v) throw ContractViolation("away atom is not active");
    const double w = weights_[*v];
    if (w >= 1.0) return std::numeric_limits<double>::infinity();
    return w / (1.0 - w);
  }
  throw ContractViolation("step descriptor does not describe an active-set move");
}

std::size_t ActiveSet::ensure(const Atom& atom) {
  if (atom.dimension() != dimension()) throw StructuralError("atom dimension mismatch");
  if (auto i = find(atom)) return *i;
  atoms_.push_back(atom);
  weights_.push_back(0.0);
  return atoms_.size() - 1;
}

void ActiveSet::apply(const StepDescriptor& step, double alpha) {
  const double cap = max_step(step);
  if (!(alpha > 0.0)) throw ContractViolation("step size must be positive");
  if (alpha > cap * (1.0 + 1e-12) + 1e-15) {
    throw ContractViolation("step size " + std::to_string(alpha) + " exceeds maximum " +
                            std::to_string(cap));
  }
  const bool pairwise = step.toward && step.away &&
                        (step.kind == StepKind::Pairwise || step.kind == StepKind::Drop);
  if (step.kind == StepKind::FW && step.toward) {
    for (double& w : weights_) w *= (1.0 - alpha);
    weights_[ensure(*step.toward)] += alpha;
  } else if (pairwise) {
    const std::size_t v = *find(*step.away);
    weights_[v] -= alpha;
    weights_[ensure(*step.toward)] += alpha;
  } else {
    const std::size_t v = *find(*step.away);
    for (double& w : weights_) w *= (1.0 + alpha);
    weights_[v] -= alpha;
  }
  for (double& w : weights_) {
    if (w < -kWeightDropTol) throw ContractViolation("step produced a negative weight");
    if (w < 0.0) w = 0.0;
  }
  prune_and_normalize();
}

void ActiveSet::set_weights(std::span<const double> weights) {
  if (weights.size() != atoms_.size()) throw StructuralError("weight count mismatch");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < -kWeightDropTol) throw ContractViolation("negative weight");
    weights_[i] = std::max(weights[i], 0.0);
  }
  prune_and_normalize();
}

void ActiveSet::prune_and_normalize() {
  std::size_t keep = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (weights_[i] >= kWeightDropTol) {
      if (keep != i) {
        atoms_[keep] = std::move(atoms_[i]);
        weights_[keep] = weights_[i];
      }
      ++keep;
    }
  }
  if (keep == 0) throw ContractViolation("all active-set weights vanished");
  atoms_.erase(atoms_.begin() + static_cast<std::ptrdiff_t>(keep), atoms_.end());
  weights_.resize(keep);
  const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  for (double& w : weights_) w /= sum;
}

Vector reconstruct_point(const ActiveSet& as) { return as.reconstruct_point(); }

std::pair<Atom, double> select_away_vertex(const ActiveSet& as, const Vector& g) {
  return as.select_away_vertex(g);
}

ActiveSet apply_step(ActiveSet as, const StepDescriptor& step, double alpha) {
  as.apply(step, alpha);
  return as;
}

}  // namespace fwkit
