#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "fwkit/atom.hpp"

namespace fwkit {

enum class StepKind { FW, Away, Pairwise, InFace, Drop, FullCorrective, Block, None };

std::string_view to_string(StepKind kind);

/// What an iteration did. FW and FullCorrective carry `toward` only, Away and
/// InFace carry `away` only, Pairwise carries both.
struct StepDescriptor {
  StepKind kind = StepKind::FW;
  std::optional<Atom> toward;
  std::optional<Atom> away;

  static StepDescriptor frank_wolfe(Atom s) { return {StepKind::FW, std::move(s), std::nullopt}; }
  static StepDescriptor away_from(Atom v) { return {StepKind::Away, std::nullopt, std::move(v)}; }
  static StepDescriptor pairwise(Atom s, Atom v) {
    return {StepKind::Pairwise, std::move(s), std::move(v)};
  }
};

inline constexpr double kWeightDropTol = 1e-12;
inline constexpr double kWeightSumTol = 1e-10;

/// Convex combination of atoms representing the current iterate.
///
/// Atoms keep insertion order; every argmax over the set breaks ties by the
/// lowest insertion index.
class ActiveSet {
 public:
  explicit ActiveSet(Atom initial);
  ActiveSet(std::vector<Atom> atoms, std::vector<double> weights);

  std::size_t size() const { return atoms_.size(); }
  Index dimension() const { return atoms_.front().dimension(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

  std::optional<std::size_t> find(const Atom& atom) const;

  /// sum_i w_i * densify(atom_i)
  Vector reconstruct_point() const;

  /// Index of the active atom maximizing <g, atom>.
  std::size_t away_index(const Vector& g) const;
  std::pair<Atom, double> select_away_vertex(const Vector& g) const;

  /// Largest admissible alpha for `step` on this set.
  double max_step(const StepDescriptor& step) const;

  /// In-place step; see the free function `apply_step` for the contract.
  void apply(const StepDescriptor& step, double alpha);

  /// Replace all weights (fully corrective updates); prunes and renormalizes.
  void set_weights(std::span<const double> weights);

  /// Append an atom with weight zero unless present; returns its position.
  std::size_t ensure(const Atom& atom);

 private:
  void prune_and_normalize();
  void check_invariants() const;

  std::vector<Atom> atoms_;
  std::vector<double> weights_;
};

Vector reconstruct_point(const ActiveSet& as);
std::pair<Atom, double> select_away_vertex(const ActiveSet& as, const Vector& g);

/// Returns the set after moving by `alpha` along the step direction.
/// FW: weights *= (1 - alpha), toward += alpha. Away/InFace: weights *= (1 + alpha),
/// away -= alpha. Pairwise: toward += alpha, away -= alpha. Weights below 1e-12
/// are dropped and the rest renormalized.
/// Throws ContractViolation when alpha is outside (0, max_step].
ActiveSet apply_step(ActiveSet as, const StepDescriptor& step, double alpha);

}  // namespace fwkit
