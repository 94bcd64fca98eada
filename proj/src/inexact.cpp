#include "fwkit/inexact.hpp"

#include <memory>
#include <random>

#include "fwkit/errors.hpp"

namespace fwkit {

InexactSchedule InexactSchedule::constant(double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw InputError("inexact delta must be nonnegative");
  return {Mode::Constant, delta, 0.0, seed};
}

InexactSchedule InexactSchedule::decaying(double delta, double kappa_upper, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw InputError("inexact delta must be nonnegative");
  if (!(kappa_upper >= 0.0)) throw InputError("curvature bound must be nonnegative");
  return {Mode::Decaying, delta, kappa_upper, seed};
}

double InexactSchedule::at(std::size_t k) const {
  if (mode == Mode::Constant) return delta;
  return delta * kappa_upper / (static_cast<double>(k) + 2.0);
}

namespace {

struct InexactState {
  std::optional<std::vector<Atom>> vertices;
  Lmo inner;
  InexactSchedule schedule;
  std::mt19937_64 rng;
  std::size_t calls = 0;
};

}  // namespace

Lmo make_inexact_lmo(const Region& region, Lmo inner, InexactSchedule schedule) {
  auto state = std::make_shared<InexactState>();
  state->vertices = enumerate_vertices(region);
  state->inner = std::move(inner);
  state->schedule = schedule;
  state->rng.seed(schedule.seed);
  return [state](const Vector& g) -> Atom {
    const double budget = state->schedule.at(state->calls++);
    Atom exact = state->inner(g);
    if (budget <= 0.0 || !state->vertices) return exact;
    const double best = exact.dot(g);
    double worst_slack = 0.0;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < state->vertices->size(); ++i) {
      const double slack = (*state->vertices)[i].dot(g) - best;
      if (slack > budget) continue;
      if (slack > worst_slack) {
        worst_slack = slack;
        candidates.assign(1, i);
      } else if (slack == worst_slack && slack > 0.0) {
        candidates.push_back(i);
      }
    }
    if (candidates.empty()) return exact;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return (*state->vertices)[candidates[pick(state->rng)]];
  };
}

}  // namespace fwkit
