// Block-coordinate FW over product regions: one random block per step.

#include <cmath>
#include <limits>

#include "fwkit/region.hpp"
#include "solver_internal.hpp"

namespace fwkit {

SolveReport solve_bcfw(const ProblemInstance& inst, const SolverConfig& config) {
  SolverConfig checked = config;
  checked.variant = Variant::BCFW;
  check_compatibility(inst, checked);
  SolveReport rep;
  rep.variant = Variant::BCFW;
  rep.rule = config.stepsize;
  detail::Rng rng(config.seed);
  detail::Recorder rec(config, rep);

  const auto& blocks = inst.region.get<Product>()->blocks;
  const std::vector<Index> off = inst.region.block_offsets();
  const std::size_t m = blocks.size();

  // Per-block Lipschitz constants when the objective separates, else the global one.
  std::vector<double> block_l(m, inst.lipschitz);
  if (const auto* sep = inst.objective.get<BlockSeparable>()) {
    if (sep->blocks.size() == m) {
      for (std::size_t i = 0; i < m; ++i) block_l[i] = lipschitz_upper(sep->blocks[i]);
    }
  }

  const Vector dir = detail::start_direction(inst, config, rng);
  std::vector<ActiveSet> sets;
  Vector x(inst.region.dimension());
  for (std::size_t i = 0; i < m; ++i) {
    const Index n = off[i + 1] - off[i];
    const Atom a = lmo(blocks[i], dir.segment(off[i], n));
    x.segment(off[i], n) = a.densify();
    sets.emplace_back(a);
  }
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  StepState state = initial_state(config.stepsize);
  IterationRecord current;
  auto support = [&sets] {
    std::size_t s = 0;
    for (const auto& a : sets) s += a.size();
    return s;
  };

  try {
    for (std::size_t k = 0;; ++k) {
      const Evaluation e = inst.objective.eval(x);
      const bool due = rec.due(k) || k >= config.max_iter;
      const double gap = due ? fw_gap(inst.region, x, e.gradient)
                             : std::numeric_limits<double>::quiet_NaN();
      current = rec.begin(k, e.value, gap, support(), x);
      if (due && gap <= config.gap_tol) {
        rec.finish(current, Termination::GapTol);
        break;
      }
      if (k >= config.max_iter) {
        rec.finish(current, Termination::MaxIter);
        break;
      }
      const std::size_t i = pick(rng);
      const Index n = off[i + 1] - off[i];
      const Vector gi = e.gradient.segment(off[i], n);
      const Atom s = lmo(blocks[i], gi);
      Vector d = Vector::Zero(x.size());
      d.segment(off[i], n) = s.densify() - x.segment(off[i], n);
      const double slope = gi.dot(d.segment(off[i], n));

      double alpha = 0.0;
      if (slope < 0.0) {
        StepQuery q{inst.objective, x, e.value, e.gradient, d, slope, 1.0, k};
        q.blocks = m;
        q.lipschitz_override = block_l[i];
        alpha = std::min(choose_step(config.stepsize, state, q), 1.0);
      }
      current.kind = StepKind::Block;
      current.block = static_cast<Index>(i);
      current.alpha = alpha;
      current.alpha_max = 1.0;
      current.dir_deriv = slope;
      current.dir_norm = d.norm();
      rec.step(current);
      if (!(alpha > 0.0)) continue;

      sets[i].apply(StepDescriptor::frank_wolfe(s), alpha);
      auto xi = x.segment(off[i], n);
      if (alpha == 1.0) {
        xi = s.densify();
      } else {
        xi += alpha * d.segment(off[i], n);
      }
      ++rep.steps;
      if (is_good_step(StepKind::Block, alpha, 1.0)) ++rep.good_steps;
    }
  } catch (const NumericalError& err) {
    rep.message = err.what();
    rec.finish(current, Termination::NumericalError);
  } catch (const ContractViolation& err) {
    rep.message = err.what();
    rec.finish(current, Termination::NumericalError);
  }
  rep.final_point = x;
  rep.block_sets = std::move(sets);
  return rep;
}

}  // namespace fwkit
