// Wolfe's min-norm point algorithm wrapped as a solver over a region oracle.

#include <algorithm>

#include "fwkit/min_norm.hpp"
#include "fwkit/region.hpp"
#include "solver_internal.hpp"

namespace fwkit {

SolveReport solve_wolfe_mnp(const ProblemInstance& inst, const SolverConfig& config) {
  SolverConfig checked = config;
  checked.variant = Variant::WolfeMNP;
  check_compatibility(inst, checked);
  SolveReport rep;
  rep.variant = Variant::WolfeMNP;
  rep.rule = config.stepsize;
  detail::Rng rng(config.seed);
  detail::Recorder rec(config, rep);

  const Region& region = inst.region;
  const Vector start = lmo(region, detail::start_direction(inst, config, rng)).densify();

  MinNormOptions opt;
  // The corral gap ||x||^2 - <x, s> is half the FW gap of ||x||^2.
  opt.gap_tol = 0.5 * config.gap_tol;
  opt.max_major = config.max_iter;
  std::size_t hull_cap = 0;
  if (const auto* h = region.get<VertexHull>()) {
    hull_cap = 10 * h->vertices.size();
    opt.max_major = std::min(opt.max_major, hull_cap);
  }

  IterationRecord pending;
  Vector last = start;
  bool have_pending = false;
  auto observer = [&](const MinNormCycle& c) {
    if (have_pending) {
      pending.kind = c.dropped > 0 ? StepKind::Drop : StepKind::FullCorrective;
      pending.alpha = 1.0;
      pending.alpha_max = 1.0;
      rec.step(pending);
      ++rep.steps;
      if (is_good_step(pending.kind, 1.0, 1.0)) ++rep.good_steps;
    }
    const Evaluation e = inst.objective.eval(c.point);
    pending = rec.begin(c.major, e.value, 2.0 * c.gap, c.corral_size, c.point);
    // Direction of the major cycle is unknown until it ends; the slope at x_k
    // toward the new vertex stands in.
    pending.dir_deriv = -2.0 * c.gap;
    last = c.point;
    have_pending = true;
  };
  auto oracle = [&region](const Vector& g) { return lmo(region, g).densify(); };

  try {
    MinNormResult res = wolfe_min_norm_point(oracle, start, opt, observer);
    Termination why = Termination::GapTol;
    if (!res.converged) {
      // The oracle vertex already sits in the corral: x is the affine
      // minimizer there, so the true gap is zero and only rounding remains.
      const double scale = std::max(1.0, last.squaredNorm());
      const bool stalled = res.major_cycles < opt.max_major;
      if (stalled && res.gap <= 1e-9 * scale) {
        why = Termination::GapTol;
        rep.message = "corral stalled at rounding level";
      } else if (res.major_cycles >= config.max_iter) {
        why = Termination::MaxIter;
      } else {
        why = Termination::NumericalError;
        rep.message = res.major_cycles >= opt.max_major
                          ? "min-norm point exceeded 10 |V| major cycles"
                          : "min-norm point stalled: oracle vertex already in the corral";
      }
    }
    rec.finish(pending, why);
    std::vector<Atom> atoms;
    for (auto& p : res.corral) atoms.push_back(Atom::dense(std::move(p)));
    rep.final_set = ActiveSet(std::move(atoms), res.weights);
    rep.final_point = std::move(res.point);
  } catch (const NumericalError& err) {
    rep.message = err.what();
    rec.finish(pending, Termination::NumericalError);
    rep.final_point = last;
  }
  return rep;
}

SolveReport solve_wolfe_mnp(std::vector<Vector> vertices, const SolverConfig& config) {
  return solve_wolfe_mnp(build_hull_min_norm(std::move(vertices)), config);
}

}  // namespace fwkit
