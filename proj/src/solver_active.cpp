// FW, AFW and PFW: the vertex-atom solvers sharing one active-set loop.

#include <cmath>

#include "fwkit/region.hpp"
#include "solver_internal.hpp"

namespace fwkit {

namespace {

struct Move {
  StepDescriptor step;
  Vector d;
  double slope = 0.0;
  double alpha_max = 1.0;
};

Move frank_wolfe_move(const Atom& s, const Vector& x, const Vector& g) {
  Move m;
  m.d = s.densify() - x;
  m.slope = g.dot(m.d);
  m.alpha_max = 1.0;
  m.step = StepDescriptor::frank_wolfe(s);
  return m;
}

Move choose_move(Variant variant, const ActiveSet& as, const Atom& s, const Vector& x,
                 const Vector& g) {
  Move fw = frank_wolfe_move(s, x, g);
  if (variant == Variant::FW || as.size() < 2) return fw;
  const std::size_t vi = as.away_index(g);
  const Atom& v = as.atoms()[vi];
  const double w = as.weights()[vi];
  if (variant == Variant::AFW) {
    Vector d = x - v.densify();
    const double slope = g.dot(d);
    // Ties go to the FW direction.
    if (!(slope < fw.slope)) return fw;
    Move m;
    m.step = StepDescriptor::away_from(v);
    m.d = std::move(d);
    m.slope = slope;
    m.alpha_max = w / (1.0 - w);
    return m;
  }
  if (s.equals(v)) return fw;
  Move m;
  m.step = StepDescriptor::pairwise(s, v);
  m.d = s.densify() - v.densify();
  m.slope = g.dot(m.d);
  m.alpha_max = w;
  return m;
}

SolveReport run_vertex_solver(const ProblemInstance& inst, const SolverConfig& config,
                              Variant variant) {
  SolverConfig checked = config;
  checked.variant = variant;
  check_compatibility(inst, checked);
  SolveReport rep;
  rep.variant = variant;
  rep.rule = config.stepsize;
  detail::Rng rng(config.seed);
  detail::Recorder rec(config, rep);

  const Atom x0 = lmo(inst.region, detail::start_direction(inst, config, rng));
  ActiveSet as(x0);
  Vector x = x0.densify();
  StepState state = initial_state(config.stepsize);
  IterationRecord current;

  try {
    for (std::size_t k = 0;; ++k) {
      const Evaluation e = inst.objective.eval(x);
      const Atom s_exact = lmo(inst.region, e.gradient);
      const double gap = e.gradient.dot(x) - s_exact.dot(e.gradient);
      current = rec.begin(k, e.value, gap, as.size(), x);
      if (gap <= config.gap_tol) {
        rec.finish(current, Termination::GapTol);
        break;
      }
      if (k >= config.max_iter) {
        rec.finish(current, Termination::MaxIter);
        break;
      }
      const Atom s = config.lmo ? (*config.lmo)(e.gradient) : s_exact;
      Move m = choose_move(variant, as, s, x, e.gradient);
      const StepQuery q{inst.objective, x, e.value, e.gradient, m.d, m.slope, m.alpha_max, k};
      double alpha = m.d.lpNorm<Eigen::Infinity>() > 0.0 ? choose_step(config.stepsize, state, q)
                                                          : 0.0;
      alpha = std::min(alpha, m.alpha_max);
      if (m.step.kind != StepKind::FW && alpha >= m.alpha_max) m.step.kind = StepKind::Drop;

      current.kind = m.step.kind;
      current.alpha = alpha;
      current.alpha_max = m.alpha_max;
      current.dir_deriv = m.slope;
      current.dir_norm = m.d.norm();
      rec.step(current);
      if (!(alpha > 0.0)) continue;

      const std::size_t before = as.size();
      as.apply(m.step, alpha);
      switch (m.step.kind) {
        case StepKind::FW:
          x *= (1.0 - alpha);
          m.step.toward->add_to(x, alpha);
          break;
        case StepKind::Away:
          x *= (1.0 + alpha);
          m.step.away->add_to(x, -alpha);
          break;
        case StepKind::Drop:
          if (m.step.toward) {
            m.step.toward->add_to(x, alpha);
            m.step.away->add_to(x, -alpha);
          } else {
            x *= (1.0 + alpha);
            m.step.away->add_to(x, -alpha);
          }
          break;
        default:
          x += alpha * m.d;
          break;
      }
      // Resynchronize after atoms leave so rounding residue does not linger.
      if (as.size() < before || (m.step.kind == StepKind::FW && alpha == 1.0)) {
        x = as.reconstruct_point();
      }
      ++rep.steps;
      if (is_good_step(m.step.kind, alpha, m.alpha_max)) ++rep.good_steps;
    }
  } catch (const NumericalError& err) {
    rep.message = err.what();
    rec.finish(current, Termination::NumericalError);
  } catch (const ContractViolation& err) {
    rep.message = err.what();
    rec.finish(current, Termination::NumericalError);
  }
  rep.final_point = x;
  rep.final_set = std::move(as);
  return rep;
}

}  // namespace

SolveReport solve_fw(const ProblemInstance& inst, const SolverConfig& config) {
  return run_vertex_solver(inst, config, Variant::FW);
}

SolveReport solve_afw(const ProblemInstance& inst, const SolverConfig& config) {
  return run_vertex_solver(inst, config, Variant::AFW);
}

SolveReport solve_pfw(const ProblemInstance& inst, const SolverConfig& config) {
  return run_vertex_solver(inst, config, Variant::PFW);
}

}  // namespace fwkit
