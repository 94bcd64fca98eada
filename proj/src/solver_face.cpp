// FDFW: away vertices come from the minimal face of x_k instead of an active set.

#include <cmath>

#include "fwkit/region.hpp"
#include "solver_internal.hpp"

namespace fwkit {

namespace {

/// Snap coordinates within rounding distance of a bound onto it.
void snap_to_faces(const Region& region, Vector& x) {
  if (region.get<Simplex>()) {
    for (Index i = 0; i < x.size(); ++i) {
      if (std::abs(x[i]) <= kWeightDropTol) x[i] = 0.0;
    }
    x /= x.sum();
    return;
  }
  const Box& b = *region.get<Box>();
  for (Index i = 0; i < x.size(); ++i) {
    const double scale = std::max(1.0, b.upper[i] - b.lower[i]);
    if (std::abs(x[i] - b.lower[i]) <= kWeightDropTol * scale) x[i] = b.lower[i];
    if (std::abs(b.upper[i] - x[i]) <= kWeightDropTol * scale) x[i] = b.upper[i];
  }
}

ActiveSet face_active_set(const Region& region, const Vector& x) {
  if (region.get<Simplex>()) {
    std::vector<Atom> atoms;
    std::vector<double> weights;
    for (Index i = 0; i < x.size(); ++i) {
      if (x[i] > kWeightDropTol) {
        atoms.push_back(Atom::signed_unit(x.size(), i, 1, 1.0));
        weights.push_back(x[i]);
      }
    }
    return ActiveSet(std::move(atoms), std::move(weights));
  }
  return ActiveSet(Atom::dense(x));
}

}  // namespace

SolveReport solve_fdfw(const ProblemInstance& inst, const SolverConfig& config) {
  SolverConfig checked = config;
  checked.variant = Variant::FDFW;
  check_compatibility(inst, checked);
  SolveReport rep;
  rep.variant = Variant::FDFW;
  rep.rule = config.stepsize;
  detail::Rng rng(config.seed);
  detail::Recorder rec(config, rep);

  Vector x = lmo(inst.region, detail::start_direction(inst, config, rng)).densify();
  StepState state = initial_state(config.stepsize);
  IterationRecord current;

  try {
    for (std::size_t k = 0;; ++k) {
      const Evaluation e = inst.objective.eval(x);
      const Vector& g = e.gradient;
      const Atom s_exact = lmo(inst.region, g);
      const double gap = g.dot(x) - s_exact.dot(g);
      const MinimalFace face = minimal_face_vertices(inst.region, x);
      current = rec.begin(k, e.value, gap, face.size_hint(), x);
      if (gap <= config.gap_tol) {
        rec.finish(current, Termination::GapTol);
        break;
      }
      if (k >= config.max_iter) {
        rec.finish(current, Termination::MaxIter);
        break;
      }
      const Atom s = config.lmo ? (*config.lmo)(g) : s_exact;
      Vector d = s.densify() - x;
      double slope = g.dot(d);
      double alpha_max = 1.0;
      StepKind kind = StepKind::FW;

      Vector d_in = x - face.away_vertex(g).densify();
      const double slope_in = g.dot(d_in);
      if (slope_in < slope && d_in.lpNorm<Eigen::Infinity>() > 0.0) {
        d = std::move(d_in);
        slope = slope_in;
        alpha_max = max_feasible_step(inst.region, x, d);
        kind = StepKind::InFace;
      }
      double alpha = 0.0;
      if (alpha_max > 0.0 && d.lpNorm<Eigen::Infinity>() > 0.0) {
        const StepQuery q{inst.objective, x, e.value, g, d, slope, alpha_max, k};
        alpha = std::min(choose_step(config.stepsize, state, q), alpha_max);
      }
      if (kind == StepKind::InFace && alpha >= alpha_max) kind = StepKind::Drop;

      current.kind = kind;
      current.alpha = alpha;
      current.alpha_max = alpha_max;
      current.dir_deriv = slope;
      current.dir_norm = d.norm();
      rec.step(current);
      if (!(alpha > 0.0)) continue;

      x += alpha * d;
      if (kind == StepKind::FW && alpha == 1.0) x = s.densify();
      if (kind == StepKind::Drop) snap_to_faces(inst.region, x);
      ++rep.steps;
      if (is_good_step(kind, alpha, alpha_max)) ++rep.good_steps;
    }
  } catch (const NumericalError& err) {
    rep.message = err.what();
    rec.finish(current, Termination::NumericalError);
  } catch (const ContractViolation& err) {
    rep.message = err.what();
    rec.finish(current, Termination::NumericalError);
  }
  rep.final_point = x;
  rep.final_set = face_active_set(inst.region, x);
  return rep;
}

}  // namespace fwkit
