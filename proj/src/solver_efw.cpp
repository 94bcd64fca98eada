// EFW / fully corrective FW: add the FW vertex, then re-optimize the weights
// over the convex hull of the active set with an inner away-step solver.

#include <cmath>
#include <limits>

#include "fwkit/kernels.hpp"
#include "fwkit/region.hpp"
#include "solver_internal.hpp"

namespace fwkit {

namespace {

constexpr std::size_t kInnerCap = 100000;

/// Weights minimizing f over conv(vertices) up to an inner FW gap of `tol`,
/// warm-started from `lambda`.
std::vector<double> correct_weights(const Objective& obj, const std::vector<Vector>& vertices,
                                    std::vector<double> lambda, double tol) {
  const std::size_t q = vertices.size();
  auto combine = [&] {
    Vector y = Vector::Zero(vertices.front().size());
    for (std::size_t i = 0; i < q; ++i) {
      if (lambda[i] != 0.0) y += lambda[i] * vertices[i];
    }
    return y;
  };
  Vector y = combine();
  Vector scores(static_cast<Index>(q));
  for (std::size_t t = 0; t < kInnerCap; ++t) {
    const Vector g = obj.gradient(y);
    for (std::size_t i = 0; i < q; ++i) scores[static_cast<Index>(i)] = g.dot(vertices[i]);
    const auto i_fw = static_cast<std::size_t>(kernels::argmin(kernels::view(scores)));
    std::size_t i_aw = q;
    std::size_t active = 0;
    for (std::size_t i = 0; i < q; ++i) {
      if (lambda[i] <= 0.0) continue;
      ++active;
      if (i_aw == q || scores[static_cast<Index>(i)] > scores[static_cast<Index>(i_aw)]) i_aw = i;
    }
    const double gy = g.dot(y);
    const double inner_gap = gy - scores[static_cast<Index>(i_fw)];
    if (inner_gap <= tol) return lambda;

    const double slope_fw = -inner_gap;
    const double slope_aw = gy - scores[static_cast<Index>(i_aw)];
    const bool away = active > 1 && slope_aw < slope_fw;
    Vector d = away ? Vector(y - vertices[i_aw]) : Vector(vertices[i_fw] - y);
    const double slope = away ? slope_aw : slope_fw;
    const double amax = away ? lambda[i_aw] / (1.0 - lambda[i_aw]) : 1.0;
    if (d.lpNorm<Eigen::Infinity>() == 0.0) return lambda;
    const double alpha = exact_linesearch_quadratic(obj, slope, d, amax);
    if (!(alpha > 0.0)) return lambda;
    if (away) {
      for (double& w : lambda) w *= (1.0 + alpha);
      lambda[i_aw] -= alpha;
      if (alpha >= amax) lambda[i_aw] = 0.0;
    } else {
      for (double& w : lambda) w *= (1.0 - alpha);
      lambda[i_fw] += alpha;
    }
    for (double& w : lambda) w = std::max(w, 0.0);
    y = (alpha >= amax) ? combine() : Vector(y + alpha * d);
  }
  throw NumericalError("EFW inner correction did not reach its tolerance", tol);
}

}  // namespace

SolveReport solve_efw(const ProblemInstance& inst, const SolverConfig& config) {
  SolverConfig checked = config;
  checked.variant = Variant::EFW;
  check_compatibility(inst, checked);
  SolveReport rep;
  rep.variant = Variant::EFW;
  rep.rule = config.stepsize;
  detail::Rng rng(config.seed);
  detail::Recorder rec(config, rep);

  const Atom x0 = lmo(inst.region, detail::start_direction(inst, config, rng));
  ActiveSet as(x0);
  Vector x = x0.densify();
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
      as.ensure(s);
      std::vector<Vector> vertices;
      vertices.reserve(as.size());
      for (const auto& a : as.atoms()) vertices.push_back(a.densify());
      const double inner_tol = std::max(config.efw_inner_tol, 0.1 * gap);
      const std::vector<double> lambda =
          correct_weights(inst.objective, vertices, as.weights(), inner_tol);
      as.set_weights(lambda);
      const Vector next = as.reconstruct_point();
      const Vector d = next - x;

      current.kind = StepKind::FullCorrective;
      current.alpha = 1.0;
      current.alpha_max = 1.0;
      current.dir_deriv = e.gradient.dot(d);
      current.dir_norm = d.norm();
      rec.step(current);
      x = next;
      ++rep.steps;
      ++rep.good_steps;
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

}  // namespace fwkit
