#include "fwkit/stepsize.hpp"

#include <algorithm>
#include <cmath>

#include "fwkit/errors.hpp"

namespace fwkit {

namespace {

constexpr int kArmijoCap = 100;
constexpr int kDoublingCap = 60;
constexpr double kLFloor = 1e-12;

void require_direction(const Vector& d) {
  if (d.size() == 0 || d.lpNorm<Eigen::Infinity>() == 0.0) {
    throw InputError("stepsize: zero direction");
  }
}

void require_alpha_max(double alpha_max) {
  if (!(alpha_max > 0.0)) throw InputError("stepsize: alpha_max must be positive");
}

bool is_ascent(double slope, double grad_norm, double dir_norm) {
  return slope > 1e-12 * grad_norm * dir_norm;
}

}  // namespace

StepsizeRule StepsizeRule::diminishing() { return {}; }

StepsizeRule StepsizeRule::exact() {
  StepsizeRule r;
  r.kind = Kind::ExactLine;
  return r;
}

StepsizeRule StepsizeRule::armijo(double delta, double gamma) {
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("armijo delta must lie in (0,1)");
  if (!(gamma > 0.0 && gamma < 0.5)) throw InputError("armijo gamma must lie in (0,1/2)");
  StepsizeRule r;
  r.kind = Kind::Armijo;
  r.delta = delta;
  r.gamma = gamma;
  return r;
}

StepsizeRule StepsizeRule::lipschitz_rule(double l) {
  if (!(l > 0.0)) throw InputError("lipschitz rule needs L > 0");
  StepsizeRule r;
  r.kind = Kind::Lipschitz;
  r.lipschitz = l;
  return r;
}

StepsizeRule StepsizeRule::backtracking(double l0, double up, double down) {
  if (!(l0 > 0.0)) throw InputError("backtracking needs L0 > 0");
  if (!(up > 1.0) || !(down > 0.0 && down <= 1.0)) throw InputError("backtracking factors");
  StepsizeRule r;
  r.kind = Kind::BacktrackingL;
  r.l0 = l0;
  r.up = up;
  r.down = down;
  return r;
}

std::string StepsizeRule::name() const {
  switch (kind) {
    case Kind::Diminishing: return "diminishing";
    case Kind::ExactLine: return "exact";
    case Kind::Armijo: return "armijo";
    case Kind::Lipschitz: return "lipschitz";
    case Kind::BacktrackingL: return "backtracking";
  }
  return "diminishing";
}

StepsizeRule::Kind parse_stepsize_kind(const std::string& name) {
  if (name == "diminishing") return StepsizeRule::Kind::Diminishing;
  if (name == "exact") return StepsizeRule::Kind::ExactLine;
  if (name == "armijo") return StepsizeRule::Kind::Armijo;
  if (name == "lipschitz") return StepsizeRule::Kind::Lipschitz;
  if (name == "backtracking") return StepsizeRule::Kind::BacktrackingL;
  throw InputError("unknown stepsize rule '" + name + "'");
}

double stepsize_diminishing(std::size_t k) { return 2.0 / (static_cast<double>(k) + 2.0); }

double stepsize_lipschitz(double slope, double dir_norm_sq, double grad_norm, double l,
                          double alpha_max) {
  if (!(l > 0.0)) throw InputError("lipschitz stepsize needs L > 0");
  require_alpha_max(alpha_max);
  if (!(dir_norm_sq > 0.0)) throw InputError("stepsize: zero direction");
  if (is_ascent(slope, grad_norm, std::sqrt(dir_norm_sq))) {
    throw ContractViolation("lipschitz stepsize called on an ascent direction");
  }
  if (slope >= 0.0) return 0.0;
  return std::min(-slope / (l * dir_norm_sq), alpha_max);
}

double stepsize_lipschitz(const Vector& g, const Vector& d, double l, double alpha_max) {
  require_direction(d);
  return stepsize_lipschitz(g.dot(d), d.squaredNorm(), g.norm(), l, alpha_max);
}

double stepsize_armijo(const Objective& obj, const Vector& x, double fx, double slope,
                       const Vector& d, double alpha_max, double delta, double gamma) {
  require_direction(d);
  require_alpha_max(alpha_max);
  if (slope == 0.0) return 0.0;
  if (slope > 0.0) throw ContractViolation("armijo called on an ascent direction");
  double alpha = alpha_max;
  for (int m = 0; m <= kArmijoCap; ++m) {
    if (obj.value(x + alpha * d) <= fx + gamma * alpha * slope) return alpha;
    alpha *= delta;
  }
  throw NumericalError("armijo search hit its iteration cap", slope);
}

double stepsize_armijo(const Objective& obj, const Vector& x, const Vector& d, double alpha_max,
                       double delta, double gamma) {
  const Evaluation e = obj.eval(x);
  return stepsize_armijo(obj, x, e.value, e.gradient.dot(d), d, alpha_max, delta, gamma);
}

std::pair<double, double> stepsize_backtracking_L(double l_hat, const Vector& g, const Vector& d,
                                                  double alpha_max, const Objective& obj,
                                                  const Vector& x, double up, double down) {
  require_direction(d);
  require_alpha_max(alpha_max);
  const double slope = g.dot(d);
  const double dd = d.squaredNorm();
  if (is_ascent(slope, g.norm(), std::sqrt(dd))) {
    throw ContractViolation("backtracking called on an ascent direction");
  }
  if (slope >= 0.0) return {0.0, l_hat};
  const double fx = obj.value(x);
  double l = std::max(l_hat * down, kLFloor);
  for (int i = 0; i <= kDoublingCap; ++i) {
    const double alpha = std::min(-slope / (l * dd), alpha_max);
    const double model = fx + alpha * slope + 0.5 * l * alpha * alpha * dd;
    if (obj.value(x + alpha * d) <= model) return {alpha, l};
    l *= up;
  }
  throw NumericalError("backtracking Lipschitz estimate did not settle", l);
}

double stepsize_exact(const Objective& obj, const Vector& x, double fx, double slope,
                      const Vector& d, double alpha_max) {
  if (obj.is_quadratic()) return exact_linesearch_quadratic(obj, slope, d, alpha_max);
  return stepsize_armijo(obj, x, fx, slope, d, alpha_max, 0.9, 0.45);
}

StepState initial_state(const StepsizeRule& rule) { return {rule.l0}; }

double choose_step(const StepsizeRule& rule, StepState& state, const StepQuery& q) {
  switch (rule.kind) {
    case StepsizeRule::Kind::Diminishing: {
      const double m = static_cast<double>(q.blocks);
      return std::min(2.0 * m / (static_cast<double>(q.k) + 2.0 * m), q.alpha_max);
    }
    case StepsizeRule::Kind::ExactLine:
      return stepsize_exact(q.obj, q.x, q.f, q.slope, q.d, q.alpha_max);
    case StepsizeRule::Kind::Armijo:
      return stepsize_armijo(q.obj, q.x, q.f, q.slope, q.d, q.alpha_max, rule.delta, rule.gamma);
    case StepsizeRule::Kind::Lipschitz: {
      const double l = q.lipschitz_override > 0.0 ? q.lipschitz_override : rule.lipschitz;
      return stepsize_lipschitz(q.slope, q.d.squaredNorm(), q.g.norm(), l, q.alpha_max);
    }
    case StepsizeRule::Kind::BacktrackingL: {
      auto [alpha, l] =
          stepsize_backtracking_L(state.l_hat, q.g, q.d, q.alpha_max, q.obj, q.x, rule.up, rule.down);
      state.l_hat = l;
      return alpha;
    }
  }
  return 0.0;
}

}  // namespace fwkit
