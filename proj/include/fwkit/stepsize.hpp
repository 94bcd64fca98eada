#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "fwkit/objective.hpp"

namespace fwkit {

/// Which stepsize a solver uses, with its parameters.
struct StepsizeRule {
  enum class Kind { Diminishing, ExactLine, Armijo, Lipschitz, BacktrackingL };
  Kind kind = Kind::Diminishing;
  double delta = 0.5;   // Armijo shrink factor
  double gamma = 0.1;   // Armijo sufficient-decrease constant
  double lipschitz = 0.0;
  double l0 = 1.0;
  double up = 2.0;
  double down = 0.5;

  static StepsizeRule diminishing();
  static StepsizeRule exact();
  static StepsizeRule armijo(double delta = 0.5, double gamma = 0.1);
  static StepsizeRule lipschitz_rule(double l);
  static StepsizeRule backtracking(double l0, double up = 2.0, double down = 0.5);

  std::string name() const;
};

StepsizeRule::Kind parse_stepsize_kind(const std::string& name);

/// 2 / (k + 2)
double stepsize_diminishing(std::size_t k);

/// min(-<g,d> / (L ||d||^2), alpha_max); 0 when <g,d> = 0.
double stepsize_lipschitz(const Vector& g, const Vector& d, double l, double alpha_max);
double stepsize_lipschitz(double slope, double dir_norm_sq, double grad_norm, double l,
                          double alpha_max);

/// Largest delta^m alpha_max, m <= 100, with sufficient decrease.
double stepsize_armijo(const Objective& obj, const Vector& x, const Vector& d, double alpha_max,
                       double delta, double gamma);
double stepsize_armijo(const Objective& obj, const Vector& x, double fx, double slope,
                       const Vector& d, double alpha_max, double delta, double gamma);

/// Returns (alpha, accepted L estimate).
std::pair<double, double> stepsize_backtracking_L(double l_hat, const Vector& g, const Vector& d,
                                                  double alpha_max, const Objective& obj,
                                                  const Vector& x, double up = 2.0,
                                                  double down = 0.5);

/// Closed form for quadratics, Armijo(0.9, 0.45) otherwise.
double stepsize_exact(const Objective& obj, const Vector& x, double fx, double slope,
                      const Vector& d, double alpha_max);

/// Per-run mutable state of a rule (only BacktrackingL uses it).
struct StepState {
  double l_hat = 0.0;
};

StepState initial_state(const StepsizeRule& rule);

/// Everything a rule may need to pick alpha for a step x + alpha d.
struct StepQuery {
  const Objective& obj;
  const Vector& x;
  double f;
  const Vector& g;
  const Vector& d;
  double slope;       // <g, d>
  double alpha_max;
  std::size_t k;
  /// Diminishing rule uses 2m / (k + 2m); m = 1 outside block solvers.
  std::size_t blocks = 1;
  /// Overrides the rule's L for the Lipschitz rule when positive (block steps).
  double lipschitz_override = 0.0;
};

double choose_step(const StepsizeRule& rule, StepState& state, const StepQuery& q);

}  // namespace fwkit
