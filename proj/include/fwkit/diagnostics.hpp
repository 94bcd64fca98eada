#pragma once

// Checks over solver reports. Every check returns the measured margin
// (bound minus observed, minimized over the trace; negative on failure) and the
// first violating iteration, so thresholds can be judged from data.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fwkit/inexact.hpp"
#include "fwkit/instance.hpp"
#include "fwkit/solver.hpp"

namespace fwkit {

struct CheckResult {
  std::string check;
  bool pass = true;
  double margin = 0.0;
  std::optional<std::size_t> k_violation;
};

struct RateFit {
  double q = 0.0;
  double r2 = 0.0;
  /// First and last record iteration k used by the fit.
  std::pair<std::size_t, std::size_t> window{0, 0};
  std::size_t points = 0;
};

/// h_k <= 2 L D^2 / (k + 2) + 1e-9 for recorded k >= 1.
CheckResult verify_sublinear_bound(const SolveReport& report, double lipschitz, double diameter,
                                   std::optional<double> f_star);

/// Least-squares fit of log h_k against gamma(k) (good_only) or k, over the
/// trailing half (at least two points) of the records before the first h_k <= floor. An explicit
/// [k_lo, k_hi] window replaces the trailing half.
RateFit fit_geometric_rate(const SolveReport& report, std::optional<double> f_star, bool good_only,
                           std::optional<std::pair<std::size_t, std::size_t>> window = std::nullopt,
                           double floor = 0.0);

/// lambda_i = g_i - <g, x>
Vector simplex_multipliers(const Vector& x, const Vector& g);
/// delta_min / (delta_min + 2 L) with delta_min the smallest lambda_i > tol.
double active_set_radius(const Vector& lambda, double lipschitz, double tol = 1e-9);
/// First recorded k from which every recorded support lies inside i_star.
/// Needs records made with record_supports.
std::optional<std::size_t> support_identification(const SolveReport& report,
                                                  const std::vector<Index>& i_star);

/// simplex_distance(n): h_k >= 1/(k+1) - 1/n - 1e-12 for k <= n - 2.
CheckResult lower_bound_check(const ProblemInstance& inst, const SolveReport& report);
/// h_k <= 2 kappa (1 + delta) / (k + 2) + 1e-9 for k >= 1; decaying schedules only.
CheckResult inexact_rate_check(const SolveReport& report, const InexactSchedule& schedule,
                               std::optional<double> f_star);
/// L2 ball only: k^2 h_k <= 2 max_{1<=k<=20} k^2 h_k, and q < 1 when a
/// gradient lower bound c > 0 is known.
CheckResult strongly_convex_domain_check(const ProblemInstance& inst, const SolveReport& report);

/// min_{i<=k} G_i <= 1.1 * 9 kappa / (2k) for k >= 1.
CheckResult min_gap_rate_check(const SolveReport& report, double kappa_upper);
/// min_{i<=k} G_i sqrt(k) stays within 2x its largest value over 1 <= k <= 20.
CheckResult nonconvex_gap_check(const SolveReport& report);

/// Whenever alpha(L) < alpha_max: f_{k+1} <= f_k - <g,d>^2 / (2 L ||d||^2) + slack.
/// Needs consecutive records; lipschitz <= 0 uses the rule's L or the instance L.
CheckResult descent_lemma_check(const ProblemInstance& inst, const SolveReport& report,
                                double slack = 1e-10);
/// Full FW steps under the Lipschitz rule: h_{k+1} <= min(L ||d||^2, h_k) / 2 + slack.
CheckResult full_step_halving_check(const ProblemInstance& inst, const SolveReport& report,
                                    double slack = 1e-10);
/// G_k >= h_k - 1e-10.
CheckResult gap_dominance_check(const SolveReport& report, std::optional<double> f_star);
/// support_size <= k + 1.
CheckResult sparsity_check(const SolveReport& report);
/// Every good step k -> k+1 between consecutive records:
/// h_{k+1} <= (factor + rel_slack) h_k + abs_slack.
CheckResult good_step_contraction_check(const SolveReport& report, std::optional<double> f_star,
                                        double factor, double rel_slack, double abs_slack);
/// G(x*) <= tol.
CheckResult duality_gap_check(const ProblemInstance& inst, double tol = 1e-8);

/// BCFW: seed-averaged h_k <= 2 K m / (k + 2m) for recorded k.
CheckResult bcfw_mean_rate_check(const std::vector<SolveReport>& reports, double k_const,
                                 std::size_t blocks, double f_star);

/// Runs `config` on `inst` (simplex region) and on its image under y = P x --
/// atoms P e_i and f^(y) = f(P^-1 y) -- for every step budget up to
/// `iterations`, reporting max ||y_k - P x_k||.
CheckResult affine_invariance_check(const ProblemInstance& inst, const Matrix& p,
                                    SolverConfig config, std::size_t iterations, double tol = 1e-9);
/// The transformed instance used above.
ProblemInstance affine_image(const ProblemInstance& inst, const Matrix& p);

/// Names accepted by run_named_check.
const std::vector<std::string>& known_checks();
/// Dispatch by name for configuration-driven runs.
CheckResult run_named_check(const std::string& name, const ProblemInstance& inst,
                            const SolveReport& report,
                            const std::optional<InexactSchedule>& schedule = std::nullopt);

}  // namespace fwkit
