#include "fwkit/diagnostics.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "fwkit/errors.hpp"
#include "solver_internal.hpp"

namespace fwkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Folds bound - observed into a CheckResult.
class Tracker {
 public:
  explicit Tracker(std::string name) { r_.check = std::move(name); r_.margin = kInf; }
  void see(std::size_t k, double bound, double value) {
    const double m = bound - value;
    if (!(m >= 0.0) && !r_.k_violation) {
      r_.k_violation = k;
      r_.pass = false;
    }
    if (std::isnan(m)) {
      r_.margin = -kInf;
    } else {
      r_.margin = std::min(r_.margin, m);
    }
  }
  CheckResult done() const { return r_; }

 private:
  CheckResult r_;
};

double need_f_star(std::optional<double> f_star, const char* check) {
  if (!f_star) throw InputError(std::string(check) + " needs a known optimal value");
  return *f_star;
}

bool step_between(const IterationRecord& a, const IterationRecord& b) { return b.k == a.k + 1; }

}  // namespace

CheckResult verify_sublinear_bound(const SolveReport& report, double lipschitz, double diameter,
                                   std::optional<double> f_star) {
  const double fs = need_f_star(f_star, "sublinear_bound");
  Tracker t("sublinear_bound");
  const double c = 2.0 * lipschitz * diameter * diameter;
  for (const auto& r : report.records) {
    if (r.k < 1) continue;
    t.see(r.k, c / (static_cast<double>(r.k) + 2.0) + 1e-9, r.f - fs);
  }
  return t.done();
}

RateFit fit_geometric_rate(const SolveReport& report, std::optional<double> f_star, bool good_only,
                           std::optional<std::pair<std::size_t, std::size_t>> window,
                           double floor) {
  const double fs = need_f_star(f_star, "fit_geometric_rate");
  struct Pt {
    double t, y;
    std::size_t k;
  };
  std::vector<Pt> pts;
  for (const auto& r : report.records) {
    const double h = r.f - fs;
    if (!(h > floor)) break;
    pts.push_back({static_cast<double>(good_only ? r.good_steps : r.k), std::log(h), r.k});
  }
  std::vector<Pt> use;
  if (window) {
    for (const auto& p : pts) {
      if (p.k >= window->first && p.k <= window->second) use.push_back(p);
    }
  } else {
    // trailing half, but never fewer than two points
    const std::size_t from = pts.size() < 4 ? 0 : pts.size() / 2;
    use.assign(pts.begin() + static_cast<std::ptrdiff_t>(from), pts.end());
  }
  if (use.size() < 2) throw InputError("rate fit needs at least two positive-gap records");
  double mt = 0.0, my = 0.0;
  for (const auto& p : use) {
    mt += p.t;
    my += p.y;
  }
  mt /= static_cast<double>(use.size());
  my /= static_cast<double>(use.size());
  double stt = 0.0, syy = 0.0, sty = 0.0;
  for (const auto& p : use) {
    stt += (p.t - mt) * (p.t - mt);
    syy += (p.y - my) * (p.y - my);
    sty += (p.t - mt) * (p.y - my);
  }
  if (!(stt > 0.0)) throw InputError("rate fit window has a single step count");
  RateFit fit;
  fit.q = std::exp(sty / stt);
  fit.r2 = syy > 0.0 ? std::clamp(sty * sty / (stt * syy), 0.0, 1.0) : 1.0;
  fit.window = {use.front().k, use.back().k};
  fit.points = use.size();
  return fit;
}

Vector simplex_multipliers(const Vector& x, const Vector& g) {
  return g.array() - g.dot(x);
}

double active_set_radius(const Vector& lambda, double lipschitz, double tol) {
  double dmin = kInf;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > tol) dmin = std::min(dmin, lambda[i]);
  }
  if (!std::isfinite(dmin)) throw InputError("all multipliers vanish: fully degenerate optimum");
  return dmin / (dmin + 2.0 * lipschitz);
}

std::optional<std::size_t> support_identification(const SolveReport& report,
                                                  const std::vector<Index>& i_star) {
  if (report.records.empty()) return std::nullopt;
  std::vector<Index> sorted = i_star;
  std::sort(sorted.begin(), sorted.end());
  auto inside = [&](const IterationRecord& r) {
    if (r.support.empty() && r.support_size > 0) {
      throw InputError("support_identification needs records made with record_supports");
    }
    return std::all_of(r.support.begin(), r.support.end(),
                       [&](Index i) { return std::binary_search(sorted.begin(), sorted.end(), i); });
  };
  std::optional<std::size_t> first;
  for (std::size_t j = report.records.size(); j-- > 0;) {
    if (!inside(report.records[j])) break;
    first = report.records[j].k;
  }
  return first;
}

CheckResult lower_bound_check(const ProblemInstance& inst, const SolveReport& report) {
  if (inst.family != "simplex_distance") {
    throw InputError("lower_bound_check applies to simplex_distance instances");
  }
  const double fs = need_f_star(inst.f_star, "lower_bound");
  const auto n = static_cast<double>(inst.region.dimension());
  Tracker t("lower_bound");
  for (const auto& r : report.records) {
    if (static_cast<double>(r.k) > n - 2.0) break;
    const double bound = 1.0 / (static_cast<double>(r.k) + 1.0) - 1.0 / n - 1e-12;
    t.see(r.k, r.f - fs, bound);
  }
  return t.done();
}

CheckResult inexact_rate_check(const SolveReport& report, const InexactSchedule& schedule,
                               std::optional<double> f_star) {
  if (schedule.mode != InexactSchedule::Mode::Decaying) {
    throw InputError("the inexact rate bound holds for decaying schedules only");
  }
  const double fs = need_f_star(f_star, "inexact_rate");
  const double c = 2.0 * schedule.kappa_upper * (1.0 + schedule.delta);
  Tracker t("inexact_rate");
  for (const auto& r : report.records) {
    if (r.k < 1) continue;
    t.see(r.k, c / (static_cast<double>(r.k) + 2.0) + 1e-9, r.f - fs);
  }
  return t.done();
}

CheckResult strongly_convex_domain_check(const ProblemInstance& inst, const SolveReport& report) {
  if (!inst.region.get<L2Ball>()) {
    throw InputError("strongly_convex_domain_check needs an l2 ball region");
  }
  const double fs = need_f_star(inst.f_star, "strongly_convex_domain");
  double c2 = 0.0;
  for (const auto& r : report.records) {
    if (r.k >= 1 && r.k <= 20) {
      const double kk = static_cast<double>(r.k);
      c2 = std::max(c2, kk * kk * (r.f - fs));
    }
  }
  Tracker t("strongly_convex_domain");
  for (const auto& r : report.records) {
    if (r.k <= 20) continue;
    const double kk = static_cast<double>(r.k);
    t.see(r.k, 2.0 * c2, kk * kk * (r.f - fs));
  }
  CheckResult out = t.done();
  if (inst.gradient_lower && *inst.gradient_lower > 0.0) {
    // Linear regime: also require a contracting fit; margin folds in 1 - q.
    double q = kInf;
    try {
      q = fit_geometric_rate(report, fs, false).q;
    } catch (const InputError&) {
    }
    out.margin = std::min(out.margin, 1.0 - q);
    if (!(q < 1.0)) out.pass = false;
  }
  return out;
}

CheckResult min_gap_rate_check(const SolveReport& report, double kappa_upper) {
  Tracker t("min_gap_rate");
  double best = kInf;
  for (const auto& r : report.records) {
    if (!std::isnan(r.gap)) best = std::min(best, r.gap);
    if (r.k < 1 || !std::isfinite(best)) continue;
    t.see(r.k, 1.1 * 9.0 * kappa_upper / (2.0 * static_cast<double>(r.k)), best);
  }
  return t.done();
}

CheckResult nonconvex_gap_check(const SolveReport& report) {
  std::vector<std::pair<std::size_t, double>> scaled;
  double best = kInf;
  for (const auto& r : report.records) {
    if (!std::isnan(r.gap)) best = std::min(best, r.gap);
    if (r.k >= 1 && std::isfinite(best)) {
      scaled.emplace_back(r.k, best * std::sqrt(static_cast<double>(r.k)));
    }
  }
  double c = 0.0;
  for (const auto& [k, v] : scaled) {
    if (k <= 20) c = std::max(c, v);
  }
  Tracker t("nonconvex_gap");
  for (const auto& [k, v] : scaled) {
    if (k > 20) t.see(k, 2.0 * c, v);
  }
  return t.done();
}

CheckResult descent_lemma_check(const ProblemInstance& inst, const SolveReport& report,
                                double slack) {
  using K = StepsizeRule::Kind;
  Tracker t("descent_lemma");
  const StepsizeRule& rule = report.rule;
  const bool applies = rule.kind == K::Lipschitz ||
                       (rule.kind == K::ExactLine && inst.objective.is_quadratic());
  if (!applies) return t.done();
  const double l = rule.kind == K::Lipschitz ? rule.lipschitz : inst.lipschitz;
  const auto& rs = report.records;
  for (std::size_t j = 0; j + 1 < rs.size(); ++j) {
    const auto& r = rs[j];
    switch (r.kind) {
      case StepKind::FW:
      case StepKind::Away:
      case StepKind::Pairwise:
      case StepKind::InFace:
      case StepKind::Drop:
        break;
      default:
        continue;
    }
    if (!step_between(r, rs[j + 1]) || !(r.dir_norm > 0.0) || !(r.dir_deriv < 0.0)) continue;
    const double nn = r.dir_norm * r.dir_norm;
    const double alpha_l = -r.dir_deriv / (l * nn);
    if (!(alpha_l < r.alpha_max)) continue;
    t.see(r.k, r.f - r.dir_deriv * r.dir_deriv / (2.0 * l * nn) + slack, rs[j + 1].f);
  }
  return t.done();
}

CheckResult full_step_halving_check(const ProblemInstance& inst, const SolveReport& report,
                                    double slack) {
  Tracker t("full_step_halving");
  if (report.rule.kind != StepsizeRule::Kind::Lipschitz) return t.done();
  const double fs = need_f_star(inst.f_star, "full_step_halving");
  const double l = report.rule.lipschitz;
  const auto& rs = report.records;
  for (std::size_t j = 0; j + 1 < rs.size(); ++j) {
    const auto& r = rs[j];
    if (r.kind != StepKind::FW || r.alpha != 1.0 || !step_between(r, rs[j + 1])) continue;
    const double h = r.f - fs;
    t.see(r.k, 0.5 * std::min(l * r.dir_norm * r.dir_norm, h) + slack, rs[j + 1].f - fs);
  }
  return t.done();
}

CheckResult gap_dominance_check(const SolveReport& report, std::optional<double> f_star) {
  const double fs = need_f_star(f_star, "gap_dominance");
  Tracker t("gap_dominance");
  for (const auto& r : report.records) {
    if (!std::isnan(r.gap)) t.see(r.k, r.gap, r.f - fs - 1e-10);
  }
  return t.done();
}

CheckResult sparsity_check(const SolveReport& report) {
  Tracker t("sparsity");
  for (const auto& r : report.records) {
    t.see(r.k, static_cast<double>(r.k + 1), static_cast<double>(r.support_size));
  }
  return t.done();
}

CheckResult good_step_contraction_check(const SolveReport& report, std::optional<double> f_star,
                                        double factor, double rel_slack, double abs_slack) {
  const double fs = need_f_star(f_star, "good_step_contraction");
  Tracker t("good_step_contraction");
  const auto& rs = report.records;
  for (std::size_t j = 0; j + 1 < rs.size(); ++j) {
    const auto& r = rs[j];
    if (!step_between(r, rs[j + 1]) || !is_good_step(r.kind, r.alpha, r.alpha_max)) continue;
    t.see(r.k, (factor + rel_slack) * (r.f - fs) + abs_slack, rs[j + 1].f - fs);
  }
  return t.done();
}

CheckResult duality_gap_check(const ProblemInstance& inst, double tol) {
  if (!inst.x_star) throw InputError("duality_gap needs a known minimizer");
  Tracker t("duality_gap");
  t.see(0, tol, fw_gap(inst.region, *inst.x_star, inst.objective.gradient(*inst.x_star)));
  return t.done();
}

CheckResult bcfw_mean_rate_check(const std::vector<SolveReport>& reports, double k_const,
                                 std::size_t blocks, double f_star) {
  if (reports.empty()) throw InputError("bcfw_mean_rate_check needs at least one report");
  const SolveReport* longest = &reports.front();
  for (const auto& r : reports) {
    if (r.records.empty()) throw InputError("empty report");
    if (r.records.back().k > longest->records.back().k) longest = &r;
  }
  // A run that stopped early keeps its final value.
  std::vector<std::size_t> pos(reports.size(), 0);
  const double m = static_cast<double>(blocks);
  Tracker t("bcfw_mean_rate");
  for (const auto& ref : longest->records) {
    double sum = 0.0;
    for (std::size_t s = 0; s < reports.size(); ++s) {
      const auto& rs = reports[s].records;
      while (pos[s] + 1 < rs.size() && rs[pos[s] + 1].k <= ref.k) ++pos[s];
      sum += rs[pos[s]].f - f_star;
    }
    const double mean = sum / static_cast<double>(reports.size());
    t.see(ref.k, 2.0 * k_const * m / (static_cast<double>(ref.k) + 2.0 * m), mean);
  }
  return t.done();
}

ProblemInstance affine_image(const ProblemInstance& inst, const Matrix& p) {
  if (!inst.region.get<Simplex>()) throw InputError("affine_image maps simplex instances");
  const Index n = inst.region.dimension();
  if (p.rows() != n || p.cols() != n) throw InputError("affine map has the wrong shape");
  Eigen::FullPivLU<Matrix> lu(p);
  if (!lu.isInvertible()) throw InputError("affine map is singular");
  const Matrix pinv = lu.inverse();
  const Objective& o = inst.objective;
  std::optional<Objective> img;
  if (const auto* fq = o.get<FactoredQuadratic>()) {
    img = Objective::factored_quadratic(fq->a * pinv, pinv.transpose() * fq->b, fq->c, fq->sign);
  } else if (const auto* ls = o.get<LeastSquares>()) {
    img = Objective::least_squares(ls->a * pinv, ls->b);
  } else if (const auto* sn = o.get<ShiftedNormSquare>()) {
    img = Objective::least_squares(pinv, sn->center);
  } else if (const auto* dq = o.get<DenseQuadratic>()) {
    img = Objective::dense_quadratic(pinv.transpose() * dq->q * pinv, pinv.transpose() * dq->b,
                                     dq->c);
  } else {
    throw CapabilityError("affine_image does not handle " + o.name() + " objectives");
  }
  std::vector<Vector> verts;
  for (Index i = 0; i < n; ++i) verts.emplace_back(p.col(i));
  std::optional<Vector> x_star;
  if (inst.x_star) x_star = p * *inst.x_star;
  return make_instance(inst.family + "_affine", std::move(*img),
                       Region::vertex_hull(std::move(verts)), inst.f_star, std::move(x_star));
}

CheckResult affine_invariance_check(const ProblemInstance& inst, const Matrix& p,
                                    SolverConfig config, std::size_t iterations, double tol) {
  const ProblemInstance image = affine_image(inst, p);
  detail::Rng rng(config.seed);
  const Vector r = detail::start_direction(inst, config, rng);
  const Matrix pinv_t = p.inverse().transpose();
  SolverConfig cx = config, cy = config;
  cx.start_direction = r;
  cy.start_direction = pinv_t * r;
  Tracker t("affine_invariance");
  for (std::size_t k = 0; k <= iterations; ++k) {
    cx.max_iter = cy.max_iter = std::max<std::size_t>(k, 1);
    cx.record_every = cy.record_every = cx.max_iter;
    if (k == 0) {
      // Budget 0 is the start vertex itself.
      const Vector x0 = lmo(inst.region, r).densify();
      const Vector y0 = lmo(image.region, *cy.start_direction).densify();
      t.see(0, tol, (y0 - p * x0).norm());
      continue;
    }
    const SolveReport rx = solve(inst, cx);
    const SolveReport ry = solve(image, cy);
    t.see(k, tol, (ry.final_point - p * rx.final_point).norm());
    if (rx.termination != Termination::MaxIter && ry.termination != Termination::MaxIter) break;
  }
  return t.done();
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "sublinear_bound", "geometric_rate",  "lower_bound",       "inexact_rate",
      "strongly_convex_domain", "min_gap_rate", "nonconvex_gap", "descent_lemma",
      "full_step_halving", "gap_dominance", "sparsity",          "support_identification",
      "duality_gap"};
  return names;
}

CheckResult run_named_check(const std::string& name, const ProblemInstance& inst,
                            const SolveReport& report,
                            const std::optional<InexactSchedule>& schedule) {
  if (name == "sublinear_bound") {
    return verify_sublinear_bound(report, inst.lipschitz, inst.diameter, inst.f_star);
  }
  if (name == "geometric_rate") {
    CheckResult out{name, false, -kInf, std::nullopt};
    try {
      const RateFit fit = fit_geometric_rate(report, inst.f_star, true);
      out.margin = 1.0 - fit.q;
      out.pass = fit.q < 1.0;
    } catch (const InputError&) {
      if (!inst.f_star) throw;
    }
    return out;
  }
  if (name == "lower_bound") return lower_bound_check(inst, report);
  if (name == "inexact_rate") {
    if (!schedule) throw InputError("inexact_rate needs an inexact oracle schedule");
    return inexact_rate_check(report, *schedule, inst.f_star);
  }
  if (name == "strongly_convex_domain") return strongly_convex_domain_check(inst, report);
  if (name == "min_gap_rate") return min_gap_rate_check(report, inst.curvature_upper);
  if (name == "nonconvex_gap") return nonconvex_gap_check(report);
  if (name == "descent_lemma") return descent_lemma_check(inst, report);
  if (name == "full_step_halving") return full_step_halving_check(inst, report);
  if (name == "gap_dominance") return gap_dominance_check(report, inst.f_star);
  if (name == "sparsity") return sparsity_check(report);
  if (name == "support_identification") {
    if (!inst.optimal_face) throw InputError("support_identification needs a known optimal face");
    const auto k = support_identification(report, *inst.optimal_face);
    CheckResult out{name, k.has_value(), 0.0, std::nullopt};
    if (k) {
      out.margin = static_cast<double>(report.records.back().k - *k);
    } else {
      out.margin = -1.0;
      out.k_violation = report.records.empty() ? 0 : report.records.back().k;
    }
    return out;
  }
  if (name == "duality_gap") return duality_gap_check(inst);
  throw InputError("unknown check '" + name + "'");
}

}  // namespace fwkit
