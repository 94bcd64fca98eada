// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fwkit/diagnostics.hpp"
#include "fwkit/errors.hpp"
#include "fwkit/inexact.hpp"
#include "fwkit/instance.hpp"
#include "fwkit/region.hpp"
#include "fwkit/solver.hpp"

using namespace fwkit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string describe(const CheckResult& c) {
  std::string s = c.check + " margin=" + fmt(c.margin);
  if (c.k_violation) s += " k=" + std::to_string(*c.k_violation);
  return s;
}

// Runs kept for the per-step checks of criterion 13.
struct KeptRun {
  std::string label;
  const ProblemInstance* inst;
  SolveReport report;
};
std::vector<KeptRun> kept;
std::vector<std::unique_ptr<ProblemInstance>> kept_instances;

const ProblemInstance& keep_instance(ProblemInstance inst) {
  kept_instances.push_back(std::make_unique<ProblemInstance>(std::move(inst)));
  return *kept_instances.back();
}

SolverConfig config(Variant v, StepsizeRule rule, std::size_t max_iter, double gap_tol,
                    std::uint64_t seed = 0) {
  SolverConfig c;
  c.variant = v;
  c.stepsize = rule;
  c.max_iter = max_iter;
  c.gap_tol = gap_tol;
  c.seed = seed;
  return c;
}

double min_h(const SolveReport& rep, double f_star, std::size_t k_max) {
  double best = INFINITY;
  for (const auto& r : rep.records) {
    if (r.k <= k_max) best = std::min(best, r.f - f_star);
  }
  return best;
}

// h_k <= 2LD^2/(k+2) + 1e-9 up to k_max; a run that stopped early keeps its
// final value for the remaining k.
void sublinear_up_to(Verdict& v, const std::string& label, const ProblemInstance& inst,
                     const SolveReport& rep, std::size_t k_max) {
  const CheckResult c = verify_sublinear_bound(rep, inst.lipschitz, inst.diameter, inst.f_star);
  v.require(c.pass, label + " " + describe(c));
  const auto& last = rep.records.back();
  if (last.k < k_max) {
    const double bound = 2.0 * inst.curvature_upper / (static_cast<double>(k_max) + 2.0) + 1e-9;
    v.require(last.f - *inst.f_star <= bound, label + " final value above bound at k_max");
  }
}

Verdict criterion1() {
  Verdict v;
  const auto t0 = Clock::now();
  const ProblemInstance& simplex = keep_instance(build_simplex_distance(50));
  ProblemInstance lasso_inst = build_lasso(20, 50, 1.0, 0.1, 5, 11);
  ensure_f_star(lasso_inst, 1e-12);
  const ProblemInstance& lasso = keep_instance(std::move(lasso_inst));
  for (const ProblemInstance* inst : {&simplex, &lasso}) {
    SolveReport rep = solve(*inst, config(Variant::FW, StepsizeRule::lipschitz_rule(inst->lipschitz),
                                          10000, 1e-15, 3));
    sublinear_up_to(v, inst->family, *inst, rep, 10000);
    kept.push_back({"c1 " + inst->family, inst, std::move(rep)});
  }
  const double secs = seconds_since(t0);
  v.require(secs < 10.0, "runtime " + fmt(secs) + " s");
  v.note("runtime " + fmt(secs) + " s");
  return v;
}

Verdict criterion2() {
  Verdict v;
  const ProblemInstance& inst = keep_instance(build_simplex_distance(100));
  for (Variant var : {Variant::FW, Variant::AFW, Variant::PFW}) {
    SolveReport rep = solve(inst, config(var, StepsizeRule::exact(), 120, 1e-15, 5));
    const CheckResult lb = lower_bound_check(inst, rep);
    const CheckResult sp = sparsity_check(rep);
    v.require(lb.pass, to_string(var) + " " + describe(lb));
    v.require(sp.pass, to_string(var) + " " + describe(sp));
    v.require(rep.records.back().k >= 98 || rep.termination == Termination::GapTol,
              to_string(var) + " stopped before k=98");
    kept.push_back({"c2 " + to_string(var), &inst, std::move(rep)});
  }
  return v;
}

Verdict criterion3() {
  Verdict v;
  const ProblemInstance& inst = keep_instance(build_face_quadratic(10, 3, 4.0, 21));
  const double fs = *inst.f_star;
  for (Variant var : {Variant::AFW, Variant::PFW}) {
    SolveReport rep = solve(inst, config(var, StepsizeRule::exact(), 500, 1e-12, 2));
    const double h = min_h(rep, fs, 500);
    v.require(h <= 1e-10, to_string(var) + " min h " + fmt(h));
    try {
      const RateFit fit = fit_geometric_rate(rep, fs, true);
      v.require(fit.q < 1.0 && fit.r2 >= 0.95,
                to_string(var) + " q=" + fmt(fit.q) + " r2=" + fmt(fit.r2));
      v.note(to_string(var) + " q=" + fmt(fit.q) + " r2=" + fmt(fit.r2) + " k<=" +
             std::to_string(rep.records.back().k));
    } catch (const Error& e) {
      v.require(false, to_string(var) + " fit: " + e.what());
    }
    kept.push_back({"c3 " + to_string(var), &inst, std::move(rep)});
  }
  SolveReport fw = solve(inst, config(Variant::FW, StepsizeRule::exact(), 500, 1e-12, 2));
  try {
    const RateFit fit = fit_geometric_rate(fw, fs, true);
    v.require(fit.q >= 0.99, "FW q=" + fmt(fit.q));
    v.note("FW q=" + fmt(fit.q));
  } catch (const Error& e) {
    v.require(false, std::string("FW fit: ") + e.what());
  }
  kept.push_back({"c3 FW", &inst, std::move(fw)});
  return v;
}

Verdict criterion4() {
  Verdict v;
  const ProblemInstance& inst = keep_instance(build_interior_quadratic(5, 0.5, 4));
  const double ratio = *inst.boundary_distance / inst.diameter;
  const double factor = 1.0 - (inst.mu / inst.lipschitz) * ratio * ratio;
  SolveReport rep = solve(inst, config(Variant::FW, StepsizeRule::lipschitz_rule(inst.lipschitz),
                                       5000, 1e-9, 6));
  const CheckResult c = good_step_contraction_check(rep, inst.f_star, factor, 1e-6, 1e-14);
  v.require(c.pass, describe(c));
  v.note("factor " + fmt(factor) + ", " + std::to_string(rep.good_steps) + " good steps");
  kept.push_back({"c4", &inst, std::move(rep)});
  return v;
}

Verdict criterion5() {
  Verdict v;
  {
    const ProblemInstance& inst = keep_instance(build_ball_quadratic(20, 1.0, 1.0, 8));
    SolveReport rep = solve(inst, config(Variant::FW, StepsizeRule::lipschitz_rule(inst.lipschitz),
                                         10000, 1e-10, 1));
    const CheckResult c = strongly_convex_domain_check(inst, rep);
    v.require(c.pass, "c>0 " + describe(c));
    v.note("c>0 stopped at k=" + std::to_string(rep.records.back().k));
    kept.push_back({"c5 c>0", &inst, std::move(rep)});
  }
  {
    const ProblemInstance& inst = keep_instance(build_ball_quadratic(20, 1.0, 0.0, 8));
    SolveReport rep = solve(inst, config(Variant::FW, StepsizeRule::lipschitz_rule(inst.lipschitz),
                                         10000, 1e-300, 1));
    const CheckResult c = strongly_convex_domain_check(inst, rep);
    v.require(c.pass, "c=0 " + describe(c));
    v.require(rep.records.back().k >= 10000 || rep.termination == Termination::GapTol,
              "c=0 stopped early");
    kept.push_back({"c5 c=0", &inst, std::move(rep)});
  }
  return v;
}

Verdict criterion6() {
  Verdict v;
  double worst = 0.0, mnp_secs = 0.0;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ProblemInstance inst = build_hull_min_norm(random_points(10, 3, 1.5, seed));
    const auto t1 = Clock::now();
    const SolveReport mnp =
        solve_wolfe_mnp(inst, config(Variant::WolfeMNP, StepsizeRule::exact(), 1000, 1e-12, seed));
    mnp_secs += seconds_since(t1);
    const auto [f_ref, x_ref] = reference_optimum(inst, 1e-15, 100000);
    v.require(mnp.termination != Termination::NumericalError,
              "seed " + std::to_string(seed) + " MNP: " + mnp.message);
    worst = std::max(worst, (mnp.final_point - x_ref).norm());
  }
  const double secs = seconds_since(t0);
  v.require(worst <= 1e-8, "max distance " + fmt(worst));
  v.require(secs < 5.0, "runtime " + fmt(secs) + " s");
  v.note("max distance " + fmt(worst) + ", MNP " + fmt(mnp_secs) + " s, total " + fmt(secs) + " s");
  return v;
}

// Independent oracle: vertex of B(F) for an ordering sigma by marginal gains.
Vector chain_vertex(const SubmodularFunction& fn, const std::vector<Index>& order) {
  Vector s(fn.ground_size());
  std::vector<Index> prefix;
  double prev = fn(prefix);
  for (Index i : order) {
    prefix.push_back(i);
    const double cur = fn(prefix);
    s[i] = cur - prev;
    prev = cur;
  }
  return s;
}

Verdict criterion7() {
  Verdict v;
  const Index n = 5;
  std::vector<WeightedEdge> edges;
  for (auto [a, b] : random_graph(n, 0.6, 3)) edges.push_back({a, b, 1.0});
  std::mt19937_64 wrng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector mw(n);
  for (Index i = 0; i < n; ++i) mw[i] = u(wrng);
  const std::vector<SubmodularFunction> fns{SubmodularFunction::cardinality_cap(n, 2),
                                            SubmodularFunction::graph_cut(n, edges),
                                            SubmodularFunction::modular(mw)};
  const char* names[] = {"cap", "cut", "modular"};
  for (std::size_t f = 0; f < fns.size(); ++f) {
    std::vector<Vector> verts;
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    do {
      verts.push_back(chain_vertex(fns[f], order));
    } while (std::next_permutation(order.begin(), order.end()));
    std::mt19937_64 rng(1000 + f);
    int bad = 0;
    for (int t = 0; t < 50; ++t) {
      Vector w(n);
      for (Index i = 0; i < n; ++i) w[i] = u(rng);
      double best = -INFINITY;
      for (const auto& s : verts) best = std::max(best, w.dot(s));
      const Vector g = base_polytope_greedy(fns[f], w);
      if (w.dot(g) != best) ++bad;
    }
    v.require(bad == 0, std::string(names[f]) + ": " + std::to_string(bad) + "/50 not maximal");
  }
  return v;
}

Verdict criterion8() {
  Verdict v;
  for (Index n : {2, 3}) {
    std::vector<Vector> cube;
    for (Index mask = 0; mask < (Index(1) << n); ++mask) {
      Vector p(n);
      for (Index i = 0; i < n; ++i) p[i] = (mask >> i) & 1 ? 1.0 : 0.0;
      cube.push_back(p);
    }
    const double w = pyramidal_width_bruteforce(cube);
    const double expect = 1.0 / std::sqrt(static_cast<double>(n));
    v.require(std::abs(w - expect) <= 1e-9, "cube n=" + std::to_string(n) + " width " + fmt(w));
  }
  for (Index n = 2; n <= 7; ++n) {
    std::vector<Vector> simplex;
    for (Index i = 0; i < n; ++i) simplex.push_back(Vector::Unit(n, i));
    const double dn = static_cast<double>(n);
    const double expect = n % 2 == 0 ? 2.0 / std::sqrt(dn) : 2.0 / std::sqrt(dn - 1.0 / dn);
    const double w = pyramidal_width_bruteforce(simplex);
    v.require(std::abs(w - expect) <= 1e-9,
              "simplex n=" + std::to_string(n) + " width " + fmt(w) + " vs " + fmt(expect));
  }
  return v;
}

Verdict criterion9() {
  Verdict v;
  const ProblemInstance inst = build_face_quadratic(6, 3, 4.0, 31);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix p(6, 6);
  for (Index j = 0; j < 6; ++j) {
    for (Index i = 0; i < 6; ++i) p(i, j) = normal(rng);
  }
  p += 3.0 * Matrix::Identity(6, 6);
  for (Variant var : {Variant::FW, Variant::AFW, Variant::PFW, Variant::EFW}) {
    const CheckResult c = affine_invariance_check(
        inst, p, config(var, StepsizeRule::diminishing(), 200, 1e-30, 9), 200, 1e-9);
    v.require(c.pass, to_string(var) + " " + describe(c));
  }
  return v;
}

Verdict criterion10() {
  Verdict v;
  const ProblemInstance inst = build_simplex_distance(20);
  const InexactSchedule sched = InexactSchedule::decaying(1.0, inst.curvature_upper, 5);
  SolverConfig cfg = config(Variant::FW, StepsizeRule::diminishing(), 1000, 1e-30, 5);
  cfg.lmo = make_inexact_lmo(inst.region, exact_lmo(inst.region), sched);
  const SolveReport rep = solve(inst, cfg);
  const CheckResult c = inexact_rate_check(rep, sched, inst.f_star);
  v.require(c.pass, describe(c));
  v.require(rep.records.back().k >= 1000 || rep.termination == Termination::GapTol,
            "stopped early");
  // The oracle must actually be inexact at some step: compare with exact FW.
  const SolveReport exact = solve(inst, config(Variant::FW, StepsizeRule::diminishing(), 1000, 1e-30, 5));
  v.require(!rep.same_result(exact), "inexact run identical to the exact one");
  return v;
}

Verdict criterion11() {
  Verdict v;
  const ProblemInstance inst = build_product(3, 4);
  const auto* sep = inst.objective.get<BlockSeparable>();
  const auto* prod = inst.region.get<Product>();
  double curv = 0.0;
  for (std::size_t i = 0; i < prod->blocks.size(); ++i) {
    const double d = diameter(prod->blocks[i]);
    curv += lipschitz_upper(sep->blocks[i]) * d * d;
  }
  std::vector<SolveReport> reps;
  double h0 = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    reps.push_back(solve(inst, config(Variant::BCFW, StepsizeRule::diminishing(), 1000, 1e-30, seed)));
    h0 = std::max(h0, reps.back().records.front().f - *inst.f_star);
  }
  const CheckResult c = bcfw_mean_rate_check(reps, h0 + curv, 3, *inst.f_star);
  v.require(c.pass, describe(c));
  v.note("K=" + fmt(h0 + curv));
  return v;
}

Verdict criterion12() {
  Verdict v;
  const ProblemInstance inst = build_face_quadratic(8, 3, 4.0, 41);
  SolverConfig cfg = config(Variant::AFW, StepsizeRule::exact(), 5000, 1e-12, 2);
  cfg.record_supports = true;
  const SolveReport rep = solve(inst, cfg);
  const auto k = support_identification(rep, *inst.optimal_face);
  v.require(k.has_value(), "support never settles inside I(x*)");
  if (k) v.note("identified at k=" + std::to_string(*k) + " of " + std::to_string(rep.records.back().k));
  const CheckResult g = duality_gap_check(inst, 1e-8);
  v.require(g.pass, describe(g));
  // The identified face must be I(x*) read off the multipliers.
  const Vector lambda = simplex_multipliers(*inst.x_star, inst.objective.gradient(*inst.x_star));
  std::vector<Index> zero;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda[i]) <= 1e-8) zero.push_back(i);
  }
  v.require(zero == *inst.optimal_face, "multipliers disagree with the planted face");
  return v;
}

Verdict criterion13() {
  Verdict v;
  std::size_t checked = 0;
  for (const auto& run : kept) {
    const CheckResult d = descent_lemma_check(*run.inst, run.report, 1e-10);
    v.require(d.pass, run.label + " " + describe(d));
    if (run.inst->f_star) {
      const CheckResult h = full_step_halving_check(*run.inst, run.report, 1e-10);
      v.require(h.pass, run.label + " " + describe(h));
    }
    ++checked;
  }
  v.require(checked >= 8, "too few runs kept from criteria 1-5");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, criterion1},  {2, criterion2},   {3, criterion3},   {4, criterion4},   {5, criterion5},
      {6, criterion6},  {7, criterion7},   {8, criterion8},   {9, criterion9},   {10, criterion10},
      {11, criterion11}, {12, criterion12}, {13, criterion13}};
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d%s%s\n", v.pass ? "PASS" : "FAIL", id, v.detail.empty() ? "" : ": ",
                v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
