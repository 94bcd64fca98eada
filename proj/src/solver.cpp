#include "fwkit/solver.hpp"

#include <cmath>

#include "solver_internal.hpp"

namespace fwkit {

namespace detail {

Vector start_direction(const ProblemInstance& inst, const SolverConfig& config, Rng& rng) {
  const Index n = inst.region.dimension();
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector dir(n);
  for (Index i = 0; i < n; ++i) dir[i] = normal(rng);
  if (config.start_direction) {
    if (config.start_direction->size() != n) throw InputError("start direction dimension mismatch");
    return *config.start_direction;
  }
  return dir;
}

std::vector<Index> coordinate_support(const Vector& x) {
  std::vector<Index> out;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > kWeightDropTol) out.push_back(i);
  }
  return out;
}

IterationRecord Recorder::begin(std::size_t k, double f, double gap, std::size_t support,
                                const Vector& x) const {
  IterationRecord r;
  r.k = k;
  r.f = f;
  r.gap = gap;
  r.support_size = support;
  r.good_steps = report_.good_steps;
  if (config_.record_supports) r.support = coordinate_support(x);
  return r;
}

void Recorder::step(IterationRecord r) {
  if (!due(r.k)) return;
  r.elapsed_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start_).count();
  report_.records.push_back(std::move(r));
}

void Recorder::finish(IterationRecord r, Termination why) {
  r.kind = StepKind::None;
  r.alpha = 0.0;
  r.alpha_max = 0.0;
  r.dir_deriv = 0.0;
  r.dir_norm = 0.0;
  r.elapsed_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start_).count();
  if (!report_.records.empty() && report_.records.back().k == r.k) report_.records.pop_back();
  report_.records.push_back(std::move(r));
  report_.termination = why;
}

void check_config(const SolverConfig& config) {
  if (!(config.gap_tol > 0.0)) throw InputError("gap_tol must be positive");
  if (config.max_iter < 1) throw InputError("max_iter must be at least 1");
  if (config.record_every < 1) throw InputError("record_every must be at least 1");
  if (!(config.efw_inner_tol > 0.0)) throw InputError("efw_inner_tol must be positive");
}

}  // namespace detail

std::string to_string(Variant v) {
  switch (v) {
    case Variant::FW: return "FW";
    case Variant::AFW: return "AFW";
    case Variant::PFW: return "PFW";
    case Variant::FDFW: return "FDFW";
    case Variant::EFW: return "EFW";
    case Variant::BCFW: return "BCFW";
    case Variant::WolfeMNP: return "WolfeMNP";
  }
  return "FW";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::GapTol: return "GapTol";
    case Termination::MaxIter: return "MaxIter";
    case Termination::NumericalError: return "NumericalError";
  }
  return "MaxIter";
}

Variant parse_variant(const std::string& name) {
  for (Variant v : {Variant::FW, Variant::AFW, Variant::PFW, Variant::FDFW, Variant::EFW,
                    Variant::BCFW, Variant::WolfeMNP}) {
    if (to_string(v) == name) return v;
  }
  throw InputError("unknown solver variant '" + name + "'");
}

namespace {

bool same_number(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

bool same_record(const IterationRecord& a, const IterationRecord& b) {
  return a.k == b.k && a.kind == b.kind && a.block == b.block && same_number(a.alpha, b.alpha) &&
         same_number(a.alpha_max, b.alpha_max) && same_number(a.f, b.f) &&
         same_number(a.gap, b.gap) && a.support_size == b.support_size &&
         a.good_steps == b.good_steps &&
         same_number(a.dir_deriv, b.dir_deriv) && same_number(a.dir_norm, b.dir_norm) &&
         a.support == b.support;
}

}  // namespace

bool SolveReport::same_result(const SolveReport& other) const {
  if (variant != other.variant || termination != other.termination || steps != other.steps ||
      good_steps != other.good_steps || records.size() != other.records.size() ||
      final_point.size() != other.final_point.size() || final_point != other.final_point) {
    return false;
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!same_record(records[i], other.records[i])) return false;
  }
  return true;
}

bool is_good_step(StepKind kind, double alpha, double alpha_max) {
  if (!(alpha > 0.0)) return false;
  switch (kind) {
    case StepKind::FW:
    case StepKind::Block:
      return alpha < alpha_max || alpha == 1.0;
    case StepKind::FullCorrective:
      return true;
    case StepKind::Drop:
    case StepKind::None:
      return false;
    default:
      return alpha < alpha_max;
  }
}

void check_compatibility(const ProblemInstance& inst, const SolverConfig& config) {
  detail::check_config(config);
  const Region& r = inst.region;
  switch (config.variant) {
    case Variant::FW:
      break;
    case Variant::AFW:
    case Variant::PFW:
    case Variant::EFW:
      if (!r.is_polytope()) {
        throw CapabilityError(to_string(config.variant) + " needs a polytope region, got " +
                              r.name());
      }
      break;
    case Variant::FDFW:
      if (!r.get<Simplex>() && !r.get<Box>()) {
        throw CapabilityError("FDFW is available on simplex and box regions only, got " + r.name());
      }
      break;
    case Variant::BCFW:
      if (!r.get<Product>()) throw CapabilityError("BCFW needs a product region, got " + r.name());
      break;
    case Variant::WolfeMNP: {
      if (!r.is_polytope()) throw CapabilityError("WolfeMNP needs a polytope region");
      const auto* o = inst.objective.get<ShiftedNormSquare>();
      if (!o || o->center.lpNorm<Eigen::Infinity>() != 0.0) {
        throw CapabilityError("WolfeMNP minimizes ||x||^2; the objective must be a zero-centered "
                              "shifted_norm_square");
      }
      break;
    }
  }
  if (config.variant == Variant::EFW && !inst.objective.is_quadratic()) {
    throw CapabilityError("EFW corrections need a quadratic objective");
  }
}

SolveReport solve(const ProblemInstance& inst, const SolverConfig& config) {
  switch (config.variant) {
    case Variant::FW: return solve_fw(inst, config);
    case Variant::AFW: return solve_afw(inst, config);
    case Variant::PFW: return solve_pfw(inst, config);
    case Variant::FDFW: return solve_fdfw(inst, config);
    case Variant::EFW: return solve_efw(inst, config);
    case Variant::BCFW: return solve_bcfw(inst, config);
    case Variant::WolfeMNP: return solve_wolfe_mnp(inst, config);
  }
  throw InputError("unknown variant");
}

std::pair<double, Vector> reference_optimum(const ProblemInstance& inst, double gap_tol,
                                            std::size_t max_iter) {
  SolverConfig cfg;
  cfg.variant = inst.region.is_polytope() ? Variant::AFW : Variant::FW;
  cfg.stepsize = inst.objective.is_quadratic() ? StepsizeRule::exact() : StepsizeRule::armijo();
  cfg.gap_tol = gap_tol;
  cfg.max_iter = max_iter;
  cfg.record_every = max_iter;
  const SolveReport rep = solve(inst, cfg);
  if (rep.termination == Termination::NumericalError) {
    throw NumericalError("reference solve failed: " + rep.message, rep.records.back().gap);
  }
  return {rep.records.back().f, rep.final_point};
}

void ensure_f_star(ProblemInstance& inst, double gap_tol) {
  if (inst.f_star) return;
  auto [f, x] = reference_optimum(inst, gap_tol);
  inst.f_star = f;
  inst.x_star = std::move(x);
}

}  // namespace fwkit
