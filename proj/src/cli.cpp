#include "fwkit/cli.hpp"

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "fwkit/errors.hpp"
#include "fwkit/io.hpp"
#include "json.hpp"

namespace fwkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// JSON object reader that rejects unknown keys and names the offending path.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("config " + (path_.empty() ? std::string("<root>") : path_) + ": " + what);
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& at(const std::string& key) {
    if (!has(key)) fail("missing required key '" + key + "'");
    return j_.at(key);
  }

  Reader child(const std::string& key) { return Reader(at(key), sub(key)); }

  std::string str(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      fail("missing required key '" + key + "'");
    }
    const json& v = j_.at(key);
    if (!v.is_string()) fail("'" + key + "' must be a string");
    return v.get<std::string>();
  }

  double real(const std::string& key, std::optional<double> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      fail("missing required key '" + key + "'");
    }
    const json& v = j_.at(key);
    if (!v.is_number()) fail("'" + key + "' must be a number");
    return v.get<double>();
  }

  std::optional<double> maybe_real(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return real(key);
  }

  std::uint64_t natural(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0)) {
      fail("'" + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) fail("'" + key + "' must be true or false");
    return v.get<bool>();
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail("unknown key '" + it.key() + "'");
    }
  }

  std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path q(p);
  return q.is_absolute() ? q : base / q;
}

StepsizeRule parse_stepsize(Reader r, bool& l_from_instance) {
  const std::string rule = r.str("rule");
  StepsizeRule out;
  switch (parse_stepsize_kind(rule)) {
    case StepsizeRule::Kind::Diminishing:
      out = StepsizeRule::diminishing();
      break;
    case StepsizeRule::Kind::ExactLine:
      out = StepsizeRule::exact();
      break;
    case StepsizeRule::Kind::Armijo:
      out = StepsizeRule::armijo(r.real("delta", 0.5), r.real("gamma", 0.1));
      break;
    case StepsizeRule::Kind::Lipschitz:
      if (auto l = r.maybe_real("lipschitz")) {
        out = StepsizeRule::lipschitz_rule(*l);
      } else {
        out = StepsizeRule::lipschitz_rule(1.0);
        l_from_instance = true;
      }
      break;
    case StepsizeRule::Kind::BacktrackingL:
      out = StepsizeRule::backtracking(r.real("l0", 1.0), r.real("up", 2.0), r.real("down", 0.5));
      break;
  }
  r.finish();
  return out;
}

json check_json(const CheckResult& c) {
  json j;
  j["check"] = c.check;
  j["pass"] = c.pass;
  j["margin"] = std::isfinite(c.margin) ? json(c.margin) : json(nullptr);
  j["k_violation"] = c.k_violation ? json(*c.k_violation) : json(nullptr);
  return j;
}

json real_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json records_json(const SolveReport& rep) {
  json arr = json::array();
  for (const auto& r : rep.records) {
    json j;
    j["k"] = r.k;
    j["step_kind"] = std::string(to_string(r.kind));
    j["block"] = r.block;
    j["alpha"] = r.alpha;
    j["alpha_max"] = r.alpha_max;
    j["f"] = r.f;
    j["gap"] = real_json(r.gap);
    j["support_size"] = r.support_size;
    j["good_steps"] = r.good_steps;
    j["elapsed_ns"] = r.elapsed_ns;
    if (!r.support.empty()) j["support"] = r.support;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

std::string with_suffix(const fs::path& prefix, const std::string& suffix) {
  return prefix.string() + suffix;
}

double good_fraction(const SolveReport& rep) {
  return rep.steps ? static_cast<double>(rep.good_steps) / static_cast<double>(rep.steps) : 0.0;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  Reader root(doc, "");

  {
    Reader p = root.child("problem");
    cfg.problem.family = p.str("family");
    const auto& fams = known_families();
    if (std::find(fams.begin(), fams.end(), cfg.problem.family) == fams.end()) {
      p.fail("unknown family '" + cfg.problem.family + "'");
    }
    if (p.has("params")) {
      const json& params = p.at("params");
      if (!params.is_object()) p.fail("'params' must be an object");
      for (auto it = params.begin(); it != params.end(); ++it) {
        if (!it.value().is_number()) p.fail("params." + it.key() + " must be a number");
        cfg.problem.params[it.key()] = it.value().get<double>();
      }
    }
    if (p.has("files")) {
      const json& files = p.at("files");
      if (!files.is_object()) p.fail("'files' must be an object");
      for (auto it = files.begin(); it != files.end(); ++it) {
        if (!it.value().is_string()) p.fail("files." + it.key() + " must be a path string");
        const fs::path f = resolve(base_dir, it.value().get<std::string>());
        if (!fs::exists(f)) p.fail("files." + it.key() + ": '" + f.string() + "' does not exist");
        cfg.problem.files[it.key()] = f.string();
      }
    }
    cfg.problem_seed = p.natural("seed", 0);
    cfg.reference = p.boolean("reference", true);
    p.finish();
  }

  {
    Reader s = root.child("solver");
    try {
      cfg.solver.variant = parse_variant(s.str("variant"));
    } catch (const InputError& e) {
      s.fail(e.what());
    }
    if (s.has("stepsize")) {
      try {
        cfg.solver.stepsize = parse_stepsize(s.child("stepsize"), cfg.lipschitz_from_instance);
      } catch (const InputError& e) {
        const std::string what = e.what();
        if (what.rfind("config ", 0) == 0) throw;
        s.fail(std::string("stepsize: ") + what);
      }
    }
    cfg.solver.max_iter = s.natural("max_iter", cfg.solver.max_iter);
    cfg.solver.gap_tol = s.real("gap_tol", cfg.solver.gap_tol);
    cfg.solver.seed = s.natural("seed", 0);
    cfg.solver.efw_inner_tol = s.real("efw_inner_tol", cfg.solver.efw_inner_tol);
    cfg.solver.record_every = s.natural("record_every", 1);
    cfg.solver.record_supports = s.boolean("record_supports", false);
    if (s.has("inexact")) {
      Reader in = s.child("inexact");
      const std::string mode = in.str("mode", "decaying");
      const double delta = in.real("delta");
      const std::uint64_t seed = in.natural("seed", 0);
      if (!(delta >= 0.0)) in.fail("delta must be non-negative");
      if (mode == "decaying") {
        const auto kappa = in.maybe_real("kappa_upper");
        cfg.kappa_from_instance = !kappa;
        cfg.inexact = InexactSchedule::decaying(delta, kappa.value_or(1.0), seed);
      } else if (mode == "constant") {
        cfg.inexact = InexactSchedule::constant(delta, seed);
      } else {
        in.fail("mode must be 'decaying' or 'constant'");
      }
      in.finish();
      const Variant v = cfg.solver.variant;
      if (v != Variant::FW && v != Variant::AFW && v != Variant::PFW) {
        s.fail("an inexact oracle is supported for FW, AFW and PFW only");
      }
    }
    s.finish();
    if (!(cfg.solver.gap_tol > 0.0)) s.fail("gap_tol must be positive");
    if (cfg.solver.max_iter < 1) s.fail("max_iter must be at least 1");
    if (cfg.solver.record_every < 1) s.fail("record_every must be at least 1");
    if (!(cfg.solver.efw_inner_tol > 0.0)) s.fail("efw_inner_tol must be positive");
  }

  if (root.has("checks")) {
    const json& c = root.at("checks");
    if (!c.is_array()) root.fail("'checks' must be an array of names");
    const auto& names = known_checks();
    for (const auto& e : c) {
      if (!e.is_string()) root.fail("'checks' entries must be strings");
      const std::string n = e.get<std::string>();
      if (std::find(names.begin(), names.end(), n) == names.end()) {
        root.fail("unknown check '" + n + "'");
      }
      cfg.checks.push_back(n);
    }
  }

  {
    Reader o = root.child("output");
    cfg.prefix = resolve(base_dir, o.str("prefix"));
    cfg.format = o.str("format", "csv");
    if (cfg.format != "csv" && cfg.format != "json") o.fail("format must be 'csv' or 'json'");
    o.finish();
  }
  root.finish();
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  return parse_run_config(read_file(path), path.parent_path());
}

ProblemInstance prepare(RunConfig& config) {
  ProblemInstance inst = build_instance(config.problem, config.problem_seed);
  if (config.lipschitz_from_instance) {
    config.solver.stepsize = StepsizeRule::lipschitz_rule(inst.lipschitz);
  }
  check_compatibility(inst, config.solver);
  if (config.inexact) {
    if (config.kappa_from_instance) config.inexact->kappa_upper = inst.curvature_upper;
    config.solver.lmo = make_inexact_lmo(inst.region, exact_lmo(inst.region), *config.inexact);
  }
  // Reference optima only where they are cheap and meaningful.
  if (config.reference && !inst.f_star && inst.region.is_polytope() &&
      is_convex(inst.objective)) {
    ensure_f_star(inst);
  }
  return inst;
}

namespace {

struct Outcome {
  SolveReport report;
  std::vector<CheckResult> checks;
  int code = kExitOk;
};

Outcome execute(RunConfig& cfg, const ProblemInstance& inst) {
  Outcome out;
  out.report = solve(inst, cfg.solver);
  if (out.report.termination == Termination::NumericalError) {
    out.code = kExitSolver;
    return out;
  }
  for (const auto& name : cfg.checks) {
    CheckResult c;
    try {
      c = run_named_check(name, inst, out.report, cfg.inexact);
    } catch (const Error& e) {
      // A check that cannot be evaluated on this run counts as failed.
      c = {name, false, -std::numeric_limits<double>::infinity(), std::nullopt};
    }
    if (!c.pass) out.code = kExitSolver;
    out.checks.push_back(std::move(c));
  }
  return out;
}

json report_json(const RunConfig& cfg, const ProblemInstance& inst, const Outcome& o) {
  const SolveReport& rep = o.report;
  json j;
  j["family"] = inst.family;
  j["variant"] = to_string(rep.variant);
  j["stepsize"] = rep.rule.name();
  j["termination"] = to_string(rep.termination);
  j["message"] = rep.message;
  j["steps"] = rep.steps;
  j["good_steps"] = rep.good_steps;
  j["good_step_fraction"] = good_fraction(rep);
  j["lipschitz"] = real_json(inst.lipschitz);
  j["mu"] = real_json(inst.mu);
  j["diameter"] = real_json(inst.diameter);
  j["f_star"] = inst.f_star ? real_json(*inst.f_star) : json(nullptr);
  if (!rep.records.empty()) {
    const auto& last = rep.records.back();
    j["iterations"] = last.k;
    j["f_final"] = real_json(last.f);
    j["gap_final"] = real_json(last.gap);
    j["h_final"] = inst.f_star ? real_json(last.f - *inst.f_star) : json(nullptr);
  }
  j["final_point"] = std::vector<double>(rep.final_point.data(),
                                         rep.final_point.data() + rep.final_point.size());
  json checks = json::array();
  for (const auto& c : o.checks) checks.push_back(check_json(c));
  j["checks"] = std::move(checks);
  if (cfg.format == "json") j["records"] = records_json(rep);
  return j;
}

}  // namespace

int run(const fs::path& config_path, std::ostream& log) {
  RunConfig cfg;
  ProblemInstance* inst_ptr = nullptr;
  std::optional<ProblemInstance> inst;
  try {
    cfg = load_run_config(config_path);
    inst = prepare(cfg);
    inst_ptr = &*inst;
  } catch (const NumericalError& e) {
    log << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    Outcome o = execute(cfg, *inst_ptr);
    write_trace_csv(with_suffix(cfg.prefix, ".trace.csv"), o.report, inst_ptr->f_star);
    write_text(with_suffix(cfg.prefix, ".report.json"), report_json(cfg, *inst_ptr, o).dump(2) + "\n");
    log << to_string(o.report.variant) << ' ' << to_string(o.report.termination) << " after "
        << o.report.steps << " steps";
    if (!o.report.message.empty()) log << " (" << o.report.message << ")";
    log << '\n';
    for (const auto& c : o.checks) {
      log << (c.pass ? "PASS " : "FAIL ") << c.check << " margin=" << format_real(c.margin) << '\n';
    }
    return o.code;
  } catch (const InputError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

int compare(const std::vector<fs::path>& config_paths, const fs::path& out_path,
            std::ostream& log) {
  if (config_paths.empty()) {
    log << "error: compare needs at least one config\n";
    return kExitConfig;
  }
  std::vector<RunConfig> cfgs;
  json problem;
  try {
    for (std::size_t i = 0; i < config_paths.size(); ++i) {
      const std::string text = read_file(config_paths[i]);
      const json doc = json::parse(text, nullptr, false);
      if (doc.is_discarded() || !doc.contains("problem")) {
        throw InputError("'" + config_paths[i].string() + "' has no problem block");
      }
      cfgs.push_back(parse_run_config(text, config_paths[i].parent_path()));
      // Compare resolved problem specs so relative paths in different directories agree.
      json p = {{"family", cfgs.back().problem.family},
                {"params", cfgs.back().problem.params},
                {"files", cfgs.back().problem.files},
                {"seed", cfgs.back().problem_seed}};
      if (i == 0) {
        problem = p;
      } else if (p != problem) {
        throw InputError("'" + config_paths[i].string() + "' describes a different problem");
      }
    }
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  // One instance with f* for all rows; solvers only read it.
  std::optional<ProblemInstance> base;
  try {
    RunConfig probe = cfgs.front();
    base = prepare(probe);
    for (auto& c : cfgs) {
      if (c.lipschitz_from_instance) c.solver.stepsize = StepsizeRule::lipschitz_rule(base->lipschitz);
    }
  } catch (const NumericalError& e) {
    log << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  const ProblemInstance& inst = *base;

  int threads = 1;
  if (const char* env = std::getenv("FWKIT_THREADS")) {
    threads = std::max(1, std::atoi(env));
  }
  const auto n = static_cast<std::ptrdiff_t>(cfgs.size());
  std::vector<std::string> rows(cfgs.size());
  std::vector<int> codes(cfgs.size(), kExitOk);

#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    RunConfig& c = cfgs[static_cast<std::size_t>(i)];
    std::string label = to_string(c.solver.variant) + "/" + c.solver.stepsize.name();
    std::ostringstream row;
    try {
      if (c.inexact) {
        if (c.kappa_from_instance) c.inexact->kappa_upper = inst.curvature_upper;
        c.solver.lmo = make_inexact_lmo(inst.region, exact_lmo(inst.region), *c.inexact);
      }
      // an incompatible variant fails its own row only
      const SolveReport rep = solve(inst, c.solver);
      if (rep.termination == Termination::NumericalError) throw NumericalError(rep.message, 0.0);
      const auto& last = rep.records.back();
      row << label << ',';
      if (rep.termination == Termination::GapTol) row << last.k;
      row << ',';
      if (inst.f_star) row << format_real(last.f - *inst.f_star);
      row << ',';
      try {
        row << format_real(fit_geometric_rate(rep, inst.f_star, true).q);
      } catch (const InputError&) {
      }
      row << ',' << format_real(good_fraction(rep)) << ",ok";
    } catch (const std::exception& e) {
      row.str("");
      row << label << ",,,,,failed";
      codes[static_cast<std::size_t>(i)] = kExitSolver;
    }
    rows[static_cast<std::size_t>(i)] = row.str();
  }

  std::string table = "solver,iterations_to_gap_tol,final_h,fitted_q,good_step_fraction,status\n";
  for (const auto& r : rows) table += r + "\n";
  try {
    write_text(out_path, table);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  log << table;
  return *std::max_element(codes.begin(), codes.end());
}

namespace {

FamilySpec parse_params(const std::string& family, const std::vector<std::string>& params) {
  FamilySpec spec;
  spec.family = family;
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("parameter '" + kv + "' is not key=value");
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == value.size() && !value.empty()) {
      spec.params[key] = v;
    } else {
      if (!fs::exists(value)) throw InputError("parameter " + key + ": file '" + value + "' not found");
      spec.files[key] = value;
    }
  }
  return spec;
}

// Names of data files written next to the config, relative to its directory.
json write_instance_data(const ProblemInstance& inst, const fs::path& prefix, FamilySpec& spec) {
  const std::string base = prefix.filename().string();
  json written = json::array();
  auto out = [&](const std::string& suffix) {
    written.push_back(base + suffix);
    return with_suffix(prefix, suffix);
  };
  const Objective& o = inst.objective;
  if (const auto* fq = o.get<FactoredQuadratic>()) {
    write_matrix(out(".A.txt"), fq->a);
    write_matrix(out(".b.txt"), fq->b);
  } else if (const auto* ls = o.get<LeastSquares>()) {
    write_matrix(out(".A.txt"), ls->a);
    write_matrix(out(".b.txt"), ls->b);
  } else if (const auto* dq = o.get<DenseQuadratic>()) {
    write_matrix(out(".Q.txt"), dq->q);
    write_matrix(out(".b.txt"), dq->b);
  } else if (const auto* sn = o.get<ShiftedNormSquare>()) {
    write_matrix(out(".center.txt"), sn->center);
  } else if (const auto* mc = o.get<MatrixCompletionLoss>()) {
    const std::string path = out(".observations.txt");
    write_observations(path, mc->observed);
    spec.files["observations"] = base + ".observations.txt";
  }
  if (spec.family == "max_clique") {
    // Recover the graph from the quadratic so the config points at an edge list.
    const auto* dq = o.get<DenseQuadratic>();
    std::vector<std::pair<Index, Index>> edges;
    for (Index j = 0; j < dq->q.cols(); ++j) {
      for (Index i = 0; i < j; ++i) {
        if (dq->q(i, j) != 0.0) edges.emplace_back(i, j);
      }
    }
    write_edge_list(out(".graph.txt"), edges);
    spec.files["graph"] = base + ".graph.txt";
    spec.params["n"] = static_cast<double>(dq->q.rows());
  }
  if (const auto* h = inst.region.get<VertexHull>()) {
    write_points(out(".points.txt"), h->vertices);
    if (spec.family == "hull_min_norm") spec.files["points"] = base + ".points.txt";
  }
  if (inst.x_star) write_matrix(out(".xstar.txt"), *inst.x_star);
  return written;
}

}  // namespace

int gen(const std::string& family, const std::vector<std::string>& params, std::uint64_t seed,
        const fs::path& prefix, std::ostream& log) {
  try {
    FamilySpec spec = parse_params(family, params);
    const ProblemInstance inst = build_instance(spec, seed);
    if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
    // Data files given on the command line are referenced by absolute path.
    for (auto& [k, v] : spec.files) v = fs::absolute(v).string();
    const bool was_random_matcomp = family == "matcomp" && !spec.files.count("observations");
    const json data = write_instance_data(inst, prefix, spec);
    if (was_random_matcomp) {
      // Observations on disk replace the generator parameters.
      spec.params.erase("rank");
      spec.params.erase("density");
    }

    json solver;
    const Region& r = inst.region;
    if (r.get<Product>()) {
      solver["variant"] = "BCFW";
      solver["stepsize"] = {{"rule", "diminishing"}};
    } else if (r.is_polytope()) {
      solver["variant"] = "AFW";
      solver["stepsize"] = {{"rule", "exact"}};
    } else {
      solver["variant"] = "FW";
      solver["stepsize"] = {{"rule", "exact"}};
    }
    solver["max_iter"] = 1000;
    solver["gap_tol"] = 1e-8;
    solver["seed"] = seed;
    json cfg;
    cfg["problem"] = {{"family", family}, {"params", spec.params}, {"seed", seed}};
    if (!spec.files.empty()) cfg["problem"]["files"] = spec.files;
    cfg["solver"] = solver;
    cfg["checks"] = json::array();
    cfg["output"] = {{"prefix", prefix.filename().string() + ".run"}, {"format", "csv"}};
    write_text(with_suffix(prefix, ".config.json"), cfg.dump(2) + "\n");
    log << "wrote " << with_suffix(prefix, ".config.json");
    for (const auto& d : data) log << ' ' << d.get<std::string>();
    log << '\n';
    return kExitOk;
  } catch (const NumericalError& e) {
    log << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"fwkit: Frank-Wolfe solvers, traces and checks"};
  app.require_subcommand(1);

  std::string config;
  auto* run_cmd = app.add_subcommand("run", "Solve the problem described by a config");
  run_cmd->add_option("--config", config, "Run config (JSON)")->required();

  std::vector<std::string> configs;
  std::string out;
  auto* cmp_cmd = app.add_subcommand("compare", "Run several configs on one problem");
  cmp_cmd->add_option("--configs", configs, "Run configs sharing a problem block")->required();
  cmp_cmd->add_option("--out", out, "CSV table path")->required();

  std::string family, prefix;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instance data and a runnable config");
  gen_cmd->add_option("--family", family, "Problem family")->required();
  gen_cmd->add_option("--param", params, "key=value (file paths allowed)");
  gen_cmd->add_option("--seed", seed, "Generator seed")->required();
  gen_cmd->add_option("--out", prefix, "Output path prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (run_cmd->parsed()) return run(config, std::cerr);
  if (cmp_cmd->parsed()) {
    std::vector<fs::path> paths(configs.begin(), configs.end());
    return compare(paths, out, std::cerr);
  }
  return gen(family, params, seed, prefix, std::cerr);
}

}  // namespace fwkit::cli
