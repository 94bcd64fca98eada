#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fwkit/cli.hpp"
#include "fwkit/errors.hpp"
#include "fwkit/instance.hpp"
#include "fwkit/io.hpp"
#include "fwkit/stepsize.hpp"

using namespace fwkit;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("fwkit_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }
  fs::path write_json(const std::string& name, const json& j) { return write(name, j.dump(2)); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream log_;
};

json lasso_fw(const std::string& prefix) {
  return {{"problem", {{"family", "lasso"}, {"params", {{"m", 10}, {"n", 20}}}, {"seed", 3}}},
          {"solver",
           {{"variant", "FW"}, {"stepsize", {{"rule", "lipschitz"}}}, {"max_iter", 300},
            {"gap_tol", 1e-8}}},
          {"checks", {"sublinear_bound"}},
          {"output", {{"prefix", prefix}}}};
}

}  // namespace

TEST_F(CliTest, RunWritesTraceAndReport) {
  fs::path cfg = write_json("run.json", lasso_fw("out/lasso"));
  fs::create_directories(dir_ / "out");
  ASSERT_EQ(cli::run(cfg, log_), cli::kExitOk) << log_.str();
  std::vector<TraceRow> rows = read_trace_csv(dir_ / "out/lasso.trace.csv");
  json report = json::parse(slurp(dir_ / "out/lasso.report.json"));
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.size(), report["steps"].get<std::size_t>() + 1);
  EXPECT_TRUE(report["checks"][0]["pass"].get<bool>());
  EXPECT_EQ(report["checks"][0]["check"], "sublinear_bound");
  EXPECT_EQ(slurp(dir_ / "out/lasso.trace.csv").substr(0, std::string(kTraceHeader).size()),
            std::string(kTraceHeader));
}

TEST_F(CliTest, IncompatibleSolverExitsWithConfigError) {
  json j = {{"problem", {{"family", "matcomp"}, {"params", {{"m", 4}, {"n", 3}, {"delta", 2}}}}},
            {"solver", {{"variant", "FDFW"}}},
            {"output", {{"prefix", "nuc"}}}};
  EXPECT_EQ(cli::run(write_json("nuc.json", j), log_), cli::kExitConfig);
  EXPECT_NE(log_.str().find("FDFW"), std::string::npos);
}

TEST_F(CliTest, SingleIterationBudget) {
  json j = lasso_fw("one");
  j["solver"]["max_iter"] = 1;
  j.erase("checks");
  ASSERT_EQ(cli::run(write_json("one.json", j), log_), cli::kExitOk);
  EXPECT_GE(read_trace_csv(dir_ / "one.trace.csv").size(), 1u);
  EXPECT_EQ(json::parse(slurp(dir_ / "one.report.json"))["termination"], "MaxIter");
}

TEST_F(CliTest, TraceFollowsRecordGrid) {
  json j = lasso_fw("grid");
  j["solver"]["record_every"] = 7;
  j["solver"]["max_iter"] = 50;
  j["solver"]["gap_tol"] = 1e-30;
  j.erase("checks");
  ASSERT_EQ(cli::run(write_json("grid.json", j), log_), cli::kExitOk);
  std::vector<TraceRow> rows = read_trace_csv(dir_ / "grid.trace.csv");
  ASSERT_EQ(rows.size(), 9u);  // 0, 7, ..., 49 and the final 50
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) EXPECT_EQ(rows[i].k, 7 * i);
  EXPECT_EQ(rows.back().k, 50u);
}

TEST_F(CliTest, JsonFormatEmbedsRecords) {
  json j = lasso_fw("js");
  j["output"]["format"] = "json";
  ASSERT_EQ(cli::run(write_json("js.json", j), log_), cli::kExitOk);
  json report = json::parse(slurp(dir_ / "js.report.json"));
  ASSERT_TRUE(report.contains("records"));
  EXPECT_EQ(report["records"].size(), report["steps"].get<std::size_t>() + 1);
}

TEST_F(CliTest, SchemaViolations) {
  json unknown = lasso_fw("x");
  unknown["solver"]["colour"] = "red";
  EXPECT_EQ(cli::run(write_json("a.json", unknown), log_), cli::kExitConfig);
  EXPECT_NE(log_.str().find("colour"), std::string::npos);

  json bad_rule = lasso_fw("x");
  bad_rule["solver"]["stepsize"]["rule"] = "bogus";
  EXPECT_EQ(cli::run(write_json("b.json", bad_rule), log_), cli::kExitConfig);

  json missing_file = lasso_fw("x");
  missing_file["problem"] = {{"family", "max_clique"}, {"files", {{"graph", "nope.txt"}}}};
  EXPECT_EQ(cli::run(write_json("c.json", missing_file), log_), cli::kExitConfig);

  EXPECT_EQ(cli::run(write("d.json", "{ not json"), log_), cli::kExitConfig);
  EXPECT_EQ(cli::run(dir_ / "absent.json", log_), cli::kExitConfig);
  EXPECT_THROW(cli::parse_run_config(R"({"problem": {"family": "lasso"}, "extra": 1})", dir_),
               InputError);
}

TEST_F(CliTest, FailingCheckExitsWithSolverError) {
  // FW with exact steps never drops the start vertex, so the face is not identified.
  json j = lasso_fw("fail");
  j["problem"] = {{"family", "face_quadratic"}, {"params", {{"n", 8}, {"face", 3}}}, {"seed", 41}};
  j["solver"] = {{"variant", "FW"},
                 {"stepsize", {{"rule", "exact"}}},
                 {"max_iter", 100},
                 {"seed", 2},
                 {"record_supports", true}};
  j["checks"] = {"support_identification"};
  EXPECT_EQ(cli::run(write_json("fail.json", j), log_), cli::kExitSolver);
  EXPECT_TRUE(fs::exists(dir_ / "fail.trace.csv"));
}

TEST_F(CliTest, CompareIdenticalConfigs) {
  fs::path a = write_json("a.json", lasso_fw("a"));
  fs::path b = write_json("b.json", lasso_fw("b"));
  ASSERT_EQ(cli::compare({a, b}, dir_ / "table.csv", log_), cli::kExitOk) << log_.str();
  std::istringstream table(slurp(dir_ / "table.csv"));
  std::string header, r1, r2;
  std::getline(table, header);
  std::getline(table, r1);
  std::getline(table, r2);
  EXPECT_EQ(header, "solver,iterations_to_gap_tol,final_h,fitted_q,good_step_fraction,status");
  EXPECT_EQ(r1.substr(r1.find(',')), r2.substr(r2.find(',')));
}

TEST_F(CliTest, CompareRejectsMismatchedProblems) {
  json other = lasso_fw("b");
  other["problem"]["seed"] = 4;
  fs::path a = write_json("a.json", lasso_fw("a"));
  fs::path b = write_json("b.json", other);
  EXPECT_EQ(cli::compare({a, b}, dir_ / "table.csv", log_), cli::kExitConfig);
}

TEST_F(CliTest, CompareMarksFailedRows) {
  json bad = lasso_fw("b");
  bad["solver"]["variant"] = "BCFW";
  fs::path a = write_json("a.json", lasso_fw("a"));
  fs::path b = write_json("b.json", bad);
  EXPECT_EQ(cli::compare({a, b}, dir_ / "table.csv", log_), cli::kExitSolver);
  EXPECT_NE(slurp(dir_ / "table.csv").find(",,,,,failed"), std::string::npos);
}

TEST_F(CliTest, GenIsDeterministic) {
  ASSERT_EQ(cli::gen("lasso", {"m=8", "n=12"}, 5, dir_ / "g1", log_), cli::kExitOk);
  ASSERT_EQ(cli::gen("lasso", {"m=8", "n=12"}, 5, dir_ / "g2", log_), cli::kExitOk);
  for (const std::string suffix : {".A.txt", ".b.txt"}) {
    EXPECT_EQ(slurp(dir_ / ("g1" + suffix)), slurp(dir_ / ("g2" + suffix)));
    EXPECT_FALSE(slurp(dir_ / ("g1" + suffix)).empty());
  }
  json c1 = json::parse(slurp(dir_ / "g1.config.json"));
  json c2 = json::parse(slurp(dir_ / "g2.config.json"));
  c1["output"].erase("prefix");
  c2["output"].erase("prefix");
  EXPECT_EQ(c1, c2);
  EXPECT_EQ(cli::run(dir_ / "g1.config.json", log_), cli::kExitOk) << log_.str();
}

TEST_F(CliTest, GenMaxCliqueFromEdgeList) {
  fs::path edges = write("tri.txt", "# triangle plus a pendant\n1 2\n2 3\n1 3\n3 4\n");
  ASSERT_EQ(cli::gen("max_clique", {"graph=" + edges.string()}, 1, dir_ / "mc", log_),
            cli::kExitOk)
      << log_.str();
  ASSERT_EQ(cli::run(dir_ / "mc.config.json", log_), cli::kExitOk) << log_.str();
  json report = json::parse(slurp(dir_ / "mc.run.report.json"));
  EXPECT_EQ(report["family"], "max_clique");
  EXPECT_EQ(report["final_point"].size(), 4u);
}

TEST_F(CliTest, GenProductUsesBlockSolver) {
  ASSERT_EQ(cli::gen("product", {"b=3", "n=4"}, 2, dir_ / "prod", log_), cli::kExitOk);
  json cfg = json::parse(slurp(dir_ / "prod.config.json"));
  EXPECT_EQ(cfg["solver"]["variant"], "BCFW");
  ASSERT_EQ(cli::run(dir_ / "prod.config.json", log_), cli::kExitOk) << log_.str();
  EXPECT_TRUE(fs::exists(dir_ / "prod.run.trace.csv"));
}

TEST_F(CliTest, ExecutableExitCodes) {
  fs::path cfg = write_json("run.json", lasso_fw("bin"));
  const std::string bin = FWKIT_BIN;
  EXPECT_EQ(std::system((bin + " run --config " + cfg.string() + " > /dev/null 2>&1").c_str()), 0);
  json unknown = lasso_fw("bin");
  unknown["bogus"] = true;
  fs::path bad = write_json("bad.json", unknown);
  int status = std::system((bin + " run --config " + bad.string() + " > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(status), cli::kExitConfig);
  status = std::system((bin + " frobnicate > /dev/null 2>&1").c_str());
  EXPECT_NE(WEXITSTATUS(status), 0);
}

TEST_F(CliTest, GenRejectsBadParameters) {
  EXPECT_EQ(cli::gen("lasso", {"m=-3", "n=5"}, 1, dir_ / "bad", log_), cli::kExitConfig);
  EXPECT_EQ(cli::gen("lasso", {"m"}, 1, dir_ / "bad", log_), cli::kExitConfig);
  EXPECT_EQ(cli::gen("no_such_family", {}, 1, dir_ / "bad", log_), cli::kExitConfig);
}

TEST_F(CliTest, GenRunRoundTrip) {
  ASSERT_EQ(cli::gen("face_quadratic", {"n=8", "face=3"}, 4, dir_ / "rt", log_), cli::kExitOk);
  json cfg = json::parse(slurp(dir_ / "rt.config.json"));
  cfg["solver"]["record_every"] = 3;
  cfg["solver"]["gap_tol"] = 1e-30;
  cfg["solver"]["max_iter"] = 40;
  fs::path path = write_json("rt.config.json", cfg);
  ASSERT_EQ(cli::run(path, log_), cli::kExitOk) << log_.str();
  std::vector<TraceRow> rows = read_trace_csv(dir_ / "rt.run.trace.csv");
  ASSERT_GE(rows.size(), 2u);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) EXPECT_EQ(rows[i].k, 3 * i);
  EXPECT_GT(rows.back().k, rows[rows.size() - 2].k);
  for (const auto& r : rows) EXPECT_TRUE(r.h.has_value());
}

TEST_F(CliTest, PublishedSchemaMatchesParser) {
  json schema = json::parse(slurp(FWKIT_SCHEMA));
  const json& props = schema["properties"];
  EXPECT_EQ(props["problem"]["properties"]["family"]["enum"].get<std::vector<std::string>>(),
            known_families());
  EXPECT_EQ(props["checks"]["items"]["enum"].get<std::vector<std::string>>(), known_checks());
  for (const auto& v : props["solver"]["properties"]["variant"]["enum"]) {
    EXPECT_NO_THROW(parse_variant(v.get<std::string>()));
  }
  for (const auto& r : props["solver"]["properties"]["stepsize"]["properties"]["rule"]["enum"]) {
    EXPECT_NO_THROW(parse_stepsize_kind(r.get<std::string>()));
  }
  // every documented key is accepted by the parser
  json full = {{"problem", {{"family", "simplex_distance"}, {"params", {{"n", 4}}}, {"files", json::object()},
                            {"seed", 1}, {"reference", false}}},
               {"solver", {{"variant", "FW"},
                           {"stepsize", {{"rule", "armijo"}, {"delta", 0.5}, {"gamma", 0.1}}},
                           {"max_iter", 10}, {"gap_tol", 1e-6}, {"seed", 2}, {"efw_inner_tol", 1e-9},
                           {"record_every", 2}, {"record_supports", true},
                           {"inexact", {{"mode", "decaying"}, {"delta", 0.5}, {"kappa_upper", 2.0}, {"seed", 3}}}}},
               {"checks", {"sparsity"}},
               {"output", {{"prefix", "p"}, {"format", "json"}}}};
  for (const auto& [key, value] : props.items()) EXPECT_TRUE(full.contains(key)) << key;
  for (const auto& [key, value] : props["solver"]["properties"].items())
    EXPECT_TRUE(full["solver"].contains(key)) << key;
  for (const auto& [key, value] : props["problem"]["properties"].items())
    EXPECT_TRUE(full["problem"].contains(key)) << key;
  EXPECT_NO_THROW(cli::parse_run_config(full.dump(), dir_));
}
