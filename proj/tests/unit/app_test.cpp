#include "tracegen/app/run.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace tracegen;

namespace {

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

class AppTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tracegen_app_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  app::RunConfig Trivial(std::uint64_t seed = 1) const {
    app::RunConfig c;
    c.module = "trivial";
    c.project_root = TRACEGEN_CORPUS_DIR;
    c.seed = seed;
    c.budget_seconds = 3;
    c.output_dir = dir_ / "out";
    return c;
  }

  fs::path dir_;
  std::ostringstream log_;
};

TEST(Types, JsonRoundTrip) {
  std::vector<app::TypeRecord> records{
      {"/x/orders.py", 12, "orders.Order.total", std::string("discount"), {"float", "none"}},
      {"/x/orders.py", 12, "orders.Order.total", std::nullopt, {"float"}},
      {"/x/orders.py", 30, "orders.zone", std::string("a"), {}},
  };
  std::string json = app::TypesToJson(records);
  EXPECT_EQ(app::TypesFromJson(json), records);
  EXPECT_EQ(json.find("\"parameter\": null"), std::string::npos);
  EXPECT_LT(json.find("\"file\""), json.find("\"line_number\""));
  EXPECT_LT(json.find("\"line_number\""), json.find("\"function\""));
}

TEST(Timeline, CarriesCoverageForward) {
  std::vector<search::TimelinePoint> t{{0.2, 0.3, 0}, {0.9, 0.4, 1}, {2.5, 0.6, 2}};
  std::string csv = app::TimelineCsv(t, 0.7, 5, {"NoTypeHints", "demo", "demo.mod", 4});
  auto lines = Lines(csv);
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "elapsed_second,branch_coverage,configuration,project,module,seed");
  EXPECT_EQ(lines[1], "0,0.400000,NoTypeHints,demo,demo.mod,4");
  EXPECT_EQ(lines[2], "1,0.400000,NoTypeHints,demo,demo.mod,4");
  EXPECT_EQ(lines[3], "2,0.600000,NoTypeHints,demo,demo.mod,4");
  EXPECT_EQ(lines[4], "3,0.600000,NoTypeHints,demo,demo.mod,4");
  EXPECT_EQ(lines[5], "4,0.700000,NoTypeHints,demo,demo.mod,4");
  EXPECT_EQ(Lines(app::TimelineCsv(t, 0.7, 2.5, {})).size(), 4u);
}

TEST(Config, NamesAndValidation) {
  app::RunConfig c;
  c.module = "m";
  c.use_annotations = false;
  EXPECT_EQ(app::ConfigurationName(c), "NoTypeHints-TypeTracing");
  c.proxy_probability = 0;
  EXPECT_EQ(app::ConfigurationName(c), "NoTypeHints");
  c.use_annotations = true;
  EXPECT_EQ(app::ConfigurationName(c), "TypeHints");
  c.proxy_probability = 1.5;
  EXPECT_THROW(app::Validate(c), std::invalid_argument);
  c.proxy_probability = 0.5;
  c.budget_seconds = 0;
  EXPECT_THROW(app::Validate(c), std::invalid_argument);
  c.budget_seconds = 1;
  c.weights.none = -1;
  EXPECT_THROW(app::Validate(c), std::invalid_argument);
}

TEST(Config, ModuleResolution) {
  app::RunConfig c;
  c.module = "/some/dir/pkg_mod.py";
  auto r = app::ResolveModule(c);
  EXPECT_EQ(r.name, "pkg_mod");
  EXPECT_EQ(r.search_path, fs::path("/some/dir"));
  c.module = "orders";
  c.project_root = "/root/x";
  r = app::ResolveModule(c);
  EXPECT_EQ(r.name, "orders");
  EXPECT_EQ(r.search_path, fs::path("/root/x"));
}

TEST_F(AppTest, RunWritesAllArtifacts) {
  auto report = app::Run(Trivial(), log_);
  ASSERT_TRUE(report.ok) << report.error;
  EXPECT_DOUBLE_EQ(report.final_coverage, 1.0);
  EXPECT_TRUE(report.suite_reproduces);
  EXPECT_TRUE(fs::exists(report.suite_path));
  EXPECT_EQ(report.suite_path.filename(), "test_trivial.py");
  auto csv = Lines(Slurp(report.csv_path));
  EXPECT_EQ(csv.size(), 4u);
  double last = 0;
  for (std::size_t i = 1; i < csv.size(); ++i) {
    double cov = std::stod(csv[i].substr(csv[i].find(',') + 1));
    EXPECT_GE(cov, last);
    last = cov;
  }
  auto types = app::TypesFromJson(Slurp(report.json_path));
  EXPECT_EQ(types, report.types);
  ASSERT_EQ(types.size(), 2u);
  EXPECT_EQ(types[0].file, "trivial.py");
  EXPECT_EQ(types[0].function, "answer");
  EXPECT_FALSE(types[0].parameter.has_value());
  EXPECT_EQ(types[0].type, std::vector<std::string>{"int"});
}

TEST_F(AppTest, SameSeedSameArtifacts) {
  auto a = Trivial(7);
  auto b = Trivial(7);
  b.output_dir = dir_ / "again";
  auto ra = app::Run(a, log_);
  auto rb = app::Run(b, log_);
  ASSERT_TRUE(ra.ok && rb.ok);
  EXPECT_EQ(Slurp(ra.json_path), Slurp(rb.json_path));
  EXPECT_EQ(Slurp(ra.csv_path), Slurp(rb.csv_path));
  EXPECT_EQ(Slurp(ra.suite_path), Slurp(rb.suite_path));
}

TEST_F(AppTest, SetupFailureWritesNothing) {
  auto c = Trivial();
  c.module = "does_not_exist";
  auto r = app::Run(c, log_);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.error.empty());
  EXPECT_FALSE(fs::exists(c.output_dir));

  fs::create_directories(dir_ / "src");
  std::ofstream(dir_ / "src" / "bad.py") << "def f(:\n    pass\n";
  c.module = (dir_ / "src" / "bad.py").string();
  r = app::Run(c, log_);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(fs::exists(c.output_dir));

  c = Trivial();
  c.proxy_probability = -0.1;
  EXPECT_FALSE(app::Run(c, log_).ok);
  EXPECT_FALSE(fs::exists(c.output_dir));
}

TEST_F(AppTest, SweepCells) {
  auto base = Trivial(3);
  base.budget_seconds = 1;
  auto empty = app::Sweep(base, {"trivial"}, {}, 2, log_);
  EXPECT_TRUE(empty.empty());
  EXPECT_EQ(app::SweepCsv(empty), "probability,runs,mean_final_coverage\n");

  auto rows = app::Sweep(base, {"trivial"}, {0.0, 1.0}, 2, log_);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.runs, 2u);
    EXPECT_DOUBLE_EQ(r.mean_final_coverage, 1.0);
  }
  EXPECT_TRUE(fs::exists(base.output_dir / "p1.0000" / "trivial" / "seed4" / "coverage.csv"));
  EXPECT_EQ(Lines(app::SweepCsv(rows))[2], "1.0000,2,1.000000");
}

int RunCli(const std::string& args, std::string* out = nullptr) {
  std::string cmd = std::string(TRACEGEN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return -1;
  char buf[512];
  std::string text;
  while (fgets(buf, sizeof buf, pipe) != nullptr) text += buf;
  int status = pclose(pipe);
  if (out) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(AppTest, CommandLine) {
  std::string root = std::string(" --project-root ") + TRACEGEN_CORPUS_DIR;
  std::string out_dir = " --output-dir " + (dir_ / "cli").string();
  std::string out;
  EXPECT_EQ(RunCli("--module trivial --seed 2 --budget 1" + root + out_dir, &out), 0);
  EXPECT_EQ(out, "TypeHints-TypeTracing,trivial,2,1\n");
  EXPECT_TRUE(fs::exists(dir_ / "cli" / "types.json"));

  EXPECT_EQ(RunCli("--module missing_mod --budget 1" + root + " --output-dir " + (dir_ / "none").string()), 1);
  EXPECT_FALSE(fs::exists(dir_ / "none"));
  EXPECT_EQ(RunCli("--module trivial --weights 1,2" + root + out_dir), 2);
  EXPECT_EQ(RunCli("--module trivial --proxy-prob 3" + root + out_dir), 1);
  EXPECT_NE(RunCli("--budget 1"), 0);
  EXPECT_EQ(RunCli("--module trivial --no-annotations --proxy-prob 0 --budget 1" + root + out_dir, &out), 0);
  EXPECT_EQ(out.substr(0, out.find(',')), "NoTypeHints");
}

}  // namespace
