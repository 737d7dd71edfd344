// Acceptance checks that run in seconds: criteria 1-4, 8 and 9.

#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "../support/oracles.hpp"
#include "../support/transparency.hpp"
#include "tracegen/analysis/test_cluster.hpp"
#include "tracegen/app/run.hpp"
#include "tracegen/infer/inference.hpp"
#include "tracegen/metrics/metrics.hpp"

namespace fs = std::filesystem;
using namespace tracegen;
using types::ClassInfo;
using types::ClassRef;
using types::GradualType;

namespace {

constexpr double kTypeSuiteSeconds = 10.0;
constexpr double kTransparencySeconds = 10.0;
constexpr double kAttributeMapSeconds = 10.0;
constexpr double kSelectionSeconds = 5.0;
constexpr double kSelectionTolerance = 0.02;
constexpr double kMetricsSeconds = 5.0;
constexpr double kPrfTolerance = 1e-4;
constexpr double kArtifactSeconds = 60.0;

class Check {
 public:
  explicit Check(int criterion) : criterion_(criterion), start_(std::chrono::steady_clock::now()) {}

  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }

  bool Finish(double limit_seconds) {
    double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    Expect(took < limit_seconds, "runtime " + std::to_string(took) + " s");
    std::cout << "criterion " << criterion_ << ": " << (failed_ ? "FAIL" : "PASS") << " (" << took << " s)";
    for (const auto& f : failures_) std::cout << " [" << f << "]";
    std::cout << std::endl;
    return !failed_;
  }

 private:
  int criterion_;
  std::chrono::steady_clock::time_point start_;
  bool failed_ = false;
  std::vector<std::string> failures_;
};

ClassRef Make(const std::string& name, std::vector<ClassRef> bases = {}, std::set<std::string> attrs = {}) {
  auto c = std::make_shared<ClassInfo>();
  c->qualified_name = name;
  c->superclasses = std::move(bases);
  c->declared_attributes = std::move(attrs);
  c->builtin = name.find('.') == std::string::npos;
  return c;
}

std::set<std::string> Names(const std::vector<ClassRef>& v) {
  std::set<std::string> out;
  for (const auto& c : v) out.insert(c->qualified_name);
  return out;
}

bool TypeSuite() {
  Check c(1);
  ClassRef object = Make("object");
  ClassRef int_ = Make("int", {object});
  ClassRef bool_ = Make("bool", {int_});
  ClassRef str = Make("str", {object});
  ClassRef float_ = Make("float", {object});
  auto I = [](const ClassRef& r) { return GradualType::Instance(r); };
  GradualType any = GradualType::Any();

  for (const auto& t : {I(int_), I(str), GradualType::None(), GradualType::List(I(int_)), any}) {
    c.Expect(types::IsConsistent(t, t), "reflexive " + types::Render(t));
    c.Expect(types::IsConsistent(t, any) && types::IsConsistent(any, t), "any both ways " + types::Render(t));
  }
  c.Expect(types::IsConsistent(I(int_), any) && types::IsConsistent(any, I(str)) &&
               !types::IsConsistent(I(int_), I(str)),
           "non-transitivity witness");
  c.Expect(types::IsConsistent(GradualType::List(I(bool_)), GradualType::List(I(int_))), "list[bool] ~ list[int]");

  GradualType capped = I(int_);
  for (const auto& r : {str, float_, bool_, object}) capped = types::UnionWithCap(capped, I(r), 3);
  c.Expect(capped.children().size() == 3, "union cap");

  std::mt19937_64 rng(2024);
  for (int h_index = 0; h_index < 200; ++h_index) {
    oracle::Hierarchy h = oracle::RandomHierarchy(rng, 8);
    for (const auto& a : h.classes) {
      for (const auto& b : h.classes) {
        bool expected = h.reach[h.IndexOf(a)][h.IndexOf(b)];
        c.Expect(types::IsConsistent(I(a), I(b)) == expected, "closure " + a->qualified_name + "/" + b->qualified_name);
      }
    }
    for (int k = 0; k < 40; ++k) {
      GradualType s = oracle::RandomType(rng, h);
      GradualType t = oracle::RandomType(rng, h);
      c.Expect(types::IsConsistent(s, t) == oracle::Consistent(s, t, h), types::Render(s) + " ~ " + types::Render(t));
      c.Expect(types::IsConsistent(s, s), "reflexive " + types::Render(s));
      c.Expect(types::Unify(types::Unify(s)) == types::Unify(s), "idempotent " + types::Render(s));
    }
  }
  return c.Finish(kTypeSuiteSeconds);
}

bool Transparency() {
  Check c(2);
  auto results = transparency::CompareAll();
  std::set<std::string> functions;
  std::size_t checked = 0;
  bool divergence = false;
  for (const auto& r : results) {
    functions.insert(r.function);
    if (r.native) {
      if (r.input == "'abc'") divergence = r.plain == "ok:False" && r.proxied == "raise:TypeError";
      continue;
    }
    ++checked;
    c.Expect(r.same(), r.function + "(" + r.input + "): " + r.plain + " vs " + r.proxied);
  }
  c.Expect(functions.size() - transparency::kNative.size() >= 20, "corpus too small");
  c.Expect(checked > 0, "nothing checked");
  c.Expect(divergence, "native divergence not reproduced");

  // record-before-forward: the attribute is logged even though the lookup fails
  lang::Runtime rt;
  rt.AddSource("transparency_corpus", transparency::kCorpus);
  lang::Interpreter interp(rt);
  auto& m = interp.Import("transparency_corpus");
  transparency::PlainMapper mapper;
  trace::ProxySession session(interp, mapper);
  lang::Value fn = *m.globals.Find("f_missing");
  for (const auto& x : m.globals.Find("INPUTS")->as<lang::ListObject>()->items) {
    lang::Value p = session.Wrap(x, {0, "x"});
    std::string outcome = transparency::Outcome(interp, fn, p);
    c.Expect(outcome == "raise:AttributeError", "f_missing " + outcome);
    c.Expect(trace::ExtractTrace(p).attribute_accesses.count("no_such_attribute") == 1, "miss not recorded");
  }
  return c.Finish(kTransparencySeconds);
}

bool AttributeMap() {
  Check c(3);
  ClassRef a = Make("m.A", {}, {"x", "y"});
  ClassRef b = Make("m.B", {a}, {"x", "z"});
  ClassRef cc = Make("m.C", {}, {"y"});
  auto map = analysis::BuildAttributeMap({a, b, cc});
  c.Expect(map.size() == 3, "example size");
  c.Expect(Names(map["x"]) == std::set<std::string>{"m.A"}, "x -> A");
  c.Expect(Names(map["y"]) == std::set<std::string>{"m.A", "m.C"}, "y -> A, C");
  c.Expect(Names(map["z"]) == std::set<std::string>{"m.B"}, "z -> B");

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> attr(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    oracle::Hierarchy h = oracle::RandomHierarchy(rng);
    auto got = analysis::BuildAttributeMap(h.refs());
    auto expected = oracle::TopmostDeclarers(h);
    c.Expect(got.size() == expected.size(), "map size");
    for (const auto& [name, classes] : expected) c.Expect(Names(got[name]) == classes, "map " + name);
    for (int q = 0; q < 5; ++q) {
      std::set<std::string> required;
      int k = attr(rng) % 3 + 1;
      for (int i = 0; i < k; ++i) required.insert(std::string(1, static_cast<char>('a' + attr(rng))));
      c.Expect(Names(analysis::ClassesWithAttributes(h.refs(), got, required)) == oracle::ProvidingAll(h, required),
               "classes_with_attributes");
    }
  }
  return c.Finish(kAttributeMapSeconds);
}

bool SelectionFrequencies() {
  Check c(4);
  ClassRef int_ = Make("int");
  ClassRef str = Make("str");
  infer::Rng rng(20240);
  infer::SelectionWeights w{10, 1, 5, 10};
  std::array<int, 4> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    ++counts[static_cast<int>(
        infer::SelectParameterType(GradualType::Instance(int_), {GradualType::Instance(str)}, w, rng).option)];
  }
  const std::array<double, 4> expected{10.0 / 26, 1.0 / 26, 5.0 / 26, 10.0 / 26};
  for (int k = 0; k < 4; ++k) {
    double f = static_cast<double>(counts[k]) / n;
    c.Expect(std::fabs(f - expected[k]) <= kSelectionTolerance, "option " + std::to_string(k) + " " + std::to_string(f));
  }
  std::array<int, 4> without{};
  for (int i = 0; i < n; ++i) {
    ++without[static_cast<int>(infer::SelectParameterType(GradualType::Any(), {}, w, rng).option)];
  }
  c.Expect(without[static_cast<int>(infer::SelectedOption::kAnnotation)] == 0, "annotation drawn");
  c.Expect(without[static_cast<int>(infer::SelectedOption::kInferred)] == 0, "inferred drawn");
  return c.Finish(kSelectionSeconds);
}

bool Metrics() {
  Check c(8);
  auto throws_domain = [](double cov, double lo, double hi) {
    try {
      metrics::RelativeCoverage(cov, lo, hi);
    } catch (const metrics::DomainError&) {
      return true;
    }
    return false;
  };
  c.Expect(std::fabs(metrics::RelativeCoverage(0.5, 0.4, 0.6) - 50.0) < 1e-9, "relative midpoint");
  c.Expect(metrics::RelativeCoverage(0.4, 0.4, 0.6) == 0.0, "relative min");
  c.Expect(metrics::RelativeCoverage(0.7, 0.7, 0.7) == 100.0, "min == max");
  c.Expect(throws_domain(0.9, 0.4, 0.6), "out of range");

  ClassRef int_ = Make("int"), float_ = Make("float"), str = Make("str");
  auto I = [](const ClassRef& r) { return GradualType::Instance(r); };
  c.Expect(metrics::Classify(GradualType::Union({I(int_), I(float_)}), I(int_)) == metrics::MatchClass::kMatch,
           "int | float vs int");
  c.Expect(metrics::Classify(I(str), I(int_)) == metrics::MatchClass::kMismatch, "mismatch");
  c.Expect(metrics::Classify(std::nullopt, I(int_)) == metrics::MatchClass::kMissing, "missing");
  c.Expect(metrics::Classify(GradualType::Any(), I(int_)) == metrics::MatchClass::kAny, "any");

  auto prf = metrics::PrecisionRecallF1(720, 3442, 3257);
  c.Expect(std::fabs(prf.precision - 0.2092) < kPrfTolerance, "precision " + std::to_string(prf.precision));
  c.Expect(std::fabs(prf.recall - 0.2211) < kPrfTolerance, "recall " + std::to_string(prf.recall));
  c.Expect(std::fabs(prf.f1 - 0.2150) < kPrfTolerance, "f1 " + std::to_string(prf.f1));

  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> size(1, 20);
  std::uniform_int_distribution<int> value(0, 8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(size(rng)), b(size(rng));
    for (auto& x : a) x = value(rng) * 0.125;
    for (auto& x : b) x = value(rng) * 0.125;
    c.Expect(std::fabs(metrics::A12(a, b) - oracle::A12(a, b)) < 1e-12, "a12");
  }
  return c.Finish(kMetricsSeconds);
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool Artifacts() {
  Check c(9);
  fs::path dir = fs::temp_directory_path() / "tracegen_acceptance_artifacts";
  fs::remove_all(dir);
  std::ostringstream log;
  for (const char* module : {"trivial", "arithmetic", "orders"}) {
    std::string reports[2][3];
    for (int run = 0; run < 2; ++run) {
      app::RunConfig config;
      config.module = module;
      config.project_root = TRACEGEN_CORPUS_DIR;
      config.seed = 17;
      config.budget_seconds = 5;
      config.max_evaluations = 400;
      config.output_dir = dir / module / std::to_string(run);
      auto r = app::Run(config, log);
      c.Expect(r.ok, std::string(module) + " run failed: " + r.error);
      if (!r.ok) continue;
      std::string json = Slurp(r.json_path);
      c.Expect(app::TypesToJson(app::TypesFromJson(json)) == json, "json round trip");
      c.Expect(app::TypesFromJson(json) == r.types, "json content");

      std::istringstream csv(Slurp(r.csv_path));
      std::string line;
      std::getline(csv, line);
      c.Expect(line == "elapsed_second,branch_coverage,configuration,project,module,seed", "csv header");
      double last = -1;
      std::size_t rows = 0;
      while (std::getline(csv, line)) {
        ++rows;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        c.Expect(cells.size() == 6, "csv width");
        if (cells.size() != 6) continue;
        double cov = std::stod(cells[1]);
        c.Expect(cov >= last, "csv not monotone");
        last = cov;
        c.Expect(cells[2] == r.configuration && cells[4] == module && cells[5] == "17" && !cells[3].empty(),
                 "csv metadata");
      }
      c.Expect(rows == 5, "csv rows");
      c.Expect(std::fabs(last - r.final_coverage) < 1e-6, "csv final");
      reports[run][0] = json;
      reports[run][1] = Slurp(r.csv_path);
      reports[run][2] = Slurp(r.suite_path);
    }
    for (int k = 0; k < 3; ++k) c.Expect(reports[0][k] == reports[1][k], std::string(module) + " not deterministic");
  }
  fs::remove_all(dir);
  return c.Finish(kArtifactSeconds);
}

}  // namespace

int main() {
  bool ok = true;
  ok = TypeSuite() && ok;
  ok = Transparency() && ok;
  ok = AttributeMap() && ok;
  ok = SelectionFrequencies() && ok;
  ok = Metrics() && ok;
  ok = Artifacts() && ok;
  return ok ? 0 : 1;
}
