#include "tracegen/search/mosa.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "tracegen/search/suite.hpp"
#include "tracegen/search/test_factory.hpp"

using namespace tracegen;
using exec::StatementKind;
using exec::TestCase;
using types::GradualType;

namespace {

constexpr const char* kChain = R"(
class E:
    def __init__(self):
        self.v = 0


class D:
    def __init__(self, e: E):
        self.e = e


class C:
    def __init__(self, d: D):
        self.d = d


class B:
    def __init__(self, c: C):
        self.c = c


class A:
    def __init__(self, b: B):
        self.b = b

    def depth(self) -> int:
        return 1


def take_map(m: dict) -> int:
    return len(m)


def pair(x: int, y: str) -> str:
    return y * x
)";

class FactoryTest : public ::testing::Test {
 protected:
  FactoryTest() {
    rt_.AddSource("chain", kChain);
    cluster_ = analysis::BuildCluster(rt_, "chain");
  }

  GradualType I(const std::string& name) const { return GradualType::Instance(cluster_.FindClass(name)); }

  // Constructor nesting level of each statement; a root construction is level 0.
  static int MaxNesting(const TestCase& t) {
    std::vector<int> height(t.size(), -1);
    int best = -1;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.statements[i].kind != StatementKind::kConstruct) continue;
      int h = 0;
      for (int a : t.statements[i].args) h = std::max(h, height[a] + 1);
      height[i] = h;
      best = std::max(best, h);
    }
    return best;
  }

  lang::Runtime rt_;
  analysis::TestCluster cluster_;
  infer::Rng rng_{42};
};

TEST_F(FactoryTest, ConstructorChainsStopAtDepthThree) {
  search::FactoryOptions options;
  options.weights = {1, 0, 0, 0};
  options.reuse_probability = 0;
  search::TestFactory factory(cluster_, rng_, options);
  for (int i = 0; i < 50; ++i) {
    TestCase t;
    auto slot = factory.Synthesize(t, I("chain.A"), 0);
    ASSERT_TRUE(slot.has_value());
    EXPECT_EQ(MaxNesting(t), 3);
    // E would sit at level four, so D receives None instead
    int nones = 0;
    for (const auto& s : t.statements) nones += s.kind == StatementKind::kNone;
    EXPECT_EQ(nones, 1);
    EXPECT_TRUE(exec::IsValid(t, cluster_));
  }
  TestCase t;
  ASSERT_TRUE(factory.Synthesize(t, I("chain.B"), 0).has_value());
  EXPECT_EQ(MaxNesting(t), 3);
  EXPECT_EQ(t.statements.front().kind, StatementKind::kConstruct);
}

TEST_F(FactoryTest, DictKeysAreStrings) {
  search::TestFactory factory(cluster_, rng_);
  int entries = 0;
  for (int i = 0; i < 100; ++i) {
    TestCase t;
    auto slot = factory.Synthesize(t, GradualType::Dict(GradualType::Any(), GradualType::Any()), 0);
    ASSERT_TRUE(slot.has_value());
    const auto& d = t.statements[*slot];
    ASSERT_EQ(d.kind, StatementKind::kCollection);
    for (std::size_t k = 0; k < d.args.size(); k += 2) {
      const auto& key = t.statements[d.args[k]];
      EXPECT_TRUE(std::holds_alternative<std::string>(key.value));
      ++entries;
    }
  }
  EXPECT_GT(entries, 0);
}

TEST_F(FactoryTest, NoneIsTheNullConstant) {
  search::TestFactory factory(cluster_, rng_);
  TestCase t;
  auto slot = factory.Synthesize(t, GradualType::None(), 0);
  ASSERT_TRUE(slot.has_value());
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.statements[0].kind, StatementKind::kNone);
}

TEST_F(FactoryTest, SeededMutationsKeepTestsValid) {
  search::TestFactory factory(cluster_, rng_);
  factory.SetTargets(cluster_.SubjectCallables());
  TestCase t = factory.RandomTest();
  int changed = 0;
  for (int i = 0; i < 1000; ++i) {
    changed += factory.Mutate(t);
    std::string why;
    ASSERT_TRUE(exec::IsValid(t, cluster_, &why)) << "mutation " << i << ": " << why;
    ASSERT_LE(t.size(), 40u);
    if (t.empty()) t = factory.RandomTest();
  }
  EXPECT_GT(changed, 500);
  for (int i = 0; i < 200; ++i) {
    auto [x, y] = factory.Crossover(factory.RandomTest(), factory.RandomTest());
    ASSERT_TRUE(exec::IsValid(x, cluster_));
    ASSERT_TRUE(exec::IsValid(y, cluster_));
  }
}

TEST_F(FactoryTest, ChangePassVisitsEachStatementOnce) {
  search::FactoryOptions options;
  options.weights = {1, 0, 0, 0};
  options.reuse_probability = 0;
  search::TestFactory factory(cluster_, rng_, options);
  for (int i = 0; i < 100; ++i) {
    TestCase t;
    ASSERT_TRUE(factory.Synthesize(t, I("chain.A"), 0).has_value());
    std::size_t before = t.size();
    // p = 1 changes all of them; a chain adds at most five statements
    factory.ChangeEach(t, 1.0);
    ASSERT_LE(t.size(), before * 6);
    ASSERT_TRUE(exec::IsValid(t, cluster_));
  }
}

TEST_F(FactoryTest, AppendRespectsMaxLength) {
  search::FactoryOptions options;
  options.max_length = 3;
  options.weights = {1, 0, 0, 0};
  search::TestFactory factory(cluster_, rng_, options);
  int a_ctor = cluster_.constructors.at("chain.A");
  TestCase t;
  EXPECT_FALSE(factory.AppendCall(t, a_ctor));
  EXPECT_TRUE(t.empty());
  EXPECT_TRUE(factory.AppendCall(t, cluster_.constructors.at("chain.E")));
  EXPECT_EQ(t.size(), 1u);
}

TEST_F(FactoryTest, InsertionWeightsFavourUncoveredCallables) {
  exec::BranchRegistry registry = exec::Instrument(rt_, "chain");
  auto targets = cluster_.SubjectCallables();
  std::vector<char> covered(registry.goals.size(), 0);
  auto w = search::InsertionWeights(cluster_, registry, targets, covered);
  ASSERT_EQ(w.size(), targets.size());
  for (double x : w) EXPECT_GE(x, 1.0);
  std::fill(covered.begin(), covered.end(), 1);
  for (double x : search::InsertionWeights(cluster_, registry, targets, covered)) EXPECT_DOUBLE_EQ(x, 1.0);
}

class CorpusSearch : public ::testing::Test {
 protected:
  void Load(const std::string& module) {
    rt_.AddSearchPath(TRACEGEN_CORPUS_DIR);
    registry_ = exec::Instrument(rt_, module);
    cluster_ = analysis::BuildCluster(rt_, module);
  }
  lang::Runtime rt_;
  exec::BranchRegistry registry_;
  analysis::TestCluster cluster_;
};

TEST_F(CorpusSearch, TrivialModuleCoveredByInitialPopulation) {
  Load("trivial");
  search::SearchConfig config;
  config.seed = 1;
  config.budget_seconds = 10;
  auto r = search::Generate(rt_, cluster_, registry_, config);
  EXPECT_DOUBLE_EQ(r.coverage(), 1.0);
  EXPECT_EQ(r.generations, 0u);
  ASSERT_FALSE(r.timeline.empty());
  EXPECT_DOUBLE_EQ(r.timeline.front().coverage, 1.0);
}

TEST_F(CorpusSearch, ArchiveAndWrittenSuiteReproduceCoverage) {
  Load("orders");
  search::SearchConfig config;
  config.seed = 5;
  config.budget_seconds = 60;
  config.max_evaluations = 1500;
  auto r = search::Generate(rt_, cluster_, registry_, config);
  EXPECT_GT(r.coverage(), 0.5);

  exec::Executor ex(rt_, cluster_, registry_);
  std::set<int> union_goals;
  for (const auto& a : r.suite) {
    auto rerun = ex.ExecuteRegular(a.test);
    for (int g : a.goals) {
      EXPECT_TRUE(std::binary_search(rerun.covered_goals.begin(), rerun.covered_goals.end(), g)) << g;
    }
    union_goals.insert(rerun.covered_goals.begin(), rerun.covered_goals.end());
  }
  EXPECT_EQ(std::vector<int>(union_goals.begin(), union_goals.end()), r.covered_goals);

  std::string source = search::WriteSuite(cluster_, r.suite);
  auto run = search::RunSuite(rt_, registry_, "test_orders", source);
  EXPECT_EQ(run.tests.size(), r.suite.size());
  for (std::size_t i = 0; i < run.failures.size(); ++i) EXPECT_EQ(run.failures[i], "") << run.tests[i];
  EXPECT_EQ(run.union_covered, r.covered_goals);
}

TEST_F(CorpusSearch, SeededRunsAreReproducible) {
  Load("inventory");
  search::SearchConfig config;
  config.seed = 9;
  config.budget_seconds = 60;
  config.max_evaluations = 600;
  auto first = search::Generate(rt_, cluster_, registry_, config);
  std::string first_suite = search::WriteSuite(cluster_, first.suite);

  lang::Runtime rt2;
  rt2.AddSearchPath(TRACEGEN_CORPUS_DIR);
  auto registry2 = exec::Instrument(rt2, "inventory");
  auto cluster2 = analysis::BuildCluster(rt2, "inventory");
  auto second = search::Generate(rt2, cluster2, registry2, config);
  EXPECT_EQ(first.covered_goals, second.covered_goals);
  EXPECT_EQ(first.evaluations, second.evaluations);
  EXPECT_EQ(first_suite, search::WriteSuite(cluster2, second.suite));
}

TEST_F(CorpusSearch, WrittenSuiteLooksLikePython) {
  Load("trivial");
  search::SearchConfig config;
  config.seed = 2;
  config.budget_seconds = 10;
  auto r = search::Generate(rt_, cluster_, registry_, config);
  std::string src = search::WriteSuite(cluster_, r.suite);
  EXPECT_NE(src.find("import trivial as module_0"), std::string::npos) << src;
  EXPECT_NE(src.find("def test_case_0():"), std::string::npos) << src;
  EXPECT_NE(src.find("assert "), std::string::npos) << src;
}

}  // namespace
