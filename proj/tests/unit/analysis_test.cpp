#include "tracegen/analysis/test_cluster.hpp"

#include <gtest/gtest.h>

#include <random>

#include "tracegen/lang/parser.hpp"

#include "../support/oracles.hpp"

using namespace tracegen;
using analysis::CallableKind;
using types::ClassInfo;
using types::ClassRef;

namespace {

std::set<std::string> Names(const std::vector<ClassRef>& v) {
  std::set<std::string> out;
  for (const auto& c : v) out.insert(c->qualified_name);
  return out;
}

ClassRef Make(const std::string& name, std::vector<ClassRef> bases, std::set<std::string> attrs) {
  auto c = std::make_shared<ClassInfo>();
  c->qualified_name = name;
  c->superclasses = std::move(bases);
  c->declared_attributes = std::move(attrs);
  return c;
}

TEST(AttributeMap, TopmostDeclarersOnly) {
  ClassRef a = Make("m.A", {}, {"x", "y"});
  ClassRef b = Make("m.B", {a}, {"x", "z"});
  ClassRef c = Make("m.C", {}, {"y"});
  auto map = analysis::BuildAttributeMap({a, b, c});
  EXPECT_EQ(Names(map["x"]), (std::set<std::string>{"m.A"}));
  EXPECT_EQ(Names(map["y"]), (std::set<std::string>{"m.A", "m.C"}));
  EXPECT_EQ(Names(map["z"]), (std::set<std::string>{"m.B"}));
  EXPECT_EQ(map.size(), 3u);

  EXPECT_EQ(Names(analysis::ClassesWithAttributes({a, b, c}, map, {"x", "z"})), (std::set<std::string>{"m.B"}));
  EXPECT_EQ(Names(analysis::ClassesWithAttributes({a, b, c}, map, {"y"})), (std::set<std::string>{"m.A", "m.B", "m.C"}));
  EXPECT_TRUE(analysis::ClassesWithAttributes({a, b, c}, map, {"nope"}).empty());
}

TEST(AttributeMap, MatchesOracleOnRandomHierarchies) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> attr(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    oracle::Hierarchy h = oracle::RandomHierarchy(rng);
    auto map = analysis::BuildAttributeMap(h.refs());
    auto expected = oracle::TopmostDeclarers(h);
    ASSERT_EQ(map.size(), expected.size());
    for (const auto& [name, classes] : expected) EXPECT_EQ(Names(map[name]), classes) << name;

    std::set<std::string> required;
    int k = attr(rng) % 3 + 1;
    for (int i = 0; i < k; ++i) required.insert(std::string(1, static_cast<char>('a' + attr(rng))));
    EXPECT_EQ(Names(analysis::ClassesWithAttributes(h.refs(), map, required)), oracle::ProvidingAll(h, required));
  }
}

constexpr const char* kHelper = R"(
class Base:
    def __init__(self, size):
        self.size = size

    def grow(self):
        self.size = self.size + 1
)";

constexpr const char* kSubject = R"(
from typing import List, Optional
import helper


LIMIT = 42


class Shape(helper.Base):
    def __init__(self, size: int, name: str):
        self.size = size
        self.label = name

    def area(self) -> float:
        return self.size * 1.5

    def _hidden(self):
        return 0


def total(shapes: List[Shape], extra: Optional[int]) -> int:
    if extra is None:
        return len(shapes)
    return len(shapes) + extra


def _private(x):
    return x


def plain(a, b="word"):
    return a
)";

class ClusterTest : public ::testing::Test {
 protected:
  ClusterTest() {
    rt_.AddSource("helper", kHelper);
    rt_.AddSource("subject", kSubject);
  }

  const analysis::CallableInfo* Find(const analysis::TestCluster& c, const std::string& qn) {
    for (const auto& x : c.callables) {
      if (x.qualified_name == qn) return &x;
    }
    return nullptr;
  }

  lang::Runtime rt_;
};

TEST_F(ClusterTest, PublicCallablesOfSubjectAndDependency) {
  auto c = analysis::BuildCluster(rt_, "subject");
  EXPECT_NE(Find(c, "subject.total"), nullptr);
  EXPECT_NE(Find(c, "subject.plain"), nullptr);
  EXPECT_NE(Find(c, "subject.Shape.area"), nullptr);
  EXPECT_EQ(Find(c, "subject._private"), nullptr);
  EXPECT_EQ(Find(c, "subject.Shape._hidden"), nullptr);
  const auto* ctor = Find(c, "subject.Shape.__init__");
  ASSERT_NE(ctor, nullptr);
  EXPECT_EQ(ctor->kind, CallableKind::kConstructor);
  ASSERT_EQ(ctor->parameters.size(), 2u);
  EXPECT_EQ(ctor->parameters[0].name, "size");
  EXPECT_TRUE(ctor->in_subject);

  const auto* grow = Find(c, "helper.Base.grow");
  ASSERT_NE(grow, nullptr);
  EXPECT_FALSE(grow->in_subject);
  EXPECT_EQ(c.constructors.count("helper.Base"), 1u);
  for (int id : c.SubjectCallables()) EXPECT_TRUE(c.callables[id].in_subject);
}

TEST_F(ClusterTest, AnnotationsBecomeDeclaredTypes) {
  auto c = analysis::BuildCluster(rt_, "subject");
  const auto* total = Find(c, "subject.total");
  ASSERT_NE(total, nullptr);
  EXPECT_EQ(types::Render(total->parameters[0].declared), "list[subject.Shape]");
  EXPECT_EQ(types::Render(total->parameters[1].declared), "int | none");
  EXPECT_EQ(types::Render(total->declared_return), "int");
  const auto* plain = Find(c, "subject.plain");
  EXPECT_TRUE(plain->parameters[0].declared.is_any());
  EXPECT_TRUE(plain->parameters[1].has_default);
}

TEST_F(ClusterTest, AnnotationsCanBeIgnored) {
  analysis::AnalysisOptions options;
  options.use_annotations = false;
  auto c = analysis::BuildCluster(rt_, "subject", options);
  for (const auto& x : c.callables) {
    for (const auto& p : x.parameters) EXPECT_TRUE(p.declared.is_any()) << x.qualified_name;
    // constructors always return None
    if (x.kind != CallableKind::kConstructor) EXPECT_TRUE(x.declared_return.is_any()) << x.qualified_name;
  }
}

TEST_F(ClusterTest, ClassAttributesIncludeInitializerAssignments) {
  auto c = analysis::BuildCluster(rt_, "subject");
  ClassRef shape = c.FindClass("subject.Shape");
  ASSERT_NE(shape, nullptr);
  EXPECT_TRUE(shape->declared_attributes.count("label"));
  EXPECT_TRUE(shape->declared_attributes.count("area"));
  EXPECT_EQ(Names(c.attribute_map.at("size")), (std::set<std::string>{"helper.Base"}));
  EXPECT_EQ(Names(analysis::ClassesWithAttributes(c, {"size", "label"})), (std::set<std::string>{"subject.Shape"}));
}

TEST_F(ClusterTest, UniverseHasBuiltinsAndConstants) {
  auto c = analysis::BuildCluster(rt_, "subject");
  for (const char* b : {"int", "str", "float", "bool", "list", "dict"}) EXPECT_NE(c.Builtin(b), nullptr) << b;
  bool has_limit = false, has_word = false;
  for (const auto& lit : c.constants) {
    if (const auto* i = std::get_if<std::int64_t>(&lit)) has_limit = has_limit || *i == 42;
    if (const auto* s = std::get_if<std::string>(&lit)) has_word = has_word || *s == "word";
  }
  EXPECT_TRUE(has_limit);
  EXPECT_TRUE(has_word);
}

TEST_F(ClusterTest, BrokenModulesAreReported) {
  rt_.AddSource("broken", "def f(:\n    pass\n");
  rt_.AddSource("raising", "x = 1 / 0\n");
  EXPECT_THROW(analysis::BuildCluster(rt_, "broken"), analysis::AnalysisError);
  EXPECT_THROW(analysis::BuildCluster(rt_, "raising"), analysis::AnalysisError);
  EXPECT_THROW(analysis::BuildCluster(rt_, "no_such_module"), analysis::AnalysisError);
}

TEST(InstanceAttributes, AssignmentsOnReceiverOnly) {
  auto m = lang::ParseModule(
      "def __init__(self, a):\n"
      "    self.a = a\n"
      "    if a:\n"
      "        self.b = 1\n"
      "    other = 3\n"
      "    a.c = 2\n",
      "x", "x.py");
  const auto& def = static_cast<const lang::FunctionDefStmt&>(*m->body[0]);
  EXPECT_EQ(analysis::InstanceAttributes(def), (std::set<std::string>{"a", "b"}));
}

}  // namespace
