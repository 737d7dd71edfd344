#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tracegen/analysis/test_cluster.hpp"
#include "tracegen/exec/test_case.hpp"
#include "tracegen/infer/inference.hpp"

namespace tracegen::search {

struct FactoryOptions {
  infer::SelectionWeights weights;
  std::size_t max_length = 40;
  int max_depth = 3;        // constructor recursion cap
  double reuse_probability = 0.5;
  double pool_probability = 0.5;
};

/// Builds and edits test cases. Parameter types are drawn from the
/// inference engine, so evidence in the cluster steers construction.
class TestFactory {
 public:
  TestFactory(const analysis::TestCluster& cluster, infer::Rng& rng, FactoryOptions options = {});

  // Callables the search targets directly.
  void SetTargets(std::vector<int> callables) { targets_ = std::move(callables); }
  const std::vector<int>& targets() const { return targets_; }

  // Appends a call to `callable` and the statements producing its
  // arguments. Returns false when the test would grow past max_length.
  bool AppendCall(exec::TestCase& test, int callable);
  // Appends a call to a target, drawn with `weights` when not empty.
  bool AppendRandomCall(exec::TestCase& test, const std::vector<double>& weights = {});

  exec::TestCase RandomTest(const std::vector<double>& weights = {});

  // Returns a slot holding a value of `t`, or nullopt when construction
  // fails within the recursion cap.
  std::optional<int> Synthesize(exec::TestCase& test, const types::GradualType& t, int depth);

  // One round of delete / change / insert. Returns true when the test changed.
  bool Mutate(exec::TestCase& test, const std::vector<double>& weights = {});
  bool DeleteStatement(exec::TestCase& test, std::size_t index);
  bool ChangeStatement(exec::TestCase& test, std::size_t index);
  // Changes each original statement with probability p, at most once.
  bool ChangeEach(exec::TestCase& test, double p);

  // Single-point crossover at statement boundaries.
  std::pair<exec::TestCase, exec::TestCase> Crossover(const exec::TestCase& a, const exec::TestCase& b);

  // Drops tail statements beyond max_length.
  void Truncate(exec::TestCase& test) const;

  // Invalidates cached candidate sets after the cluster gained evidence.
  void EvidenceChanged() { candidates_.clear(); }

  types::GradualType SelectType(int callable, const std::string& param);

 private:
  types::GradualType RandomConcreteType();
  int AddStatement(exec::TestCase& test, exec::Statement s);
  std::optional<int> Reuse(const exec::TestCase& test, const types::GradualType& t, std::size_t limit);
  exec::Primitive RandomPrimitive(const std::string& builtin);
  std::optional<int> SynthesizeInstance(exec::TestCase& test, const types::ClassRef& cls, int depth);
  bool FillCall(exec::TestCase& test, int callable, exec::Statement& s, int depth);
  types::GradualType ReturnType(int callable) const;
  // Copies `src[from..]` onto `dst`, remapping references; drops statements
  // whose references cannot be repaired.
  void Splice(exec::TestCase& dst, const exec::TestCase& src, std::size_t from);
  std::optional<int> Repair(const exec::TestCase& test, const types::GradualType& t, std::size_t limit);

  const analysis::TestCluster& cluster_;
  infer::Rng& rng_;
  FactoryOptions options_;
  std::vector<int> targets_;
  std::map<std::pair<int, std::string>, std::vector<types::GradualType>> candidates_;
  std::vector<types::ClassRef> concrete_;
};

}  // namespace tracegen::search
