#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tracegen/analysis/test_cluster.hpp"
#include "tracegen/exec/instrumentation.hpp"
#include "tracegen/exec/test_case.hpp"
#include "tracegen/lang/interpreter.hpp"
#include "tracegen/trace/proxy.hpp"

namespace tracegen::exec {

struct StatementOutcome {
  bool ok = true;
  std::string exception;  // class name when !ok
  bool operator==(const StatementOutcome&) const = default;
};

struct ExecutionResult {
  std::vector<int> covered_goals;  // sorted goal indices
  std::vector<StatementOutcome> outcomes;
  std::map<int, types::GradualType> recorded_returns;  // statement index -> type
  // Repr of scalar results, used for assertions.
  std::map<int, std::string> scalar_results;
  std::vector<std::pair<trace::ProxyTag, trace::UsageTrace>> traces;
  bool timed_out = false;
  bool proxied = false;
  double wall_time = 0;

  std::vector<double> true_distance;
  std::vector<double> false_distance;
  std::vector<char> entered;

  bool Raised() const { return !outcomes.empty() && !outcomes.back().ok; }
};

struct ExecutorOptions {
  double timeout_seconds = 3.0;
  int proxy_depth = 2;
  std::size_t union_cap = 5;
};

/// Maps runtime objects to cluster types for one session.
class ClusterTypeMapper final : public trace::TypeMapper {
 public:
  explicit ClusterTypeMapper(const analysis::TestCluster& cluster, std::map<std::string, types::ClassRef>* extra);
  types::GradualType TypeOfValue(const lang::Value& v) override;
  types::ClassRef ClassRefOf(const lang::ClassObject* cls) override;

 private:
  types::GradualType TypeOf(const lang::Value& v, int depth);
  const analysis::TestCluster& cluster_;
  std::map<std::string, types::ClassRef>* extra_;
};

class Executor {
 public:
  Executor(lang::Runtime& rt, analysis::TestCluster& cluster, const BranchRegistry& registry,
           ExecutorOptions options = {});

  // Coverage run; also records return types into the cluster.
  ExecutionResult ExecuteRegular(const TestCase& test);
  // Evidence run; merges traces into the cluster and drops coverage.
  ExecutionResult ExecuteProxied(const TestCase& test);
  // Regular run, followed with probability `p` by a proxied run.
  ExecutionResult ExecuteWithPolicy(const TestCase& test, double p, std::mt19937_64& rng);

  double GoalDistance(const ExecutionResult& r, int goal) const;

  std::uint64_t regular_runs() const { return regular_runs_; }
  std::uint64_t proxied_runs() const { return proxied_runs_; }
  const BranchRegistry& registry() const { return registry_; }
  analysis::TestCluster& cluster() { return cluster_; }

 private:
  ExecutionResult Run(const TestCase& test, bool proxied);

  lang::Runtime& rt_;
  analysis::TestCluster& cluster_;
  const BranchRegistry& registry_;
  ExecutorOptions options_;
  std::map<std::string, types::ClassRef> extra_classes_;
  std::uint64_t regular_runs_ = 0;
  std::uint64_t proxied_runs_ = 0;
};

}  // namespace tracegen::exec
