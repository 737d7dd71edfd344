#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "tracegen/analysis/test_cluster.hpp"
#include "tracegen/exec/executor.hpp"
#include "tracegen/exec/instrumentation.hpp"
#include "tracegen/exec/test_case.hpp"
#include "tracegen/infer/inference.hpp"

namespace tracegen::search {

struct SearchConfig {
  double budget_seconds = 600.0;
  std::uint64_t seed = 0;
  double proxy_probability = 0.05;
  infer::SelectionWeights weights;
  std::size_t union_cap = 5;
  std::size_t population = 50;
  std::size_t tournament = 5;
  double crossover_probability = 0.75;
  std::size_t max_length = 40;
  // 0 disables the limit.
  std::uint64_t max_evaluations = 0;
  std::uint64_t max_generations = 0;
  double test_timeout_seconds = 3.0;
};

struct TimelinePoint {
  double elapsed = 0;
  double coverage = 0;  // fraction in [0, 1]
  std::uint64_t generation = 0;
};

struct ArchivedTest {
  exec::TestCase test;
  exec::ExecutionResult result;
  std::vector<int> goals;  // goals this test is archived for
};

struct SearchResult {
  std::vector<ArchivedTest> suite;
  std::vector<TimelinePoint> timeline;
  std::size_t total_goals = 0;
  std::vector<int> covered_goals;
  std::uint64_t generations = 0;
  std::uint64_t evaluations = 0;
  double elapsed = 0;

  double coverage() const {
    return total_goals == 0 ? 1.0 : static_cast<double>(covered_goals.size()) / static_cast<double>(total_goals);
  }
};

class SetupFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Many-objective search over all branch goals of the instrumented subject.
/// Every evaluation goes through the executor's probabilistic policy, so
/// trace evidence accumulates in `cluster` as the search runs.
SearchResult Generate(lang::Runtime& rt, analysis::TestCluster& cluster, const exec::BranchRegistry& registry,
                      const SearchConfig& config);

/// Per-callable insertion weights: callables owning uncovered goals are
/// preferred.
std::vector<double> InsertionWeights(const analysis::TestCluster& cluster, const exec::BranchRegistry& registry,
                                     const std::vector<int>& targets, const std::vector<char>& covered);

}  // namespace tracegen::search
