#pragma once

#include <string>
#include <vector>

#include "tracegen/analysis/test_cluster.hpp"
#include "tracegen/exec/instrumentation.hpp"
#include "tracegen/search/mosa.hpp"

namespace tracegen::search {

/// Renders the archived tests as a host test module. Each test is a
/// `test_case_<n>` function; scalar call results become equality asserts and
/// a raising last statement is wrapped in an expected-exception block.
std::string WriteSuite(const analysis::TestCluster& cluster, const std::vector<ArchivedTest>& suite);

/// Renders one statement sequence as the body lines of a test function.
std::vector<std::string> RenderTest(const analysis::TestCluster& cluster, const ArchivedTest& test,
                                    std::map<std::string, std::string>& module_aliases);

struct SuiteRun {
  std::vector<std::string> tests;  // function names in source order
  std::vector<std::vector<int>> covered;  // goals per test
  std::vector<std::string> failures;  // empty when the test passed
  std::vector<int> union_covered;  // sorted
};

/// Loads `source` as module `name` and runs every `test_*` function in a
/// fresh session with coverage probes attached.
SuiteRun RunSuite(lang::Runtime& rt, const exec::BranchRegistry& registry, const std::string& name,
                  const std::string& source);

}  // namespace tracegen::search
