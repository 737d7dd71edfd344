#pragma once

#include <limits>
#include <string>
#include <vector>

#include "tracegen/lang/ast.hpp"
#include "tracegen/lang/interpreter.hpp"

namespace tracegen::exec {

struct CodeObjectInfo {
  int id = -1;
  std::string name;
  int line = 0;
  std::vector<int> predicates;
};

struct PredicateInfo {
  int id = -1;
  int code_object = -1;
  int line = 0;
  // Innermost enclosing predicate arm inside the same code object.
  int parent = -1;
  bool parent_outcome = true;
};

/// One coverage goal: a predicate arm, or the root of a branchless code object.
struct BranchGoal {
  int code_object = -1;
  int predicate = -1;  // -1 for root goals
  bool outcome = true;
};

struct BranchRegistry {
  std::string module;
  std::vector<CodeObjectInfo> code_objects;
  std::vector<PredicateInfo> predicates;
  std::vector<BranchGoal> goals;

  int GoalFor(int predicate, bool outcome) const;
  int RootGoal(int code_object) const;
};

class InstrumentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Assigns probe ids to every function and predicate of the module's cached
/// syntax tree. Repeated calls yield the same ids.
BranchRegistry Instrument(lang::Runtime& rt, const std::string& module);
BranchRegistry Instrument(lang::Module& module);

/// Per-execution probe sink.
class CoverageTracer final : public lang::ExecutionTracer {
 public:
  explicit CoverageTracer(const BranchRegistry& registry);

  void EnterCodeObject(int code_object_id) override;
  void Predicate(int predicate_id, bool outcome, double true_distance, double false_distance) override;

  std::vector<int> CoveredGoals() const;

  static constexpr double kUnreached = std::numeric_limits<double>::infinity();
  // Minimum distance observed toward each arm; kUnreached when never evaluated.
  std::vector<double> true_distance;
  std::vector<double> false_distance;
  std::vector<char> true_taken;
  std::vector<char> false_taken;
  std::vector<char> entered;

 private:
  const BranchRegistry& registry_;
};

}  // namespace tracegen::exec
