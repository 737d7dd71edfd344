#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tracegen/analysis/test_cluster.hpp"
#include "tracegen/types/gradual_type.hpp"

namespace tracegen::exec {

enum class StatementKind { kPrimitive, kNone, kConstruct, kCall, kCollection };

using Primitive = std::variant<std::int64_t, double, std::string, bool>;

/// One statement of a test; it defines the variable slot with its index.
struct Statement {
  StatementKind kind = StatementKind::kNone;
  Primitive value = std::int64_t{0};
  int callable = -1;
  // Slots used by this statement. Method calls pass the receiver first;
  // dict collections alternate key and value; tuples list their slots.
  std::vector<int> args;
  types::CollectionKind collection = types::CollectionKind::kList;
  // Type the slot is expected to hold.
  types::GradualType type;

  bool operator==(const Statement& other) const;
};

struct TestCase {
  std::vector<Statement> statements;

  std::size_t size() const { return statements.size(); }
  bool empty() const { return statements.empty(); }
  bool operator==(const TestCase& other) const { return statements == other.statements; }
};

/// Checks def-use order, callable ids and argument counts.
bool IsValid(const TestCase& test, const analysis::TestCluster& cluster, std::string* why = nullptr);

/// Number of slots a call statement needs: receiver plus parameters.
std::size_t ExpectedArgs(const analysis::CallableInfo& c);

}  // namespace tracegen::exec
