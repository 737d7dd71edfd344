#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tracegen/types/gradual_type.hpp"

namespace tracegen::trace {

/// Evidence collected about one argument.
struct UsageTrace {
  std::set<std::string> attribute_accesses;
  // Special method name -> distinct operand types, first-seen order.
  std::map<std::string, std::vector<types::GradualType>> method_invocations;
  // Distinct by qualified name, first-seen order.
  std::vector<types::ClassRef> typecheck_targets;
  // Zero or one entry: the trace shared by all elements reached through
  // iteration or item access.
  std::vector<UsageTrace> element_traces;
  // Traces of attribute values read through the proxy.
  std::vector<std::pair<std::string, UsageTrace>> attribute_traces;

  bool empty() const;
  void Merge(const UsageTrace& other);
  const UsageTrace* element() const { return element_traces.empty() ? nullptr : &element_traces.front(); }
  const UsageTrace* attribute(const std::string& name) const;

  void AddMethod(const std::string& name, const types::GradualType* operand);
  void AddTypecheck(const types::ClassRef& cls);
  UsageTrace& MutableElement();
  UsageTrace& MutableAttribute(const std::string& name);

  bool operator==(const UsageTrace& other) const;
};

}  // namespace tracegen::trace
