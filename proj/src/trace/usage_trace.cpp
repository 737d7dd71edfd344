#include "tracegen/trace/usage_trace.hpp"

#include <algorithm>

namespace tracegen::trace {

bool UsageTrace::empty() const {
  if (!attribute_accesses.empty() || !method_invocations.empty() || !typecheck_targets.empty()) return false;
  for (const auto& e : element_traces) {
    if (!e.empty()) return false;
  }
  for (const auto& [name, t] : attribute_traces) {
    if (!t.empty()) return false;
  }
  return true;
}

const UsageTrace* UsageTrace::attribute(const std::string& name) const {
  for (const auto& [n, t] : attribute_traces) {
    if (n == name) return &t;
  }
  return nullptr;
}

void UsageTrace::AddMethod(const std::string& name, const types::GradualType* operand) {
  auto& seen = method_invocations[name];
  if (operand != nullptr && std::find(seen.begin(), seen.end(), *operand) == seen.end()) seen.push_back(*operand);
}

void UsageTrace::AddTypecheck(const types::ClassRef& cls) {
  if (!cls) return;
  for (const auto& c : typecheck_targets) {
    if (c->qualified_name == cls->qualified_name) return;
  }
  typecheck_targets.push_back(cls);
}

UsageTrace& UsageTrace::MutableElement() {
  if (element_traces.empty()) element_traces.emplace_back();
  return element_traces.front();
}

UsageTrace& UsageTrace::MutableAttribute(const std::string& name) {
  for (auto& [n, t] : attribute_traces) {
    if (n == name) return t;
  }
  attribute_traces.emplace_back(name, UsageTrace());
  return attribute_traces.back().second;
}

void UsageTrace::Merge(const UsageTrace& other) {
  if (&other == this) return;
  attribute_accesses.insert(other.attribute_accesses.begin(), other.attribute_accesses.end());
  for (const auto& [name, operands] : other.method_invocations) {
    auto& seen = method_invocations[name];
    for (const auto& t : operands) {
      if (std::find(seen.begin(), seen.end(), t) == seen.end()) seen.push_back(t);
    }
  }
  for (const auto& c : other.typecheck_targets) AddTypecheck(c);
  if (const UsageTrace* e = other.element()) MutableElement().Merge(*e);
  for (const auto& [name, t] : other.attribute_traces) MutableAttribute(name).Merge(t);
}

namespace {

template <typename T>
bool SameElements(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(), [&](const T& x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

}  // namespace

// Order-insensitive: merging in a different order yields an equal trace.
bool UsageTrace::operator==(const UsageTrace& other) const {
  if (attribute_accesses != other.attribute_accesses) return false;
  if (method_invocations.size() != other.method_invocations.size()) return false;
  for (const auto& [name, operands] : method_invocations) {
    auto it = other.method_invocations.find(name);
    if (it == other.method_invocations.end() || !SameElements(operands, it->second)) return false;
  }
  if (typecheck_targets.size() != other.typecheck_targets.size()) return false;
  for (const auto& c : typecheck_targets) {
    bool found = std::any_of(other.typecheck_targets.begin(), other.typecheck_targets.end(),
                             [&](const types::ClassRef& d) { return d->qualified_name == c->qualified_name; });
    if (!found) return false;
  }
  const UsageTrace* e1 = element();
  const UsageTrace* e2 = other.element();
  bool empty1 = e1 == nullptr || e1->empty();
  bool empty2 = e2 == nullptr || e2->empty();
  if (empty1 != empty2 || (!empty1 && !(*e1 == *e2))) return false;
  auto non_empty = [](const UsageTrace& t) {
    std::size_t n = 0;
    for (const auto& [name, a] : t.attribute_traces) n += !a.empty();
    return n;
  };
  if (non_empty(*this) != non_empty(other)) return false;
  for (const auto& [name, a] : attribute_traces) {
    if (a.empty()) continue;
    const UsageTrace* b = other.attribute(name);
    if (b == nullptr || !(a == *b)) return false;
  }
  return true;
}

}  // namespace tracegen::trace
