#include "tracegen/infer/inference.hpp"

#include <algorithm>
#include <array>
#include <string_view>

namespace tracegen::infer {

using types::CollectionKind;
using types::GradualType;
using types::TypeKind;

double UniformReal(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t UniformIndex(Rng& rng, std::size_t n) {
  if (n <= 1) return 0;
  return static_cast<std::size_t>(UniformReal(rng) * static_cast<double>(n)) % n;
}

namespace {

// Operators whose operand type is taken as a guess for the receiver type.
constexpr std::array<std::string_view, 32> kOperandEvidence = {
    "__eq__",       "__ne__",        "__lt__",       "__le__",        "__gt__",       "__ge__",
    "__add__",      "__radd__",      "__sub__",      "__rsub__",      "__mul__",      "__rmul__",
    "__truediv__",  "__rtruediv__",  "__floordiv__", "__rfloordiv__", "__mod__",      "__rmod__",
    "__pow__",      "__rpow__",      "__and__",      "__rand__",      "__or__",       "__ror__",
    "__xor__",      "__rxor__",      "__lshift__",   "__rlshift__",   "__rshift__",   "__rrshift__",
    "__neg__",      "__pos__"};

// Recorded, but every object supports these.
constexpr std::array<std::string_view, 5> kNoEvidence = {"__bool__", "__str__", "__repr__", "__hash__",
                                                         "__setattr__"};

bool Contains(const auto& table, std::string_view name) {
  return std::find(table.begin(), table.end(), name) != table.end();
}

void AddUnique(std::vector<GradualType>& out, const GradualType& t) {
  if (t.is_any()) return;
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
}

void Candidates(const trace::UsageTrace& trace, const analysis::TestCluster& cluster, int depth,
                std::vector<GradualType>& out) {
  for (const auto& c : trace.typecheck_targets) AddUnique(out, types::Unify(GradualType::Instance(c)));

  for (const auto& [name, operands] : trace.method_invocations) {
    if (!Contains(kOperandEvidence, name)) continue;
    for (const auto& t : operands) {
      for (const auto& m : types::Unify(t).Members()) AddUnique(out, m);
    }
  }

  std::set<std::string> required = RequiredAttributes(trace, cluster);
  if (!required.empty()) {
    for (const auto& c : analysis::ClassesWithAttributes(cluster, required)) {
      AddUnique(out, types::Unify(GradualType::Instance(c)));
    }
  }

  const trace::UsageTrace* element = trace.element();
  if (element != nullptr && !element->empty() && depth < 2) {
    std::vector<GradualType> inner;
    Candidates(*element, cluster, depth + 1, inner);
    if (inner.empty()) return;
    GradualType elem = inner.front();
    for (std::size_t i = 1; i < inner.size(); ++i) elem = types::UnionWithCap(elem, inner[i], 5);
    // Refined kinds take the place of their bare form.
    bool refined = false;
    for (auto& t : out) {
      if (t.kind() == TypeKind::kCollection && t.collection_kind() != CollectionKind::kDict &&
          t.children()[0].is_any()) {
        t = GradualType::Collection(t.collection_kind(), {elem});
        refined = true;
      }
    }
    if (!refined) AddUnique(out, GradualType::List(elem));
  }
}

}  // namespace

std::set<std::string> RequiredAttributes(const trace::UsageTrace& trace, const analysis::TestCluster& cluster) {
  types::ClassRef object = cluster.Builtin("object");
  std::set<std::string> names = trace.attribute_accesses;
  for (const auto& [name, operands] : trace.method_invocations) names.insert(name);
  std::set<std::string> required;
  for (const auto& n : names) {
    if (Contains(kNoEvidence, n)) continue;
    if (object && object->declared_attributes.count(n)) continue;
    if (!cluster.attribute_map.count(n)) continue;
    required.insert(n);
  }
  return required;
}

std::vector<GradualType> InferCandidates(const trace::UsageTrace& trace, const analysis::TestCluster& cluster) {
  std::vector<GradualType> out;
  Candidates(trace, cluster, 0, out);
  return out;
}

Selection SelectParameterType(const GradualType& declared, const std::vector<GradualType>& candidates,
                              const SelectionWeights& weights, Rng& rng) {
  struct Option {
    SelectedOption kind;
    double weight;
  };
  std::vector<Option> options;
  if (!declared.is_any() && weights.annotation > 0) options.push_back({SelectedOption::kAnnotation, weights.annotation});
  if (weights.none > 0) options.push_back({SelectedOption::kNone, weights.none});
  if (weights.any > 0) options.push_back({SelectedOption::kAny, weights.any});
  if (!candidates.empty() && weights.inferred > 0) options.push_back({SelectedOption::kInferred, weights.inferred});
  if (options.empty()) return {SelectedOption::kAny, GradualType::Any()};

  double total = 0;
  for (const auto& o : options) total += o.weight;
  double r = UniformReal(rng) * total;
  SelectedOption chosen = options.back().kind;
  for (const auto& o : options) {
    if (r < o.weight) {
      chosen = o.kind;
      break;
    }
    r -= o.weight;
  }
  switch (chosen) {
    case SelectedOption::kAnnotation: return {chosen, declared};
    case SelectedOption::kNone: return {chosen, GradualType::None()};
    case SelectedOption::kAny: return {chosen, GradualType::Any()};
    case SelectedOption::kInferred: return {chosen, candidates[UniformIndex(rng, candidates.size())]};
  }
  return {SelectedOption::kAny, GradualType::Any()};
}

Selection SelectParameterType(const analysis::TestCluster& cluster, int callable, const std::string& parameter,
                              const SelectionWeights& weights, Rng& rng) {
  const auto& info = cluster.callables.at(callable);
  GradualType declared;
  for (const auto& p : info.parameters) {
    if (p.name == parameter) declared = p.declared;
  }
  std::vector<GradualType> candidates;
  if (const trace::UsageTrace* t = cluster.TraceFor(callable, parameter)) candidates = InferCandidates(*t, cluster);
  return SelectParameterType(declared, candidates, weights, rng);
}

void RecordReturn(analysis::TestCluster& cluster, int callable, const GradualType& observed, std::size_t cap) {
  auto it = cluster.recorded_returns.find(callable);
  GradualType previous = it == cluster.recorded_returns.end() ? GradualType::Any() : it->second;
  cluster.recorded_returns[callable] = types::UnionWithCap(previous, observed, cap);
}

GradualType InferredParameterType(const analysis::TestCluster& cluster, int callable, const std::string& parameter,
                                  std::size_t cap) {
  const trace::UsageTrace* t = cluster.TraceFor(callable, parameter);
  if (t == nullptr) return GradualType::Any();
  GradualType result;
  for (const auto& c : InferCandidates(*t, cluster)) result = types::UnionWithCap(result, c, cap);
  return result;
}

}  // namespace tracegen::infer
