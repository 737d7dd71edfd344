#include "tracegen/metrics/metrics.hpp"

#include <algorithm>

namespace tracegen::metrics {

using types::GradualType;
using types::TypeKind;

double RelativeCoverage(double cov, double min_cov, double max_cov) {
  if (min_cov > max_cov) throw DomainError("minimum above maximum");
  if (cov < min_cov || cov > max_cov) throw DomainError("coverage outside [min, max]");
  if (max_cov == min_cov) return 100.0;
  return 100.0 * (cov - min_cov) / (max_cov - min_cov);
}

std::string ToString(MatchClass m) {
  switch (m) {
    case MatchClass::kMatch:
      return "MATCH";
    case MatchClass::kMismatch:
      return "MISMATCH";
    case MatchClass::kMissing:
      return "MISSING";
    case MatchClass::kAny:
      return "ANY";
  }
  return "MISSING";
}

namespace {

// Outer constructor name used for comparison.
std::string Outer(const GradualType& t) {
  switch (t.kind()) {
    case TypeKind::kAny:
      return "Any";
    case TypeKind::kNone:
      return "none";
    case TypeKind::kInstance:
      return t.cls()->qualified_name;
    case TypeKind::kTuple:
      return "tuple";
    case TypeKind::kCollection:
      return types::CollectionName(t.collection_kind());
    case TypeKind::kUnion:
      break;
  }
  return types::Render(t);
}

}  // namespace

MatchClass Classify(const std::optional<GradualType>& inferred, const GradualType& truth) {
  if (!inferred) return MatchClass::kMissing;
  GradualType got = types::Unify(*inferred);
  if (got.is_any()) return MatchClass::kAny;
  std::vector<std::string> names;
  for (const auto& m : got.Members()) {
    if (!m.is_any()) names.push_back(Outer(m));
  }
  if (names.empty()) return MatchClass::kAny;
  for (const auto& m : types::Unify(truth).Members()) {
    if (std::find(names.begin(), names.end(), Outer(m)) != names.end()) return MatchClass::kMatch;
  }
  return MatchClass::kMismatch;
}

Prf PrecisionRecallF1(std::size_t matches, std::size_t inferred_total, std::size_t truth_total) {
  if (matches > inferred_total || matches > truth_total) throw DomainError("more matches than types");
  Prf r;
  r.precision = inferred_total == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(inferred_total);
  r.recall = truth_total == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(truth_total);
  double sum = r.precision + r.recall;
  r.f1 = sum == 0 ? 0.0 : 2.0 * r.precision * r.recall / sum;
  return r;
}

double A12(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw EmptySample("a12 needs two non-empty samples");
  // Rank-based count: sort b once, then binary search per element of a.
  std::vector<double> sorted = b;
  std::sort(sorted.begin(), sorted.end());
  double wins = 0;
  for (double x : a) {
    auto lo = std::lower_bound(sorted.begin(), sorted.end(), x);
    auto hi = std::upper_bound(sorted.begin(), sorted.end(), x);
    wins += static_cast<double>(lo - sorted.begin()) + 0.5 * static_cast<double>(hi - lo);
  }
  return wins / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

}  // namespace tracegen::metrics
