#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tracegen/analysis/test_cluster.hpp"
#include "tracegen/trace/usage_trace.hpp"
#include "tracegen/types/gradual_type.hpp"

namespace tracegen::infer {

struct SelectionWeights {
  double annotation = 10.0;
  double none = 1.0;
  double any = 5.0;
  double inferred = 10.0;
};

enum class SelectedOption { kAnnotation, kNone, kAny, kInferred };

struct Selection {
  SelectedOption option = SelectedOption::kAny;
  types::GradualType type;
};

using Rng = std::mt19937_64;

/// Uniform double in [0, 1).
double UniformReal(Rng& rng);
/// Uniform integer in [0, n).
std::size_t UniformIndex(Rng& rng, std::size_t n);

/// Candidate types mined from a trace, deduplicated, in strategy order.
std::vector<types::GradualType> InferCandidates(const trace::UsageTrace& trace, const analysis::TestCluster& cluster);

/// Attribute names a trace requires of its argument's class. Names every
/// class provides and names no class declares are left out.
std::set<std::string> RequiredAttributes(const trace::UsageTrace& trace, const analysis::TestCluster& cluster);

/// Draws among the declared annotation, NONE, ANY and the inferred
/// candidates; options that are unavailable are excluded.
Selection SelectParameterType(const types::GradualType& declared, const std::vector<types::GradualType>& candidates,
                              const SelectionWeights& weights, Rng& rng);

Selection SelectParameterType(const analysis::TestCluster& cluster, int callable, const std::string& parameter,
                              const SelectionWeights& weights, Rng& rng);

void RecordReturn(analysis::TestCluster& cluster, int callable, const types::GradualType& observed, std::size_t cap);

/// Inferred parameter type: union of the candidates, capped.
types::GradualType InferredParameterType(const analysis::TestCluster& cluster, int callable,
                                         const std::string& parameter, std::size_t cap);

}  // namespace tracegen::infer
