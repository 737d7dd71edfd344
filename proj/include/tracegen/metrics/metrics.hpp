#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracegen/types/gradual_type.hpp"

namespace tracegen::metrics {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EmptySample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Min-max normalised coverage in percent. Equal bounds give 100.
double RelativeCoverage(double cov, double min_cov, double max_cov);

enum class MatchClass { kMatch, kMismatch, kMissing, kAny };

std::string ToString(MatchClass m);

/// Partial-match classification of an inferred type against a ground truth.
/// Members are compared on their outer constructor after unification.
MatchClass Classify(const std::optional<types::GradualType>& inferred, const types::GradualType& truth);

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Throws DomainError when `matches` exceeds either total.
Prf PrecisionRecallF1(std::size_t matches, std::size_t inferred_total, std::size_t truth_total);

/// Vargha-Delaney effect size: P(a > b) + 0.5 P(a == b).
double A12(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace tracegen::metrics
