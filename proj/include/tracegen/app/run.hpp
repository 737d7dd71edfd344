#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tracegen/analysis/test_cluster.hpp"
#include "tracegen/infer/inference.hpp"
#include "tracegen/lang/interpreter.hpp"
#include "tracegen/search/mosa.hpp"

namespace tracegen::app {

struct RunConfig {
  std::string module;  // path to a .py file or a dotted module name
  std::filesystem::path project_root;
  std::uint64_t seed = 0;
  double budget_seconds = 600.0;
  double proxy_probability = 0.05;
  infer::SelectionWeights weights;
  std::size_t union_cap = 5;
  bool use_annotations = true;
  std::filesystem::path output_dir = "tracegen-out";
  // Extra stopping rules, 0 disables.
  std::uint64_t max_evaluations = 0;
  std::uint64_t max_generations = 0;
  // CSV project label; defaults to the project root's directory name.
  std::string project;
};

/// NoTypeHints, TypeHints, NoTypeHints-TypeTracing or TypeHints-TypeTracing.
std::string ConfigurationName(const RunConfig& config);

/// Throws std::invalid_argument on out-of-range settings.
void Validate(const RunConfig& config);

struct ResolvedModule {
  std::string name;
  std::filesystem::path search_path;
};

ResolvedModule ResolveModule(const RunConfig& config);

struct TypeRecord {
  std::string file;
  int line_number = 0;
  std::string function;
  std::optional<std::string> parameter;  // absent for return records
  std::vector<std::string> type;

  bool operator==(const TypeRecord&) const = default;
};

/// One record per parameter and per return of every callable; types are
/// listed in order of first observation.
std::vector<TypeRecord> CollectTypes(const analysis::TestCluster& cluster, lang::Runtime& rt, std::size_t union_cap);

std::string TypesToJson(const std::vector<TypeRecord>& records);
std::vector<TypeRecord> TypesFromJson(const std::string& text);

struct CsvMeta {
  std::string configuration;
  std::string project;
  std::string module;
  std::uint64_t seed = 0;
};

/// One row per elapsed second of the budget; each row carries the most
/// recent coverage value, carried forward past the end of the search.
std::string TimelineCsv(const std::vector<search::TimelinePoint>& timeline, double final_coverage,
                        double budget_seconds, const CsvMeta& meta);

struct RunReport {
  bool ok = false;
  std::string error;
  std::string configuration;
  std::string module;
  double final_coverage = 0;
  std::size_t total_goals = 0;
  std::vector<int> covered_goals;  // registry goal indices
  std::vector<search::TimelinePoint> timeline;
  std::vector<TypeRecord> types;
  std::uint64_t generations = 0;
  std::uint64_t evaluations = 0;
  // Re-running the emitted suite covers exactly the archived goals.
  bool suite_reproduces = false;
  std::filesystem::path suite_path;
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
};

/// Full run: setup, search, artifacts. No artifacts are written when setup
/// fails.
RunReport Run(const RunConfig& config, std::ostream& log);

struct SweepRow {
  double probability = 0;
  std::size_t runs = 0;
  double mean_final_coverage = 0;
};

/// Runs every probability x seed x module cell under `base`, writing each
/// cell into its own subdirectory and the summary CSV into the output dir.
std::vector<SweepRow> Sweep(const RunConfig& base, const std::vector<std::string>& modules,
                            const std::vector<double>& probabilities, std::size_t seeds, std::ostream& log);

std::string SweepCsv(const std::vector<SweepRow>& rows);

}  // namespace tracegen::app
