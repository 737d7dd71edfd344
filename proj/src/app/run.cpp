#include "tracegen/app/run.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "tracegen/exec/instrumentation.hpp"
#include "tracegen/lang/parser.hpp"
#include "tracegen/search/suite.hpp"

namespace tracegen::app {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string ConfigurationName(const RunConfig& config) {
  std::string name = config.use_annotations ? "TypeHints" : "NoTypeHints";
  if (config.proxy_probability > 0) name += "-TypeTracing";
  return name;
}

void Validate(const RunConfig& config) {
  if (config.module.empty()) throw std::invalid_argument("no module given");
  if (!(config.proxy_probability >= 0.0 && config.proxy_probability <= 1.0)) {
    throw std::invalid_argument("proxy probability must lie in [0, 1]");
  }
  if (!(config.budget_seconds > 0)) throw std::invalid_argument("budget must be positive");
  if (config.union_cap == 0) throw std::invalid_argument("union cap must be positive");
  const auto& w = config.weights;
  if (w.annotation < 0 || w.none < 0 || w.any < 0 || w.inferred < 0) {
    throw std::invalid_argument("weights must be non-negative");
  }
}

ResolvedModule ResolveModule(const RunConfig& config) {
  fs::path given(config.module);
  bool looks_like_path = given.extension() == ".py" || config.module.find('/') != std::string::npos;
  if (!looks_like_path) {
    return {config.module, config.project_root.empty() ? fs::current_path() : config.project_root};
  }
  fs::path file = fs::absolute(given).lexically_normal();
  if (!config.project_root.empty()) {
    fs::path root = fs::absolute(config.project_root).lexically_normal();
    fs::path rel = file.lexically_relative(root);
    if (!rel.empty() && *rel.begin() != "..") {
      rel.replace_extension();
      std::string dotted;
      for (const auto& part : rel) {
        if (!dotted.empty()) dotted += '.';
        dotted += part.string();
      }
      return {dotted, root};
    }
  }
  return {file.stem().string(), file.parent_path()};
}

std::vector<TypeRecord> CollectTypes(const analysis::TestCluster& cluster, lang::Runtime& rt, std::size_t union_cap) {
  std::vector<TypeRecord> out;
  std::map<std::string, std::string> files;
  auto file_of = [&](const std::string& module) {
    auto it = files.find(module);
    if (it != files.end()) return it->second;
    auto p = rt.ModulePath(module);
    std::string name = p ? p->filename().string() : module + ".py";
    files.emplace(module, name);
    return name;
  };
  auto listed = [](const types::GradualType& t) {
    if (t.is_any()) return std::vector<std::string>{};
    return types::RenderMembers(t, false);
  };
  for (const auto& c : cluster.callables) {
    std::string function = c.qualified_name;
    if (function.starts_with(c.module + ".")) function = function.substr(c.module.size() + 1);
    for (const auto& p : c.parameters) {
      TypeRecord r{file_of(c.module), c.line, function, p.name, {}};
      if (cluster.TraceFor(c.id, p.name) != nullptr) {
        r.type = listed(infer::InferredParameterType(cluster, c.id, p.name, union_cap));
      }
      out.push_back(std::move(r));
    }
    TypeRecord ret{file_of(c.module), c.line, function, std::nullopt, {}};
    if (auto it = cluster.recorded_returns.find(c.id); it != cluster.recorded_returns.end()) {
      ret.type = listed(it->second);
    }
    out.push_back(std::move(ret));
  }
  return out;
}

std::string TypesToJson(const std::vector<TypeRecord>& records) {
  Json doc = Json::array();
  for (const auto& r : records) {
    Json j;
    j["file"] = r.file;
    j["line_number"] = r.line_number;
    j["function"] = r.function;
    if (r.parameter) j["parameter"] = *r.parameter;
    j["type"] = r.type;
    doc.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::vector<TypeRecord> TypesFromJson(const std::string& text) {
  Json doc = Json::parse(text);
  std::vector<TypeRecord> out;
  for (const auto& j : doc) {
    TypeRecord r;
    r.file = j.at("file").get<std::string>();
    r.line_number = j.at("line_number").get<int>();
    r.function = j.at("function").get<std::string>();
    if (j.contains("parameter")) r.parameter = j.at("parameter").get<std::string>();
    r.type = j.at("type").get<std::vector<std::string>>();
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace

std::string TimelineCsv(const std::vector<search::TimelinePoint>& timeline, double final_coverage,
                        double budget_seconds, const CsvMeta& meta) {
  std::ostringstream out;
  out << "elapsed_second,branch_coverage,configuration,project,module,seed\n";
  auto rows = static_cast<std::size_t>(std::ceil(budget_seconds));
  std::size_t next = 0;
  double current = 0.0;
  for (std::size_t s = 0; s < rows; ++s) {
    while (next < timeline.size() && timeline[next].elapsed < static_cast<double>(s + 1)) {
      current = timeline[next++].coverage;
    }
    // last generation may end past the budget
    if (s + 1 == rows) current = final_coverage;
    out << s << ',' << Fixed(current, 6) << ',' << CsvField(meta.configuration) << ',' << CsvField(meta.project)
        << ',' << CsvField(meta.module) << ',' << meta.seed << '\n';
  }
  return out.str();
}

RunReport Run(const RunConfig& config, std::ostream& log) {
  RunReport report;
  report.configuration = ConfigurationName(config);
  try {
    Validate(config);
  } catch (const std::exception& e) {
    report.error = e.what();
    log << "error: " << report.error << "\n";
    return report;
  }
  ResolvedModule resolved = ResolveModule(config);
  report.module = resolved.name;
  lang::Runtime rt;
  rt.AddSearchPath(resolved.search_path);
  analysis::TestCluster cluster;
  exec::BranchRegistry registry;
  try {
    if (!rt.ModulePath(resolved.name)) throw search::SetupFailure("module '" + config.module + "' not found");
    registry = exec::Instrument(rt, resolved.name);
    analysis::AnalysisOptions aopts;
    aopts.use_annotations = config.use_annotations;
    cluster = analysis::BuildCluster(rt, resolved.name, aopts);
  } catch (const lang::ParseError& e) {
    report.error = std::string("syntax error: ") + e.what();
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  if (!report.error.empty()) {
    log << "setup failure: " << report.error << "\n";
    return report;
  }

  search::SearchConfig sc;
  sc.budget_seconds = config.budget_seconds;
  sc.seed = config.seed;
  sc.proxy_probability = config.proxy_probability;
  sc.weights = config.weights;
  sc.union_cap = config.union_cap;
  sc.max_evaluations = config.max_evaluations;
  sc.max_generations = config.max_generations;
  search::SearchResult result = search::Generate(rt, cluster, registry, sc);

  report.final_coverage = result.coverage();
  report.total_goals = result.total_goals;
  report.covered_goals = result.covered_goals;
  report.timeline = result.timeline;
  report.generations = result.generations;
  report.evaluations = result.evaluations;
  report.types = CollectTypes(cluster, rt, config.union_cap);

  std::string leaf = resolved.name.substr(resolved.name.rfind('.') + 1);
  std::string suite = search::WriteSuite(cluster, result.suite);
  auto rerun = search::RunSuite(rt, registry, "test_" + leaf, suite);
  report.suite_reproduces = rerun.union_covered == result.covered_goals;
  for (std::size_t k = 0; k < rerun.tests.size(); ++k) {
    if (!rerun.failures[k].empty()) {
      report.suite_reproduces = false;
      log << "warning: " << rerun.tests[k] << " failed on re-run: " << rerun.failures[k] << "\n";
    }
  }

  CsvMeta meta;
  meta.configuration = report.configuration;
  meta.project = config.project;
  if (meta.project.empty()) {
    fs::path root = config.project_root.empty() ? resolved.search_path : config.project_root;
    meta.project = fs::absolute(root).lexically_normal().filename().string();
    if (meta.project.empty()) meta.project = fs::absolute(root).lexically_normal().parent_path().filename().string();
  }
  meta.module = resolved.name;
  meta.seed = config.seed;

  try {
    fs::create_directories(config.output_dir);
    report.suite_path = config.output_dir / ("test_" + leaf + ".py");
    report.csv_path = config.output_dir / "coverage.csv";
    report.json_path = config.output_dir / "types.json";
    WriteFile(report.suite_path, suite);
    WriteFile(report.csv_path, TimelineCsv(result.timeline, report.final_coverage, config.budget_seconds, meta));
    WriteFile(report.json_path, TypesToJson(report.types));
  } catch (const std::exception& e) {
    report.error = e.what();
    log << "error: " << report.error << "\n";
    return report;
  }
  log << report.configuration << " " << resolved.name << " seed " << config.seed << ": " << result.covered_goals.size()
      << "/" << result.total_goals << " goals, " << result.generations << " generations, " << result.evaluations
      << " evaluations\n";
  report.ok = true;
  return report;
}

std::vector<SweepRow> Sweep(const RunConfig& base, const std::vector<std::string>& modules,
                            const std::vector<double>& probabilities, std::size_t seeds, std::ostream& log) {
  std::vector<SweepRow> rows;
  for (double p : probabilities) {
    SweepRow row;
    row.probability = p;
    double total = 0;
    for (const auto& module : modules) {
      for (std::size_t k = 0; k < seeds; ++k) {
        RunConfig cell = base;
        cell.module = module;
        cell.proxy_probability = p;
        cell.seed = base.seed + k;
        std::string leaf = fs::path(module).stem().string();
        cell.output_dir = base.output_dir / ("p" + Fixed(p, 4)) / leaf / ("seed" + std::to_string(cell.seed));
        RunReport r = Run(cell, log);
        if (!r.ok) {
          log << "warning: cell " << module << " p=" << p << " seed " << cell.seed << " failed, left out\n";
          continue;
        }
        total += r.final_coverage;
        ++row.runs;
      }
    }
    row.mean_final_coverage = row.runs == 0 ? 0.0 : total / static_cast<double>(row.runs);
    rows.push_back(row);
  }
  return rows;
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "probability,runs,mean_final_coverage\n";
  for (const auto& r : rows) out << Fixed(r.probability, 4) << ',' << r.runs << ',' << Fixed(r.mean_final_coverage, 6) << '\n';
  return out.str();
}

}  // namespace tracegen::app
