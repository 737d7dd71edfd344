#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tracegen/app/run.hpp"

namespace {

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Search-based unit test generation with type tracing"};
  tracegen::app::RunConfig config;
  std::vector<std::string> modules;
  std::string weights;
  std::string sweep;
  std::size_t seeds = 1;
  bool no_annotations = false;

  cli.add_option("--module", modules, "Subject module: .py path or dotted name (repeatable for --sweep)")->required();
  cli.add_option("--project-root", config.project_root, "Directory the module is imported from");
  cli.add_option("--seed", config.seed, "Random seed")->capture_default_str();
  cli.add_option("--budget", config.budget_seconds, "Search budget in seconds")->capture_default_str();
  cli.add_option("--proxy-prob", config.proxy_probability, "Probability of a proxied execution per test")
      ->capture_default_str();
  cli.add_option("--weights", weights, "Selection weights w_dev,w_none,w_any,w_union (default 10,1,5,10)");
  cli.add_option("--union-cap", config.union_cap, "Maximum union size")->capture_default_str();
  cli.add_flag("--no-annotations", no_annotations, "Ignore type annotations of the subject");
  cli.add_option("--output-dir", config.output_dir, "Artifact directory")->capture_default_str();
  cli.add_option("--sweep", sweep, "Comma-separated proxy probabilities to sweep");
  cli.add_option("--seeds", seeds, "Seeds per sweep cell, counting up from --seed")->capture_default_str();
  cli.add_option("--max-evaluations", config.max_evaluations, "Stop after this many evaluations (0 = off)");
  cli.add_option("--max-generations", config.max_generations, "Stop after this many generations (0 = off)");
  cli.add_option("--project", config.project, "Project label for the coverage CSV");
  CLI11_PARSE(cli, argc, argv);

  config.use_annotations = !no_annotations;
  try {
    if (!weights.empty()) {
      auto w = ParseList(weights);
      if (w.size() != 4) throw std::invalid_argument("--weights needs four values");
      config.weights = {w[0], w[1], w[2], w[3]};
    }
    if (cli.count("--sweep") > 0) {
      auto probabilities = ParseList(sweep);
      for (double p : probabilities) {
        if (p < 0 || p > 1) throw std::invalid_argument("sweep probabilities must lie in [0, 1]");
      }
      auto rows = tracegen::app::Sweep(config, modules, probabilities, seeds, std::cerr);
      std::filesystem::create_directories(config.output_dir);
      std::ofstream out(config.output_dir / "sweep_summary.csv");
      out << tracegen::app::SweepCsv(rows);
      std::cout << tracegen::app::SweepCsv(rows);
      return 0;
    }
    if (modules.size() != 1) throw std::invalid_argument("exactly one --module expected outside --sweep");
    config.module = modules.front();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto report = tracegen::app::Run(config, std::cerr);
  if (!report.ok) return 1;
  std::cout << report.configuration << "," << report.module << "," << config.seed << "," << report.final_coverage
            << "\n";
  return 0;
}
