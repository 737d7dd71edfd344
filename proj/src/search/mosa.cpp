#include "tracegen/search/mosa.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <memory>
#include <numeric>

#include "tracegen/search/test_factory.hpp"

namespace tracegen::search {

using exec::ExecutionResult;
using exec::TestCase;

namespace {

struct Individual {
  TestCase test;
  ExecutionResult result;
  std::vector<double> fitness;  // one entry per goal
  std::size_t rank = 0;
  double crowding = 0;
};

using Pop = std::vector<std::shared_ptr<Individual>>;

bool Dominates(const Individual& a, const Individual& b, const std::vector<int>& goals) {
  bool better = false;
  for (int g : goals) {
    if (a.fitness[g] > b.fitness[g]) return false;
    if (a.fitness[g] < b.fitness[g]) better = true;
  }
  return better;
}

void AssignCrowding(Pop& front, const std::vector<int>& goals) {
  for (auto& ind : front) ind->crowding = 0;
  if (front.size() <= 2) {
    for (auto& ind : front) ind->crowding = std::numeric_limits<double>::infinity();
    return;
  }
  for (int g : goals) {
    std::stable_sort(front.begin(), front.end(), [g](const auto& a, const auto& b) { return a->fitness[g] < b->fitness[g]; });
    double lo = front.front()->fitness[g];
    double hi = front.back()->fitness[g];
    front.front()->crowding = front.back()->crowding = std::numeric_limits<double>::infinity();
    if (hi - lo <= 0) continue;
    for (std::size_t i = 1; i + 1 < front.size(); ++i) {
      front[i]->crowding += (front[i + 1]->fitness[g] - front[i - 1]->fitness[g]) / (hi - lo);
    }
  }
}

// Preference sorting: the best individual per uncovered goal forms the
// first front, the rest is sorted by non-domination.
std::vector<Pop> SortFronts(const Pop& all, const std::vector<int>& goals) {
  std::vector<Pop> fronts;
  if (goals.empty()) {
    fronts.push_back(all);
    return fronts;
  }
  std::vector<char> taken(all.size(), 0);
  Pop first;
  for (int g : goals) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < all.size(); ++i) {
      double fi = all[i]->fitness[g];
      double fb = all[best]->fitness[g];
      if (fi < fb || (fi == fb && all[i]->test.size() < all[best]->test.size())) best = i;
    }
    if (!taken[best]) {
      taken[best] = 1;
      first.push_back(all[best]);
    }
  }
  fronts.push_back(std::move(first));
  Pop rest;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!taken[i]) rest.push_back(all[i]);
  }
  std::vector<std::size_t> dominated_by(rest.size(), 0);
  std::vector<std::vector<std::size_t>> dominates(rest.size());
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      if (Dominates(*rest[i], *rest[j], goals)) {
        dominates[i].push_back(j);
        ++dominated_by[j];
      } else if (Dominates(*rest[j], *rest[i], goals)) {
        dominates[j].push_back(i);
        ++dominated_by[i];
      }
    }
  }
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (dominated_by[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    Pop front;
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      front.push_back(rest[i]);
      for (std::size_t j : dominates[i]) {
        if (--dominated_by[j] == 0) next.push_back(j);
      }
    }
    fronts.push_back(std::move(front));
    current = std::move(next);
  }
  return fronts;
}

}  // namespace

std::vector<double> InsertionWeights(const analysis::TestCluster& cluster, const exec::BranchRegistry& registry,
                                     const std::vector<int>& targets, const std::vector<char>& covered) {
  std::map<std::string, int> open;
  for (std::size_t g = 0; g < registry.goals.size(); ++g) {
    if (!covered[g]) ++open[registry.code_objects[registry.goals[g].code_object].name];
  }
  std::string prefix = cluster.module_name + ".";
  std::vector<double> weights;
  for (int id : targets) {
    std::string name = cluster.callables[id].qualified_name;
    if (name.starts_with(prefix)) name = name.substr(prefix.size());
    int count = 0;
    for (const auto& [code, n] : open) {
      if (code == name || code.starts_with(name + ".")) count += n;
    }
    weights.push_back(1.0 + count);
  }
  return weights;
}

SearchResult Generate(lang::Runtime& rt, analysis::TestCluster& cluster, const exec::BranchRegistry& registry,
                      const SearchConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&start] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  infer::Rng rng(config.seed);
  infer::Rng policy_rng(config.seed + 1);
  FactoryOptions fopts;
  fopts.weights = config.weights;
  fopts.max_length = config.max_length;
  TestFactory factory(cluster, rng, fopts);
  exec::ExecutorOptions eopts;
  eopts.timeout_seconds = config.test_timeout_seconds;
  eopts.union_cap = config.union_cap;
  exec::Executor executor(rt, cluster, registry, eopts);

  const std::size_t n_goals = registry.goals.size();
  std::vector<char> covered(n_goals, 0);
  std::vector<ArchivedTest> archive_store;
  std::vector<int> archive(n_goals, -1);
  std::size_t n_covered = 0;

  SearchResult out;
  out.total_goals = n_goals;
  std::uint64_t last_proxied = 0;

  auto done = [&] {
    if (n_covered == n_goals) return true;
    if (elapsed() >= config.budget_seconds) return true;
    if (config.max_evaluations > 0 && out.evaluations >= config.max_evaluations) return true;
    return false;
  };

  auto evaluate = [&](TestCase test) {
    auto ind = std::make_shared<Individual>();
    ExecutionResult r = executor.ExecuteWithPolicy(test, config.proxy_probability, policy_rng);
    ++out.evaluations;
    if (executor.proxied_runs() != last_proxied) {
      last_proxied = executor.proxied_runs();
      factory.EvidenceChanged();
    }
    if (r.Raised() && r.outcomes.size() < test.size()) test.statements.resize(r.outcomes.size());
    ind->fitness.resize(n_goals);
    for (std::size_t g = 0; g < n_goals; ++g) ind->fitness[g] = executor.GoalDistance(r, static_cast<int>(g));
    if (!r.timed_out) {
      int slot = -1;
      for (int g : r.covered_goals) {
        int current = archive[g];
        if (current >= 0 && archive_store[current].test.size() <= test.size()) continue;
        if (slot < 0) {
          slot = static_cast<int>(archive_store.size());
          archive_store.push_back({test, r, {}});
        }
        if (current < 0) {
          covered[g] = 1;
          ++n_covered;
        }
        archive[g] = slot;
      }
    }
    ind->test = std::move(test);
    ind->result = std::move(r);
    return ind;
  };

  auto fresh = [&]() {
    TestCase t = factory.RandomTest(InsertionWeights(cluster, registry, factory.targets(), covered));
    return t;
  };

  auto uncovered_goals = [&] {
    std::vector<int> goals;
    for (std::size_t g = 0; g < n_goals; ++g) {
      if (!covered[g]) goals.push_back(static_cast<int>(g));
    }
    return goals;
  };

  auto record = [&] { out.timeline.push_back({elapsed(), n_goals == 0 ? 1.0 : double(n_covered) / double(n_goals), out.generations}); };

  Pop population;
  while (population.size() < config.population && !done()) population.push_back(evaluate(fresh()));
  record();

  auto better = [](const Individual& a, const Individual& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
  };
  auto tournament = [&]() -> const Individual& {
    std::size_t best = infer::UniformIndex(rng, population.size());
    for (std::size_t k = 1; k < config.tournament; ++k) {
      std::size_t c = infer::UniformIndex(rng, population.size());
      if (better(*population[c], *population[best])) best = c;
    }
    return *population[best];
  };

  // Ranks for the initial population.
  {
    auto goals = uncovered_goals();
    auto fronts = SortFronts(population, goals);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      AssignCrowding(fronts[f], goals);
      for (auto& ind : fronts[f]) ind->rank = f;
    }
  }

  while (!done() && !population.empty()) {
    if (config.max_generations > 0 && out.generations >= config.max_generations) break;
    auto weights = InsertionWeights(cluster, registry, factory.targets(), covered);
    Pop offspring;
    while (offspring.size() < config.population && !done()) {
      TestCase a = tournament().test;
      TestCase b = tournament().test;
      if (infer::UniformReal(rng) < config.crossover_probability) std::tie(a, b) = factory.Crossover(a, b);
      for (TestCase* child : {&a, &b}) {
        factory.Mutate(*child, weights);
        if (child->empty()) factory.AppendRandomCall(*child, weights);
        if (child->empty() || done()) continue;
        offspring.push_back(evaluate(std::move(*child)));
      }
    }
    Pop all = population;
    all.insert(all.end(), offspring.begin(), offspring.end());
    auto goals = uncovered_goals();
    auto fronts = SortFronts(all, goals);
    Pop next;
    for (std::size_t f = 0; f < fronts.size() && next.size() < config.population; ++f) {
      AssignCrowding(fronts[f], goals);
      for (auto& ind : fronts[f]) ind->rank = f;
      if (next.size() + fronts[f].size() <= config.population) {
        next.insert(next.end(), fronts[f].begin(), fronts[f].end());
      } else {
        std::stable_sort(fronts[f].begin(), fronts[f].end(),
                         [](const auto& x, const auto& y) { return x->crowding > y->crowding; });
        next.insert(next.end(), fronts[f].begin(),
                    fronts[f].begin() + static_cast<long>(config.population - next.size()));
      }
    }
    population = std::move(next);
    ++out.generations;
    record();
  }

  // Deduplicated suite in goal order.
  std::map<int, std::size_t> placed;
  for (std::size_t g = 0; g < n_goals; ++g) {
    int slot = archive[g];
    if (slot < 0) continue;
    out.covered_goals.push_back(static_cast<int>(g));
    auto it = placed.find(slot);
    if (it == placed.end()) {
      std::size_t index = out.suite.size();
      for (std::size_t k = 0; k < out.suite.size(); ++k) {
        if (out.suite[k].test == archive_store[slot].test) index = k;
      }
      if (index == out.suite.size()) out.suite.push_back({archive_store[slot].test, archive_store[slot].result, {}});
      it = placed.emplace(slot, index).first;
    }
    out.suite[it->second].goals.push_back(static_cast<int>(g));
  }
  out.elapsed = elapsed();
  return out;
}

}  // namespace tracegen::search
