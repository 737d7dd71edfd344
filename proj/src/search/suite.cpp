#include "tracegen/search/suite.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "tracegen/lang/interpreter.hpp"

namespace tracegen::search {

using exec::Statement;
using exec::StatementKind;

namespace {

std::string Var(int slot) { return "var_" + std::to_string(slot); }

std::string Literal(const exec::Primitive& p) {
  if (const auto* i = std::get_if<std::int64_t>(&p)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&p)) return lang::FloatRepr(*d);
  if (const auto* b = std::get_if<bool>(&p)) return *b ? "True" : "False";
  return lang::StrRepr(std::get<std::string>(p));
}

std::string JoinArgs(const std::vector<int>& args, std::size_t from) {
  std::string out;
  for (std::size_t k = from; k < args.size(); ++k) {
    if (k > from) out += ", ";
    out += Var(args[k]);
  }
  return out;
}

std::string Alias(std::map<std::string, std::string>& aliases, const std::string& module) {
  auto it = aliases.find(module);
  if (it != aliases.end()) return it->second;
  std::string alias = "module_" + std::to_string(aliases.size());
  aliases.emplace(module, alias);
  return alias;
}

std::string Expression(const analysis::TestCluster& cluster, const Statement& s,
                       std::map<std::string, std::string>& aliases) {
  switch (s.kind) {
    case StatementKind::kPrimitive:
      return Literal(s.value);
    case StatementKind::kNone:
      return "None";
    case StatementKind::kCollection:
      switch (s.collection) {
        case types::CollectionKind::kList:
          return "[" + JoinArgs(s.args, 0) + "]";
        case types::CollectionKind::kTupleVariadic:
          return s.args.size() == 1 ? "(" + Var(s.args[0]) + ",)" : "(" + JoinArgs(s.args, 0) + ")";
        case types::CollectionKind::kSet:
          return s.args.empty() ? "set()" : "{" + JoinArgs(s.args, 0) + "}";
        case types::CollectionKind::kDict: {
          std::string out = "{";
          for (std::size_t k = 0; k + 1 < s.args.size(); k += 2) {
            if (k > 0) out += ", ";
            out += Var(s.args[k]) + ": " + Var(s.args[k + 1]);
          }
          return out + "}";
        }
      }
      break;
    case StatementKind::kConstruct: {
      const auto& c = cluster.callables.at(s.callable);
      return Alias(aliases, c.module) + "." + c.class_name + "(" + JoinArgs(s.args, 0) + ")";
    }
    case StatementKind::kCall: {
      const auto& c = cluster.callables.at(s.callable);
      if (c.kind == analysis::CallableKind::kMethod) {
        return Var(s.args.at(0)) + "." + c.name + "(" + JoinArgs(s.args, 1) + ")";
      }
      return Alias(aliases, c.module) + "." + c.name + "(" + JoinArgs(s.args, 0) + ")";
    }
  }
  return "None";
}

}  // namespace

std::vector<std::string> RenderTest(const analysis::TestCluster& cluster, const ArchivedTest& archived,
                                    std::map<std::string, std::string>& aliases) {
  std::vector<std::string> lines;
  const auto& statements = archived.test.statements;
  const auto& outcomes = archived.result.outcomes;
  bool raises = !outcomes.empty() && !outcomes.back().ok && outcomes.size() == statements.size();
  for (std::size_t i = 0; i < statements.size(); ++i) {
    std::string line = Var(static_cast<int>(i)) + " = " + Expression(cluster, statements[i], aliases);
    bool last = i + 1 == statements.size();
    if (last && raises) {
      lines.push_back("raised = False");
      lines.push_back("try:");
      lines.push_back("    " + line);
      lines.push_back("except Exception:");
      lines.push_back("    raised = True");
      lines.push_back("assert raised");
      break;
    }
    lines.push_back(line);
    auto it = archived.result.scalar_results.find(static_cast<int>(i));
    if (it == archived.result.scalar_results.end()) continue;
    const std::string& repr = it->second;
    if (repr == "None") {
      lines.push_back("assert " + Var(static_cast<int>(i)) + " is None");
    } else {
      bool quoted = repr.front() == '\'' || repr.front() == '"';
      // nan and inf have no literal form
      if (quoted || (repr.find("nan") == std::string::npos && repr.find("inf") == std::string::npos)) {
        lines.push_back("assert " + Var(static_cast<int>(i)) + " == " + repr);
      }
    }
  }
  if (lines.empty()) lines.push_back("pass");
  return lines;
}

std::string WriteSuite(const analysis::TestCluster& cluster, const std::vector<ArchivedTest>& suite) {
  std::map<std::string, std::string> aliases;
  Alias(aliases, cluster.module_name);
  std::vector<std::vector<std::string>> bodies;
  for (const auto& t : suite) bodies.push_back(RenderTest(cluster, t, aliases));

  std::vector<std::pair<std::string, std::string>> imports(aliases.begin(), aliases.end());
  std::sort(imports.begin(), imports.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  std::ostringstream out;
  for (const auto& [module, alias] : imports) out << "import " << module << " as " << alias << "\n";
  for (std::size_t k = 0; k < bodies.size(); ++k) {
    out << "\n\ndef test_case_" << k << "():\n";
    for (const auto& line : bodies[k]) out << "    " << line << "\n";
  }
  return out.str();
}

SuiteRun RunSuite(lang::Runtime& rt, const exec::BranchRegistry& registry, const std::string& name,
                  const std::string& source) {
  SuiteRun run;
  rt.AddSource(name, source);
  static const std::regex kTestDef(R"(^def (test_\w+)\(\):)", std::regex::multiline);
  for (auto it = std::sregex_iterator(source.begin(), source.end(), kTestDef); it != std::sregex_iterator(); ++it) {
    run.tests.push_back((*it)[1].str());
  }
  std::set<int> all;
  for (const auto& test : run.tests) {
    lang::Interpreter interp(rt);
    exec::CoverageTracer tracer(registry);
    std::string failure;
    try {
      lang::ModuleObject& m = interp.Import(name);
      const lang::Value* fn = m.globals.Find(test);
      if (fn == nullptr) throw std::runtime_error("missing " + test);
      interp.SetTracer(&tracer);
      interp.Call(*fn, {});
    } catch (const lang::HostError& e) {
      failure = interp.ExceptionName(e.exc) + ": " + interp.ExceptionMessage(e.exc);
    } catch (const lang::TimeoutSignal&) {
      failure = "Timeout";
    } catch (const std::exception& e) {
      failure = e.what();
    }
    interp.SetTracer(nullptr);
    auto goals = tracer.CoveredGoals();
    all.insert(goals.begin(), goals.end());
    run.covered.push_back(std::move(goals));
    run.failures.push_back(std::move(failure));
  }
  run.union_covered.assign(all.begin(), all.end());
  return run;
}

}  // namespace tracegen::search
