#include "tracegen/exec/instrumentation.hpp"

#include <algorithm>

namespace tracegen::exec {

int BranchRegistry::GoalFor(int predicate, bool outcome) const {
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (goals[i].predicate == predicate && goals[i].outcome == outcome) return static_cast<int>(i);
  }
  return -1;
}

int BranchRegistry::RootGoal(int code_object) const {
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (goals[i].predicate < 0 && goals[i].code_object == code_object) return static_cast<int>(i);
  }
  return -1;
}

namespace {

class Instrumenter {
 public:
  explicit Instrumenter(BranchRegistry& reg) : reg_(reg) {}

  void Module(lang::Module& m) { Block(m.body, -1, -1, true, ""); }

 private:
  void Block(lang::Block& block, int code, int parent, bool parent_outcome, const std::string& prefix) {
    for (auto& s : block) Stmt(*s, code, parent, parent_outcome, prefix);
  }

  int NewPredicate(int code, int line, int parent, bool parent_outcome) {
    PredicateInfo p;
    p.id = static_cast<int>(reg_.predicates.size());
    p.code_object = code;
    p.line = line;
    p.parent = parent;
    p.parent_outcome = parent_outcome;
    reg_.predicates.push_back(p);
    reg_.code_objects[code].predicates.push_back(p.id);
    return p.id;
  }

  void Stmt(lang::Stmt& s, int code, int parent, bool parent_outcome, const std::string& prefix) {
    switch (s.kind) {
      case lang::StmtKind::kIf: {
        auto& i = static_cast<lang::IfStmt&>(s);
        if (code < 0) {
          i.predicate_id = -1;
          Block(i.body, code, parent, parent_outcome, prefix);
          Block(i.orelse, code, parent, parent_outcome, prefix);
          break;
        }
        int id = NewPredicate(code, s.pos.line, parent, parent_outcome);
        i.predicate_id = id;
        Block(i.body, code, id, true, prefix);
        Block(i.orelse, code, id, false, prefix);
        break;
      }
      case lang::StmtKind::kWhile: {
        auto& w = static_cast<lang::WhileStmt&>(s);
        if (code < 0) {
          w.predicate_id = -1;
          Block(w.body, code, parent, parent_outcome, prefix);
          break;
        }
        int id = NewPredicate(code, s.pos.line, parent, parent_outcome);
        w.predicate_id = id;
        Block(w.body, code, id, true, prefix);
        break;
      }
      case lang::StmtKind::kFor: {
        auto& f = static_cast<lang::ForStmt&>(s);
        if (code < 0) {
          f.predicate_id = -1;
          Block(f.body, code, parent, parent_outcome, prefix);
          break;
        }
        int id = NewPredicate(code, s.pos.line, parent, parent_outcome);
        f.predicate_id = id;
        Block(f.body, code, id, true, prefix);
        break;
      }
      case lang::StmtKind::kTry: {
        auto& t = static_cast<lang::TryStmt&>(s);
        Block(t.body, code, parent, parent_outcome, prefix);
        for (auto& h : t.handlers) Block(h.body, code, parent, parent_outcome, prefix);
        Block(t.finalbody, code, parent, parent_outcome, prefix);
        break;
      }
      case lang::StmtKind::kFunctionDef: {
        auto& d = static_cast<lang::FunctionDefStmt&>(s);
        CodeObjectInfo info;
        info.id = static_cast<int>(reg_.code_objects.size());
        info.name = prefix + d.name;
        info.line = s.pos.line;
        reg_.code_objects.push_back(info);
        d.code_object_id = info.id;
        Block(d.body, info.id, -1, true, prefix + d.name + ".");
        break;
      }
      case lang::StmtKind::kClassDef: {
        auto& c = static_cast<lang::ClassDefStmt&>(s);
        Block(c.body, code, parent, parent_outcome, prefix + c.name + ".");
        break;
      }
      default:
        break;
    }
  }

  BranchRegistry& reg_;
};

}  // namespace

BranchRegistry Instrument(lang::Module& module) {
  BranchRegistry reg;
  reg.module = module.name;
  Instrumenter(reg).Module(module);
  for (const auto& co : reg.code_objects) {
    if (co.predicates.empty()) {
      reg.goals.push_back({co.id, -1, true});
      continue;
    }
    for (int p : co.predicates) {
      reg.goals.push_back({co.id, p, true});
      reg.goals.push_back({co.id, p, false});
    }
  }
  return reg;
}

BranchRegistry Instrument(lang::Runtime& rt, const std::string& module) {
  lang::Module* ast = nullptr;
  try {
    ast = rt.ModuleAst(module);
  } catch (const std::exception& e) {
    throw InstrumentationError("cannot instrument '" + module + "': " + e.what());
  }
  if (ast == nullptr) throw InstrumentationError("module '" + module + "' not found");
  return Instrument(*ast);
}

CoverageTracer::CoverageTracer(const BranchRegistry& registry)
    : true_distance(registry.predicates.size(), kUnreached),
      false_distance(registry.predicates.size(), kUnreached),
      true_taken(registry.predicates.size(), 0),
      false_taken(registry.predicates.size(), 0),
      entered(registry.code_objects.size(), 0),
      registry_(registry) {}

void CoverageTracer::EnterCodeObject(int code_object_id) {
  if (code_object_id >= 0 && static_cast<std::size_t>(code_object_id) < entered.size()) entered[code_object_id] = 1;
}

void CoverageTracer::Predicate(int predicate_id, bool outcome, double t, double f) {
  if (predicate_id < 0 || static_cast<std::size_t>(predicate_id) >= true_distance.size()) return;
  true_distance[predicate_id] = std::min(true_distance[predicate_id], outcome ? 0.0 : t);
  false_distance[predicate_id] = std::min(false_distance[predicate_id], outcome ? f : 0.0);
  (outcome ? true_taken : false_taken)[predicate_id] = 1;
}

std::vector<int> CoverageTracer::CoveredGoals() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < registry_.goals.size(); ++i) {
    const auto& g = registry_.goals[i];
    bool hit = g.predicate < 0 ? entered[g.code_object] != 0
                               : (g.outcome ? true_taken[g.predicate] : false_taken[g.predicate]) != 0;
    if (hit) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace tracegen::exec
