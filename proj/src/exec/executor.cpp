#include "tracegen/exec/executor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tracegen/infer/inference.hpp"

namespace tracegen::exec {

using lang::Value;
using types::GradualType;

ClusterTypeMapper::ClusterTypeMapper(const analysis::TestCluster& cluster,
                                     std::map<std::string, types::ClassRef>* extra)
    : cluster_(cluster), extra_(extra) {}

types::ClassRef ClusterTypeMapper::ClassRefOf(const lang::ClassObject* cls) {
  if (cls == nullptr) return nullptr;
  std::string name = cls->qualname();
  if (auto ref = cluster_.FindClass(name)) return ref;
  if (auto it = extra_->find(name); it != extra_->end()) return it->second;
  auto info = std::make_shared<types::ClassInfo>();
  info->qualified_name = name;
  info->builtin = cls->builtin != lang::BuiltinKind::kNone;
  for (const auto& b : cls->bases) info->superclasses.push_back(ClassRefOf(b.get()));
  for (const auto& [attr, v] : cls->attrs.entries()) info->declared_attributes.insert(attr);
  (*extra_)[name] = info;
  return info;
}

GradualType ClusterTypeMapper::TypeOfValue(const Value& v) { return TypeOf(v, 0); }

GradualType ClusterTypeMapper::TypeOf(const Value& raw, int depth) {
  const Value& v = lang::Interpreter::Unwrap(raw);
  auto builtin = [this](const char* name) { return GradualType::Instance(cluster_.Builtin(name)); };
  if (v.is_none()) return GradualType::None();
  if (v.is_bool()) return builtin("bool");
  if (v.is_int()) return builtin("int");
  if (v.is_float()) return builtin("float");
  if (v.is_str()) return builtin("str");
  if (depth > 3) return GradualType::Any();
  if (auto* l = v.as<lang::ListObject>()) {
    return GradualType::List(l->items.empty() ? GradualType::Any() : TypeOf(l->items.front(), depth + 1));
  }
  if (auto* s = v.as<lang::SetObject>()) {
    return GradualType::Set(s->items.empty() ? GradualType::Any() : TypeOf(s->items.front(), depth + 1));
  }
  if (auto* d = v.as<lang::DictObject>()) {
    if (d->items.empty()) return GradualType::Dict(GradualType::Any(), GradualType::Any());
    return GradualType::Dict(TypeOf(d->items.front().first, depth + 1), TypeOf(d->items.front().second, depth + 1));
  }
  if (auto* t = v.as<lang::TupleObject>()) {
    std::vector<GradualType> slots;
    for (const auto& item : t->items) slots.push_back(TypeOf(item, depth + 1));
    return GradualType::Tuple(std::move(slots));
  }
  if (auto* inst = v.as<lang::InstanceObject>()) return GradualType::Instance(ClassRefOf(inst->cls.get()));
  return GradualType::Any();
}

Executor::Executor(lang::Runtime& rt, analysis::TestCluster& cluster, const BranchRegistry& registry,
                   ExecutorOptions options)
    : rt_(rt), cluster_(cluster), registry_(registry), options_(options) {}

ExecutionResult Executor::ExecuteRegular(const TestCase& test) {
  ++regular_runs_;
  ExecutionResult r = Run(test, false);
  for (const auto& [index, type] : r.recorded_returns) {
    infer::RecordReturn(cluster_, test.statements[index].callable, type, options_.union_cap);
  }
  return r;
}

ExecutionResult Executor::ExecuteProxied(const TestCase& test) {
  ++proxied_runs_;
  ExecutionResult r = Run(test, true);
  for (const auto& [tag, trace] : r.traces) {
    if (!trace.empty()) cluster_.traces[tag].Merge(trace);
  }
  return r;
}

ExecutionResult Executor::ExecuteWithPolicy(const TestCase& test, double p, std::mt19937_64& rng) {
  ExecutionResult r = ExecuteRegular(test);
  if (infer::UniformReal(rng) < p) ExecuteProxied(test);
  return r;
}

namespace {

bool IsScalar(const Value& v) { return v.is_none() || v.is_bool() || v.is_int() || v.is_float() || v.is_str(); }

Value PrimitiveValue(const Primitive& p) {
  return std::visit(
      [](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return Value::Int(x);
        if constexpr (std::is_same_v<T, double>) return Value::Float(x);
        if constexpr (std::is_same_v<T, std::string>) return Value::Str(x);
        if constexpr (std::is_same_v<T, bool>) return Value::Bool(x);
      },
      p);
}

Value Global(lang::Interpreter& interp, const std::string& module, const std::string& name) {
  lang::ModuleObject& m = interp.Import(module);
  const Value* v = m.globals.Find(name);
  if (v == nullptr) interp.Raise("NameError", "name '" + name + "' is not defined");
  return *v;
}

}  // namespace

ExecutionResult Executor::Run(const TestCase& test, bool proxied) {
  auto start = std::chrono::steady_clock::now();
  ExecutionResult r;
  r.proxied = proxied;
  lang::Interpreter interp(rt_);
  CoverageTracer tracer(registry_);
  ClusterTypeMapper mapper(cluster_, &extra_classes_);
  interp.SetDeadline(start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(options_.timeout_seconds)));
  {
    std::optional<trace::ProxySession> session;
    std::optional<trace::TypecheckShim> shim;
    std::vector<Value> slots;
    try {
      interp.Import(cluster_.module_name);
      if (proxied) {
        session.emplace(interp, mapper, options_.proxy_depth);
        shim.emplace(interp);
      } else {
        interp.SetTracer(&tracer);
      }
      for (std::size_t i = 0; i < test.statements.size(); ++i) {
        const Statement& s = test.statements[i];
        Value result;
        try {
          switch (s.kind) {
            case StatementKind::kPrimitive:
              result = PrimitiveValue(s.value);
              break;
            case StatementKind::kNone:
              break;
            case StatementKind::kCollection: {
              std::vector<Value> items;
              for (int a : s.args) items.push_back(slots[a]);
              switch (s.collection) {
                case types::CollectionKind::kList:
                  result = interp.NewList(std::move(items));
                  break;
                case types::CollectionKind::kTupleVariadic:
                  result = interp.NewTuple(std::move(items));
                  break;
                case types::CollectionKind::kSet: {
                  result = interp.NewSet();
                  for (auto& item : items) interp.SetAdd(*result.as<lang::SetObject>(), item);
                  break;
                }
                case types::CollectionKind::kDict: {
                  result = interp.NewDict();
                  for (std::size_t k = 0; k + 1 < items.size(); k += 2) {
                    interp.DictSet(*result.as<lang::DictObject>(), items[k], items[k + 1]);
                  }
                  break;
                }
              }
              break;
            }
            case StatementKind::kConstruct:
            case StatementKind::kCall: {
              const auto& c = cluster_.callables.at(s.callable);
              std::size_t first = 0;
              Value callee;
              if (c.kind == analysis::CallableKind::kMethod) {
                callee = interp.GetAttr(slots[s.args.at(0)], c.name);
                first = 1;
              } else {
                callee = Global(interp, c.module, c.kind == analysis::CallableKind::kConstructor ? c.class_name : c.name);
              }
              std::vector<Value> args;
              for (std::size_t k = first; k < s.args.size(); ++k) {
                Value a = slots[s.args[k]];
                std::size_t param = k - first;
                if (session && !a.is_none() && param < c.parameters.size()) {
                  a = session->Wrap(a, {c.id, c.parameters[param].name});
                }
                args.push_back(std::move(a));
              }
              result = interp.Call(callee, args);
              if (!proxied) {
                GradualType observed = s.kind == StatementKind::kConstruct ? GradualType::None()
                                                                           : mapper.TypeOfValue(result);
                r.recorded_returns[static_cast<int>(i)] = observed;
                const Value& plain = lang::Interpreter::Unwrap(result);
                if (IsScalar(plain) && s.kind == StatementKind::kCall) {
                  std::string repr = interp.Repr(plain);
                  if (repr.size() <= 200) r.scalar_results[static_cast<int>(i)] = repr;
                }
              }
              break;
            }
          }
        } catch (const lang::HostError& e) {
          r.outcomes.push_back({false, interp.ExceptionName(e.exc)});
          break;
        } catch (const std::bad_alloc&) {
          r.outcomes.push_back({false, "MemoryError"});
          break;
        } catch (const std::length_error&) {
          r.outcomes.push_back({false, "MemoryError"});
          break;
        }
        slots.push_back(std::move(result));
        r.outcomes.push_back({true, ""});
      }
    } catch (const lang::TimeoutSignal&) {
      r.timed_out = true;
      r.outcomes.push_back({false, "Timeout"});
    } catch (const lang::HostError& e) {
      // The subject itself failed to import.
      r.outcomes.push_back({false, interp.ExceptionName(e.exc)});
    }
    interp.SetTracer(nullptr);
    if (session) r.traces = session->ExtractAndReset();
  }
  if (!proxied) {
    r.covered_goals = tracer.CoveredGoals();
    r.true_distance = std::move(tracer.true_distance);
    r.false_distance = std::move(tracer.false_distance);
    r.entered = std::move(tracer.entered);
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

double Executor::GoalDistance(const ExecutionResult& r, int goal) const {
  if (std::binary_search(r.covered_goals.begin(), r.covered_goals.end(), goal)) return 0.0;
  auto norm = [](double d) { return d / (d + 1.0); };
  const BranchGoal& g = registry_.goals[goal];
  bool entered = static_cast<std::size_t>(g.code_object) < r.entered.size() && r.entered[g.code_object];
  if (g.predicate < 0) return entered ? 0.0 : 1.0;
  auto toward = [&r](int pred, bool outcome) {
    if (static_cast<std::size_t>(pred) >= r.true_distance.size()) return CoverageTracer::kUnreached;
    return outcome ? r.true_distance[pred] : r.false_distance[pred];
  };
  double d = toward(g.predicate, g.outcome);
  if (std::isfinite(d)) return norm(std::max(d, 1e-9));
  double level = 1.0;
  int q = g.predicate;
  while (registry_.predicates[q].parent >= 0) {
    const PredicateInfo& p = registry_.predicates[q];
    double dp = toward(p.parent, p.parent_outcome);
    if (std::isfinite(dp)) return level + norm(dp);
    level += 1.0;
    q = p.parent;
  }
  return entered ? level : level + 1.0;
}

}  // namespace tracegen::exec
