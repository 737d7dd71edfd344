#include "tracegen/lang/interpreter.hpp"

#include <algorithm>
#include <cmath>

#include "tracegen/lang/parser.hpp"

namespace tracegen::lang {

struct Frame {
  ModuleObject* module;
  AttrTable* locals;  // null at module level
  Value ret;
  std::string qual_prefix;
};

namespace {

constexpr double kMaxDistance = 1e12;

struct DepthGuard {
  int& depth;
  ~DepthGuard() { --depth; }
};

double Clamp(double d) {
  if (!std::isfinite(d) || d > kMaxDistance) return kMaxDistance;
  return d < 0 ? 0 : d;
}

Value FromLiteral(const Literal& lit) {
  switch (lit.index()) {
    case 0: return Value();
    case 1: return Value::Bool(std::get<bool>(lit));
    case 2: return Value::Int(std::get<std::int64_t>(lit));
    case 3: return Value::Float(std::get<double>(lit));
    default: return Value::Str(std::get<std::string>(lit));
  }
}

std::vector<ClassObject*> Linearize(ClassObject* cls) {
  std::vector<std::vector<ClassObject*>> seqs;
  for (const auto& b : cls->bases) seqs.push_back(b->mro);
  std::vector<ClassObject*> direct;
  for (const auto& b : cls->bases) direct.push_back(b.get());
  seqs.push_back(direct);
  std::vector<ClassObject*> out{cls};
  while (true) {
    std::erase_if(seqs, [](const auto& s) { return s.empty(); });
    if (seqs.empty()) return out;
    ClassObject* pick = nullptr;
    for (const auto& s : seqs) {
      ClassObject* head = s.front();
      bool in_tail = std::any_of(seqs.begin(), seqs.end(), [&](const auto& o) {
        return std::find(o.begin() + 1, o.end(), head) != o.end();
      });
      if (!in_tail) {
        pick = head;
        break;
      }
    }
    if (pick == nullptr) return {};
    out.push_back(pick);
    for (auto& s : seqs) {
      if (s.front() == pick) s.erase(s.begin());
    }
  }
}

}  // namespace

double Levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[b.size()]);
}

Interpreter::Interpreter(Runtime& rt) : rt_(rt), builtins_(rt.builtins()) {}

Interpreter::~Interpreter() {
  for (auto& w : heap_) {
    if (auto o = w.lock()) o->ClearReferences();
  }
  modules_.clear();
}

void Interpreter::CompactHeap() {
  std::erase_if(heap_, [](const auto& w) { return w.expired(); });
  compact_at_ = std::max<std::size_t>(4096, heap_.size() * 2);
}

void Interpreter::CheckDeadline() {
  if (deadline_ && std::chrono::steady_clock::now() > *deadline_) throw TimeoutSignal();
}

void Interpreter::OverrideBuiltin(const std::string& name, Value v) { builtins_.Set(name, std::move(v)); }

void Interpreter::RestoreBuiltin(const std::string& name) {
  if (const Value* orig = rt_.builtins().Find(name)) {
    builtins_.Set(name, *orig);
  } else {
    builtins_.Erase(name);
  }
}

// ---------------------------------------------------------------------------
// Modules

ModuleObject* Interpreter::FindModule(const std::string& name) const {
  auto it = modules_.find(name);
  return it == modules_.end() ? nullptr : it->second.get();
}

ModuleObject& Interpreter::Import(const std::string& name) {
  if (auto it = modules_.find(name); it != modules_.end()) return *it->second;
  if (rt_.IsNativeModule(name)) {
    auto m = New<ModuleObject>(name, nullptr);
    modules_[name] = m;
    m->globals.Set("__name__", Value::Str(name));
    InstallNativeModule(name, *m);
    return *m;
  }
  Module* ast = nullptr;
  try {
    ast = rt_.ModuleAst(name);
  } catch (const ParseError& e) {
    Raise("SyntaxError", e.what());
  }
  if (ast == nullptr) Raise("ImportError", "No module named '" + name + "'");
  return LoadModule(name, *ast);
}

ModuleObject& Interpreter::ExecModule(const Module& module) { return LoadModule(module.name, module); }

ModuleObject& Interpreter::LoadModule(const std::string& name, const Module& ast) {
  auto m = New<ModuleObject>(name, &ast);
  modules_[name] = m;
  m->globals.Set("__name__", Value::Str(name));
  Frame f{m.get(), nullptr, Value(), ""};
  try {
    ExecBlock(ast.body, f);
  } catch (...) {
    modules_.erase(name);
    throw;
  }
  return *m;
}

// ---------------------------------------------------------------------------
// Statements

Interpreter::Flow Interpreter::ExecBlock(const Block& block, Frame& f) {
  for (const auto& s : block) {
    if ((++steps_ & 1023) == 0) CheckDeadline();
    Flow fl = Exec(*s, f);
    if (fl != Flow::kNormal) return fl;
  }
  return Flow::kNormal;
}

Interpreter::Flow Interpreter::Exec(const Stmt& s, Frame& f) {
  switch (s.kind) {
    case StmtKind::kExpr:
      Eval(*static_cast<const ExprStmt&>(s).value, f);
      return Flow::kNormal;
    case StmtKind::kAssign: {
      const auto& a = static_cast<const AssignStmt&>(s);
      Value v = Eval(*a.value, f);
      Assign(*a.target, std::move(v), f);
      return Flow::kNormal;
    }
    case StmtKind::kAugAssign: {
      const auto& a = static_cast<const AugAssignStmt&>(s);
      auto combine = [&](const Value& cur) {
        Value rhs = Eval(*a.value, f);
        if (a.op == BinaryOp::kAdd) {
          if (auto* l = cur.as<ListObject>()) {
            for (auto& item : Iterate(rhs)) l->items.push_back(std::move(item));
            return cur;
          }
        }
        return Binary(a.op, cur, rhs);
      };
      switch (a.target->kind) {
        case ExprKind::kName: {
          const auto& n = static_cast<const NameExpr&>(*a.target);
          Value cur = EvalName(n, f);
          StoreName(n.id, combine(cur), f);
          break;
        }
        case ExprKind::kAttribute: {
          const auto& at = static_cast<const AttributeExpr&>(*a.target);
          Value obj = Eval(*at.value, f);
          Value cur = GetAttr(obj, at.attr);
          SetAttr(obj, at.attr, combine(cur));
          break;
        }
        case ExprKind::kSubscript: {
          const auto& sub = static_cast<const SubscriptExpr&>(*a.target);
          Value obj = Eval(*sub.value, f);
          Value key = Eval(*sub.index, f);
          Value cur = GetItem(obj, key);
          SetItem(obj, key, combine(cur));
          break;
        }
        default:
          Raise("SyntaxError", "illegal expression for augmented assignment");
      }
      return Flow::kNormal;
    }
    case StmtKind::kIf: {
      const auto& i = static_cast<const IfStmt&>(s);
      if (EvalTest(*i.test, f, i.predicate_id)) return ExecBlock(i.body, f);
      return ExecBlock(i.orelse, f);
    }
    case StmtKind::kWhile: {
      const auto& w = static_cast<const WhileStmt&>(s);
      while (EvalTest(*w.test, f, w.predicate_id)) {
        CheckDeadline();
        Flow fl = ExecBlock(w.body, f);
        if (fl == Flow::kBreak) break;
        if (fl == Flow::kReturn) return fl;
      }
      return Flow::kNormal;
    }
    case StmtKind::kFor: {
      const auto& fs = static_cast<const ForStmt&>(s);
      Value it = Eval(*fs.iter, f);
      std::vector<Value> items = Iterate(it);
      bool probe = tracer_ != nullptr && fs.predicate_id >= 0;
      for (auto& item : items) {
        if (probe) tracer_->Predicate(fs.predicate_id, true, 0.0, 1.0);
        Assign(*fs.target, std::move(item), f);
        Flow fl = ExecBlock(fs.body, f);
        if (fl == Flow::kBreak) return Flow::kNormal;
        if (fl == Flow::kReturn) return fl;
      }
      if (probe) tracer_->Predicate(fs.predicate_id, false, 1.0, 0.0);
      return Flow::kNormal;
    }
    case StmtKind::kReturn: {
      const auto& r = static_cast<const ReturnStmt&>(s);
      f.ret = r.value ? Eval(*r.value, f) : Value();
      return Flow::kReturn;
    }
    case StmtKind::kPass:
      return Flow::kNormal;
    case StmtKind::kBreak:
      return Flow::kBreak;
    case StmtKind::kContinue:
      return Flow::kContinue;
    case StmtKind::kRaise:
      ExecRaise(static_cast<const RaiseStmt&>(s), f);
    case StmtKind::kTry:
      return ExecTry(static_cast<const TryStmt&>(s), f);
    case StmtKind::kAssert: {
      const auto& a = static_cast<const AssertStmt&>(s);
      if (!Truthy(Eval(*a.test, f))) {
        std::string msg = a.msg ? Str(Eval(*a.msg, f)) : "";
        Raise("AssertionError", msg);
      }
      return Flow::kNormal;
    }
    case StmtKind::kImport:
      ExecImport(static_cast<const ImportStmt&>(s), f);
      return Flow::kNormal;
    case StmtKind::kImportFrom:
      ExecImportFrom(static_cast<const ImportFromStmt&>(s), f);
      return Flow::kNormal;
    case StmtKind::kFunctionDef:
      ExecFunctionDef(static_cast<const FunctionDefStmt&>(s), f);
      return Flow::kNormal;
    case StmtKind::kClassDef:
      ExecClassDef(static_cast<const ClassDefStmt&>(s), f);
      return Flow::kNormal;
  }
  return Flow::kNormal;
}

Interpreter::Flow Interpreter::ExecTry(const TryStmt& s, Frame& f) {
  Flow flow = Flow::kNormal;
  std::exception_ptr pending;
  try {
    flow = ExecBlock(s.body, f);
  } catch (HostError& err) {
    const ExceptHandler* handler = nullptr;
    Value exc = err.exc;
    try {
      for (const auto& h : s.handlers) {
        if (!h.type) {
          handler = &h;
          break;
        }
        Value t = Eval(*h.type, f);
        std::vector<Value> targets;
        if (auto* tup = t.as<TupleObject>()) {
          targets = tup->items;
        } else {
          targets.push_back(t);
        }
        bool match = std::any_of(targets.begin(), targets.end(), [&](const Value& c) {
          auto* cls = c.as<ClassObject>();
          return cls != nullptr && IsInstance(exc, cls);
        });
        if (match) {
          handler = &h;
          break;
        }
      }
      if (handler == nullptr) {
        pending = std::current_exception();
      } else {
        if (!handler->name.empty()) StoreName(handler->name, exc, f);
        handling_.push_back(exc);
        struct Pop {
          std::vector<Value>& v;
          ~Pop() { v.pop_back(); }
        } pop{handling_};
        flow = ExecBlock(handler->body, f);
      }
    } catch (HostError&) {
      pending = std::current_exception();
    }
  }
  if (!s.finalbody.empty()) {
    Flow ff = ExecBlock(s.finalbody, f);
    if (ff != Flow::kNormal) return ff;
  }
  if (pending) std::rethrow_exception(pending);
  return flow;
}

void Interpreter::ExecRaise(const RaiseStmt& s, Frame& f) {
  if (!s.exc) {
    if (handling_.empty()) Raise("RuntimeError", "No active exception to reraise");
    throw HostError{handling_.back()};
  }
  Value v = Eval(*s.exc, f);
  if (auto* cls = v.as<ClassObject>()) {
    if (cls->IsSubclassOf(rt_.base_exception_class())) {
      v = Instantiate(std::static_pointer_cast<ClassObject>(v.as_object()), {});
      throw HostError{v};
    }
  } else if (IsInstance(v, rt_.base_exception_class()) && v.as<ProxyObject>() == nullptr) {
    throw HostError{v};
  }
  Raise("TypeError", "exceptions must derive from BaseException");
}

void Interpreter::ExecFunctionDef(const FunctionDefStmt& s, Frame& f) {
  auto fn = New<FunctionObject>(&s, f.module, f.qual_prefix + s.name);
  for (const auto& p : s.params) {
    if (p.default_value) fn->defaults.push_back(Eval(*p.default_value, f));
  }
  StoreName(s.name, Value(std::static_pointer_cast<Object>(fn)), f);
}

void Interpreter::ExecClassDef(const ClassDefStmt& s, Frame& f) {
  std::vector<std::shared_ptr<ClassObject>> bases;
  for (const auto& b : s.bases) {
    Value bv = Eval(*b, f);
    auto* c = bv.as<ClassObject>();
    if (c == nullptr) Raise("TypeError", "bases must be classes");
    if (c->builtin != BuiltinKind::kNone && c->builtin != BuiltinKind::kObject &&
        c->builtin != BuiltinKind::kException) {
      Raise("TypeError", "subclassing '" + c->name + "' is not supported");
    }
    bases.push_back(std::static_pointer_cast<ClassObject>(bv.as_object()));
  }
  if (bases.empty()) bases.push_back(rt_.builtin_class_ref("object"));
  std::string qual = f.qual_prefix + s.name;
  auto cls = New<ClassObject>(qual, f.module->name, BuiltinKind::kNone);
  cls->bases = std::move(bases);
  cls->mro = Linearize(cls.get());
  if (cls->mro.empty()) {
    Raise("TypeError", "Cannot create a consistent method resolution order (MRO)");
  }
  cls->def = &s;
  AttrTable ns;
  Frame body{f.module, &ns, Value(), qual + "."};
  ExecBlock(s.body, body);
  cls->attrs = std::move(ns);
  StoreName(s.name, Value(std::static_pointer_cast<Object>(cls)), f);
}

void Interpreter::ExecImport(const ImportStmt& s, Frame& f) {
  ModuleObject& m = Import(s.module);
  auto ref = modules_.at(s.module);
  StoreName(s.alias.empty() ? s.module : s.alias, Value(std::static_pointer_cast<Object>(ref)), f);
  (void)m;
}

void Interpreter::ExecImportFrom(const ImportFromStmt& s, Frame& f) {
  ModuleObject& m = Import(s.module);
  for (const auto& [name, alias] : s.names) {
    const Value* v = m.globals.Find(name);
    if (v == nullptr) Raise("ImportError", "cannot import name '" + name + "' from '" + s.module + "'");
    StoreName(alias.empty() ? name : alias, *v, f);
  }
}

void Interpreter::StoreName(const std::string& name, Value v, Frame& f) {
  if (f.locals != nullptr) {
    f.locals->Set(name, std::move(v));
  } else {
    f.module->globals.Set(name, std::move(v));
  }
}

void Interpreter::Assign(const Expr& target, Value v, Frame& f) {
  switch (target.kind) {
    case ExprKind::kName:
      StoreName(static_cast<const NameExpr&>(target).id, std::move(v), f);
      return;
    case ExprKind::kAttribute: {
      const auto& a = static_cast<const AttributeExpr&>(target);
      SetAttr(Eval(*a.value, f), a.attr, std::move(v));
      return;
    }
    case ExprKind::kSubscript: {
      const auto& sub = static_cast<const SubscriptExpr&>(target);
      Value obj = Eval(*sub.value, f);
      Value key = Eval(*sub.index, f);
      SetItem(obj, key, std::move(v));
      return;
    }
    case ExprKind::kTuple:
    case ExprKind::kList: {
      const auto& seq = static_cast<const SequenceExpr&>(target);
      std::vector<Value> items = Iterate(v);
      if (items.size() > seq.elts.size()) {
        Raise("ValueError", "too many values to unpack (expected " + std::to_string(seq.elts.size()) + ")");
      }
      if (items.size() < seq.elts.size()) {
        Raise("ValueError", "not enough values to unpack (expected " + std::to_string(seq.elts.size()) +
                                ", got " + std::to_string(items.size()) + ")");
      }
      for (std::size_t i = 0; i < items.size(); ++i) Assign(*seq.elts[i], std::move(items[i]), f);
      return;
    }
    default:
      Raise("SyntaxError", "cannot assign to expression");
  }
}

// ---------------------------------------------------------------------------
// Predicates

bool Interpreter::EvalTest(const Expr& e, Frame& f, int predicate_id) {
  if (predicate_id < 0 || tracer_ == nullptr) return Truthy(Eval(e, f));
  Outcome o = EvalOutcome(e, f);
  tracer_->Predicate(predicate_id, o.value, Clamp(o.true_distance), Clamp(o.false_distance));
  return o.value;
}

Interpreter::Outcome Interpreter::EvalOutcome(const Expr& e, Frame& f) {
  switch (e.kind) {
    case ExprKind::kUnaryOp: {
      const auto& u = static_cast<const UnaryOpExpr&>(e);
      if (u.op != UnaryOp::kNot) break;
      Outcome o = EvalOutcome(*u.operand, f);
      return {!o.value, o.false_distance, o.true_distance};
    }
    case ExprKind::kBoolOp: {
      const auto& b = static_cast<const BoolOpExpr&>(e);
      Outcome l = EvalOutcome(*b.left, f);
      if (b.is_and) {
        if (!l.value) return {false, l.true_distance + 1.0, 0.0};
        Outcome r = EvalOutcome(*b.right, f);
        return {r.value, r.true_distance, std::min(l.false_distance, r.false_distance)};
      }
      if (l.value) return {true, 0.0, l.false_distance + 1.0};
      Outcome r = EvalOutcome(*b.right, f);
      return {r.value, std::min(l.true_distance, r.true_distance), r.false_distance};
    }
    case ExprKind::kCompare: {
      const auto& c = static_cast<const CompareExpr&>(e);
      if (c.ops.size() != 1) break;
      Value l = Eval(*c.left, f);
      Value r = Eval(*c.comparators[0], f);
      return CompareOutcome(c.ops[0], l, r);
    }
    default:
      break;
  }
  return TruthOutcome(Eval(e, f));
}

Interpreter::Outcome Interpreter::CompareOutcome(CompareOp op, const Value& a, const Value& b) {
  bool res = Compare(op, a, b);
  double t = res ? 0.0 : 1.0;
  double fl = res ? 1.0 : 0.0;
  if (a.is_number() && b.is_number()) {
    double x = a.number();
    double y = b.number();
    double diff = std::fabs(x - y);
    switch (op) {
      case CompareOp::kEq: return {res, diff, res ? 1.0 : 0.0};
      case CompareOp::kNotEq: return {res, res ? 0.0 : 1.0, diff};
      case CompareOp::kLt: return {res, res ? 0.0 : x - y + 1.0, res ? y - x : 0.0};
      case CompareOp::kLtE: return {res, res ? 0.0 : x - y, res ? y - x + 1.0 : 0.0};
      case CompareOp::kGt: return {res, res ? 0.0 : y - x + 1.0, res ? x - y : 0.0};
      case CompareOp::kGtE: return {res, res ? 0.0 : y - x, res ? x - y + 1.0 : 0.0};
      default: break;
    }
  } else if (a.is_str() && b.is_str()) {
    if (op == CompareOp::kEq) return {res, Levenshtein(a.as_str(), b.as_str()), fl};
    if (op == CompareOp::kNotEq) return {res, t, Levenshtein(a.as_str(), b.as_str())};
  }
  return {res, t, fl};
}

Interpreter::Outcome Interpreter::TruthOutcome(const Value& v) {
  bool res = Truthy(v);
  double size = -1;
  if (v.is_number()) {
    size = std::fabs(v.number());
  } else if (v.is_str()) {
    size = static_cast<double>(v.as_str().size());
  } else if (auto* l = v.as<ListObject>()) {
    size = static_cast<double>(l->items.size());
  } else if (auto* t = v.as<TupleObject>()) {
    size = static_cast<double>(t->items.size());
  } else if (auto* d = v.as<DictObject>()) {
    size = static_cast<double>(d->items.size());
  } else if (auto* s = v.as<SetObject>()) {
    size = static_cast<double>(s->items.size());
  }
  if (size < 0) return {res, res ? 0.0 : 1.0, res ? 1.0 : 0.0};
  return {res, res ? 0.0 : 1.0, res ? size : 0.0};
}

// ---------------------------------------------------------------------------
// Expressions

Value Interpreter::Eval(const Expr& e, Frame& f) {
  switch (e.kind) {
    case ExprKind::kConstant:
      return FromLiteral(static_cast<const ConstantExpr&>(e).value);
    case ExprKind::kName:
      return EvalName(static_cast<const NameExpr&>(e), f);
    case ExprKind::kAttribute: {
      const auto& a = static_cast<const AttributeExpr&>(e);
      return GetAttr(Eval(*a.value, f), a.attr);
    }
    case ExprKind::kSubscript:
      return EvalSubscript(static_cast<const SubscriptExpr&>(e), f);
    case ExprKind::kSlice:
      Raise("SyntaxError", "slice outside subscript");
    case ExprKind::kCall:
      return EvalCall(static_cast<const CallExpr&>(e), f);
    case ExprKind::kBinOp: {
      const auto& b = static_cast<const BinOpExpr&>(e);
      Value l = Eval(*b.left, f);
      Value r = Eval(*b.right, f);
      return Binary(b.op, l, r);
    }
    case ExprKind::kUnaryOp: {
      const auto& u = static_cast<const UnaryOpExpr&>(e);
      Value v = Eval(*u.operand, f);
      if (u.op == UnaryOp::kNot) return Value::Bool(!Truthy(v));
      return Unary(u.op, v);
    }
    case ExprKind::kBoolOp: {
      const auto& b = static_cast<const BoolOpExpr&>(e);
      Value l = Eval(*b.left, f);
      bool lt = Truthy(l);
      if (b.is_and ? !lt : lt) return l;
      return Eval(*b.right, f);
    }
    case ExprKind::kCompare:
      return EvalCompare(static_cast<const CompareExpr&>(e), f);
    case ExprKind::kIfExp: {
      const auto& i = static_cast<const IfExpExpr&>(e);
      return Truthy(Eval(*i.test, f)) ? Eval(*i.body, f) : Eval(*i.orelse, f);
    }
    case ExprKind::kList:
    case ExprKind::kTuple:
    case ExprKind::kSet: {
      const auto& s = static_cast<const SequenceExpr&>(e);
      std::vector<Value> items;
      items.reserve(s.elts.size());
      for (const auto& el : s.elts) items.push_back(Eval(*el, f));
      if (e.kind == ExprKind::kList) return NewList(std::move(items));
      if (e.kind == ExprKind::kTuple) return NewTuple(std::move(items));
      Value set = NewSet();
      for (auto& v : items) SetAdd(*set.as<SetObject>(), std::move(v));
      return set;
    }
    case ExprKind::kDict: {
      const auto& d = static_cast<const DictExpr&>(e);
      Value out = NewDict();
      for (std::size_t i = 0; i < d.keys.size(); ++i) {
        Value k = Eval(*d.keys[i], f);
        Value v = Eval(*d.values[i], f);
        DictSet(*out.as<DictObject>(), std::move(k), std::move(v));
      }
      return out;
    }
  }
  return Value();
}

Value Interpreter::EvalName(const NameExpr& e, Frame& f) {
  if (f.locals != nullptr) {
    if (const Value* v = f.locals->Find(e.id)) return *v;
  }
  if (const Value* v = f.module->globals.Find(e.id)) return *v;
  if (const Value* v = builtins_.Find(e.id)) return *v;
  Raise("NameError", "name '" + e.id + "' is not defined");
}

Value Interpreter::EvalCall(const CallExpr& e, Frame& f) {
  Value fn = Eval(*e.func, f);
  std::vector<Value> args;
  args.reserve(e.args.size());
  for (const auto& a : e.args) args.push_back(Eval(*a, f));
  return Call(fn, args);
}

Value Interpreter::EvalSubscript(const SubscriptExpr& e, Frame& f) {
  Value obj = Eval(*e.value, f);
  if (e.index->kind == ExprKind::kSlice) {
    const auto& s = static_cast<const SliceExpr&>(*e.index);
    Value lo = s.lower ? Eval(*s.lower, f) : Value();
    Value hi = s.upper ? Eval(*s.upper, f) : Value();
    return Slice(obj, lo, hi);
  }
  return GetItem(obj, Eval(*e.index, f));
}

Value Interpreter::EvalCompare(const CompareExpr& e, Frame& f) {
  Value left = Eval(*e.left, f);
  for (std::size_t i = 0; i < e.ops.size(); ++i) {
    Value right = Eval(*e.comparators[i], f);
    if (!Compare(e.ops[i], left, right)) return Value::Bool(false);
    left = std::move(right);
  }
  return Value::Bool(true);
}

// ---------------------------------------------------------------------------
// Calls

Value Interpreter::Call(const Value& callee, std::span<const Value> args) {
  Object* o = callee.object();
  if (o == nullptr) Raise("TypeError", "'" + ClassOf(callee)->name + "' object is not callable");
  switch (o->kind) {
    case ObjectKind::kFunction:
      return CallFunction(*static_cast<FunctionObject*>(o), args);
    case ObjectKind::kBuiltinFunction: {
      auto* b = static_cast<BuiltinFunction*>(o);
      if (b->strict) {
        for (const auto& a : args) {
          if (a.as<ProxyObject>() != nullptr) {
            Raise("TypeError", b->name + "() argument must be " + ClassOf(a)->name + ", not '" +
                                   TypeOf(a)->name + "'");
          }
        }
      }
      return b->fn(*this, args);
    }
    case ObjectKind::kBoundMethod: {
      auto* m = static_cast<BoundMethod*>(o);
      std::vector<Value> all;
      all.reserve(args.size() + 1);
      all.push_back(m->self);
      all.insert(all.end(), args.begin(), args.end());
      Value func = m->func;
      return Call(func, all);
    }
    case ObjectKind::kClass:
      return Instantiate(std::static_pointer_cast<ClassObject>(callee.as_object()), args);
    case ObjectKind::kInstance: {
      if (auto r = CallSpecial(callee, "__call__", args)) return *r;
      break;
    }
    case ObjectKind::kProxy: {
      auto* p = static_cast<ProxyObject*>(o);
      p->recorder->OnSpecialMethod("__call__", args);
      Value inner = p->wrapped;
      return Call(inner, args);
    }
    default:
      break;
  }
  Raise("TypeError", "'" + ClassOf(callee)->name + "' object is not callable");
}

Value Interpreter::CallFunction(FunctionObject& fn, std::span<const Value> args) {
  const auto& params = fn.def->params;
  const std::size_t n = params.size();
  const std::size_t ndef = fn.defaults.size();
  const std::string& name = fn.def->name;
  if (args.size() > n) {
    Raise("TypeError", name + "() takes " + std::to_string(n) + " positional argument" +
                           (n == 1 ? "" : "s") + " but " + std::to_string(args.size()) +
                           (args.size() == 1 ? " was" : " were") + " given");
  }
  if (args.size() < n - ndef) {
    std::size_t missing = n - ndef - args.size();
    Raise("TypeError", name + "() missing " + std::to_string(missing) + " required positional argument" +
                           (missing == 1 ? "" : "s"));
  }
  if (++depth_ > kRecursionLimit) {
    --depth_;
    Raise("RecursionError", "maximum recursion depth exceeded");
  }
  DepthGuard guard{depth_};
  AttrTable locals;
  for (std::size_t i = 0; i < n; ++i) {
    locals.Set(params[i].name, i < args.size() ? args[i] : fn.defaults[i - (n - ndef)]);
  }
  if (tracer_ != nullptr && fn.def->code_object_id >= 0) tracer_->EnterCodeObject(fn.def->code_object_id);
  Frame f{fn.module, &locals, Value(), ""};
  Flow fl = ExecBlock(fn.def->body, f);
  return fl == Flow::kReturn ? f.ret : Value();
}

Value Interpreter::Instantiate(const std::shared_ptr<ClassObject>& cls, std::span<const Value> args) {
  switch (cls->builtin) {
    case BuiltinKind::kNone:
    case BuiltinKind::kObject:
    case BuiltinKind::kException:
      break;
    default: {
      const Value* ctor = cls->attrs.Find("__new__");
      if (ctor == nullptr) Raise("TypeError", "cannot create '" + cls->name + "' instances");
      return Call(*ctor, args);
    }
  }
  Value self(std::static_pointer_cast<Object>(New<InstanceObject>(cls)));
  if (const Value* init = cls->Lookup("__init__")) {
    std::vector<Value> all;
    all.reserve(args.size() + 1);
    all.push_back(self);
    all.insert(all.end(), args.begin(), args.end());
    Value fn = *init;
    Call(fn, all);
  }
  return self;
}

std::optional<Value> Interpreter::CallSpecial(const Value& obj, std::string_view name,
                                              std::span<const Value> args) {
  auto* inst = obj.as<InstanceObject>();
  if (inst == nullptr) return std::nullopt;
  const Value* m = inst->cls->Lookup(name);
  if (m == nullptr || m->as<FunctionObject>() == nullptr) return std::nullopt;
  std::vector<Value> all;
  all.reserve(args.size() + 1);
  all.push_back(obj);
  all.insert(all.end(), args.begin(), args.end());
  Value fn = *m;
  return Call(fn, all);
}

// ---------------------------------------------------------------------------
// Attributes

const Value& Interpreter::Unwrap(const Value& v) {
  const Value* cur = &v;
  while (auto* p = cur->as<ProxyObject>()) cur = &p->wrapped;
  return *cur;
}

bool Interpreter::IsCallable(const Value& v) const {
  Object* o = v.object();
  if (o == nullptr) return false;
  switch (o->kind) {
    case ObjectKind::kFunction:
    case ObjectKind::kBuiltinFunction:
    case ObjectKind::kBoundMethod:
    case ObjectKind::kClass:
      return true;
    case ObjectKind::kInstance:
      return static_cast<InstanceObject*>(o)->cls->Lookup("__call__") != nullptr;
    case ObjectKind::kProxy:
      return IsCallable(static_cast<ProxyObject*>(o)->wrapped);
    default:
      return false;
  }
}

Value Interpreter::BindIfMethod(const Value& self, const Value& attr) {
  if (attr.as<FunctionObject>() != nullptr || attr.as<BuiltinFunction>() != nullptr) {
    return Value(std::static_pointer_cast<Object>(New<BoundMethod>(self, attr)));
  }
  return attr;
}

std::optional<Value> Interpreter::LookupAttr(const Value& obj, std::string_view name) {
  if (name == "__class__") return ClassValue(obj, true);
  Object* o = obj.object();
  if (o != nullptr) {
    switch (o->kind) {
      case ObjectKind::kInstance: {
        auto* inst = static_cast<InstanceObject*>(o);
        if (const Value* v = inst->attrs.Find(name)) return *v;
        if (const Value* v = inst->cls->Lookup(name)) return BindIfMethod(obj, *v);
        return std::nullopt;
      }
      case ObjectKind::kClass: {
        auto* cls = static_cast<ClassObject*>(o);
        if (name == "__name__") {
          auto dot = cls->name.rfind('.');
          return Value::Str(dot == std::string::npos ? cls->name : cls->name.substr(dot + 1));
        }
        if (name == "__qualname__") return Value::Str(cls->name);
        if (name == "__module__") return Value::Str(cls->module.empty() ? "builtins" : cls->module);
        if (name == "__bases__") {
          std::vector<Value> bs;
          for (const auto& b : cls->bases) bs.emplace_back(std::static_pointer_cast<Object>(b));
          return NewTuple(std::move(bs));
        }
        if (const Value* v = cls->Lookup(name)) return *v;
        return std::nullopt;
      }
      case ObjectKind::kModule: {
        if (const Value* v = static_cast<ModuleObject*>(o)->globals.Find(name)) return *v;
        return std::nullopt;
      }
      case ObjectKind::kFunction:
        if (name == "__name__") return Value::Str(static_cast<FunctionObject*>(o)->def->name);
        if (name == "__qualname__") return Value::Str(static_cast<FunctionObject*>(o)->qualname);
        return std::nullopt;
      case ObjectKind::kBuiltinFunction:
        if (name == "__name__") return Value::Str(static_cast<BuiltinFunction*>(o)->name);
        return std::nullopt;
      default:
        break;
    }
  }
  if (const Value* v = ClassOf(obj)->Lookup(name)) return BindIfMethod(obj, *v);
  return std::nullopt;
}

Value Interpreter::GetAttr(const Value& obj, std::string_view name) {
  if (auto* p = obj.as<ProxyObject>()) {
    if (name == "__class__") return ClassValue(obj, true);
    auto rec = p->recorder;
    Value inner = p->wrapped;
    rec->OnAttribute(name);
    Value r = GetAttr(inner, name);
    if (!r.is_none() && !IsCallable(r)) {
      if (auto child = rec->AttributeRecorder(name)) return NewProxy(std::move(r), std::move(child));
    }
    return r;
  }
  if (auto r = LookupAttr(obj, name)) return *r;
  if (auto* inst = obj.as<InstanceObject>()) {
    if (inst->cls->Lookup("__getattr__") != nullptr) {
      Value n = Value::Str(std::string(name));
      return *CallSpecial(obj, "__getattr__", std::span<const Value>(&n, 1));
    }
  }
  if (auto* cls = obj.as<ClassObject>()) {
    Raise("AttributeError", "type object '" + cls->name + "' has no attribute '" + std::string(name) + "'");
  }
  if (auto* m = obj.as<ModuleObject>()) {
    Raise("AttributeError", "module '" + m->name + "' has no attribute '" + std::string(name) + "'");
  }
  Raise("AttributeError", "'" + ClassOf(obj)->name + "' object has no attribute '" + std::string(name) + "'");
}

std::optional<Value> Interpreter::TryGetAttr(const Value& obj, std::string_view name) {
  try {
    return GetAttr(obj, name);
  } catch (HostError& e) {
    if (IsInstance(e.exc, rt_.builtin_class("AttributeError"))) return std::nullopt;
    throw;
  }
}

void Interpreter::SetAttr(const Value& obj, std::string_view name, Value v) {
  Object* o = obj.object();
  if (o != nullptr) {
    switch (o->kind) {
      case ObjectKind::kProxy: {
        auto* p = static_cast<ProxyObject*>(o);
        p->recorder->OnSpecialMethod("__setattr__", std::span<const Value>(&v, 1));
        Value inner = p->wrapped;
        SetAttr(inner, name, std::move(v));
        return;
      }
      case ObjectKind::kInstance:
        static_cast<InstanceObject*>(o)->attrs.Set(name, std::move(v));
        return;
      case ObjectKind::kClass: {
        auto* cls = static_cast<ClassObject*>(o);
        if (cls->builtin != BuiltinKind::kNone) {
          Raise("TypeError", "cannot set '" + std::string(name) + "' attribute of immutable type '" +
                                 cls->name + "'");
        }
        cls->attrs.Set(name, std::move(v));
        return;
      }
      case ObjectKind::kModule:
        static_cast<ModuleObject*>(o)->globals.Set(name, std::move(v));
        return;
      default:
        break;
    }
  }
  Raise("AttributeError", "'" + ClassOf(obj)->name + "' object has no attribute '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Classes

ClassObject* Interpreter::TypeOf(const Value& v) const {
  if (v.as<ProxyObject>() != nullptr) return rt_.proxy_class();
  return ClassOf(v);
}

ClassObject* Interpreter::ClassOf(const Value& v) const {
  if (v.is_none()) return rt_.none_class();
  if (v.is_bool()) return rt_.bool_class();
  if (v.is_int()) return rt_.int_class();
  if (v.is_float()) return rt_.float_class();
  if (v.is_str()) return rt_.str_class();
  Object* o = v.object();
  switch (o->kind) {
    case ObjectKind::kList: return rt_.list_class();
    case ObjectKind::kTuple: return rt_.tuple_class();
    case ObjectKind::kDict: return rt_.dict_class();
    case ObjectKind::kSet: return rt_.set_class();
    case ObjectKind::kFunction:
    case ObjectKind::kBuiltinFunction:
    case ObjectKind::kBoundMethod: return rt_.function_class();
    case ObjectKind::kClass: return rt_.type_class();
    case ObjectKind::kInstance: return static_cast<InstanceObject*>(o)->cls.get();
    case ObjectKind::kModule: return rt_.module_class();
    case ObjectKind::kProxy: return ClassOf(static_cast<ProxyObject*>(o)->wrapped);
  }
  return rt_.object_class();
}

Value Interpreter::ClassValue(const Value& v, bool masquerade) const {
  const Value& base = masquerade ? Unwrap(v) : v;
  if (auto* inst = base.as<InstanceObject>()) return Value(std::static_pointer_cast<Object>(inst->cls));
  ClassObject* cls = masquerade ? ClassOf(base) : TypeOf(base);
  return Value(std::static_pointer_cast<Object>(rt_.builtin_class_ref(cls->name)));
}

bool Interpreter::IsInstance(const Value& v, const ClassObject* cls) const {
  return ClassOf(v)->IsSubclassOf(cls);
}

// ---------------------------------------------------------------------------
// Exceptions

Value Interpreter::MakeException(std::string_view cls_name, const std::string& message) {
  const auto& cls = rt_.builtin_class_ref(cls_name);
  auto inst = New<InstanceObject>(cls);
  std::vector<Value> args;
  if (!message.empty()) args.push_back(Value::Str(message));
  inst->attrs.Set("args", NewTuple(std::move(args)));
  return Value(std::static_pointer_cast<Object>(inst));
}

void Interpreter::Raise(std::string_view cls_name, const std::string& message) {
  throw HostError{MakeException(cls_name, message)};
}

std::string Interpreter::ExceptionName(const Value& exc) const { return ClassOf(exc)->name; }

std::string Interpreter::ExceptionMessage(const Value& exc) { return Str(exc); }

// ---------------------------------------------------------------------------
// Containers

Value Interpreter::NewList(std::vector<Value> items) {
  return Value(std::static_pointer_cast<Object>(New<ListObject>(std::move(items))));
}

Value Interpreter::NewTuple(std::vector<Value> items) {
  return Value(std::static_pointer_cast<Object>(New<TupleObject>(std::move(items))));
}

Value Interpreter::NewDict() { return Value(std::static_pointer_cast<Object>(New<DictObject>())); }

Value Interpreter::NewSet() { return Value(std::static_pointer_cast<Object>(New<SetObject>())); }

Value Interpreter::NewProxy(Value wrapped, std::shared_ptr<ProxyRecorder> recorder) {
  return Value(std::static_pointer_cast<Object>(New<ProxyObject>(std::move(wrapped), std::move(recorder))));
}

const Value* Interpreter::DictFind(DictObject& d, const Value& key) {
  CheckHashable(key);
  const Value& k = Unwrap(key);
  for (auto& [ek, ev] : d.items) {
    if (Equals(ek, k)) return &ev;
  }
  return nullptr;
}

void Interpreter::DictSet(DictObject& d, Value key, Value v) {
  CheckHashable(key);
  for (auto& [ek, ev] : d.items) {
    if (Equals(ek, Unwrap(key))) {
      ev = std::move(v);
      return;
    }
  }
  d.items.emplace_back(std::move(key), std::move(v));
}

void Interpreter::SetAdd(SetObject& s, Value v) {
  CheckHashable(v);
  for (const auto& e : s.items) {
    if (Equals(e, Unwrap(v))) return;
  }
  s.items.push_back(std::move(v));
}

void Interpreter::CheckHashable(const Value& v) {
  if (auto* p = v.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod("__hash__", {});
    Value inner = p->wrapped;
    CheckHashable(inner);
    return;
  }
  if (v.as<ListObject>() || v.as<DictObject>() || v.as<SetObject>()) {
    Raise("TypeError", "unhashable type: '" + ClassOf(v)->name + "'");
  }
  if (auto* t = v.as<TupleObject>()) {
    for (const auto& e : t->items) CheckHashable(e);
  }
}

}  // namespace tracegen::lang
