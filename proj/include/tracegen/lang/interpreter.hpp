#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tracegen/lang/ast.hpp"
#include "tracegen/lang/objects.hpp"
#include "tracegen/lang/value.hpp"

namespace tracegen::lang {

/// A guest-level exception in flight. `exc` is an exception instance.
struct HostError {
  Value exc;
};

/// Raised when the session deadline passes. Guest code cannot catch it.
class TimeoutSignal : public std::runtime_error {
 public:
  TimeoutSignal() : std::runtime_error("execution timed out") {}
};

/// Receives coverage probes from instrumented modules.
class ExecutionTracer {
 public:
  virtual ~ExecutionTracer() = default;
  virtual void EnterCodeObject(int code_object_id) = 0;
  // Distances are to the true and false outcome respectively.
  virtual void Predicate(int predicate_id, bool outcome, double true_distance,
                         double false_distance) = 0;
};

/// State shared by all sessions: builtin classes and functions, the module
/// search path and the parsed-module cache. Not thread safe.
class Runtime {
 public:
  Runtime();
  ~Runtime();
  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  void AddSearchPath(std::filesystem::path dir);
  const std::vector<std::filesystem::path>& search_paths() const { return search_paths_; }

  // Registers in-memory source that shadows the search path.
  void AddSource(const std::string& module, std::string source);

  // Parsed module, loaded on first request. Null when no file exists.
  // Throws ParseError for malformed sources.
  Module* ModuleAst(const std::string& name);
  std::optional<std::filesystem::path> ModulePath(const std::string& name) const;
  bool IsNativeModule(const std::string& name) const;

  ClassObject* builtin_class(std::string_view name) const;
  const std::shared_ptr<ClassObject>& builtin_class_ref(std::string_view name) const;
  const std::vector<std::shared_ptr<ClassObject>>& builtin_classes() const { return class_list_; }
  const AttrTable& builtins() const { return builtins_; }

  ClassObject* object_class() const { return object_; }
  ClassObject* none_class() const { return none_; }
  ClassObject* bool_class() const { return bool_; }
  ClassObject* int_class() const { return int_; }
  ClassObject* float_class() const { return float_; }
  ClassObject* str_class() const { return str_; }
  ClassObject* list_class() const { return list_; }
  ClassObject* tuple_class() const { return tuple_; }
  ClassObject* dict_class() const { return dict_; }
  ClassObject* set_class() const { return set_; }
  ClassObject* function_class() const { return function_; }
  ClassObject* type_class() const { return type_; }
  ClassObject* module_class() const { return module_; }
  ClassObject* proxy_class() const { return proxy_; }
  ClassObject* base_exception_class() const { return base_exception_; }

 private:
  friend class RuntimeBuilder;
  std::shared_ptr<ClassObject> AddClass(const std::string& name, BuiltinKind kind,
                                        std::vector<std::shared_ptr<ClassObject>> bases);

  std::vector<std::filesystem::path> search_paths_;
  std::map<std::string, std::string> sources_;
  std::map<std::string, std::unique_ptr<Module>> asts_;
  std::map<std::string, std::shared_ptr<ClassObject>, std::less<>> classes_;
  std::vector<std::shared_ptr<ClassObject>> class_list_;
  AttrTable builtins_;
  ClassObject* object_ = nullptr;
  ClassObject* none_ = nullptr;
  ClassObject* bool_ = nullptr;
  ClassObject* int_ = nullptr;
  ClassObject* float_ = nullptr;
  ClassObject* str_ = nullptr;
  ClassObject* list_ = nullptr;
  ClassObject* tuple_ = nullptr;
  ClassObject* dict_ = nullptr;
  ClassObject* set_ = nullptr;
  ClassObject* function_ = nullptr;
  ClassObject* type_ = nullptr;
  ClassObject* module_ = nullptr;
  ClassObject* proxy_ = nullptr;
  ClassObject* base_exception_ = nullptr;
};

struct Frame;

/// One isolated execution session: its own module instances, heap and
/// builtins table. Objects created here die with the session.
class Interpreter {
 public:
  explicit Interpreter(Runtime& rt);
  ~Interpreter();
  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  Runtime& runtime() { return rt_; }

  ModuleObject& Import(const std::string& name);
  ModuleObject* FindModule(const std::string& name) const;
  // Runs a parsed module that is not registered in the runtime cache.
  ModuleObject& ExecModule(const Module& module);

  Value Call(const Value& callee, std::span<const Value> args);
  Value GetAttr(const Value& obj, std::string_view name);
  std::optional<Value> TryGetAttr(const Value& obj, std::string_view name);
  void SetAttr(const Value& obj, std::string_view name, Value v);

  // Class as seen by guest isinstance checks. Proxies report the class of
  // the wrapped value.
  ClassObject* ClassOf(const Value& v) const;
  // Actual representation class; proxies report the proxy class.
  ClassObject* TypeOf(const Value& v) const;
  bool IsInstance(const Value& v, const ClassObject* cls) const;
  // Class object of `v` as a value; `masquerade` selects ClassOf over TypeOf.
  Value ClassValue(const Value& v, bool masquerade) const;
  bool IsCallable(const Value& v) const;
  // Strips any number of proxy layers.
  static const Value& Unwrap(const Value& v);

  bool Truthy(const Value& v);
  bool Equals(const Value& a, const Value& b);
  Value Binary(BinaryOp op, const Value& a, const Value& b);
  bool Compare(CompareOp op, const Value& a, const Value& b);
  Value Unary(UnaryOp op, const Value& v);
  bool Contains(const Value& container, const Value& item);
  std::vector<Value> Iterate(const Value& v);
  Value GetItem(const Value& obj, const Value& key);
  void SetItem(const Value& obj, const Value& key, Value v);
  std::int64_t Len(const Value& v);
  std::string Repr(const Value& v);
  std::string Str(const Value& v);
  void CheckHashable(const Value& v);

  [[noreturn]] void Raise(std::string_view cls_name, const std::string& message);
  Value MakeException(std::string_view cls_name, const std::string& message);
  std::string ExceptionName(const Value& exc) const;
  std::string ExceptionMessage(const Value& exc);

  Value NewList(std::vector<Value> items = {});
  Value NewTuple(std::vector<Value> items = {});
  Value NewDict();
  Value NewSet();
  Value NewProxy(Value wrapped, std::shared_ptr<ProxyRecorder> recorder);
  void DictSet(DictObject& d, Value key, Value v);
  const Value* DictFind(DictObject& d, const Value& key);
  void SetAdd(SetObject& s, Value v);

  template <typename T, typename... Args>
  std::shared_ptr<T> New(Args&&... args) {
    auto obj = std::make_shared<T>(std::forward<Args>(args)...);
    if (heap_.size() >= compact_at_) CompactHeap();
    heap_.push_back(obj);
    return obj;
  }

  void SetTracer(ExecutionTracer* tracer) { tracer_ = tracer; }
  ExecutionTracer* tracer() const { return tracer_; }
  void SetDeadline(std::optional<std::chrono::steady_clock::time_point> deadline) {
    deadline_ = deadline;
  }
  void CheckDeadline();

  void OverrideBuiltin(const std::string& name, Value v);
  void RestoreBuiltin(const std::string& name);
  const Value* FindBuiltin(std::string_view name) const { return builtins_.Find(name); }

  const std::string& output() const { return output_; }
  void Print(const std::string& line) { output_ += line; }

  static constexpr int kRecursionLimit = 150;
  static constexpr std::size_t kMaxSequence = 1'000'000;

 private:
  enum class Flow { kNormal, kReturn, kBreak, kContinue };
  struct Outcome {
    bool value;
    double true_distance;
    double false_distance;
  };

  Flow ExecBlock(const Block& block, Frame& f);
  Flow Exec(const Stmt& s, Frame& f);
  Flow ExecTry(const TryStmt& s, Frame& f);
  void ExecFunctionDef(const FunctionDefStmt& s, Frame& f);
  void ExecClassDef(const ClassDefStmt& s, Frame& f);
  void ExecImport(const ImportStmt& s, Frame& f);
  void ExecImportFrom(const ImportFromStmt& s, Frame& f);
  [[noreturn]] void ExecRaise(const RaiseStmt& s, Frame& f);
  bool EvalTest(const Expr& e, Frame& f, int predicate_id);
  Outcome EvalOutcome(const Expr& e, Frame& f);
  Outcome CompareOutcome(CompareOp op, const Value& a, const Value& b);
  Outcome TruthOutcome(const Value& v);

  Value Eval(const Expr& e, Frame& f);
  Value EvalName(const NameExpr& e, Frame& f);
  Value EvalCall(const CallExpr& e, Frame& f);
  Value EvalSubscript(const SubscriptExpr& e, Frame& f);
  Value EvalCompare(const CompareExpr& e, Frame& f);
  void Assign(const Expr& target, Value v, Frame& f);
  void StoreName(const std::string& name, Value v, Frame& f);

  Value CallFunction(FunctionObject& fn, std::span<const Value> args);
 public:
  Value Instantiate(const std::shared_ptr<ClassObject>& cls, std::span<const Value> args);
  Value BindIfMethod(const Value& self, const Value& attr);
 private:
  std::optional<Value> LookupAttr(const Value& obj, std::string_view name);
  std::optional<Value> CallSpecial(const Value& obj, std::string_view name, std::span<const Value> args);
  std::optional<Value> BinaryOnInstances(BinaryOp op, const Value& a, const Value& b);
  Value BinaryNative(BinaryOp op, const Value& a, const Value& b);
  std::optional<bool> OrderNative(CompareOp op, const Value& a, const Value& b);
  bool Order(CompareOp op, const Value& a, const Value& b);
  Value Slice(const Value& obj, const Value& lo, const Value& hi);
  std::int64_t NormalizeIndex(std::int64_t idx, std::size_t size, const char* what);
  std::string ReprDepth(const Value& v, int depth);

  void CompactHeap();
  ModuleObject& LoadModule(const std::string& name, const Module& ast);
  void InstallNativeModule(const std::string& name, ModuleObject& m);

  Runtime& rt_;
  AttrTable builtins_;
  std::map<std::string, std::shared_ptr<ModuleObject>> modules_;
  std::vector<std::weak_ptr<Object>> heap_;
  std::size_t compact_at_ = 4096;
  std::vector<Value> handling_;
  ExecutionTracer* tracer_ = nullptr;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t steps_ = 0;
  int depth_ = 0;
  std::string output_;
};

/// Edit distance between two byte strings.
double Levenshtein(std::string_view a, std::string_view b);

/// Python-compatible shortest round-trip float repr.
std::string FloatRepr(double d);
/// Quoted string literal repr.
std::string StrRepr(std::string_view s);

}  // namespace tracegen::lang
