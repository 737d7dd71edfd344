#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tracegen/lang/ast.hpp"
#include "tracegen/lang/value.hpp"

namespace tracegen::lang {

class Interpreter;

enum class ObjectKind {
  kList,
  kTuple,
  kDict,
  kSet,
  kFunction,
  kBuiltinFunction,
  kBoundMethod,
  kClass,
  kInstance,
  kModule,
  kProxy,
};

class Object {
 public:
  explicit Object(ObjectKind k) : kind(k) {}
  virtual ~Object() = default;
  Object(const Object&) = delete;
  Object& operator=(const Object&) = delete;

  // Drops outgoing references so that reference cycles created by guest code
  // are released when the owning session ends.
  virtual void ClearReferences() {}

  const ObjectKind kind;
};

template <typename T>
T* Value::as() const {
  Object* o = object();
  return (o != nullptr && o->kind == T::kKind) ? static_cast<T*>(o) : nullptr;
}

struct ListObject final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kList;
  ListObject() : Object(kKind) {}
  explicit ListObject(std::vector<Value> v) : Object(kKind), items(std::move(v)) {}
  void ClearReferences() override { items.clear(); }
  std::vector<Value> items;
};

struct TupleObject final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kTuple;
  TupleObject() : Object(kKind) {}
  explicit TupleObject(std::vector<Value> v) : Object(kKind), items(std::move(v)) {}
  void ClearReferences() override { items.clear(); }
  std::vector<Value> items;
};

struct DictObject final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kDict;
  DictObject() : Object(kKind) {}
  void ClearReferences() override { items.clear(); }
  std::vector<std::pair<Value, Value>> items;
};

struct SetObject final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kSet;
  SetObject() : Object(kKind) {}
  void ClearReferences() override { items.clear(); }
  std::vector<Value> items;
};

struct ModuleObject;
struct ClassObject;

struct FunctionObject final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kFunction;
  FunctionObject(const FunctionDefStmt* d, ModuleObject* m, std::string q)
      : Object(kKind), def(d), module(m), qualname(std::move(q)) {}
  void ClearReferences() override { defaults.clear(); }
  const FunctionDefStmt* def;
  ModuleObject* module;  // owned by the session
  std::string qualname;
  std::vector<Value> defaults;  // aligned to the trailing parameters
};

using NativeFn = std::function<Value(Interpreter&, std::span<const Value>)>;

struct BuiltinFunction final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kBuiltinFunction;
  BuiltinFunction(std::string n, NativeFn f, bool s = false)
      : Object(kKind), name(std::move(n)), fn(std::move(f)), strict(s) {}
  std::string name;
  NativeFn fn;
  // A strict builtin inspects the concrete runtime representation of its
  // arguments, so proxies passed as arguments are rejected.
  bool strict;
};

struct BoundMethod final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kBoundMethod;
  BoundMethod(Value s, Value f) : Object(kKind), self(std::move(s)), func(std::move(f)) {}
  void ClearReferences() override {
    self = Value();
    func = Value();
  }
  Value self;
  Value func;
};

enum class BuiltinKind {
  kNone,  // user-defined class
  kObject,
  kNoneType,
  kBool,
  kInt,
  kFloat,
  kStr,
  kList,
  kTuple,
  kDict,
  kSet,
  kException,
  kFunction,
  kType,
  kModule,
  kProxy,
};

struct ClassObject final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kClass;
  ClassObject(std::string n, std::string m, BuiltinKind b)
      : Object(kKind), name(std::move(n)), module(std::move(m)), builtin(b) {}
  void ClearReferences() override {
    if (builtin == BuiltinKind::kNone) {
      attrs.Clear();
      bases.clear();
      mro.clear();
    }
  }

  std::string qualname() const { return module.empty() ? name : module + "." + name; }
  bool IsSubclassOf(const ClassObject* other) const {
    for (const ClassObject* c : mro) {
      if (c == other) return true;
    }
    return false;
  }
  const Value* Lookup(std::string_view attr) const {
    for (const ClassObject* c : mro) {
      if (const Value* v = c->attrs.Find(attr)) return v;
    }
    return nullptr;
  }

  std::string name;
  std::string module;  // empty for builtins
  BuiltinKind builtin;
  std::vector<std::shared_ptr<ClassObject>> bases;
  std::vector<ClassObject*> mro;  // starts with this class
  AttrTable attrs;
  const ClassDefStmt* def = nullptr;
};

struct InstanceObject final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kInstance;
  explicit InstanceObject(std::shared_ptr<ClassObject> c) : Object(kKind), cls(std::move(c)) {}
  void ClearReferences() override { attrs.Clear(); }
  std::shared_ptr<ClassObject> cls;
  AttrTable attrs;
};

struct ModuleObject final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kModule;
  ModuleObject(std::string n, const Module* a) : Object(kKind), name(std::move(n)), ast(a) {}
  void ClearReferences() override { globals.Clear(); }
  std::string name;
  const Module* ast;  // null for native modules
  AttrTable globals;
};

/// Receives the events observed by a transparent proxy. Every hook is
/// invoked before the operation is forwarded to the wrapped value.
class ProxyRecorder {
 public:
  virtual ~ProxyRecorder() = default;
  virtual void OnAttribute(std::string_view name) = 0;
  virtual void OnSpecialMethod(std::string_view name, std::span<const Value> args) = 0;
  virtual void OnTypeCheck(std::span<const ClassObject* const> targets) = 0;
  // Recorders for values reached through the proxy; null when the nesting
  // budget is exhausted.
  virtual std::shared_ptr<ProxyRecorder> ElementRecorder() = 0;
  virtual std::shared_ptr<ProxyRecorder> AttributeRecorder(std::string_view name) = 0;
};

struct ProxyObject final : Object {
  static constexpr ObjectKind kKind = ObjectKind::kProxy;
  ProxyObject(Value w, std::shared_ptr<ProxyRecorder> r)
      : Object(kKind), wrapped(std::move(w)), recorder(std::move(r)) {}
  void ClearReferences() override { wrapped = Value(); }
  Value wrapped;
  std::shared_ptr<ProxyRecorder> recorder;
};

}  // namespace tracegen::lang
