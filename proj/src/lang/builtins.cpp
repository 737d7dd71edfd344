#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "tracegen/lang/interpreter.hpp"
#include "tracegen/lang/parser.hpp"

namespace tracegen::lang {

bool AttrTable::Erase(std::string_view name) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == name; });
  if (it == entries_.end()) return false;
  entries_.erase(it);
  index_.clear();
  if (entries_.size() > kLinearLimit) {
    for (size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].first, i);
  }
  return true;
}

namespace {

using Args = std::span<const Value>;

Value Fn(std::string name, NativeFn fn, bool strict = false) {
  return Value(std::static_pointer_cast<Object>(std::make_shared<BuiltinFunction>(std::move(name), std::move(fn), strict)));
}

void Arity(Interpreter& in, Args a, std::size_t lo, std::size_t hi, std::string_view name) {
  if (a.size() < lo || a.size() > hi) {
    std::string expect = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
    in.Raise("TypeError", std::string(name) + "() takes " + expect + " arguments (" + std::to_string(a.size()) +
                              " given)");
  }
}

bool IntLike(const Value& v) { return v.is_int() || v.is_bool(); }
std::int64_t ToInt(const Value& v) { return v.is_int() ? v.as_int() : (v.as_bool() ? 1 : 0); }

const std::string& NeedStr(Interpreter& in, const Value& v, std::string_view what) {
  if (!v.is_str()) {
    in.Raise("TypeError", std::string(what) + " must be str, not " + in.TypeOf(v)->name);
  }
  return v.as_str();
}

std::int64_t NeedInt(Interpreter& in, const Value& v, std::string_view what) {
  if (auto* p = v.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod("__index__", {});
    return NeedInt(in, Interpreter::Unwrap(v), what);
  }
  if (!IntLike(v)) {
    in.Raise("TypeError", "'" + in.ClassOf(v)->name + "' object cannot be interpreted as an integer");
  }
  return ToInt(v);
}

double NeedFloat(Interpreter& in, const Value& v) {
  if (auto* p = v.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod("__float__", {});
    return NeedFloat(in, Interpreter::Unwrap(v));
  }
  if (!v.is_number()) in.Raise("TypeError", "must be real number, not " + in.ClassOf(v)->name);
  return v.number();
}

std::string Strip(const std::string& s, const std::string& chars, bool left, bool right) {
  std::size_t b = 0, e = s.size();
  if (left) {
    while (b < e && chars.find(s[b]) != std::string::npos) ++b;
  }
  if (right) {
    while (e > b && chars.find(s[e - 1]) != std::string::npos) --e;
  }
  return s.substr(b, e - b);
}

const std::string kWhitespace = " \t\n\r\v\f";

std::vector<std::string> Split(const std::string& s, const Value* sep) {
  std::vector<std::string> out;
  if (sep == nullptr || sep->is_none()) {
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
  }
  const std::string& d = sep->as_str();
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(d, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + d.size();
  }
}

bool AffixMatch(Interpreter& in, const std::string& s, const Value& arg, bool prefix) {
  std::vector<Value> options;
  if (auto* t = arg.as<TupleObject>()) {
    options = t->items;
  } else {
    options.push_back(arg);
  }
  for (const auto& o : options) {
    const std::string& a = NeedStr(in, o, prefix ? "startswith arg" : "endswith arg");
    if (prefix ? s.starts_with(a) : s.ends_with(a)) return true;
  }
  return false;
}

std::optional<std::int64_t> ParseInt(std::string s) {
  s = Strip(s, kWhitespace, true, true);
  std::string digits;
  for (char c : s) {
    if (c != '_') digits.push_back(c);
  }
  if (digits.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (digits[0] == '+' || digits[0] == '-') {
    neg = digits[0] == '-';
    i = 1;
  }
  if (i >= digits.size()) return std::nullopt;
  std::int64_t v = 0;
  for (; i < digits.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) return std::nullopt;
    if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, digits[i] - '0', &v)) return std::nullopt;
  }
  return neg ? -v : v;
}

std::optional<double> ParseFloat(std::string s) {
  s = Strip(s, kWhitespace, true, true);
  if (s.empty()) return std::nullopt;
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  std::string body = lower;
  double sign = 1;
  if (body[0] == '+' || body[0] == '-') {
    sign = body[0] == '-' ? -1 : 1;
    body = body.substr(1);
  }
  if (body == "inf" || body == "infinity") return sign * HUGE_VAL;
  if (body == "nan") return std::nan("");
  char* end = nullptr;
  double d = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') return std::nullopt;
  if (std::isnan(d) || std::isinf(d)) return std::nullopt;
  return d;
}

std::vector<Value> SortedValues(Interpreter& in, std::vector<Value> items) {
  std::stable_sort(items.begin(), items.end(),
                   [&](const Value& a, const Value& b) { return in.Compare(CompareOp::kLt, a, b); });
  return items;
}

Value MinMax(Interpreter& in, Args a, bool is_max, const char* name) {
  if (a.empty()) in.Raise("TypeError", std::string(name) + " expected at least 1 argument, got 0");
  std::vector<Value> items = a.size() == 1 ? in.Iterate(a[0]) : std::vector<Value>(a.begin(), a.end());
  if (items.empty()) in.Raise("ValueError", std::string(name) + "() arg is an empty sequence");
  Value best = items[0];
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (in.Compare(is_max ? CompareOp::kGt : CompareOp::kLt, items[i], best)) best = items[i];
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Runtime

std::shared_ptr<ClassObject> Runtime::AddClass(const std::string& name, BuiltinKind kind,
                                               std::vector<std::shared_ptr<ClassObject>> bases) {
  auto cls = std::make_shared<ClassObject>(name, "", kind);
  cls->bases = std::move(bases);
  cls->mro.push_back(cls.get());
  if (!cls->bases.empty()) {
    for (ClassObject* c : cls->bases[0]->mro) cls->mro.push_back(c);
  }
  classes_[name] = cls;
  class_list_.push_back(cls);
  builtins_.Set(name, Value(std::static_pointer_cast<Object>(cls)));
  return cls;
}

ClassObject* Runtime::builtin_class(std::string_view name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : it->second.get();
}

const std::shared_ptr<ClassObject>& Runtime::builtin_class_ref(std::string_view name) const {
  auto it = classes_.find(name);
  if (it == classes_.end()) throw std::out_of_range("unknown builtin class " + std::string(name));
  return it->second;
}

Runtime::~Runtime() = default;

void Runtime::AddSearchPath(std::filesystem::path dir) { search_paths_.push_back(std::move(dir)); }

void Runtime::AddSource(const std::string& module, std::string source) {
  sources_[module] = std::move(source);
  asts_.erase(module);
}

bool Runtime::IsNativeModule(const std::string& name) const {
  return name == "os" || name == "math" || name == "typing" || name == "__future__" || name == "abc";
}

std::optional<std::filesystem::path> Runtime::ModulePath(const std::string& name) const {
  std::string rel = name;
  std::replace(rel.begin(), rel.end(), '.', '/');
  for (const auto& dir : search_paths_) {
    auto p = dir / (rel + ".py");
    if (std::filesystem::is_regular_file(p)) return p;
  }
  return std::nullopt;
}

Module* Runtime::ModuleAst(const std::string& name) {
  if (auto it = asts_.find(name); it != asts_.end()) return it->second.get();
  std::string source;
  std::string path;
  if (auto it = sources_.find(name); it != sources_.end()) {
    source = it->second;
    path = "<" + name + ">";
  } else {
    auto p = ModulePath(name);
    if (!p) return nullptr;
    std::ifstream in(*p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    source = ss.str();
    path = p->string();
  }
  auto ast = ParseModule(source, name, path);
  Module* raw = ast.get();
  asts_[name] = std::move(ast);
  return raw;
}

Runtime::Runtime() {
  auto object = AddClass("object", BuiltinKind::kObject, {});
  object_ = object.get();
  none_ = AddClass("NoneType", BuiltinKind::kNoneType, {object}).get();
  auto int_cls = AddClass("int", BuiltinKind::kInt, {object});
  int_ = int_cls.get();
  bool_ = AddClass("bool", BuiltinKind::kBool, {int_cls}).get();
  float_ = AddClass("float", BuiltinKind::kFloat, {object}).get();
  str_ = AddClass("str", BuiltinKind::kStr, {object}).get();
  list_ = AddClass("list", BuiltinKind::kList, {object}).get();
  tuple_ = AddClass("tuple", BuiltinKind::kTuple, {object}).get();
  dict_ = AddClass("dict", BuiltinKind::kDict, {object}).get();
  set_ = AddClass("set", BuiltinKind::kSet, {object}).get();
  function_ = AddClass("function", BuiltinKind::kFunction, {object}).get();
  type_ = AddClass("type", BuiltinKind::kType, {object}).get();
  module_ = AddClass("module", BuiltinKind::kModule, {object}).get();
  proxy_ = AddClass("ObjectProxy", BuiltinKind::kProxy, {object}).get();
  builtins_.Erase("NoneType");
  builtins_.Erase("function");
  builtins_.Erase("module");
  builtins_.Erase("ObjectProxy");

  auto base_exc = AddClass("BaseException", BuiltinKind::kException, {object});
  base_exception_ = base_exc.get();
  auto exc = AddClass("Exception", BuiltinKind::kException, {base_exc});
  auto arith = AddClass("ArithmeticError", BuiltinKind::kException, {exc});
  AddClass("ZeroDivisionError", BuiltinKind::kException, {arith});
  AddClass("OverflowError", BuiltinKind::kException, {arith});
  auto lookup = AddClass("LookupError", BuiltinKind::kException, {exc});
  AddClass("KeyError", BuiltinKind::kException, {lookup});
  AddClass("IndexError", BuiltinKind::kException, {lookup});
  AddClass("ValueError", BuiltinKind::kException, {exc});
  AddClass("TypeError", BuiltinKind::kException, {exc});
  AddClass("AttributeError", BuiltinKind::kException, {exc});
  auto name_err = AddClass("NameError", BuiltinKind::kException, {exc});
  AddClass("UnboundLocalError", BuiltinKind::kException, {name_err});
  auto runtime_err = AddClass("RuntimeError", BuiltinKind::kException, {exc});
  AddClass("RecursionError", BuiltinKind::kException, {runtime_err});
  AddClass("NotImplementedError", BuiltinKind::kException, {runtime_err});
  AddClass("AssertionError", BuiltinKind::kException, {exc});
  AddClass("StopIteration", BuiltinKind::kException, {exc});
  auto import_err = AddClass("ImportError", BuiltinKind::kException, {exc});
  AddClass("ModuleNotFoundError", BuiltinKind::kException, {import_err});
  AddClass("MemoryError", BuiltinKind::kException, {exc});
  AddClass("SyntaxError", BuiltinKind::kException, {exc});

  auto def = [](ClassObject* cls, const std::string& name, NativeFn fn, bool strict = false) {
    cls->attrs.Set(name, Fn(name, std::move(fn), strict));
  };

  // object
  def(object_, "__init__", [](Interpreter& in, Args a) {
    if (a.size() > 1) {
      in.Raise("TypeError", in.ClassOf(a[0])->name + "() takes no arguments");
    }
    return Value();
  });
  def(object_, "__eq__", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "__eq__");
    return Value::Bool(in.Equals(a[0], a[1]));
  });
  def(object_, "__ne__", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "__ne__");
    return Value::Bool(!in.Equals(a[0], a[1]));
  });
  def(object_, "__hash__", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "__hash__");
    in.CheckHashable(a[0]);
    return Value::Int(static_cast<std::int64_t>(std::hash<std::string>{}(in.Repr(a[0]))));
  });
  def(object_, "__str__", [](Interpreter& in, Args a) { return Value::Str(in.Str(a[0])); });
  def(object_, "__repr__", [](Interpreter& in, Args a) { return Value::Str(in.Repr(a[0])); });
  def(object_, "__setattr__", [](Interpreter& in, Args a) {
    Arity(in, a, 3, 3, "__setattr__");
    in.SetAttr(a[0], NeedStr(in, a[1], "attribute name"), a[2]);
    return Value();
  });
  object_->attrs.Set("__new__", Fn("object", [](Interpreter& in, Args a) {
    Arity(in, a, 0, 0, "object");
    return in.Instantiate(in.runtime().builtin_class_ref("object"), {});
  }));

  def(base_exception_, "__init__", [](Interpreter& in, Args a) {
    in.SetAttr(a[0], "args", in.NewTuple(std::vector<Value>(a.begin() + 1, a.end())));
    return Value();
  });

  def(none_, "__bool__", [](Interpreter&, Args) { return Value::Bool(false); });

  // Operator dunders shared by the numeric, sequence and set classes.
  auto binary = [&](ClassObject* cls, BinaryOp op, const std::string& name, const std::string& rname) {
    def(cls, name, [op, name](Interpreter& in, Args a) {
      Arity(in, a, 2, 2, name);
      return in.Binary(op, a[0], a[1]);
    });
    if (!rname.empty()) {
      def(cls, rname, [op, rname](Interpreter& in, Args a) {
        Arity(in, a, 2, 2, rname);
        return in.Binary(op, a[1], a[0]);
      });
    }
  };
  auto compare = [&](ClassObject* cls) {
    const std::pair<CompareOp, const char*> ops[] = {{CompareOp::kLt, "__lt__"}, {CompareOp::kLtE, "__le__"},
                                                     {CompareOp::kGt, "__gt__"}, {CompareOp::kGtE, "__ge__"}};
    for (const auto& [op, name] : ops) {
      std::string n = name;
      CompareOp o = op;
      def(cls, n, [o, n](Interpreter& in, Args a) {
        Arity(in, a, 2, 2, n);
        return Value::Bool(in.Compare(o, a[0], a[1]));
      });
    }
  };
  auto container = [&](ClassObject* cls, bool mutable_items) {
    def(cls, "__len__", [](Interpreter& in, Args a) { return Value::Int(in.Len(a[0])); });
    def(cls, "__iter__", [](Interpreter& in, Args a) { return in.NewList(in.Iterate(a[0])); });
    def(cls, "__contains__", [](Interpreter& in, Args a) {
      Arity(in, a, 2, 2, "__contains__");
      return Value::Bool(in.Contains(a[0], a[1]));
    });
    if (cls != set_) {
      def(cls, "__getitem__", [](Interpreter& in, Args a) {
        Arity(in, a, 2, 2, "__getitem__");
        return in.GetItem(a[0], a[1]);
      });
    }
    if (mutable_items) {
      def(cls, "__setitem__", [](Interpreter& in, Args a) {
        Arity(in, a, 3, 3, "__setitem__");
        in.SetItem(a[0], a[1], a[2]);
        return Value();
      });
    }
  };

  for (ClassObject* num : {int_, float_}) {
    binary(num, BinaryOp::kAdd, "__add__", "__radd__");
    binary(num, BinaryOp::kSub, "__sub__", "__rsub__");
    binary(num, BinaryOp::kMul, "__mul__", "__rmul__");
    binary(num, BinaryOp::kDiv, "__truediv__", "__rtruediv__");
    binary(num, BinaryOp::kFloorDiv, "__floordiv__", "__rfloordiv__");
    binary(num, BinaryOp::kMod, "__mod__", "__rmod__");
    binary(num, BinaryOp::kPow, "__pow__", "__rpow__");
    compare(num);
    def(num, "__neg__", [](Interpreter& in, Args a) { return in.Unary(UnaryOp::kNeg, a[0]); });
    def(num, "__pos__", [](Interpreter& in, Args a) { return in.Unary(UnaryOp::kPos, a[0]); });
    def(num, "__abs__", [](Interpreter& in, Args a) {
      return in.Compare(CompareOp::kLt, a[0], Value::Int(0)) ? in.Unary(UnaryOp::kNeg, a[0]) : a[0];
    });
    def(num, "__bool__", [](Interpreter& in, Args a) { return Value::Bool(in.Truthy(a[0])); });
    def(num, "__int__", [](Interpreter& in, Args a) {
      const Value& v = a[0];
      if (v.is_float()) {
        if (!std::isfinite(v.as_float())) in.Raise("OverflowError", "cannot convert float to integer");
        return Value::Int(static_cast<std::int64_t>(v.as_float()));
      }
      return Value::Int(ToInt(v));
    });
    def(num, "__float__", [](Interpreter&, Args a) { return Value::Float(a[0].number()); });
  }
  binary(int_, BinaryOp::kBitAnd, "__and__", "__rand__");
  binary(int_, BinaryOp::kBitOr, "__or__", "__ror__");
  binary(int_, BinaryOp::kBitXor, "__xor__", "__rxor__");
  binary(int_, BinaryOp::kLShift, "__lshift__", "__rlshift__");
  binary(int_, BinaryOp::kRShift, "__rshift__", "__rrshift__");
  def(int_, "__invert__", [](Interpreter& in, Args a) { return in.Unary(UnaryOp::kInvert, a[0]); });
  def(int_, "__index__", [](Interpreter&, Args a) { return Value::Int(ToInt(a[0])); });
  def(int_, "bit_length", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "bit_length");
    std::int64_t x = ToInt(a[0]);
    std::uint64_t u = x < 0 ? static_cast<std::uint64_t>(-(x + 1)) + 1 : static_cast<std::uint64_t>(x);
    int n = 0;
    while (u != 0) {
      ++n;
      u >>= 1;
    }
    return Value::Int(n);
  });
  def(float_, "is_integer", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "is_integer");
    double d = a[0].as_float();
    return Value::Bool(std::isfinite(d) && d == std::floor(d));
  });

  int_->attrs.Set("__new__", Fn("int", [](Interpreter& in, Args a) {
    Arity(in, a, 0, 2, "int");
    if (a.empty()) return Value::Int(0);
    Value v = a[0];
    if (auto* p = v.as<ProxyObject>()) {
      p->recorder->OnSpecialMethod("__int__", {});
      v = Interpreter::Unwrap(v);
    }
    if (v.is_str()) {
      if (a.size() == 2) {
        std::int64_t base = NeedInt(in, a[1], "base");
        try {
          std::size_t used = 0;
          std::string s = Strip(v.as_str(), kWhitespace, true, true);
          long long r = std::stoll(s, &used, static_cast<int>(base));
          if (used == s.size()) return Value::Int(r);
        } catch (const std::exception&) {
        }
        in.Raise("ValueError", "invalid literal for int() with base " + std::to_string(base) + ": " +
                                   StrRepr(v.as_str()));
      }
      if (auto r = ParseInt(v.as_str())) return Value::Int(*r);
      in.Raise("ValueError", "invalid literal for int() with base 10: " + StrRepr(v.as_str()));
    }
    if (v.is_float()) {
      if (!std::isfinite(v.as_float())) in.Raise("OverflowError", "cannot convert float to integer");
      if (std::fabs(v.as_float()) >= 9.2e18) in.Raise("OverflowError", "integer overflow");
      return Value::Int(static_cast<std::int64_t>(v.as_float()));
    }
    if (IntLike(v)) return Value::Int(ToInt(v));
    if (v.as<InstanceObject>() != nullptr) {
      if (auto m = in.TryGetAttr(v, "__int__")) return in.Call(*m, {});
    }
    in.Raise("TypeError", "int() argument must be a string, a bytes-like object or a real number, not '" +
                              in.ClassOf(v)->name + "'");
  }));
  float_->attrs.Set("__new__", Fn("float", [](Interpreter& in, Args a) {
    Arity(in, a, 0, 1, "float");
    if (a.empty()) return Value::Float(0.0);
    Value v = a[0];
    if (auto* p = v.as<ProxyObject>()) {
      p->recorder->OnSpecialMethod("__float__", {});
      v = Interpreter::Unwrap(v);
    }
    if (v.is_str()) {
      if (auto r = ParseFloat(v.as_str())) return Value::Float(*r);
      in.Raise("ValueError", "could not convert string to float: " + StrRepr(v.as_str()));
    }
    if (v.is_number()) return Value::Float(v.number());
    if (v.as<InstanceObject>() != nullptr) {
      if (auto m = in.TryGetAttr(v, "__float__")) return in.Call(*m, {});
    }
    in.Raise("TypeError", "float() argument must be a string or a real number, not '" + in.ClassOf(v)->name + "'");
  }));
  bool_->attrs.Set("__new__", Fn("bool", [](Interpreter& in, Args a) {
    Arity(in, a, 0, 1, "bool");
    return Value::Bool(!a.empty() && in.Truthy(a[0]));
  }));
  str_->attrs.Set("__new__", Fn("str", [](Interpreter& in, Args a) {
    Arity(in, a, 0, 1, "str");
    return Value::Str(a.empty() ? "" : in.Str(a[0]));
  }));
  list_->attrs.Set("__new__", Fn("list", [](Interpreter& in, Args a) {
    Arity(in, a, 0, 1, "list");
    return in.NewList(a.empty() ? std::vector<Value>{} : in.Iterate(a[0]));
  }));
  tuple_->attrs.Set("__new__", Fn("tuple", [](Interpreter& in, Args a) {
    Arity(in, a, 0, 1, "tuple");
    return in.NewTuple(a.empty() ? std::vector<Value>{} : in.Iterate(a[0]));
  }));
  set_->attrs.Set("__new__", Fn("set", [](Interpreter& in, Args a) {
    Arity(in, a, 0, 1, "set");
    Value s = in.NewSet();
    if (!a.empty()) {
      for (auto& v : in.Iterate(a[0])) in.SetAdd(*s.as<SetObject>(), v);
    }
    return s;
  }));
  dict_->attrs.Set("__new__", Fn("dict", [](Interpreter& in, Args a) {
    Arity(in, a, 0, 1, "dict");
    Value d = in.NewDict();
    if (a.empty()) return d;
    if (auto* src = Interpreter::Unwrap(a[0]).as<DictObject>()) {
      for (const auto& [k, v] : src->items) in.DictSet(*d.as<DictObject>(), k, v);
      return d;
    }
    for (const auto& pair : in.Iterate(a[0])) {
      auto kv = in.Iterate(pair);
      if (kv.size() != 2) in.Raise("ValueError", "dictionary update sequence element has wrong length");
      in.DictSet(*d.as<DictObject>(), kv[0], kv[1]);
    }
    return d;
  }));
  type_->attrs.Set("__new__", Fn("type", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "type");
    return in.ClassValue(a[0], false);
  }));

  // str
  binary(str_, BinaryOp::kAdd, "__add__", "");
  binary(str_, BinaryOp::kMul, "__mul__", "__rmul__");
  binary(str_, BinaryOp::kMod, "__mod__", "");
  compare(str_);
  container(str_, false);
  def(str_, "upper", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "upper");
    std::string s = a[0].as_str();
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return Value::Str(s);
  }, true);
  def(str_, "lower", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "lower");
    std::string s = a[0].as_str();
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return Value::Str(s);
  }, true);
  def(str_, "capitalize", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "capitalize");
    std::string s = a[0].as_str();
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto u = static_cast<unsigned char>(s[i]);
      s[i] = static_cast<char>(i == 0 ? std::toupper(u) : std::tolower(u));
    }
    return Value::Str(s);
  }, true);
  def(str_, "title", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "title");
    std::string s = a[0].as_str();
    bool start = true;
    for (auto& c : s) {
      auto u = static_cast<unsigned char>(c);
      c = static_cast<char>(start ? std::toupper(u) : std::tolower(u));
      start = !std::isalpha(u);
    }
    return Value::Str(s);
  }, true);
  for (const auto& [name, left, right] :
       {std::tuple{"strip", true, true}, std::tuple{"lstrip", true, false}, std::tuple{"rstrip", false, true}}) {
    std::string n = name;
    bool l = left, r = right;
    def(str_, n, [n, l, r](Interpreter& in, Args a) {
      Arity(in, a, 1, 2, n);
      std::string chars = kWhitespace;
      if (a.size() == 2 && !a[1].is_none()) chars = NeedStr(in, a[1], "strip arg");
      return Value::Str(Strip(a[0].as_str(), chars, l, r));
    }, true);
  }
  def(str_, "startswith", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "startswith");
    return Value::Bool(AffixMatch(in, a[0].as_str(), a[1], true));
  }, true);
  def(str_, "endswith", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "endswith");
    return Value::Bool(AffixMatch(in, a[0].as_str(), a[1], false));
  }, true);
  def(str_, "split", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 2, "split");
    const Value* sep = a.size() == 2 ? &a[1] : nullptr;
    if (sep != nullptr && !sep->is_none()) {
      if (NeedStr(in, *sep, "sep").empty()) in.Raise("ValueError", "empty separator");
    }
    std::vector<Value> out;
    for (auto& p : Split(a[0].as_str(), sep)) out.push_back(Value::Str(std::move(p)));
    return in.NewList(std::move(out));
  }, true);
  def(str_, "splitlines", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "splitlines");
    std::vector<Value> out;
    std::istringstream is(a[0].as_str());
    std::string line;
    while (std::getline(is, line)) out.push_back(Value::Str(line));
    return in.NewList(std::move(out));
  }, true);
  def(str_, "join", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "join");
    std::string out;
    bool first = true;
    for (const auto& item : in.Iterate(a[1])) {
      if (!item.is_str()) {
        in.Raise("TypeError", "sequence item: expected str instance, " + in.TypeOf(item)->name + " found");
      }
      if (!first) out += a[0].as_str();
      first = false;
      out += item.as_str();
    }
    return Value::Str(out);
  }, true);
  def(str_, "replace", [](Interpreter& in, Args a) {
    Arity(in, a, 3, 3, "replace");
    std::string s = a[0].as_str();
    const std::string& from = NeedStr(in, a[1], "replace arg");
    const std::string& to = NeedStr(in, a[2], "replace arg");
    if (from.empty()) return Value::Str(s);
    std::string out;
    std::size_t pos = 0;
    while (true) {
      std::size_t hit = s.find(from, pos);
      if (hit == std::string::npos) break;
      out += s.substr(pos, hit - pos) + to;
      pos = hit + from.size();
    }
    out += s.substr(pos);
    return Value::Str(out);
  }, true);
  def(str_, "find", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "find");
    auto pos = a[0].as_str().find(NeedStr(in, a[1], "find arg"));
    return Value::Int(pos == std::string::npos ? -1 : static_cast<std::int64_t>(pos));
  }, true);
  def(str_, "index", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "index");
    auto pos = a[0].as_str().find(NeedStr(in, a[1], "index arg"));
    if (pos == std::string::npos) in.Raise("ValueError", "substring not found");
    return Value::Int(static_cast<std::int64_t>(pos));
  }, true);
  def(str_, "count", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "count");
    const std::string& s = a[0].as_str();
    const std::string& sub = NeedStr(in, a[1], "count arg");
    if (sub.empty()) return Value::Int(static_cast<std::int64_t>(s.size() + 1));
    std::int64_t n = 0;
    for (std::size_t pos = s.find(sub); pos != std::string::npos; pos = s.find(sub, pos + sub.size())) ++n;
    return Value::Int(n);
  }, true);
  def(str_, "zfill", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "zfill");
    std::string s = a[0].as_str();
    std::int64_t width = NeedInt(in, a[1], "width");
    if (width <= static_cast<std::int64_t>(s.size())) return Value::Str(s);
    std::size_t fill = static_cast<std::size_t>(width) - s.size();
    std::size_t at = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    s.insert(at, fill, '0');
    return Value::Str(s);
  }, true);
  auto predicate = [&](const std::string& name, int (*test)(int)) {
    def(str_, name, [name, test](Interpreter& in, Args a) {
      Arity(in, a, 1, 1, name);
      const std::string& s = a[0].as_str();
      if (s.empty()) return Value::Bool(false);
      return Value::Bool(std::all_of(s.begin(), s.end(), [&](char c) { return test(static_cast<unsigned char>(c)) != 0; }));
    }, true);
  };
  predicate("isdigit", [](int c) { return std::isdigit(c); });
  predicate("isalpha", [](int c) { return std::isalpha(c); });
  predicate("isalnum", [](int c) { return std::isalnum(c); });
  predicate("isspace", [](int c) { return std::isspace(c); });
  def(str_, "isupper", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "isupper");
    const std::string& s = a[0].as_str();
    bool any = std::any_of(s.begin(), s.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
    return Value::Bool(any && std::none_of(s.begin(), s.end(), [](char c) { return std::islower(static_cast<unsigned char>(c)); }));
  }, true);
  def(str_, "islower", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "islower");
    const std::string& s = a[0].as_str();
    bool any = std::any_of(s.begin(), s.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
    return Value::Bool(any && std::none_of(s.begin(), s.end(), [](char c) { return std::isupper(static_cast<unsigned char>(c)); }));
  }, true);
  def(str_, "format", [](Interpreter& in, Args a) {
    const std::string& fmt = a[0].as_str();
    std::string out;
    std::size_t auto_idx = 1;
    for (std::size_t i = 0; i < fmt.size(); ++i) {
      char c = fmt[i];
      if (c == '{' && i + 1 < fmt.size() && fmt[i + 1] == '{') {
        out += '{';
        ++i;
      } else if (c == '}' && i + 1 < fmt.size() && fmt[i + 1] == '}') {
        out += '}';
        ++i;
      } else if (c == '{') {
        std::size_t close = fmt.find('}', i);
        if (close == std::string::npos) in.Raise("ValueError", "Single '{' encountered in format string");
        std::string field = fmt.substr(i + 1, close - i - 1);
        std::size_t idx = auto_idx;
        if (field.empty()) {
          ++auto_idx;
        } else if (auto n = ParseInt(field)) {
          idx = static_cast<std::size_t>(*n) + 1;
        } else {
          in.Raise("ValueError", "unsupported format field '" + field + "'");
        }
        if (idx >= a.size()) in.Raise("IndexError", "Replacement index out of range for positional args tuple");
        out += in.Str(a[idx]);
        i = close;
      } else {
        out += c;
      }
    }
    return Value::Str(out);
  }, true);

  // list
  binary(list_, BinaryOp::kAdd, "__add__", "");
  binary(list_, BinaryOp::kMul, "__mul__", "__rmul__");
  compare(list_);
  container(list_, true);
  def(list_, "append", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "append");
    a[0].as<ListObject>()->items.push_back(a[1]);
    return Value();
  });
  def(list_, "extend", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "extend");
    auto items = in.Iterate(a[1]);
    auto& dst = a[0].as<ListObject>()->items;
    dst.insert(dst.end(), items.begin(), items.end());
    return Value();
  });
  def(list_, "insert", [](Interpreter& in, Args a) {
    Arity(in, a, 3, 3, "insert");
    auto& items = a[0].as<ListObject>()->items;
    std::int64_t n = static_cast<std::int64_t>(items.size());
    std::int64_t i = NeedInt(in, a[1], "index");
    if (i < 0) i += n;
    i = std::clamp<std::int64_t>(i, 0, n);
    items.insert(items.begin() + i, a[2]);
    return Value();
  });
  def(list_, "pop", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 2, "pop");
    auto& items = a[0].as<ListObject>()->items;
    if (items.empty()) in.Raise("IndexError", "pop from empty list");
    std::int64_t n = static_cast<std::int64_t>(items.size());
    std::int64_t i = a.size() == 2 ? NeedInt(in, a[1], "index") : n - 1;
    if (i < 0) i += n;
    if (i < 0 || i >= n) in.Raise("IndexError", "pop index out of range");
    Value v = items[i];
    items.erase(items.begin() + i);
    return v;
  });
  def(list_, "remove", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "remove");
    auto& items = a[0].as<ListObject>()->items;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (in.Equals(items[i], a[1])) {
        items.erase(items.begin() + static_cast<std::ptrdiff_t>(i));
        return Value();
      }
    }
    in.Raise("ValueError", "list.remove(x): x not in list");
  });
  auto seq_index = [](Interpreter& in, Args a, const std::vector<Value>& items) {
    Arity(in, a, 2, 2, "index");
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (in.Equals(items[i], a[1])) return Value::Int(static_cast<std::int64_t>(i));
    }
    in.Raise("ValueError", in.Repr(a[1]) + " is not in list");
  };
  auto seq_count = [](Interpreter& in, Args a, const std::vector<Value>& items) {
    Arity(in, a, 2, 2, "count");
    std::int64_t n = 0;
    for (const auto& v : items) n += in.Equals(v, a[1]) ? 1 : 0;
    return Value::Int(n);
  };
  def(list_, "index", [seq_index](Interpreter& in, Args a) { return seq_index(in, a, a[0].as<ListObject>()->items); });
  def(list_, "count", [seq_count](Interpreter& in, Args a) { return seq_count(in, a, a[0].as<ListObject>()->items); });
  def(list_, "sort", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "sort");
    auto* l = a[0].as<ListObject>();
    l->items = SortedValues(in, l->items);
    return Value();
  });
  def(list_, "reverse", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "reverse");
    auto& items = a[0].as<ListObject>()->items;
    std::reverse(items.begin(), items.end());
    return Value();
  });
  def(list_, "copy", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "copy");
    return in.NewList(a[0].as<ListObject>()->items);
  });
  def(list_, "clear", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "clear");
    a[0].as<ListObject>()->items.clear();
    return Value();
  });

  // tuple
  binary(tuple_, BinaryOp::kAdd, "__add__", "");
  binary(tuple_, BinaryOp::kMul, "__mul__", "__rmul__");
  compare(tuple_);
  container(tuple_, false);
  def(tuple_, "index", [seq_index](Interpreter& in, Args a) { return seq_index(in, a, a[0].as<TupleObject>()->items); });
  def(tuple_, "count", [seq_count](Interpreter& in, Args a) { return seq_count(in, a, a[0].as<TupleObject>()->items); });

  // dict
  container(dict_, true);
  binary(dict_, BinaryOp::kBitOr, "__or__", "");
  def(dict_, "get", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 3, "get");
    if (const Value* v = in.DictFind(*a[0].as<DictObject>(), a[1])) return *v;
    return a.size() == 3 ? a[2] : Value();
  });
  def(dict_, "keys", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "keys");
    return in.NewList(in.Iterate(a[0]));
  });
  def(dict_, "values", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "values");
    std::vector<Value> out;
    for (const auto& kv : a[0].as<DictObject>()->items) out.push_back(kv.second);
    return in.NewList(std::move(out));
  });
  def(dict_, "items", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "items");
    std::vector<Value> out;
    for (const auto& kv : a[0].as<DictObject>()->items) out.push_back(in.NewTuple({kv.first, kv.second}));
    return in.NewList(std::move(out));
  });
  def(dict_, "pop", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 3, "pop");
    auto* d = a[0].as<DictObject>();
    in.CheckHashable(a[1]);
    for (auto it = d->items.begin(); it != d->items.end(); ++it) {
      if (in.Equals(it->first, Interpreter::Unwrap(a[1]))) {
        Value v = it->second;
        d->items.erase(it);
        return v;
      }
    }
    if (a.size() == 3) return a[2];
    in.Raise("KeyError", in.Repr(a[1]));
  });
  def(dict_, "setdefault", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 3, "setdefault");
    auto* d = a[0].as<DictObject>();
    if (const Value* v = in.DictFind(*d, a[1])) return *v;
    Value dflt = a.size() == 3 ? a[2] : Value();
    in.DictSet(*d, a[1], dflt);
    return dflt;
  });
  def(dict_, "update", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "update");
    auto* src = Interpreter::Unwrap(a[1]).as<DictObject>();
    if (src == nullptr) in.Raise("TypeError", "update() argument must be a dict");
    auto items = src->items;
    for (const auto& [k, v] : items) in.DictSet(*a[0].as<DictObject>(), k, v);
    return Value();
  });
  def(dict_, "copy", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "copy");
    Value d = in.NewDict();
    d.as<DictObject>()->items = a[0].as<DictObject>()->items;
    return d;
  });
  def(dict_, "clear", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "clear");
    a[0].as<DictObject>()->items.clear();
    return Value();
  });

  // set
  container(set_, false);
  binary(set_, BinaryOp::kBitOr, "__or__", "");
  binary(set_, BinaryOp::kBitAnd, "__and__", "");
  binary(set_, BinaryOp::kSub, "__sub__", "");
  binary(set_, BinaryOp::kBitXor, "__xor__", "");
  def(set_, "add", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "add");
    in.SetAdd(*a[0].as<SetObject>(), a[1]);
    return Value();
  });
  def(set_, "update", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "update");
    for (const auto& v : in.Iterate(a[1])) in.SetAdd(*a[0].as<SetObject>(), v);
    return Value();
  });
  auto set_remove = [](bool strict) {
    return [strict](Interpreter& in, Args a) {
      Arity(in, a, 2, 2, strict ? "remove" : "discard");
      auto& items = a[0].as<SetObject>()->items;
      in.CheckHashable(a[1]);
      for (auto it = items.begin(); it != items.end(); ++it) {
        if (in.Equals(*it, Interpreter::Unwrap(a[1]))) {
          items.erase(it);
          return Value();
        }
      }
      if (strict) in.Raise("KeyError", in.Repr(a[1]));
      return Value();
    };
  };
  def(set_, "remove", set_remove(true));
  def(set_, "discard", set_remove(false));
  auto set_op = [](BinaryOp op, const char* name) {
    return [op, name](Interpreter& in, Args a) {
      Arity(in, a, 2, 2, name);
      Value other = in.NewSet();
      for (const auto& v : in.Iterate(a[1])) in.SetAdd(*other.as<SetObject>(), v);
      return in.Binary(op, a[0], other);
    };
  };
  def(set_, "union", set_op(BinaryOp::kBitOr, "union"));
  def(set_, "intersection", set_op(BinaryOp::kBitAnd, "intersection"));
  def(set_, "difference", set_op(BinaryOp::kSub, "difference"));
  def(set_, "issubset", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "issubset");
    for (const auto& v : a[0].as<SetObject>()->items) {
      if (!in.Contains(a[1], v)) return Value::Bool(false);
    }
    return Value::Bool(true);
  });
  def(set_, "copy", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "copy");
    Value s = in.NewSet();
    s.as<SetObject>()->items = a[0].as<SetObject>()->items;
    return s;
  });
  def(set_, "clear", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "clear");
    a[0].as<SetObject>()->items.clear();
    return Value();
  });

  // Global functions.
  auto global = [&](const std::string& name, NativeFn fn, bool strict = false) {
    builtins_.Set(name, Fn(name, std::move(fn), strict));
  };
  global("print", [](Interpreter& in, Args a) {
    std::string line;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i > 0) line += ' ';
      line += in.Str(a[i]);
    }
    in.Print(line + "\n");
    return Value();
  });
  global("len", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "len");
    return Value::Int(in.Len(a[0]));
  });
  global("isinstance", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "isinstance");
    std::vector<Value> targets;
    if (auto* t = a[1].as<TupleObject>()) {
      targets = t->items;
    } else {
      targets.push_back(a[1]);
    }
    bool hit = false;
    for (const auto& t : targets) {
      auto* cls = t.as<ClassObject>();
      if (cls == nullptr) in.Raise("TypeError", "isinstance() arg 2 must be a type or tuple of types");
      hit = hit || in.IsInstance(a[0], cls);
    }
    return Value::Bool(hit);
  });
  global("issubclass", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "issubclass");
    auto* c = a[0].as<ClassObject>();
    if (c == nullptr) in.Raise("TypeError", "issubclass() arg 1 must be a class");
    std::vector<Value> targets;
    if (auto* t = a[1].as<TupleObject>()) {
      targets = t->items;
    } else {
      targets.push_back(a[1]);
    }
    for (const auto& t : targets) {
      auto* cls = t.as<ClassObject>();
      if (cls == nullptr) in.Raise("TypeError", "issubclass() arg 2 must be a class or tuple of classes");
      if (c->IsSubclassOf(cls)) return Value::Bool(true);
    }
    return Value::Bool(false);
  });
  global("hasattr", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 2, "hasattr");
    return Value::Bool(in.TryGetAttr(a[0], NeedStr(in, a[1], "attribute name")).has_value());
  });
  global("getattr", [](Interpreter& in, Args a) {
    Arity(in, a, 2, 3, "getattr");
    const std::string& name = NeedStr(in, a[1], "attribute name");
    if (a.size() == 3) {
      auto r = in.TryGetAttr(a[0], name);
      return r ? *r : a[2];
    }
    return in.GetAttr(a[0], name);
  });
  global("setattr", [](Interpreter& in, Args a) {
    Arity(in, a, 3, 3, "setattr");
    in.SetAttr(a[0], NeedStr(in, a[1], "attribute name"), a[2]);
    return Value();
  });
  global("callable", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "callable");
    return Value::Bool(in.IsCallable(a[0]));
  });
  global("repr", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "repr");
    return Value::Str(in.Repr(a[0]));
  });
  global("range", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 3, "range");
    std::int64_t start = 0, stop = 0, step = 1;
    if (a.size() == 1) {
      stop = NeedInt(in, a[0], "stop");
    } else {
      start = NeedInt(in, a[0], "start");
      stop = NeedInt(in, a[1], "stop");
      if (a.size() == 3) step = NeedInt(in, a[2], "step");
    }
    if (step == 0) in.Raise("ValueError", "range() arg 3 must not be zero");
    std::vector<Value> out;
    for (std::int64_t i = start; step > 0 ? i < stop : i > stop; i += step) {
      if (out.size() >= Interpreter::kMaxSequence) in.Raise("MemoryError", "");
      out.push_back(Value::Int(i));
    }
    return in.NewList(std::move(out));
  });
  global("abs", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "abs");
    Value v = a[0];
    if (auto* p = v.as<ProxyObject>()) {
      p->recorder->OnSpecialMethod("__abs__", {});
      v = Interpreter::Unwrap(v);
    }
    if (v.is_number()) {
      return in.Compare(CompareOp::kLt, v, Value::Int(0)) ? in.Unary(UnaryOp::kNeg, v)
                                                         : (v.is_bool() ? Value::Int(ToInt(v)) : v);
    }
    if (v.as<InstanceObject>() != nullptr) {
      if (auto m = in.TryGetAttr(v, "__abs__")) return in.Call(*m, {});
    }
    in.Raise("TypeError", "bad operand type for abs(): '" + in.ClassOf(v)->name + "'");
  });
  global("min", [](Interpreter& in, Args a) { return MinMax(in, a, false, "min"); });
  global("max", [](Interpreter& in, Args a) { return MinMax(in, a, true, "max"); });
  global("sum", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 2, "sum");
    Value total = a.size() == 2 ? a[1] : Value::Int(0);
    for (const auto& v : in.Iterate(a[0])) total = in.Binary(BinaryOp::kAdd, total, v);
    return total;
  });
  global("sorted", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "sorted");
    return in.NewList(SortedValues(in, in.Iterate(a[0])));
  });
  global("reversed", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "reversed");
    auto items = in.Iterate(a[0]);
    std::reverse(items.begin(), items.end());
    return in.NewList(std::move(items));
  });
  global("enumerate", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 2, "enumerate");
    std::int64_t i = a.size() == 2 ? NeedInt(in, a[1], "start") : 0;
    std::vector<Value> out;
    for (auto& v : in.Iterate(a[0])) out.push_back(in.NewTuple({Value::Int(i++), v}));
    return in.NewList(std::move(out));
  });
  global("zip", [](Interpreter& in, Args a) {
    std::vector<std::vector<Value>> cols;
    std::size_t n = a.empty() ? 0 : SIZE_MAX;
    for (const auto& v : a) {
      cols.push_back(in.Iterate(v));
      n = std::min(n, cols.back().size());
    }
    std::vector<Value> out;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Value> row;
      for (const auto& c : cols) row.push_back(c[i]);
      out.push_back(in.NewTuple(std::move(row)));
    }
    return in.NewList(std::move(out));
  });
  global("any", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "any");
    for (const auto& v : in.Iterate(a[0])) {
      if (in.Truthy(v)) return Value::Bool(true);
    }
    return Value::Bool(false);
  });
  global("all", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "all");
    for (const auto& v : in.Iterate(a[0])) {
      if (!in.Truthy(v)) return Value::Bool(false);
    }
    return Value::Bool(true);
  });
  global("round", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 2, "round");
    double x = NeedFloat(in, a[0]);
    if (a.size() == 1 || a[1].is_none()) {
      double r = std::nearbyint(x);
      if (!std::isfinite(r)) in.Raise("OverflowError", "cannot convert float infinity to integer");
      return Value::Int(static_cast<std::int64_t>(r));
    }
    std::int64_t nd = NeedInt(in, a[1], "ndigits");
    double scale = std::pow(10.0, static_cast<double>(nd));
    double r = std::nearbyint(x * scale) / scale;
    if (IntLike(Interpreter::Unwrap(a[0]))) return Value::Int(static_cast<std::int64_t>(r));
    return Value::Float(r);
  });
  global("ord", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "ord");
    const std::string& s = NeedStr(in, a[0], "ord() argument");
    if (s.size() != 1) {
      in.Raise("TypeError", "ord() expected a character, but string of length " + std::to_string(s.size()) + " found");
    }
    return Value::Int(static_cast<unsigned char>(s[0]));
  }, true);
  global("chr", [](Interpreter& in, Args a) {
    Arity(in, a, 1, 1, "chr");
    std::int64_t c = NeedInt(in, a[0], "chr() argument");
    if (c < 0 || c > 255) in.Raise("ValueError", "chr() arg not in range(256)");
    return Value::Str(std::string(1, static_cast<char>(c)));
  }, true);
  builtins_.Set("None", Value());
  builtins_.Set("True", Value::Bool(true));
  builtins_.Set("False", Value::Bool(false));
}

// ---------------------------------------------------------------------------
// Native modules

void Interpreter::InstallNativeModule(const std::string& name, ModuleObject& m) {
  auto set = [&](const std::string& key, Value v) { m.globals.Set(key, std::move(v)); };
  if (name == "os") {
    set("sep", Value::Str("/"));
    set("linesep", Value::Str("\n"));
    set("name", Value::Str("posix"));
    set("getcwd", Fn("getcwd", [](Interpreter&, Args) { return Value::Str("/"); }));
    auto path = New<ModuleObject>("os.path", nullptr);
    path->globals.Set("sep", Value::Str("/"));
    path->globals.Set("join", Fn("join", [](Interpreter& in, Args a) {
      std::string out;
      for (const auto& v : a) {
        const std::string& part = NeedStr(in, v, "join() argument");
        if (part.starts_with("/")) {
          out = part;
        } else if (out.empty() || out.ends_with("/")) {
          out += part;
        } else {
          out += "/" + part;
        }
      }
      return Value::Str(out);
    }, true));
    path->globals.Set("basename", Fn("basename", [](Interpreter& in, Args a) {
      Arity(in, a, 1, 1, "basename");
      const std::string& p = NeedStr(in, a[0], "basename() argument");
      auto pos = p.rfind('/');
      return Value::Str(pos == std::string::npos ? p : p.substr(pos + 1));
    }, true));
    path->globals.Set("dirname", Fn("dirname", [](Interpreter& in, Args a) {
      Arity(in, a, 1, 1, "dirname");
      const std::string& p = NeedStr(in, a[0], "dirname() argument");
      auto pos = p.rfind('/');
      return Value::Str(pos == std::string::npos ? "" : p.substr(0, pos));
    }, true));
    path->globals.Set("splitext", Fn("splitext", [](Interpreter& in, Args a) {
      Arity(in, a, 1, 1, "splitext");
      const std::string& p = NeedStr(in, a[0], "splitext() argument");
      auto dot = p.rfind('.');
      auto slash = p.rfind('/');
      if (dot == std::string::npos || (slash != std::string::npos && dot < slash) || dot == 0 ||
          (slash != std::string::npos && dot == slash + 1)) {
        return in.NewTuple({Value::Str(p), Value::Str("")});
      }
      return in.NewTuple({Value::Str(p.substr(0, dot)), Value::Str(p.substr(dot))});
    }, true));
    set("path", Value(std::static_pointer_cast<Object>(path)));
  } else if (name == "math") {
    set("pi", Value::Float(M_PI));
    set("e", Value::Float(M_E));
    set("inf", Value::Float(HUGE_VAL));
    set("nan", Value::Float(std::nan("")));
    auto unary = [&](const std::string& fname, double (*f)(double), bool domain_positive) {
      set(fname, Fn(fname, [fname, f, domain_positive](Interpreter& in, Args a) {
        Arity(in, a, 1, 1, fname);
        double x = NeedFloat(in, a[0]);
        if (domain_positive && x < 0) in.Raise("ValueError", "math domain error");
        return Value::Float(f(x));
      }));
    };
    unary("sqrt", [](double x) { return std::sqrt(x); }, true);
    unary("fabs", [](double x) { return std::fabs(x); }, false);
    unary("exp", [](double x) { return std::exp(x); }, false);
    unary("sin", [](double x) { return std::sin(x); }, false);
    unary("cos", [](double x) { return std::cos(x); }, false);
    set("log", Fn("log", [](Interpreter& in, Args a) {
      Arity(in, a, 1, 1, "log");
      double x = NeedFloat(in, a[0]);
      if (x <= 0) in.Raise("ValueError", "math domain error");
      return Value::Float(std::log(x));
    }));
    auto rounding = [&](const std::string& fname, double (*f)(double)) {
      set(fname, Fn(fname, [fname, f](Interpreter& in, Args a) {
        Arity(in, a, 1, 1, fname);
        const Value& v = Interpreter::Unwrap(a[0]);
        if (IntLike(v)) return Value::Int(ToInt(v));
        double r = f(NeedFloat(in, a[0]));
        if (!std::isfinite(r) || std::fabs(r) >= 9.2e18) in.Raise("OverflowError", "cannot convert float to integer");
        return Value::Int(static_cast<std::int64_t>(r));
      }));
    };
    rounding("floor", [](double x) { return std::floor(x); });
    rounding("ceil", [](double x) { return std::ceil(x); });
    set("isnan", Fn("isnan", [](Interpreter& in, Args a) {
      Arity(in, a, 1, 1, "isnan");
      return Value::Bool(std::isnan(NeedFloat(in, a[0])));
    }));
    set("isinf", Fn("isinf", [](Interpreter& in, Args a) {
      Arity(in, a, 1, 1, "isinf");
      return Value::Bool(std::isinf(NeedFloat(in, a[0])));
    }));
    set("gcd", Fn("gcd", [](Interpreter& in, Args a) {
      Arity(in, a, 2, 2, "gcd");
      return Value::Int(std::gcd(NeedInt(in, a[0], "gcd"), NeedInt(in, a[1], "gcd")));
    }));
  } else if (name == "typing") {
    for (const char* n : {"Any", "List", "Dict", "Set", "Tuple", "Optional", "Union", "Callable", "Iterable",
                          "Sequence", "Mapping"}) {
      set(n, Value::Str(std::string("typing.") + n));
    }
  } else if (name == "__future__") {
    set("annotations", Value::Bool(true));
  } else if (name == "abc") {
    auto abc = New<ClassObject>("ABC", "abc", BuiltinKind::kObject);
    abc->bases.push_back(rt_.builtin_class_ref("object"));
    abc->mro = {abc.get(), rt_.object_class()};
    set("ABC", Value(std::static_pointer_cast<Object>(abc)));
    set("ABCMeta", Value::Str("abc.ABCMeta"));
  }
}

}  // namespace tracegen::lang
