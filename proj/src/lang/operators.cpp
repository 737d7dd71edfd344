#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "tracegen/lang/interpreter.hpp"

namespace tracegen::lang {
namespace {

const char* OpSymbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kFloorDiv: return "//";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kPow: return "**";
    case BinaryOp::kBitAnd: return "&";
    case BinaryOp::kBitOr: return "|";
    case BinaryOp::kBitXor: return "^";
    case BinaryOp::kLShift: return "<<";
    case BinaryOp::kRShift: return ">>";
  }
  return "?";
}

const char* OpDunder(BinaryOp op, bool reflected) {
  switch (op) {
    case BinaryOp::kAdd: return reflected ? "__radd__" : "__add__";
    case BinaryOp::kSub: return reflected ? "__rsub__" : "__sub__";
    case BinaryOp::kMul: return reflected ? "__rmul__" : "__mul__";
    case BinaryOp::kDiv: return reflected ? "__rtruediv__" : "__truediv__";
    case BinaryOp::kFloorDiv: return reflected ? "__rfloordiv__" : "__floordiv__";
    case BinaryOp::kMod: return reflected ? "__rmod__" : "__mod__";
    case BinaryOp::kPow: return reflected ? "__rpow__" : "__pow__";
    case BinaryOp::kBitAnd: return reflected ? "__rand__" : "__and__";
    case BinaryOp::kBitOr: return reflected ? "__ror__" : "__or__";
    case BinaryOp::kBitXor: return reflected ? "__rxor__" : "__xor__";
    case BinaryOp::kLShift: return reflected ? "__rlshift__" : "__lshift__";
    case BinaryOp::kRShift: return reflected ? "__rrshift__" : "__rshift__";
  }
  return "?";
}

const char* CompareDunder(CompareOp op, bool reflected) {
  switch (op) {
    case CompareOp::kEq: return "__eq__";
    case CompareOp::kNotEq: return "__ne__";
    case CompareOp::kLt: return reflected ? "__gt__" : "__lt__";
    case CompareOp::kLtE: return reflected ? "__ge__" : "__le__";
    case CompareOp::kGt: return reflected ? "__lt__" : "__gt__";
    case CompareOp::kGtE: return reflected ? "__le__" : "__ge__";
    default: return "?";
  }
}

const char* CompareSymbol(CompareOp op) {
  switch (op) {
    case CompareOp::kLt: return "<";
    case CompareOp::kLtE: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGtE: return ">=";
    default: return "?";
  }
}

bool IsIntLike(const Value& v) { return v.is_int() || v.is_bool(); }

std::int64_t AsInt(const Value& v) { return v.is_int() ? v.as_int() : (v.as_bool() ? 1 : 0); }

std::int64_t FloorDiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t FloorMod(std::int64_t a, std::int64_t b) {
  std::int64_t m = a % b;
  if (m != 0 && ((m < 0) != (b < 0))) m += b;
  return m;
}

bool Identical(const Value& a, const Value& b) {
  if (a.is_object() || b.is_object()) return a.object() == b.object();
  if (a.is_none() || b.is_none()) return a.is_none() && b.is_none();
  if (a.is_bool() || b.is_bool()) return a.is_bool() && b.is_bool() && a.as_bool() == b.as_bool();
  if (a.is_int() && b.is_int()) return a.as_int() == b.as_int();
  if (a.is_float() && b.is_float()) return a.as_float() == b.as_float();
  if (a.is_str() && b.is_str()) return a.as_str() == b.as_str();
  return false;
}

template <typename Seq>
int Lexicographic(Interpreter& in, const Seq& a, const Seq& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (in.Equals(a[i], b[i])) continue;
    return in.Compare(CompareOp::kLt, a[i], b[i]) ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

bool FromOrder(CompareOp op, int c) {
  switch (op) {
    case CompareOp::kLt: return c < 0;
    case CompareOp::kLtE: return c <= 0;
    case CompareOp::kGt: return c > 0;
    case CompareOp::kGtE: return c >= 0;
    default: return false;
  }
}

}  // namespace

std::string FloatRepr(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[64];
  double mag = std::fabs(d);
  std::to_chars_result r;
  if (mag != 0.0 && (mag >= 1e16 || mag < 1e-4)) {
    r = std::to_chars(buf, buf + sizeof(buf), d, std::chars_format::scientific);
  } else {
    r = std::to_chars(buf, buf + sizeof(buf), d, std::chars_format::fixed);
  }
  std::string s(buf, r.ptr);
  auto e = s.find('e');
  if (e != std::string::npos) {
    // Python writes e+16 / e-05 as e+16 / e-05.
    std::string mant = s.substr(0, e);
    std::string exp = s.substr(e + 1);
    char sign = '+';
    if (exp[0] == '-' || exp[0] == '+') {
      sign = exp[0];
      exp = exp.substr(1);
    }
    exp.erase(0, std::min(exp.find_first_not_of('0'), exp.size() - 1));
    if (exp.size() < 2) exp = "0" + exp;
    return mant + "e" + sign + exp;
  }
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

std::string StrRepr(std::string_view s) {
  bool has_single = s.find('\'') != std::string_view::npos;
  bool has_double = s.find('"') != std::string_view::npos;
  char q = (has_single && !has_double) ? '"' : '\'';
  std::string out(1, q);
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (c == '\\') {
      out += "\\\\";
    } else if (c == q) {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else if (c == '\r') {
      out += "\\r";
    } else if (u < 0x20 || u >= 0x7f) {
      static const char* hex = "0123456789abcdef";
      out += "\\x";
      out += hex[u >> 4];
      out += hex[u & 15];
    } else {
      out += c;
    }
  }
  out += q;
  return out;
}

bool Interpreter::Truthy(const Value& v) {
  if (v.is_bool()) return v.as_bool();
  if (v.is_none()) return false;
  if (v.is_int()) return v.as_int() != 0;
  if (v.is_float()) return v.as_float() != 0.0;
  if (v.is_str()) return !v.as_str().empty();
  Object* o = v.object();
  switch (o->kind) {
    case ObjectKind::kList: return !static_cast<ListObject*>(o)->items.empty();
    case ObjectKind::kTuple: return !static_cast<TupleObject*>(o)->items.empty();
    case ObjectKind::kDict: return !static_cast<DictObject*>(o)->items.empty();
    case ObjectKind::kSet: return !static_cast<SetObject*>(o)->items.empty();
    case ObjectKind::kProxy: {
      auto* p = static_cast<ProxyObject*>(o);
      p->recorder->OnSpecialMethod("__bool__", {});
      Value inner = p->wrapped;
      return Truthy(inner);
    }
    case ObjectKind::kInstance: {
      if (auto r = CallSpecial(v, "__bool__", {})) return Truthy(*r);
      if (auto r = CallSpecial(v, "__len__", {})) return Truthy(*r);
      return true;
    }
    default:
      return true;
  }
}

bool Interpreter::Equals(const Value& a, const Value& b) {
  if (auto* p = a.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod("__eq__", std::span<const Value>(&b, 1));
    Value inner = p->wrapped;
    return Equals(inner, b);
  }
  if (auto* p = b.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod("__eq__", std::span<const Value>(&a, 1));
    Value inner = p->wrapped;
    return Equals(a, inner);
  }
  if (a.is_number() && b.is_number()) {
    if (IsIntLike(a) && IsIntLike(b)) return AsInt(a) == AsInt(b);
    return a.number() == b.number();
  }
  if (a.is_str() && b.is_str()) return a.as_str() == b.as_str();
  if (a.is_none() || b.is_none()) return a.is_none() && b.is_none();
  if (!a.is_object() || !b.is_object()) return false;
  if (a.object() == b.object()) return true;
  if (auto* la = a.as<ListObject>()) {
    auto* lb = b.as<ListObject>();
    if (lb == nullptr || la->items.size() != lb->items.size()) return false;
    for (std::size_t i = 0; i < la->items.size(); ++i) {
      if (!Equals(la->items[i], lb->items[i])) return false;
    }
    return true;
  }
  if (auto* ta = a.as<TupleObject>()) {
    auto* tb = b.as<TupleObject>();
    if (tb == nullptr || ta->items.size() != tb->items.size()) return false;
    for (std::size_t i = 0; i < ta->items.size(); ++i) {
      if (!Equals(ta->items[i], tb->items[i])) return false;
    }
    return true;
  }
  if (auto* da = a.as<DictObject>()) {
    auto* db = b.as<DictObject>();
    if (db == nullptr || da->items.size() != db->items.size()) return false;
    for (const auto& [k, v] : da->items) {
      const Value* other = DictFind(*db, k);
      if (other == nullptr || !Equals(v, *other)) return false;
    }
    return true;
  }
  if (auto* sa = a.as<SetObject>()) {
    auto* sb = b.as<SetObject>();
    if (sb == nullptr || sa->items.size() != sb->items.size()) return false;
    for (const auto& v : sa->items) {
      bool found = std::any_of(sb->items.begin(), sb->items.end(), [&](const Value& w) { return Equals(v, w); });
      if (!found) return false;
    }
    return true;
  }
  if (a.as<InstanceObject>() != nullptr) {
    if (auto r = CallSpecial(a, "__eq__", std::span<const Value>(&b, 1))) return Truthy(*r);
  }
  if (b.as<InstanceObject>() != nullptr) {
    if (auto r = CallSpecial(b, "__eq__", std::span<const Value>(&a, 1))) return Truthy(*r);
  }
  return false;
}

bool Interpreter::Compare(CompareOp op, const Value& a, const Value& b) {
  switch (op) {
    case CompareOp::kIs: return Identical(a, b);
    case CompareOp::kIsNot: return !Identical(a, b);
    case CompareOp::kIn: return Contains(b, a);
    case CompareOp::kNotIn: return !Contains(b, a);
    default: break;
  }
  if (auto* p = a.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod(CompareDunder(op, false), std::span<const Value>(&b, 1));
    Value inner = p->wrapped;
    return Compare(op, inner, b);
  }
  if (auto* p = b.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod(CompareDunder(op, true), std::span<const Value>(&a, 1));
    Value inner = p->wrapped;
    return Compare(op, a, inner);
  }
  if (op == CompareOp::kEq) return Equals(a, b);
  if (op == CompareOp::kNotEq) {
    if (a.as<InstanceObject>() != nullptr) {
      if (auto r = CallSpecial(a, "__ne__", std::span<const Value>(&b, 1))) return Truthy(*r);
    }
    return !Equals(a, b);
  }
  return Order(op, a, b);
}

std::optional<bool> Interpreter::OrderNative(CompareOp op, const Value& a, const Value& b) {
  if (a.is_number() && b.is_number()) {
    int c;
    if (IsIntLike(a) && IsIntLike(b)) {
      std::int64_t x = AsInt(a), y = AsInt(b);
      c = x < y ? -1 : (x > y ? 1 : 0);
    } else {
      double x = a.number(), y = b.number();
      if (std::isnan(x) || std::isnan(y)) return false;
      c = x < y ? -1 : (x > y ? 1 : 0);
    }
    return FromOrder(op, c);
  }
  if (a.is_str() && b.is_str()) return FromOrder(op, a.as_str().compare(b.as_str()));
  if (auto* la = a.as<ListObject>()) {
    if (auto* lb = b.as<ListObject>()) return FromOrder(op, Lexicographic(*this, la->items, lb->items));
  }
  if (auto* ta = a.as<TupleObject>()) {
    if (auto* tb = b.as<TupleObject>()) return FromOrder(op, Lexicographic(*this, ta->items, tb->items));
  }
  return std::nullopt;
}

bool Interpreter::Order(CompareOp op, const Value& a, const Value& b) {
  if (auto r = OrderNative(op, a, b)) return *r;
  if (a.as<InstanceObject>() != nullptr) {
    if (auto r = CallSpecial(a, CompareDunder(op, false), std::span<const Value>(&b, 1))) return Truthy(*r);
  }
  if (b.as<InstanceObject>() != nullptr) {
    if (auto r = CallSpecial(b, CompareDunder(op, true), std::span<const Value>(&a, 1))) return Truthy(*r);
  }
  Raise("TypeError", std::string("'") + CompareSymbol(op) + "' not supported between instances of '" +
                         ClassOf(a)->name + "' and '" + ClassOf(b)->name + "'");
}

Value Interpreter::Binary(BinaryOp op, const Value& a, const Value& b) {
  if (auto* p = a.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod(OpDunder(op, false), std::span<const Value>(&b, 1));
    Value inner = p->wrapped;
    return Binary(op, inner, b);
  }
  if (auto* p = b.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod(OpDunder(op, true), std::span<const Value>(&a, 1));
    Value inner = p->wrapped;
    return Binary(op, a, inner);
  }
  if (a.as<InstanceObject>() != nullptr || b.as<InstanceObject>() != nullptr) {
    if (auto r = BinaryOnInstances(op, a, b)) return *r;
    Raise("TypeError", std::string("unsupported operand type(s) for ") + OpSymbol(op) + ": '" +
                           ClassOf(a)->name + "' and '" + ClassOf(b)->name + "'");
  }
  return BinaryNative(op, a, b);
}

std::optional<Value> Interpreter::BinaryOnInstances(BinaryOp op, const Value& a, const Value& b) {
  if (a.as<InstanceObject>() != nullptr) {
    if (auto r = CallSpecial(a, OpDunder(op, false), std::span<const Value>(&b, 1))) return r;
  }
  if (b.as<InstanceObject>() != nullptr) {
    if (auto r = CallSpecial(b, OpDunder(op, true), std::span<const Value>(&a, 1))) return r;
  }
  return std::nullopt;
}

std::int64_t Interpreter::NormalizeIndex(std::int64_t idx, std::size_t size, const char* what) {
  std::int64_t n = static_cast<std::int64_t>(size);
  if (idx < 0) idx += n;
  if (idx < 0 || idx >= n) Raise("IndexError", std::string(what) + " index out of range");
  return idx;
}

Value Interpreter::BinaryNative(BinaryOp op, const Value& a, const Value& b) {
  auto unsupported = [&]() -> Value {
    Raise("TypeError", std::string("unsupported operand type(s) for ") + OpSymbol(op) + ": '" +
                           ClassOf(a)->name + "' and '" + ClassOf(b)->name + "'");
  };
  if (IsIntLike(a) && IsIntLike(b)) {
    std::int64_t x = AsInt(a), y = AsInt(b), r = 0;
    auto overflow = [&]() -> Value { Raise("OverflowError", "integer overflow"); };
    switch (op) {
      case BinaryOp::kAdd:
        if (__builtin_add_overflow(x, y, &r)) return overflow();
        return Value::Int(r);
      case BinaryOp::kSub:
        if (__builtin_sub_overflow(x, y, &r)) return overflow();
        return Value::Int(r);
      case BinaryOp::kMul:
        if (__builtin_mul_overflow(x, y, &r)) return overflow();
        return Value::Int(r);
      case BinaryOp::kDiv:
        if (y == 0) Raise("ZeroDivisionError", "division by zero");
        return Value::Float(static_cast<double>(x) / static_cast<double>(y));
      case BinaryOp::kFloorDiv:
        if (y == 0) Raise("ZeroDivisionError", "integer division or modulo by zero");
        if (x == std::numeric_limits<std::int64_t>::min() && y == -1) return overflow();
        return Value::Int(FloorDiv(x, y));
      case BinaryOp::kMod:
        if (y == 0) Raise("ZeroDivisionError", "integer division or modulo by zero");
        if (y == -1) return Value::Int(0);
        return Value::Int(FloorMod(x, y));
      case BinaryOp::kPow: {
        if (y < 0) {
          if (x == 0) Raise("ZeroDivisionError", "0.0 cannot be raised to a negative power");
          return Value::Float(std::pow(static_cast<double>(x), static_cast<double>(y)));
        }
        std::int64_t result = 1, base = x;
        while (y > 0) {
          if (y & 1) {
            if (__builtin_mul_overflow(result, base, &result)) return overflow();
          }
          y >>= 1;
          if (y > 0 && __builtin_mul_overflow(base, base, &base)) return overflow();
        }
        return Value::Int(result);
      }
      case BinaryOp::kBitAnd:
        if (a.is_bool() && b.is_bool()) return Value::Bool(a.as_bool() && b.as_bool());
        return Value::Int(x & y);
      case BinaryOp::kBitOr:
        if (a.is_bool() && b.is_bool()) return Value::Bool(a.as_bool() || b.as_bool());
        return Value::Int(x | y);
      case BinaryOp::kBitXor:
        if (a.is_bool() && b.is_bool()) return Value::Bool(a.as_bool() != b.as_bool());
        return Value::Int(x ^ y);
      case BinaryOp::kLShift:
        if (y < 0) Raise("ValueError", "negative shift count");
        if (x == 0) return Value::Int(0);
        if (y >= 63 || (x > 0 ? x > (std::numeric_limits<std::int64_t>::max() >> y)
                              : x < (std::numeric_limits<std::int64_t>::min() >> y))) {
          return overflow();
        }
        return Value::Int(static_cast<std::int64_t>(static_cast<std::uint64_t>(x) << y));
      case BinaryOp::kRShift:
        if (y < 0) Raise("ValueError", "negative shift count");
        return Value::Int(y >= 63 ? (x < 0 ? -1 : 0) : (x >> y));
    }
  }
  if (a.is_number() && b.is_number()) {
    double x = a.number(), y = b.number();
    switch (op) {
      case BinaryOp::kAdd: return Value::Float(x + y);
      case BinaryOp::kSub: return Value::Float(x - y);
      case BinaryOp::kMul: return Value::Float(x * y);
      case BinaryOp::kDiv:
        if (y == 0) Raise("ZeroDivisionError", "float division by zero");
        return Value::Float(x / y);
      case BinaryOp::kFloorDiv:
        if (y == 0) Raise("ZeroDivisionError", "float floor division by zero");
        return Value::Float(std::floor(x / y));
      case BinaryOp::kMod: {
        if (y == 0) Raise("ZeroDivisionError", "float modulo");
        double m = std::fmod(x, y);
        if (m != 0 && ((m < 0) != (y < 0))) m += y;
        return Value::Float(m);
      }
      case BinaryOp::kPow: {
        if (x == 0 && y < 0) Raise("ZeroDivisionError", "0.0 cannot be raised to a negative power");
        if (x < 0 && y != std::floor(y)) Raise("ValueError", "math domain error");
        double r = std::pow(x, y);
        if (std::isinf(r) && std::isfinite(x) && std::isfinite(y)) Raise("OverflowError", "numerical result out of range");
        return Value::Float(r);
      }
      default:
        return unsupported();
    }
  }
  auto repeat_count = [&](const Value& n, std::size_t unit) -> std::int64_t {
    std::int64_t k = std::max<std::int64_t>(0, AsInt(n));
    if (unit > 0 && static_cast<std::size_t>(k) > kMaxSequence / unit) Raise("MemoryError", "");
    return k;
  };
  if (a.is_str()) {
    if (op == BinaryOp::kAdd && b.is_str()) return Value::Str(a.as_str() + b.as_str());
    if (op == BinaryOp::kMul && IsIntLike(b)) {
      std::int64_t k = repeat_count(b, a.as_str().size());
      std::string out;
      for (std::int64_t i = 0; i < k; ++i) out += a.as_str();
      return Value::Str(std::move(out));
    }
    if (op == BinaryOp::kMod) {
      std::vector<Value> args;
      if (auto* t = b.as<TupleObject>()) {
        args = t->items;
      } else {
        args.push_back(b);
      }
      std::string out;
      std::size_t next = 0;
      const std::string& fmt = a.as_str();
      for (std::size_t i = 0; i < fmt.size(); ++i) {
        if (fmt[i] != '%' || i + 1 >= fmt.size()) {
          out += fmt[i];
          continue;
        }
        char spec = fmt[++i];
        if (spec == '%') {
          out += '%';
          continue;
        }
        if (next >= args.size()) Raise("TypeError", "not enough arguments for format string");
        const Value& arg = args[next++];
        if (spec == 's') {
          out += Str(arg);
        } else if (spec == 'r') {
          out += Repr(arg);
        } else if (spec == 'd' || spec == 'i') {
          if (!arg.is_number()) Raise("TypeError", "%d format: a real number is required");
          out += std::to_string(arg.is_float() ? static_cast<std::int64_t>(arg.as_float()) : AsInt(arg));
        } else if (spec == 'f') {
          if (!arg.is_number()) Raise("TypeError", "must be real number");
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%f", arg.number());
          out += buf;
        } else {
          Raise("ValueError", std::string("unsupported format character '") + spec + "'");
        }
      }
      if (next < args.size()) Raise("TypeError", "not all arguments converted during string formatting");
      return Value::Str(std::move(out));
    }
  }
  if (b.is_str() && op == BinaryOp::kMul && IsIntLike(a)) return BinaryNative(op, b, a);
  if (auto* la = a.as<ListObject>()) {
    if (op == BinaryOp::kAdd) {
      if (auto* lb = b.as<ListObject>()) {
        std::vector<Value> items = la->items;
        items.insert(items.end(), lb->items.begin(), lb->items.end());
        return NewList(std::move(items));
      }
    }
    if (op == BinaryOp::kMul && IsIntLike(b)) {
      std::int64_t k = repeat_count(b, la->items.size());
      std::vector<Value> items;
      for (std::int64_t i = 0; i < k; ++i) items.insert(items.end(), la->items.begin(), la->items.end());
      return NewList(std::move(items));
    }
  }
  if (auto* ta = a.as<TupleObject>()) {
    if (op == BinaryOp::kAdd) {
      if (auto* tb = b.as<TupleObject>()) {
        std::vector<Value> items = ta->items;
        items.insert(items.end(), tb->items.begin(), tb->items.end());
        return NewTuple(std::move(items));
      }
    }
    if (op == BinaryOp::kMul && IsIntLike(b)) {
      std::int64_t k = repeat_count(b, ta->items.size());
      std::vector<Value> items;
      for (std::int64_t i = 0; i < k; ++i) items.insert(items.end(), ta->items.begin(), ta->items.end());
      return NewTuple(std::move(items));
    }
  }
  if (IsIntLike(a) && (b.as<ListObject>() || b.as<TupleObject>()) && op == BinaryOp::kMul) {
    return BinaryNative(op, b, a);
  }
  auto* sa = a.as<SetObject>();
  auto* sb = b.as<SetObject>();
  if (sa != nullptr && sb != nullptr) {
    auto in = [&](SetObject* s, const Value& v) {
      return std::any_of(s->items.begin(), s->items.end(), [&](const Value& w) { return Equals(v, w); });
    };
    Value out = NewSet();
    auto* so = out.as<SetObject>();
    switch (op) {
      case BinaryOp::kBitOr:
        for (const auto& v : sa->items) SetAdd(*so, v);
        for (const auto& v : sb->items) SetAdd(*so, v);
        return out;
      case BinaryOp::kBitAnd:
        for (const auto& v : sa->items) {
          if (in(sb, v)) SetAdd(*so, v);
        }
        return out;
      case BinaryOp::kSub:
        for (const auto& v : sa->items) {
          if (!in(sb, v)) SetAdd(*so, v);
        }
        return out;
      case BinaryOp::kBitXor:
        for (const auto& v : sa->items) {
          if (!in(sb, v)) SetAdd(*so, v);
        }
        for (const auto& v : sb->items) {
          if (!in(sa, v)) SetAdd(*so, v);
        }
        return out;
      default:
        break;
    }
  }
  if (op == BinaryOp::kBitOr) {
    auto* da = a.as<DictObject>();
    auto* db = b.as<DictObject>();
    if (da != nullptr && db != nullptr) {
      Value out = NewDict();
      for (const auto& [k, v] : da->items) DictSet(*out.as<DictObject>(), k, v);
      for (const auto& [k, v] : db->items) DictSet(*out.as<DictObject>(), k, v);
      return out;
    }
  }
  return unsupported();
}

Value Interpreter::Unary(UnaryOp op, const Value& v) {
  if (op == UnaryOp::kNot) return Value::Bool(!Truthy(v));
  const char* dunder = op == UnaryOp::kNeg ? "__neg__" : (op == UnaryOp::kPos ? "__pos__" : "__invert__");
  if (auto* p = v.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod(dunder, {});
    Value inner = p->wrapped;
    return Unary(op, inner);
  }
  if (IsIntLike(v)) {
    std::int64_t x = AsInt(v);
    if (op == UnaryOp::kPos) return Value::Int(x);
    if (op == UnaryOp::kInvert) return Value::Int(~x);
    if (x == std::numeric_limits<std::int64_t>::min()) Raise("OverflowError", "integer overflow");
    return Value::Int(-x);
  }
  if (v.is_float() && op != UnaryOp::kInvert) {
    return Value::Float(op == UnaryOp::kNeg ? -v.as_float() : v.as_float());
  }
  if (v.as<InstanceObject>() != nullptr) {
    if (auto r = CallSpecial(v, dunder, {})) return *r;
  }
  const char* sym = op == UnaryOp::kNeg ? "-" : (op == UnaryOp::kPos ? "+" : "~");
  Raise("TypeError", std::string("bad operand type for unary ") + sym + ": '" + ClassOf(v)->name + "'");
}

bool Interpreter::Contains(const Value& container, const Value& item) {
  if (auto* p = container.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod("__contains__", std::span<const Value>(&item, 1));
    Value inner = p->wrapped;
    return Contains(inner, item);
  }
  if (container.is_str()) {
    if (!item.is_str()) {
      Raise("TypeError", "'in <string>' requires string as left operand, not " + TypeOf(item)->name);
    }
    return container.as_str().find(item.as_str()) != std::string::npos;
  }
  Object* o = container.object();
  if (o != nullptr) {
    switch (o->kind) {
      case ObjectKind::kList:
      case ObjectKind::kTuple: {
        const auto& items = o->kind == ObjectKind::kList ? static_cast<ListObject*>(o)->items
                                                         : static_cast<TupleObject*>(o)->items;
        for (std::size_t i = 0; i < items.size(); ++i) {
          Value el = items[i];
          if (Identical(el, item) || Equals(el, item)) return true;
        }
        return false;
      }
      case ObjectKind::kDict:
        return DictFind(*static_cast<DictObject*>(o), item) != nullptr;
      case ObjectKind::kSet: {
        auto* s = static_cast<SetObject*>(o);
        CheckHashable(item);
        const Value& k = Unwrap(item);
        return std::any_of(s->items.begin(), s->items.end(), [&](const Value& w) { return Equals(w, k); });
      }
      case ObjectKind::kInstance: {
        if (auto r = CallSpecial(container, "__contains__", std::span<const Value>(&item, 1))) return Truthy(*r);
        if (static_cast<InstanceObject*>(o)->cls->Lookup("__iter__") != nullptr) {
          for (const auto& el : Iterate(container)) {
            if (Equals(el, item)) return true;
          }
          return false;
        }
        break;
      }
      default:
        break;
    }
  }
  Raise("TypeError", "argument of type '" + ClassOf(container)->name + "' is not iterable");
}

std::vector<Value> Interpreter::Iterate(const Value& v) {
  if (v.is_str()) {
    std::vector<Value> out;
    for (char c : v.as_str()) out.push_back(Value::Str(std::string(1, c)));
    return out;
  }
  Object* o = v.object();
  if (o != nullptr) {
    switch (o->kind) {
      case ObjectKind::kList: return static_cast<ListObject*>(o)->items;
      case ObjectKind::kTuple: return static_cast<TupleObject*>(o)->items;
      case ObjectKind::kSet: return static_cast<SetObject*>(o)->items;
      case ObjectKind::kDict: {
        std::vector<Value> keys;
        for (const auto& kv : static_cast<DictObject*>(o)->items) keys.push_back(kv.first);
        return keys;
      }
      case ObjectKind::kProxy: {
        auto* p = static_cast<ProxyObject*>(o);
        auto rec = p->recorder;
        Value inner = p->wrapped;
        rec->OnSpecialMethod("__iter__", {});
        std::vector<Value> items = Iterate(inner);
        const Value& base = Unwrap(inner);
        if (base.as<ListObject>() || base.as<TupleObject>() || base.as<SetObject>()) {
          if (auto child = rec->ElementRecorder()) {
            for (auto& item : items) {
              if (!item.is_none()) item = NewProxy(std::move(item), child);
            }
          }
        }
        return items;
      }
      case ObjectKind::kInstance: {
        auto r = CallSpecial(v, "__iter__", {});
        if (!r) break;
        if (r->object() != o) return Iterate(*r);
        std::vector<Value> out;
        while (true) {
          CheckDeadline();
          try {
            auto next = CallSpecial(v, "__next__", {});
            if (!next) Raise("TypeError", "iter() returned non-iterator");
            out.push_back(*next);
          } catch (HostError& e) {
            if (ExceptionName(e.exc) == "StopIteration") break;
            throw;
          }
          if (out.size() > kMaxSequence) Raise("MemoryError", "");
        }
        return out;
      }
      default:
        break;
    }
  }
  Raise("TypeError", "'" + ClassOf(v)->name + "' object is not iterable");
}

Value Interpreter::GetItem(const Value& obj, const Value& key) {
  if (auto* p = obj.as<ProxyObject>()) {
    auto rec = p->recorder;
    Value inner = p->wrapped;
    rec->OnSpecialMethod("__getitem__", std::span<const Value>(&key, 1));
    Value r = GetItem(inner, key);
    const Value& base = Unwrap(inner);
    if (!r.is_none() && (base.as<ListObject>() || base.as<TupleObject>() || base.as<DictObject>())) {
      if (auto child = rec->ElementRecorder()) return NewProxy(std::move(r), std::move(child));
    }
    return r;
  }
  Object* o = obj.object();
  if (obj.is_str() || (o != nullptr && (o->kind == ObjectKind::kList || o->kind == ObjectKind::kTuple))) {
    Value k = key;
    if (auto* kp = key.as<ProxyObject>()) {
      kp->recorder->OnSpecialMethod("__index__", {});
      k = Unwrap(key);
    }
    const char* what = obj.is_str() ? "string" : (o->kind == ObjectKind::kList ? "list" : "tuple");
    if (!IsIntLike(k)) {
      Raise("TypeError", std::string(what) + " indices must be integers or slices, not " + ClassOf(k)->name);
    }
    if (obj.is_str()) {
      const std::string& s = obj.as_str();
      return Value::Str(std::string(1, s[NormalizeIndex(AsInt(k), s.size(), what)]));
    }
    const auto& items = o->kind == ObjectKind::kList ? static_cast<ListObject*>(o)->items
                                                     : static_cast<TupleObject*>(o)->items;
    return items[NormalizeIndex(AsInt(k), items.size(), what)];
  }
  if (o != nullptr && o->kind == ObjectKind::kDict) {
    if (const Value* v = DictFind(*static_cast<DictObject*>(o), key)) return *v;
    Raise("KeyError", Repr(Unwrap(key)));
  }
  if (o != nullptr && o->kind == ObjectKind::kInstance) {
    if (auto r = CallSpecial(obj, "__getitem__", std::span<const Value>(&key, 1))) return *r;
  }
  Raise("TypeError", "'" + ClassOf(obj)->name + "' object is not subscriptable");
}

void Interpreter::SetItem(const Value& obj, const Value& key, Value v) {
  Object* o = obj.object();
  if (o != nullptr) {
    switch (o->kind) {
      case ObjectKind::kProxy: {
        auto* p = static_cast<ProxyObject*>(o);
        Value args[2] = {key, v};
        p->recorder->OnSpecialMethod("__setitem__", args);
        Value inner = p->wrapped;
        SetItem(inner, key, std::move(v));
        return;
      }
      case ObjectKind::kList: {
        auto* l = static_cast<ListObject*>(o);
        const Value& k = Unwrap(key);
        if (!IsIntLike(k)) Raise("TypeError", "list indices must be integers or slices, not " + ClassOf(k)->name);
        l->items[NormalizeIndex(AsInt(k), l->items.size(), "list assignment")] = std::move(v);
        return;
      }
      case ObjectKind::kDict:
        DictSet(*static_cast<DictObject*>(o), key, std::move(v));
        return;
      case ObjectKind::kInstance: {
        Value args[2] = {key, v};
        if (CallSpecial(obj, "__setitem__", args)) return;
        break;
      }
      default:
        break;
    }
  }
  Raise("TypeError", "'" + ClassOf(obj)->name + "' object does not support item assignment");
}

Value Interpreter::Slice(const Value& obj, const Value& lo, const Value& hi) {
  if (auto* p = obj.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod("__getitem__", {});
    Value inner = p->wrapped;
    return Slice(inner, lo, hi);
  }
  auto bound = [&](const Value& v, std::int64_t dflt, std::int64_t n) {
    const Value& u = Unwrap(v);
    if (u.is_none()) return dflt;
    if (!IsIntLike(u)) Raise("TypeError", "slice indices must be integers or None");
    std::int64_t i = AsInt(u);
    if (i < 0) i += n;
    return std::clamp<std::int64_t>(i, 0, n);
  };
  auto slice_vec = [&](const std::vector<Value>& items) {
    std::int64_t n = static_cast<std::int64_t>(items.size());
    std::int64_t a = bound(lo, 0, n), b = bound(hi, n, n);
    std::vector<Value> out;
    for (std::int64_t i = a; i < b; ++i) out.push_back(items[i]);
    return out;
  };
  if (obj.is_str()) {
    const std::string& s = obj.as_str();
    std::int64_t n = static_cast<std::int64_t>(s.size());
    std::int64_t a = bound(lo, 0, n), b = bound(hi, n, n);
    return Value::Str(a < b ? s.substr(a, b - a) : "");
  }
  if (auto* l = obj.as<ListObject>()) return NewList(slice_vec(l->items));
  if (auto* t = obj.as<TupleObject>()) return NewTuple(slice_vec(t->items));
  Raise("TypeError", "'" + ClassOf(obj)->name + "' object is not subscriptable");
}

std::int64_t Interpreter::Len(const Value& v) {
  if (v.is_str()) return static_cast<std::int64_t>(v.as_str().size());
  Object* o = v.object();
  if (o != nullptr) {
    switch (o->kind) {
      case ObjectKind::kList: return static_cast<std::int64_t>(static_cast<ListObject*>(o)->items.size());
      case ObjectKind::kTuple: return static_cast<std::int64_t>(static_cast<TupleObject*>(o)->items.size());
      case ObjectKind::kDict: return static_cast<std::int64_t>(static_cast<DictObject*>(o)->items.size());
      case ObjectKind::kSet: return static_cast<std::int64_t>(static_cast<SetObject*>(o)->items.size());
      case ObjectKind::kProxy: {
        auto* p = static_cast<ProxyObject*>(o);
        p->recorder->OnSpecialMethod("__len__", {});
        Value inner = p->wrapped;
        return Len(inner);
      }
      case ObjectKind::kInstance:
        if (auto r = CallSpecial(v, "__len__", {})) {
          if (!IsIntLike(*r)) Raise("TypeError", "'" + ClassOf(*r)->name + "' object cannot be interpreted as an integer");
          return AsInt(*r);
        }
        break;
      default:
        break;
    }
  }
  Raise("TypeError", "object of type '" + ClassOf(v)->name + "' has no len()");
}

std::string Interpreter::Str(const Value& v) {
  if (v.is_str()) return v.as_str();
  if (auto* p = v.as<ProxyObject>()) {
    p->recorder->OnSpecialMethod("__str__", {});
    Value inner = p->wrapped;
    return Str(inner);
  }
  if (auto* inst = v.as<InstanceObject>()) {
    if (auto r = CallSpecial(v, "__str__", {})) {
      if (!r->is_str()) Raise("TypeError", "__str__ returned non-string");
      return r->as_str();
    }
    if (inst->cls->IsSubclassOf(rt_.base_exception_class())) {
      const Value* args = inst->attrs.Find("args");
      auto* t = args ? args->as<TupleObject>() : nullptr;
      if (t == nullptr || t->items.empty()) return "";
      if (t->items.size() == 1) {
        if (inst->cls->name == "KeyError") return Repr(t->items[0]);
        return Str(t->items[0]);
      }
      return Repr(*args);
    }
  }
  return Repr(v);
}

std::string Interpreter::Repr(const Value& v) { return ReprDepth(v, 0); }

std::string Interpreter::ReprDepth(const Value& v, int depth) {
  if (depth > 20) return "...";
  if (v.is_none()) return "None";
  if (v.is_bool()) return v.as_bool() ? "True" : "False";
  if (v.is_int()) return std::to_string(v.as_int());
  if (v.is_float()) return FloatRepr(v.as_float());
  if (v.is_str()) return StrRepr(v.as_str());
  Object* o = v.object();
  auto join = [&](const std::vector<Value>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out += ", ";
      out += ReprDepth(items[i], depth + 1);
    }
    return out;
  };
  switch (o->kind) {
    case ObjectKind::kList: return "[" + join(static_cast<ListObject*>(o)->items) + "]";
    case ObjectKind::kTuple: {
      const auto& items = static_cast<TupleObject*>(o)->items;
      return "(" + join(items) + (items.size() == 1 ? ",)" : ")");
    }
    case ObjectKind::kSet: {
      const auto& items = static_cast<SetObject*>(o)->items;
      return items.empty() ? "set()" : "{" + join(items) + "}";
    }
    case ObjectKind::kDict: {
      std::string out = "{";
      bool first = true;
      for (const auto& [k, val] : static_cast<DictObject*>(o)->items) {
        if (!first) out += ", ";
        first = false;
        out += ReprDepth(k, depth + 1) + ": " + ReprDepth(val, depth + 1);
      }
      return out + "}";
    }
    case ObjectKind::kFunction: return "<function " + static_cast<FunctionObject*>(o)->qualname + ">";
    case ObjectKind::kBuiltinFunction: return "<built-in function " + static_cast<BuiltinFunction*>(o)->name + ">";
    case ObjectKind::kBoundMethod: return "<bound method>";
    case ObjectKind::kClass: {
      auto* c = static_cast<ClassObject*>(o);
      return "<class '" + c->qualname() + "'>";
    }
    case ObjectKind::kModule: return "<module '" + static_cast<ModuleObject*>(o)->name + "'>";
    case ObjectKind::kProxy: {
      auto* p = static_cast<ProxyObject*>(o);
      p->recorder->OnSpecialMethod("__repr__", {});
      Value inner = p->wrapped;
      return ReprDepth(inner, depth);
    }
    case ObjectKind::kInstance: {
      auto* inst = static_cast<InstanceObject*>(o);
      if (auto r = CallSpecial(v, "__repr__", {})) {
        if (!r->is_str()) Raise("TypeError", "__repr__ returned non-string");
        return r->as_str();
      }
      if (inst->cls->IsSubclassOf(rt_.base_exception_class())) {
        const Value* args = inst->attrs.Find("args");
        auto* t = args ? args->as<TupleObject>() : nullptr;
        std::string inner = t ? join(t->items) : "";
        return inst->cls->name + "(" + inner + ")";
      }
      return "<" + inst->cls->qualname() + " object>";
    }
  }
  return "<object>";
}

}  // namespace tracegen::lang
