#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace tracegen::lang {

class Object;
using ObjectRef = std::shared_ptr<Object>;

struct NoneValue {
  bool operator==(const NoneValue&) const = default;
};

/// A host-language value. Scalars are stored inline; everything else is a
/// reference to a heap object owned by the interpreter session.
class Value {
 public:
  Value() = default;
  Value(NoneValue) {}
  explicit Value(bool b) : v_(b) {}
  explicit Value(std::int64_t i) : v_(i) {}
  explicit Value(double d) : v_(d) {}
  explicit Value(std::string s) : v_(std::move(s)) {}
  explicit Value(ObjectRef o) : v_(std::move(o)) {}

  static Value Int(std::int64_t i) { return Value(i); }
  static Value Float(double d) { return Value(d); }
  static Value Str(std::string s) { return Value(std::move(s)); }
  static Value Bool(bool b) { return Value(b); }

  bool is_none() const { return std::holds_alternative<NoneValue>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_float() const { return std::holds_alternative<double>(v_); }
  bool is_str() const { return std::holds_alternative<std::string>(v_); }
  bool is_object() const { return std::holds_alternative<ObjectRef>(v_); }
  // int, bool or float
  bool is_number() const { return is_int() || is_bool() || is_float(); }

  bool as_bool() const { return std::get<bool>(v_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  double as_float() const { return std::get<double>(v_); }
  const std::string& as_str() const { return std::get<std::string>(v_); }
  const ObjectRef& as_object() const { return std::get<ObjectRef>(v_); }

  // Numeric view of int/bool/float values.
  double number() const {
    if (is_float()) return as_float();
    if (is_int()) return static_cast<double>(as_int());
    return as_bool() ? 1.0 : 0.0;
  }

  Object* object() const { return is_object() ? as_object().get() : nullptr; }

  template <typename T>
  T* as() const;

 private:
  std::variant<NoneValue, bool, std::int64_t, double, std::string, ObjectRef> v_;
};

/// Insertion-ordered name table used for module globals, class bodies,
/// instance attributes and function locals.
class AttrTable {
 public:
  const Value* Find(std::string_view name) const {
    if (entries_.size() <= kLinearLimit) {
      for (const auto& e : entries_) {
        if (e.first == name) return &e.second;
      }
      return nullptr;
    }
    auto it = index_.find(std::string(name));
    return it == index_.end() ? nullptr : &entries_[it->second].second;
  }
  Value* Find(std::string_view name) {
    return const_cast<Value*>(static_cast<const AttrTable*>(this)->Find(name));
  }
  bool Contains(std::string_view name) const { return Find(name) != nullptr; }

  void Set(std::string_view name, Value v) {
    if (Value* slot = Find(name)) {
      *slot = std::move(v);
      return;
    }
    entries_.emplace_back(std::string(name), std::move(v));
    if (entries_.size() > kLinearLimit) {
      if (index_.empty()) {
        for (size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].first, i);
      } else {
        index_.emplace(entries_.back().first, entries_.size() - 1);
      }
    }
  }

  bool Erase(std::string_view name);

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  void Clear() {
    entries_.clear();
    index_.clear();
  }

 private:
  static constexpr size_t kLinearLimit = 12;
  std::vector<std::pair<std::string, Value>> entries_;
  std::unordered_map<std::string, size_t> index_;
};

}  // namespace tracegen::lang
