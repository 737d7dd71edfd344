#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tracegen::types {

struct ClassInfo;
using ClassRef = std::shared_ptr<const ClassInfo>;

/// Nominal class description shared by the type model and the analysis.
struct ClassInfo {
  std::string qualified_name;
  std::vector<ClassRef> superclasses;
  std::set<std::string> declared_attributes;
  bool builtin = false;
};

/// True when `a` is `b` or a (transitive) nominal subclass of it.
bool IsSubclass(const ClassInfo& a, const ClassInfo& b);

enum class TypeKind { kAny, kNone, kInstance, kUnion, kTuple, kCollection };
enum class CollectionKind { kList, kSet, kDict, kTupleVariadic };

const char* CollectionName(CollectionKind k);

class GradualType {
 public:
  GradualType() = default;  // ANY

  static GradualType Any() { return GradualType(); }
  static GradualType None();
  static GradualType Instance(ClassRef cls, std::vector<GradualType> type_args = {});
  // Flattens nested unions and drops duplicates; a single survivor is
  // returned as is and an empty list yields ANY.
  static GradualType Union(std::vector<GradualType> members);
  static GradualType Tuple(std::vector<GradualType> elements);
  // list/set/tuple-variadic take one element type, dict takes key and value.
  static GradualType Collection(CollectionKind kind, std::vector<GradualType> elements);
  static GradualType List(GradualType e) { return Collection(CollectionKind::kList, {std::move(e)}); }
  static GradualType Set(GradualType e) { return Collection(CollectionKind::kSet, {std::move(e)}); }
  static GradualType Dict(GradualType k, GradualType v) {
    return Collection(CollectionKind::kDict, {std::move(k), std::move(v)});
  }

  TypeKind kind() const { return kind_; }
  bool is_any() const { return kind_ == TypeKind::kAny; }
  bool is_none() const { return kind_ == TypeKind::kNone; }
  const ClassRef& cls() const { return cls_; }
  CollectionKind collection_kind() const { return collection_; }
  // Union members, tuple slots, collection element slots or generic args.
  const std::vector<GradualType>& children() const { return children_; }

  // Union members, or the type itself for non-unions.
  std::vector<GradualType> Members() const;

  bool operator==(const GradualType& other) const;
  bool operator!=(const GradualType& other) const { return !(*this == other); }

 private:
  TypeKind kind_ = TypeKind::kAny;
  ClassRef cls_;
  CollectionKind collection_ = CollectionKind::kList;
  std::vector<GradualType> children_;
};

bool IsConsistent(const GradualType& s, const GradualType& t);

GradualType Unify(const GradualType& t);

GradualType UnionWithCap(const GradualType& existing, const GradualType& added, std::size_t cap);

/// Single-line rendering; union members are sorted and joined by " | ".
std::string Render(const GradualType& t);

/// Rendered union members (or the single type), in member order or sorted.
std::vector<std::string> RenderMembers(const GradualType& t, bool sorted);

class TypeParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resolves a class name to a ClassRef; returns null when unknown.
using ClassResolver = std::function<ClassRef(std::string_view)>;

/// Inverse of Render for the subset it produces.
GradualType ParseType(std::string_view text, const ClassResolver& resolve);

}  // namespace tracegen::types
