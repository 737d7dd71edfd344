#include "tracegen/types/gradual_type.hpp"

#include <algorithm>
#include <cctype>

namespace tracegen::types {

bool IsSubclass(const ClassInfo& a, const ClassInfo& b) {
  if (&a == &b || a.qualified_name == b.qualified_name) return true;
  for (const auto& s : a.superclasses) {
    if (s && IsSubclass(*s, b)) return true;
  }
  return false;
}

const char* CollectionName(CollectionKind k) {
  switch (k) {
    case CollectionKind::kList: return "list";
    case CollectionKind::kSet: return "set";
    case CollectionKind::kDict: return "dict";
    case CollectionKind::kTupleVariadic: return "tuple";
  }
  return "?";
}

GradualType GradualType::None() {
  GradualType t;
  t.kind_ = TypeKind::kNone;
  return t;
}

GradualType GradualType::Instance(ClassRef cls, std::vector<GradualType> type_args) {
  GradualType t;
  t.kind_ = TypeKind::kInstance;
  t.cls_ = std::move(cls);
  t.children_ = std::move(type_args);
  return t;
}

GradualType GradualType::Union(std::vector<GradualType> members) {
  std::vector<GradualType> flat;
  auto add = [&flat](const GradualType& m) {
    if (std::find(flat.begin(), flat.end(), m) == flat.end()) flat.push_back(m);
  };
  for (auto& m : members) {
    if (m.kind_ == TypeKind::kUnion) {
      for (const auto& inner : m.children_) add(inner);
    } else {
      add(m);
    }
  }
  if (flat.empty()) return Any();
  if (flat.size() == 1) return flat.front();
  GradualType t;
  t.kind_ = TypeKind::kUnion;
  t.children_ = std::move(flat);
  return t;
}

GradualType GradualType::Tuple(std::vector<GradualType> elements) {
  GradualType t;
  t.kind_ = TypeKind::kTuple;
  t.children_ = std::move(elements);
  return t;
}

GradualType GradualType::Collection(CollectionKind kind, std::vector<GradualType> elements) {
  GradualType t;
  t.kind_ = TypeKind::kCollection;
  t.collection_ = kind;
  std::size_t want = kind == CollectionKind::kDict ? 2 : 1;
  elements.resize(want);
  t.children_ = std::move(elements);
  return t;
}

std::vector<GradualType> GradualType::Members() const {
  if (kind_ == TypeKind::kUnion) return children_;
  return {*this};
}

bool GradualType::operator==(const GradualType& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case TypeKind::kAny:
    case TypeKind::kNone:
      return true;
    case TypeKind::kInstance:
      if (cls_ != other.cls_ && (!cls_ || !other.cls_ || cls_->qualified_name != other.cls_->qualified_name))
        return false;
      return children_ == other.children_;
    case TypeKind::kCollection:
      return collection_ == other.collection_ && children_ == other.children_;
    case TypeKind::kUnion:
      // members are distinct, so equal size plus containment is set equality
      if (children_.size() != other.children_.size()) return false;
      for (const auto& m : children_) {
        if (std::find(other.children_.begin(), other.children_.end(), m) == other.children_.end()) return false;
      }
      return true;
    case TypeKind::kTuple:
      return children_ == other.children_;
  }
  return false;
}

namespace {

bool IsBuiltinNamed(const ClassRef& c, std::string_view name) {
  return c && c->builtin && c->qualified_name == name;
}

bool IsObjectClass(const GradualType& t) {
  return t.kind() == TypeKind::kInstance && IsBuiltinNamed(t.cls(), "object");
}

bool Consistent(const GradualType& s, const GradualType& t) {
  if (s.is_any() || t.is_any()) return true;
  if (s.kind() == TypeKind::kUnion) {
    return std::all_of(s.children().begin(), s.children().end(),
                       [&](const GradualType& m) { return Consistent(m, t); });
  }
  if (t.kind() == TypeKind::kUnion) {
    return std::any_of(t.children().begin(), t.children().end(),
                       [&](const GradualType& m) { return Consistent(s, m); });
  }
  switch (s.kind()) {
    case TypeKind::kNone:
      return t.is_none() || IsObjectClass(t);
    case TypeKind::kInstance:
      return t.kind() == TypeKind::kInstance && IsSubclass(*s.cls(), *t.cls());
    case TypeKind::kCollection:
      if (IsObjectClass(t)) return true;
      if (t.kind() != TypeKind::kCollection || t.collection_kind() != s.collection_kind()) return false;
      for (std::size_t i = 0; i < s.children().size(); ++i) {
        if (!Consistent(s.children()[i], t.children()[i])) return false;
      }
      return true;
    case TypeKind::kTuple:
      if (IsObjectClass(t)) return true;
      if (t.kind() == TypeKind::kCollection && t.collection_kind() == CollectionKind::kTupleVariadic) {
        return std::all_of(s.children().begin(), s.children().end(),
                           [&](const GradualType& e) { return Consistent(e, t.children()[0]); });
      }
      if (t.kind() != TypeKind::kTuple || t.children().size() != s.children().size()) return false;
      for (std::size_t i = 0; i < s.children().size(); ++i) {
        if (!Consistent(s.children()[i], t.children()[i])) return false;
      }
      return true;
    default:
      return false;
  }
}

}  // namespace

bool IsConsistent(const GradualType& s, const GradualType& t) { return Consistent(Unify(s), Unify(t)); }

GradualType Unify(const GradualType& t) {
  auto unify_all = [](const std::vector<GradualType>& ts) {
    std::vector<GradualType> out;
    out.reserve(ts.size());
    for (const auto& x : ts) out.push_back(Unify(x));
    return out;
  };
  switch (t.kind()) {
    case TypeKind::kAny:
    case TypeKind::kNone:
      return t;
    case TypeKind::kInstance: {
      const ClassRef& c = t.cls();
      if (IsBuiltinNamed(c, "NoneType")) return GradualType::None();
      if (IsBuiltinNamed(c, "list")) return GradualType::Collection(CollectionKind::kList, unify_all(t.children()));
      if (IsBuiltinNamed(c, "set")) return GradualType::Collection(CollectionKind::kSet, unify_all(t.children()));
      if (IsBuiltinNamed(c, "dict")) return GradualType::Collection(CollectionKind::kDict, unify_all(t.children()));
      if (IsBuiltinNamed(c, "tuple")) {
        if (t.children().empty()) return GradualType::Collection(CollectionKind::kTupleVariadic, {});
        return GradualType::Tuple(unify_all(t.children()));
      }
      return GradualType::Instance(c);
    }
    case TypeKind::kUnion:
      return GradualType::Union(unify_all(t.children()));
    case TypeKind::kTuple:
      return GradualType::Tuple(unify_all(t.children()));
    case TypeKind::kCollection:
      return GradualType::Collection(t.collection_kind(), unify_all(t.children()));
  }
  return t;
}

GradualType UnionWithCap(const GradualType& existing, const GradualType& added, std::size_t cap) {
  if (cap == 0) cap = 1;
  GradualType base = Unify(existing);
  if (base.is_any()) return Unify(added);
  std::vector<GradualType> members = base.Members();
  for (const auto& m : Unify(added).Members()) {
    if (std::find(members.begin(), members.end(), m) == members.end()) members.push_back(m);
  }
  if (members.size() > cap) members.resize(cap);
  return GradualType::Union(std::move(members));
}

std::string Render(const GradualType& t) {
  switch (t.kind()) {
    case TypeKind::kAny:
      return "Any";
    case TypeKind::kNone:
      return "none";
    case TypeKind::kInstance: {
      std::string out = t.cls() ? t.cls()->qualified_name : "?";
      if (!t.children().empty()) {
        out += '[';
        for (std::size_t i = 0; i < t.children().size(); ++i) {
          if (i) out += ", ";
          out += Render(t.children()[i]);
        }
        out += ']';
      }
      return out;
    }
    case TypeKind::kUnion: {
      std::string out;
      for (const auto& m : RenderMembers(t, true)) {
        if (!out.empty()) out += " | ";
        out += m;
      }
      return out;
    }
    case TypeKind::kTuple: {
      if (t.children().empty()) return "tuple[()]";
      std::string out = "tuple[";
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) out += ", ";
        out += Render(t.children()[i]);
      }
      return out + "]";
    }
    case TypeKind::kCollection: {
      std::string out = CollectionName(t.collection_kind());
      bool bare = std::all_of(t.children().begin(), t.children().end(),
                              [](const GradualType& e) { return e.is_any(); });
      if (bare) return out;
      out += '[';
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) out += ", ";
        out += Render(t.children()[i]);
      }
      if (t.collection_kind() == CollectionKind::kTupleVariadic) out += ", ...";
      return out + "]";
    }
  }
  return "?";
}

std::vector<std::string> RenderMembers(const GradualType& t, bool sorted) {
  std::vector<std::string> out;
  for (const auto& m : t.Members()) out.push_back(Render(m));
  if (sorted) std::sort(out.begin(), out.end());
  return out;
}

namespace {

class TypeParser {
 public:
  TypeParser(std::string_view text, const ClassResolver& resolve) : text_(text), resolve_(resolve) {}

  GradualType ParseAll() {
    GradualType t = ParseUnion();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) {
    throw TypeParseError("cannot parse type '" + std::string(text_) + "': " + what);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool Accept(std::string_view tok) {
    SkipSpace();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void Expect(std::string_view tok) {
    if (!Accept(tok)) Fail("expected '" + std::string(tok) + "'");
  }

  std::string Name() {
    SkipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_) Fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  GradualType ParseUnion() {
    std::vector<GradualType> members{ParseAtom()};
    while (Accept("|")) members.push_back(ParseAtom());
    return GradualType::Union(std::move(members));
  }

  GradualType ParseAtom() {
    std::string name = Name();
    std::vector<GradualType> args;
    bool variadic = false;
    bool empty_tuple = false;
    if (Accept("[")) {
      if (Accept("(")) {
        Expect(")");
        empty_tuple = true;
      } else {
        args.push_back(ParseUnion());
        while (Accept(",")) {
          if (Accept("...")) {
            variadic = true;
            break;
          }
          args.push_back(ParseUnion());
        }
      }
      Expect("]");
    }
    if (name == "Any") return GradualType::Any();
    if (name == "none" || name == "None" || name == "NoneType") return GradualType::None();
    if (name == "list") return GradualType::Collection(CollectionKind::kList, std::move(args));
    if (name == "set") return GradualType::Collection(CollectionKind::kSet, std::move(args));
    if (name == "dict") return GradualType::Collection(CollectionKind::kDict, std::move(args));
    if (name == "tuple") {
      if (empty_tuple) return GradualType::Tuple({});
      if (variadic || args.empty()) return GradualType::Collection(CollectionKind::kTupleVariadic, std::move(args));
      return GradualType::Tuple(std::move(args));
    }
    ClassRef cls = resolve_ ? resolve_(name) : nullptr;
    if (!cls) Fail("unknown class '" + name + "'");
    return GradualType::Instance(std::move(cls), std::move(args));
  }

  std::string_view text_;
  const ClassResolver& resolve_;
  std::size_t pos_ = 0;
};

}  // namespace

GradualType ParseType(std::string_view text, const ClassResolver& resolve) {
  return TypeParser(text, resolve).ParseAll();
}

}  // namespace tracegen::types
