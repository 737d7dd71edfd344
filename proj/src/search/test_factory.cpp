#include "tracegen/search/test_factory.hpp"

#include <algorithm>
#include <cmath>

namespace tracegen::search {

using exec::Statement;
using exec::StatementKind;
using exec::TestCase;
using infer::UniformIndex;
using infer::UniformReal;
using types::CollectionKind;
using types::GradualType;
using types::TypeKind;

namespace {

bool IsBuiltinNamed(const types::ClassRef& c, const char* name) {
  return c && c->builtin && c->qualified_name == name;
}

bool IsScalarName(const std::string& n) { return n == "int" || n == "bool" || n == "float" || n == "str"; }

bool Unhashable(const GradualType& t) {
  return t.kind() == TypeKind::kCollection && t.collection_kind() != CollectionKind::kTupleVariadic;
}

}  // namespace

TestFactory::TestFactory(const analysis::TestCluster& cluster, infer::Rng& rng, FactoryOptions options)
    : cluster_(cluster), rng_(rng), options_(options) {
  targets_ = cluster.SubjectCallables();
  for (const auto& c : cluster.classes) {
    if (IsBuiltinNamed(c, "object")) continue;
    if (!c->builtin && !cluster.constructors.count(c->qualified_name)) continue;
    concrete_.push_back(c);
  }
}

GradualType TestFactory::RandomConcreteType() {
  if (concrete_.empty()) return GradualType::None();
  return types::Unify(GradualType::Instance(concrete_[UniformIndex(rng_, concrete_.size())]));
}

int TestFactory::AddStatement(TestCase& test, Statement s) {
  test.statements.push_back(std::move(s));
  return static_cast<int>(test.statements.size()) - 1;
}

GradualType TestFactory::SelectType(int callable, const std::string& param) {
  auto key = std::make_pair(callable, param);
  auto it = candidates_.find(key);
  if (it == candidates_.end()) {
    std::vector<GradualType> cands;
    if (const auto* t = cluster_.TraceFor(callable, param)) cands = infer::InferCandidates(*t, cluster_);
    it = candidates_.emplace(key, std::move(cands)).first;
  }
  GradualType declared;
  for (const auto& p : cluster_.callables.at(callable).parameters) {
    if (p.name == param) declared = p.declared;
  }
  return infer::SelectParameterType(declared, it->second, options_.weights, rng_).type;
}

GradualType TestFactory::ReturnType(int callable) const {
  const auto& c = cluster_.callables.at(callable);
  if (c.kind == analysis::CallableKind::kConstructor) return GradualType::Instance(c.owning_class);
  if (auto it = cluster_.recorded_returns.find(callable); it != cluster_.recorded_returns.end()) return it->second;
  return types::Unify(c.declared_return);
}

std::optional<int> TestFactory::Reuse(const TestCase& test, const GradualType& t, std::size_t limit) {
  std::vector<int> slots;
  for (std::size_t i = 0; i < std::min(limit, test.size()); ++i) {
    const GradualType& st = test.statements[i].type;
    if (st.is_any()) continue;
    if (st.is_none() != t.is_none()) continue;
    if (types::IsConsistent(st, t)) slots.push_back(static_cast<int>(i));
  }
  if (slots.empty()) return std::nullopt;
  return slots[UniformIndex(rng_, slots.size())];
}

exec::Primitive TestFactory::RandomPrimitive(const std::string& builtin) {
  std::vector<const lang::Literal*> pool;
  for (const auto& lit : cluster_.constants) {
    bool match = (builtin == "int" && std::holds_alternative<std::int64_t>(lit)) ||
                 (builtin == "float" && std::holds_alternative<double>(lit)) ||
                 (builtin == "str" && std::holds_alternative<std::string>(lit));
    if (match) pool.push_back(&lit);
  }
  bool from_pool = !pool.empty() && UniformReal(rng_) < options_.pool_probability;
  if (builtin == "bool") return UniformReal(rng_) < 0.5;
  if (builtin == "int") {
    if (from_pool) return std::get<std::int64_t>(*pool[UniformIndex(rng_, pool.size())]);
    return static_cast<std::int64_t>(UniformIndex(rng_, 201)) - 100;
  }
  if (builtin == "float") {
    if (from_pool) return std::get<double>(*pool[UniformIndex(rng_, pool.size())]);
    return std::round((UniformReal(rng_) * 200.0 - 100.0) * 10.0) / 10.0;
  }
  if (from_pool) return std::get<std::string>(*pool[UniformIndex(rng_, pool.size())]);
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz";
  std::string s;
  std::size_t n = UniformIndex(rng_, 7);
  for (std::size_t i = 0; i < n; ++i) s += kAlphabet[UniformIndex(rng_, 26)];
  return s;
}

std::optional<int> TestFactory::Synthesize(TestCase& test, const GradualType& wanted, int depth) {
  GradualType t = types::Unify(wanted);
  if (depth > options_.max_depth + 2) return std::nullopt;
  switch (t.kind()) {
    case TypeKind::kAny:
      return Synthesize(test, RandomConcreteType(), depth);
    case TypeKind::kNone: {
      Statement s;
      s.kind = StatementKind::kNone;
      s.type = GradualType::None();
      return AddStatement(test, std::move(s));
    }
    case TypeKind::kUnion:
      return Synthesize(test, t.children()[UniformIndex(rng_, t.children().size())], depth);
    case TypeKind::kInstance: {
      const auto& cls = t.cls();
      if (cls->builtin && IsScalarName(cls->qualified_name)) {
        if (UniformReal(rng_) < options_.reuse_probability * 0.5) {
          if (auto slot = Reuse(test, t, test.size())) return slot;
        }
        Statement s;
        s.kind = StatementKind::kPrimitive;
        s.value = RandomPrimitive(cls->qualified_name);
        s.type = t;
        return AddStatement(test, std::move(s));
      }
      if (IsBuiltinNamed(cls, "object")) return Synthesize(test, RandomConcreteType(), depth);
      if (UniformReal(rng_) < options_.reuse_probability) {
        if (auto slot = Reuse(test, t, test.size())) return slot;
      }
      return SynthesizeInstance(test, cls, depth);
    }
    case TypeKind::kCollection: {
      if (depth > options_.max_depth) return std::nullopt;
      if (UniformReal(rng_) < options_.reuse_probability * 0.5) {
        if (auto slot = Reuse(test, t, test.size())) return slot;
      }
      Statement s;
      s.kind = StatementKind::kCollection;
      s.collection = t.collection_kind();
      std::size_t n = UniformIndex(rng_, 4);
      if (t.collection_kind() == CollectionKind::kDict) {
        GradualType key = t.children()[0];
        if (key.is_any() || Unhashable(key) || key.kind() == TypeKind::kUnion) {
          key = GradualType::Instance(cluster_.Builtin("str"));
        }
        GradualType value = t.children()[1];
        if (value.is_any() && n > 0) value = RandomConcreteType();
        for (std::size_t i = 0; i < n; ++i) {
          auto k = Synthesize(test, key, depth + 1);
          auto v = Synthesize(test, value, depth + 1);
          if (!k || !v) continue;
          s.args.push_back(*k);
          s.args.push_back(*v);
        }
        s.type = GradualType::Dict(key, value);
      } else {
        GradualType elem = t.children()[0];
        if (elem.is_any() && n > 0) elem = RandomConcreteType();
        if (t.collection_kind() == CollectionKind::kSet && Unhashable(elem)) {
          elem = GradualType::Instance(cluster_.Builtin("str"));
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (auto e = Synthesize(test, elem, depth + 1)) s.args.push_back(*e);
        }
        s.type = GradualType::Collection(t.collection_kind(), {n > 0 ? elem : t.children()[0]});
      }
      return AddStatement(test, std::move(s));
    }
    case TypeKind::kTuple: {
      if (depth > options_.max_depth) return std::nullopt;
      Statement s;
      s.kind = StatementKind::kCollection;
      s.collection = CollectionKind::kTupleVariadic;
      for (const auto& slot_type : t.children()) {
        auto e = Synthesize(test, slot_type, depth + 1);
        if (!e) {
          Statement none;
          none.kind = StatementKind::kNone;
          none.type = GradualType::None();
          e = AddStatement(test, std::move(none));
        }
        s.args.push_back(*e);
      }
      s.type = t;
      return AddStatement(test, std::move(s));
    }
  }
  return std::nullopt;
}

std::optional<int> TestFactory::SynthesizeInstance(TestCase& test, const types::ClassRef& cls, int depth) {
  if (depth > options_.max_depth) return std::nullopt;
  std::vector<types::ClassRef> options;
  for (const auto& c : cluster_.classes) {
    if (!c->builtin && cluster_.constructors.count(c->qualified_name) && types::IsSubclass(*c, *cls)) {
      options.push_back(c);
    }
  }
  if (options.empty()) return std::nullopt;
  const auto& chosen = options[UniformIndex(rng_, options.size())];
  int ctor = cluster_.constructors.at(chosen->qualified_name);
  std::size_t mark = test.size();
  Statement s;
  s.kind = StatementKind::kConstruct;
  s.callable = ctor;
  if (!FillCall(test, ctor, s, depth + 1)) {
    test.statements.resize(mark);
    return std::nullopt;
  }
  s.type = GradualType::Instance(chosen);
  return AddStatement(test, std::move(s));
}

bool TestFactory::FillCall(TestCase& test, int callable, Statement& s, int depth) {
  const auto& c = cluster_.callables.at(callable);
  if (c.kind == analysis::CallableKind::kMethod) {
    GradualType owner = GradualType::Instance(c.owning_class);
    std::optional<int> receiver;
    if (UniformReal(rng_) < options_.reuse_probability) receiver = Reuse(test, owner, test.size());
    if (!receiver) receiver = SynthesizeInstance(test, c.owning_class, depth);
    if (!receiver) return false;
    s.args.push_back(*receiver);
  }
  for (const auto& p : c.parameters) {
    GradualType t = SelectType(callable, p.name);
    auto slot = Synthesize(test, t, depth);
    if (!slot) {
      Statement none;
      none.kind = StatementKind::kNone;
      none.type = GradualType::None();
      slot = AddStatement(test, std::move(none));
    }
    s.args.push_back(*slot);
  }
  return true;
}

bool TestFactory::AppendCall(TestCase& test, int callable) {
  TestCase copy = test;
  const auto& c = cluster_.callables.at(callable);
  Statement s;
  s.kind = c.kind == analysis::CallableKind::kConstructor ? StatementKind::kConstruct : StatementKind::kCall;
  s.callable = callable;
  if (!FillCall(copy, callable, s, 0)) return false;
  s.type = ReturnType(callable);
  AddStatement(copy, std::move(s));
  if (copy.size() > options_.max_length) return false;
  test = std::move(copy);
  return true;
}

bool TestFactory::AppendRandomCall(TestCase& test, const std::vector<double>& weights) {
  if (targets_.empty()) return false;
  std::size_t pick = UniformIndex(rng_, targets_.size());
  if (weights.size() == targets_.size()) {
    double total = 0;
    for (double w : weights) total += w;
    if (total > 0) {
      double r = UniformReal(rng_) * total;
      for (std::size_t i = 0; i < weights.size(); ++i) {
        if (r < weights[i]) {
          pick = i;
          break;
        }
        r -= weights[i];
      }
    }
  }
  return AppendCall(test, targets_[pick]);
}

TestCase TestFactory::RandomTest(const std::vector<double>& weights) {
  TestCase test;
  std::size_t calls = 1 + UniformIndex(rng_, 4);
  for (std::size_t i = 0; i < calls; ++i) AppendRandomCall(test, weights);
  return test;
}

std::optional<int> TestFactory::Repair(const TestCase& test, const GradualType& t, std::size_t limit) {
  std::vector<int> slots;
  for (std::size_t i = 0; i < std::min(limit, test.size()); ++i) {
    const GradualType& st = test.statements[i].type;
    if (st.is_none() != t.is_none()) continue;
    if (t.is_any() || types::IsConsistent(st, t)) slots.push_back(static_cast<int>(i));
  }
  if (slots.empty()) return std::nullopt;
  return slots[UniformIndex(rng_, slots.size())];
}

void TestFactory::Splice(TestCase& dst, const TestCase& src, std::size_t from) {
  std::vector<int> mapping(src.size(), -1);
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (j < from) continue;
    Statement s = src.statements[j];
    bool ok = true;
    for (int& a : s.args) {
      int mapped = a >= static_cast<int>(from) ? mapping[a] : -1;
      if (mapped < 0) {
        auto r = Repair(dst, src.statements[a].type, dst.size());
        if (!r) {
          ok = false;
          break;
        }
        mapped = *r;
      }
      a = mapped;
    }
    if (!ok) continue;
    mapping[j] = AddStatement(dst, std::move(s));
  }
}

bool TestFactory::DeleteStatement(TestCase& test, std::size_t index) {
  if (index >= test.size()) return false;
  TestCase out;
  std::vector<int> mapping(test.size(), -1);
  for (std::size_t j = 0; j < test.size(); ++j) {
    if (j == index) continue;
    Statement s = test.statements[j];
    bool ok = true;
    for (int& a : s.args) {
      int mapped = mapping[a];
      if (mapped < 0) {
        auto r = Repair(out, test.statements[a].type, out.size());
        if (!r) {
          ok = false;
          break;
        }
        mapped = *r;
      }
      a = mapped;
    }
    if (!ok) continue;
    mapping[j] = AddStatement(out, std::move(s));
  }
  test = std::move(out);
  return true;
}

bool TestFactory::ChangeStatement(TestCase& test, std::size_t index) {
  if (index >= test.size()) return false;
  Statement& s = test.statements[index];
  switch (s.kind) {
    case StatementKind::kPrimitive: {
      if (auto* i = std::get_if<std::int64_t>(&s.value)) {
        if (UniformReal(rng_) < 0.5) {
          std::int64_t delta = static_cast<std::int64_t>(UniformIndex(rng_, 20)) - 10;
          *i += delta == 0 ? 1 : delta;
        } else {
          s.value = RandomPrimitive("int");
        }
      } else if (auto* d = std::get_if<double>(&s.value)) {
        if (UniformReal(rng_) < 0.5) {
          *d += std::round((UniformReal(rng_) * 20.0 - 10.0) * 10.0) / 10.0;
        } else {
          s.value = RandomPrimitive("float");
        }
      } else if (auto* b = std::get_if<bool>(&s.value)) {
        *b = !*b;
      } else if (auto* str = std::get_if<std::string>(&s.value)) {
        double r = UniformReal(rng_);
        auto printable = [this] { return static_cast<char>(' ' + UniformIndex(rng_, 95)); };
        if (r < 0.3 && !str->empty()) {
          str->erase(UniformIndex(rng_, str->size()), 1);
        } else if (r < 0.6) {
          str->insert(str->begin() + static_cast<long>(UniformIndex(rng_, str->size() + 1)),
                      printable());
        } else if (r < 0.8 && !str->empty()) {
          (*str)[UniformIndex(rng_, str->size())] = printable();
        } else {
          s.value = RandomPrimitive("str");
        }
      }
      return true;
    }
    case StatementKind::kConstruct:
    case StatementKind::kCall: {
      const auto& c = cluster_.callables.at(s.callable);
      std::size_t receiver = c.kind == analysis::CallableKind::kMethod ? 1 : 0;
      if (s.args.size() <= receiver) return false;
      std::size_t pos = receiver + UniformIndex(rng_, s.args.size() - receiver);
      const std::string& param = c.parameters[pos - receiver].name;
      if (UniformReal(rng_) < 0.5) {
        auto other = Reuse(test, test.statements[s.args[pos]].type, index);
        if (other && *other != s.args[pos]) {
          s.args[pos] = *other;
          return true;
        }
      }
      // Build a fresh argument in front of the statement.
      TestCase prefix;
      prefix.statements.assign(test.statements.begin(), test.statements.begin() + static_cast<long>(index));
      auto slot = Synthesize(prefix, SelectType(s.callable, param), 0);
      if (!slot) return false;
      int shift = static_cast<int>(prefix.size() - index);
      Statement changed = s;
      changed.args[pos] = *slot;
      for (std::size_t k = 0; k < changed.args.size(); ++k) {
        if (k != pos && changed.args[k] >= static_cast<int>(index)) changed.args[k] += shift;
      }
      prefix.statements.push_back(std::move(changed));
      for (std::size_t j = index + 1; j < test.size(); ++j) {
        Statement rest = test.statements[j];
        for (int& a : rest.args) {
          if (a >= static_cast<int>(index)) a += shift;
        }
        prefix.statements.push_back(std::move(rest));
      }
      test = std::move(prefix);
      return true;
    }
    case StatementKind::kCollection: {
      std::size_t stride = s.collection == CollectionKind::kDict ? 2 : 1;
      if (!s.args.empty() && (UniformReal(rng_) < 0.5 || s.type.kind() == TypeKind::kTuple)) {
        if (s.type.kind() == TypeKind::kTuple) return false;
        std::size_t at = UniformIndex(rng_, s.args.size() / stride) * stride;
        s.args.erase(s.args.begin() + static_cast<long>(at), s.args.begin() + static_cast<long>(at + stride));
        return true;
      }
      if (s.type.kind() != TypeKind::kCollection) return false;
      TestCase prefix;
      prefix.statements.assign(test.statements.begin(), test.statements.begin() + static_cast<long>(index));
      std::vector<int> added;
      if (stride == 2) {
        auto k = Synthesize(prefix, s.type.children()[0].is_any() ? GradualType::Instance(cluster_.Builtin("str"))
                                                                   : s.type.children()[0], 1);
        auto v = Synthesize(prefix, s.type.children()[1], 1);
        if (!k || !v) return false;
        added = {*k, *v};
      } else {
        auto e = Synthesize(prefix, s.type.children()[0], 1);
        if (!e) return false;
        added = {*e};
      }
      int shift = static_cast<int>(prefix.size() - index);
      Statement changed = s;
      for (int& a : changed.args) {
        if (a >= static_cast<int>(index)) a += shift;
      }
      changed.args.insert(changed.args.end(), added.begin(), added.end());
      prefix.statements.push_back(std::move(changed));
      for (std::size_t j = index + 1; j < test.size(); ++j) {
        Statement rest = test.statements[j];
        for (int& a : rest.args) {
          if (a >= static_cast<int>(index)) a += shift;
        }
        prefix.statements.push_back(std::move(rest));
      }
      test = std::move(prefix);
      return true;
    }
    case StatementKind::kNone:
      return false;
  }
  return false;
}

bool TestFactory::ChangeEach(TestCase& test, double p) {
  bool changed = false;
  // back to front: a change inserts statements before i
  for (std::size_t i = test.size(); i-- > 0;) {
    if (UniformReal(rng_) < p) changed |= ChangeStatement(test, i);
  }
  return changed;
}

bool TestFactory::Mutate(TestCase& test, const std::vector<double>& weights) {
  bool changed = false;
  for (int attempt = 0; attempt < 4 && !changed; ++attempt) {
    if (!test.empty() && UniformReal(rng_) < 1.0 / 3.0) {
      double p = 1.0 / static_cast<double>(test.size());
      for (std::size_t i = test.size(); i-- > 0;) {
        if (UniformReal(rng_) < p) changed |= DeleteStatement(test, i);
      }
    }
    if (!test.empty() && UniformReal(rng_) < 1.0 / 3.0) {
      changed |= ChangeEach(test, 1.0 / static_cast<double>(test.size()));
    }
    if (test.empty() || UniformReal(rng_) < 1.0 / 3.0) {
      double alpha = 0.5;
      for (int count = 1; count <= 5; ++count) {
        changed |= AppendRandomCall(test, weights);
        if (UniformReal(rng_) >= std::pow(alpha, count)) break;
      }
    }
  }
  Truncate(test);
  return changed;
}

std::pair<TestCase, TestCase> TestFactory::Crossover(const TestCase& a, const TestCase& b) {
  if (a.size() < 2 || b.size() < 2) return {a, b};
  double r = UniformReal(rng_);
  std::size_t pa = static_cast<std::size_t>(std::floor(r * static_cast<double>(a.size())));
  std::size_t pb = static_cast<std::size_t>(std::floor(r * static_cast<double>(b.size())));
  TestCase c1;
  c1.statements.assign(a.statements.begin(), a.statements.begin() + static_cast<long>(pa));
  Splice(c1, b, pb);
  TestCase c2;
  c2.statements.assign(b.statements.begin(), b.statements.begin() + static_cast<long>(pb));
  Splice(c2, a, pa);
  Truncate(c1);
  Truncate(c2);
  return {std::move(c1), std::move(c2)};
}

void TestFactory::Truncate(TestCase& test) const {
  if (test.size() > options_.max_length) test.statements.resize(options_.max_length);
}

}  // namespace tracegen::search
