#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tracegen::lang {

struct SourcePos {
  int line = 0;
  int column = 0;
};

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class ExprKind {
  kConstant,
  kName,
  kAttribute,
  kSubscript,
  kSlice,
  kCall,
  kBinOp,
  kUnaryOp,
  kBoolOp,
  kCompare,
  kIfExp,
  kList,
  kTuple,
  kDict,
  kSet,
};

enum class BinaryOp {
  kAdd, kSub, kMul, kDiv, kFloorDiv, kMod, kPow,
  kBitAnd, kBitOr, kBitXor, kLShift, kRShift,
};

enum class UnaryOp { kNeg, kPos, kNot, kInvert };

enum class CompareOp { kEq, kNotEq, kLt, kLtE, kGt, kGtE, kIn, kNotIn, kIs, kIsNot };

struct NoneLiteral {
  bool operator==(const NoneLiteral&) const = default;
};
using Literal = std::variant<NoneLiteral, bool, std::int64_t, double, std::string>;

struct Expr {
  explicit Expr(ExprKind k, SourcePos p) : kind(k), pos(p) {}
  virtual ~Expr() = default;
  Expr(const Expr&) = delete;
  Expr& operator=(const Expr&) = delete;

  const ExprKind kind;
  SourcePos pos;
};

using ExprPtr = std::unique_ptr<Expr>;

struct ConstantExpr final : Expr {
  ConstantExpr(SourcePos p, Literal v) : Expr(ExprKind::kConstant, p), value(std::move(v)) {}
  Literal value;
};

struct NameExpr final : Expr {
  NameExpr(SourcePos p, std::string n) : Expr(ExprKind::kName, p), id(std::move(n)) {}
  std::string id;
};

struct AttributeExpr final : Expr {
  AttributeExpr(SourcePos p, ExprPtr v, std::string a)
      : Expr(ExprKind::kAttribute, p), value(std::move(v)), attr(std::move(a)) {}
  ExprPtr value;
  std::string attr;
};

struct SubscriptExpr final : Expr {
  SubscriptExpr(SourcePos p, ExprPtr v, ExprPtr i)
      : Expr(ExprKind::kSubscript, p), value(std::move(v)), index(std::move(i)) {}
  ExprPtr value;
  ExprPtr index;
};

// Only valid as the index of a subscript.
struct SliceExpr final : Expr {
  SliceExpr(SourcePos p, ExprPtr lo, ExprPtr hi)
      : Expr(ExprKind::kSlice, p), lower(std::move(lo)), upper(std::move(hi)) {}
  ExprPtr lower;  // may be null
  ExprPtr upper;  // may be null
};

struct CallExpr final : Expr {
  CallExpr(SourcePos p, ExprPtr f, std::vector<ExprPtr> a)
      : Expr(ExprKind::kCall, p), func(std::move(f)), args(std::move(a)) {}
  ExprPtr func;
  std::vector<ExprPtr> args;
};

struct BinOpExpr final : Expr {
  BinOpExpr(SourcePos p, BinaryOp o, ExprPtr l, ExprPtr r)
      : Expr(ExprKind::kBinOp, p), op(o), left(std::move(l)), right(std::move(r)) {}
  BinaryOp op;
  ExprPtr left;
  ExprPtr right;
};

struct UnaryOpExpr final : Expr {
  UnaryOpExpr(SourcePos p, UnaryOp o, ExprPtr e)
      : Expr(ExprKind::kUnaryOp, p), op(o), operand(std::move(e)) {}
  UnaryOp op;
  ExprPtr operand;
};

struct BoolOpExpr final : Expr {
  BoolOpExpr(SourcePos p, bool is_and, ExprPtr l, ExprPtr r)
      : Expr(ExprKind::kBoolOp, p), is_and(is_and), left(std::move(l)), right(std::move(r)) {}
  bool is_and;
  ExprPtr left;
  ExprPtr right;
};

// `a < b <= c` keeps the whole chain.
struct CompareExpr final : Expr {
  CompareExpr(SourcePos p, ExprPtr l) : Expr(ExprKind::kCompare, p), left(std::move(l)) {}
  ExprPtr left;
  std::vector<CompareOp> ops;
  std::vector<ExprPtr> comparators;
};

struct IfExpExpr final : Expr {
  IfExpExpr(SourcePos p, ExprPtr t, ExprPtr b, ExprPtr o)
      : Expr(ExprKind::kIfExp, p), test(std::move(t)), body(std::move(b)), orelse(std::move(o)) {}
  ExprPtr test;
  ExprPtr body;
  ExprPtr orelse;
};

struct SequenceExpr final : Expr {
  SequenceExpr(ExprKind k, SourcePos p, std::vector<ExprPtr> e) : Expr(k, p), elts(std::move(e)) {}
  std::vector<ExprPtr> elts;
};

struct DictExpr final : Expr {
  explicit DictExpr(SourcePos p) : Expr(ExprKind::kDict, p) {}
  std::vector<ExprPtr> keys;
  std::vector<ExprPtr> values;
};

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

enum class StmtKind {
  kExpr,
  kAssign,
  kAugAssign,
  kIf,
  kWhile,
  kFor,
  kReturn,
  kPass,
  kBreak,
  kContinue,
  kRaise,
  kTry,
  kAssert,
  kImport,
  kImportFrom,
  kFunctionDef,
  kClassDef,
};

struct Stmt {
  explicit Stmt(StmtKind k, SourcePos p) : kind(k), pos(p) {}
  virtual ~Stmt() = default;
  Stmt(const Stmt&) = delete;
  Stmt& operator=(const Stmt&) = delete;

  const StmtKind kind;
  SourcePos pos;
};

using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct ExprStmt final : Stmt {
  ExprStmt(SourcePos p, ExprPtr e) : Stmt(StmtKind::kExpr, p), value(std::move(e)) {}
  ExprPtr value;
};

struct AssignStmt final : Stmt {
  AssignStmt(SourcePos p, ExprPtr t, ExprPtr v)
      : Stmt(StmtKind::kAssign, p), target(std::move(t)), value(std::move(v)) {}
  ExprPtr target;  // Name, Attribute, Subscript or Tuple of names
  ExprPtr value;
};

struct AugAssignStmt final : Stmt {
  AugAssignStmt(SourcePos p, ExprPtr t, BinaryOp o, ExprPtr v)
      : Stmt(StmtKind::kAugAssign, p), target(std::move(t)), op(o), value(std::move(v)) {}
  ExprPtr target;
  BinaryOp op;
  ExprPtr value;
};

// Probe slots (`predicate_id`) are filled in by the branch instrumentation and
// stay -1 for uninstrumented modules.
struct IfStmt final : Stmt {
  IfStmt(SourcePos p, ExprPtr t) : Stmt(StmtKind::kIf, p), test(std::move(t)) {}
  ExprPtr test;
  Block body;
  Block orelse;
  int predicate_id = -1;
};

struct WhileStmt final : Stmt {
  WhileStmt(SourcePos p, ExprPtr t) : Stmt(StmtKind::kWhile, p), test(std::move(t)) {}
  ExprPtr test;
  Block body;
  int predicate_id = -1;
};

struct ForStmt final : Stmt {
  ForStmt(SourcePos p, ExprPtr t, ExprPtr i)
      : Stmt(StmtKind::kFor, p), target(std::move(t)), iter(std::move(i)) {}
  ExprPtr target;
  ExprPtr iter;
  Block body;
  int predicate_id = -1;
};

struct ReturnStmt final : Stmt {
  ReturnStmt(SourcePos p, ExprPtr v) : Stmt(StmtKind::kReturn, p), value(std::move(v)) {}
  ExprPtr value;  // may be null
};

struct SimpleStmt final : Stmt {  // pass / break / continue
  SimpleStmt(StmtKind k, SourcePos p) : Stmt(k, p) {}
};

struct RaiseStmt final : Stmt {
  RaiseStmt(SourcePos p, ExprPtr e) : Stmt(StmtKind::kRaise, p), exc(std::move(e)) {}
  ExprPtr exc;  // may be null (re-raise)
};

struct ExceptHandler {
  ExprPtr type;  // may be null (bare except)
  std::string name;
  Block body;
};

struct TryStmt final : Stmt {
  explicit TryStmt(SourcePos p) : Stmt(StmtKind::kTry, p) {}
  Block body;
  std::vector<ExceptHandler> handlers;
  Block finalbody;
};

struct AssertStmt final : Stmt {
  AssertStmt(SourcePos p, ExprPtr t, ExprPtr m)
      : Stmt(StmtKind::kAssert, p), test(std::move(t)), msg(std::move(m)) {}
  ExprPtr test;
  ExprPtr msg;
};

struct ImportStmt final : Stmt {
  ImportStmt(SourcePos p, std::string m, std::string a)
      : Stmt(StmtKind::kImport, p), module(std::move(m)), alias(std::move(a)) {}
  std::string module;
  std::string alias;  // empty when not aliased
};

struct ImportFromStmt final : Stmt {
  ImportFromStmt(SourcePos p, std::string m) : Stmt(StmtKind::kImportFrom, p), module(std::move(m)) {}
  std::string module;
  std::vector<std::pair<std::string, std::string>> names;  // (name, alias)
};

struct Parameter {
  std::string name;
  ExprPtr annotation;  // may be null
  ExprPtr default_value;  // may be null
  SourcePos pos;
};

struct FunctionDefStmt final : Stmt {
  FunctionDefStmt(SourcePos p, std::string n) : Stmt(StmtKind::kFunctionDef, p), name(std::move(n)) {}
  std::string name;
  std::vector<Parameter> params;
  ExprPtr returns;  // may be null
  Block body;
  int code_object_id = -1;
};

struct ClassDefStmt final : Stmt {
  ClassDefStmt(SourcePos p, std::string n) : Stmt(StmtKind::kClassDef, p), name(std::move(n)) {}
  std::string name;
  std::vector<ExprPtr> bases;
  Block body;
};

struct Module {
  std::string name;
  std::string path;
  Block body;
};

}  // namespace tracegen::lang
