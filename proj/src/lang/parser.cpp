#include <charconv>
#include <cstdlib>
#include <set>

#include "tracegen/lang/parser.hpp"

namespace tracegen::lang {
namespace {

const std::set<std::string, std::less<>> kKeywords = {
    "False", "None", "True", "and", "as", "assert", "break", "class", "continue", "def", "del",
    "elif", "else", "except", "finally", "for", "from", "global", "if", "import", "in", "is",
    "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try", "while", "with", "yield"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Block ParseFile() {
    Block body;
    while (!AtKind(TokenKind::kEnd)) {
      if (AtKind(TokenKind::kNewline)) {
        ++i_;
        continue;
      }
      ParseStatement(body);
    }
    return body;
  }

 private:
  const Token& Peek(size_t ahead = 0) const {
    size_t k = std::min(i_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  bool AtKind(TokenKind k) const { return Peek().kind == k; }
  bool AtOp(std::string_view op) const { return Peek().kind == TokenKind::kOp && Peek().text == op; }
  bool AtKeyword(std::string_view kw) const { return Peek().kind == TokenKind::kName && Peek().text == kw; }
  SourcePos Pos() const { return Peek().pos; }

  [[noreturn]] void Fail(const std::string& msg) const {
    std::string near = Peek().text.empty() ? "end of line" : "'" + Peek().text + "'";
    throw ParseError(msg + " near " + near, Peek().pos.line);
  }

  void ExpectOp(std::string_view op) {
    if (!AtOp(op)) Fail("expected '" + std::string(op) + "'");
    ++i_;
  }
  void ExpectKeyword(std::string_view kw) {
    if (!AtKeyword(kw)) Fail("expected '" + std::string(kw) + "'");
    ++i_;
  }
  bool AcceptOp(std::string_view op) {
    if (AtOp(op)) {
      ++i_;
      return true;
    }
    return false;
  }
  bool AcceptKeyword(std::string_view kw) {
    if (AtKeyword(kw)) {
      ++i_;
      return true;
    }
    return false;
  }
  std::string ExpectName() {
    if (!AtKind(TokenKind::kName) || kKeywords.contains(Peek().text)) Fail("expected identifier");
    return toks_[i_++].text;
  }
  void ExpectNewline() {
    if (AtKind(TokenKind::kEnd)) return;
    if (!AtKind(TokenKind::kNewline)) Fail("expected end of line");
    ++i_;
  }

  // -- statements ----------------------------------------------------------

  void ParseStatement(Block& out) {
    if (AtKeyword("if")) return out.push_back(ParseIf());
    if (AtKeyword("while")) return out.push_back(ParseWhile());
    if (AtKeyword("for")) return out.push_back(ParseFor());
    if (AtKeyword("try")) return out.push_back(ParseTry());
    if (AtKeyword("def")) return out.push_back(ParseDef());
    if (AtKeyword("class")) return out.push_back(ParseClass());
    if (AtOp("@")) Fail("decorators are not supported");
    ParseSimpleStatements(out);
  }

  void ParseSimpleStatements(Block& out) {
    out.push_back(ParseSmallStatement());
    while (AcceptOp(";")) {
      if (AtKind(TokenKind::kNewline) || AtKind(TokenKind::kEnd)) break;
      out.push_back(ParseSmallStatement());
    }
    ExpectNewline();
  }

  std::string ParseDottedName() {
    std::string name = ExpectName();
    while (AcceptOp(".")) name += "." + ExpectName();
    return name;
  }

  StmtPtr ParseSmallStatement() {
    SourcePos p = Pos();
    if (AcceptKeyword("pass")) return std::make_unique<SimpleStmt>(StmtKind::kPass, p);
    if (AcceptKeyword("break")) return std::make_unique<SimpleStmt>(StmtKind::kBreak, p);
    if (AcceptKeyword("continue")) return std::make_unique<SimpleStmt>(StmtKind::kContinue, p);
    if (AcceptKeyword("return")) {
      ExprPtr value;
      if (!AtKind(TokenKind::kNewline) && !AtOp(";") && !AtKind(TokenKind::kEnd)) value = ParseTestList();
      return std::make_unique<ReturnStmt>(p, std::move(value));
    }
    if (AcceptKeyword("raise")) {
      ExprPtr exc;
      if (!AtKind(TokenKind::kNewline) && !AtOp(";") && !AtKind(TokenKind::kEnd)) exc = ParseTest();
      return std::make_unique<RaiseStmt>(p, std::move(exc));
    }
    if (AcceptKeyword("assert")) {
      ExprPtr test = ParseTest();
      ExprPtr msg;
      if (AcceptOp(",")) msg = ParseTest();
      return std::make_unique<AssertStmt>(p, std::move(test), std::move(msg));
    }
    if (AcceptKeyword("import")) {
      std::string module = ParseDottedName();
      std::string alias;
      if (AcceptKeyword("as")) alias = ExpectName();
      return std::make_unique<ImportStmt>(p, std::move(module), std::move(alias));
    }
    if (AcceptKeyword("from")) {
      auto stmt = std::make_unique<ImportFromStmt>(p, ParseDottedName());
      ExpectKeyword("import");
      bool paren = AcceptOp("(");
      do {
        if (paren && AtOp(")")) break;
        std::string name = ExpectName();
        std::string alias;
        if (AcceptKeyword("as")) alias = ExpectName();
        stmt->names.emplace_back(std::move(name), std::move(alias));
      } while (AcceptOp(","));
      if (paren) ExpectOp(")");
      return stmt;
    }
    ExprPtr first = ParseTestList();
    static const std::pair<std::string_view, BinaryOp> kAugOps[] = {
        {"+=", BinaryOp::kAdd},      {"-=", BinaryOp::kSub},      {"*=", BinaryOp::kMul},
        {"/=", BinaryOp::kDiv},      {"//=", BinaryOp::kFloorDiv}, {"%=", BinaryOp::kMod},
        {"**=", BinaryOp::kPow},     {"&=", BinaryOp::kBitAnd},   {"|=", BinaryOp::kBitOr},
        {"^=", BinaryOp::kBitXor},   {">>=", BinaryOp::kRShift},  {"<<=", BinaryOp::kLShift}};
    for (const auto& [text, op] : kAugOps) {
      if (AcceptOp(text)) {
        CheckTarget(*first, false);
        return std::make_unique<AugAssignStmt>(p, std::move(first), op, ParseTestList());
      }
    }
    if (AcceptOp("=")) {
      CheckTarget(*first, true);
      ExprPtr value = ParseTestList();
      if (AtOp("=")) Fail("chained assignment is not supported");
      return std::make_unique<AssignStmt>(p, std::move(first), std::move(value));
    }
    if (AtOp(":")) Fail("variable annotations are not supported");
    return std::make_unique<ExprStmt>(p, std::move(first));
  }

  void CheckTarget(const Expr& e, bool allow_tuple) {
    switch (e.kind) {
      case ExprKind::kName:
      case ExprKind::kAttribute:
      case ExprKind::kSubscript:
        return;
      case ExprKind::kTuple:
      case ExprKind::kList:
        if (allow_tuple) {
          for (const auto& elt : static_cast<const SequenceExpr&>(e).elts) CheckTarget(*elt, false);
          return;
        }
        break;
      default:
        break;
    }
    throw ParseError("cannot assign to expression", e.pos.line);
  }

  Block ParseBlock() {
    ExpectOp(":");
    Block body;
    if (!AtKind(TokenKind::kNewline)) {
      ParseSimpleStatements(body);
      return body;
    }
    ++i_;
    if (!AtKind(TokenKind::kIndent)) Fail("expected an indented block");
    ++i_;
    while (!AtKind(TokenKind::kDedent) && !AtKind(TokenKind::kEnd)) {
      if (AtKind(TokenKind::kNewline)) {
        ++i_;
        continue;
      }
      ParseStatement(body);
    }
    if (AtKind(TokenKind::kDedent)) ++i_;
    return body;
  }

  StmtPtr ParseIf() {
    SourcePos p = Pos();
    ++i_;  // 'if' or 'elif'
    auto stmt = std::make_unique<IfStmt>(p, ParseTest());
    stmt->body = ParseBlock();
    if (AtKeyword("elif")) {
      stmt->orelse.push_back(ParseIf());
    } else if (AcceptKeyword("else")) {
      stmt->orelse = ParseBlock();
    }
    return stmt;
  }

  StmtPtr ParseWhile() {
    SourcePos p = Pos();
    ExpectKeyword("while");
    auto stmt = std::make_unique<WhileStmt>(p, ParseTest());
    stmt->body = ParseBlock();
    if (AtKeyword("else")) Fail("while-else is not supported");
    return stmt;
  }

  StmtPtr ParseFor() {
    SourcePos p = Pos();
    ExpectKeyword("for");
    std::vector<ExprPtr> targets;
    SourcePos tp = Pos();
    do {
      targets.push_back(ParsePrimary());
      CheckTarget(*targets.back(), false);
    } while (AcceptOp(","));
    ExprPtr target = targets.size() == 1
                         ? std::move(targets.front())
                         : std::make_unique<SequenceExpr>(ExprKind::kTuple, tp, std::move(targets));
    ExpectKeyword("in");
    auto stmt = std::make_unique<ForStmt>(p, std::move(target), ParseTestList());
    stmt->body = ParseBlock();
    if (AtKeyword("else")) Fail("for-else is not supported");
    return stmt;
  }

  StmtPtr ParseTry() {
    auto stmt = std::make_unique<TryStmt>(Pos());
    ExpectKeyword("try");
    stmt->body = ParseBlock();
    while (AcceptKeyword("except")) {
      ExceptHandler h;
      if (!AtOp(":")) {
        h.type = ParseTest();
        if (AcceptKeyword("as")) h.name = ExpectName();
      }
      h.body = ParseBlock();
      stmt->handlers.push_back(std::move(h));
    }
    if (AtKeyword("else")) Fail("try-else is not supported");
    if (AcceptKeyword("finally")) stmt->finalbody = ParseBlock();
    if (stmt->handlers.empty() && stmt->finalbody.empty()) Fail("try without except or finally");
    return stmt;
  }

  StmtPtr ParseDef() {
    SourcePos p = Pos();
    ExpectKeyword("def");
    auto fn = std::make_unique<FunctionDefStmt>(p, ExpectName());
    ExpectOp("(");
    bool seen_default = false;
    while (!AtOp(")")) {
      Parameter param;
      param.pos = Pos();
      param.name = ExpectName();
      for (const auto& other : fn->params) {
        if (other.name == param.name) Fail("duplicate parameter '" + param.name + "'");
      }
      if (AcceptOp(":")) param.annotation = ParseTest();
      if (AcceptOp("=")) {
        param.default_value = ParseTest();
        seen_default = true;
      } else if (seen_default) {
        Fail("non-default parameter follows default parameter");
      }
      fn->params.push_back(std::move(param));
      if (!AcceptOp(",")) break;
    }
    ExpectOp(")");
    if (AcceptOp("->")) fn->returns = ParseTest();
    fn->body = ParseBlock();
    return fn;
  }

  StmtPtr ParseClass() {
    SourcePos p = Pos();
    ExpectKeyword("class");
    auto cls = std::make_unique<ClassDefStmt>(p, ExpectName());
    if (AcceptOp("(")) {
      while (!AtOp(")")) {
        cls->bases.push_back(ParseTest());
        if (!AcceptOp(",")) break;
      }
      ExpectOp(")");
    }
    cls->body = ParseBlock();
    return cls;
  }

  // -- expressions ---------------------------------------------------------

  ExprPtr ParseTestList() {
    SourcePos p = Pos();
    ExprPtr first = ParseTest();
    if (!AtOp(",")) return first;
    std::vector<ExprPtr> elts;
    elts.push_back(std::move(first));
    while (AcceptOp(",")) {
      if (AtKind(TokenKind::kNewline) || AtOp("=") || AtOp(")") || AtOp(":") || AtKind(TokenKind::kEnd)) break;
      elts.push_back(ParseTest());
    }
    return std::make_unique<SequenceExpr>(ExprKind::kTuple, p, std::move(elts));
  }

  ExprPtr ParseTest() {
    SourcePos p = Pos();
    if (AtKeyword("lambda")) Fail("lambda is not supported");
    ExprPtr body = ParseOr();
    if (AcceptKeyword("if")) {
      ExprPtr test = ParseOr();
      ExpectKeyword("else");
      ExprPtr orelse = ParseTest();
      return std::make_unique<IfExpExpr>(p, std::move(test), std::move(body), std::move(orelse));
    }
    return body;
  }

  ExprPtr ParseOr() {
    ExprPtr left = ParseAnd();
    while (AtKeyword("or")) {
      SourcePos p = Pos();
      ++i_;
      left = std::make_unique<BoolOpExpr>(p, false, std::move(left), ParseAnd());
    }
    return left;
  }

  ExprPtr ParseAnd() {
    ExprPtr left = ParseNot();
    while (AtKeyword("and")) {
      SourcePos p = Pos();
      ++i_;
      left = std::make_unique<BoolOpExpr>(p, true, std::move(left), ParseNot());
    }
    return left;
  }

  ExprPtr ParseNot() {
    if (AtKeyword("not")) {
      SourcePos p = Pos();
      ++i_;
      return std::make_unique<UnaryOpExpr>(p, UnaryOp::kNot, ParseNot());
    }
    return ParseComparison();
  }

  bool ParseCompareOp(CompareOp& op) {
    static const std::pair<std::string_view, CompareOp> kOps[] = {
        {"==", CompareOp::kEq}, {"!=", CompareOp::kNotEq}, {"<", CompareOp::kLt},
        {"<=", CompareOp::kLtE}, {">", CompareOp::kGt},     {">=", CompareOp::kGtE}};
    for (const auto& [text, o] : kOps) {
      if (AcceptOp(text)) {
        op = o;
        return true;
      }
    }
    if (AcceptKeyword("in")) {
      op = CompareOp::kIn;
      return true;
    }
    if (AtKeyword("not") && Peek(1).kind == TokenKind::kName && Peek(1).text == "in") {
      i_ += 2;
      op = CompareOp::kNotIn;
      return true;
    }
    if (AcceptKeyword("is")) {
      op = AcceptKeyword("not") ? CompareOp::kIsNot : CompareOp::kIs;
      return true;
    }
    return false;
  }

  ExprPtr ParseComparison() {
    SourcePos p = Pos();
    ExprPtr left = ParseBitOr();
    CompareOp op;
    if (!ParseCompareOp(op)) return left;
    auto cmp = std::make_unique<CompareExpr>(p, std::move(left));
    do {
      cmp->ops.push_back(op);
      cmp->comparators.push_back(ParseBitOr());
    } while (ParseCompareOp(op));
    return cmp;
  }

  template <typename Next>
  ExprPtr ParseBinaryLevel(std::initializer_list<std::pair<std::string_view, BinaryOp>> ops, Next next) {
    ExprPtr left = (this->*next)();
    while (true) {
      bool matched = false;
      for (const auto& [text, op] : ops) {
        if (AtOp(text)) {
          SourcePos p = Pos();
          ++i_;
          left = std::make_unique<BinOpExpr>(p, op, std::move(left), (this->*next)());
          matched = true;
          break;
        }
      }
      if (!matched) return left;
    }
  }

  ExprPtr ParseBitOr() { return ParseBinaryLevel({{"|", BinaryOp::kBitOr}}, &Parser::ParseBitXor); }
  ExprPtr ParseBitXor() { return ParseBinaryLevel({{"^", BinaryOp::kBitXor}}, &Parser::ParseBitAnd); }
  ExprPtr ParseBitAnd() { return ParseBinaryLevel({{"&", BinaryOp::kBitAnd}}, &Parser::ParseShift); }
  ExprPtr ParseShift() {
    return ParseBinaryLevel({{"<<", BinaryOp::kLShift}, {">>", BinaryOp::kRShift}}, &Parser::ParseArith);
  }
  ExprPtr ParseArith() {
    return ParseBinaryLevel({{"+", BinaryOp::kAdd}, {"-", BinaryOp::kSub}}, &Parser::ParseTerm);
  }
  ExprPtr ParseTerm() {
    return ParseBinaryLevel({{"*", BinaryOp::kMul},
                             {"/", BinaryOp::kDiv},
                             {"//", BinaryOp::kFloorDiv},
                             {"%", BinaryOp::kMod}},
                            &Parser::ParseFactor);
  }

  ExprPtr ParseFactor() {
    SourcePos p = Pos();
    if (AcceptOp("-")) return std::make_unique<UnaryOpExpr>(p, UnaryOp::kNeg, ParseFactor());
    if (AcceptOp("+")) return std::make_unique<UnaryOpExpr>(p, UnaryOp::kPos, ParseFactor());
    if (AcceptOp("~")) return std::make_unique<UnaryOpExpr>(p, UnaryOp::kInvert, ParseFactor());
    return ParsePower();
  }

  ExprPtr ParsePower() {
    ExprPtr base = ParsePrimary();
    if (AtOp("**")) {
      SourcePos p = Pos();
      ++i_;
      return std::make_unique<BinOpExpr>(p, BinaryOp::kPow, std::move(base), ParseFactor());
    }
    return base;
  }

  ExprPtr ParsePrimary() {
    ExprPtr e = ParseAtom();
    while (true) {
      SourcePos p = Pos();
      if (AcceptOp("(")) {
        std::vector<ExprPtr> args;
        while (!AtOp(")")) {
          if (AtKind(TokenKind::kName) && Peek(1).kind == TokenKind::kOp && Peek(1).text == "=") {
            Fail("keyword arguments are not supported");
          }
          args.push_back(ParseTest());
          if (!AcceptOp(",")) break;
        }
        ExpectOp(")");
        e = std::make_unique<CallExpr>(p, std::move(e), std::move(args));
      } else if (AcceptOp("[")) {
        ExprPtr index = ParseSubscript();
        ExpectOp("]");
        e = std::make_unique<SubscriptExpr>(p, std::move(e), std::move(index));
      } else if (AcceptOp(".")) {
        e = std::make_unique<AttributeExpr>(p, std::move(e), ExpectName());
      } else {
        return e;
      }
    }
  }

  ExprPtr ParseSubscript() {
    SourcePos p = Pos();
    ExprPtr lower;
    if (!AtOp(":")) {
      lower = ParseTest();
      if (AtOp(",")) {
        std::vector<ExprPtr> elts;
        elts.push_back(std::move(lower));
        while (AcceptOp(",")) {
          if (AtOp("]")) break;
          elts.push_back(ParseTest());
        }
        return std::make_unique<SequenceExpr>(ExprKind::kTuple, p, std::move(elts));
      }
      if (!AtOp(":")) return lower;
    }
    ExpectOp(":");
    ExprPtr upper;
    if (!AtOp("]")) upper = ParseTest();
    return std::make_unique<SliceExpr>(p, std::move(lower), std::move(upper));
  }

  ExprPtr ParseAtom() {
    const Token& t = Peek();
    SourcePos p = t.pos;
    switch (t.kind) {
      case TokenKind::kInt: {
        ++i_;
        std::int64_t v = 0;
        const std::string& s = t.text;
        std::from_chars_result r;
        if (s.size() > 2 && (s[1] == 'x' || s[1] == 'X')) {
          r = std::from_chars(s.data() + 2, s.data() + s.size(), v, 16);
        } else {
          r = std::from_chars(s.data(), s.data() + s.size(), v);
        }
        if (r.ec != std::errc()) throw ParseError("integer literal out of range", p.line);
        return std::make_unique<ConstantExpr>(p, v);
      }
      case TokenKind::kFloat: {
        ++i_;
        return std::make_unique<ConstantExpr>(p, std::strtod(t.text.c_str(), nullptr));
      }
      case TokenKind::kString: {
        std::string s;
        while (AtKind(TokenKind::kString)) s += toks_[i_++].text;
        return std::make_unique<ConstantExpr>(p, std::move(s));
      }
      case TokenKind::kName: {
        if (t.text == "None") {
          ++i_;
          return std::make_unique<ConstantExpr>(p, NoneLiteral{});
        }
        if (t.text == "True" || t.text == "False") {
          ++i_;
          return std::make_unique<ConstantExpr>(p, t.text == "True");
        }
        return std::make_unique<NameExpr>(p, ExpectName());
      }
      case TokenKind::kOp:
        break;
      default:
        Fail("unexpected token");
    }
    if (AcceptOp("(")) {
      if (AcceptOp(")")) return std::make_unique<SequenceExpr>(ExprKind::kTuple, p, std::vector<ExprPtr>{});
      ExprPtr first = ParseTest();
      if (AcceptOp(")")) return first;
      std::vector<ExprPtr> elts;
      elts.push_back(std::move(first));
      while (AcceptOp(",")) {
        if (AtOp(")")) break;
        elts.push_back(ParseTest());
      }
      ExpectOp(")");
      return std::make_unique<SequenceExpr>(ExprKind::kTuple, p, std::move(elts));
    }
    if (AcceptOp("[")) {
      std::vector<ExprPtr> elts;
      while (!AtOp("]")) {
        elts.push_back(ParseTest());
        if (!AcceptOp(",")) break;
      }
      ExpectOp("]");
      return std::make_unique<SequenceExpr>(ExprKind::kList, p, std::move(elts));
    }
    if (AcceptOp("{")) {
      if (AcceptOp("}")) return std::make_unique<DictExpr>(p);
      ExprPtr first = ParseTest();
      if (AcceptOp(":")) {
        auto dict = std::make_unique<DictExpr>(p);
        dict->keys.push_back(std::move(first));
        dict->values.push_back(ParseTest());
        while (AcceptOp(",")) {
          if (AtOp("}")) break;
          dict->keys.push_back(ParseTest());
          ExpectOp(":");
          dict->values.push_back(ParseTest());
        }
        ExpectOp("}");
        return dict;
      }
      std::vector<ExprPtr> elts;
      elts.push_back(std::move(first));
      while (AcceptOp(",")) {
        if (AtOp("}")) break;
        elts.push_back(ParseTest());
      }
      ExpectOp("}");
      return std::make_unique<SequenceExpr>(ExprKind::kSet, p, std::move(elts));
    }
    Fail("unexpected token");
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

}  // namespace

std::unique_ptr<Module> ParseModule(std::string_view source, std::string name, std::string path) {
  auto module = std::make_unique<Module>();
  module->name = std::move(name);
  module->path = std::move(path);
  module->body = Parser(Tokenize(source)).ParseFile();
  return module;
}

}  // namespace tracegen::lang
