#include <cctype>
#include <string>
#include <vector>

#include "tracegen/lang/parser.hpp"

namespace tracegen::lang {
namespace {

constexpr std::string_view kThreeCharOps[] = {"**=", "//=", ">>=", "<<=", "..."};
constexpr std::string_view kTwoCharOps[] = {"==", "!=", "<=", ">=", "->", "**", "//", "<<", ">>",
                                            "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^="};
constexpr std::string_view kOneCharOps = "+-*/%<>=()[]{}:,.;@&|^~";

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    indents_.push_back(0);
    bool at_line_start = true;
    while (pos_ < src_.size()) {
      if (at_line_start && depth_ == 0) {
        if (HandleIndentation()) {
          at_line_start = false;
        }
        continue;
      }
      char c = src_[pos_];
      if (c == '\n') {
        Advance();
        if (depth_ == 0) {
          Emit(TokenKind::kNewline, "", Pos());
          at_line_start = true;
        }
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        Advance();
        continue;
      }
      if (c == '#') {
        SkipComment();
        continue;
      }
      if (c == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') {
        Advance();
        Advance();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        LexName();
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        LexNumber();
        continue;
      }
      if (c == '"' || c == '\'') {
        LexString();
        continue;
      }
      LexOperator();
    }
    if (!tokens_.empty() && tokens_.back().kind != TokenKind::kNewline &&
        tokens_.back().kind != TokenKind::kDedent) {
      Emit(TokenKind::kNewline, "", Pos());
    }
    while (indents_.size() > 1) {
      indents_.pop_back();
      Emit(TokenKind::kDedent, "", Pos());
    }
    Emit(TokenKind::kEnd, "", Pos());
    return std::move(tokens_);
  }

 private:
  SourcePos Pos() const { return {line_, col_}; }

  void Advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 0;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void Emit(TokenKind kind, std::string text, SourcePos pos) {
    tokens_.push_back(Token{kind, std::move(text), pos});
  }

  void SkipComment() {
    while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
  }

  // Returns true once a logical line with content starts.
  bool HandleIndentation() {
    int width = 0;
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r')) {
      width += src_[pos_] == '\t' ? 8 - (width % 8) : (src_[pos_] == ' ' ? 1 : 0);
      Advance();
    }
    if (pos_ >= src_.size()) return true;
    if (src_[pos_] == '\n') {
      Advance();
      return false;
    }
    if (src_[pos_] == '#') {
      SkipComment();
      return false;
    }
    if (width > indents_.back()) {
      indents_.push_back(width);
      Emit(TokenKind::kIndent, "", Pos());
    } else {
      while (width < indents_.back()) {
        indents_.pop_back();
        Emit(TokenKind::kDedent, "", Pos());
      }
      if (width != indents_.back()) throw ParseError("inconsistent dedent", line_);
    }
    return true;
  }

  void LexName() {
    SourcePos start = Pos();
    size_t begin = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      Advance();
    }
    Emit(TokenKind::kName, std::string(src_.substr(begin, pos_ - begin)), start);
  }

  void LexNumber() {
    SourcePos start = Pos();
    size_t begin = pos_;
    bool is_float = false;
    if (src_[pos_] == '0' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X')) {
      Advance();
      Advance();
      while (pos_ < src_.size() && std::isxdigit(static_cast<unsigned char>(src_[pos_]))) Advance();
      Emit(TokenKind::kInt, std::string(src_.substr(begin, pos_ - begin)), start);
      return;
    }
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '_') {
        Advance();
      } else if (c == '.' && !is_float) {
        is_float = true;
        Advance();
      } else if ((c == 'e' || c == 'E') && pos_ + 1 < src_.size()) {
        is_float = true;
        Advance();
        if (src_[pos_] == '+' || src_[pos_] == '-') Advance();
      } else {
        break;
      }
    }
    std::string text;
    for (char c : src_.substr(begin, pos_ - begin)) {
      if (c != '_') text.push_back(c);
    }
    Emit(is_float ? TokenKind::kFloat : TokenKind::kInt, std::move(text), start);
  }

  void LexString() {
    SourcePos start = Pos();
    char quote = src_[pos_];
    bool triple = pos_ + 2 < src_.size() && src_[pos_ + 1] == quote && src_[pos_ + 2] == quote;
    int skip = triple ? 3 : 1;
    for (int i = 0; i < skip; ++i) Advance();
    std::string out;
    while (true) {
      if (pos_ >= src_.size()) throw ParseError("unterminated string literal", start.line);
      char c = src_[pos_];
      if (triple) {
        if (c == quote && pos_ + 2 < src_.size() && src_[pos_ + 1] == quote && src_[pos_ + 2] == quote) {
          Advance();
          Advance();
          Advance();
          break;
        }
      } else {
        if (c == quote) {
          Advance();
          break;
        }
        if (c == '\n') throw ParseError("unterminated string literal", start.line);
      }
      if (c == '\\' && pos_ + 1 < src_.size()) {
        Advance();
        char e = src_[pos_];
        Advance();
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case 'r': out.push_back('\r'); break;
          case '0': out.push_back('\0'); break;
          case '\\': out.push_back('\\'); break;
          case '\'': out.push_back('\''); break;
          case '"': out.push_back('"'); break;
          case '\n': break;
          case 'x': {
            if (pos_ + 2 > src_.size()) throw ParseError("bad \\x escape", line_);
            std::string hex(src_.substr(pos_, 2));
            Advance();
            Advance();
            out.push_back(static_cast<char>(std::stoi(hex, nullptr, 16)));
            break;
          }
          default:
            out.push_back('\\');
            out.push_back(e);
        }
        continue;
      }
      out.push_back(c);
      Advance();
    }
    Emit(TokenKind::kString, std::move(out), start);
  }

  void LexOperator() {
    SourcePos start = Pos();
    std::string_view rest = src_.substr(pos_);
    for (auto op : kThreeCharOps) {
      if (rest.starts_with(op)) {
        for (size_t i = 0; i < op.size(); ++i) Advance();
        Emit(TokenKind::kOp, std::string(op), start);
        return;
      }
    }
    for (auto op : kTwoCharOps) {
      if (rest.starts_with(op)) {
        Advance();
        Advance();
        Emit(TokenKind::kOp, std::string(op), start);
        return;
      }
    }
    char c = src_[pos_];
    if (kOneCharOps.find(c) == std::string_view::npos) {
      throw ParseError(std::string("unexpected character '") + c + "'", line_);
    }
    if (c == '(' || c == '[' || c == '{') ++depth_;
    if ((c == ')' || c == ']' || c == '}') && depth_ > 0) --depth_;
    Advance();
    Emit(TokenKind::kOp, std::string(1, c), start);
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 0;
  int depth_ = 0;
  std::vector<int> indents_;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> Tokenize(std::string_view source) { return Lexer(source).Run(); }

}  // namespace tracegen::lang
