#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tracegen/lang/ast.hpp"

namespace tracegen::lang {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class TokenKind { kName, kInt, kFloat, kString, kOp, kNewline, kIndent, kDedent, kEnd };

struct Token {
  TokenKind kind;
  std::string text;  // decoded contents for strings
  SourcePos pos;
};

/// Splits source text into tokens with Python-style INDENT/DEDENT handling.
/// Newlines inside brackets are joined; comments and blank lines dropped.
std::vector<Token> Tokenize(std::string_view source);

/// Parses a whole module. Throws ParseError on malformed input.
std::unique_ptr<Module> ParseModule(std::string_view source, std::string name = "__main__",
                                    std::string path = "");

}  // namespace tracegen::lang
