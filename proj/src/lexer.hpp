#pragma once

// Tokenizer shared by the linear, Boolean and contract readers.

#include "ctxelim/parser.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctxelim::detail {

enum class TokKind { ident, number, op, end };

struct Token {
  TokKind kind;
  std::string text;
  int column;  // 1-based
};

// Identifiers: [A-Za-z_][A-Za-z0-9_']*. Numbers: 12, 3/4, 0.25.
// Operators: <= >= = + - * & | ( ) ! ->
std::vector<Token> tokenize(std::string_view line, int line_no, int column_offset);

class TokenStream {
 public:
  TokenStream(std::vector<Token> tokens, int line_no)
      : tokens_(std::move(tokens)), line_(line_no) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at_op(std::string_view op) const {
    return peek().kind == TokKind::op && peek().text == op;
  }
  bool accept(std::string_view op) {
    if (!at_op(op)) return false;
    next();
    return true;
  }
  void expect(std::string_view op);
  void expect_end();
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

std::string strip_comment(std::string_view line);
bool is_blank(std::string_view s);
bool is_indented(std::string_view s);
std::vector<std::string> split_words(std::string_view s);

// "key: rest" for an unindented line whose prefix is an identifier followed
// by ':'.
struct HeaderLine {
  std::string key;
  std::string rest;
  int rest_column;
};
std::optional<HeaderLine> split_header(std::string_view line);

}  // namespace ctxelim::detail
