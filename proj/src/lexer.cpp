#include "lexer.hpp"

#include <cctype>

namespace ctxelim::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> tokenize(std::string_view line, int line_no, int column_offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    int col = column_offset + static_cast<int>(i);
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({TokKind::ident, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (digit(c) || (c == '.' && i + 1 < line.size() && digit(line[i + 1]))) {
      std::size_t j = i;
      while (j < line.size() && digit(line[j])) ++j;
      if (j < line.size() && line[j] == '.') {
        ++j;
        if (j >= line.size() || !digit(line[j]))
          throw ParseError("malformed decimal", line_no, col);
        while (j < line.size() && digit(line[j])) ++j;
      } else if (j < line.size() && line[j] == '/' && j + 1 < line.size() && digit(line[j + 1])) {
        ++j;
        while (j < line.size() && digit(line[j])) ++j;
      }
      out.push_back({TokKind::number, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    auto two = line.substr(i, 2);
    if (two == "<=" || two == ">=" || two == "->") {
      out.push_back({TokKind::op, std::string(two), col});
      i += 2;
      continue;
    }
    if (std::string_view("=+-*&|()!").find(c) != std::string_view::npos) {
      out.push_back({TokKind::op, std::string(1, c), col});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_no, col);
  }
  out.push_back({TokKind::end, "", column_offset + static_cast<int>(line.size())});
  return out;
}

void TokenStream::expect(std::string_view op) {
  if (!accept(op)) fail("expected '" + std::string(op) + "'");
}

void TokenStream::expect_end() {
  if (peek().kind != TokKind::end) fail("unexpected trailing input");
}

void TokenStream::fail(const std::string& what) const {
  const Token& t = peek();
  std::string found = t.kind == TokKind::end ? "end of line" : "'" + t.text + "'";
  throw ParseError(what + ", found " + found, line_, t.column);
}

std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  std::string s(line.substr(0, hash));
  while (!s.empty() && (s.back() == '\r' || std::isspace(static_cast<unsigned char>(s.back()))))
    s.pop_back();
  return s;
}

bool is_blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

bool is_indented(std::string_view s) { return !s.empty() && (s[0] == ' ' || s[0] == '\t'); }

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ',') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<HeaderLine> split_header(std::string_view line) {
  if (line.empty() || !ident_start(line[0])) return std::nullopt;
  std::size_t j = 1;
  while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
    ++j;
  if (j >= line.size() || line[j] != ':') return std::nullopt;
  std::size_t rest = j + 1;
  while (rest < line.size() && std::isspace(static_cast<unsigned char>(line[rest]))) ++rest;
  return HeaderLine{std::string(line.substr(0, j)), std::string(line.substr(rest)),
                    static_cast<int>(rest) + 1};
}

}  // namespace ctxelim::detail
