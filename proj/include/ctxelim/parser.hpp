#pragma once

#include "ctxelim/formula.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctxelim {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ParseOptions {
  // Upper bound on disjuncts produced while distributing & over |.
  std::size_t dnf_cap = 4096;
};

struct Problem {
  DnfFormula phi;
  DnfFormula gamma;
  VarPartition partition;
  Mode mode = Mode::antecedent;
  VarOrder order;
};

// Problem file:
//
//   eliminate: y1 y2
//   mode: antecedent
//   phi: 2x + y1 - 2y2 <= 5
//   gamma:
//     x - 2y1 + y2 + z <= 1
//     3y1 - 4y2 <= 6
//
// Gamma lines are conjoined; each may itself contain "|".
Problem parse_problem(std::string_view text, const ParseOptions& options = {});

// formula := disj; disj := conj ("|" conj)*; conj := prim ("&" prim)*;
// prim := "(" disj ")" | "true" | "false" | expr ("<="|">="|"=") expr.
// Variables are declared into `order` as they are met.
DnfFormula parse_formula(std::string_view text, VarOrder& order,
                         const ParseOptions& options = {}, int line_no = 1,
                         int column_offset = 1);

// Single relation; "=" is rejected since it denotes two atoms.
Atom parse_atom(std::string_view text);

Mode parse_mode(std::string_view text);

namespace detail {

// Header-level view of a problem file shared by the linear and Boolean
// readers.
struct RawSection {
  std::string text;
  int line_no = 0;
  int column = 1;
};

struct RawProblem {
  std::vector<std::string> eliminate;
  int eliminate_line = 0;
  std::optional<Mode> mode;
  std::optional<RawSection> phi;
  std::vector<RawSection> gamma;
  std::map<std::string, RawSection> extra;  // other "key: value" headers
};

RawProblem read_problem_sections(std::string_view text,
                                 const std::vector<std::string>& allowed_extra = {});

}  // namespace detail

}  // namespace ctxelim
