#pragma once

#include "ctxelim/formula.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ctxelim {

// Propositional syntax tree. `hole` marks the single substitution point of a
// shell for eliminate_monotone.
class BoolFormula {
 public:
  enum class Kind { var, constant, negation, conjunction, disjunction, implication, hole };

  static BoolFormula variable(std::string name);
  static BoolFormula constant(bool value);
  static BoolFormula hole();
  static BoolFormula negate(BoolFormula f);
  static BoolFormula both(BoolFormula a, BoolFormula b);
  static BoolFormula either(BoolFormula a, BoolFormula b);
  static BoolFormula implies(BoolFormula a, BoolFormula b);
  static BoolFormula all_of(std::vector<BoolFormula> fs);  // empty: true
  static BoolFormula any_of(std::vector<BoolFormula> fs);  // empty: false

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool value() const { return value_; }
  const std::vector<BoolFormula>& children() const { return kids_; }

  bool has_hole() const;
  VarSet vars() const;

  // Missing variables throw std::out_of_range. A hole evaluates to `hole`.
  bool evaluate(const std::map<VarId, bool>& assignment, bool hole = false) const;

  BoolFormula substitute_hole(const BoolFormula& f) const;

  bool operator==(const BoolFormula&) const = default;

 private:
  Kind kind_ = Kind::constant;
  std::string name_;
  bool value_ = false;
  std::vector<BoolFormula> kids_;
};

// impl := or ("->" impl)?; or := and ("|" and)*; and := unary ("&" unary)*;
// unary := "!" unary | "(" impl ")" | "true" | "false" | "hole" | ident.
BoolFormula parse_bool(std::string_view text, VarOrder& order, int line_no = 1,
                       int column_offset = 1);

// "(p & s) | r", "!p", "p -> q".
std::string print_bool(const BoolFormula& f);

inline constexpr std::size_t kMaxBoolVars = 20;

// Function over `vars`; bit b of an index is the value of vars[b].
// Entries: 0, 1, or 2 for don't-care.
struct TruthTable {
  std::vector<VarId> vars;
  std::vector<std::uint8_t> values;

  static constexpr std::uint8_t dont_care = 2;
  std::map<VarId, bool> assignment(std::size_t index) const;
};

// Throws std::length_error beyond kMaxBoolVars.
TruthTable tabulate(const BoolFormula& f, const std::vector<VarId>& vars);

// Prime implicants by Quine-McCluskey, essential ones first, then greedy
// cover. Terms sorted by their literals' positions in `order`.
BoolFormula minimize(const TruthTable& table, const VarOrder& order);

// forall y (gamma -> phi) over the remaining variables. With `in_context`,
// assignments where gamma is unsatisfiable for every y are don't-cares.
BoolFormula weakest_antecedent(const BoolFormula& phi, const BoolFormula& gamma,
                               const VarSet& y, const VarOrder& order, bool in_context = false);

// exists y (gamma & phi) over the remaining variables.
BoolFormula strongest_consequent(const BoolFormula& phi, const BoolFormula& gamma,
                                 const VarSet& y, const VarOrder& order,
                                 bool in_context = false);

struct MonotoneResult {
  BoolFormula bound_g;      // g+ (antecedent) or g- (consequent), minimized
  BoolFormula substituted;  // shell[hole := bound_g] -> bound
  BoolFormula minimized;    // the same, minimized over its variables
};

// phi is "shell(x, g(y)) <= bound", i.e. shell -> bound, with shell
// non-decreasing in its hole. Antecedent replaces g by its maximum over the
// y satisfying gamma, consequent by the minimum. Where gamma admits no y the
// hole takes false (antecedent) or true (consequent).
//
// Throws std::invalid_argument when the shell has no hole or is not
// monotone in it.
MonotoneResult eliminate_monotone(const BoolFormula& shell, const BoolFormula& bound,
                                  const BoolFormula& g, const BoolFormula& gamma,
                                  const VarSet& y, Mode mode, const VarOrder& order);

bool equivalent(const BoolFormula& a, const BoolFormula& b);
bool entails(const BoolFormula& a, const BoolFormula& b);

struct BoolProblem {
  BoolFormula phi;
  BoolFormula gamma;
  VarSet y;
  Mode mode = Mode::antecedent;
  VarOrder order;
  // Present together when the file carries "shell:", "bound:" and "g:".
  std::optional<BoolFormula> shell, bound, g;
};

// Same layout as linear problem files, with propositional formulas.
BoolProblem parse_bool_problem(std::string_view text);

}  // namespace ctxelim
