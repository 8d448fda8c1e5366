#pragma once

#include "ctxelim/matrix.hpp"
#include "ctxelim/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ctxelim {

struct VarId {
  std::string name;

  auto operator<=>(const VarId&) const = default;
};

using VarSet = std::set<VarId>;

// Antecedent: Gamma & psi |= phi. Consequent: Gamma & phi |= psi.
enum class Mode { antecedent, consequent };
std::string to_string(Mode m);

using Assignment = std::map<VarId, Rational>;

// Declaration order of variables; unknown names sort after known ones,
// lexicographically.
class VarOrder {
 public:
  VarOrder() = default;
  explicit VarOrder(std::vector<VarId> vars);

  // Appends if not present yet.
  void declare(const VarId& v);
  bool contains(const VarId& v) const { return index_.contains(v.name); }
  bool less(const VarId& a, const VarId& b) const;
  const std::vector<VarId>& vars() const { return vars_; }

  // `vars` sorted by this order.
  std::vector<VarId> sorted(const VarSet& vars) const;

 private:
  std::vector<VarId> vars_;
  std::unordered_map<std::string, std::size_t> index_;
};

class LinExpr {
 public:
  LinExpr() = default;
  explicit LinExpr(Rational constant) : constant_(std::move(constant)) {}

  static LinExpr term(const VarId& v, const Rational& coeff = 1);

  const std::map<VarId, Rational>& coeffs() const { return coeffs_; }
  const Rational& constant() const { return constant_; }
  Rational coeff(const VarId& v) const;

  void add_term(const VarId& v, const Rational& coeff);
  void add_constant(const Rational& c) { constant_ += c; }

  bool is_constant() const { return coeffs_.empty(); }
  bool mentions(const VarId& v) const { return coeffs_.contains(v); }
  bool mentions_any(const VarSet& vars) const;
  VarSet vars() const;

  // Drops every term over `vars`, keeps the rest and the constant.
  LinExpr without(const VarSet& vars) const;

  // Throws std::out_of_range naming the first unassigned variable.
  Rational evaluate(const Assignment& assignment) const;

  // Replaces assigned variables by their values; the rest stay symbolic.
  LinExpr substitute(const Assignment& partial) const;

  LinExpr& operator+=(const LinExpr& rhs);
  LinExpr& operator-=(const LinExpr& rhs);
  LinExpr& operator*=(const Rational& k);
  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, const Rational& k) { return a *= k; }
  friend LinExpr operator*(const Rational& k, LinExpr a) { return a *= k; }
  LinExpr operator-() const { return *this * Rational(-1); }

  bool operator==(const LinExpr&) const = default;

 private:
  std::map<VarId, Rational> coeffs_;
  Rational constant_;
};

// lhs <= 0.
class Atom {
 public:
  Atom() = default;
  explicit Atom(LinExpr lhs) : lhs_(std::move(lhs)) {}

  const LinExpr& lhs() const { return lhs_; }

  // Integer coefficients and constant with collective gcd 1. The zero
  // expression stays zero.
  Atom canonical() const;
  bool is_canonical() const { return canonical() == *this; }

  bool holds(const Assignment& assignment) const;
  bool trivially_true() const { return lhs_.is_constant() && lhs_.constant() <= 0; }
  bool trivially_false() const { return lhs_.is_constant() && lhs_.constant() > 0; }

  bool operator==(const Atom&) const = default;

 private:
  LinExpr lhs_;
};

using Conjunction = std::vector<Atom>;

// Disjunction of conjunctions. No disjuncts means false; an empty
// conjunction means true.
struct DnfFormula {
  std::vector<Conjunction> disjuncts;

  static DnfFormula truth() { return {{Conjunction{}}}; }
  static DnfFormula falsity() { return {}; }
  static DnfFormula of(Atom a) { return {{Conjunction{std::move(a)}}}; }
  static DnfFormula of(Conjunction c) { return {{std::move(c)}}; }

  bool is_false() const { return disjuncts.empty(); }
  VarSet vars() const;
  bool holds(const Assignment& assignment) const;

  bool operator==(const DnfFormula&) const = default;
};

bool holds(const Conjunction& conj, const Assignment& assignment);
VarSet vars_of(const Conjunction& conj);

// Distributes conjunction over the two disjunctions. Throws
// std::length_error when the product would exceed `cap` disjuncts.
DnfFormula conjoin(const DnfFormula& a, const DnfFormula& b, std::size_t cap = 4096);
DnfFormula disjoin(const DnfFormula& a, const DnfFormula& b);

struct VarPartition {
  std::vector<VarId> x_vars;  // kept, occur in phi
  std::vector<VarId> y_vars;  // eliminated
  std::vector<VarId> z_vars;  // context-only

  VarSet y_set() const { return {y_vars.begin(), y_vars.end()}; }
};

// B * y <= b_sym, one row per source atom.
struct ContextMatrix {
  RatMatrix B;
  std::vector<LinExpr> b_sym;
};

ContextMatrix to_context_matrix(const Conjunction& conj, std::span<const VarId> y_vars);
inline ContextMatrix to_context_matrix(const Conjunction& conj, const VarPartition& p) {
  return to_context_matrix(conj, p.y_vars);
}

// gamma1: atoms free of `y`; gamma2: the rest. Source order is kept.
struct ContextSplit {
  Conjunction gamma1;
  Conjunction gamma2;
};
ContextSplit split_context(const Conjunction& conj, const VarSet& y);

Rational evaluate(const LinExpr& e, const Assignment& assignment);

// "8x - 2z <= 5": integer coefficients, variables in `order`, constant on
// the right. Without a constant, negative terms move right: "x <= z".
std::string canonical_print(const Atom& a, const VarOrder& order);

// Moves every variable outside `lead` to the right-hand side, e.g.
// "o' <= 2o - 3". Uses ">=" when the first lead coefficient is negative.
// Falls back to canonical_print when the atom has no lead variable.
std::string print_oriented(const Atom& a, const VarOrder& order, const VarSet& lead);

// "2o - 3", "1/2x + 1"; the zero expression prints "0".
std::string print_expr(const LinExpr& e, const VarOrder& order);

std::string print_conjunction(const Conjunction& c, const VarOrder& order);
std::string print_dnf(const DnfFormula& f, const VarOrder& order);

}  // namespace ctxelim
