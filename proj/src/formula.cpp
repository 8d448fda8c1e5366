#include "ctxelim/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctxelim {

std::string to_string(Mode m) { return m == Mode::antecedent ? "antecedent" : "consequent"; }

// ---------------------------------------------------------------- VarOrder

VarOrder::VarOrder(std::vector<VarId> vars) {
  for (auto& v : vars) declare(v);
}

void VarOrder::declare(const VarId& v) {
  if (index_.contains(v.name)) return;
  index_.emplace(v.name, vars_.size());
  vars_.push_back(v);
}

bool VarOrder::less(const VarId& a, const VarId& b) const {
  auto ia = index_.find(a.name);
  auto ib = index_.find(b.name);
  bool ka = ia != index_.end();
  bool kb = ib != index_.end();
  if (ka && kb) return ia->second < ib->second;
  if (ka != kb) return ka;
  return a < b;
}

std::vector<VarId> VarOrder::sorted(const VarSet& vars) const {
  std::vector<VarId> out(vars.begin(), vars.end());
  std::stable_sort(out.begin(), out.end(),
                   [this](const VarId& a, const VarId& b) { return less(a, b); });
  return out;
}

// ----------------------------------------------------------------- LinExpr

LinExpr LinExpr::term(const VarId& v, const Rational& coeff) {
  LinExpr e;
  e.add_term(v, coeff);
  return e;
}

Rational LinExpr::coeff(const VarId& v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void LinExpr::add_term(const VarId& v, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(v, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) coeffs_.erase(it);
}

bool LinExpr::mentions_any(const VarSet& vars) const {
  for (const auto& [v, c] : coeffs_)
    if (vars.contains(v)) return true;
  return false;
}

VarSet LinExpr::vars() const {
  VarSet out;
  for (const auto& [v, c] : coeffs_) out.insert(v);
  return out;
}

LinExpr LinExpr::without(const VarSet& vars) const {
  LinExpr out(constant_);
  for (const auto& [v, c] : coeffs_)
    if (!vars.contains(v)) out.coeffs_.emplace(v, c);
  return out;
}

Rational LinExpr::evaluate(const Assignment& assignment) const {
  Rational sum = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = assignment.find(v);
    if (it == assignment.end())
      throw std::out_of_range("no value for variable '" + v.name + "'");
    sum += c * it->second;
  }
  return sum;
}

LinExpr LinExpr::substitute(const Assignment& partial) const {
  LinExpr out(constant_);
  for (const auto& [v, c] : coeffs_) {
    if (auto it = partial.find(v); it != partial.end())
      out.constant_ += c * it->second;
    else
      out.coeffs_.emplace(v, c);
  }
  return out;
}

LinExpr& LinExpr::operator+=(const LinExpr& rhs) {
  for (const auto& [v, c] : rhs.coeffs_) add_term(v, c);
  constant_ += rhs.constant_;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& rhs) {
  for (const auto& [v, c] : rhs.coeffs_) add_term(v, -c);
  constant_ -= rhs.constant_;
  return *this;
}

LinExpr& LinExpr::operator*=(const Rational& k) {
  if (k == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [v, c] : coeffs_) c *= k;
  constant_ *= k;
  return *this;
}

Rational evaluate(const LinExpr& e, const Assignment& assignment) {
  return e.evaluate(assignment);
}

// -------------------------------------------------------------------- Atom

Atom Atom::canonical() const {
  Integer den_lcm = 1;
  for (const auto& [v, c] : lhs_.coeffs()) den_lcm = lcm(den_lcm, c.get_den());
  den_lcm = lcm(den_lcm, lhs_.constant().get_den());

  Integer g = 0;
  for (const auto& [v, c] : lhs_.coeffs()) g = gcd(g, Integer(c.get_num() * (den_lcm / c.get_den())));
  const Rational& k = lhs_.constant();
  g = gcd(g, Integer(k.get_num() * (den_lcm / k.get_den())));
  if (g == 0) return Atom{};

  LinExpr scaled = lhs_ * Rational(den_lcm, g);
  return Atom(std::move(scaled));
}

bool Atom::holds(const Assignment& assignment) const {
  return lhs_.evaluate(assignment) <= 0;
}

// -------------------------------------------------------------- Formulas

bool holds(const Conjunction& conj, const Assignment& assignment) {
  return std::all_of(conj.begin(), conj.end(),
                     [&](const Atom& a) { return a.holds(assignment); });
}

VarSet vars_of(const Conjunction& conj) {
  VarSet out;
  for (const auto& a : conj)
    for (const auto& [v, c] : a.lhs().coeffs()) out.insert(v);
  return out;
}

VarSet DnfFormula::vars() const {
  VarSet out;
  for (const auto& d : disjuncts) out.merge(vars_of(d));
  return out;
}

bool DnfFormula::holds(const Assignment& assignment) const {
  return std::any_of(disjuncts.begin(), disjuncts.end(),
                     [&](const Conjunction& c) { return ctxelim::holds(c, assignment); });
}

DnfFormula conjoin(const DnfFormula& a, const DnfFormula& b, std::size_t cap) {
  if (a.disjuncts.size() * b.disjuncts.size() > cap)
    throw std::length_error("DNF expansion exceeds " + std::to_string(cap) + " disjuncts");
  DnfFormula out;
  for (const auto& ca : a.disjuncts)
    for (const auto& cb : b.disjuncts) {
      Conjunction c = ca;
      c.insert(c.end(), cb.begin(), cb.end());
      out.disjuncts.push_back(std::move(c));
    }
  return out;
}

DnfFormula disjoin(const DnfFormula& a, const DnfFormula& b) {
  DnfFormula out = a;
  out.disjuncts.insert(out.disjuncts.end(), b.disjuncts.begin(), b.disjuncts.end());
  return out;
}

// ---------------------------------------------------------- Matrix view

ContextMatrix to_context_matrix(const Conjunction& conj, std::span<const VarId> y_vars) {
  ContextMatrix cm{RatMatrix(conj.size(), y_vars.size()), {}};
  VarSet ys(y_vars.begin(), y_vars.end());
  cm.b_sym.reserve(conj.size());
  for (std::size_t i = 0; i < conj.size(); ++i) {
    const LinExpr& lhs = conj[i].lhs();
    for (std::size_t j = 0; j < y_vars.size(); ++j) cm.B(i, j) = lhs.coeff(y_vars[j]);
    cm.b_sym.push_back(-lhs.without(ys));
  }
  return cm;
}

ContextSplit split_context(const Conjunction& conj, const VarSet& y) {
  ContextSplit s;
  for (const auto& a : conj) (a.lhs().mentions_any(y) ? s.gamma2 : s.gamma1).push_back(a);
  return s;
}

// ---------------------------------------------------------------- Printing

namespace {

using Term = std::pair<VarId, Rational>;

// Integer-coefficient sum, e.g. "2o - 3". Empty sum prints "0".
std::string print_sum(const std::vector<Term>& terms, const Rational& constant) {
  std::string s;
  for (const auto& [v, c] : terms) {
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (mag != 1) s += to_string(mag);
    s += v.name;
  }
  if (constant != 0 || s.empty()) {
    bool neg = constant < 0;
    Rational mag = neg ? Rational(-constant) : constant;
    if (s.empty())
      s += (neg ? "-" : "") + to_string(mag);
    else
      s += (neg ? " - " : " + ") + to_string(mag);
  }
  return s;
}

std::vector<Term> ordered_terms(const LinExpr& e, const VarOrder& order) {
  std::vector<Term> out;
  for (const auto& v : order.sorted(e.vars())) out.emplace_back(v, e.coeff(v));
  return out;
}

}  // namespace

std::string canonical_print(const Atom& a, const VarOrder& order) {
  Atom c = a.canonical();
  auto terms = ordered_terms(c.lhs(), order);
  if (c.lhs().constant() == 0) {
    std::vector<Term> pos, neg;
    for (const auto& t : terms) (t.second > 0 ? pos : neg).push_back({t.first, -t.second});
    if (!pos.empty() && !neg.empty()) {
      for (auto& t : pos) t.second = -t.second;
      return print_sum(pos, 0) + " <= " + print_sum(neg, 0);
    }
  }
  std::string left = print_sum(terms, 0);
  return left + " <= " + to_string(Rational(-c.lhs().constant()));
}

std::string print_oriented(const Atom& a, const VarOrder& order, const VarSet& lead) {
  Atom c = a.canonical();
  auto terms = ordered_terms(c.lhs(), order);
  std::vector<Term> left, right;
  for (const auto& t : terms) (lead.contains(t.first) ? left : right).push_back(t);
  bool flip = !left.empty() && left.front().second < 0;
  if (left.empty() || (right.empty() && !flip)) return canonical_print(a, order);

  Rational s = flip ? -1 : 1;
  for (auto& t : left) t.second *= s;
  for (auto& t : right) t.second *= -s;
  Rational k = -s * c.lhs().constant();
  return print_sum(left, 0) + (flip ? " >= " : " <= ") + print_sum(right, k);
}

std::string print_expr(const LinExpr& e, const VarOrder& order) {
  return print_sum(ordered_terms(e, order), e.constant());
}

std::string print_conjunction(const Conjunction& c, const VarOrder& order) {
  if (c.empty()) return "true";
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += " & ";
    s += canonical_print(c[i], order);
  }
  return s;
}

std::string print_dnf(const DnfFormula& f, const VarOrder& order) {
  if (f.disjuncts.empty()) return "false";
  if (f.disjuncts.size() == 1) return print_conjunction(f.disjuncts.front(), order);
  std::string s;
  for (std::size_t i = 0; i < f.disjuncts.size(); ++i) {
    if (i) s += " | ";
    const auto& d = f.disjuncts[i];
    bool paren = d.size() > 1;
    s += (paren ? "(" : "") + print_conjunction(d, order) + (paren ? ")" : "");
  }
  return s;
}

}  // namespace ctxelim
