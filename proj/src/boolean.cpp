#include "ctxelim/boolean.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace ctxelim {

using detail::TokKind;
using detail::TokenStream;

// ------------------------------------------------------------------ Syntax

BoolFormula BoolFormula::variable(std::string name) {
  BoolFormula f;
  f.kind_ = Kind::var;
  f.name_ = std::move(name);
  return f;
}

BoolFormula BoolFormula::constant(bool value) {
  BoolFormula f;
  f.kind_ = Kind::constant;
  f.value_ = value;
  return f;
}

BoolFormula BoolFormula::hole() {
  BoolFormula f;
  f.kind_ = Kind::hole;
  return f;
}

BoolFormula BoolFormula::negate(BoolFormula a) {
  BoolFormula f;
  f.kind_ = Kind::negation;
  f.kids_.push_back(std::move(a));
  return f;
}

BoolFormula BoolFormula::both(BoolFormula a, BoolFormula b) {
  return all_of({std::move(a), std::move(b)});
}

BoolFormula BoolFormula::either(BoolFormula a, BoolFormula b) {
  return any_of({std::move(a), std::move(b)});
}

BoolFormula BoolFormula::implies(BoolFormula a, BoolFormula b) {
  BoolFormula f;
  f.kind_ = Kind::implication;
  f.kids_.push_back(std::move(a));
  f.kids_.push_back(std::move(b));
  return f;
}

BoolFormula BoolFormula::all_of(std::vector<BoolFormula> fs) {
  if (fs.empty()) return constant(true);
  if (fs.size() == 1) return std::move(fs.front());
  BoolFormula f;
  f.kind_ = Kind::conjunction;
  f.kids_ = std::move(fs);
  return f;
}

BoolFormula BoolFormula::any_of(std::vector<BoolFormula> fs) {
  if (fs.empty()) return constant(false);
  if (fs.size() == 1) return std::move(fs.front());
  BoolFormula f;
  f.kind_ = Kind::disjunction;
  f.kids_ = std::move(fs);
  return f;
}

bool BoolFormula::has_hole() const {
  if (kind_ == Kind::hole) return true;
  return std::any_of(kids_.begin(), kids_.end(), [](const BoolFormula& k) { return k.has_hole(); });
}

VarSet BoolFormula::vars() const {
  VarSet out;
  if (kind_ == Kind::var) out.insert(VarId{name_});
  for (const auto& k : kids_) out.merge(k.vars());
  return out;
}

bool BoolFormula::evaluate(const std::map<VarId, bool>& assignment, bool hole) const {
  switch (kind_) {
    case Kind::var: {
      auto it = assignment.find(VarId{name_});
      if (it == assignment.end()) throw std::out_of_range("unassigned variable '" + name_ + "'");
      return it->second;
    }
    case Kind::constant: return value_;
    case Kind::hole: return hole;
    case Kind::negation: return !kids_[0].evaluate(assignment, hole);
    case Kind::conjunction:
      for (const auto& k : kids_)
        if (!k.evaluate(assignment, hole)) return false;
      return true;
    case Kind::disjunction:
      for (const auto& k : kids_)
        if (k.evaluate(assignment, hole)) return true;
      return false;
    case Kind::implication:
      return !kids_[0].evaluate(assignment, hole) || kids_[1].evaluate(assignment, hole);
  }
  return false;
}

BoolFormula BoolFormula::substitute_hole(const BoolFormula& f) const {
  if (kind_ == Kind::hole) return f;
  BoolFormula out = *this;
  for (auto& k : out.kids_) k = k.substitute_hole(f);
  return out;
}

namespace {

class BoolParser {
 public:
  BoolParser(TokenStream& ts, VarOrder& order) : ts_(ts), order_(order) {}

  BoolFormula implication() {
    BoolFormula lhs = disjunction();
    if (ts_.accept("->")) return BoolFormula::implies(std::move(lhs), implication());
    return lhs;
  }

 private:
  BoolFormula disjunction() {
    std::vector<BoolFormula> parts{conjunction()};
    while (ts_.accept("|")) parts.push_back(conjunction());
    return BoolFormula::any_of(std::move(parts));
  }

  BoolFormula conjunction() {
    std::vector<BoolFormula> parts{unary()};
    while (ts_.accept("&")) parts.push_back(unary());
    return BoolFormula::all_of(std::move(parts));
  }

  BoolFormula unary() {
    if (ts_.accept("!")) return BoolFormula::negate(unary());
    if (ts_.accept("(")) {
      BoolFormula f = implication();
      ts_.expect(")");
      return f;
    }
    const auto& t = ts_.peek();
    if (t.kind != TokKind::ident) ts_.fail("expected a propositional variable");
    std::string name = ts_.next().text;
    if (name == "true") return BoolFormula::constant(true);
    if (name == "false") return BoolFormula::constant(false);
    if (name == "hole") return BoolFormula::hole();
    order_.declare(VarId{name});
    return BoolFormula::variable(std::move(name));
  }

  TokenStream& ts_;
  VarOrder& order_;
};

int precedence(const BoolFormula& f) {
  switch (f.kind()) {
    case BoolFormula::Kind::implication: return 1;
    case BoolFormula::Kind::disjunction: return 2;
    case BoolFormula::Kind::conjunction: return 3;
    case BoolFormula::Kind::negation: return 4;
    default: return 5;
  }
}

std::string wrap(const BoolFormula& f, bool parens) {
  std::string s = print_bool(f);
  return parens ? "(" + s + ")" : s;
}

}  // namespace

BoolFormula parse_bool(std::string_view text, VarOrder& order, int line_no, int column_offset) {
  TokenStream ts(detail::tokenize(text, line_no, column_offset), line_no);
  BoolParser p(ts, order);
  BoolFormula f = p.implication();
  ts.expect_end();
  return f;
}

std::string print_bool(const BoolFormula& f) {
  using K = BoolFormula::Kind;
  const auto& k = f.children();
  switch (f.kind()) {
    case K::var: return f.name();
    case K::constant: return f.value() ? "true" : "false";
    case K::hole: return "hole";
    case K::negation: return "!" + wrap(k[0], precedence(k[0]) < 4);
    case K::conjunction:
    case K::disjunction: {
      bool conj = f.kind() == K::conjunction;
      std::string s;
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) s += conj ? " & " : " | ";
        // Conjunctions inside a disjunction are bracketed for readability.
        s += wrap(k[i], conj ? precedence(k[i]) < 3 : precedence(k[i]) <= 3);
      }
      return s;
    }
    case K::implication:
      return wrap(k[0], precedence(k[0]) <= 1) + " -> " + wrap(k[1], precedence(k[1]) < 1);
  }
  return "?";
}

// ------------------------------------------------------------ Truth tables

std::map<VarId, bool> TruthTable::assignment(std::size_t index) const {
  std::map<VarId, bool> a;
  for (std::size_t b = 0; b < vars.size(); ++b) a[vars[b]] = (index >> b) & 1u;
  return a;
}

TruthTable tabulate(const BoolFormula& f, const std::vector<VarId>& vars) {
  if (vars.size() > kMaxBoolVars)
    throw std::length_error("too many propositional variables (" + std::to_string(vars.size()) +
                            " > " + std::to_string(kMaxBoolVars) + ")");
  TruthTable t{vars, {}};
  const std::size_t rows = std::size_t{1} << vars.size();
  t.values.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) t.values[i] = f.evaluate(t.assignment(i)) ? 1 : 0;
  return t;
}

namespace {

struct Implicant {
  std::uint32_t value;
  std::uint32_t mask;  // set bits are eliminated positions

  bool covers(std::uint32_t m) const { return (m & ~mask) == value; }
  bool operator==(const Implicant&) const = default;
};

struct ImplicantHash {
  std::size_t operator()(const Implicant& i) const {
    return std::hash<std::uint64_t>{}((std::uint64_t{i.mask} << 32) | i.value);
  }
};

std::vector<Implicant> prime_implicants(const TruthTable& t) {
  const std::size_t n = t.vars.size();
  std::vector<Implicant> level;
  for (std::uint32_t m = 0; m < t.values.size(); ++m)
    if (t.values[m] != 0) level.push_back({m, 0});

  std::vector<Implicant> primes;
  while (!level.empty()) {
    std::unordered_set<Implicant, ImplicantHash> present(level.begin(), level.end());
    std::unordered_set<Implicant, ImplicantHash> merged;
    std::vector<Implicant> next;
    std::unordered_set<Implicant, ImplicantHash> next_seen;
    for (const auto& imp : level) {
      for (std::size_t b = 0; b < n; ++b) {
        std::uint32_t bit = 1u << b;
        if ((imp.mask & bit) || (imp.value & bit)) continue;
        Implicant partner{imp.value | bit, imp.mask};
        if (!present.contains(partner)) continue;
        merged.insert(imp);
        merged.insert(partner);
        Implicant joined{imp.value, imp.mask | bit};
        if (next_seen.insert(joined).second) next.push_back(joined);
      }
    }
    for (const auto& imp : level)
      if (!merged.contains(imp)) primes.push_back(imp);
    level = std::move(next);
  }
  return primes;
}

// Literal positions (and polarity) of an implicant, for ordering.
std::vector<std::pair<std::size_t, bool>> literal_key(const Implicant& imp,
                                                      const std::vector<std::size_t>& rank) {
  std::vector<std::pair<std::size_t, bool>> key;
  for (std::size_t b = 0; b < rank.size(); ++b)
    if (!(imp.mask & (1u << b))) key.emplace_back(rank[b], !(imp.value & (1u << b)));
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

BoolFormula minimize(const TruthTable& t, const VarOrder& order) {
  const std::size_t n = t.vars.size();
  std::vector<std::uint32_t> on;
  for (std::uint32_t m = 0; m < t.values.size(); ++m)
    if (t.values[m] == 1) on.push_back(m);
  if (on.empty()) return BoolFormula::constant(false);

  // Position of each table variable in the printing order.
  std::vector<VarId> sorted = order.sorted(VarSet(t.vars.begin(), t.vars.end()));
  std::vector<std::size_t> rank(n);
  for (std::size_t b = 0; b < n; ++b)
    rank[b] = std::find(sorted.begin(), sorted.end(), t.vars[b]) - sorted.begin();

  std::vector<Implicant> primes = prime_implicants(t);
  std::sort(primes.begin(), primes.end(), [&](const Implicant& a, const Implicant& b) {
    return literal_key(a, rank) < literal_key(b, rank);
  });

  std::vector<bool> chosen(primes.size(), false);
  std::vector<bool> covered(on.size(), false);
  auto take = [&](std::size_t p) {
    chosen[p] = true;
    for (std::size_t m = 0; m < on.size(); ++m)
      if (primes[p].covers(on[m])) covered[m] = true;
  };

  for (std::size_t m = 0; m < on.size(); ++m) {
    std::size_t count = 0, last = 0;
    for (std::size_t p = 0; p < primes.size() && count < 2; ++p)
      if (primes[p].covers(on[m])) {
        ++count;
        last = p;
      }
    if (count == 1 && !chosen[last]) take(last);
  }
  while (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    std::size_t best = primes.size(), best_gain = 0;
    for (std::size_t p = 0; p < primes.size(); ++p) {
      if (chosen[p]) continue;
      std::size_t gain = 0;
      for (std::size_t m = 0; m < on.size(); ++m)
        if (!covered[m] && primes[p].covers(on[m])) ++gain;
      if (gain > best_gain ||
          (gain == best_gain && gain > 0 && std::popcount(primes[p].mask) > std::popcount(primes[best].mask))) {
        best = p;
        best_gain = gain;
      }
    }
    take(best);
  }

  std::vector<BoolFormula> terms;
  for (std::size_t p = 0; p < primes.size(); ++p) {
    if (!chosen[p]) continue;
    std::vector<BoolFormula> lits;
    for (const auto& [pos, negated] : literal_key(primes[p], rank)) {
      BoolFormula v = BoolFormula::variable(sorted[pos].name);
      lits.push_back(negated ? BoolFormula::negate(std::move(v)) : std::move(v));
    }
    terms.push_back(BoolFormula::all_of(std::move(lits)));
  }
  return BoolFormula::any_of(std::move(terms));
}

// ------------------------------------------------------------- Elimination

namespace {

struct Split {
  std::vector<VarId> keep;
  std::vector<VarId> elim;
};

Split split_vars(const VarSet& all, const VarSet& y, const VarOrder& order) {
  Split s;
  for (const auto& v : order.sorted(all)) (y.contains(v) ? s.elim : s.keep).push_back(v);
  if (s.keep.size() + s.elim.size() > kMaxBoolVars)
    throw std::length_error("too many propositional variables (" +
                            std::to_string(s.keep.size() + s.elim.size()) + " > " +
                            std::to_string(kMaxBoolVars) + ")");
  return s;
}

// Calls f(assignment) for every y-extension of keep-assignment `k`.
template <class F>
void for_each_extension(const Split& s, std::size_t k, F&& f) {
  std::map<VarId, bool> a;
  for (std::size_t b = 0; b < s.keep.size(); ++b) a[s.keep[b]] = (k >> b) & 1u;
  for (std::size_t e = 0; e < (std::size_t{1} << s.elim.size()); ++e) {
    for (std::size_t b = 0; b < s.elim.size(); ++b) a[s.elim[b]] = (e >> b) & 1u;
    f(a);
  }
}

BoolFormula quantify(const BoolFormula& phi, const BoolFormula& gamma, const VarSet& y,
                     const VarOrder& order, bool in_context, bool universal) {
  VarSet all = phi.vars();
  all.merge(gamma.vars());
  Split s = split_vars(all, y, order);
  TruthTable t{s.keep, std::vector<std::uint8_t>(std::size_t{1} << s.keep.size())};
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    bool all_ok = true, any_ok = false, gamma_sat = false;
    for_each_extension(s, k, [&](const std::map<VarId, bool>& a) {
      bool g = gamma.evaluate(a);
      bool p = phi.evaluate(a);
      gamma_sat = gamma_sat || g;
      all_ok = all_ok && (!g || p);
      any_ok = any_ok || (g && p);
    });
    if (in_context && !gamma_sat) t.values[k] = TruthTable::dont_care;
    else t.values[k] = (universal ? all_ok : any_ok) ? 1 : 0;
  }
  return minimize(t, order);
}

}  // namespace

BoolFormula weakest_antecedent(const BoolFormula& phi, const BoolFormula& gamma, const VarSet& y,
                               const VarOrder& order, bool in_context) {
  return quantify(phi, gamma, y, order, in_context, true);
}

BoolFormula strongest_consequent(const BoolFormula& phi, const BoolFormula& gamma, const VarSet& y,
                                 const VarOrder& order, bool in_context) {
  return quantify(phi, gamma, y, order, in_context, false);
}

MonotoneResult eliminate_monotone(const BoolFormula& shell, const BoolFormula& bound,
                                  const BoolFormula& g, const BoolFormula& gamma, const VarSet& y,
                                  Mode mode, const VarOrder& order) {
  if (!shell.has_hole()) throw std::invalid_argument("shell has no hole");
  for (const auto& v : shell.vars())
    if (y.contains(v)) throw std::invalid_argument("shell mentions eliminated variable " + v.name);
  for (const auto& v : bound.vars())
    if (y.contains(v)) throw std::invalid_argument("bound mentions eliminated variable " + v.name);

  std::vector<VarId> shell_vars = order.sorted(shell.vars());
  TruthTable probe = tabulate(BoolFormula::constant(true), shell_vars);
  for (std::size_t i = 0; i < probe.values.size(); ++i) {
    auto a = probe.assignment(i);
    if (shell.evaluate(a, false) && !shell.evaluate(a, true))
      throw std::invalid_argument("shell is not monotone in its hole");
  }

  VarSet all = g.vars();
  all.merge(gamma.vars());
  all.merge(shell.vars());
  all.merge(bound.vars());
  Split s = split_vars(all, y, order);
  const bool maximize = mode == Mode::antecedent;
  TruthTable gt{s.keep, std::vector<std::uint8_t>(std::size_t{1} << s.keep.size())};
  for (std::size_t k = 0; k < gt.values.size(); ++k) {
    bool found = false, best = !maximize;
    for_each_extension(s, k, [&](const std::map<VarId, bool>& a) {
      if (!gamma.evaluate(a)) return;
      bool v = g.evaluate(a);
      best = maximize ? (best || v) : (best && v);
      found = true;
    });
    gt.values[k] = (found ? best : !maximize) ? 1 : 0;
  }

  MonotoneResult r;
  r.bound_g = minimize(gt, order);
  r.substituted = BoolFormula::implies(shell.substitute_hole(r.bound_g), bound);
  r.minimized = minimize(tabulate(r.substituted, order.sorted(r.substituted.vars())), order);
  return r;
}

bool entails(const BoolFormula& a, const BoolFormula& b) {
  VarSet all = a.vars();
  all.merge(b.vars());
  TruthTable t = tabulate(BoolFormula::constant(true), {all.begin(), all.end()});
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    auto asg = t.assignment(i);
    if (a.evaluate(asg) && !b.evaluate(asg)) return false;
  }
  return true;
}

bool equivalent(const BoolFormula& a, const BoolFormula& b) { return entails(a, b) && entails(b, a); }

// ------------------------------------------------------------------ Files

BoolProblem parse_bool_problem(std::string_view text) {
  detail::RawProblem raw = detail::read_problem_sections(text, {"shell", "bound", "g"});
  BoolProblem p;
  p.mode = *raw.mode;
  auto read = [&](const detail::RawSection& s) {
    return parse_bool(s.text, p.order, s.line_no, s.column);
  };
  // Declare variables in file order before building anything.
  std::vector<const detail::RawSection*> sections;
  if (raw.phi) sections.push_back(&*raw.phi);
  for (const auto& g : raw.gamma) sections.push_back(&g);
  for (const auto& [key, e] : raw.extra) sections.push_back(&e);
  std::sort(sections.begin(), sections.end(),
            [](const auto* a, const auto* b) { return a->line_no < b->line_no; });
  for (const auto* s : sections) read(*s);
  for (const auto& name : raw.eliminate) {
    p.order.declare(VarId{name});
    p.y.insert(VarId{name});
  }
  if (raw.phi) p.phi = read(*raw.phi);
  std::vector<BoolFormula> gs;
  for (const auto& g : raw.gamma) gs.push_back(read(g));
  p.gamma = BoolFormula::all_of(std::move(gs));

  int present = 0;
  for (const char* key : {"shell", "bound", "g"}) present += raw.extra.contains(key);
  if (present != 0 && present != 3)
    throw ParseError("'shell:', 'bound:' and 'g:' must be given together", 1, 1);
  if (present == 3) {
    p.shell = read(raw.extra.at("shell"));
    p.bound = read(raw.extra.at("bound"));
    p.g = read(raw.extra.at("g"));
    if (!p.shell->has_hole())
      throw ParseError("shell has no 'hole'", raw.extra.at("shell").line_no, 1);
    if (!raw.phi) p.phi = BoolFormula::implies(p.shell->substitute_hole(*p.g), *p.bound);
  } else if (!raw.phi) {
    throw ParseError("missing 'phi:' header", 1, 1);
  }
  if (raw.phi && p.phi.has_hole())
    throw ParseError("'hole' is only allowed in 'shell:'", raw.phi->line_no, 1);
  return p;
}

}  // namespace ctxelim
