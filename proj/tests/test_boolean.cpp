#include "ctxelim/boolean.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace ctxelim;
using namespace ctxelim::testing;

namespace {

BoolFormula f(const std::string& text) {
  VarOrder o;
  return parse_bool(text, o);
}

VarOrder pqrs() {
  VarOrder o;
  for (auto n : {"p", "q", "r", "s", "t"}) o.declare(VarId{n});
  return o;
}

using Asg = std::map<VarId, bool>;

// All total assignments over `vars`.
std::vector<Asg> assignments(const std::vector<VarId>& vars) {
  std::vector<Asg> out;
  for (std::size_t m = 0; m < (std::size_t{1} << vars.size()); ++m) {
    Asg a;
    for (std::size_t b = 0; b < vars.size(); ++b) a[vars[b]] = (m >> b) & 1;
    out.push_back(a);
  }
  return out;
}

BoolFormula random_formula(Rng& rng, const std::vector<VarId>& vars, int depth) {
  if (depth == 0 || rng.coin(25)) {
    if (rng.coin(5)) return BoolFormula::constant(rng.coin());
    auto v = BoolFormula::variable(vars[static_cast<std::size_t>(
        rng.uniform(0, static_cast<long>(vars.size()) - 1))].name);
    return rng.coin(30) ? BoolFormula::negate(v) : v;
  }
  auto a = random_formula(rng, vars, depth - 1);
  auto b = random_formula(rng, vars, depth - 1);
  switch (rng.uniform(0, 3)) {
    case 0: return BoolFormula::both(a, b);
    case 1: return BoolFormula::either(a, b);
    case 2: return BoolFormula::implies(a, b);
    default: return BoolFormula::negate(BoolFormula::both(a, b));
  }
}

// Shell built from & and | over the hole and literals; monotone in the hole.
BoolFormula random_shell(Rng& rng, const std::vector<VarId>& vars) {
  BoolFormula s = BoolFormula::hole();
  for (long i = rng.uniform(1, 3); i > 0; --i) {
    auto lit = random_formula(rng, vars, 1);
    s = rng.coin() ? BoolFormula::both(s, lit) : BoolFormula::either(s, lit);
  }
  return s;
}

struct Case {
  BoolFormula phi, gamma;
  VarSet y;
  std::vector<VarId> keep, all;
};

Case random_case(Rng& rng) {
  std::vector<VarId> all = {{"p"}, {"q"}, {"r"}, {"s"}};
  Case c{random_formula(rng, all, 3), random_formula(rng, all, 2), {}, {}, all};
  std::size_t ny = static_cast<std::size_t>(rng.uniform(0, 2));
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i < ny) c.y.insert(all[i]);
    else c.keep.push_back(all[i]);
  }
  return c;
}

}  // namespace

TEST_CASE("parsing and printing") {
  CHECK(print_bool(f("p & q | r")) == "(p & q) | r");
  CHECK(print_bool(f("!p | q -> r")) == "!p | q -> r");
  CHECK(print_bool(f("p -> q -> r")) == "p -> q -> r");
  CHECK(print_bool(f("!(p & q)")) == "!(p & q)");
  CHECK(f("true & hole").has_hole());
  CHECK_THROWS(f("p &"));
  CHECK_THROWS(f("p q"));
  CHECK(f("p -> q").evaluate({{{"p"}, true}, {{"q"}, false}}) == false);
}

TEST_CASE("eliminating q under s -> q") {
  VarOrder o = pqrs();
  BoolFormula a = weakest_antecedent(f("(p & q) | r"), f("s -> q"), {{"q"}}, o);
  CHECK(equivalent(a, f("(p & s) | r")));
  CHECK(equivalent(a, f("(p | r) & (s | r)")));
  CHECK(print_bool(a) == "(p & s) | r");

  BoolFormula c = strongest_consequent(f("q"), f("q -> s"), {{"q"}}, o);
  CHECK(print_bool(c) == "s");

  CHECK(equivalent(weakest_antecedent(f("p & q"), f("r"), {}, o), f("r -> p & q")));
  CHECK(equivalent(strongest_consequent(f("p | q"), f("r"), {}, o), f("r & (p | q)")));
  CHECK(print_bool(weakest_antecedent(f("true"), f("s -> q"), {{"q"}}, o)) == "true");
  CHECK(print_bool(strongest_consequent(f("false"), f("s -> q"), {{"q"}}, o)) == "false");
}

TEST_CASE("problem files") {
  BoolProblem p = parse_bool_problem(read_data("boolean_example.txt"));
  CHECK(print_bool(weakest_antecedent(p.phi, p.gamma, p.y, p.order)) == "(p & s) | r");
  BoolProblem m = parse_bool_problem(read_data("boolean_monotone.txt"));
  REQUIRE(m.shell);
  CHECK(equivalent(m.phi, f("!p | !q -> r")));
  auto r = eliminate_monotone(*m.shell, *m.bound, *m.g, m.gamma, m.y, m.mode, m.order);
  CHECK(print_bool(r.bound_g) == "!s");
  CHECK(equivalent(r.minimized, f("(p & s) | r")));
  BoolProblem c = parse_bool_problem(read_data("boolean_consequent.txt"));
  CHECK(print_bool(strongest_consequent(c.phi, c.gamma, c.y, c.order)) == "s");
}

TEST_CASE("weakest antecedents and strongest consequents are optimal") {
  Rng rng(8);
  VarOrder o = pqrs();
  for (int t = 0; t < 150; ++t) {
    Case c = random_case(rng);
    BoolFormula ante = weakest_antecedent(c.phi, c.gamma, c.y, o);
    BoolFormula cons = strongest_consequent(c.phi, c.gamma, c.y, o);
    for (const auto& v : ante.vars()) CHECK_FALSE(c.y.contains(v));
    for (const auto& v : cons.vars()) CHECK_FALSE(c.y.contains(v));
    auto rows = assignments(c.all);
    for (const auto& a : rows) {
      if (c.gamma.evaluate(a) && ante.evaluate(a)) CHECK(c.phi.evaluate(a));
      if (c.gamma.evaluate(a) && c.phi.evaluate(a)) CHECK(cons.evaluate(a));
    }
    // Every Y-free function that is an antecedent entails `ante`; every
    // consequent is entailed by `cons`.
    std::vector<int> g, p, an, co, idx;
    for (const auto& a : rows) {
      g.push_back(c.gamma.evaluate(a));
      p.push_back(c.phi.evaluate(a));
      an.push_back(ante.evaluate(a));
      co.push_back(cons.evaluate(a));
      std::size_t m = 0;
      for (std::size_t b = 0; b < c.keep.size(); ++b) m |= std::size_t{a.at(c.keep[b])} << b;
      idx.push_back(static_cast<int>(m));
    }
    const std::uint32_t fns = std::uint32_t{1} << (1u << c.keep.size());
    int violations = 0;
    for (std::uint32_t fn = 0; fn < fns; ++fn) {
      bool is_ante = true, is_cons = true;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        bool x = (fn >> idx[r]) & 1;
        if (g[r] && x && !p[r]) is_ante = false;
        if (g[r] && p[r] && !x) is_cons = false;
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        bool x = (fn >> idx[r]) & 1;
        if (is_ante && x && !an[r]) ++violations;
        if (is_cons && co[r] && !x) ++violations;
      }
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("in-context output agrees under the context") {
  Rng rng(12);
  VarOrder o = pqrs();
  for (int t = 0; t < 150; ++t) {
    Case c = random_case(rng);
    auto both = [&](const BoolFormula& x) { return BoolFormula::both(x, c.gamma); };
    BoolFormula a0 = weakest_antecedent(c.phi, c.gamma, c.y, o);
    BoolFormula a1 = weakest_antecedent(c.phi, c.gamma, c.y, o, true);
    CHECK(equivalent(both(a0), both(a1)));
    BoolFormula c0 = strongest_consequent(c.phi, c.gamma, c.y, o);
    BoolFormula c1 = strongest_consequent(c.phi, c.gamma, c.y, o, true);
    CHECK(equivalent(both(c0), both(c1)));
  }
}

TEST_CASE("minimization preserves the table") {
  Rng rng(4);
  VarOrder o = pqrs();
  std::vector<VarId> vars = {{"p"}, {"q"}, {"r"}, {"s"}, {"t"}};
  for (int t = 0; t < 300; ++t) {
    BoolFormula x = random_formula(rng, vars, 4);
    TruthTable table = tabulate(x, vars);
    BoolFormula m = minimize(table, o);
    CHECK(equivalent(x, m));
    // With don't-cares, only the cared-for rows are fixed.
    for (auto& v : table.values)
      if (rng.coin(30)) v = TruthTable::dont_care;
    BoolFormula d = minimize(table, o);
    for (std::size_t i = 0; i < table.values.size(); ++i)
      if (table.values[i] != TruthTable::dont_care)
        CHECK(d.evaluate(table.assignment(i)) == (table.values[i] == 1));
  }
  CHECK(print_bool(minimize(tabulate(f("p | !p"), {{"p"}}), o)) == "true");
  CHECK(print_bool(minimize(tabulate(f("p & !p"), {{"p"}}), o)) == "false");
}

TEST_CASE("monotone substitution matches the optimum in context") {
  Rng rng(19);
  VarOrder o = pqrs();
  std::vector<VarId> outer = {{"p"}, {"r"}, {"s"}}, inner = {{"q"}, {"t"}};
  VarSet y(inner.begin(), inner.end());
  std::vector<VarId> all = {{"p"}, {"q"}, {"r"}, {"s"}, {"t"}};
  for (int t = 0; t < 150; ++t) {
    BoolFormula shell = random_shell(rng, outer);
    BoolFormula bound = random_formula(rng, outer, 2);
    BoolFormula g = random_formula(rng, inner, 2);
    BoolFormula gamma = random_formula(rng, all, 2);
    BoolFormula phi = BoolFormula::implies(shell.substitute_hole(g), bound);
    for (Mode m : {Mode::antecedent, Mode::consequent}) {
      MonotoneResult r = eliminate_monotone(shell, bound, g, gamma, y, m, o);
      CHECK(equivalent(r.substituted, r.minimized));
      BoolFormula best = m == Mode::antecedent ? weakest_antecedent(phi, gamma, y, o)
                                               : strongest_consequent(phi, gamma, y, o);
      if (m == Mode::antecedent) {
        CHECK(entails(BoolFormula::both(gamma, r.minimized), phi));
        CHECK(entails(r.minimized, best));
      } else {
        CHECK(entails(BoolFormula::both(gamma, phi), r.minimized));
        CHECK(entails(best, r.minimized));
      }
      CHECK(equivalent(BoolFormula::both(r.minimized, gamma), BoolFormula::both(best, gamma)));
    }
  }
}

TEST_CASE("monotone substitution rejects bad shells") {
  VarOrder o = pqrs();
  VarSet y{{"q"}};
  CHECK_THROWS_AS(eliminate_monotone(f("!hole"), f("r"), f("q"), f("true"), y,
                                     Mode::antecedent, o),
                  std::invalid_argument);
  CHECK_THROWS_AS(eliminate_monotone(f("p"), f("r"), f("q"), f("true"), y, Mode::antecedent, o),
                  std::invalid_argument);
  CHECK_THROWS_AS(eliminate_monotone(f("q | hole"), f("r"), f("q"), f("true"), y,
                                     Mode::antecedent, o),
                  std::invalid_argument);
  auto r = eliminate_monotone(f("p & hole"), f("r"), f("true"), f("q | s"), y, Mode::antecedent, o);
  CHECK(print_bool(r.bound_g) == "true");
}

TEST_CASE("enumeration bound") {
  std::vector<VarId> many;
  std::vector<BoolFormula> lits;
  for (int i = 0; i < 21; ++i) {
    many.push_back(VarId{"v" + std::to_string(i)});
    lits.push_back(BoolFormula::variable(many.back().name));
  }
  BoolFormula big = BoolFormula::any_of(lits);
  CHECK_THROWS_AS(tabulate(big, many), std::length_error);
  VarOrder o;
  CHECK_THROWS_AS(weakest_antecedent(big, f("true"), {}, o), std::length_error);
}
