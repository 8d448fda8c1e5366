#include "ctxelim/parser.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <sstream>

namespace ctxelim {

using detail::TokenStream;
using detail::TokKind;

namespace {

class FormulaParser {
 public:
  FormulaParser(TokenStream& ts, VarOrder& order, const ParseOptions& options)
      : ts_(ts), order_(order), options_(options) {}

  DnfFormula disjunction() {
    DnfFormula f = conjunction();
    while (ts_.accept("|")) f = disjoin(f, conjunction());
    return f;
  }

 private:
  DnfFormula conjunction() {
    DnfFormula f = primary();
    while (ts_.accept("&")) {
      try {
        f = conjoin(f, primary(), options_.dnf_cap);
      } catch (const std::length_error& e) {
        ts_.fail(e.what());
      }
    }
    return f;
  }

  DnfFormula primary() {
    if (ts_.accept("(")) {
      DnfFormula f = disjunction();
      ts_.expect(")");
      return f;
    }
    const auto& t = ts_.peek();
    if (t.kind == TokKind::ident && (t.text == "true" || t.text == "false")) {
      bool value = t.text == "true";
      ts_.next();
      return value ? DnfFormula::truth() : DnfFormula::falsity();
    }
    return relation();
  }

  DnfFormula relation() {
    LinExpr left = expression();
    std::string rel;
    if (ts_.accept("<="))
      rel = "<=";
    else if (ts_.accept(">="))
      rel = ">=";
    else if (ts_.accept("="))
      rel = "=";
    else
      ts_.fail("expected '<=', '>=' or '='");
    LinExpr right = expression();
    if (rel == "<=") return DnfFormula::of(Atom(left - right));
    if (rel == ">=") return DnfFormula::of(Atom(right - left));
    return DnfFormula::of(Conjunction{Atom(left - right), Atom(right - left)});
  }

  LinExpr expression() {
    LinExpr e;
    Rational s = 1;
    if (ts_.accept("-"))
      s = -1;
    else
      ts_.accept("+");
    e += term() * s;
    while (true) {
      if (ts_.accept("+"))
        e += term();
      else if (ts_.accept("-"))
        e -= term();
      else
        break;
    }
    return e;
  }

  // number "*"? ident | number | ident
  LinExpr term() {
    const auto& t = ts_.peek();
    if (t.kind == TokKind::number) {
      Rational k = parse_rational(ts_.next().text);
      bool star = ts_.accept("*");
      if (ts_.peek().kind == TokKind::ident && !is_keyword(ts_.peek().text))
        return LinExpr::term(variable(), k);
      if (star) ts_.fail("expected variable after '*'");
      return LinExpr(k);
    }
    if (t.kind == TokKind::ident && !is_keyword(t.text)) return LinExpr::term(variable(), 1);
    ts_.fail("expected a number or variable");
  }

  VarId variable() {
    VarId v{ts_.next().text};
    order_.declare(v);
    return v;
  }

  static bool is_keyword(const std::string& s) { return s == "true" || s == "false"; }

  TokenStream& ts_;
  VarOrder& order_;
  const ParseOptions& options_;
};

VarSet to_set(const std::vector<VarId>& vs) { return {vs.begin(), vs.end()}; }

}  // namespace

DnfFormula parse_formula(std::string_view text, VarOrder& order, const ParseOptions& options,
                         int line_no, int column_offset) {
  TokenStream ts(detail::tokenize(text, line_no, column_offset), line_no);
  FormulaParser p(ts, order, options);
  DnfFormula f = p.disjunction();
  ts.expect_end();
  return f;
}

Atom parse_atom(std::string_view text) {
  VarOrder order;
  DnfFormula f = parse_formula(text, order);
  if (f.disjuncts.size() != 1 || f.disjuncts.front().size() != 1)
    throw ParseError("expected a single inequality", 1, 1);
  return f.disjuncts.front().front();
}

Mode parse_mode(std::string_view text) {
  if (text == "antecedent") return Mode::antecedent;
  if (text == "consequent") return Mode::consequent;
  throw std::invalid_argument("mode must be 'antecedent' or 'consequent', got '" +
                              std::string(text) + "'");
}

namespace detail {

RawProblem read_problem_sections(std::string_view text,
                                 const std::vector<std::string>& allowed_extra) {
  RawProblem raw;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool in_gamma = false;
  bool seen_gamma = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = strip_comment(line);
    if (is_blank(body)) continue;
    if (is_indented(body)) {
      if (!in_gamma) throw ParseError("indented line outside 'gamma:' block", line_no, 1);
      auto first = body.find_first_not_of(" \t");
      raw.gamma.push_back({body.substr(first), line_no, static_cast<int>(first) + 1});
      continue;
    }
    in_gamma = false;
    auto header = split_header(body);
    if (!header) throw ParseError("expected 'key:' header", line_no, 1);
    const std::string& key = header->key;
    if (key == "eliminate") {
      raw.eliminate = split_words(header->rest);
      raw.eliminate_line = line_no;
    } else if (key == "mode") {
      try {
        raw.mode = parse_mode(header->rest);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no, header->rest_column);
      }
    } else if (key == "phi") {
      raw.phi = RawSection{header->rest, line_no, header->rest_column};
    } else if (key == "gamma") {
      if (seen_gamma) throw ParseError("duplicate 'gamma:' block", line_no, 1);
      seen_gamma = in_gamma = true;
      if (!is_blank(header->rest))
        raw.gamma.push_back({header->rest, line_no, header->rest_column});
    } else if (std::find(allowed_extra.begin(), allowed_extra.end(), key) != allowed_extra.end()) {
      raw.extra[key] = RawSection{header->rest, line_no, header->rest_column};
    } else {
      throw ParseError("unknown header '" + key + "'", line_no, 1);
    }
  }
  if (raw.eliminate_line == 0) throw ParseError("missing 'eliminate:' header", line_no, 1);
  if (!raw.mode) throw ParseError("missing 'mode:' header", line_no, 1);
  return raw;
}

}  // namespace detail

Problem parse_problem(std::string_view text, const ParseOptions& options) {
  detail::RawProblem raw = detail::read_problem_sections(text);
  if (!raw.phi) throw ParseError("missing 'phi:' header", 1, 1);

  Problem p;
  p.mode = *raw.mode;
  std::vector<VarId> ys;
  for (const auto& name : raw.eliminate) {
    VarId v{name};
    if (std::find(ys.begin(), ys.end(), v) == ys.end()) ys.push_back(v);
  }
  p.phi = parse_formula(raw.phi->text, p.order, options, raw.phi->line_no, raw.phi->column);
  p.gamma = DnfFormula::truth();
  for (const auto& g : raw.gamma) {
    DnfFormula line = parse_formula(g.text, p.order, options, g.line_no, g.column);
    try {
      p.gamma = conjoin(p.gamma, line, options.dnf_cap);
    } catch (const std::length_error& e) {
      throw ParseError(e.what(), g.line_no, g.column);
    }
  }

  for (const auto& v : ys) p.order.declare(v);

  VarSet phi_vars = p.phi.vars();
  VarSet gamma_vars = p.gamma.vars();
  VarSet y = to_set(ys);
  for (const auto& v : ys)
    if (!phi_vars.contains(v) && !gamma_vars.contains(v))
      throw ParseError("unknown variable '" + v.name + "' in eliminate list", raw.eliminate_line, 1);

  p.partition.y_vars = ys;
  for (const auto& v : p.order.vars()) {
    if (y.contains(v)) continue;
    if (phi_vars.contains(v))
      p.partition.x_vars.push_back(v);
    else if (gamma_vars.contains(v))
      p.partition.z_vars.push_back(v);
  }
  return p;
}

}  // namespace ctxelim
