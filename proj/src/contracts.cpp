#include "ctxelim/contracts.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ctxelim {

VarSet Contract::interface() const {
  VarSet s(inputs.begin(), inputs.end());
  s.insert(outputs.begin(), outputs.end());
  return s;
}

// ------------------------------------------------------------------- Files

namespace {

struct Block {
  std::vector<detail::RawSection> lines;
  bool seen = false;
};

std::vector<VarId> to_vars(const std::vector<std::string>& names) {
  std::vector<VarId> out;
  for (const auto& n : names)
    if (std::find(out.begin(), out.end(), VarId{n}) == out.end()) out.push_back(VarId{n});
  return out;
}

DnfFormula read_block(const Block& b, VarOrder& order) {
  DnfFormula f = DnfFormula::truth();
  for (const auto& s : b.lines) {
    DnfFormula line = parse_formula(s.text, order, {}, s.line_no, s.column);
    try {
      f = conjoin(f, line);
    } catch (const std::length_error& e) {
      throw ParseError(e.what(), s.line_no, s.column);
    }
  }
  return f;
}

// Atoms entirely over `lead` put the last of their lead variables on the
// left: "o' <= 3o - 2".
std::string print_led(const Atom& a, const VarOrder& order, const std::vector<VarId>& lead) {
  VarSet vs = a.lhs().vars(), own;
  for (const auto& v : lead)
    if (vs.contains(v)) own = {v};
  if (own.empty() || own.size() == vs.size() ||
      !std::all_of(vs.begin(), vs.end(), [&](const VarId& v) {
        return std::find(lead.begin(), lead.end(), v) != lead.end();
      }))
    return print_oriented(a, order, {lead.begin(), lead.end()});
  return print_oriented(a, order, own);
}

void print_block(std::ostringstream& out, const DnfFormula& f, const VarOrder& order,
                 const std::vector<VarId>& lead) {
  auto conj = [&](const Conjunction& c, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i)
      s += (i ? sep : "") + print_led(c[i], order, lead);
    return c.empty() ? std::string("true") : s;
  };
  if (f.disjuncts.size() == 1) {
    out << "  " << conj(f.disjuncts.front(), "\n  ") << "\n";
    return;
  }
  if (f.disjuncts.empty()) {
    out << "  false\n";
    return;
  }
  std::string s;
  for (std::size_t i = 0; i < f.disjuncts.size(); ++i) {
    const auto& d = f.disjuncts[i];
    s += (i ? " | " : "") + std::string(d.size() > 1 ? "(" : "") + conj(d, " & ") +
         (d.size() > 1 ? ")" : "");
  }
  out << "  " << s << "\n";
}

std::string join(const std::vector<VarId>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + vs[i].name;
  return s;
}

VarSet to_set(const std::vector<VarId>& vs) { return {vs.begin(), vs.end()}; }

VarPartition partition_for(const VarSet& all, const VarSet& y, const VarOrder& order) {
  VarPartition p;
  for (const auto& v : order.sorted(all)) (y.contains(v) ? p.y_vars : p.x_vars).push_back(v);
  return p;
}

VarSet vars_of(const DnfFormula& a, const DnfFormula& b) {
  VarSet s = a.vars();
  s.merge(b.vars());
  return s;
}

}  // namespace

Contract parse_contract(std::string_view text, VarOrder& order) {
  Contract c;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_name = false, have_inputs = false, have_outputs = false;
  Block assumptions, guarantees;
  Block* open = nullptr;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = detail::strip_comment(line);
    if (detail::is_blank(body)) continue;
    if (detail::is_indented(body)) {
      if (!open) throw ParseError("indented line outside a formula block", line_no, 1);
      auto first = body.find_first_not_of(" \t");
      open->lines.push_back({body.substr(first), line_no, static_cast<int>(first) + 1});
      continue;
    }
    open = nullptr;
    if (!have_name) {
      auto words = detail::split_words(body);
      if (words.size() != 2 || words[0] != "contract")
        throw ParseError("expected 'contract NAME'", line_no, 1);
      c.name = words[1];
      have_name = true;
      continue;
    }
    auto header = detail::split_header(body);
    if (!header) throw ParseError("expected 'key:' header", line_no, 1);
    if (header->key == "inputs" || header->key == "outputs") {
      bool& seen = header->key == "inputs" ? have_inputs : have_outputs;
      if (seen) throw ParseError("duplicate '" + header->key + ":'", line_no, 1);
      seen = true;
      auto vars = to_vars(detail::split_words(header->rest));
      for (const auto& v : vars) order.declare(v);
      (header->key == "inputs" ? c.inputs : c.outputs) = std::move(vars);
    } else if (header->key == "assumptions" || header->key == "guarantees") {
      Block& b = header->key == "assumptions" ? assumptions : guarantees;
      if (b.seen) throw ParseError("duplicate '" + header->key + ":'", line_no, 1);
      b.seen = true;
      open = &b;
      if (!detail::is_blank(header->rest))
        b.lines.push_back({header->rest, line_no, header->rest_column});
    } else {
      throw ParseError("unknown header '" + header->key + "'", line_no, 1);
    }
  }
  if (!have_name) throw ParseError("missing 'contract NAME' line", line_no, 1);

  c.assumptions = read_block(assumptions, order);
  c.guarantees = read_block(guarantees, order);
  VarSet iface = c.interface();
  for (const auto* f : {&c.assumptions, &c.guarantees})
    for (const auto& v : f->vars())
      if (!iface.contains(v))
        throw ParseError("variable '" + v.name + "' is not an input or output of " + c.name,
                         line_no, 1);
  return c;
}

std::string print_contract(const Contract& c, const VarOrder& order) {
  std::ostringstream out;
  out << "contract " << c.name << "\n";
  out << "inputs: " << join(c.inputs) << "\n";
  out << "outputs: " << join(c.outputs) << "\n";
  out << "assumptions:\n";
  print_block(out, c.assumptions, order, c.inputs);
  out << "guarantees:\n";
  print_block(out, c.guarantees, order, c.outputs);
  return out.str();
}

// ------------------------------------------------------------- Operations

namespace {

// Consequent of every atom of `f` that `select` picks, in the context of the
// other atoms of its disjunct. Failed atoms are dropped with a warning.
DnfFormula relax_atoms(const DnfFormula& f, const VarSet& y, const VarOrder& order,
                       const EliminationOptions& options,
                       const std::function<bool(const Atom&)>& select,
                       std::vector<std::string>& warnings) {
  DnfFormula out;
  for (const auto& d : f.disjuncts) {
    Conjunction conj;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!select(d[i])) {
        conj.push_back(d[i]);
        continue;
      }
      Conjunction rest;
      for (std::size_t k = 0; k < d.size(); ++k)
        if (k != i) rest.push_back(d[k]);
      if (!d[i].lhs().mentions_any(y)) {
        conj.push_back(d[i]);
        continue;
      }
      VarPartition p = partition_for(d[i].lhs().vars(), y, order);
      for (const auto& a : rest)
        for (const auto& v : order.sorted(a.lhs().vars()))
          if (y.contains(v) && std::find(p.y_vars.begin(), p.y_vars.end(), v) == p.y_vars.end())
            p.y_vars.push_back(v);
      auto r = eliminate_atom(d[i], rest, p, Mode::consequent, options);
      if (auto* res = std::get_if<EliminationResult>(&r)) {
        conj.push_back(res->atom.canonical());
      } else {
        const auto& fail = std::get<EliminationFailure>(r);
        warnings.push_back("dropped '" + canonical_print(d[i], order) + "' (" + fail.stage +
                           ": " + fail.message + ")");
      }
    }
    std::erase_if(conj, [&](const Atom& a) { return a.lhs().mentions_any(y); });
    out.disjuncts.push_back(std::move(conj));
  }
  return simplify(out);
}

VarOrder order_of(const Contract& a, const Contract& b) {
  VarOrder o;
  for (const auto* c : {&a, &b}) {
    for (const auto& v : c->inputs) o.declare(v);
    for (const auto& v : c->outputs) o.declare(v);
  }
  return o;
}

}  // namespace

ContractOutcome compose_series(const Contract& c1, const Contract& c2,
                               std::optional<std::vector<VarId>> internal,
                               const EliminationOptions& options) {
  if (!internal) {
    internal.emplace();
    for (const auto& v : c1.outputs)
      if (std::find(c2.inputs.begin(), c2.inputs.end(), v) != c2.inputs.end())
        internal->push_back(v);
  }
  const VarSet y = to_set(*internal);
  const VarOrder order = order_of(c1, c2);

  ContractOutcome out;
  Contract& sys = out.contract;
  sys.name = c1.name + "_" + c2.name;
  for (const auto& v : c1.inputs)
    if (!y.contains(v)) sys.inputs.push_back(v);
  for (const auto& v : c2.inputs)
    if (!y.contains(v) && std::find(sys.inputs.begin(), sys.inputs.end(), v) == sys.inputs.end() &&
        std::find(c1.outputs.begin(), c1.outputs.end(), v) == c1.outputs.end())
      sys.inputs.push_back(v);
  for (const auto& v : c1.outputs)
    if (!y.contains(v)) sys.outputs.push_back(v);
  for (const auto& v : c2.outputs)
    if (!y.contains(v) && std::find(sys.outputs.begin(), sys.outputs.end(), v) == sys.outputs.end())
      sys.outputs.push_back(v);

  DnfFormula assumptions = DnfFormula::truth();
  for (const auto& [own, other] : {std::pair{&c1, &c2}, std::pair{&c2, &c1}}) {
    VarPartition p = partition_for(vars_of(own->assumptions, other->guarantees), y, order);
    EliminationReport r =
        eliminate_formula(own->assumptions, other->guarantees, p, Mode::antecedent, options);
    for (const auto& e : r.per_atom)
      if (e.status == AtomStatus::failed)
        throw ContractError("cannot eliminate assumption '" + canonical_print(e.source, order) +
                            "' of " + own->name + " (" + e.failure->stage + ": " +
                            e.failure->message + ")");
    assumptions = conjoin(assumptions, r.result);
  }
  sys.assumptions = simplify(assumptions);

  DnfFormula guarantees = conjoin(c1.guarantees, c2.guarantees);
  sys.guarantees = relax_atoms(
      guarantees, y, order, options, [&](const Atom& a) { return a.lhs().mentions_any(y); },
      out.warnings);
  return out;
}

ContractOutcome quotient(const Contract& system, const Contract& c1,
                         const std::vector<VarId>& c2_inputs,
                         const std::vector<VarId>& c2_outputs, std::string name,
                         const EliminationOptions& options) {
  const VarOrder order = order_of(system, c1);
  VarSet iface = to_set(c2_inputs);
  iface.insert(c2_outputs.begin(), c2_outputs.end());
  VarSet all = vars_of(system.assumptions, system.guarantees);
  all.merge(vars_of(c1.assumptions, c1.guarantees));
  all.insert(system.inputs.begin(), system.inputs.end());
  all.insert(system.outputs.begin(), system.outputs.end());
  all.insert(c1.inputs.begin(), c1.inputs.end());
  all.insert(c1.outputs.begin(), c1.outputs.end());
  VarSet y;
  for (const auto& v : all)
    if (!iface.contains(v)) y.insert(v);

  ContractOutcome out;
  Contract& c2 = out.contract;
  c2.name = std::move(name);
  c2.inputs = c2_inputs;
  c2.outputs = c2_outputs;

  // Assumptions: what the system's environment and c1 already ensure about
  // the inputs of c2.
  const VarSet inputs = to_set(c2_inputs);
  DnfFormula data = conjoin(system.assumptions, c1.guarantees);
  DnfFormula relaxed = relax_atoms(
      data, y, order, options, [&](const Atom& a) { return a.lhs().mentions_any(iface); },
      out.warnings);
  for (auto& d : relaxed.disjuncts)
    std::erase_if(d, [&](const Atom& a) {
      VarSet vs = a.lhs().vars();
      return vs.empty() || !std::includes(inputs.begin(), inputs.end(), vs.begin(), vs.end());
    });
  c2.assumptions = simplify(relaxed);

  VarPartition p = partition_for(vars_of(system.guarantees, c1.guarantees), y, order);
  EliminationReport r =
      eliminate_formula(system.guarantees, c1.guarantees, p, Mode::antecedent, options);
  for (const auto& w : r.warnings) out.warnings.push_back(w);
  if (r.failed) throw ContractError("no system guarantee could be rewritten over the interface");
  c2.guarantees = r.result;
  return out;
}

}  // namespace ctxelim
