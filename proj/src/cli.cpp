#include "ctxelim/cli.hpp"

#include "ctxelim/bench.hpp"
#include "ctxelim/boolean.hpp"
#include "ctxelim/contracts.hpp"
#include "ctxelim/orchestrator.hpp"
#include "ctxelim/parser.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ctxelim {

using Json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<VarId> var_list(const std::string& text) {
  std::vector<VarId> out;
  std::string word;
  std::istringstream in(text);
  while (std::getline(in, word, ',')) {
    word.erase(0, word.find_first_not_of(" \t"));
    word.erase(word.find_last_not_of(" \t") + 1);
    if (!word.empty()) out.push_back(VarId{word});
  }
  return out;
}

template <class T>
std::vector<T> number_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::string word;
  std::istringstream in(text);
  while (std::getline(in, word, ',')) {
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(word, &used);
      if (used != word.size()) throw std::invalid_argument(word);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw UsageError(std::string("bad value '") + word + "' for " + flag);
    }
  }
  if (out.empty()) throw UsageError(std::string("empty list for ") + flag);
  return out;
}

Assignment parse_sample(const std::string& text) {
  Assignment a;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bad sample entry '" + item + "'");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    try {
      a[VarId{name}] = parse_rational(item.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad sample value in '" + item + "'");
    }
  }
  return a;
}

// ------------------------------------------------------------------ JSON

Json expr_json(const LinExpr& e, const VarOrder& order) {
  Json coeffs = Json::object();
  for (const auto& v : order.sorted(e.vars())) coeffs[v.name] = to_string(e.coeff(v));
  return Json{{"text", print_expr(e, order)}, {"coeffs", coeffs}, {"constant", to_string(e.constant())}};
}

Json atom_json(const Atom& a, const VarOrder& order) {
  Json j = expr_json(a.lhs(), order);
  j["text"] = canonical_print(a, order);
  return j;
}

Json strings(const RatVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_string(x));
  return j;
}

Json certificate_json(const Certificate& c, const VarOrder& order) {
  Json rows = Json::array(), ys = Json::array(), B = Json::array(), b = Json::array();
  for (auto r : c.row_indices) rows.push_back(r);
  for (const auto& y : c.y_vars) ys.push_back(y.name);
  for (std::size_t r = 0; r < c.B_J.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t k = 0; k < c.B_J.cols(); ++k) row.push_back(to_string(c.B_J(r, k)));
    B.push_back(row);
  }
  for (const auto& e : c.b_J) b.push_back(expr_json(e, order));
  return Json{{"rows", rows},  {"y_vars", ys},           {"q", strings(c.q)},
              {"B_J", B},      {"b_J", b},               {"lambda", strings(c.lambda)},
              {"kind", to_string(c.kind)}};
}

Json report_json(const Problem& p, const EliminationReport& r, Method method) {
  Json j;
  j["mode"] = to_string(p.mode);
  j["method"] = to_string(method);
  Json ys = Json::array();
  for (const auto& y : p.partition.y_vars) ys.push_back(y.name);
  j["eliminate"] = ys;
  j["status"] = r.failed ? "failed" : "ok";
  j["result"] = r.failed ? Json(nullptr) : Json(print_dnf(r.result, p.order));
  Json gamma = Json::array();
  for (const auto& d : p.gamma.disjuncts) {
    Json conj = Json::array();
    for (const auto& a : d) conj.push_back(atom_json(a, p.order));
    gamma.push_back(conj);
  }
  j["gamma"] = gamma;
  Json atoms = Json::array();
  for (const auto& e : r.per_atom) {
    Json a;
    a["disjunct"] = e.disjunct;
    a["atom"] = e.atom;
    a["context"] = e.context;
    a["source"] = atom_json(e.source, p.order);
    a["status"] = to_string(e.status);
    if (e.result) {
      a["method"] = to_string(e.result->method);
      a["result"] = atom_json(e.result->atom.canonical(), p.order);
      a["certificate"] = certificate_json(e.result->certificate, p.order);
    }
    if (e.failure) a["failure"] = Json{{"stage", e.failure->stage}, {"message", e.failure->message}};
    atoms.push_back(a);
  }
  j["atoms"] = atoms;
  j["warnings"] = r.warnings;
  return j;
}

// ------------------------------------------------------------- Commands

struct EliminateFlags {
  std::string input;
  std::string method = "auto";
  std::string sample;
  std::uint64_t seed = 1;
  bool json = false;
  bool boolean = false;
  bool in_context = false;
};

int cmd_eliminate_boolean(const EliminateFlags& f, std::ostream& out) {
  BoolProblem p = parse_bool_problem(read_file(f.input));
  std::string result;
  std::optional<std::string> bound_g;
  if (p.shell) {
    MonotoneResult m = eliminate_monotone(*p.shell, *p.bound, *p.g, p.gamma, p.y, p.mode, p.order);
    result = print_bool(m.minimized);
    bound_g = print_bool(m.bound_g);
  } else if (p.mode == Mode::antecedent) {
    result = print_bool(weakest_antecedent(p.phi, p.gamma, p.y, p.order, f.in_context));
  } else {
    result = print_bool(strongest_consequent(p.phi, p.gamma, p.y, p.order, f.in_context));
  }
  if (f.json) {
    Json j;
    j["mode"] = to_string(p.mode);
    j["status"] = "ok";
    j["result"] = result;
    if (bound_g) j[p.mode == Mode::antecedent ? "g_plus" : "g_minus"] = *bound_g;
    out << j.dump(2) << "\n";
  } else {
    out << result << "\n";
  }
  return kExitOk;
}

int cmd_eliminate(const EliminateFlags& f, std::ostream& out, std::ostream& err) {
  if (f.boolean) return cmd_eliminate_boolean(f, out);
  Method method = parse_method(f.method);
  Problem p = parse_problem(read_file(f.input));
  EliminationOptions options;
  options.method = method;
  options.seed = f.seed;
  if (!f.sample.empty()) options.sample = parse_sample(f.sample);

  EliminationReport r = eliminate_formula(p.phi, p.gamma, p.partition, p.mode, options);
  for (const auto& e : r.per_atom) {
    if (e.status != AtomStatus::failed) continue;
    std::string where = "disjunct " + std::to_string(e.disjunct + 1) + ", atom " +
                        std::to_string(e.atom + 1) + ", context " + std::to_string(e.context + 1);
    err << (r.failed ? "error: " : "warning: ") << "cannot eliminate '"
        << canonical_print(e.source, p.order) << "' (" << where << ") at " << e.failure->stage
        << ": " << e.failure->message << "\n";
  }
  if (f.json) out << report_json(p, r, method).dump(2) << "\n";
  else if (!r.failed) out << print_dnf(r.result, p.order) << "\n";
  return r.failed ? kExitFailed : kExitOk;
}

int cmd_compose(const std::string& first, const std::string& second,
                const std::optional<std::string>& internal, const std::string& method,
                std::ostream& out, std::ostream& err) {
  VarOrder order;
  Contract c1 = parse_contract(read_file(first), order);
  Contract c2 = parse_contract(read_file(second), order);
  EliminationOptions options;
  options.method = parse_method(method);
  std::optional<std::vector<VarId>> y;
  if (internal) y = var_list(*internal);
  ContractOutcome r = compose_series(c1, c2, y, options);
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  out << print_contract(r.contract, order);
  return kExitOk;
}

int cmd_quotient(const std::string& system, const std::string& first, const std::string& inputs,
                 const std::string& outputs, const std::string& name, const std::string& method,
                 std::ostream& out, std::ostream& err) {
  VarOrder order;
  Contract sys = parse_contract(read_file(system), order);
  Contract c1 = parse_contract(read_file(first), order);
  EliminationOptions options;
  options.method = parse_method(method);
  ContractOutcome r = quotient(sys, c1, var_list(inputs), var_list(outputs), name, options);
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  out << print_contract(r.contract, order);
  return kExitOk;
}

struct BenchFlags {
  std::string N = "10", vars = "10", irrelevant = "2";
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  std::string method = "kaykobad", mode = "antecedent";
  unsigned reps = 5;
};

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  BenchConfig base;
  base.trials = f.trials;
  base.seed = f.seed;
  base.method = parse_method(f.method);
  base.mode = parse_mode(f.mode);
  base.reps = f.reps;
  auto Ns = number_list<std::size_t>(f.N, "--N");
  auto vars = number_list<std::size_t>(f.vars, "--vars");
  auto irr = number_list<std::size_t>(f.irrelevant, "--irrelevant");
  for (auto n : Ns)
    for (auto v : vars)
      for (auto k : irr) {
        BenchConfig c = base;
        c.n_constraints = n;
        c.total_vars = v;
        c.n_irrelevant = k;
        try {
          validate(c);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }

  out << kBenchCsvHeader << "\n";
  for (auto n : Ns)
    for (auto v : vars)
      for (auto k : irr) {
        BenchConfig c = base;
        c.n_constraints = n;
        c.total_vars = v;
        c.n_irrelevant = k;
        auto rows = run_bench(c);
        for (const auto& row : rows) out << csv_line(row) << "\n";
        BenchSummary s = summarize(rows);
        char mean[32];
        std::snprintf(mean, sizeof mean, "%.3f", s.mean_micros);
        err << to_string(c.method) << " N=" << n << " vars=" << v << " irrelevant=" << k << ": "
            << rows.size() << " trials, " << s.successes << " ok, " << s.failures
            << " fail, mean " << mean << " us\n";
      }
  return kExitOk;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  VerifyResult r = verify_certificates(read_file(path));
  if (!r.ok) {
    err << "error: " << r.error << "\n";
    return kExitFailed;
  }
  out << "verified " << r.checked << " certificate" << (r.checked == 1 ? "" : "s") << "\n";
  return kExitOk;
}

// -------------------------------------------------------------- Verify

Rational rat(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected a fraction string");
  return parse_rational(j.get<std::string>());
}

LinExpr expr_from(const Json& j) {
  LinExpr e(rat(j.at("constant")));
  for (const auto& [name, c] : j.at("coeffs").items()) e.add_term(VarId{name}, rat(c));
  return e;
}

}  // namespace

VerifyResult verify_certificates(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  VerifyResult out;
  try {
    const Json& atoms = doc.at("atoms");
    for (std::size_t n = 0; n < atoms.size(); ++n) {
      const Json& a = atoms[n];
      if (!a.contains("certificate")) continue;
      const Json& cj = a.at("certificate");
      auto reject = [&](const std::string& why) {
        out.ok = false;
        out.error = "certificate " + std::to_string(n) + ": " + why;
      };

      Certificate c;
      for (const auto& r : cj.at("rows")) c.row_indices.push_back(r.get<std::size_t>());
      for (const auto& y : cj.at("y_vars")) c.y_vars.push_back(VarId{y.get<std::string>()});
      for (const auto& q : cj.at("q")) c.q.push_back(rat(q));
      for (const auto& l : cj.at("lambda")) c.lambda.push_back(rat(l));
      for (const auto& b : cj.at("b_J")) c.b_J.push_back(expr_from(b));
      const Json& B = cj.at("B_J");
      c.B_J = RatMatrix(B.size(), c.y_vars.size());
      for (std::size_t r = 0; r < B.size(); ++r) {
        if (B[r].size() != c.y_vars.size()) throw std::invalid_argument("B_J row width");
        for (std::size_t k = 0; k < B[r].size(); ++k) c.B_J(r, k) = rat(B[r][k]);
      }
      std::string kind = cj.at("kind").get<std::string>();
      if (kind == "refining") c.kind = PairType::refining;
      else if (kind == "relaxing") c.kind = PairType::relaxing;
      else throw std::invalid_argument("unknown kind '" + kind + "'");

      if (c.b_J.size() != c.B_J.rows() || c.row_indices.size() != c.B_J.rows()) {
        reject("inconsistent sizes");
        return out;
      }
      if (!certificate_valid(c)) {
        reject("lambda is negative or B_J^T lambda != " + std::string(kind == "refining" ? "q" : "-q"));
        return out;
      }

      if (a.contains("source")) {
        Atom source(expr_from(a.at("source")));
        for (std::size_t k = 0; k < c.y_vars.size(); ++k)
          if (source.lhs().coeff(c.y_vars[k]) != c.q[k]) {
            reject("q does not match the source atom");
            return out;
          }
        if (a.contains("result")) {
          Atom claimed(expr_from(a.at("result")));
          if (atom_from_certificate(source, c).canonical() != claimed.canonical()) {
            reject("result does not follow from the certificate");
            return out;
          }
        }
      }
      if (doc.contains("gamma") && a.contains("context")) {
        const Json& conj = doc.at("gamma").at(a.at("context").get<std::size_t>());
        VarSet ys(c.y_vars.begin(), c.y_vars.end());
        for (std::size_t r = 0; r < c.row_indices.size(); ++r) {
          if (c.row_indices[r] >= conj.size()) {
            reject("row " + std::to_string(c.row_indices[r]) + " is not in the context");
            return out;
          }
          LinExpr row = expr_from(conj.at(c.row_indices[r]));
          bool match = -row.without(ys) == c.b_J[r];
          for (std::size_t k = 0; k < c.y_vars.size(); ++k)
            match = match && row.coeff(c.y_vars[k]) == c.B_J(r, k);
          if (!match) {
            reject("B_J or b_J does not match context row " + std::to_string(c.row_indices[r]));
            return out;
          }
        }
      }
      ++out.checked;
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate document: ") + e.what());
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Context-aware variable elimination for linear and Boolean formulas", "ctxelim"};
  app.require_subcommand(1);

  EliminateFlags ef;
  auto* elim = app.add_subcommand("eliminate", "Eliminate variables from a problem file");
  elim->add_option("--input", ef.input, "Problem file")->required();
  elim->add_option("--method", ef.method, "kaykobad, lp or auto")->capture_default_str();
  elim->add_option("--sample", ef.sample, "LP sample point, e.g. \"x=0,z=1/2\"");
  elim->add_option("--seed", ef.seed, "Seed for LP retry samples")->capture_default_str();
  elim->add_flag("--json", ef.json, "Emit the report with certificates as JSON");
  elim->add_flag("--boolean", ef.boolean, "Read a propositional problem file");
  elim->add_flag("--in-context", ef.in_context, "Minimize using context don't-cares (Boolean)");

  std::string first, second;
  std::string method = "auto";
  std::string internal_text;
  auto* comp = app.add_subcommand("compose", "Series composition of two contracts");
  comp->add_option("first", first, "Upstream contract file")->required();
  comp->add_option("second", second, "Downstream contract file")->required();
  auto* internal_opt =
      comp->add_option("--internal", internal_text, "Internal variables (comma separated)");
  comp->add_option("--method", method, "kaykobad, lp or auto")->capture_default_str();

  std::string system, inputs, outputs, name = "quotient";
  auto* quo = app.add_subcommand("quotient", "Contract of the missing downstream component");
  quo->add_option("system", system, "System contract file")->required();
  quo->add_option("first", first, "Known upstream contract file")->required();
  quo->add_option("--inputs", inputs, "Inputs of the missing component")->required();
  quo->add_option("--outputs", outputs, "Outputs of the missing component")->required();
  quo->add_option("--name", name, "Name of the produced contract")->capture_default_str();
  quo->add_option("--method", method, "kaykobad, lp or auto")->capture_default_str();

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "Timing harness on random dense instances (CSV)");
  bench->add_option("--N", bf.N, "Context sizes (comma separated)")->capture_default_str();
  bench->add_option("--vars", bf.vars, "Total variable counts")->capture_default_str();
  bench->add_option("--irrelevant", bf.irrelevant, "Eliminated variable counts")
      ->capture_default_str();
  bench->add_option("--trials", bf.trials, "Trials per cell")->capture_default_str();
  bench->add_option("--seed", bf.seed, "Seed")->capture_default_str();
  bench->add_option("--method", bf.method, "kaykobad, lp or auto")->capture_default_str();
  bench->add_option("--mode", bf.mode, "antecedent or consequent")->capture_default_str();
  bench->add_option("--reps", bf.reps, "Timed runs per trial")->capture_default_str();

  std::string verify_path;
  auto* ver = app.add_subcommand("verify", "Re-check the certificates of an eliminate --json file");
  ver->add_option("file", verify_path, "JSON document")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*elim) return cmd_eliminate(ef, out, err);
    if (*comp) {
      std::optional<std::string> internal;
      if (internal_opt->count() > 0) internal = internal_text;
      return cmd_compose(first, second, internal, method, out, err);
    }
    if (*quo) return cmd_quotient(system, first, inputs, outputs, name, method, out, err);
    if (*bench) return cmd_bench(bf, out, err);
    if (*ver) return cmd_verify(verify_path, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ctxelim
