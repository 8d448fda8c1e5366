#include "ctxelim/orchestrator.hpp"

#include <algorithm>

namespace ctxelim {

const char* to_string(AtomStatus s) {
  switch (s) {
    case AtomStatus::eliminated: return "eliminated";
    case AtomStatus::passthrough: return "passthrough";
    case AtomStatus::failed: return "failed";
  }
  return "?";
}

namespace {

EliminationOutcome run_method(const Atom& phi, const Conjunction& gamma,
                              const VarPartition& partition, Mode mode,
                              const EliminationOptions& options) {
  Assignment sample = default_sample(partition);
  for (const auto& [v, value] : options.sample) sample[v] = value;
  auto lp = [&] {
    return eliminate_lp_retrying(phi, gamma, partition, mode, sample, options.seed,
                                 options.retries);
  };
  switch (options.method) {
    case Method::kaykobad: return eliminate_kaykobad(phi, gamma, partition, mode);
    case Method::lp: return lp();
    case Method::automatic: {
      auto first = eliminate_kaykobad(phi, gamma, partition, mode);
      if (succeeded(first)) return first;
      return lp();
    }
  }
  return EliminationFailure{"method", "unknown method"};
}

bool same_conjunction(const Conjunction& a, const Conjunction& b) {
  if (a.size() != b.size()) return false;
  auto in = [](const Conjunction& c, const Atom& x) {
    return std::find(c.begin(), c.end(), x) != c.end();
  };
  return std::all_of(a.begin(), a.end(), [&](const Atom& x) { return in(b, x); }) &&
         std::all_of(b.begin(), b.end(), [&](const Atom& x) { return in(a, x); });
}

// Variable part scaled to primitive integers, and the bound it is compared
// against: coeffs . v <= bound.
struct Direction {
  std::map<VarId, Rational> coeffs;
  Rational bound;
};

Direction direction_of(const Atom& canonical) {
  Integer g = 0;
  for (const auto& [v, c] : canonical.lhs().coeffs()) g = gcd(g, Integer(c.get_num()));
  Direction d;
  for (const auto& [v, c] : canonical.lhs().coeffs()) d.coeffs[v] = c / Rational(g);
  d.bound = -canonical.lhs().constant() / Rational(g);
  return d;
}

}  // namespace

EliminationOutcome eliminate_atom(const Atom& phi, const Conjunction& gamma,
                                  const VarPartition& partition, Mode mode,
                                  const EliminationOptions& options) {
  std::vector<VarId> ys = occurring_y(phi, partition.y_vars);
  VarSet y_atom(ys.begin(), ys.end());

  std::vector<std::size_t> kept;
  Conjunction context;
  for (std::size_t r = 0; r < gamma.size(); ++r) {
    if (options.split_context && !gamma[r].lhs().mentions_any(y_atom)) continue;
    kept.push_back(r);
    context.push_back(gamma[r]);
  }

  EliminationOutcome out = run_method(phi, context, partition, mode, options);
  if (auto* res = std::get_if<EliminationResult>(&out))
    for (auto& r : res->certificate.row_indices) r = kept[r];
  return out;
}

EliminationReport eliminate_formula(const DnfFormula& phi, const DnfFormula& gamma,
                                    const VarPartition& partition, Mode mode,
                                    const EliminationOptions& options) {
  EliminationReport report;
  const VarSet y = partition.y_set();
  std::size_t attempted = 0, failures = 0;

  // results[j][k][i]: the replacement for phi_i^j under gamma^k, if any.
  const std::size_t K = gamma.disjuncts.size();
  std::vector<std::vector<std::vector<std::optional<Atom>>>> results(phi.disjuncts.size());

  for (std::size_t j = 0; j < phi.disjuncts.size(); ++j) {
    const Conjunction& conj = phi.disjuncts[j];
    results[j].assign(K, std::vector<std::optional<Atom>>(conj.size()));
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t i = 0; i < conj.size(); ++i) {
        AtomReport entry;
        entry.disjunct = j;
        entry.atom = i;
        entry.context = k;
        entry.source = conj[i];
        if (!conj[i].lhs().mentions_any(y)) {
          entry.status = AtomStatus::passthrough;
          results[j][k][i] = conj[i];
        } else {
          ++attempted;
          auto out = eliminate_atom(conj[i], gamma.disjuncts[k], partition, mode, options);
          if (auto* res = std::get_if<EliminationResult>(&out)) {
            entry.status = AtomStatus::eliminated;
            results[j][k][i] = res->atom.canonical();
            entry.result = std::move(*res);
          } else {
            ++failures;
            entry.status = AtomStatus::failed;
            entry.failure = std::get<EliminationFailure>(std::move(out));
          }
        }
        report.per_atom.push_back(std::move(entry));
      }
    }
  }

  for (const auto& e : report.per_atom) {
    if (e.status != AtomStatus::failed) continue;
    std::string where = "disjunct " + std::to_string(e.disjunct + 1) + ", atom " +
                        std::to_string(e.atom + 1) + ", context " +
                        std::to_string(e.context + 1);
    report.warnings.push_back(
        where + (mode == Mode::antecedent ? ": disjunct dropped (" : ": atom dropped (") +
        e.failure->stage + ": " + e.failure->message + ")");
  }

  DnfFormula result;
  if (mode == Mode::antecedent) {
    for (std::size_t j = 0; j < phi.disjuncts.size(); ++j) {
      Conjunction conj;
      bool complete = true;
      for (std::size_t i = 0; i < phi.disjuncts[j].size() && complete; ++i)
        for (std::size_t k = 0; k < K && complete; ++k) {
          if (!results[j][k][i]) complete = false;
          else if (std::find(conj.begin(), conj.end(), *results[j][k][i]) == conj.end())
            conj.push_back(*results[j][k][i]);
        }
      if (complete) result.disjuncts.push_back(std::move(conj));
    }
    report.failed = !phi.disjuncts.empty() && result.disjuncts.empty() && failures > 0;
  } else {
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t j = 0; j < phi.disjuncts.size(); ++j) {
        Conjunction conj;
        for (const auto& a : results[j][k])
          if (a) conj.push_back(*a);
        result.disjuncts.push_back(std::move(conj));
      }
  }
  report.result = simplify(result);
  if (mode == Mode::consequent) {
    bool trivial = std::any_of(report.result.disjuncts.begin(), report.result.disjuncts.end(),
                               [](const Conjunction& c) { return c.empty(); });
    report.failed = attempted > 0 && failures == attempted && trivial;
  }
  return report;
}

Conjunction simplify(const Conjunction& c) {
  Conjunction canon;
  std::vector<Direction> dirs;
  for (const auto& a : c) {
    Atom x = a.canonical();
    if (x.trivially_true()) continue;
    if (x.trivially_false()) return {x};
    Direction d = direction_of(x);
    auto it = std::find_if(dirs.begin(), dirs.end(),
                           [&](const Direction& e) { return e.coeffs == d.coeffs; });
    if (it == dirs.end()) {
      dirs.push_back(std::move(d));
      canon.push_back(std::move(x));
    } else if (d.bound < it->bound) {
      canon[it - dirs.begin()] = std::move(x);
      *it = std::move(d);
    }
  }
  return canon;
}

DnfFormula simplify(const DnfFormula& f) {
  DnfFormula out;
  for (const auto& d : f.disjuncts) {
    Conjunction c = simplify(d);
    if (c.size() == 1 && c.front().trivially_false()) continue;
    bool dup = std::any_of(out.disjuncts.begin(), out.disjuncts.end(),
                           [&](const Conjunction& e) { return same_conjunction(e, c); });
    if (!dup) out.disjuncts.push_back(std::move(c));
  }
  return out;
}

}  // namespace ctxelim
