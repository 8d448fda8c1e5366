#include "ctxelim/eliminate.hpp"

#include "ctxelim/simplex.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace ctxelim {

const char* to_string(Method m) {
  switch (m) {
    case Method::kaykobad: return "kaykobad";
    case Method::lp: return "lp";
    case Method::automatic: return "auto";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "kaykobad") return Method::kaykobad;
  if (text == "lp") return Method::lp;
  if (text == "auto") return Method::automatic;
  throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

std::vector<VarId> occurring_y(const Atom& phi, std::span<const VarId> y_vars) {
  std::vector<VarId> out;
  for (const auto& y : y_vars)
    if (phi.lhs().mentions(y) && std::find(out.begin(), out.end(), y) == out.end())
      out.push_back(y);
  return out;
}

namespace {

PairType expected_kind(Mode mode) {
  return mode == Mode::antecedent ? PairType::refining : PairType::relaxing;
}

// Rows usable as context for eliminating `ys`: no other irrelevant variable
// may appear, since it would survive into b_J.
std::vector<std::size_t> usable_rows(const Conjunction& gamma, const VarPartition& partition,
                                     const std::vector<VarId>& ys) {
  VarSet foreign = partition.y_set();
  for (const auto& y : ys) foreign.erase(y);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (!gamma[i].lhs().mentions_any(foreign)) out.push_back(i);
  return out;
}

RatVector coefficients(const Atom& a, const std::vector<VarId>& ys) {
  RatVector q;
  q.reserve(ys.size());
  for (const auto& y : ys) q.push_back(a.lhs().coeff(y));
  return q;
}

std::vector<VarId> checked_y(const Atom& phi, const VarPartition& partition) {
  auto ys = occurring_y(phi, partition.y_vars);
  if (ys.empty()) throw std::invalid_argument("phi has no irrelevant variable to eliminate");
  return ys;
}

Certificate make_certificate(const Conjunction& gamma, const std::vector<std::size_t>& rows,
                             const std::vector<VarId>& ys, RatVector q, PairKind pair) {
  Conjunction picked;
  for (auto r : rows) picked.push_back(gamma[r]);
  ContextMatrix cm = to_context_matrix(picked, ys);
  Certificate c;
  c.row_indices = rows;
  c.y_vars = ys;
  c.q = std::move(q);
  c.B_J = std::move(cm.B);
  c.b_J = std::move(cm.b_sym);
  c.lambda = std::move(pair.multipliers);
  c.kind = pair.kind;
  return c;
}

}  // namespace

Atom atom_from_certificate(const Atom& phi, const Certificate& c) {
  VarSet ys(c.y_vars.begin(), c.y_vars.end());
  LinExpr out = phi.lhs().without(ys);
  Rational s = c.kind == PairType::refining ? 1 : -1;
  for (std::size_t k = 0; k < c.b_J.size(); ++k) out += c.b_J[k] * (s * c.lambda[k]);
  return Atom(std::move(out));
}

bool certificate_valid(const Certificate& c) {
  const std::size_t n = c.q.size();
  if (c.B_J.rows() != n || c.B_J.cols() != n || c.lambda.size() != n) return false;
  for (const auto& l : c.lambda)
    if (l < 0) return false;
  RatVector lhs = c.B_J.transpose() * c.lambda;
  for (std::size_t j = 0; j < n; ++j) {
    Rational want = c.kind == PairType::refining ? c.q[j] : Rational(-c.q[j]);
    if (lhs[j] != want) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Kaykobad

EliminationOutcome eliminate_kaykobad(const Atom& phi, const Conjunction& gamma,
                                      const VarPartition& partition, Mode mode) {
  const std::vector<VarId> ys = checked_y(phi, partition);
  const std::size_t n = ys.size();
  const RatVector q = coefficients(phi, ys);
  const int t = mode == Mode::antecedent ? 1 : -1;

  RatVector abs_q(n);
  for (std::size_t j = 0; j < n; ++j) abs_q[j] = abs(q[j]);

  // Coefficients of every usable, y-bearing row.
  struct Candidate {
    std::size_t row;
    RatVector coeff;
  };
  std::vector<Candidate> candidates;
  for (auto r : usable_rows(gamma, partition, ys)) {
    RatVector c = coefficients(gamma[r], ys);
    if (std::all_of(c.begin(), c.end(), [](const Rational& v) { return v == 0; })) continue;
    candidates.push_back({r, std::move(c)});
  }

  RatVector partial(n);
  std::vector<std::size_t> chosen;
  std::vector<bool> used(candidates.size(), false);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t k = 0; k < candidates.size() && !found; ++k) {
      if (used[k]) continue;
      const RatVector& c = candidates[k].coeff;
      // Nonnegativity of the sign-adjusted transposed matrix.
      bool sign_ok = true;
      for (std::size_t j = 0; j < n && sign_ok; ++j)
        if (c[j] != 0 && sgn(c[j]) != sgn(q[j]) * t) sign_ok = false;
      if (!sign_ok || c[i] == 0) continue;
      // Dominance of |q| over the accumulated off-diagonal contributions.
      RatVector residual(n);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) residual[j] = abs(c[j]) * abs_q[i] / abs(c[i]);
      bool dominant = true;
      for (std::size_t j = 0; j < n && dominant; ++j)
        if (!(abs_q[j] > partial[j] + residual[j])) dominant = false;
      if (!dominant) continue;
      for (std::size_t j = 0; j < n; ++j) partial[j] += residual[j];
      used[k] = true;
      chosen.push_back(candidates[k].row);
      found = true;
    }
    if (!found)
      return EliminationFailure{"kaykobad-selection",
                                "cannot transform term: no context row fits position " +
                                    std::to_string(i + 1) + " (" + ys[i].name + ")"};
  }

  Conjunction picked;
  for (auto r : chosen) picked.push_back(gamma[r]);
  RatMatrix B_J = to_context_matrix(picked, ys).B;
  auto pair = classify_pair(B_J, q);
  if (!pair || pair->kind != expected_kind(mode))
    throw std::logic_error("Kaykobad selection produced rows that fail the pair check");
  Certificate cert = make_certificate(gamma, chosen, ys, q, std::move(*pair));
  Atom result = atom_from_certificate(phi, cert);
  return EliminationResult{std::move(result), std::move(cert), Method::kaykobad};
}

// ---------------------------------------------------------------------- LP

namespace {

constexpr std::size_t kSubsetCap = 50;

template <class F>
bool any_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

EliminationOutcome eliminate_lp(const Atom& phi, const Conjunction& gamma,
                                const VarPartition& partition, Mode mode,
                                const Assignment& sample) {
  const std::vector<VarId> ys = checked_y(phi, partition);
  const std::size_t n = ys.size();
  const RatVector q = coefficients(phi, ys);

  std::vector<std::size_t> rows = usable_rows(gamma, partition, ys);
  Conjunction context;
  for (auto r : rows) context.push_back(gamma[r]);
  ContextMatrix cm = to_context_matrix(context, ys);

  RatVector b_e;
  for (const auto& e : cm.b_sym) {
    LinExpr rest = e.substitute(sample);
    b_e.push_back(rest.constant());  // unassigned variables read as 0
  }

  LpSense sense = mode == Mode::antecedent ? LpSense::maximize : LpSense::minimize;
  LpOutcome lp = solve_lp(q, cm.B, b_e, sense);
  if (lp.status == LpStatus::infeasible)
    return EliminationFailure{"lp-solve", "LP infeasible at sample"};
  if (lp.status == LpStatus::unbounded)
    return EliminationFailure{"lp-solve", "LP unbounded: the context does not bound the term"};

  std::set<std::vector<std::size_t>> tried;
  std::optional<std::pair<std::vector<std::size_t>, PairKind>> accepted;
  auto attempt = [&](std::vector<std::size_t> local) {
    std::sort(local.begin(), local.end());
    if (!tried.insert(local).second) return false;
    auto pair = classify_pair(cm.B.select_rows(local), q);
    if (!pair || pair->kind != expected_kind(mode)) return false;
    accepted.emplace(std::move(local), std::move(*pair));
    return true;
  };

  // Greedy rank build-up over the tight rows.
  std::vector<std::size_t> greedy;
  RatMatrix span(0, n);
  for (auto r : lp.tight) {
    if (greedy.size() == n) break;
    RatMatrix grown = span;
    grown.append_row(cm.B.row(r));
    if (rank(grown) == grown.rows()) {
      span = std::move(grown);
      greedy.push_back(r);
    }
  }
  bool ok = greedy.size() == n && attempt(greedy);
  if (!ok && lp.basis.size() == n) ok = attempt(lp.basis);
  if (!ok) {
    std::size_t invertible = 0;
    const auto& tight = lp.tight;
    ok = any_subset(tight.size(), n, [&](const std::vector<std::size_t>& idx) {
      if (invertible >= kSubsetCap) return true;
      std::vector<std::size_t> local;
      for (auto k : idx) local.push_back(tight[k]);
      if (rank(cm.B.select_rows(local)) != n) return false;
      ++invertible;
      return attempt(local);
    });
    ok = ok && accepted.has_value();
  }
  if (!accepted)
    return EliminationFailure{"tight-set",
                              "degenerate tight set exhausted: no invertible subset of " +
                                  std::to_string(lp.tight.size()) +
                                  " tight rows passes the pair check"};

  std::vector<std::size_t> source_rows;
  for (auto r : accepted->first) source_rows.push_back(rows[r]);
  Certificate cert = make_certificate(gamma, source_rows, ys, q, std::move(accepted->second));
  Atom result = atom_from_certificate(phi, cert);
  return EliminationResult{std::move(result), std::move(cert), Method::lp};
}

Assignment default_sample(const VarPartition& partition) {
  Assignment a;
  for (const auto& v : partition.x_vars) a[v] = 0;
  for (const auto& v : partition.z_vars) a[v] = 0;
  return a;
}

Assignment retry_sample(const VarPartition& partition, std::uint64_t seed, unsigned attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt)};
  std::mt19937_64 rng(seq);
  Assignment a;
  auto draw = [&] { return static_cast<long>(rng() % 9) - 4; };
  for (const auto& v : partition.x_vars) a[v] = draw();
  for (const auto& v : partition.z_vars) a[v] = draw();
  return a;
}

EliminationOutcome eliminate_lp_retrying(const Atom& phi, const Conjunction& gamma,
                                         const VarPartition& partition, Mode mode,
                                         const Assignment& first, std::uint64_t seed,
                                         unsigned retries) {
  EliminationOutcome out = eliminate_lp(phi, gamma, partition, mode, first);
  for (unsigned k = 0; k < retries; ++k) {
    auto* failure = std::get_if<EliminationFailure>(&out);
    if (!failure || failure->message != "LP infeasible at sample") break;
    out = eliminate_lp(phi, gamma, partition, mode, retry_sample(partition, seed, k));
  }
  return out;
}

}  // namespace ctxelim
