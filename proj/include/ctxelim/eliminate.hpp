#pragma once

#include "ctxelim/formula.hpp"
#include "ctxelim/linalg.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ctxelim {

enum class Method { kaykobad, lp, automatic };
const char* to_string(Method m);
Method parse_method(std::string_view text);

// Farkas-style witness: lambda >= 0 with B_J^T lambda = q (refining) or
// -q (relaxing). The eliminated atom is phi without its y terms plus
// +/- lambda^T b_J.
struct Certificate {
  std::vector<std::size_t> row_indices;  // into the context conjunction, 0-based
  std::vector<VarId> y_vars;             // column order of B_J and q
  RatVector q;
  RatMatrix B_J;
  std::vector<LinExpr> b_J;
  RatVector lambda;
  PairType kind = PairType::refining;
};

struct EliminationResult {
  Atom atom;
  Certificate certificate;
  Method method = Method::kaykobad;
};

struct EliminationFailure {
  std::string stage;
  std::string message;
};

using EliminationOutcome = std::variant<EliminationResult, EliminationFailure>;

inline bool succeeded(const EliminationOutcome& o) {
  return std::holds_alternative<EliminationResult>(o);
}

// Irrelevant variables of `phi` among `y_vars`, in `y_vars` order.
std::vector<VarId> occurring_y(const Atom& phi, std::span<const VarId> y_vars);

// Greedy scan of the context rows, one per irrelevant variable, keeping the
// selected rows a Kaykobad pair (after the sign change by sign(q)) at every
// step. Fails with "cannot transform term" when some position has no
// acceptable row. Context rows mentioning irrelevant variables absent from
// phi are never selected.
//
// Throws std::invalid_argument when phi has no irrelevant variable, and
// std::logic_error if the selected rows fail the final pair check.
EliminationOutcome eliminate_kaykobad(const Atom& phi, const Conjunction& gamma,
                                      const VarPartition& partition, Mode mode);

// Solves the context LP at `sample` (unassigned variables read as 0) and
// builds the result from an invertible subset of the tight rows.
EliminationOutcome eliminate_lp(const Atom& phi, const Conjunction& gamma,
                                const VarPartition& partition, Mode mode,
                                const Assignment& sample);

// All of x and z at zero.
Assignment default_sample(const VarPartition& partition);

// Deterministic small-integer samples in [-4, 4] for x and z, derived from
// (seed, attempt).
Assignment retry_sample(const VarPartition& partition, std::uint64_t seed, unsigned attempt);

// eliminate_lp at `first`, then at up to `retries` seeded samples while the
// context LP is infeasible.
EliminationOutcome eliminate_lp_retrying(const Atom& phi, const Conjunction& gamma,
                                         const VarPartition& partition, Mode mode,
                                         const Assignment& first, std::uint64_t seed,
                                         unsigned retries = 8);

// Recomputes B_J^T lambda = +/-q and lambda >= 0.
bool certificate_valid(const Certificate& c);

// phi without y terms, plus lambda^T b_J (refining) or minus it (relaxing).
Atom atom_from_certificate(const Atom& phi, const Certificate& c);

}  // namespace ctxelim
