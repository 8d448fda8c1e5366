#pragma once

#include "ctxelim/eliminate.hpp"
#include "ctxelim/formula.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ctxelim {

struct EliminationOptions {
  Method method = Method::automatic;
  Assignment sample;  // LP sample point; missing x/z read as 0
  std::uint64_t seed = 1;
  unsigned retries = 8;
  bool split_context = true;  // pass only the y-bearing context rows
};

enum class AtomStatus { eliminated, passthrough, failed };
const char* to_string(AtomStatus s);

struct AtomReport {
  std::size_t disjunct = 0;  // j, into phi
  std::size_t atom = 0;      // i, into disjunct j
  std::size_t context = 0;   // k, into gamma
  Atom source;
  AtomStatus status = AtomStatus::passthrough;
  std::optional<EliminationResult> result;  // row indices refer to gamma disjunct k
  std::optional<EliminationFailure> failure;
};

struct EliminationReport {
  DnfFormula result;
  std::vector<AtomReport> per_atom;
  std::vector<std::string> warnings;
  // Nothing usable came out: every phi disjunct was abandoned (antecedent) or
  // every attempted atom failed and the result says nothing (consequent).
  bool failed = false;
};

// Clause-wise elimination over DNF phi and disjunctive gamma.
//
// Antecedent: OR_j AND_{i,k} ante(phi_i^j, gamma^k); a disjunct with any
// failed atom is dropped. Consequent: OR_{k,j} AND_i cons(phi_i^j, gamma^k);
// failed atoms are dropped from their conjunction. Atoms free of y pass
// through. The result is simplified.
EliminationReport eliminate_formula(const DnfFormula& phi, const DnfFormula& gamma,
                                    const VarPartition& partition, Mode mode,
                                    const EliminationOptions& options = {});

// One atom against one context conjunction, with context splitting and
// method fallback. Row indices in the result refer to `gamma`.
EliminationOutcome eliminate_atom(const Atom& phi, const Conjunction& gamma,
                                  const VarPartition& partition, Mode mode,
                                  const EliminationOptions& options = {});

// Syntactic cleanup: drops trivially true atoms, atoms dominated by a
// parallel atom of the same conjunction, conjunctions containing a trivially
// false atom, and duplicate disjuncts. Atoms come out canonical.
DnfFormula simplify(const DnfFormula& f);
Conjunction simplify(const Conjunction& c);

}  // namespace ctxelim
