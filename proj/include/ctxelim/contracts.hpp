#pragma once

#include "ctxelim/formula.hpp"
#include "ctxelim/orchestrator.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctxelim {

struct Contract {
  std::string name;
  std::vector<VarId> inputs;
  std::vector<VarId> outputs;
  DnfFormula assumptions = DnfFormula::truth();
  DnfFormula guarantees = DnfFormula::truth();

  VarSet interface() const;
};

// Elimination on an assumption failed; dropping it would be unsound.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ContractOutcome {
  Contract contract;
  std::vector<std::string> warnings;
};

// contract NAME
// inputs: i
// outputs: o
// assumptions:
//   i <= 2
// guarantees:
//   o <= 2i + 1
//
// Formula lines of a block are conjoined. Variables are declared into
// `order` as they are met.
Contract parse_contract(std::string_view text, VarOrder& order);

// Same layout; assumptions lead with inputs, guarantees with outputs.
std::string print_contract(const Contract& c, const VarOrder& order);

// c1 feeding c2. Assumption atoms over `internal` become antecedents in the
// context of the other component's guarantees; guarantee atoms over
// `internal` become consequents in the context of the rest of their
// disjunct. Without `internal`, c1.outputs & c2.inputs is used.
//
// Throws ContractError when an assumption atom cannot be eliminated.
ContractOutcome compose_series(const Contract& c1, const Contract& c2,
                               std::optional<std::vector<VarId>> internal = std::nullopt,
                               const EliminationOptions& options = {});

// The contract a component with interface (c2_inputs, c2_outputs) must meet
// so that c1 followed by it refines `system`.
//
// Throws ContractError when no guarantee survives elimination.
ContractOutcome quotient(const Contract& system, const Contract& c1,
                         const std::vector<VarId>& c2_inputs,
                         const std::vector<VarId>& c2_outputs, std::string name = "quotient",
                         const EliminationOptions& options = {});

}  // namespace ctxelim
