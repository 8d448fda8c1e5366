#pragma once

#include "ctxelim/matrix.hpp"

#include <span>
#include <vector>

namespace ctxelim {

enum class LpStatus { optimal, unbounded, infeasible };
enum class LpSense { minimize, maximize };

const char* to_string(LpStatus s);

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  Rational value;                   // c^T vertex, when optimal
  RatVector vertex;                 // when optimal
  std::vector<std::size_t> tight;   // rows with B_i vertex == b_i, ascending
  // Rows whose slacks are nonbasic in the final simplex basis, when that
  // basis pins every variable (exactly n rows, B_basis invertible).
  std::vector<std::size_t> basis;
};

// Optimizes c^T y subject to B y <= b over free y, exactly. Bland's rule
// throughout; the optimum returned is a vertex whenever B has full column
// rank.
LpOutcome solve_lp(std::span<const Rational> c, const RatMatrix& B,
                   std::span<const Rational> b, LpSense sense);

// Independent oracle: enumerates every basis of the polyhedron (restricted to
// the orthogonal complement of its lineality space) and decides optimality
// by dual feasibility at each feasible basis. Only for N <= 12, n <= 4;
// throws std::invalid_argument beyond that.
LpOutcome brute_force_vertices(const RatMatrix& B, std::span<const Rational> b,
                               std::span<const Rational> c, LpSense sense);

}  // namespace ctxelim
