#pragma once

#include "ctxelim/matrix.hpp"

#include <optional>
#include <span>

namespace ctxelim {

// Gauss-Jordan over the rationals. Empty when M is singular.
// Throws std::invalid_argument when M is not square.
std::optional<RatMatrix> invert(const RatMatrix& M);

// Unique solution of M x = rhs, or empty when M is singular.
std::optional<RatVector> solve(const RatMatrix& M, std::span<const Rational> rhs);

std::size_t rank(const RatMatrix& M);

enum class PairType { refining, relaxing };
const char* to_string(PairType t);

// (B_J, q) is refining when (B_J^T)^-1 q >= 0 and relaxing when
// -(B_J^T)^-1 q >= 0. `multipliers` is the nonnegative vector in question.
struct PairKind {
  PairType kind;
  RatVector multipliers;
};

// Reports refining when both conditions hold (q = 0).
std::optional<PairKind> classify_pair(const RatMatrix& B_J, std::span<const Rational> q);

// Sufficient conditions for M^-1 nu > 0: M nonnegative with positive
// diagonal, nu positive, and nu_i > sum_{j != i} M_ij nu_j / M_jj.
bool is_kaykobad_pair(const RatMatrix& M, std::span<const Rational> nu);

// Bbar = B_J Q and qbar = Q q with Q = diag(sign(q)). If (Bbar^T, qbar) is a
// Kaykobad pair then (B_J, q) is refining; if (-Bbar^T, qbar) is one then it
// is relaxing. Throws std::invalid_argument on a zero entry of q.
struct SignedTransform {
  RatMatrix Bbar;
  RatVector qbar;
};
SignedTransform signed_transform(const RatMatrix& B_J, std::span<const Rational> q);

}  // namespace ctxelim
