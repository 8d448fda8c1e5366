#include "ctxelim/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctxelim {

namespace {

// Reduces [M | rhs] in place to reduced row echelon form; returns the pivot
// column of each pivot row.
std::vector<std::size_t> rref(RatMatrix& a, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(p, c), a(row, c));
    Rational inv = 1 / a(row, col);
    for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      Rational f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<RatMatrix> invert(const RatMatrix& M) {
  if (!M.square()) throw std::invalid_argument("invert: matrix is not square");
  const std::size_t n = M.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = M(r, c);
    aug(r, n + r) = 1;
  }
  if (rref(aug, n).size() != n) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

std::optional<RatVector> solve(const RatMatrix& M, std::span<const Rational> rhs) {
  if (!M.square() || rhs.size() != M.rows())
    throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = M.rows();
  RatMatrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = M(r, c);
    aug(r, n) = rhs[r];
  }
  if (rref(aug, n).size() != n) return std::nullopt;
  RatVector x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
  return x;
}

std::size_t rank(const RatMatrix& M) {
  RatMatrix a = M;
  return rref(a, a.cols()).size();
}

const char* to_string(PairType t) { return t == PairType::refining ? "refining" : "relaxing"; }

std::optional<PairKind> classify_pair(const RatMatrix& B_J, std::span<const Rational> q) {
  if (!B_J.square() || q.size() != B_J.rows())
    throw std::invalid_argument("classify_pair: shape mismatch");
  auto lambda = solve(B_J.transpose(), q);
  if (!lambda) return std::nullopt;
  auto nonneg = [](const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; });
  };
  if (nonneg(*lambda)) return PairKind{PairType::refining, std::move(*lambda)};
  RatVector neg(lambda->size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -(*lambda)[i];
  if (nonneg(neg)) return PairKind{PairType::relaxing, std::move(neg)};
  return std::nullopt;
}

bool is_kaykobad_pair(const RatMatrix& M, std::span<const Rational> nu) {
  if (!M.square() || nu.size() != M.rows()) return false;
  const std::size_t n = M.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (nu[i] <= 0 || M(i, i) <= 0) return false;
    for (std::size_t j = 0; j < n; ++j)
      if (M(i, j) < 0) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sum += M(i, j) * nu[j] / M(j, j);
    if (!(nu[i] > sum)) return false;
  }
  return true;
}

SignedTransform signed_transform(const RatMatrix& B_J, std::span<const Rational> q) {
  if (q.size() != B_J.cols()) throw std::invalid_argument("signed_transform: shape mismatch");
  SignedTransform t{B_J, RatVector(q.size())};
  for (std::size_t j = 0; j < q.size(); ++j) {
    int s = sgn(q[j]);
    if (s == 0) throw std::invalid_argument("signed_transform: q has a zero entry");
    t.qbar[j] = abs(q[j]);
    if (s < 0)
      for (std::size_t r = 0; r < B_J.rows(); ++r) t.Bbar(r, j) = -t.Bbar(r, j);
  }
  return t;
}

}  // namespace ctxelim
