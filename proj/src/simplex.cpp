#include "ctxelim/simplex.hpp"

#include "ctxelim/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ctxelim {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::infeasible: return "infeasible";
  }
  return "?";
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Dense tableau over columns [y (free) | slacks | artificials]. Free
// variables may take any sign while basic and never leave the basis.
class Tableau {
 public:
  Tableau(const RatMatrix& B, std::span<const Rational> b)
      : n_(B.cols()), m_(B.rows()) {
    std::size_t artificials = 0;
    for (const auto& v : b)
      if (v < 0) ++artificials;
    cols_ = n_ + m_ + artificials;
    blocked_.assign(cols_, false);
    std::size_t next_art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      RatVector row(cols_);
      bool flip = b[i] < 0;
      for (std::size_t j = 0; j < n_; ++j) row[j] = flip ? Rational(-B(i, j)) : B(i, j);
      row[n_ + i] = flip ? -1 : 1;
      std::size_t basic = n_ + i;
      if (flip) {
        row[next_art] = 1;
        basic = next_art++;
      }
      rows_.push_back(std::move(row));
      rhs_.push_back(flip ? Rational(-b[i]) : b[i]);
      basic_.push_back(basic);
    }
  }

  bool free_var(std::size_t j) const { return j < n_; }
  bool artificial(std::size_t j) const { return j >= n_ + m_; }

  void set_objective(const RatVector& cost) {
    d_ = cost;
    d_rhs_ = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = cost[basic_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) d_[j] -= cb * rows_[r][j];
      d_rhs_ -= cb * rhs_[r];
    }
  }

  Rational objective() const { return -d_rhs_; }

  // Bland's rule: lowest eligible entering index, lowest basic index on
  // ratio ties.
  bool optimize() {
    while (true) {
      std::vector<bool> is_basic = basic_mask();
      std::size_t enter = npos;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (blocked_[j] || is_basic[j]) continue;
        if (free_var(j) ? d_[j] != 0 : d_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == npos) return true;
      std::size_t leave = ratio_test(enter, d_[enter] < 0);
      if (leave == npos) return false;
      pivot(leave, enter);
    }
  }

  // Drives zero-valued artificials out of the basis, dropping rows that are
  // combinations of the others, then bars artificials from re-entering.
  void purge_artificials() {
    for (std::size_t r = 0; r < rows_.size();) {
      if (!artificial(basic_[r])) {
        ++r;
        continue;
      }
      std::size_t col = npos;
      for (std::size_t j = 0; j < n_ + m_; ++j)
        if (rows_[r][j] != 0) {
          col = j;
          break;
        }
      if (col != npos) {
        pivot(r, col);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
    for (std::size_t j = n_ + m_; j < cols_; ++j) blocked_[j] = true;
  }

  // At an optimum, pivots nonbasic free variables in without changing the
  // objective, so that the point becomes a vertex when one exists.
  void pin_free_variables() {
    std::vector<bool> is_basic = basic_mask();
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_basic[j] || d_[j] != 0) continue;
      std::size_t r = ratio_test(j, true);
      if (r == npos) r = ratio_test(j, false);
      if (r == npos) continue;
      pivot(r, j);
      is_basic = basic_mask();
    }
  }

  RatVector point() const {
    RatVector y(n_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (free_var(basic_[r])) y[basic_[r]] = rhs_[r];
    return y;
  }

  std::vector<std::size_t> nonbasic_slack_rows() const {
    std::vector<bool> is_basic = basic_mask();
    for (std::size_t j = 0; j < n_; ++j)
      if (!is_basic[j]) return {};
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m_; ++i)
      if (!is_basic[n_ + i]) out.push_back(i);
    if (out.size() != n_) return {};
    return out;
  }

  std::size_t columns() const { return cols_; }
  std::size_t structural() const { return n_; }
  std::size_t original_rows() const { return m_; }

 private:
  std::vector<bool> basic_mask() const {
    std::vector<bool> mask(cols_, false);
    for (auto j : basic_) mask[j] = true;
    return mask;
  }

  std::size_t ratio_test(std::size_t j, bool increase) const {
    std::size_t best = npos;
    Rational best_ratio;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (free_var(basic_[r])) continue;
      const Rational& a = rows_[r][j];
      if (increase ? a <= 0 : a >= 0) continue;
      Rational ratio = rhs_[r] / (increase ? a : Rational(-a));
      if (best == npos || ratio < best_ratio ||
          (ratio == best_ratio && basic_[r] < basic_[best])) {
        best = r;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t j) {
    RatVector& prow = rows_[r];
    Rational inv = 1 / prow[j];
    for (auto& v : prow) v *= inv;
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][j] == 0) continue;
      Rational f = rows_[i][j];
      for (std::size_t k = 0; k < cols_; ++k)
        if (prow[k] != 0) rows_[i][k] -= f * prow[k];
      rhs_[i] -= f * rhs_[r];
    }
    if (d_.size() == cols_ && d_[j] != 0) {
      Rational f = d_[j];
      for (std::size_t k = 0; k < cols_; ++k)
        if (prow[k] != 0) d_[k] -= f * prow[k];
      d_rhs_ -= f * rhs_[r];
    }
    basic_[r] = j;
  }

  std::size_t n_;
  std::size_t m_;
  std::size_t cols_ = 0;
  std::vector<RatVector> rows_;
  RatVector rhs_;
  std::vector<std::size_t> basic_;
  std::vector<bool> blocked_;
  RatVector d_;
  Rational d_rhs_;
};

std::vector<std::size_t> tight_rows(const RatMatrix& B, std::span<const Rational> b,
                                    const RatVector& y) {
  std::vector<std::size_t> out;
  RatVector By = B * y;
  for (std::size_t i = 0; i < B.rows(); ++i)
    if (By[i] == b[i]) out.push_back(i);
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_shapes(std::span<const Rational> c, const RatMatrix& B, std::span<const Rational> b) {
  if (c.size() != B.cols() || b.size() != B.rows())
    throw std::invalid_argument("LP shape mismatch");
}

}  // namespace

LpOutcome solve_lp(std::span<const Rational> c, const RatMatrix& B, std::span<const Rational> b,
                   LpSense sense) {
  check_shapes(c, B, b);
  Tableau t(B, b);
  LpOutcome out;

  RatVector phase1(t.columns());
  for (std::size_t j = t.structural() + t.original_rows(); j < t.columns(); ++j) phase1[j] = 1;
  t.set_objective(phase1);
  t.optimize();
  if (t.objective() != 0) {
    out.status = LpStatus::infeasible;
    return out;
  }
  t.purge_artificials();

  RatVector cost(t.columns());
  for (std::size_t j = 0; j < c.size(); ++j)
    cost[j] = sense == LpSense::minimize ? c[j] : Rational(-c[j]);
  t.set_objective(cost);
  if (!t.optimize()) {
    out.status = LpStatus::unbounded;
    return out;
  }
  t.pin_free_variables();

  out.status = LpStatus::optimal;
  out.vertex = t.point();
  out.value = dot(c, out.vertex);
  out.tight = tight_rows(B, b, out.vertex);
  out.basis = t.nonbasic_slack_rows();
  return out;
}

// ------------------------------------------------------------------ oracle

namespace {

// Basis of {v : B v = 0}.
std::vector<RatVector> null_space(const RatMatrix& B) {
  const std::size_t n = B.cols();
  RatMatrix a = B;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(row, k));
    Rational inv = 1 / a(row, col);
    for (std::size_t k = 0; k < n; ++k) a(row, k) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      Rational f = a(r, col);
      for (std::size_t k = 0; k < n; ++k) a(r, k) -= f * a(row, k);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<RatVector> basis;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free_col) != pivot_cols.end()) continue;
    RatVector v(n);
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -a(r, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

LpOutcome brute_force_vertices(const RatMatrix& B, std::span<const Rational> b,
                               std::span<const Rational> c, LpSense sense) {
  check_shapes(c, B, b);
  const std::size_t n = B.cols();
  const std::size_t N = B.rows();
  if (N > 12 || n > 4) throw std::invalid_argument("brute_force_vertices: instance too large");

  RatVector cmin(c.begin(), c.end());
  if (sense == LpSense::maximize)
    for (auto& v : cmin) v = -v;

  // Restrict to the complement of the lineality space so a nonempty
  // polyhedron always has a vertex.
  std::vector<RatVector> lineality = null_space(B);
  const std::size_t r = n - lineality.size();
  bool objective_in_rowspace = std::all_of(lineality.begin(), lineality.end(),
                                           [&](const RatVector& v) { return dot(v, cmin) == 0; });

  bool feasible = false;
  bool dual_feasible = false;
  Rational best;
  RatVector best_point;
  for_each_subset(N, r, [&](const std::vector<std::size_t>& rows) {
    RatMatrix M(0, n);
    RatVector rhs;
    for (auto i : rows) {
      M.append_row(B.row(i));
      rhs.push_back(b[i]);
    }
    for (const auto& v : lineality) {
      M.append_row(v);
      rhs.push_back(0);
    }
    auto inv = invert(M);
    if (!inv) return;
    RatVector y = *inv * rhs;
    RatVector By = B * y;
    for (std::size_t i = 0; i < N; ++i)
      if (By[i] > b[i]) return;
    Rational value = dot(cmin, y);
    if (!feasible || value < best) {
      best = value;
      best_point = y;
    }
    feasible = true;
    // Stationarity: c + B_S^T lambda + E^T mu = 0 with lambda >= 0.
    RatVector neg_c(n);
    for (std::size_t j = 0; j < n; ++j) neg_c[j] = -cmin[j];
    RatVector mult = inv->transpose() * neg_c;
    bool ok = true;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (mult[k] < 0) ok = false;
    if (ok) dual_feasible = true;
  });

  LpOutcome out;
  if (!feasible) {
    out.status = LpStatus::infeasible;
    return out;
  }
  if (!objective_in_rowspace || !dual_feasible) {
    out.status = LpStatus::unbounded;
    return out;
  }
  out.status = LpStatus::optimal;
  out.vertex = best_point;
  out.value = dot(c, best_point);
  out.tight = tight_rows(B, b, best_point);
  return out;
}

}  // namespace ctxelim
