#pragma once

// Generators and exact samplers shared by the test binaries.

#include "ctxelim/formula.hpp"
#include "ctxelim/simplex.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ctxelim::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long uniform(long lo, long hi) {
    return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  long nonzero(long bound) {
    long v = uniform(-bound, bound - 1);
    return v >= 0 ? v + 1 : v;
  }
  bool coin(unsigned percent = 50) { return uniform(0, 99) < percent; }
  Rational fraction(long bound, long max_den) {
    return make_rational(uniform(-bound * max_den, bound * max_den), uniform(1, max_den));
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Kaykobad pair by construction: random nonnegative off-diagonal part and
// positive nu, then a diagonal M_jj = s * nu_j with s above every
// row_sum_i / nu_i.
inline std::pair<RatMatrix, RatVector> kaykobad_pair(Rng& rng, std::size_t n) {
  RatMatrix M(n, n);
  RatVector nu(n);
  for (auto& v : nu) v = make_rational(rng.uniform(1, 20), rng.uniform(1, 5));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && rng.coin(70)) M(i, j) = make_rational(rng.uniform(0, 9), rng.uniform(1, 3));
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) row += M(i, j);
    s = std::max(s, Rational(row / nu[i]));
  }
  s += make_rational(1, rng.uniform(1, 1000));
  for (std::size_t j = 0; j < n; ++j) M(j, j) = s * nu[j];
  return {M, nu};
}

inline std::vector<VarId> names(const std::string& prefix, std::size_t n) {
  std::vector<VarId> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(VarId{prefix + std::to_string(i + 1)});
  return out;
}

struct RandomInstance {
  Atom phi;
  Conjunction gamma;
  VarPartition partition;
  Mode mode = Mode::antecedent;
};

// phi mentions every y; context rows are sparse over y, x and z.
inline RandomInstance random_instance(Rng& rng, std::size_t n, std::size_t N, long bound = 9) {
  RandomInstance inst;
  inst.partition.y_vars = names("y", n);
  inst.partition.x_vars = names("x", static_cast<std::size_t>(rng.uniform(1, 2)));
  inst.partition.z_vars = names("z", static_cast<std::size_t>(rng.uniform(0, 2)));
  inst.mode = rng.coin() ? Mode::antecedent : Mode::consequent;

  LinExpr phi(rng.uniform(-bound, bound));
  for (const auto& y : inst.partition.y_vars) phi.add_term(y, rng.nonzero(bound));
  for (const auto& x : inst.partition.x_vars) phi.add_term(x, rng.uniform(-bound, bound));
  inst.phi = Atom(phi);

  for (std::size_t r = 0; r < N; ++r) {
    LinExpr row(rng.uniform(-bound, bound));
    for (const auto& y : inst.partition.y_vars)
      if (rng.coin(75)) row.add_term(y, rng.uniform(-bound, bound));
    for (const auto& x : inst.partition.x_vars)
      if (rng.coin(40)) row.add_term(x, rng.uniform(-bound, bound));
    for (const auto& z : inst.partition.z_vars)
      if (rng.coin(40)) row.add_term(z, rng.uniform(-bound, bound));
    inst.gamma.push_back(Atom(row));
  }
  return inst;
}

// Points of {v : conj(v)} within the box |v_i| <= box: LP vertices for
// random objectives, then random convex combinations of them. Every point
// returned satisfies `conj` (checked exactly). Empty if infeasible.
inline std::vector<Assignment> sample_points(const Conjunction& conj, const std::vector<VarId>& vars,
                                             Rng& rng, std::size_t count, long box = 20,
                                             std::size_t vertices = 8) {
  const std::size_t n = vars.size();
  RatMatrix B(0, n);
  RatVector b;
  for (const auto& a : conj) {
    RatVector row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = a.lhs().coeff(vars[k]);
    B.append_row(row);
    b.push_back(-a.lhs().constant());
  }
  for (std::size_t k = 0; k < n; ++k)
    for (int s : {1, -1}) {
      RatVector row(n);
      row[k] = s;
      B.append_row(row);
      b.push_back(box);
    }

  std::vector<RatVector> found;
  for (std::size_t t = 0; t < vertices; ++t) {
    RatVector c(n);
    for (auto& x : c) x = rng.uniform(-9, 9);
    LpOutcome lp = solve_lp(c, B, b, LpSense::maximize);
    if (lp.status != LpStatus::optimal) return {};
    found.push_back(lp.vertex);
  }

  std::vector<Assignment> out;
  for (std::size_t p = 0; p < count; ++p) {
    RatVector point(n);
    if (p < found.size()) {
      point = found[p];
    } else {
      Rational total = 0;
      std::vector<Rational> w(found.size());
      for (auto& x : w) {
        x = rng.uniform(0, 5);
        total += x;
      }
      if (total == 0) {
        w[0] = 1;
        total = 1;
      }
      for (std::size_t v = 0; v < found.size(); ++v)
        for (std::size_t k = 0; k < n; ++k) point[k] += w[v] / total * found[v][k];
    }
    Assignment a;
    for (std::size_t k = 0; k < n; ++k) a[vars[k]] = point[k];
    out.push_back(std::move(a));
  }
  return out;
}

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(CTXELIM_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<VarId> all_vars(const VarPartition& p) {
  std::vector<VarId> v = p.x_vars;
  v.insert(v.end(), p.y_vars.begin(), p.y_vars.end());
  v.insert(v.end(), p.z_vars.begin(), p.z_vars.end());
  return v;
}

}  // namespace ctxelim::testing
