#include "ctxelim/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

namespace ctxelim {

void validate(const BenchConfig& cfg) {
  if (cfg.n_constraints == 0) throw std::invalid_argument("N must be positive");
  if (cfg.n_irrelevant == 0) throw std::invalid_argument("irrelevant must be positive");
  if (cfg.n_irrelevant > cfg.total_vars)
    throw std::invalid_argument("irrelevant exceeds total_vars");
  if (cfg.reps == 0) throw std::invalid_argument("reps must be positive");
}

namespace {

std::mt19937_64 stream(std::uint64_t seed, std::size_t trial, std::uint32_t which) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    which};
  return std::mt19937_64(seq);
}

long nonzero_coefficient(std::mt19937_64& rng) {
  long v = static_cast<long>(rng() % 18);
  return v < 9 ? v - 9 : v - 8;
}

}  // namespace

BenchInstance generate_instance(const BenchConfig& cfg, std::size_t trial) {
  validate(cfg);
  auto ry = stream(cfg.seed, trial, 0);
  auto rx = stream(cfg.seed, trial, 1);
  BenchInstance inst;
  for (std::size_t i = 0; i < cfg.n_irrelevant; ++i)
    inst.partition.y_vars.push_back(VarId{"y" + std::to_string(i + 1)});
  for (std::size_t i = 0; i < cfg.total_vars - cfg.n_irrelevant; ++i)
    inst.partition.x_vars.push_back(VarId{"x" + std::to_string(i + 1)});

  auto atom = [&] {
    LinExpr e;
    for (const auto& y : inst.partition.y_vars) e.add_term(y, nonzero_coefficient(ry));
    e.add_constant(nonzero_coefficient(ry));
    for (const auto& x : inst.partition.x_vars) e.add_term(x, nonzero_coefficient(rx));
    return Atom(std::move(e));
  };
  inst.phi = atom();
  for (std::size_t r = 0; r < cfg.n_constraints; ++r) inst.gamma.push_back(atom());
  return inst;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  validate(cfg);
  std::vector<BenchRow> rows;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    BenchInstance inst = generate_instance(cfg, t);
    Assignment sample = default_sample(inst.partition);
    auto run = [&] {
      switch (cfg.method) {
        case Method::kaykobad:
          return eliminate_kaykobad(inst.phi, inst.gamma, inst.partition, cfg.mode);
        case Method::lp:
          return eliminate_lp_retrying(inst.phi, inst.gamma, inst.partition, cfg.mode, sample,
                                       cfg.seed);
        case Method::automatic: {
          auto r = eliminate_kaykobad(inst.phi, inst.gamma, inst.partition, cfg.mode);
          if (succeeded(r)) return r;
          return eliminate_lp_retrying(inst.phi, inst.gamma, inst.partition, cfg.mode, sample,
                                       cfg.seed);
        }
      }
      return EliminationOutcome{EliminationFailure{"method", "unknown method"}};
    };

    bool ok = succeeded(run());  // warm-up
    double best = std::numeric_limits<double>::infinity();
    for (unsigned r = 0; r < cfg.reps; ++r) {
      auto start = std::chrono::steady_clock::now();
      auto out = run();
      auto stop = std::chrono::steady_clock::now();
      ok = succeeded(out);
      best = std::min(best, std::chrono::duration<double, std::micro>(stop - start).count());
    }
    rows.push_back({cfg.method, cfg.n_constraints, cfg.total_vars, cfg.n_irrelevant, t, ok, best});
  }
  return rows;
}

std::string csv_line(const BenchRow& row) {
  char micros[32];
  std::snprintf(micros, sizeof micros, "%.3f", row.micros);
  return std::string(to_string(row.method)) + "," + std::to_string(row.N) + "," +
         std::to_string(row.total_vars) + "," + std::to_string(row.irrelevant) + "," +
         std::to_string(row.trial) + "," + (row.ok ? "ok" : "fail") + "," + micros;
}

BenchSummary summarize(const std::vector<BenchRow>& rows) {
  BenchSummary s;
  double total = 0;
  for (const auto& r : rows) {
    (r.ok ? s.successes : s.failures) += 1;
    total += r.micros;
  }
  if (!rows.empty()) s.mean_micros = total / static_cast<double>(rows.size());
  return s;
}

}  // namespace ctxelim
