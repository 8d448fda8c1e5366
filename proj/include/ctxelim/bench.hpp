#pragma once

#include "ctxelim/eliminate.hpp"
#include "ctxelim/formula.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ctxelim {

struct BenchConfig {
  std::size_t n_constraints = 10;  // N
  std::size_t total_vars = 10;
  std::size_t n_irrelevant = 2;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  Method method = Method::kaykobad;
  Mode mode = Mode::antecedent;
  unsigned reps = 5;  // timed runs per trial after one discarded warm-up
};

// Throws std::invalid_argument unless 1 <= n_irrelevant <= total_vars and
// n_constraints >= 1.
void validate(const BenchConfig& cfg);

struct BenchInstance {
  Atom phi;
  Conjunction gamma;
  VarPartition partition;
};

// Dense instance with coefficients uniform in [-9, 9] \ {0}. The y
// coefficients and constants come from their own stream, so instances that
// differ only in total_vars share them.
BenchInstance generate_instance(const BenchConfig& cfg, std::size_t trial);

struct BenchRow {
  Method method;
  std::size_t N, total_vars, irrelevant, trial;
  bool ok;
  double micros;  // fastest timed run
};

std::vector<BenchRow> run_bench(const BenchConfig& cfg);

inline constexpr const char* kBenchCsvHeader = "method,N,total_vars,irrelevant,trial,status,micros";
std::string csv_line(const BenchRow& row);

struct BenchSummary {
  std::size_t successes = 0, failures = 0;
  double mean_micros = 0;  // over all trials
};
BenchSummary summarize(const std::vector<BenchRow>& rows);

}  // namespace ctxelim
