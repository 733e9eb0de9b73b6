#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mec/exact.hpp"

namespace mec {

struct BenchAlgorithm {
  ExactSolver solver = ExactSolver::Backtrack;
  /// Used by the backtracking solver only.
  BoundKind bound = BoundKind::MajorProfile;

  /// "dp", "enum", or "backtrack[<bound>]".
  std::string id() const;
};

/// Parses an id produced by BenchAlgorithm::id().
BenchAlgorithm parse_bench_algorithm(std::string_view id);

/// The six rows of the runtime table: enum, dp, and backtracking with each bound.
std::vector<BenchAlgorithm> all_bench_algorithms();

struct BenchConfig {
  std::vector<BenchAlgorithm> algorithms = all_bench_algorithms();
  std::vector<std::size_t> ns{4, 5, 6};
  std::size_t runs = 100;
  double timeout_s = 120.0;
  std::uint64_t seed = 1;
  /// One untimed solve per (algorithm, n) cell before measuring.
  bool warmup = true;
};

struct BenchRow {
  std::string algorithm;
  std::size_t n1;
  std::size_t n2;
  std::size_t runs;
  /// Over the runs that finished; NaN when none did.
  double mean_s;
  double stddev_s;
  std::size_t timeouts;

  std::size_t completed() const { return runs - timeouts; }
};

/// Times every algorithm on the same `runs` Dirichlet pairs per n, one
/// solve at a time. A run counts as a timeout when it exceeds the budget
/// or the solver refuses the size.
std::vector<BenchRow> bench_runtimes(const BenchConfig& cfg);

inline constexpr const char* kBenchCsvHeader = "algorithm,n1,n2,runs,mean_s,stddev_s,timeouts";

/// Cells with no finished run print ">timeout".
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace mec
