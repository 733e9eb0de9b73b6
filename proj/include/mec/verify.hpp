#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mec {

struct VerifyConfig {
  std::uint64_t seed = 7;
  /// Random instances per check.
  std::size_t instances = 50;
  /// Largest n for checks that call the exact solvers.
  std::size_t max_exact_n = 5;
  /// Corrupts one greedy coupling so the marginal check must fail.
  bool inject_corrupt = false;
};

struct VerifyCheck {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// Description of the first failing case.
  std::string counterexample;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool ok() const;
};

/// Runs the library's invariants over random and fixed instances.
VerifyReport verify_suite(const VerifyConfig& cfg = {});

void print_report(std::ostream& out, const VerifyReport& report);

}  // namespace mec
