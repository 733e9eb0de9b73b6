#pragma once

#include <cstdint>
#include <vector>

#include "mec/core.hpp"

namespace mec {

struct GreedyStep {
  double mass;
  /// State of each distribution the step consumed from.
  std::vector<std::uint32_t> states;
  /// Uncoupled mass left before this step.
  double remaining_before;
};

struct GreedyTrace {
  std::vector<GreedyStep> steps;
};

struct GreedyResult {
  Coupling coupling;
  GreedyTrace trace;
};

/// Repeatedly couples the current largest residual state of every
/// distribution with mass equal to the smallest of those maxima. Equal
/// residuals inside one distribution are consumed lowest index first.
/// Residuals at or below kEps are treated as exhausted.
GreedyResult greedy_coupling(const InstanceSet& s);

/// Entry masses of the greedy coupling only. Skips index bookkeeping, so it
/// scales to instances with thousands of distributions.
Dist greedy_sizes(const InstanceSet& s);

struct MonovariantPoint {
  std::size_t step;
  double value;
};

/// For m = 2: value after t steps is the profile entropy of the residual
/// distributions plus the entropy of the t masses chosen so far. The first
/// point (t = 0) is the profile entropy of `s`. Throws Unsupported for m != 2.
std::vector<MonovariantPoint> monovariant_trace(const InstanceSet& s);

}  // namespace mec
