#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mec/core.hpp"

namespace mec {

/// SplitMix64. split() derives an independent stream from the next output,
/// so sub-tasks can own generators without sharing state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

/// One Dirichlet(1) draw on n states, in generation order (unsorted).
std::vector<double> sample_dirichlet(std::size_t n, SplitMix64& rng);

/// m independent Dirichlet(1) distributions on n states.
InstanceSet gen_dirichlet(std::size_t n, std::size_t m, std::uint64_t seed);
InstanceSet gen_dirichlet(std::size_t n, std::size_t m, SplitMix64& rng);

/// {U_{F_t}, U_{L_{t-1}}}: uniforms on a Fibonacci and a Lucas number of
/// states. Throws InvalidInput unless 3 <= t <= 40.
InstanceSet gen_fib_lucas(int t);

/// {U_1, ..., U_{n_max}}.
InstanceSet gen_uniform_family(std::size_t n_max);

/// Pair p1 = [0.4, 0.3, 0.15, 0.075, ...], p2 = [0.3, 0.2, 0.2, 0.15,
/// 0.075, ...] sharing a halving tail. p2 has k states (k >= 5); the final
/// tail term is doubled so both sum to exactly 1.
InstanceSet gen_geometric_gap(std::size_t k = 40);

/// The coupling of gen_geometric_gap(k) whose entry masses are p2 itself.
Coupling geometric_gap_opt_coupling(std::size_t k = 40);

/// A fixed instance together with one gap it is known to exhibit.
struct KnownGap {
  std::string name;
  std::string objective;  // e.g. "opt-meet"
  double expected;
  InstanceSet instance;
};

/// Five-, six- and seven-state counter-example pairs with their gaps.
std::vector<KnownGap> known_gap_instances();

/// Six-state pair used as a counter-example for other coupling
/// heuristics. No reference value attached.
InstanceSet heuristics_counterexample();

}  // namespace mec
