#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mec/core.hpp"

namespace mec {

/// Entropy-valued quantities a gap can be formed from.
enum class Quantity { Greedy, Opt, Meet, Profile, MajorProfile };

std::string_view to_string(Quantity q);
/// Accepts "greedy", "opt", "meet", "profile", "major-profile".
Quantity parse_quantity(std::string_view name);

/// H(minuend) - H(subtrahend).
struct GapObjective {
  Quantity minuend;
  Quantity subtrahend;

  bool needs_opt() const { return minuend == Quantity::Opt || subtrahend == Quantity::Opt; }
  std::string name() const;
};

/// Parses "<a>-<b>", e.g. "greedy-meet" or "opt-major-profile".
GapObjective parse_gap_objective(std::string_view text);

/// Evaluates one quantity in bits. Opt needs m = 2 (Unsupported otherwise).
double evaluate(const InstanceSet& s, Quantity q);
double evaluate(const InstanceSet& s, const GapObjective& objective);

/// Largest n for which objectives that involve the optimum are searched.
inline constexpr std::size_t kGapSearchMaxOptN = 7;

struct GapSearchConfig {
  GapObjective objective{Quantity::Greedy, Quantity::Meet};
  std::size_t n = 5;
  std::size_t m = 2;
  /// Even restarts draw a fresh Dirichlet point, odd ones resume from the best.
  std::size_t restarts = 8;
  std::size_t steps = 5000;
  /// Perturbations are log-uniform in [delta_min, delta_max * (1 - step / steps)].
  double delta_min = 1e-6;
  double delta_max = 0.3;
  std::uint64_t seed = 1;
  /// Starting point of the first restart; random Dirichlet when absent.
  std::optional<InstanceSet> start;
};

struct GapSearchResult {
  InstanceSet best;
  double gap;
  std::size_t evaluations;
};

/// Hill climbing with restarts. A step moves mass delta from one random
/// state to another inside one distribution and is kept only if the gap
/// grows. Throws InvalidInput when the objective needs the optimum and
/// m != 2 or n > kGapSearchMaxOptN.
GapSearchResult local_search_gap(const GapSearchConfig& cfg);

}  // namespace mec
