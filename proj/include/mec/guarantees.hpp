#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mec/core.hpp"

namespace mec {

struct GuaranteeReport {
  /// m for the additive constants.
  std::size_t m = 0;
  /// Constant in bits.
  double value = 0.0;
  /// Maximizer d_2 < ... < d_m (d_{m+1} = 1 is implicit).
  std::vector<double> point;
  /// Change of the objective over the last coordinate sweep.
  double last_change = 0.0;
};

/// Additive guarantee for m distributions: the maximum over
/// 0 < d_2 < ... < d_m < d_{m+1} = 1 of
///   sum_{i=2}^{m} d_i ln(d_{i+1} / d_i),
/// converted to bits. Throws InvalidInput for m < 2.
GuaranteeReport small_m_constant(std::size_t m);

struct MultRatio {
  /// max over 0 < q < p <= 1 of f(q)/f(p) - q/p.
  double r;
  /// Multiplicative guarantee 1 / (1 - r) for m = 2.
  double factor;
  /// Maximizing ratio t = q/p.
  double t;
};

/// For Power(c) the objective depends on t = q/p only: t^c - t.
/// Found numerically. Throws Unsupported for the Shannon cost.
MultRatio mult_ratio_two(const CostFn& f);

/// c^{1/(1-c)} (1/c - 1).
double mult_ratio_two_closed_form(double c);

/// 1/2 + 1/(c 2^c), the Power(c) factor for any m.
/// Throws InvalidInput unless 0 < c < 1.
double mult_guarantee_general(double c);

/// Factor that applies to `m` distributions under Power(c).
double mult_factor(std::size_t m, double c);

struct MultCheck {
  double greedy_cost;
  double bound;
  /// greedy_cost / bound; nullopt when the bound is zero.
  std::optional<double> ratio;
  double factor;
  /// ratio <= factor + 1e-9.
  bool within;
};

/// Greedy cost against the profile cost lower bound under a Power cost.
/// Throws Unsupported for the Shannon cost.
MultCheck check_mult_guarantee(const InstanceSet& s, const CostFn& f);

}  // namespace mec
