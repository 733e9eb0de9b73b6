#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mec/core.hpp"

namespace mec {

/// Non-decreasing step function on (0, extent]. With breakpoints
/// (x_0, y_0) = (0, 0), (x_1, y_1), ..., the value on (x_{i-1}, x_i] is y_i.
/// Both coordinates are strictly increasing after reduction.
class ProfileCurve {
 public:
  struct Breakpoint {
    double x;
    double y;
  };

  ProfileCurve() : points_{{0.0, 0.0}} {}

  /// Lower envelope of the sketches of every distribution in `s`.
  static ProfileCurve of(const InstanceSet& s);
  /// Sketch of a single distribution: state i is a box of width and
  /// height d[i], smallest states leftmost.
  static ProfileCurve sketch(const Dist& d);

  std::span<const Breakpoint> breakpoints() const { return points_; }
  double extent() const { return points_.back().x; }
  bool empty() const { return points_.size() == 1; }

  /// Curve value at x in (0, extent]; 0 outside.
  double value_at(double x) const;

 private:
  explicit ProfileCurve(std::vector<Breakpoint> points) : points_(std::move(points)) {}

  std::vector<Breakpoint> points_;
};

/// Greatest lower bound of `s` in the majorization order, from prefix-sum
/// minima.
Dist majorization_meet(const InstanceSet& s);

ProfileCurve profile_curve(const InstanceSet& s);

/// Integral of lg(1/curve(x)) over the curve's extent.
double profile_entropy(const ProfileCurve& pc);

/// Same quantity evaluated through the transposed (inverse) curve,
/// integral of h(y) / (y ln 2) for y in (0, 1].
double profile_transpose_entropy(const ProfileCurve& pc);

/// Integral of f.unit(curve(x)) over the curve's extent; lower-bounds the
/// optimal coupling cost for any concave cost.
double profile_cost(const ProfileCurve& pc, const CostFn& f);

/// Minimum-entropy distribution whose sketch never exceeds the curve.
///
/// Grows squares right to left: with t the extent still uncovered, the next
/// mass is min over breakpoints of max(y, t - x). Breakpoints are sorted by
/// x + y, so the binding index only moves left as t shrinks and the whole
/// pass is linear in the breakpoint count.
Dist major_profile(const ProfileCurve& pc);

/// max over p of sum_j min(p(j), y).
double rem_mass_simple(const InstanceSet& s, double y);

/// max over p of sum_j { y if y <= p(j)/2; p(j)/2 if p(j)/2 < y < p(j);
/// p(j) if p(j) <= y }.
double rem_mass_advanced(const InstanceSet& s, double y);

enum class BoundKind { Zero, Meet, Profile, MajorProfile };

std::string_view to_string(BoundKind kind);
/// Accepts "zero", "meet", "profile", "major-profile".
BoundKind parse_bound_kind(std::string_view name);

/// Lower bound on the optimal coupling entropy, in bits.
double lower_bound(const InstanceSet& s, BoundKind kind);

}  // namespace mec
