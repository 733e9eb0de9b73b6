#include "mec/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace mec {

namespace {

using Breakpoint = ProfileCurve::Breakpoint;

// Drops every (x, y) dominated by some (x', y') with x' >= x and y' <= y.
// Input order is irrelevant; output is increasing in both coordinates and
// starts at (0, 0). Pairs whose x differ by at most kEps count as the same x.
std::vector<Breakpoint> reduce_pairs(std::vector<Breakpoint> pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const Breakpoint& a, const Breakpoint& b) {
    if (a.x != b.x) return a.x > b.x;
    return a.y < b.y;
  });
  std::vector<Breakpoint> kept;
  double min_y = std::numeric_limits<double>::infinity();
  for (const Breakpoint& p : pairs) {
    if (p.y >= min_y) continue;
    min_y = p.y;
    if (!kept.empty() && kept.back().x - p.x <= kEps) {
      kept.back().y = p.y;
    } else {
      kept.push_back(p);
    }
  }
  kept.push_back({0.0, 0.0});
  std::reverse(kept.begin(), kept.end());
  return kept;
}

void append_sketch_pairs(const Dist& d, std::vector<Breakpoint>& out) {
  double suffix = 0.0;
  for (std::size_t i = d.size(); i-- > 0;) {
    suffix += d[i];
    out.push_back({suffix, d[i]});
  }
}

}  // namespace

ProfileCurve ProfileCurve::of(const InstanceSet& s) {
  std::vector<Breakpoint> pairs;
  std::size_t total = 0;
  for (const Dist& d : s.dists()) total += d.size();
  pairs.reserve(total);
  for (const Dist& d : s.dists()) append_sketch_pairs(d, pairs);
  return ProfileCurve(reduce_pairs(std::move(pairs)));
}

ProfileCurve ProfileCurve::sketch(const Dist& d) {
  std::vector<Breakpoint> pairs;
  pairs.reserve(d.size());
  append_sketch_pairs(d, pairs);
  return ProfileCurve(reduce_pairs(std::move(pairs)));
}

double ProfileCurve::value_at(double x) const {
  if (x <= 0.0 || x > extent()) return 0.0;
  auto it = std::lower_bound(points_.begin() + 1, points_.end(), x,
                             [](const Breakpoint& p, double v) { return p.x < v; });
  return it->y;
}

Dist majorization_meet(const InstanceSet& s) {
  const std::size_t n = s.n();
  std::vector<double> meet_prefix(n, std::numeric_limits<double>::infinity());
  for (const Dist& d : s.dists()) {
    double prefix = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i < d.size()) prefix += d[i];
      meet_prefix[i] = std::min(meet_prefix[i], prefix);
    }
  }
  std::vector<double> out(n);
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::max(0.0, meet_prefix[i] - prev);
    prev = meet_prefix[i];
  }
#ifndef NDEBUG
  for (std::size_t i = 1; i < n; ++i) assert(out[i] <= out[i - 1] + 1e-9);
#endif
  return Dist(std::move(out));
}

ProfileCurve profile_curve(const InstanceSet& s) { return ProfileCurve::of(s); }

double profile_entropy(const ProfileCurve& pc) {
  auto pts = pc.breakpoints();
  double h = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    h += (pts[i].x - pts[i - 1].x) * -std::log2(pts[i].y);
  }
  return h;
}

double profile_transpose_entropy(const ProfileCurve& pc) {
  // The inverse curve h(y) equals x_i on [y_i, y_{i+1}) and the full extent
  // from the last height up to 1.
  auto pts = pc.breakpoints();
  double h = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double upper = (i + 1 < pts.size()) ? pts[i + 1].y : 1.0;
    h += pts[i].x * std::log2(upper / pts[i].y);
  }
  return h;
}

double profile_cost(const ProfileCurve& pc, const CostFn& f) {
  auto pts = pc.breakpoints();
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    total += (pts[i].x - pts[i - 1].x) * f.unit(pts[i].y);
  }
  return total;
}

Dist major_profile(const ProfileCurve& pc) {
  auto pts = pc.breakpoints();
  std::vector<double> out;
  if (pc.empty()) return Dist{};
  double t = pc.extent();
  std::size_t j = pts.size() - 1;
  while (t > kEps) {
    while (j > 1 && pts[j - 1].x + pts[j - 1].y > t) --j;
    const double r = std::min(t - pts[j - 1].x, pts[j].y);
    if (r < kEps) break;
    out.push_back(r);
    t -= r;
  }
  return Dist(std::move(out));
}

double rem_mass_simple(const InstanceSet& s, double y) {
  double best = 0.0;
  for (const Dist& d : s.dists()) {
    double sum = 0.0;
    for (double p : d.masses()) sum += std::min(p, y);
    best = std::max(best, sum);
  }
  return best;
}

double rem_mass_advanced(const InstanceSet& s, double y) {
  double best = 0.0;
  for (const Dist& d : s.dists()) {
    double sum = 0.0;
    for (double p : d.masses()) {
      if (y <= p / 2.0) {
        sum += y;
      } else if (y < p) {
        sum += p / 2.0;
      } else {
        sum += p;
      }
    }
    best = std::max(best, sum);
  }
  return best;
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Zero:
      return "zero";
    case BoundKind::Meet:
      return "meet";
    case BoundKind::Profile:
      return "profile";
    case BoundKind::MajorProfile:
      return "major-profile";
  }
  return "?";
}

BoundKind parse_bound_kind(std::string_view name) {
  if (name == "zero" || name == "0") return BoundKind::Zero;
  if (name == "meet") return BoundKind::Meet;
  if (name == "profile") return BoundKind::Profile;
  if (name == "major-profile" || name == "majorprofile") return BoundKind::MajorProfile;
  throw InvalidInput("unknown bound kind '" + std::string(name) + "'");
}

double lower_bound(const InstanceSet& s, BoundKind kind) {
  switch (kind) {
    case BoundKind::Zero:
      return 0.0;
    case BoundKind::Meet:
      return entropy(majorization_meet(s));
    case BoundKind::Profile:
      return profile_entropy(profile_curve(s));
    case BoundKind::MajorProfile:
      return entropy(major_profile(profile_curve(s)));
  }
  return 0.0;
}

}  // namespace mec
