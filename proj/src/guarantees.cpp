#include "mec/guarantees.hpp"

#include <cmath>
#include <numbers>

#include "mec/bounds.hpp"
#include "mec/greedy.hpp"

namespace mec {

namespace {

// Maximizer of a unimodal g on [lo, hi].
template <class G>
double golden_max(G&& g, double lo, double hi, double tol = 1e-14) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (gc < gd) {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    } else {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    }
  }
  return (a + b) / 2.0;
}

// d[0] is an implicit 0 (no term), d[1..m-1] free, d[m] = 1.
double area(const std::vector<double>& d) {
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < d.size(); ++i) total += d[i] * std::log(d[i + 1] / d[i]);
  return total;
}

}  // namespace

GuaranteeReport small_m_constant(std::size_t m) {
  if (m < 2) throw InvalidInput("small-m constant needs m >= 2");
  // Log-spaced start: d_i = e^{-(m+1-i)}, stored with a leading 0.
  std::vector<double> d(m + 1);
  d[0] = 0.0;
  for (std::size_t i = 1; i < m; ++i) d[i] = std::exp(-static_cast<double>(m - i));
  d[m] = 1.0;

  GuaranteeReport out;
  out.m = m;
  double value = area(d);
  for (int sweep = 0; sweep < 100000; ++sweep) {
    for (std::size_t i = 1; i < m; ++i) {
      const double below = d[i - 1];
      const double above = d[i + 1];
      // Only the two terms touching d_i move.
      auto local = [&](double x) {
        const double lower = below > 0.0 ? below * std::log(x / below) : 0.0;
        return lower + x * std::log(above / x);
      };
      d[i] = golden_max(local, below, above);
    }
    const double next = area(d);
    out.last_change = next - value;
    value = next;
    if (std::abs(out.last_change) < 1e-15) break;
  }
  out.value = value / std::numbers::ln2;
  out.point.assign(d.begin() + 1, d.end() - 1);
  return out;
}

MultRatio mult_ratio_two(const CostFn& f) {
  if (f.kind() != CostFn::Kind::Power) {
    throw Unsupported("multiplicative ratio is wired in for power costs only");
  }
  const double c = f.exponent();
  auto gap = [c](double t) { return std::pow(t, c) - t; };
  const double t = golden_max(gap, 0.0, 1.0);
  const double r = gap(t);
  if (r >= 1.0) throw Unsupported("ratio r >= 1 gives no multiplicative guarantee");
  return {r, 1.0 / (1.0 - r), t};
}

double mult_ratio_two_closed_form(double c) {
  return std::pow(c, 1.0 / (1.0 - c)) * (1.0 / c - 1.0);
}

double mult_guarantee_general(double c) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidInput("power exponent must lie in (0,1)");
  return 0.5 + 1.0 / (c * std::exp2(c));
}

double mult_factor(std::size_t m, double c) {
  if (m == 2) return mult_ratio_two(CostFn::power(c)).factor;
  return mult_guarantee_general(c);
}

MultCheck check_mult_guarantee(const InstanceSet& s, const CostFn& f) {
  if (f.kind() != CostFn::Kind::Power) {
    throw Unsupported("multiplicative guarantee is wired in for power costs only");
  }
  MultCheck out;
  out.greedy_cost = cost(greedy_sizes(s), f);
  out.bound = profile_cost(profile_curve(s), f);
  out.factor = mult_factor(s.m(), f.exponent());
  if (out.bound > 0.0) out.ratio = out.greedy_cost / out.bound;
  out.within = out.ratio && *out.ratio <= out.factor + 1e-9;
  return out;
}

}  // namespace mec
