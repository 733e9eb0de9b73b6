#include "mec/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace mec {

Dist::Dist(std::vector<double> masses) : masses_(std::move(masses)) {
  for (double x : masses_) {
    if (!std::isfinite(x)) throw InvalidInput("distribution mass is not finite");
    if (x < 0.0) {
      std::ostringstream os;
      os << "negative mass " << x;
      throw InvalidInput(os.str());
    }
  }
  std::sort(masses_.begin(), masses_.end(), std::greater<>());
  auto cut = std::find_if(masses_.begin(), masses_.end(),
                          [](double x) { return x < kEps; });
  masses_.erase(cut, masses_.end());
  // Summing smallest-first keeps the rounding error at the ulp level.
  total_ = 0.0;
  for (auto it = masses_.rbegin(); it != masses_.rend(); ++it) total_ += *it;
  if (total_ > 1.0 + kEps) {
    std::ostringstream os;
    os.precision(17);
    os << "distribution total " << total_ << " exceeds 1";
    throw InvalidInput(os.str());
  }
}

Dist Dist::uniform(std::size_t states) {
  if (states == 0) throw InvalidInput("uniform distribution needs at least one state");
  return Dist(std::vector<double>(states, 1.0 / static_cast<double>(states)));
}

double InstanceSet::total_tolerance(std::size_t n) {
  return kEps * static_cast<double>(std::max<std::size_t>(n, 1));
}

InstanceSet::InstanceSet(std::vector<Dist> dists) : dists_(std::move(dists)) {
  if (dists_.empty()) throw InvalidInput("instance needs at least one distribution");
  summarize();
  double lo = mass_;
  for (const Dist& d : dists_) lo = std::min(lo, d.total());
  if (mass_ - lo > total_tolerance(n_)) {
    std::ostringstream os;
    os.precision(17);
    os << "distribution totals disagree: " << lo << " vs " << mass_;
    throw InvalidInput(os.str());
  }
}

InstanceSet InstanceSet::residual(std::vector<Dist> dists) {
  if (dists.empty()) throw InvalidInput("instance needs at least one distribution");
  InstanceSet s;
  s.dists_ = std::move(dists);
  s.summarize();
  return s;
}

void InstanceSet::summarize() {
  n_ = 0;
  mass_ = 0.0;
  for (const Dist& d : dists_) {
    n_ = std::max(n_, d.size());
    mass_ = std::max(mass_, d.total());
  }
}

void Coupling::add(std::span<const std::uint32_t> indices, double mass) {
  if (indices.size() != m_) throw InvalidInput("coupling entry has wrong arity");
  indices_.insert(indices_.end(), indices.begin(), indices.end());
  masses_.push_back(mass);
}

void Coupling::reserve(std::size_t entries) {
  indices_.reserve(entries * m_);
  masses_.reserve(entries);
}

CostFn CostFn::power(double c) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidInput("power cost exponent must lie in (0,1)");
  return CostFn(Kind::Power, c);
}

double CostFn::cost(double x) const {
  if (x <= 0.0) return 0.0;
  if (kind_ == Kind::Shannon) return entropy_term(x);
  return std::pow(x, exponent_);
}

double CostFn::unit(double x) const {
  if (kind_ == Kind::Shannon) return -std::log2(x);
  return std::pow(x, exponent_ - 1.0);
}

std::string CostFn::name() const {
  if (kind_ == Kind::Shannon) return "shannon";
  std::ostringstream os;
  os << "power(" << exponent_ << ")";
  return os.str();
}

double entropy_term(double x) {
  if (x <= 0.0) return 0.0;
  return -x * std::log2(x);
}

double entropy(std::span<const double> masses) {
  double h = 0.0;
  for (double x : masses) h += entropy_term(x);
  return h;
}

double entropy(const Dist& d) { return entropy(d.masses()); }

double cost(std::span<const double> masses, const CostFn& f) {
  double total = 0.0;
  for (double x : masses) total += f.cost(x);
  return total;
}

double cost(const Dist& d, const CostFn& f) { return cost(d.masses(), f); }

double coupling_entropy(const Coupling& c) { return entropy(c.masses()); }

double coupling_cost(const Coupling& c, const CostFn& f) { return cost(c.masses(), f); }

std::vector<MarginalViolation> validate_coupling(const InstanceSet& s, const Coupling& c) {
  if (c.m() != s.m()) throw InvalidInput("coupling arity does not match instance");
  std::vector<std::vector<double>> sums(s.m());
  for (std::size_t k = 0; k < s.m(); ++k) sums[k].assign(s[k].size(), 0.0);
  for (std::size_t e = 0; e < c.size(); ++e) {
    auto idx = c.indices(e);
    for (std::size_t k = 0; k < s.m(); ++k) {
      if (idx[k] >= s[k].size()) {
        std::ostringstream os;
        os << "coupling entry " << e << " references state " << idx[k]
           << " of distribution " << k << " which has " << s[k].size() << " states";
        throw InvalidInput(os.str());
      }
      sums[k][idx[k]] += c.mass(e);
    }
  }
  const double tol = static_cast<double>(s.m() * std::max<std::size_t>(s.n(), 1)) * kEps;
  std::vector<MarginalViolation> out;
  for (std::size_t k = 0; k < s.m(); ++k) {
    for (std::size_t i = 0; i < s[k].size(); ++i) {
      if (std::abs(sums[k][i] - s[k][i]) > tol) out.push_back({k, i, s[k][i], sums[k][i]});
    }
  }
  return out;
}

std::size_t support_bound(const InstanceSet& s) { return s.n() * s.m() - (s.m() - 1); }

}  // namespace mec
