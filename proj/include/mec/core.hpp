#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mec {

/// Absolute mass tolerance used for trimming, marginal checks and
/// feasibility tests throughout the library.
inline constexpr double kEps = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: negative mass, mismatched totals, bad indices.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this input (e.g. m != 2).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// The instance exceeds a solver's size budget.
class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A possibly partial discrete distribution. Masses are kept sorted
/// non-increasing and entries below kEps are dropped on construction.
class Dist {
 public:
  Dist() = default;

  /// Accepts masses in any order. Throws InvalidInput on a negative or
  /// non-finite mass, or when the total exceeds 1 + kEps.
  explicit Dist(std::vector<double> masses);

  static Dist uniform(std::size_t states);

  std::span<const double> masses() const { return masses_; }
  std::size_t size() const { return masses_.size(); }
  bool empty() const { return masses_.empty(); }
  double total() const { return total_; }
  double operator[](std::size_t i) const { return masses_[i]; }

  friend bool operator==(const Dist&, const Dist&) = default;

 private:
  std::vector<double> masses_;
  double total_ = 0.0;
};

/// A set of m >= 1 distributions sharing the same total mass.
class InstanceSet {
 public:
  /// Throws InvalidInput when empty or when two totals differ by more
  /// than total_tolerance(n).
  explicit InstanceSet(std::vector<Dist> dists);

  /// Skips the totals check. For residual instances inside solvers, whose
  /// totals agree only up to accumulated trimming dust.
  static InstanceSet residual(std::vector<Dist> dists);

  std::size_t m() const { return dists_.size(); }
  /// Largest state count over all distributions.
  std::size_t n() const { return n_; }
  double mass() const { return mass_; }
  std::span<const Dist> dists() const { return dists_; }
  const Dist& operator[](std::size_t k) const { return dists_[k]; }

  /// Allowed disagreement between totals: one kEps per state, since
  /// trimming may shed up to kEps from each.
  static double total_tolerance(std::size_t n);

 private:
  InstanceSet() = default;
  void summarize();

  std::vector<Dist> dists_;
  std::size_t n_ = 0;
  double mass_ = 0.0;
};

/// Sparse joint distribution. Entry e maps to state indices()[k] of the
/// k-th marginal (indices into the sorted masses).
class Coupling {
 public:
  explicit Coupling(std::size_t m = 0) : m_(m) {}

  std::size_t m() const { return m_; }
  std::size_t size() const { return masses_.size(); }
  bool empty() const { return masses_.empty(); }

  void add(std::span<const std::uint32_t> indices, double mass);
  void add(std::initializer_list<std::uint32_t> indices, double mass) {
    add(std::span<const std::uint32_t>(indices.begin(), indices.size()), mass);
  }
  void reserve(std::size_t entries);

  std::span<const std::uint32_t> indices(std::size_t e) const {
    return {indices_.data() + e * m_, m_};
  }
  double mass(std::size_t e) const { return masses_[e]; }
  std::span<const double> masses() const { return masses_; }

 private:
  std::size_t m_;
  std::vector<std::uint32_t> indices_;
  std::vector<double> masses_;
};

/// Concave nonnegative cost with f(0) = 0: Shannon x lg(1/x), or x^c.
class CostFn {
 public:
  enum class Kind { Shannon, Power };

  static CostFn shannon() { return CostFn(Kind::Shannon, 0.0); }
  /// Throws InvalidInput unless 0 < c < 1.
  static CostFn power(double c);

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }

  double cost(double x) const;
  /// cost(x) / x, the per-unit-mass cost.
  double unit(double x) const;

  std::string name() const;

 private:
  CostFn(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}

  Kind kind_;
  double exponent_;
};

/// x lg(1/x) with 0 lg(1/0) = 0.
double entropy_term(double x);

double entropy(std::span<const double> masses);
double entropy(const Dist& d);
double cost(std::span<const double> masses, const CostFn& f);
double cost(const Dist& d, const CostFn& f);

double coupling_entropy(const Coupling& c);
double coupling_cost(const Coupling& c, const CostFn& f);

struct MarginalViolation {
  std::size_t dist;
  std::size_t state;
  double expected;
  double actual;
};

/// Empty result means every marginal matches within m * n * kEps.
/// Throws InvalidInput when an index is out of range or m mismatches.
std::vector<MarginalViolation> validate_coupling(const InstanceSet& s,
                                                 const Coupling& c);

/// Support bound n*m - (m-1) shared by greedy and vertex solutions.
std::size_t support_bound(const InstanceSet& s);

}  // namespace mec
