#include "mec/generators.hpp"

#include <cmath>

namespace mec {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  // 53 random bits, shifted half a step off zero.
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

std::vector<double> sample_dirichlet(std::size_t n, SplitMix64& rng) {
  std::vector<double> x(n);
  double total = 0.0;
  for (double& v : x) {
    v = -std::log(rng.uniform());
    total += v;
  }
  for (double& v : x) v /= total;
  return x;
}

InstanceSet gen_dirichlet(std::size_t n, std::size_t m, SplitMix64& rng) {
  if (n == 0 || m == 0) throw InvalidInput("dirichlet instance needs n, m >= 1");
  std::vector<Dist> dists;
  dists.reserve(m);
  for (std::size_t k = 0; k < m; ++k) dists.emplace_back(sample_dirichlet(n, rng));
  return InstanceSet(std::move(dists));
}

InstanceSet gen_dirichlet(std::size_t n, std::size_t m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return gen_dirichlet(n, m, rng);
}

InstanceSet gen_fib_lucas(int t) {
  if (t < 3 || t > 40) throw InvalidInput("fibonacci/lucas index must lie in [3, 40]");
  // F_1 = F_2 = 1; L_0 = 2, L_1 = 1.
  std::uint64_t f0 = 1, f1 = 1;
  for (int i = 3; i <= t; ++i) {
    const std::uint64_t f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
  std::uint64_t l0 = 2, l1 = 1;
  for (int i = 2; i <= t - 1; ++i) {
    const std::uint64_t l2 = l0 + l1;
    l0 = l1;
    l1 = l2;
  }
  return InstanceSet({Dist::uniform(f1), Dist::uniform(l1)});
}

InstanceSet gen_uniform_family(std::size_t n_max) {
  if (n_max == 0) throw InvalidInput("uniform family needs n_max >= 1");
  std::vector<Dist> dists;
  dists.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) dists.push_back(Dist::uniform(n));
  return InstanceSet(std::move(dists));
}

namespace {

std::vector<double> halving_tail(std::size_t length) {
  std::vector<double> tail(length);
  for (std::size_t k = 0; k < length; ++k) tail[k] = 0.15 * std::ldexp(1.0, -static_cast<int>(k));
  tail.back() *= 2.0;
  return tail;
}

void check_geometric_k(std::size_t k) {
  if (k < 5 || k > 41) throw InvalidInput("geometric gap length must lie in [5, 41]");
}

}  // namespace

InstanceSet gen_geometric_gap(std::size_t k) {
  check_geometric_k(k);
  const std::vector<double> tail = halving_tail(k - 3);
  std::vector<double> p1{0.4, 0.3};
  std::vector<double> p2{0.3, 0.2, 0.2};
  p1.insert(p1.end(), tail.begin(), tail.end());
  p2.insert(p2.end(), tail.begin(), tail.end());
  return InstanceSet({Dist(std::move(p1)), Dist(std::move(p2))});
}

Coupling geometric_gap_opt_coupling(std::size_t k) {
  check_geometric_k(k);
  const std::vector<double> tail = halving_tail(k - 3);
  Coupling c(2);
  c.add({0, 1}, 0.2);
  c.add({0, 2}, 0.2);
  c.add({1, 0}, 0.3);
  for (std::uint32_t t = 0; t < tail.size(); ++t) c.add({2 + t, 3 + t}, tail[t]);
  return c;
}

std::vector<KnownGap> known_gap_instances() {
  const InstanceSet a({
      Dist({0.3199940773, 0.3199844734, 0.1200540976, 0.1200022716, 0.1199650801}),
      Dist({0.2000218248, 0.2000211548, 0.2000202369, 0.1999737730, 0.1999630105}),
  });
  const InstanceSet b({
      Dist({0.2128275903, 0.2122898591, 0.2119627146, 0.2119384365, 0.1509813995}),
      Dist({0.2747693214, 0.2739951951, 0.2739769942, 0.1161585898, 0.0610998995}),
  });
  const InstanceSet c({
      Dist({0.4081266587, 0.3060949942, 0.1530474970, 0.0765237476, 0.0382618746,
            0.0179452279}),
      Dist({0.3060949942, 0.2040633294, 0.2040633294, 0.1530474970, 0.0765237476,
            0.0382618746, 0.0179452278}),
  });
  return {
      {"five-state-meet", "greedy-meet", 0.662463, a},
      {"five-state-meet", "opt-meet", 0.662405, a},
      {"five-state-profile", "opt-profile", 0.389941, b},
      {"five-state-profile", "opt-major-profile", 0.354485, b},
      {"six-seven-state", "greedy-opt", 0.395053, c},
  };
}

InstanceSet heuristics_counterexample() {
  return InstanceSet({
      Dist({0.5540050843, 0.1984459548, 0.1288780486, 0.0396890356, 0.0789189118,
            0.0000629649}),
      Dist({0.2770967899, 0.2769100227, 0.1984729975, 0.1288783386, 0.0789194408,
            0.0397224105}),
  });
}

}  // namespace mec
