#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mec/bounds.hpp"
#include "mec/generators.hpp"
#include "mec/greedy.hpp"
#include "oracles.hpp"

using namespace mec;

namespace {

InstanceSet w_instance() { return InstanceSet({Dist({0.5, 0.4, 0.1}), Dist({0.6, 0.2, 0.2})}); }

oracle::Vecs vecs(const InstanceSet& s) {
  oracle::Vecs out;
  for (const Dist& d : s.dists()) out.emplace_back(d.masses().begin(), d.masses().end());
  return out;
}

}  // namespace

TEST_CASE("greedy on W") {
  const GreedyResult g = greedy_coupling(w_instance());
  REQUIRE(g.coupling.size() == 4);
  const double want[] = {0.5, 0.2, 0.2, 0.1};
  for (std::size_t e = 0; e < 4; ++e) CHECK(g.coupling.mass(e) == doctest::Approx(want[e]));
  CHECK(validate_coupling(w_instance(), g.coupling).empty());
  // First step pairs the two largest states.
  CHECK(g.trace.steps[0].states == std::vector<std::uint32_t>{0, 0});
  CHECK(g.trace.steps[0].remaining_before == doctest::Approx(1.0));
  CHECK(g.trace.steps[1].remaining_before == doctest::Approx(0.5));
}

TEST_CASE("greedy on two uniforms") {
  const InstanceSet s({Dist::uniform(2), Dist::uniform(3)});
  const Dist sizes = greedy_sizes(s);
  REQUIRE(sizes.size() == 4);
  CHECK(sizes[0] == doctest::Approx(1.0 / 3));
  CHECK(sizes[1] == doctest::Approx(1.0 / 3));
  CHECK(sizes[2] == doctest::Approx(1.0 / 6));
  CHECK(sizes[3] == doctest::Approx(1.0 / 6));
  CHECK(entropy(sizes) == doctest::Approx(1.918295834054490).epsilon(1e-13));
}

TEST_CASE("greedy on identical marginals is the diagonal") {
  const Dist p({0.45, 0.3, 0.15, 0.1});
  const GreedyResult g = greedy_coupling(InstanceSet({p, p}));
  REQUIRE(g.coupling.size() == p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    CHECK(g.coupling.indices(i)[0] == i);
    CHECK(g.coupling.indices(i)[1] == i);
  }
  CHECK(coupling_entropy(g.coupling) == doctest::Approx(entropy(p)));
}

TEST_CASE("ties inside a distribution go to the lowest index") {
  const GreedyResult g = greedy_coupling(InstanceSet({Dist({0.25, 0.25, 0.25, 0.25}), Dist({1.0})}));
  for (std::uint32_t e = 0; e < 4; ++e) CHECK(g.coupling.indices(e)[0] == e);
}

TEST_CASE("greedy matches the scan oracle on random instances") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + rng.below(4);
    const std::size_t n = 1 + rng.below(9);
    const InstanceSet s = gen_dirichlet(n, m, rng);
    const Dist sizes = greedy_sizes(s);
    oracle::Vec want = oracle::greedy_sizes(vecs(s));
    std::sort(want.rbegin(), want.rend());
    const GreedyResult g = greedy_coupling(s);
    REQUIRE(sizes.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(sizes[i] == doctest::Approx(want[i]).epsilon(1e-12));
    CHECK(validate_coupling(s, g.coupling).empty());
    CHECK(g.coupling.size() <= support_bound(s));
    for (std::size_t t = 1; t < g.trace.steps.size(); ++t) {
      CHECK(g.trace.steps[t].mass <= g.trace.steps[t - 1].mass + 1e-15);
    }
  }
}

TEST_CASE("monovariant on W") {
  const auto trace = monovariant_trace(w_instance());
  REQUIRE(trace.size() == 5);
  CHECK(trace.front().value == doctest::Approx(1.660964047443681).epsilon(1e-12));
  CHECK(trace.back().value == doctest::Approx(1.760964047443681).epsilon(1e-12));
  const double slope = std::numbers::log2e / std::numbers::e;
  const GreedyResult g = greedy_coupling(w_instance());
  for (std::size_t t = 0; t + 1 < trace.size(); ++t) {
    CHECK(trace[t + 1].value - trace[t].value <= slope * g.trace.steps[t].mass + 1e-9);
    CHECK(trace[t + 1].value >= trace[t].value - 1e-12);
  }
}

TEST_CASE("monovariant is flat on identical marginals") {
  const Dist p({0.5, 0.3, 0.2});
  const auto trace = monovariant_trace(InstanceSet({p, p}));
  for (const auto& pt : trace) CHECK(pt.value == doctest::Approx(entropy(p)).epsilon(1e-12));
}

TEST_CASE("monovariant needs two distributions") {
  CHECK_THROWS_AS(monovariant_trace(InstanceSet({Dist({1.0}), Dist({1.0}), Dist({1.0})})),
                  Unsupported);
}

TEST_CASE("remaining mass stays under the advanced certificate") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = std::vector<std::size_t>{2, 3, 5}[rng.below(3)];
    const InstanceSet s = gen_dirichlet(2 + rng.below(7), m, rng);
    for (const GreedyStep& step : greedy_coupling(s).trace.steps) {
      CHECK(step.remaining_before <= rem_mass_advanced(s, step.mass) + 1e-9);
    }
  }
}
