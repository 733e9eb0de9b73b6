#include <cmath>

#include "doctest.h"
#include "mec/core.hpp"
#include "oracles.hpp"

using namespace mec;

namespace {

InstanceSet w_instance() { return InstanceSet({Dist({0.5, 0.4, 0.1}), Dist({0.6, 0.2, 0.2})}); }

// W with masses [0.5, 0.2, 0.2, 0.1]; indices into sorted states.
Coupling w_coupling() {
  Coupling c(2);
  c.add({0, 0}, 0.5);
  c.add({1, 1}, 0.2);
  c.add({1, 2}, 0.2);
  c.add({2, 0}, 0.1);
  return c;
}

}  // namespace

TEST_CASE("dist sorts, trims and totals") {
  const Dist d({0.1, 0.0, 0.5, 1e-13, 0.4});
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 0.5);
  CHECK(d[1] == 0.4);
  CHECK(d[2] == 0.1);
  CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(Dist({0.3, 0.2}).total() == doctest::Approx(0.5));
}

TEST_CASE("dist rejects bad masses") {
  CHECK_THROWS_AS(Dist({0.5, -0.1}), InvalidInput);
  CHECK_THROWS_AS(Dist({0.5, NAN}), InvalidInput);
  CHECK_THROWS_AS(Dist({0.6, 0.6}), InvalidInput);
  CHECK_NOTHROW(Dist({0.5, 0.5 + 5e-13}));
}

TEST_CASE("instance set checks totals") {
  CHECK_THROWS_AS(InstanceSet({Dist({0.5, 0.5}), Dist({0.5, 0.4})}), InvalidInput);
  CHECK_THROWS_AS(InstanceSet(std::vector<Dist>{}), InvalidInput);
  const InstanceSet s = w_instance();
  CHECK(s.m() == 2);
  CHECK(s.n() == 3);
  CHECK(s.mass() == doctest::Approx(1.0));
  // Partial instances are fine as long as totals agree.
  CHECK_NOTHROW(InstanceSet({Dist({0.3, 0.1}), Dist({0.2, 0.2})}));
}

TEST_CASE("entropy values") {
  CHECK(entropy(Dist({0.5, 0.2, 0.2, 0.1})) == doctest::Approx(1.760964047443681).epsilon(1e-13));
  CHECK(entropy(Dist({1.0})) == 0.0);
  CHECK(entropy(Dist({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(entropy_term(0.0) == 0.0);
}

TEST_CASE("entropy is permutation and padding invariant") {
  const double a = entropy(Dist({0.1, 0.6, 0.3}));
  CHECK(entropy(Dist({0.3, 0.1, 0.0, 0.6, 0.0})) == doctest::Approx(a).epsilon(1e-15));
}

TEST_CASE("cost functions") {
  const CostFn sq = CostFn::power(0.5);
  CHECK(cost(Dist({0.25, 0.25, 0.25, 0.25}), sq) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(cost(Dist({0.5, 0.2, 0.2, 0.1}), sq) ==
        doctest::Approx(1.9177617382033013).epsilon(1e-13));
  CHECK(cost(Dist({0.5, 0.5}), CostFn::shannon()) == doctest::Approx(1.0));
  CHECK(sq.cost(0.0) == 0.0);
  CHECK(sq.unit(0.25) == doctest::Approx(2.0));
  CHECK(CostFn::shannon().unit(0.25) == doctest::Approx(2.0));
  CHECK_THROWS_AS(CostFn::power(1.0), InvalidInput);
  CHECK_THROWS_AS(CostFn::power(0.0), InvalidInput);
}

TEST_CASE("power costs are concave on a grid") {
  for (double c : {0.1, 0.5, 0.9}) {
    const CostFn f = CostFn::power(c);
    for (int i = 1; i < 99; ++i) {
      const double x = i / 100.0;
      const double mid = f.cost(x);
      const double chord = (f.cost(x - 0.01) + f.cost(x + 0.01)) / 2.0;
      CHECK(mid >= chord - 1e-15);
    }
  }
}

TEST_CASE("shannon cost equals entropy on random vectors") {
  std::vector<double> v{0.31, 0.07, 0.19, 0.43};
  const Dist d(v);
  CHECK(cost(d, CostFn::shannon()) == doctest::Approx(entropy(d)).epsilon(1e-12));
  CHECK(entropy(d) == doctest::Approx(oracle::entropy(v)).epsilon(1e-13));
}

TEST_CASE("coupling entropy and cost") {
  CHECK(coupling_entropy(w_coupling()) == doctest::Approx(1.760964047443681).epsilon(1e-13));
  Coupling one(2);
  one.add({0, 0}, 1.0);
  CHECK(coupling_entropy(one) == 0.0);
  Coupling half(2);
  half.add({0, 0}, 0.5);
  half.add({1, 1}, 0.5);
  CHECK(coupling_entropy(half) == doctest::Approx(1.0));
  CHECK(coupling_cost(half, CostFn::power(0.5)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("validate_coupling accepts the W coupling") {
  CHECK(validate_coupling(w_instance(), w_coupling()).empty());
}

TEST_CASE("validate_coupling accepts the identity coupling") {
  const Dist p({0.4, 0.35, 0.25});
  Coupling c(2);
  for (std::uint32_t i = 0; i < 3; ++i) c.add({i, i}, p[i]);
  CHECK(validate_coupling(InstanceSet({p, p}), c).empty());
}

TEST_CASE("validate_coupling reports a missing mass") {
  Coupling c(2);
  c.add({0, 0}, 0.5);
  c.add({1, 1}, 0.2);
  c.add({1, 2}, 0.2);
  const auto bad = validate_coupling(w_instance(), c);
  // The third state of the first distribution (0-based index 2) lost 0.1,
  // and so did the first state of the second.
  REQUIRE(bad.size() == 2);
  CHECK(bad[0].dist == 0);
  CHECK(bad[0].state == 2);
  CHECK(bad[0].expected == doctest::Approx(0.1));
  CHECK(bad[0].actual == 0.0);
  CHECK(bad[1].dist == 1);
  CHECK(bad[1].state == 0);
}

TEST_CASE("validate_coupling rejects bad indices") {
  Coupling c(2);
  c.add({3, 0}, 0.5);
  CHECK_THROWS_AS(validate_coupling(w_instance(), c), InvalidInput);
  Coupling three(3);
  three.add({0, 0, 0}, 1.0);
  CHECK_THROWS_AS(validate_coupling(w_instance(), three), InvalidInput);
  CHECK_THROWS_AS(c.add({0, 0, 0}, 0.1), InvalidInput);
}

TEST_CASE("support bound") {
  CHECK(support_bound(w_instance()) == 5);
  CHECK(support_bound(InstanceSet({Dist({1.0}), Dist({0.5, 0.5}), Dist({0.25, 0.25, 0.5})})) ==
        7);
}
