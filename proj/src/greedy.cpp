#include "mec/greedy.hpp"

#include <algorithm>
#include <limits>

#include "mec/bounds.hpp"

namespace mec {

namespace {

struct Residual {
  double mass;
  std::uint32_t state;
};

// Max-heap order: larger mass first, lower state index on ties.
inline bool before(const Residual& a, const Residual& b) {
  return a.mass > b.mass || (a.mass == b.mass && a.state < b.state);
}

class ResidualHeap {
 public:
  explicit ResidualHeap(const Dist& d) {
    nodes_.reserve(d.size());
    // A non-increasing array with increasing indices is already a heap.
    for (std::size_t i = 0; i < d.size(); ++i) {
      nodes_.push_back({d[i], static_cast<std::uint32_t>(i)});
    }
  }

  bool empty() const { return nodes_.empty(); }
  const Residual& top() const { return nodes_.front(); }

  /// Subtracts `amount` from the top state, dropping it once exhausted.
  void consume_top(double amount) {
    const double left = nodes_.front().mass - amount;
    if (left <= kEps) {
      nodes_.front() = nodes_.back();
      nodes_.pop_back();
    } else {
      nodes_.front().mass = left;
    }
    if (!nodes_.empty()) sift_down();
  }

 private:
  void sift_down() {
    const std::size_t size = nodes_.size();
    std::size_t i = 0;
    const Residual moving = nodes_[0];
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= size) break;
      if (child + 1 < size && before(nodes_[child + 1], nodes_[child])) ++child;
      if (!before(nodes_[child], moving)) break;
      nodes_[i] = nodes_[child];
      i = child;
    }
    nodes_[i] = moving;
  }

  std::vector<Residual> nodes_;
};

template <class Sink>
void run_greedy(const InstanceSet& s, Sink&& sink) {
  std::vector<ResidualHeap> heaps;
  heaps.reserve(s.m());
  for (const Dist& d : s.dists()) heaps.emplace_back(d);
  std::vector<std::uint32_t> states(s.m());
  double remaining = s.mass();

  for (;;) {
    double r = std::numeric_limits<double>::infinity();
    bool exhausted = false;
    for (const ResidualHeap& h : heaps) {
      if (h.empty()) {
        exhausted = true;
        break;
      }
      r = std::min(r, h.top().mass);
    }
    if (exhausted) break;
    for (std::size_t k = 0; k < heaps.size(); ++k) states[k] = heaps[k].top().state;
    sink(r, states, remaining);
    for (ResidualHeap& h : heaps) h.consume_top(r);
    remaining -= r;
  }
}

}  // namespace

GreedyResult greedy_coupling(const InstanceSet& s) {
  GreedyResult out{Coupling(s.m()), {}};
  out.coupling.reserve(support_bound(s));
  run_greedy(s, [&](double r, const std::vector<std::uint32_t>& states, double remaining) {
    out.coupling.add(states, r);
    out.trace.steps.push_back({r, states, remaining});
  });
  return out;
}

Dist greedy_sizes(const InstanceSet& s) {
  std::vector<double> sizes;
  run_greedy(s, [&](double r, const std::vector<std::uint32_t>&, double) { sizes.push_back(r); });
  return Dist(std::move(sizes));
}

std::vector<MonovariantPoint> monovariant_trace(const InstanceSet& s) {
  if (s.m() != 2) throw Unsupported("monovariant trace is defined for m = 2 only");
  const GreedyResult g = greedy_coupling(s);

  std::vector<std::vector<double>> residual(2);
  for (std::size_t k = 0; k < 2; ++k) {
    residual[k].assign(s[k].masses().begin(), s[k].masses().end());
  }

  std::vector<MonovariantPoint> out;
  out.reserve(g.trace.steps.size() + 1);
  out.push_back({0, profile_entropy(profile_curve(s))});
  double chosen_entropy = 0.0;
  for (std::size_t t = 0; t < g.trace.steps.size(); ++t) {
    const GreedyStep& step = g.trace.steps[t];
    for (std::size_t k = 0; k < 2; ++k) {
      double& left = residual[k][step.states[k]];
      left -= step.mass;
      if (left <= kEps) left = 0.0;
    }
    chosen_entropy += entropy_term(step.mass);
    const InstanceSet rest = InstanceSet::residual({Dist(residual[0]), Dist(residual[1])});
    out.push_back({t + 1, profile_entropy(profile_curve(rest)) + chosen_entropy});
  }
  return out;
}

}  // namespace mec
