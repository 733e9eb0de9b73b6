#include "mec/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mec/timing.hpp"

namespace mec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double edge_cost(double mass) { return entropy_term(std::max(mass, 0.0)); }

void require_pair(const Dist& p, const Dist& q) {
  // Constructing the set checks that the totals agree.
  (void)InstanceSet({p, q});
}

struct Edge2 {
  std::uint32_t i;
  std::uint32_t j;
  double mass;
};

Coupling to_coupling(const std::vector<Edge2>& edges) {
  Coupling c(2);
  c.reserve(edges.size());
  for (const Edge2& e : edges) {
    if (e.mass > kEps) c.add({e.i, e.j}, e.mass);
  }
  return c;
}

// ---------------------------------------------------------------- backtrack

class Backtracker {
 public:
  Backtracker(const Dist& p, const Dist& q, BoundKind bound, std::optional<double> timeout_s)
      : bound_(bound), deadline_(timeout_s) {
    res_[0].assign(p.masses().begin(), p.masses().end());
    res_[1].assign(q.masses().begin(), q.masses().end());
    alive_[0] = res_[0].size();
    alive_[1] = res_[1].size();
    moves_.resize(res_[0].size() + res_[1].size() + 1);
  }

  ExactResult run() {
    Stopwatch clock;
    search(0.0, kInf, 0);
    ExactResult out;
    out.coupling = to_coupling(best_path_);
    out.entropy = best_;
    out.complete = !deadline_.hit();
    out.nodes = nodes_;
    out.seconds = clock.seconds();
    return out;
  }

 private:
  double residual_bound() const {
    if (bound_ == BoundKind::Zero) return 0.0;
    const InstanceSet rest = InstanceSet::residual({Dist(res_[0]), Dist(res_[1])});
    switch (bound_) {
      case BoundKind::Meet:
        return entropy(majorization_meet(rest));
      case BoundKind::Profile:
        return profile_entropy(profile_curve(rest));
      case BoundKind::MajorProfile: {
        // Taking the max with the profile value keeps this bound pointwise
        // at least the Profile one under rounding as well.
        const ProfileCurve pc = profile_curve(rest);
        return std::max(entropy(major_profile(pc)), profile_entropy(pc));
      }
      case BoundKind::Zero:
        break;
    }
    return 0.0;
  }

  // A remaining state whose residual ties an earlier remaining state of the
  // same distribution gives a symmetric branch.
  bool shadowed(int side, std::size_t i) const {
    const std::vector<double>& r = res_[side];
    for (std::size_t k = 0; k < i; ++k) {
      if (r[k] > 0.0 && std::abs(r[k] - r[i]) <= kEps) return true;
    }
    return false;
  }

  void search(double g, double last, std::size_t depth) {
    ++nodes_;
    if (deadline_.expired()) return;
    if (g + residual_bound() >= best_) return;
    if (alive_[0] == 0 || alive_[1] == 0) {
      // Whatever is left on the other side is rounding dust.
      best_ = g;
      best_path_ = path_;
      return;
    }

    std::vector<Edge2>& cand = moves_[depth];
    cand.clear();
    for (std::size_t i = 0; i < res_[0].size(); ++i) {
      if (res_[0][i] <= 0.0 || shadowed(0, i)) continue;
      for (std::size_t j = 0; j < res_[1].size(); ++j) {
        if (res_[1][j] <= 0.0 || shadowed(1, j)) continue;
        const double m = std::min(res_[0][i], res_[1][j]);
        if (m <= last + kEps) {
          cand.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), m});
        }
      }
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [](const Edge2& a, const Edge2& b) { return a.mass > b.mass; });

    for (std::size_t k = 0; k < cand.size(); ++k) {
      const Edge2 mv = moves_[depth][k];
      double& a = res_[0][mv.i];
      double& b = res_[1][mv.j];
      const double saved_a = a;
      const double saved_b = b;
      a = consume(a, mv.mass);
      b = consume(b, mv.mass);
      if (a == 0.0) --alive_[0];
      if (b == 0.0) --alive_[1];
      path_.push_back(mv);

      search(g + edge_cost(mv.mass), mv.mass, depth + 1);

      path_.pop_back();
      if (a == 0.0) ++alive_[0];
      if (b == 0.0) ++alive_[1];
      a = saved_a;
      b = saved_b;
      if (deadline_.hit()) return;
    }
  }

  static double consume(double have, double take) {
    const double left = have - take;
    return left <= kEps ? 0.0 : left;
  }

  BoundKind bound_;
  Deadline deadline_;
  std::vector<double> res_[2];
  std::size_t alive_[2];
  std::vector<std::vector<Edge2>> moves_;
  std::vector<Edge2> path_;
  std::vector<Edge2> best_path_;
  double best_ = kInf;
  std::uint64_t nodes_ = 0;
};

// ----------------------------------------------------------------------- dp

class SubsetDp {
 public:
  SubsetDp(const Dist& p, const Dist& q) : n1_(p.size()), v_(p.size() + q.size()) {
    mass_.reserve(v_);
    for (double x : p.masses()) mass_.push_back(x);
    for (double x : q.masses()) mass_.push_back(x);
    const std::size_t subsets = std::size_t{1} << v_;
    signed_.assign(subsets, 0.0);
    for (std::size_t s = 1; s < subsets; ++s) {
      const unsigned low = static_cast<unsigned>(std::countr_zero(s));
      signed_[s] = signed_[s & (s - 1)] + (low < n1_ ? mass_[low] : -mass_[low]);
    }
    table_.assign(subsets * v_, kInf);
  }

  void fill() {
    const std::size_t subsets = std::size_t{1} << v_;
    for (std::size_t v = 0; v < v_; ++v) at(std::size_t{1} << v, v) = 0.0;
    for (std::size_t s = 1; s < subsets; ++s) {
      if (std::has_single_bit(s)) continue;
      for (std::size_t bits = s; bits; bits &= bits - 1) {
        const std::size_t v = static_cast<std::size_t>(std::countr_zero(bits));
        if (rem(s, v) < -kEps) continue;
        at(s, v) = std::min(best_attach(s, v).value, best_merge(s, v).value);
      }
    }
  }

  double optimum() const {
    const std::size_t full = (std::size_t{1} << v_) - 1;
    double best = kInf;
    for (std::size_t v = 0; v < v_; ++v) best = std::min(best, at(full, v));
    return best;
  }

  std::vector<Edge2> reconstruct() const {
    const std::size_t full = (std::size_t{1} << v_) - 1;
    std::size_t root = 0;
    for (std::size_t v = 1; v < v_; ++v) {
      if (at(full, v) < at(full, root)) root = v;
    }
    std::vector<Edge2> edges;
    unwind(full, root, edges);
    return edges;
  }

  std::uint64_t cells() const { return table_.size(); }

 private:
  struct Choice {
    double value = kInf;
    std::size_t a = 0;  // attach: old root; merge: first part
  };

  double& at(std::size_t s, std::size_t v) { return table_[s * v_ + v]; }
  double at(std::size_t s, std::size_t v) const { return table_[s * v_ + v]; }
  bool left(std::size_t v) const { return v < n1_; }
  double rem(std::size_t s, std::size_t v) const { return left(v) ? signed_[s] : -signed_[s]; }

  // v joins as the new root above the tree on S \ {v} rooted at u, taking
  // all of u's remaining mass over the edge (u, v).
  Choice best_attach(std::size_t s, std::size_t v) const {
    const std::size_t r = s ^ (std::size_t{1} << v);
    Choice c;
    for (std::size_t bits = r; bits; bits &= bits - 1) {
      const std::size_t u = static_cast<std::size_t>(std::countr_zero(bits));
      if (left(u) == left(v)) continue;
      const double sub = at(r, u);
      if (sub == kInf) continue;
      const double w = rem(r, u);
      if (w < -kEps) continue;
      const double val = sub + edge_cost(w);
      if (val < c.value) c = {val, u};
    }
    return c;
  }

  // Two trees sharing only the root v. Fixing the lowest vertex of S \ {v}
  // inside the first part visits each unordered split once.
  Choice best_merge(std::size_t s, std::size_t v) const {
    const std::size_t bv = std::size_t{1} << v;
    const std::size_t r = s ^ bv;
    Choice c;
    const std::size_t low = r & (~r + 1);
    const std::size_t rest = r ^ low;
    if (rest == 0) return c;
    for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
      const std::size_t t = sub | low;
      if (t != r) {
        const double val = at(t | bv, v) + at((r ^ t) | bv, v);
        if (val < c.value) c = {val, t};
      }
      if (sub == 0) break;
    }
    return c;
  }

  void unwind(std::size_t s, std::size_t v, std::vector<Edge2>& edges) const {
    if (std::has_single_bit(s)) return;
    const double target = at(s, v);
    const Choice attach = best_attach(s, v);
    if (attach.value == target) {
      const std::size_t r = s ^ (std::size_t{1} << v);
      const std::size_t u = attach.a;
      edges.push_back(make_edge(u, v, rem(r, u)));
      unwind(r, u, edges);
      return;
    }
    const Choice merge = best_merge(s, v);
    const std::size_t bv = std::size_t{1} << v;
    const std::size_t r = s ^ bv;
    unwind(merge.a | bv, v, edges);
    unwind((r ^ merge.a) | bv, v, edges);
  }

  Edge2 make_edge(std::size_t a, std::size_t b, double w) const {
    if (!left(a)) std::swap(a, b);
    return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b - n1_), w};
  }

  std::size_t n1_;
  std::size_t v_;
  std::vector<double> mass_;
  std::vector<double> signed_;
  std::vector<double> table_;
};

// --------------------------------------------------------------------- enum

// Prüfer-style decoding in reverse: at each step the peeled vertex must be
// the smallest leaf of the current tree. Every present vertex below it is
// therefore still internal and has to be hit again before it is peeled;
// `owed_` tracks that obligation. Each spanning tree is produced once.
class TreeEnumerator {
 public:
  TreeEnumerator(const Dist& p, const Dist& q, std::optional<double> timeout_s)
      : n1_(p.size()), deadline_(timeout_s) {
    for (double x : p.masses()) res_.push_back(x);
    for (double x : q.masses()) res_.push_back(x);
    const std::size_t v = res_.size();
    present_.assign(v, 1);
    owed_.assign(v, 0);
    side_count_[0] = n1_;
    side_count_[1] = v - n1_;
    marks_.resize(v + 1);
  }

  ExactResult run() {
    Stopwatch clock;
    ExactResult out;
    if (res_.size() >= 2) peel(res_.size(), 0, 0.0);
    out.coupling = to_coupling(best_path_);
    out.entropy = best_;
    out.complete = !deadline_.hit();
    out.nodes = nodes_;
    out.seconds = clock.seconds();
    return out;
  }

 private:
  bool left(std::size_t v) const { return v < n1_; }

  void peel(std::size_t present, std::size_t owed, double g) {
    ++nodes_;
    if (deadline_.expired()) return;
    if (present == 2) {
      finish(g);
      return;
    }
    if (owed > present - 2) return;

    const std::size_t n = res_.size();
    for (std::size_t v = 0; v < n; ++v) {
      if (!present_[v]) continue;
      if (owed_[v]) continue;
      const int sv = left(v) ? 0 : 1;
      if (side_count_[sv] == 1) continue;
      const double m = std::max(res_[v], 0.0);

      present_[v] = 0;
      --side_count_[sv];
      std::vector<std::size_t>& marked = marks_[present];
      marked.clear();
      for (std::size_t w = 0; w < v; ++w) {
        if (present_[w] && !owed_[w]) {
          owed_[w] = 1;
          marked.push_back(w);
        }
      }
      const std::size_t owed_after_mark = owed + marked.size();

      for (std::size_t u = 0; u < n; ++u) {
        if (!present_[u] || left(u) == left(v)) continue;
        const double after = res_[u] - m;
        if (after < -kEps) continue;
        const char was_owed = owed_[u];
        owed_[u] = 0;
        const double saved = res_[u];
        res_[u] = after;
        path_.push_back(make_edge(v, u, m));

        peel(present - 1, owed_after_mark - (was_owed ? 1 : 0), g + edge_cost(m));

        path_.pop_back();
        res_[u] = saved;
        owed_[u] = was_owed;
        if (deadline_.hit()) break;
      }

      for (std::size_t w : marked) owed_[w] = 0;
      ++side_count_[sv];
      present_[v] = 1;
      if (deadline_.hit()) return;
    }
  }

  void finish(double g) {
    std::size_t a = res_.size();
    std::size_t b = res_.size();
    for (std::size_t v = 0; v < res_.size(); ++v) {
      if (!present_[v]) continue;
      if (owed_[v]) return;
      (a == res_.size() ? a : b) = v;
    }
    if (left(a) == left(b)) return;
    if (res_[a] < -kEps || res_[b] < -kEps) return;
    const double m = std::max(res_[a], 0.0);
    const double total = g + edge_cost(m);
    if (total < best_) {
      best_ = total;
      best_path_ = path_;
      best_path_.push_back(make_edge(a, b, m));
    }
  }

  Edge2 make_edge(std::size_t a, std::size_t b, double w) const {
    if (!left(a)) std::swap(a, b);
    return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b - n1_), w};
  }

  std::size_t n1_;
  Deadline deadline_;
  std::vector<double> res_;
  std::vector<char> present_;
  std::vector<char> owed_;
  std::size_t side_count_[2];
  std::vector<std::vector<std::size_t>> marks_;  // indexed by present count
  std::vector<Edge2> path_;
  std::vector<Edge2> best_path_;
  double best_ = kInf;
  std::uint64_t nodes_ = 0;
};

ExactResult trivial_result(const Dist& p, const Dist& q) {
  // One side empty: nothing to couple. One state on a side: the coupling is
  // forced and equals the other distribution.
  ExactResult out;
  if (p.empty() || q.empty()) return out;
  if (p.size() == 1) {
    for (std::uint32_t j = 0; j < q.size(); ++j) out.coupling.add({0, j}, q[j]);
  } else {
    for (std::uint32_t i = 0; i < p.size(); ++i) out.coupling.add({i, 0}, p[i]);
  }
  out.entropy = coupling_entropy(out.coupling);
  out.nodes = 1;
  return out;
}

bool trivial(const Dist& p, const Dist& q) {
  return p.size() <= 1 || q.size() <= 1;
}

}  // namespace

ExactResult backtrack_exact(const Dist& p, const Dist& q, BoundKind bound,
                            std::optional<double> timeout_s) {
  require_pair(p, q);
  return Backtracker(p, q, bound, timeout_s).run();
}

ExactResult dp_exact(const Dist& p, const Dist& q, bool reconstruct, std::size_t max_vertices) {
  require_pair(p, q);
  const std::size_t v = p.size() + q.size();
  if (v > max_vertices) {
    std::ostringstream os;
    os << "dp solver handles at most " << max_vertices << " states in total, got " << v;
    throw SizeLimitExceeded(os.str());
  }
  if (trivial(p, q)) return trivial_result(p, q);
  Stopwatch clock;
  SubsetDp dp(p, q);
  dp.fill();
  ExactResult out;
  out.entropy = dp.optimum();
  if (reconstruct && out.entropy < kInf) out.coupling = to_coupling(dp.reconstruct());
  out.nodes = dp.cells();
  out.seconds = clock.seconds();
  return out;
}

ExactResult vertex_enum_exact(const Dist& p, const Dist& q, std::optional<double> timeout_s,
                              std::size_t max_vertices) {
  require_pair(p, q);
  const std::size_t v = p.size() + q.size();
  if (v > max_vertices) {
    std::ostringstream os;
    os << "vertex enumeration handles at most " << max_vertices << " states in total, got "
       << v;
    throw SizeLimitExceeded(os.str());
  }
  if (trivial(p, q)) return trivial_result(p, q);
  return TreeEnumerator(p, q, timeout_s).run();
}

std::string_view to_string(ExactSolver solver) {
  switch (solver) {
    case ExactSolver::Backtrack:
      return "backtrack";
    case ExactSolver::Dp:
      return "dp";
    case ExactSolver::Enum:
      return "enum";
  }
  return "?";
}

ExactSolver parse_exact_solver(std::string_view name) {
  if (name == "backtrack") return ExactSolver::Backtrack;
  if (name == "dp") return ExactSolver::Dp;
  if (name == "enum") return ExactSolver::Enum;
  throw InvalidInput("unknown solver '" + std::string(name) + "'");
}

ExactResult solve_exact(const Dist& p, const Dist& q, const ExactConfig& cfg) {
  switch (cfg.solver) {
    case ExactSolver::Backtrack:
      return backtrack_exact(p, q, cfg.bound, cfg.timeout_s);
    case ExactSolver::Dp:
      return dp_exact(p, q);
    case ExactSolver::Enum:
      return vertex_enum_exact(p, q, cfg.timeout_s);
  }
  throw InvalidInput("unknown solver");
}

// ------------------------------------------------------------------- forest

BipartiteForest BipartiteForest::from_coupling(const Coupling& c, double tol) {
  if (c.m() != 2) throw Unsupported("forest view needs a coupling of two distributions");
  std::vector<Edge> raw;
  raw.reserve(c.size());
  for (std::size_t e = 0; e < c.size(); ++e) {
    auto idx = c.indices(e);
    raw.push_back({idx[0], idx[1], c.mass(e)});
  }
  std::sort(raw.begin(), raw.end(), [](const Edge& a, const Edge& b) {
    return a.left != b.left ? a.left < b.left : a.right < b.right;
  });
  BipartiteForest f;
  for (const Edge& e : raw) {
    if (!f.edges_.empty() && f.edges_.back().left == e.left && f.edges_.back().right == e.right) {
      f.edges_.back().weight += e.weight;
    } else {
      f.edges_.push_back(e);
    }
  }
  std::erase_if(f.edges_, [tol](const Edge& e) { return e.weight <= tol; });
  for (const Edge& e : f.edges_) {
    if (e.left >= f.left_deg_.size()) f.left_deg_.resize(e.left + 1, 0);
    if (e.right >= f.right_deg_.size()) f.right_deg_.resize(e.right + 1, 0);
    ++f.left_deg_[e.left];
    ++f.right_deg_[e.right];
  }
  return f;
}

std::size_t BipartiteForest::left_degree(std::uint32_t i) const {
  return i < left_deg_.size() ? left_deg_[i] : 0;
}

std::size_t BipartiteForest::right_degree(std::uint32_t j) const {
  return j < right_deg_.size() ? right_deg_[j] : 0;
}

std::optional<BipartiteForest::Edge> BipartiteForest::cycle_edge() const {
  const std::size_t nl = left_deg_.size();
  std::vector<std::size_t> parent(nl + right_deg_.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : edges_) {
    const std::size_t a = find(e.left);
    const std::size_t b = find(nl + e.right);
    if (a == b) return e;
    parent[a] = b;
  }
  return std::nullopt;
}

std::string ForestViolation::describe() const {
  std::ostringstream os;
  os.precision(12);
  os << (kind == Kind::Cycle ? "cycle closed by edge " : "maximum-weight edge without a leaf ")
     << "(" << edge.left << ", " << edge.right << ") weight " << edge.weight;
  return os.str();
}

std::optional<ForestViolation> check_forest_leaf_property(const Coupling& c) {
  const BipartiteForest f = BipartiteForest::from_coupling(c);
  if (auto e = f.cycle_edge()) return ForestViolation{ForestViolation::Kind::Cycle, *e};
  double wmax = 0.0;
  for (const auto& e : f.edges()) wmax = std::max(wmax, e.weight);
  for (const auto& e : f.edges()) {
    if (e.weight < wmax - kForestTol) continue;
    if (f.left_degree(e.left) != 1 && f.right_degree(e.right) != 1) {
      return ForestViolation{ForestViolation::Kind::MaxEdgeWithoutLeaf, e};
    }
  }
  return std::nullopt;
}

}  // namespace mec
