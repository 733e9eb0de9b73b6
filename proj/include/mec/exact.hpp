#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mec/bounds.hpp"
#include "mec/core.hpp"

namespace mec {

// Exact minimum-entropy couplings of two distributions. All solvers index
// coupling entries by sorted state position, [i, j] with i into p and j into q.

struct ExactResult {
  Coupling coupling{2};
  /// Best entropy found, +inf if an incomplete run found nothing.
  double entropy = 0.0;
  /// False when a time budget cut the search short.
  bool complete = true;
  /// Search nodes (backtracking, enumeration) or table cells (DP).
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

/// Branch and bound over "couple state i of p with state j of q for
/// min(p_i, q_j)" moves, taken in non-increasing mass order. Subtrees are
/// cut when entropy so far plus the bound of the residual pair reaches the
/// incumbent.
ExactResult backtrack_exact(const Dist& p, const Dist& q,
                            BoundKind bound = BoundKind::MajorProfile,
                            std::optional<double> timeout_s = std::nullopt);

inline constexpr std::size_t kDpMaxVertices = 20;

/// Subset DP over rooted spanning trees of the bipartite state graph.
/// Memory is 2^V * V doubles for V = |p| + |q|; throws SizeLimitExceeded
/// above `max_vertices`. Without `reconstruct` the coupling is left empty.
ExactResult dp_exact(const Dist& p, const Dist& q, bool reconstruct = true,
                     std::size_t max_vertices = kDpMaxVertices);

inline constexpr std::size_t kEnumMaxVertices = 16;

/// Enumerates every spanning tree of the complete bipartite graph once, by
/// leaf peeling in smallest-leaf order, and keeps the best tree whose
/// peeled edge masses are all nonnegative.
ExactResult vertex_enum_exact(const Dist& p, const Dist& q,
                              std::optional<double> timeout_s = std::nullopt,
                              std::size_t max_vertices = kEnumMaxVertices);

enum class ExactSolver { Backtrack, Dp, Enum };

std::string_view to_string(ExactSolver solver);
/// Accepts "backtrack", "dp", "enum".
ExactSolver parse_exact_solver(std::string_view name);

struct ExactConfig {
  ExactSolver solver = ExactSolver::Backtrack;
  BoundKind bound = BoundKind::MajorProfile;
  std::optional<double> timeout_s;
};

ExactResult solve_exact(const Dist& p, const Dist& q, const ExactConfig& cfg = {});

/// Weight below which a coupling entry does not count as a forest edge.
inline constexpr double kForestTol = 1e-9;

class BipartiteForest {
 public:
  struct Edge {
    std::uint32_t left;
    std::uint32_t right;
    double weight;
  };

  /// Edges of an m = 2 coupling. Repeated index pairs are merged and
  /// weights at or below `tol` dropped.
  static BipartiteForest from_coupling(const Coupling& c, double tol = kForestTol);

  std::span<const Edge> edges() const { return edges_; }
  std::size_t left_degree(std::uint32_t i) const;
  std::size_t right_degree(std::uint32_t j) const;

  /// First edge that closes a cycle, if any.
  std::optional<Edge> cycle_edge() const;
  bool acyclic() const { return !cycle_edge().has_value(); }

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> left_deg_;
  std::vector<std::size_t> right_deg_;
};

struct ForestViolation {
  enum class Kind { Cycle, MaxEdgeWithoutLeaf };
  Kind kind;
  BipartiteForest::Edge edge;
  std::string describe() const;
};

/// nullopt when the positive-weight support is a forest in which every
/// maximum-weight edge (within kForestTol) has an endpoint of degree 1.
/// Throws Unsupported when c.m() != 2.
std::optional<ForestViolation> check_forest_leaf_property(const Coupling& c);

}  // namespace mec
