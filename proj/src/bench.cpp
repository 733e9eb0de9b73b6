#include "mec/bench.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "mec/generators.hpp"

namespace mec {

std::string BenchAlgorithm::id() const {
  if (solver != ExactSolver::Backtrack) return std::string(to_string(solver));
  return "backtrack[" + std::string(to_string(bound)) + "]";
}

BenchAlgorithm parse_bench_algorithm(std::string_view id) {
  constexpr std::string_view prefix = "backtrack[";
  if (id.starts_with(prefix) && id.ends_with("]")) {
    const auto inner = id.substr(prefix.size(), id.size() - prefix.size() - 1);
    return {ExactSolver::Backtrack, parse_bound_kind(inner)};
  }
  return {parse_exact_solver(id), BoundKind::MajorProfile};
}

std::vector<BenchAlgorithm> all_bench_algorithms() {
  return {
      {ExactSolver::Enum, BoundKind::Zero},
      {ExactSolver::Backtrack, BoundKind::Zero},
      {ExactSolver::Backtrack, BoundKind::Meet},
      {ExactSolver::Backtrack, BoundKind::Profile},
      {ExactSolver::Backtrack, BoundKind::MajorProfile},
      {ExactSolver::Dp, BoundKind::Zero},
  };
}

namespace {

InstanceSet bench_instance(std::uint64_t seed, std::size_t n, std::size_t run) {
  SplitMix64 mix(seed ^ (static_cast<std::uint64_t>(n) << 40) ^ static_cast<std::uint64_t>(run));
  return gen_dirichlet(n, 2, mix.next());
}

// Seconds taken, or nullopt for a timeout or size refusal.
std::optional<double> timed_solve(const BenchAlgorithm& alg, const InstanceSet& s,
                                  double timeout_s) {
  try {
    const ExactResult r = solve_exact(s[0], s[1], {alg.solver, alg.bound, timeout_s});
    if (!r.complete || r.seconds > timeout_s) return std::nullopt;
    return r.seconds;
  } catch (const SizeLimitExceeded&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<BenchRow> bench_runtimes(const BenchConfig& cfg) {
  if (cfg.runs == 0) throw InvalidInput("benchmark needs at least one run per cell");
  std::vector<BenchRow> rows;
  for (std::size_t n : cfg.ns) {
    std::vector<InstanceSet> instances;
    instances.reserve(cfg.runs);
    for (std::size_t run = 0; run < cfg.runs; ++run) {
      instances.push_back(bench_instance(cfg.seed, n, run));
    }
    for (const BenchAlgorithm& alg : cfg.algorithms) {
      if (cfg.warmup) (void)timed_solve(alg, instances.front(), cfg.timeout_s);
      std::vector<double> times;
      std::size_t timeouts = 0;
      for (const InstanceSet& s : instances) {
        if (auto t = timed_solve(alg, s, cfg.timeout_s)) {
          times.push_back(*t);
        } else {
          ++timeouts;
        }
      }
      BenchRow row{alg.id(), n, n, cfg.runs, std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN(), timeouts};
      if (!times.empty()) {
        double sum = 0.0;
        for (double t : times) sum += t;
        row.mean_s = sum / static_cast<double>(times.size());
        double sq = 0.0;
        for (double t : times) sq += (t - row.mean_s) * (t - row.mean_s);
        row.stddev_s = times.size() > 1 ? std::sqrt(sq / static_cast<double>(times.size() - 1)) : 0.0;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRow& r : rows) {
    out << r.algorithm << ',' << r.n1 << ',' << r.n2 << ',' << r.runs << ',';
    if (r.completed() == 0) {
      out << ">timeout,>timeout";
    } else {
      out << r.mean_s << ',' << r.stddev_s;
    }
    out << ',' << r.timeouts << '\n';
  }
}

}  // namespace mec
