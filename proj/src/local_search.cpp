#include "mec/local_search.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "mec/bounds.hpp"
#include "mec/exact.hpp"
#include "mec/generators.hpp"
#include "mec/greedy.hpp"

namespace mec {

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::Greedy:
      return "greedy";
    case Quantity::Opt:
      return "opt";
    case Quantity::Meet:
      return "meet";
    case Quantity::Profile:
      return "profile";
    case Quantity::MajorProfile:
      return "major-profile";
  }
  return "?";
}

Quantity parse_quantity(std::string_view name) {
  if (name == "greedy") return Quantity::Greedy;
  if (name == "opt") return Quantity::Opt;
  if (name == "meet") return Quantity::Meet;
  if (name == "profile") return Quantity::Profile;
  if (name == "major-profile" || name == "majorprofile") return Quantity::MajorProfile;
  throw InvalidInput("unknown quantity '" + std::string(name) + "'");
}

std::string GapObjective::name() const {
  return std::string(to_string(minuend)) + "-" + std::string(to_string(subtrahend));
}

GapObjective parse_gap_objective(std::string_view text) {
  // "major-profile" contains a dash itself, so try every split point.
  for (std::size_t cut = text.find('-'); cut != std::string_view::npos;
       cut = text.find('-', cut + 1)) {
    try {
      return {parse_quantity(text.substr(0, cut)), parse_quantity(text.substr(cut + 1))};
    } catch (const InvalidInput&) {
    }
  }
  throw InvalidInput("objective must look like <a>-<b>, got '" + std::string(text) + "'");
}

double evaluate(const InstanceSet& s, Quantity q) {
  switch (q) {
    case Quantity::Greedy:
      return entropy(greedy_sizes(s));
    case Quantity::Opt:
      if (s.m() != 2) throw Unsupported("the exact optimum is available for m = 2 only");
      return dp_exact(s[0], s[1], false).entropy;
    case Quantity::Meet:
      return lower_bound(s, BoundKind::Meet);
    case Quantity::Profile:
      return lower_bound(s, BoundKind::Profile);
    case Quantity::MajorProfile:
      return lower_bound(s, BoundKind::MajorProfile);
  }
  return 0.0;
}

double evaluate(const InstanceSet& s, const GapObjective& objective) {
  return evaluate(s, objective.minuend) - evaluate(s, objective.subtrahend);
}

namespace {

using Masses = std::vector<std::vector<double>>;

Masses masses_of(const InstanceSet& s) {
  Masses out;
  for (const Dist& d : s.dists()) out.emplace_back(d.masses().begin(), d.masses().end());
  return out;
}

InstanceSet instance_of(const Masses& ms) {
  std::vector<Dist> dists;
  dists.reserve(ms.size());
  for (const auto& v : ms) dists.emplace_back(v);
  return InstanceSet(std::move(dists));
}

}  // namespace

GapSearchResult local_search_gap(const GapSearchConfig& cfg) {
  if (cfg.objective.needs_opt() && (cfg.m != 2 || cfg.n > kGapSearchMaxOptN)) {
    throw InvalidInput("objectives with the optimum need m = 2 and n <= 7");
  }
  if (cfg.n < 2 || cfg.m < 1) throw InvalidInput("local search needs n >= 2 and m >= 1");
  if (!(cfg.delta_min > 0.0 && cfg.delta_min <= cfg.delta_max)) {
    throw InvalidInput("perturbation range must satisfy 0 < delta_min <= delta_max");
  }

  SplitMix64 rng(cfg.seed);
  std::optional<GapSearchResult> best;
  std::size_t evaluations = 0;

  const std::size_t restarts = std::max<std::size_t>(cfg.restarts, 1);
  for (std::size_t r = 0; r < restarts; ++r) {
    // Odd restarts climb again from the best point so far with fresh large steps.
    InstanceSet start = (r == 0 && cfg.start) ? *cfg.start
                        : (r % 2 == 1)        ? best->best
                                              : gen_dirichlet(cfg.n, cfg.m, rng);
    Masses cur = masses_of(start);
    double cur_gap = evaluate(start, cfg.objective);
    ++evaluations;
    if (!best || cur_gap > best->gap) best = GapSearchResult{start, cur_gap, 0};

    const double log_lo = std::log(cfg.delta_min);
    for (std::size_t step = 0; step < cfg.steps; ++step) {
      // The largest step shrinks linearly over the restart.
      const double frac = 1.0 - static_cast<double>(step) / static_cast<double>(cfg.steps);
      const double log_hi = std::log(std::max(cfg.delta_min, cfg.delta_max * frac));
      const std::size_t k = rng.below(cur.size());
      std::vector<double>& d = cur[k];
      if (d.size() < 2) continue;
      const std::size_t a = rng.below(d.size());
      std::size_t b = rng.below(d.size() - 1);
      if (b >= a) ++b;
      const double delta = std::exp(log_lo + (log_hi - log_lo) * rng.uniform());
      if (d[b] - delta <= kEps) continue;

      const double saved_a = d[a];
      const double saved_b = d[b];
      d[a] += delta;
      d[b] -= delta;
      std::optional<InstanceSet> trial;
      try {
        trial.emplace(instance_of(cur));
      } catch (const InvalidInput&) {
      }
      double gap = -std::numeric_limits<double>::infinity();
      if (trial) {
        gap = evaluate(*trial, cfg.objective);
        ++evaluations;
      }
      if (gap > cur_gap) {
        cur_gap = gap;
        if (gap > best->gap) best = GapSearchResult{*trial, gap, 0};
      } else {
        d[a] = saved_a;
        d[b] = saved_b;
      }
    }
  }
  best->evaluations = evaluations;
  return *best;
}

}  // namespace mec
