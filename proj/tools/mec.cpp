// Command-line front end for the coupling library.
//
// Exit codes: 0 success, 1 invariant failure, 2 invalid input,
// 3 size limit or timeout.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mec/bench.hpp"
#include "mec/bounds.hpp"
#include "mec/exact.hpp"
#include "mec/generators.hpp"
#include "mec/greedy.hpp"
#include "mec/guarantees.hpp"
#include "mec/io.hpp"
#include "mec/local_search.hpp"
#include "mec/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvariant = 1;
constexpr int kInvalid = 2;
constexpr int kLimit = 3;

struct InputOpts {
  std::string path;
  bool normalize = false;

  mec::InstanceSet load() const {
    return mec::load_instance(path, normalize ? std::optional<bool>(true) : std::nullopt);
  }
};

void add_input(CLI::App* cmd, InputOpts& in) {
  cmd->add_option("instance", in.path, "Instance JSON file")->required();
  cmd->add_flag("--normalize", in.normalize, "Rescale each distribution to total 1");
}

// "a..b" or a single integer.
std::pair<long, long> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const long v = std::stol(text);
      return {v, v};
    }
    return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw mec::InvalidInput("expected a range like 2..11, got '" + text + "'");
  }
}

mec::CostFn parse_cost(const std::string& text) {
  if (text == "shannon") return mec::CostFn::shannon();
  if (text.starts_with("power:")) {
    try {
      return mec::CostFn::power(std::stod(text.substr(6)));
    } catch (const std::invalid_argument&) {
    }
  }
  throw mec::InvalidInput("cost must be 'shannon' or 'power:<c>', got '" + text + "'");
}

void write_coupling(const std::string& out, const mec::Coupling& c) {
  if (out.empty()) return;
  if (out == "-") {
    std::cout << mec::coupling_to_json(c).dump(2) << '\n';
  } else {
    mec::save_coupling(out, c);
  }
}

int run_couple(const InputOpts& in, const std::string& cost_name, bool trace, const std::string& out) {
  const mec::InstanceSet s = in.load();
  const mec::CostFn f = parse_cost(cost_name);
  const mec::GreedyResult g = mec::greedy_coupling(s);
  const auto bad = mec::validate_coupling(s, g.coupling);
  std::cout << "m: " << s.m() << "\nn: " << s.n() << '\n';
  std::cout << "entropy: " << mec::coupling_entropy(g.coupling) << '\n';
  if (f.kind() != mec::CostFn::Kind::Shannon) {
    std::cout << "cost[" << f.name() << "]: " << mec::coupling_cost(g.coupling, f) << '\n';
  }
  std::cout << "support: " << g.coupling.size() << " (bound " << mec::support_bound(s) << ")\n";
  if (trace) {
    std::cout << "step,mass,remaining_before,states\n";
    for (std::size_t t = 0; t < g.trace.steps.size(); ++t) {
      const mec::GreedyStep& step = g.trace.steps[t];
      std::cout << t + 1 << ',' << step.mass << ',' << step.remaining_before << ',';
      for (std::size_t k = 0; k < step.states.size(); ++k) std::cout << (k ? " " : "") << step.states[k];
      std::cout << '\n';
    }
  }
  write_coupling(out, g.coupling);
  if (!bad.empty()) {
    std::cerr << "greedy coupling violates " << bad.size() << " marginals\n";
    return kInvariant;
  }
  return kOk;
}

int run_bound(const InputOpts& in, const std::string& kind, const std::string& cost_name) {
  const mec::InstanceSet s = in.load();
  const double greedy = mec::entropy(mec::greedy_sizes(s));
  std::vector<mec::BoundKind> kinds;
  if (kind == "all") {
    kinds = {mec::BoundKind::Meet, mec::BoundKind::Profile, mec::BoundKind::MajorProfile};
  } else {
    kinds = {mec::parse_bound_kind(kind)};
  }
  for (mec::BoundKind k : kinds) {
    std::cout << mec::to_string(k) << ": " << mec::lower_bound(s, k) << '\n';
  }
  std::cout << "greedy: " << greedy << '\n';
  if (!cost_name.empty()) {
    const mec::CostFn f = parse_cost(cost_name);
    std::cout << "profile-cost[" << f.name() << "]: "
              << mec::profile_cost(mec::profile_curve(s), f) << '\n';
  }
  return kOk;
}

int run_exact(const InputOpts& in, const std::string& solver, const std::string& bound,
              std::optional<double> timeout, const std::string& out) {
  const mec::InstanceSet s = in.load();
  if (s.m() != 2) throw mec::Unsupported("exact solvers handle two distributions only");
  mec::ExactConfig cfg{mec::parse_exact_solver(solver), mec::parse_bound_kind(bound), timeout};
  const mec::ExactResult r = mec::solve_exact(s[0], s[1], cfg);
  std::cout << "solver: " << solver;
  if (cfg.solver == mec::ExactSolver::Backtrack) std::cout << " [" << bound << "]";
  std::cout << "\nentropy: " << r.entropy << '\n';
  std::cout << "support: " << r.coupling.size() << '\n';
  std::cout << (cfg.solver == mec::ExactSolver::Dp ? "states: " : "nodes: ") << r.nodes << '\n';
  std::cout << "seconds: " << r.seconds << '\n';
  std::cout << "complete: " << (r.complete ? "yes" : "no") << '\n';
  write_coupling(out, r.coupling);
  if (!r.complete) {
    std::cerr << "time budget exhausted; result is the best found so far\n";
    return kLimit;
  }
  if (!mec::validate_coupling(s, r.coupling).empty()) {
    std::cerr << "solver output violates the marginals\n";
    return kInvariant;
  }
  return kOk;
}

int run_constants(const std::string& m_range, const std::vector<double>& powers) {
  if (powers.empty()) {
    const auto [lo, hi] = parse_range(m_range);
    if (lo < 2 || hi < lo) throw mec::InvalidInput("m range must satisfy 2 <= lo <= hi");
    std::cout << "m,constant_bits\n";
    for (long m = lo; m <= hi; ++m) {
      std::cout << m << ',' << std::fixed << std::setprecision(6)
                << mec::small_m_constant(static_cast<std::size_t>(m)).value << '\n';
    }
    std::cout << "limit," << std::numbers::log2e << '\n';
    return kOk;
  }
  std::cout << "c,r,factor_m2,factor_general\n" << std::setprecision(9);
  for (double c : powers) {
    const mec::MultRatio r = mec::mult_ratio_two(mec::CostFn::power(c));
    std::cout << c << ',' << r.r << ',' << r.factor << ',' << mec::mult_guarantee_general(c)
              << '\n';
  }
  return kOk;
}

int run_bench(const std::string& out, const std::string& n_range, std::size_t runs,
              double timeout, std::uint64_t seed, const std::vector<std::string>& algorithms) {
  mec::BenchConfig cfg;
  const auto [lo, hi] = parse_range(n_range);
  if (lo < 1 || hi < lo) throw mec::InvalidInput("n range must satisfy 1 <= lo <= hi");
  cfg.ns.clear();
  for (long n = lo; n <= hi; ++n) cfg.ns.push_back(static_cast<std::size_t>(n));
  cfg.runs = runs;
  cfg.timeout_s = timeout;
  cfg.seed = seed;
  if (!algorithms.empty()) {
    cfg.algorithms.clear();
    for (const auto& a : algorithms) cfg.algorithms.push_back(mec::parse_bench_algorithm(a));
  }
  const auto rows = mec::bench_runtimes(cfg);
  if (out.empty() || out == "-") {
    mec::write_bench_csv(std::cout, rows);
  } else {
    std::ofstream f(out);
    if (!f) throw mec::InvalidInput("cannot write " + out);
    mec::write_bench_csv(f, rows);
  }
  return kOk;
}

int run_gaps(const std::string& objective, const std::string& instance, bool known,
             mec::GapSearchConfig cfg) {
  std::cout << std::setprecision(9);
  if (known) {
    for (const mec::KnownGap& k : mec::known_gap_instances()) {
      const double gap = mec::evaluate(k.instance, mec::parse_gap_objective(k.objective));
      std::cout << k.name << ' ' << k.objective << ": " << gap << " (expected " << k.expected
                << ")\n";
    }
    const mec::InstanceSet geo = mec::gen_geometric_gap(40);
    std::cout << "geometric greedy-opt: "
              << mec::entropy(mec::greedy_sizes(geo)) -
                     mec::coupling_entropy(mec::geometric_gap_opt_coupling(40))
              << " (expected 0.4)\n";
    return kOk;
  }
  cfg.objective = mec::parse_gap_objective(objective);
  if (!instance.empty()) {
    const mec::InstanceSet s = mec::load_instance(instance);
    if (cfg.steps == 0) {
      std::cout << cfg.objective.name() << ": " << mec::evaluate(s, cfg.objective) << '\n';
      return kOk;
    }
    cfg.start = s;
    cfg.n = s.n();
    cfg.m = s.m();
  }
  const mec::GapSearchResult r = mec::local_search_gap(cfg);
  std::cout << cfg.objective.name() << ": " << r.gap << '\n';
  std::cout << "evaluations: " << r.evaluations << '\n';
  std::cout << mec::instance_to_json(r.best).dump() << '\n';
  return kOk;
}

int run_verify(const mec::VerifyConfig& cfg) {
  const mec::VerifyReport report = mec::verify_suite(cfg);
  mec::print_report(std::cout, report);
  return report.ok() ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-entropy couplings: greedy, lower bounds, exact solvers"};
  app.require_subcommand(1);
  std::cout << std::setprecision(12);

  InputOpts couple_in;
  std::string couple_cost = "shannon";
  std::string couple_out;
  bool couple_trace = false;
  auto* couple = app.add_subcommand("couple", "Greedy coupling of an instance");
  add_input(couple, couple_in);
  couple->add_option("--cost", couple_cost, "shannon or power:<c>");
  couple->add_flag("--trace", couple_trace, "Print every greedy step");
  couple->add_option("--out", couple_out, "Write the coupling as JSON ('-' for stdout)");

  InputOpts bound_in;
  std::string bound_kind = "all";
  std::string bound_cost;
  auto* bound = app.add_subcommand("bound", "Lower bounds on the optimal coupling entropy");
  add_input(bound, bound_in);
  bound->add_option("--kind", bound_kind, "all, meet, profile or major-profile");
  bound->add_option("--cost", bound_cost, "Also print the profile cost bound for power:<c>");

  InputOpts exact_in;
  std::string exact_solver = "backtrack";
  std::string exact_bound = "major-profile";
  std::optional<double> exact_timeout;
  std::string exact_out;
  auto* exact = app.add_subcommand("exact", "Exact minimum-entropy coupling of two distributions");
  add_input(exact, exact_in);
  exact->add_option("--solver", exact_solver, "backtrack, dp or enum");
  exact->add_option("--bound", exact_bound, "Pruning bound for backtrack");
  exact->add_option("--timeout", exact_timeout, "Wall-clock budget in seconds");
  exact->add_option("--out", exact_out, "Write the coupling as JSON ('-' for stdout)");

  std::string m_range = "2..11";
  std::vector<double> powers;
  auto* constants = app.add_subcommand("constants", "Approximation guarantee constants");
  constants->add_option("--m-range", m_range, "Range of m for additive constants");
  constants->add_option("--power", powers, "Power-cost exponents for multiplicative factors");

  std::string bench_out;
  std::string bench_n = "4..6";
  std::size_t bench_runs = 100;
  double bench_timeout = 120.0;
  std::uint64_t bench_seed = 1;
  std::vector<std::string> bench_algs;
  auto* bench = app.add_subcommand("bench", "Runtime table of the exact solvers");
  bench->add_option("--out", bench_out, "CSV output path ('-' for stdout)");
  bench->add_option("--n", bench_n, "Range of state counts");
  bench->add_option("--runs", bench_runs, "Instances per cell");
  bench->add_option("--timeout", bench_timeout, "Per-run budget in seconds");
  bench->add_option("--seed", bench_seed);
  bench->add_option("--algorithm", bench_algs, "e.g. dp, enum, backtrack[meet]");

  std::string gap_objective = "greedy-meet";
  std::string gap_instance;
  bool gap_known = false;
  mec::GapSearchConfig gap_cfg;
  auto* gaps = app.add_subcommand("gaps", "Search for or evaluate entropy gaps");
  gaps->add_option("--objective", gap_objective, "<a>-<b> over greedy, opt, meet, profile, major-profile");
  gaps->add_option("--instance", gap_instance, "Start from (or with --steps 0 just evaluate) this instance");
  gaps->add_flag("--known", gap_known, "Evaluate the built-in counter-examples");
  gaps->add_option("--n", gap_cfg.n);
  gaps->add_option("--m", gap_cfg.m);
  gaps->add_option("--restarts", gap_cfg.restarts);
  gaps->add_option("--steps", gap_cfg.steps);
  gaps->add_option("--seed", gap_cfg.seed);

  mec::VerifyConfig verify_cfg;
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("--seed", verify_cfg.seed);
  verify->add_option("--instances", verify_cfg.instances);
  verify->add_option("--max-exact-n", verify_cfg.max_exact_n);
  verify->add_flag("--inject-corrupt", verify_cfg.inject_corrupt,
                   "Corrupt one coupling to exercise failure reporting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*couple) return run_couple(couple_in, couple_cost, couple_trace, couple_out);
    if (*bound) return run_bound(bound_in, bound_kind, bound_cost);
    if (*exact) return run_exact(exact_in, exact_solver, exact_bound, exact_timeout, exact_out);
    if (*constants) return run_constants(m_range, powers);
    if (*bench) return run_bench(bench_out, bench_n, bench_runs, bench_timeout, bench_seed, bench_algs);
    if (*gaps) return run_gaps(gap_objective, gap_instance, gap_known, gap_cfg);
    if (*verify) return run_verify(verify_cfg);
  } catch (const mec::SizeLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kLimit;
  } catch (const mec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
