#include "mec/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "mec/bounds.hpp"
#include "mec/exact.hpp"
#include "mec/generators.hpp"
#include "mec/greedy.hpp"
#include "mec/guarantees.hpp"
#include "mec/io.hpp"
#include "mec/local_search.hpp"

namespace mec {

bool VerifyReport::ok() const {
  for (const VerifyCheck& c : checks) {
    if (c.failures > 0) return false;
  }
  return true;
}

namespace {

constexpr double kTol = 1e-9;

class Recorder {
 public:
  explicit Recorder(std::string name) { check_.name = std::move(name); }

  void record(bool ok, const std::function<std::string()>& describe) {
    ++check_.cases;
    if (ok) return;
    if (check_.failures++ == 0) check_.counterexample = describe();
  }

  VerifyCheck done() { return std::move(check_); }

 private:
  VerifyCheck check_;
};

std::string dump(const InstanceSet& s) { return instance_to_json(s).dump(); }

std::string dump(const InstanceSet& s, const std::string& what) {
  return what + " on " + dump(s);
}

template <class Fn>
void for_random(const VerifyConfig& cfg, std::uint64_t salt, std::initializer_list<std::size_t> ms,
                std::size_t n_lo, std::size_t n_hi, Fn&& fn) {
  SplitMix64 rng(cfg.seed ^ (salt * 0x9e3779b97f4a7c15ULL));
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const std::size_t m = *(ms.begin() + rng.below(ms.size()));
    const std::size_t n = n_lo + rng.below(n_hi - n_lo + 1);
    fn(gen_dirichlet(n, m, rng));
  }
}

Coupling corrupted(const Coupling& c) {
  Coupling out(c.m());
  for (std::size_t e = 0; e < c.size(); ++e) {
    out.add(c.indices(e), c.mass(e) + (e == 0 ? 1e-3 : 0.0));
  }
  return out;
}

VerifyCheck check_greedy_marginals(const VerifyConfig& cfg) {
  Recorder rec("greedy couplings are valid and small");
  bool first = true;
  for_random(cfg, 1, {2, 3, 5}, 2, 8, [&](const InstanceSet& s) {
    Coupling c = greedy_coupling(s).coupling;
    if (first && cfg.inject_corrupt) c = corrupted(c);
    first = false;
    const auto bad = validate_coupling(s, c);
    rec.record(bad.empty() && c.size() <= support_bound(s), [&] {
      std::ostringstream os;
      os << "support " << c.size() << ", " << bad.size() << " marginal violations";
      if (!bad.empty()) {
        os.precision(15);
        os << " (dist " << bad[0].dist << " state " << bad[0].state << ": expected "
           << bad[0].expected << ", got " << bad[0].actual << ")";
      }
      return dump(s, os.str());
    });
  });
  return rec.done();
}

VerifyCheck check_bound_chain(const VerifyConfig& cfg) {
  Recorder rec("meet, profile <= major-profile <= greedy");
  for_random(cfg, 2, {2, 3, 5}, 3, 8, [&](const InstanceSet& s) {
    const double meet = lower_bound(s, BoundKind::Meet);
    const double prof = lower_bound(s, BoundKind::Profile);
    const double mp = lower_bound(s, BoundKind::MajorProfile);
    const double greedy = entropy(greedy_sizes(s));
    const bool ok = meet >= -kTol && meet <= mp + kTol && prof <= mp + kTol && mp <= greedy + kTol;
    rec.record(ok, [&] {
      std::ostringstream os;
      os.precision(15);
      os << "meet " << meet << " profile " << prof << " major " << mp << " greedy " << greedy;
      return dump(s, os.str());
    });
  });
  return rec.done();
}

VerifyCheck check_additive(const VerifyConfig& cfg) {
  Recorder rec("greedy - profile within additive guarantees");
  const double general = (1.0 + std::numbers::log2e) / 2.0;
  const double c2 = small_m_constant(2).value;
  const double c3 = small_m_constant(3).value;
  const double c5 = small_m_constant(5).value;
  for_random(cfg, 3, {2, 3, 5}, 3, 8, [&](const InstanceSet& s) {
    const double gap = entropy(greedy_sizes(s)) - lower_bound(s, BoundKind::Profile);
    const double small = s.m() == 2 ? c2 : s.m() == 3 ? c3 : c5;
    rec.record(gap <= small + 1e-6 && gap <= general + kTol, [&] {
      std::ostringstream os;
      os.precision(15);
      os << "gap " << gap << " against " << small;
      return dump(s, os.str());
    });
  });
  return rec.done();
}

VerifyCheck check_monovariant(const VerifyConfig& cfg) {
  Recorder rec("monovariant step bound");
  const double slope = std::numbers::log2e / std::numbers::e;
  for_random(cfg, 4, {2}, 2, 8, [&](const InstanceSet& s) {
    const auto trace = monovariant_trace(s);
    const auto g = greedy_coupling(s);
    for (std::size_t t = 0; t + 1 < trace.size(); ++t) {
      const double rise = trace[t + 1].value - trace[t].value;
      const double allowed = slope * g.trace.steps[t].mass + kTol;
      rec.record(rise <= allowed, [&] {
        std::ostringstream os;
        os.precision(15);
        os << "step " << t << " rises " << rise << " > " << allowed;
        return dump(s, os.str());
      });
    }
  });
  return rec.done();
}

VerifyCheck check_remaining_mass(const VerifyConfig& cfg) {
  Recorder rec("remaining mass <= advanced Rem-Mass");
  for_random(cfg, 5, {2, 3, 5}, 2, 8, [&](const InstanceSet& s) {
    const auto g = greedy_coupling(s);
    for (const GreedyStep& step : g.trace.steps) {
      const double cap = rem_mass_advanced(s, step.mass);
      rec.record(step.remaining_before <= cap + kTol, [&] {
        std::ostringstream os;
        os.precision(15);
        os << "remaining " << step.remaining_before << " > " << cap << " at mass " << step.mass;
        return dump(s, os.str());
      });
    }
  });
  return rec.done();
}

VerifyCheck check_solvers(const VerifyConfig& cfg) {
  Recorder rec("exact solvers agree and sit between bounds and greedy");
  for_random(cfg, 6, {2}, 2, cfg.max_exact_n, [&](const InstanceSet& s) {
    std::vector<double> values;
    for (BoundKind b : {BoundKind::Zero, BoundKind::Meet, BoundKind::Profile,
                        BoundKind::MajorProfile}) {
      values.push_back(backtrack_exact(s[0], s[1], b).entropy);
    }
    values.push_back(dp_exact(s[0], s[1], false).entropy);
    values.push_back(vertex_enum_exact(s[0], s[1]).entropy);
    const double opt = values.front();
    bool ok = true;
    for (double v : values) ok = ok && std::abs(v - opt) <= kTol;
    ok = ok && lower_bound(s, BoundKind::MajorProfile) <= opt + kTol;
    ok = ok && opt <= entropy(greedy_sizes(s)) + kTol;
    rec.record(ok, [&] {
      std::ostringstream os;
      os.precision(15);
      os << "values";
      for (double v : values) os << ' ' << v;
      return dump(s, os.str());
    });
  });
  return rec.done();
}

VerifyCheck check_exact_structure(const VerifyConfig& cfg) {
  Recorder rec("exact couplings are valid forests");
  for_random(cfg, 7, {2}, 2, cfg.max_exact_n, [&](const InstanceSet& s) {
    for (ExactSolver solver : {ExactSolver::Backtrack, ExactSolver::Dp, ExactSolver::Enum}) {
      const ExactResult r = solve_exact(s[0], s[1], {solver, BoundKind::MajorProfile, {}});
      const auto bad = validate_coupling(s, r.coupling);
      const auto forest = check_forest_leaf_property(r.coupling);
      const bool ok = bad.empty() && !forest && r.coupling.size() <= support_bound(s) &&
                      std::abs(coupling_entropy(r.coupling) - r.entropy) <= kTol;
      rec.record(ok, [&] {
        std::string what = std::string(to_string(solver)) + ": ";
        if (!bad.empty()) what += "marginal violation";
        if (forest) what += forest->describe();
        return dump(s, what);
      });
    }
  });
  return rec.done();
}

VerifyCheck check_known_gaps() {
  Recorder rec("fixed counter-examples reproduce their gaps");
  for (const KnownGap& k : known_gap_instances()) {
    const double gap = evaluate(k.instance, parse_gap_objective(k.objective));
    rec.record(std::abs(gap - k.expected) <= 1e-5, [&] {
      std::ostringstream os;
      os.precision(10);
      os << k.name << " " << k.objective << " = " << gap << ", expected " << k.expected;
      return os.str();
    });
  }
  const InstanceSet geo = gen_geometric_gap(40);
  const Coupling opt = geometric_gap_opt_coupling(40);
  const double gap = entropy(greedy_sizes(geo)) - coupling_entropy(opt);
  rec.record(std::abs(gap - 0.4) <= 1e-6 && validate_coupling(geo, opt).empty(), [&] {
    std::ostringstream os;
    os.precision(12);
    os << "geometric pair gap " << gap;
    return os.str();
  });
  return rec.done();
}

VerifyCheck check_concave(const VerifyConfig& cfg) {
  Recorder rec("power-cost greedy within multiplicative factor");
  for (double c : {0.3, 0.5, 0.7}) {
    const CostFn f = CostFn::power(c);
    for_random(cfg, 8, {2, 3, 5}, 2, 8, [&](const InstanceSet& s) {
      const MultCheck m = check_mult_guarantee(s, f);
      rec.record(m.within, [&] {
        std::ostringstream os;
        os.precision(15);
        os << f.name() << " ratio " << (m.ratio ? *m.ratio : std::nan("")) << " > " << m.factor;
        return dump(s, os.str());
      });
    });
  }
  return rec.done();
}

}  // namespace

VerifyReport verify_suite(const VerifyConfig& cfg) {
  VerifyReport report;
  report.checks.push_back(check_greedy_marginals(cfg));
  report.checks.push_back(check_bound_chain(cfg));
  report.checks.push_back(check_additive(cfg));
  report.checks.push_back(check_monovariant(cfg));
  report.checks.push_back(check_remaining_mass(cfg));
  report.checks.push_back(check_solvers(cfg));
  report.checks.push_back(check_exact_structure(cfg));
  report.checks.push_back(check_known_gaps());
  report.checks.push_back(check_concave(cfg));
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  for (const VerifyCheck& c : report.checks) {
    out << (c.failures == 0 ? "ok    " : "FAIL  ") << c.name << " (" << c.cases << " cases";
    if (c.failures > 0) out << ", " << c.failures << " failed";
    out << ")\n";
    if (c.failures > 0) out << "      first failure: " << c.counterexample << '\n';
  }
}

}  // namespace mec
