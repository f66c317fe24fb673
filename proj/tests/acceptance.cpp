// Acceptance gate: eight statistical/structural criteria, each printed as a
// single [PASS]/[FAIL] line with indented evidence. All tolerances are pinned
// here or in ExperimentConfig::defaults(); nothing is tuned at runtime. The
// process exits 0 only if every criterion passes.
//
// Known-red criteria on the pinned grids are produced honestly rather than
// widened away; the README's validation table discusses each of them.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "tvar/csv.hpp"
#include "tvar/experiments.hpp"
#include "tvar/oracle.hpp"
#include "tvar/path.hpp"
#include "tvar/simulate.hpp"
#include "tvar/truncvar.hpp"

namespace {

using tvar::ExperimentConfig;
using tvar::SamplePath;
using Kind = tvar::ExperimentConfig::Kind;

std::string fmt(double x) { return tvar::format_double(x); }

std::string fmt1(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", x);
  return buf;
}

/// One criterion: collects pass/fail sub-lines, prints itself when done.
class Gate {
 public:
  Gate(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void sub(bool pass, const std::string& text) {
    ok_ = ok_ && pass;
    lines_.push_back(std::string("    ") + (pass ? "ok   " : "FAIL ") + text);
  }

  void sub_le(const std::string& what, double value, double bound) {
    sub(value <= bound, what + " = " + fmt(value) + " (bound " + fmt(bound) + ")");
  }

  void record(const tvar::StatRecord& r) {
    sub(r.pass, r.name + ": estimate=" + fmt(r.estimate) +
                    " target=" + fmt(r.target) + " tolerance=" +
                    fmt(r.tolerance) + " [" + r.provenance + "]");
  }

  void records(const std::vector<tvar::StatRecord>& rs) {
    for (const auto& r : rs) record(r);
  }

  void info(const std::string& text) {
    lines_.push_back("    note " + text);
  }

  bool finish() {
    std::cout << (ok_ ? "[PASS]" : "[FAIL]") << " criterion " << id_ << ": "
              << title_ << "\n";
    for (const auto& l : lines_) std::cout << l << "\n";
    std::cout.flush();
    return ok_;
  }

 private:
  int id_;
  std::string title_;
  bool ok_ = true;
  std::vector<std::string> lines_;
};

void announce(const std::string& text) {
  std::cout << "... " << text << std::endl;
}

double plain_tv(const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) s += std::abs(v[i] - v[i - 1]);
  return s;
}

double plain_up(const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) s += std::max(v[i] - v[i - 1], 0.0);
  return s;
}

double plain_down(const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) s += std::max(v[i - 1] - v[i], 0.0);
  return s;
}

// ---------------------------------------------------------------------------
// criterion 1: exactness of the streaming computation against the DP oracle
// ---------------------------------------------------------------------------

bool criterion1() {
  Gate g(1, "streaming curves match the dynamic-programming oracle");
  const auto report = tvar::run_oracle(ExperimentConfig::defaults(Kind::oracle));
  g.records(report.records);
  g.sub(report.wall_seconds < 60.0,
        "wall time " + fmt1(report.wall_seconds) + " s (bound 60 s)");
  g.info("corpus_size=" + fmt(report.metrics.at("corpus_size")) +
         " prefix_checks=" + fmt(report.metrics.at("prefix_checks")) +
         " constant_paths=" + fmt(report.metrics.at("constant_paths")));
  return g.finish();
}

// ---------------------------------------------------------------------------
// criterion 2: structural identities
// ---------------------------------------------------------------------------

bool criterion2() {
  Gate g(2, "structural identities of the truncated variations");
  const double tol = 1e-9;
  const std::vector<double> ladder = {0.05, 0.1, 0.5, 1.0};
  const auto corpus = tvar::make_oracle_corpus(
      ExperimentConfig::defaults(Kind::oracle).seed, 1500);

  double worst_add = 0.0;      // TV - (UTV + DTV), DP recurrences
  double worst_mirror = 0.0;   // DTV(f) vs UTV(-f), streaming
  bool timechange_exact = true;
  double worst_inter2 = 0.0;   // split sum exceeding the whole
  double worst_inter3 = 0.0;   // whole exceeding split sum + c
  double worst_mono = 0.0;     // increase along a growing threshold ladder
  double worst_convex = 0.0;   // midpoint above the chord
  std::size_t split_checks = 0;

  for (const auto& p : corpus) {
    const SamplePath neg = tvar::negate(p);
    for (double c : ladder) {
      const double utv = tvar::brute_force_utv(p, c);
      const double dtv = tvar::brute_force_dtv(p, c);
      const double tv = tvar::brute_force_tv(p, c);
      worst_add = std::max(worst_add, std::abs(tv - (utv + dtv)));

      const auto t = tvar::truncvar_total(p, c);
      const auto tn = tvar::truncvar_total(neg, c);
      worst_mirror = std::max({worst_mirror, std::abs(t.dtv - tn.utv),
                               std::abs(t.utv - tn.dtv)});
    }

    {  // time change: values carry the variation, times are irrelevant
      std::vector<double> warped(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double u = p.times[i];
        warped[i] = u * u * u + u;  // strictly increasing warp
      }
      const SamplePath q = tvar::time_change(p, std::move(warped));
      for (double c : {0.1, 0.5}) {
        const auto a = tvar::truncvar_total(p, c);
        const auto b = tvar::truncvar_total(q, c);
        timechange_exact = timechange_exact && a.utv == b.utv &&
                           a.dtv == b.dtv && a.tv == b.tv;
      }
    }

    if (p.size() >= 3) {  // interval splitting at a shared sample time
      const double s = p.times[p.size() / 2];
      const SamplePath left = tvar::restrict(p, p.a(), s);
      const SamplePath right = tvar::restrict(p, s, p.b());
      for (double c : ladder) {
        const auto w = tvar::truncvar_total(p, c);
        const auto l = tvar::truncvar_total(left, c);
        const auto r = tvar::truncvar_total(right, c);
        worst_inter2 = std::max({worst_inter2, (l.tv + r.tv) - w.tv,
                                 (l.utv + r.utv) - w.utv,
                                 (l.dtv + r.dtv) - w.dtv});
        worst_inter3 = std::max({worst_inter3, w.tv - (l.tv + r.tv + c),
                                 w.utv - (l.utv + r.utv + c),
                                 w.dtv - (l.dtv + r.dtv + c)});
        ++split_checks;
      }
    }

    {  // threshold monotonicity and midpoint convexity
      const std::vector<double> cs = {0.05, 0.1, 0.15, 0.5, 0.75, 1.0};
      std::vector<double> vals(cs.size());
      for (std::size_t i = 0; i < cs.size(); ++i) {
        vals[i] = tvar::truncvar_total(p, cs[i]).tv;
      }
      for (std::size_t i = 1; i < cs.size(); ++i) {
        worst_mono = std::max(worst_mono, vals[i] - vals[i - 1]);
      }
      // equally spaced triples: (0.05, 0.1, 0.15) and (0.5, 0.75, 1.0)
      worst_convex = std::max(worst_convex, vals[1] - 0.5 * (vals[0] + vals[2]));
      worst_convex = std::max(worst_convex, vals[4] - 0.5 * (vals[3] + vals[5]));
    }
  }

  // Pair inequalities need a shared grid: the corpus alternates styles with
  // period 5 and style 2 is ragged, so pair up (i, i+1) avoiding it.
  double worst_subadd = 0.0;   // thresholds add across a sum of functions
  double worst_lip = 0.0;      // perturbation bounded by its plain variation
  std::size_t pair_checks = 0;
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    if (i % 5 == 2 || (i + 1) % 5 == 2) continue;
    const auto& f = corpus[i];
    const auto& h = corpus[i + 1];
    const std::size_t n = std::min(f.size(), h.size());
    std::vector<double> fv(f.values.begin(), f.values.begin() + n);
    std::vector<double> hv(h.values.begin(), h.values.begin() + n);
    std::vector<double> sum(n);
    for (std::size_t k = 0; k < n; ++k) sum[k] = fv[k] + hv[k];
    const SamplePath pf = SamplePath::uniform(0.0, 0.1, fv);
    const SamplePath ph = SamplePath::uniform(0.0, 0.1, hv);
    const SamplePath ps = SamplePath::uniform(0.0, 0.1, sum);

    for (const auto& [c1, c2] : std::vector<std::pair<double, double>>{
             {0.05, 0.05}, {0.1, 0.4}, {0.3, 0.2}}) {
      const auto tsum = tvar::truncvar_total(ps, c1 + c2);
      const auto tf = tvar::truncvar_total(pf, c1);
      const auto th = tvar::truncvar_total(ph, c2);
      worst_subadd = std::max({worst_subadd, tsum.tv - (tf.tv + th.tv),
                               tsum.utv - (tf.utv + th.utv),
                               tsum.dtv - (tf.dtv + th.dtv)});
    }
    // degenerate first threshold: c1 = 0 uses the plain variations
    for (double c2 : {0.1, 0.5}) {
      const auto tsum = tvar::truncvar_total(ps, c2);
      const auto th = tvar::truncvar_total(ph, c2);
      worst_subadd = std::max({worst_subadd,
                               tsum.tv - (plain_tv(fv) + th.tv),
                               tsum.utv - (plain_up(fv) + th.utv),
                               tsum.dtv - (plain_down(fv) + th.dtv)});
    }
    for (double c : {0.05, 0.5}) {
      const double tv_sum = tvar::truncvar_total(ps, c).tv;
      const double tv_f = tvar::truncvar_total(pf, c).tv;
      worst_lip = std::max(worst_lip, std::abs(tv_sum - tv_f) - plain_tv(hv));
    }
    ++pair_checks;
  }

  g.sub_le("additivity: worst |TV - (UTV + DTV)|", worst_add, tol);
  g.sub_le("reflection: worst |DTV(f) - UTV(-f)|", worst_mirror, 1e-12);
  g.sub(timechange_exact, "time-change invariance holds exactly on " +
                              std::to_string(corpus.size()) + " paths");
  g.sub_le("splitting (superadditive side): worst violation", worst_inter2, tol);
  g.sub_le("splitting (defect bounded by c): worst violation", worst_inter3,
           tol);
  g.sub_le("threshold subadditivity over sums: worst violation", worst_subadd,
           tol);
  g.sub_le("perturbation bound by plain variation: worst violation", worst_lip,
           tol);
  g.sub_le("monotone in c: worst increase", worst_mono, tol);
  g.sub_le("midpoint convexity in c: worst violation", worst_convex, tol);
  g.info("split_checks=" + std::to_string(split_checks) +
         " pair_checks=" + std::to_string(pair_checks));
  return g.finish();
}

// ---------------------------------------------------------------------------
// criterion 3: optimal tube approximation
// ---------------------------------------------------------------------------

/// Minimal plain variation over paths confined to |h_i - f_i| <= c/2, by DP
/// over discretized levels (plus the claimed optimum's own levels, so the
/// search can never sit above it).
double tube_search_min(const SamplePath& p, double c, const tvar::LazyTube& tube) {
  constexpr int kLevels = 21;
  const std::size_t n = p.size();
  std::vector<double> prev_cost, cur_cost, prev_lv, cur_lv;
  const auto levels_at = [&](std::size_t i, std::vector<double>& out) {
    out.clear();
    const double lo = p.values[i] - 0.5 * c;
    for (int k = 0; k < kLevels; ++k) {
      out.push_back(lo + c * static_cast<double>(k) / (kLevels - 1));
    }
    out.push_back(tube.g[i]);
  };
  levels_at(0, prev_lv);
  prev_cost.assign(prev_lv.size(), 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    levels_at(i, cur_lv);
    cur_cost.assign(cur_lv.size(), 0.0);
    for (std::size_t j = 0; j < cur_lv.size(); ++j) {
      double best = prev_cost[0] + std::abs(cur_lv[j] - prev_lv[0]);
      for (std::size_t k = 1; k < prev_lv.size(); ++k) {
        best = std::min(best, prev_cost[k] + std::abs(cur_lv[j] - prev_lv[k]));
      }
      cur_cost[j] = best;
    }
    prev_cost.swap(cur_cost);
    prev_lv.swap(cur_lv);
  }
  return *std::min_element(prev_cost.begin(), prev_cost.end());
}

bool criterion3() {
  Gate g(3, "tube functions attain the minimal variation inside the c/2 tube");
  const std::vector<double> ladder = {0.05, 0.1, 0.5, 1.0};
  const auto corpus = tvar::make_oracle_corpus(
      ExperimentConfig::defaults(Kind::oracle).seed, 2000);

  double worst_tv_match = 0.0;   // |TV(g0) - TV^c(f)|
  double worst_anchor = 0.0;     // ||g0 - f||_inf - c
  double worst_centered = 0.0;   // ||g - f||_inf - c/2
  for (const auto& p : corpus) {
    for (double c : ladder) {
      const auto tube = tvar::tube_functions(p, c);
      const auto totals = tvar::truncvar_total(p, c);
      worst_tv_match = std::max({worst_tv_match,
                                 std::abs(plain_tv(tube.g0) - totals.tv),
                                 std::abs(plain_tv(tube.g) - totals.tv)});
      for (std::size_t i = 0; i < p.size(); ++i) {
        worst_anchor = std::max(worst_anchor,
                                std::abs(tube.g0[i] - p.values[i]) - c);
        worst_centered = std::max(worst_centered,
                                  std::abs(tube.g[i] - p.values[i]) - 0.5 * c);
      }
    }
  }
  g.sub_le("variation match: worst |TV(g) - TV^c(f)|", worst_tv_match, 1e-9);
  g.sub_le("anchored tube: worst ||g0 - f||_inf - c", worst_anchor, 1e-12);
  g.sub_le("centered tube: worst ||g - f||_inf - c/2", worst_centered, 1e-12);

  // Exhaustive-search optimality on short paths: no discretized competitor
  // inside the tube may undercut TV^c(f).
  double worst_undercut = 0.0;   // TV^c(f) - search minimum
  double worst_above = 0.0;      // search minimum - TV(g) (should be <= 0)
  std::size_t searched = 0;
  for (const auto& p : corpus) {
    if (p.size() < 2 || p.size() > 8) continue;
    if (searched >= 120) break;
    ++searched;
    for (double c : {0.1, 0.5}) {
      const auto tube = tvar::tube_functions(p, c);
      const double claimed = tvar::truncvar_total(p, c).tv;
      const double found = tube_search_min(p, c, tube);
      worst_undercut = std::max(worst_undercut, claimed - found);
      worst_above = std::max(worst_above, found - plain_tv(tube.g));
    }
  }
  g.sub_le("grid search: worst undercut of the claimed minimum",
           worst_undercut, 1e-6);
  g.sub_le("grid search: worst excess over the claimed minimum", worst_above,
           1e-9);
  g.info("tube checks on " + std::to_string(corpus.size()) +
         " paths; grid search on " + std::to_string(searched) +
         " short paths x 2 thresholds");
  return g.finish();
}

// ---------------------------------------------------------------------------
// criteria 4-8: Monte Carlo limit-law suites (defaults are the pinned configs)
// ---------------------------------------------------------------------------

bool criterion4() {
  announce("criterion 4: vanishing-threshold sup-error sweep");
  Gate g(4, "vanishing-threshold convergence to the quadratic-variation clock");
  const auto report = tvar::run_lln(ExperimentConfig::defaults(Kind::lln));
  g.records(report.records);
  for (const auto& w : report.warnings) g.info("warning: " + w);

  // Non-normative convergence diagnostic: the same sweep at dt = c^2/500
  // shows the estimator approaching the clock as the grid refines, locating
  // the gap in the pinned grid policy rather than in the computation.
  auto diag_cfg = ExperimentConfig::defaults(Kind::lln);
  diag_cfg.tolerances["dt_over_c2"] = 0.002;
  const auto diag = tvar::run_lln(diag_cfg);
  for (const auto& r : diag.records) {
    if (r.name.rfind("tv_mean_sup_error", 0) == 0) {
      g.info("diagnostic dt=c^2/500: " + r.name + " = " + fmt(r.estimate));
    }
  }
  g.info("the pinned policy dt = c^2/50 leaves an O(sqrt(dt)/c) monitoring "
         "bias floor above the 0.08 tolerance; see README");
  return g.finish();
}

bool criterion5() {
  announce("criterion 5: fluctuation law, Brownian motion (about 1e9 steps)");
  Gate g(5, "small-threshold fluctuation law for Brownian motion with drift");
  const auto report = tvar::run_clt(ExperimentConfig::defaults(Kind::clt));
  g.records(report.records);
  for (const auto& w : report.warnings) g.info("warning: " + w);
  const auto& s = report.summaries.at("S_TV");
  g.info("S_TV summary: mean=" + fmt(s.mean) + " var=" + fmt(s.variance) +
         " skew=" + fmt(s.skewness) + " exkurt=" + fmt(s.excess_kurtosis) +
         " ks=" + fmt(s.ks_distance));
  g.info("the centered means inherit the O(sqrt(dt)/c) monitoring bias; at "
         "the pinned dt this sits far outside 4 standard errors (see README)");
  return g.finish();
}

bool criterion6() {
  announce("criterion 6: fluctuation law, state-dependent volatility "
           "(about 1e9 steps)");
  Gate g(6, "small-threshold fluctuation law under state-dependent volatility");
  const auto report =
      tvar::run_clt(ExperimentConfig::defaults(Kind::clt_diffusion));
  g.records(report.records);
  for (const auto& w : report.warnings) g.info("warning: " + w);
  g.info("the clock-independence correlation couples to the same "
         "discretization bias as the means; see README");
  return g.finish();
}

bool criterion7() {
  announce("criterion 7: large-time rates, 500 paths x 1e8 steps "
           "(several minutes)");
  Gate g(7, "large-time growth rates and fluctuation variances");
  const auto report =
      tvar::run_large_time(ExperimentConfig::defaults(Kind::large_time));
  g.records(report.records);
  g.info("downward target uses the reflected one-sided constant "
         "rho2_mu_c(-mu, c) = exp(-2*c*mu) * rho2_mu_c(mu, c)");
  return g.finish();
}

bool criterion8() {
  announce("criterion 8: renewal cycle statistics (about 3e8 steps)");
  Gate g(8, "renewal cycle statistics against the closed-form transforms");
  const auto report =
      tvar::run_renewal(ExperimentConfig::defaults(Kind::renewal));
  g.records(report.records);
  for (const auto& w : report.warnings) g.info("warning: " + w);
  g.info("n_cycles=" + fmt(report.metrics.at("n_cycles")));
  return g.finish();
}

}  // namespace

int main() {
  std::cout << "acceptance gate: 8 criteria, pinned tolerances, seed 20260825\n"
            << std::endl;
  int passed = 0;
  int total = 0;
  for (bool ok : {criterion1(), criterion2(), criterion3(), criterion4(),
                  criterion5(), criterion6(), criterion7(), criterion8()}) {
    ++total;
    passed += ok ? 1 : 0;
  }
  std::cout << "\nACCEPTANCE: " << (passed == total ? "PASS" : "FAIL") << " ("
            << passed << "/" << total << " criteria)" << std::endl;
  return passed == total ? 0 : 1;
}
