#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tvar/path.hpp"
#include "tvar/simulate.hpp"
#include "tvar/stats.hpp"

namespace tvar {

/// Configuration of one Monte Carlo validation run. Together with the seed
/// and the RNG algorithm id it determines the resulting report bit-for-bit
/// (wall-clock time excepted).
struct ExperimentConfig {
  enum class Kind { oracle, lln, clt, clt_diffusion, large_time, renewal };

  Kind kind = Kind::oracle;
  DiffusionSpec diffusion = DiffusionSpec::bm_drift(0.0);
  std::vector<double> thresholds;  // one c, or a decreasing ladder for lln
  GridSpec grid{1.0, 1e-3};
  std::size_t n_paths = 1;
  RngSeed seed;
  /// Tolerances and policy knobs, overridable per key; defaults(kind) fills
  /// the full set. Keys are documented in the README.
  std::map<std::string, double> tolerances;

  /// Ready-to-run configuration for each kind, matching the defaults quoted
  /// in the README's validation table.
  static ExperimentConfig defaults(Kind kind);

  static Kind kind_from_name(const std::string& name);
  const char* kind_name() const;

  /// Throws std::invalid_argument on structural problems (empty threshold
  /// list, non-positive c, wrong threshold count for the kind, ...).
  void validate() const;

  double tol(const std::string& key) const;  // throws on unknown key
};

/// One normative check: pass iff |estimate - target| <= tolerance.
/// One-sided or boolean checks are encoded with a {0,1} estimate and a zero
/// tolerance. `provenance` names the formula or rule the target comes from.
struct StatRecord {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;  // 0 when no standard formula applies
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string provenance;
};

/// Limit-law bookkeeping for the fluctuation statistics: the Gaussian scale
/// and the quadratic-variation clock it runs on.
struct ReferenceLaw {
  double scale = 0.0;         // 12^{-1/2} for one-sided, 2*12^{-1/2} for TV
  std::vector<double> clock;  // nondecreasing <X>_t samples
  void validate() const;      // throws std::invalid_argument
};

/// One renewal cycle between consecutive upward crossing times:
/// duration d, variation increment g, signed increment h.
struct RenewalSample {
  double d = 0.0;
  double g = 0.0;
  double h = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<StatRecord> records;
  std::map<std::string, SummaryStats> summaries;  // keyed by statistic name
  std::map<std::string, double> metrics;  // informational, non-normative
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;

  bool all_pass() const;
};

/// JSON (de)serialization. Field names are stable and documented in the
/// README; serialization uses shortest round-trip doubles so reports are
/// diffable and reproducible byte-for-byte apart from wall_seconds.
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
std::string report_to_json(const ExperimentReport& report);

/// Deterministic mixed corpus for the oracle/identity suites: lengths 1..40;
/// uniform-grid uniform values, quarter-lattice tie stress, ragged time
/// grids, constants, and monotone staircases, cycled in that order.
std::vector<SamplePath> make_oracle_corpus(const RngSeed& seed,
                                           std::size_t n_paths);

/// Renewal cycles of a sampled path at threshold c, in path order, with the
/// first (differently distributed) cycle already discarded.
std::vector<RenewalSample> extract_renewal(const SamplePath& path, double c);

/// Streaming equivalent of extract_renewal for O(1)-memory simulation runs.
/// Push samples in time order; completed cycles (minus the first) accumulate
/// in samples().
class RenewalAccumulator {
 public:
  explicit RenewalAccumulator(double c);
  void push(double t, double x);
  const std::vector<RenewalSample>& samples() const { return samples_; }

 private:
  enum class Phase { pending, rising, falling };
  double c_;
  Phase phase_ = Phase::pending;
  bool have_prev_ = false;
  double prev_t_ = 0.0;
  double run_ = 0.0;      // extremum of the current sweep
  double m_cur_ = 0.0;    // infimum preceding the current cycle's T_U
  double peak_ = 0.0;     // supremum of the current cycle
  double tu_ = 0.0;       // current cycle's T_U
  std::size_t emitted_ = 0;
  std::vector<RenewalSample> samples_;
};

ExperimentReport run_oracle(const ExperimentConfig& config);
ExperimentReport run_lln(const ExperimentConfig& config);
ExperimentReport run_clt(const ExperimentConfig& config);
ExperimentReport run_large_time(const ExperimentConfig& config);
ExperimentReport run_renewal(const ExperimentConfig& config);

/// Validates and dispatches on config.kind, stamping wall_seconds.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace tvar
