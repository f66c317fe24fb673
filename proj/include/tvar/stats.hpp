#pragma once

#include <cstddef>
#include <vector>

namespace tvar {

/// Order-stable compensated (Neumaier) summation. Used by every moment
/// accumulator so aggregation results do not depend on how path results are
/// scheduled across workers.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;

  static double abs(double x) noexcept { return x < 0.0 ? -x : x; }
};

double neumaier_total(const std::vector<double>& xs);

/// Moment summary of a real sample with the diagnostics the experiment
/// harness reports: mean, unbiased variance, moment-estimator skewness and
/// excess kurtosis, and the Kolmogorov-Smirnov distance to the Gaussian
/// fitted by moments. Standard errors use the classical large-sample
/// formulas: se_mean = s/sqrt(n), se_variance = s^2*sqrt(2/(n-1)),
/// se_skewness = sqrt(6/n), se_excess_kurtosis = sqrt(24/n).
struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased (divides by n-1)
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_distance = 0.0;  // to Gaussian(mean, variance); 1 when degenerate
  double se_mean = 0.0;
  double se_variance = 0.0;
  double se_skewness = 0.0;
  double se_excess_kurtosis = 0.0;
  bool degenerate = false;  // variance == 0: shape statistics are undefined
};

/// Throws std::invalid_argument on fewer than 2 samples or non-finite input.
SummaryStats summary_stats(const std::vector<double>& samples);

/// Two-sided KS statistic of `samples` against the Gaussian fitted to their
/// own first two moments. Returns 1 for degenerate (zero-variance) samples.
double ks_distance_to_fitted_gaussian(std::vector<double> samples);

/// Standard normal CDF.
double normal_cdf(double z);

/// Pearson correlation; throws std::invalid_argument on size mismatch,
/// fewer than 2 points, or a zero-variance margin.
double pearson_corr(const std::vector<double>& xs,
                    const std::vector<double>& ys);

}  // namespace tvar
