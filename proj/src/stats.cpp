#include "tvar/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tvar {

namespace {

void check_finite(const std::vector<double>& xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) +
                                  ": samples must be finite");
    }
  }
}

}  // namespace

double neumaier_total(const std::vector<double>& xs) {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_distance_to_fitted_gaussian(std::vector<double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw std::invalid_argument("ks_distance: need at least 2 samples");
  }
  check_finite(samples, "ks_distance");

  NeumaierSum acc;
  for (double x : samples) acc.add(x);
  const double mean = acc.value() / static_cast<double>(n);
  NeumaierSum sq;
  for (double x : samples) sq.add((x - mean) * (x - mean));
  const double var = sq.value() / static_cast<double>(n - 1);
  if (!(var > 0.0)) {
    return 1.0;  // point mass vs a continuous law
  }
  const double sd = std::sqrt(var);

  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = normal_cdf((samples[i] - mean) / sd);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n) - phi;
    const double lo = phi - static_cast<double>(i) / static_cast<double>(n);
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

SummaryStats summary_stats(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw std::invalid_argument("summary_stats: need at least 2 samples");
  }
  check_finite(samples, "summary_stats");
  const double dn = static_cast<double>(n);

  SummaryStats out;
  out.n = n;

  NeumaierSum acc;
  for (double x : samples) acc.add(x);
  out.mean = acc.value() / dn;

  NeumaierSum m2s, m3s, m4s;
  for (double x : samples) {
    const double d = x - out.mean;
    const double d2 = d * d;
    m2s.add(d2);
    m3s.add(d2 * d);
    m4s.add(d2 * d2);
  }
  const double m2 = m2s.value() / dn;  // biased central moments for shape
  out.variance = m2s.value() / (dn - 1.0);

  if (!(m2 > 0.0)) {
    out.degenerate = true;
    out.variance = 0.0;
    out.ks_distance = 1.0;
    out.se_skewness = std::sqrt(6.0 / dn);
    out.se_excess_kurtosis = std::sqrt(24.0 / dn);
    return out;
  }

  const double m3 = m3s.value() / dn;
  const double m4 = m4s.value() / dn;
  out.skewness = m3 / (m2 * std::sqrt(m2));
  out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  out.ks_distance = ks_distance_to_fitted_gaussian(samples);

  const double sd = std::sqrt(out.variance);
  out.se_mean = sd / std::sqrt(dn);
  out.se_variance = out.variance * std::sqrt(2.0 / (dn - 1.0));
  out.se_skewness = std::sqrt(6.0 / dn);
  out.se_excess_kurtosis = std::sqrt(24.0 / dn);
  return out;
}

double pearson_corr(const std::vector<double>& xs,
                    const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("pearson_corr: size mismatch");
  }
  const std::size_t n = xs.size();
  if (n < 2) {
    throw std::invalid_argument("pearson_corr: need at least 2 points");
  }
  check_finite(xs, "pearson_corr");
  check_finite(ys, "pearson_corr");
  const double dn = static_cast<double>(n);

  NeumaierSum sx, sy;
  for (std::size_t i = 0; i < n; ++i) {
    sx.add(xs[i]);
    sy.add(ys[i]);
  }
  const double mx = sx.value() / dn;
  const double my = sy.value() / dn;

  NeumaierSum sxx, syy, sxy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx.add(dx * dx);
    syy.add(dy * dy);
    sxy.add(dx * dy);
  }
  const double denom = std::sqrt(sxx.value()) * std::sqrt(syy.value());
  if (!(denom > 0.0)) {
    throw std::invalid_argument("pearson_corr: zero-variance margin");
  }
  return sxy.value() / denom;
}

}  // namespace tvar
