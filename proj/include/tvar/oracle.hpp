#pragma once

#include <vector>

#include "tvar/path.hpp"

namespace tvar {

/// Exact O(n^2) dynamic programs for the truncated variation
///
///     TV^c(f)  = sup over index chains  t_0 < t_1 < ... of  sum phi_c(|f(t_{i+1}) - f(t_i)|),
///     UTV^c(f) = sup over ordered pairs t_1 < s_1 <= t_2 < s_2 <= ... of sum phi_c(f(s_i) - f(t_i)),
///     DTV^c(f) = UTV^c(-f),
///
/// with phi_c(x) = max(x - c, 0). Under the cadlag step reading of SamplePath
/// these suprema are attained on sample indices, so the values are exact up to
/// floating-point rounding. They are the ground truth the streaming engine in
/// truncvar.hpp is verified against. c must be >= 0; c = 0 reduces TV to the
/// plain total variation.
double brute_force_tv(const SamplePath& p, double c);
double brute_force_utv(const SamplePath& p, double c);
double brute_force_dtv(const SamplePath& p, double c);

/// Prefix-resolved variants: entry i is the corresponding value over samples
/// [0..i]. A single O(n^2) pass produces all prefixes, which keeps verifying
/// "every prefix of every path" quadratic rather than cubic.
std::vector<double> brute_force_tv_prefix(const SamplePath& p, double c);
std::vector<double> brute_force_utv_prefix(const SamplePath& p, double c);
std::vector<double> brute_force_dtv_prefix(const SamplePath& p, double c);

}  // namespace tvar
