#pragma once

#include <cstddef>
#include <vector>

namespace tvar {

/// A finite, strictly time-ordered sample of a real-valued path.
///
/// The sample is read as the piecewise-constant cadlag step function
/// f(t) = values[i] for t in [times[i], times[i+1]), f(b) = values.back().
/// Under that reading every variation functional below is attained on sample
/// indices, so the dynamic programs in oracle.hpp are exact, not approximate.
///
/// Invariants (enforced by make()/uniform(), relied on everywhere else):
///   - times.size() == values.size() >= 1,
///   - times strictly increasing,
///   - every entry finite.
struct SamplePath {
    std::vector<double> times;
    std::vector<double> values;

    /// Validating constructor; throws std::invalid_argument on any
    /// invariant violation (empty input, length mismatch, non-increasing
    /// times, NaN/infinity).
    static SamplePath make(std::vector<double> times, std::vector<double> values);

    /// Uniform grid t0, t0+dt, ... with the given values; dt must be > 0.
    static SamplePath uniform(double t0, double dt, std::vector<double> values);

    std::size_t size() const { return values.size(); }
    double a() const { return times.front(); }
    double b() const { return times.back(); }
};

/// Path with all values sign-flipped (times unchanged).
SamplePath negate(const SamplePath& p);

/// Samples whose times lie in the closed interval [lo, hi].
/// Throws std::invalid_argument if lo > hi or no sample falls inside.
SamplePath restrict(const SamplePath& p, double lo, double hi);

/// Replace the time axis by a strictly increasing relabeling; values are
/// untouched, so every variation functional is invariant under this map.
SamplePath time_change(const SamplePath& p, std::vector<double> new_times);

/// Sum of absolute increments: the truncated variation at threshold 0.
double total_variation(const SamplePath& p);

}  // namespace tvar
