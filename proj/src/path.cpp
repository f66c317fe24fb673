#include "tvar/path.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace tvar {

SamplePath SamplePath::make(std::vector<double> times, std::vector<double> values) {
    if (times.empty() || values.empty())
        throw std::invalid_argument("SamplePath: empty input");
    if (times.size() != values.size())
        throw std::invalid_argument("SamplePath: times/values length mismatch (" +
                                    std::to_string(times.size()) + " vs " +
                                    std::to_string(values.size()) + ")");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(values[i]))
            throw std::invalid_argument("SamplePath: non-finite entry at index " +
                                        std::to_string(i));
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("SamplePath: times not strictly increasing at index " +
                                        std::to_string(i));
    }
    return SamplePath{std::move(times), std::move(values)};
}

SamplePath SamplePath::uniform(double t0, double dt, std::vector<double> values) {
    if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0))
        throw std::invalid_argument("SamplePath::uniform: need finite t0 and dt > 0");
    std::vector<double> times(values.size());
    for (std::size_t i = 0; i < times.size(); ++i) times[i] = t0 + static_cast<double>(i) * dt;
    return make(std::move(times), std::move(values));
}

SamplePath negate(const SamplePath& p) {
    SamplePath q = p;
    for (double& v : q.values) v = -v;
    return q;
}

SamplePath restrict(const SamplePath& p, double lo, double hi) {
    if (!(lo <= hi))
        throw std::invalid_argument("restrict: lo > hi");
    std::vector<double> t, v;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.times[i] >= lo && p.times[i] <= hi) {
            t.push_back(p.times[i]);
            v.push_back(p.values[i]);
        }
    }
    if (t.empty())
        throw std::invalid_argument("restrict: no samples in [lo, hi]");
    return SamplePath::make(std::move(t), std::move(v));
}

SamplePath time_change(const SamplePath& p, std::vector<double> new_times) {
    return SamplePath::make(std::move(new_times), p.values);
}

double total_variation(const SamplePath& p) {
    double s = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i) s += std::fabs(p.values[i] - p.values[i - 1]);
    return s;
}

}  // namespace tvar
