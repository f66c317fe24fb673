#include "tvar/truncvar.hpp"

#include <algorithm>
#include <stdexcept>

namespace tvar {

void TruncVarAccumulator::push(double t, double v) {
    if (has_time_ && !(t > last_time_))
        throw std::invalid_argument("TruncVarAccumulator: samples must arrive in strictly increasing time order");
    has_time_ = true;
    last_time_ = t;
    engine_.push(v);
}

namespace {

// Records crossing events into a CrossingDecomposition.
struct DecompositionRecorder {
    const SamplePath& path;
    CrossingDecomposition out;

    void on_first_crossing(std::size_t i, bool flipped, double m0) {
        out.flipped = flipped;
        out.up_times.push_back(path.times[i]);
        out.local_mins.push_back(m0);
    }
    void on_down_crossing(std::size_t i, double Mk) {
        out.down_times.push_back(path.times[i]);
        out.local_maxes.push_back(Mk);
    }
    void on_up_crossing(std::size_t i, double mk1) {
        out.up_times.push_back(path.times[i]);
        out.local_mins.push_back(mk1);
    }
};

}  // namespace

CrossingDecomposition decompose(const SamplePath& p, double c) {
    DecompositionRecorder rec{p, {}};
    detail::Engine<DecompositionRecorder> engine(c, rec);
    for (double v : p.values) engine.push(v);
    return std::move(rec.out);
}

TruncVarCurve truncvar_curve(const SamplePath& p, double c) {
    TruncVarCurve curve;
    const std::size_t n = p.size();
    curve.times = p.times;
    curve.utv.resize(n);
    curve.dtv.resize(n);
    curve.tv.resize(n);
    detail::NullObserver obs;
    detail::Engine<detail::NullObserver> engine(c, obs);
    for (std::size_t i = 0; i < n; ++i) {
        engine.push(p.values[i]);
        curve.utv[i] = engine.utv();
        curve.dtv[i] = engine.dtv();
        curve.tv[i] = curve.utv[i] + curve.dtv[i];
    }
    return curve;
}

TruncVarTotals truncvar_total(const SamplePath& p, double c) {
    detail::NullObserver obs;
    detail::Engine<detail::NullObserver> engine(c, obs);
    for (double v : p.values) engine.push(v);
    return TruncVarTotals{engine.utv(), engine.dtv(), engine.tv()};
}

LazyTube tube_functions(const SamplePath& p, double c) {
    const TruncVarCurve curve = truncvar_curve(p, c);
    const std::size_t n = p.size();
    LazyTube tube;
    tube.g0.resize(n);
    tube.g.resize(n);
    const double f0 = p.values.front();
    double lo = 0.0, hi = 0.0;  // running min/max of g0 - f (first entry is 0)
    for (std::size_t i = 0; i < n; ++i) {
        tube.g0[i] = f0 + curve.utv[i] - curve.dtv[i];
        const double d = tube.g0[i] - p.values[i];
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    // Shift so the tube sits symmetrically: alpha0 = -min(g0 - f) - osc(g0 - f)/2.
    tube.alpha0 = -lo - 0.5 * (hi - lo);
    for (std::size_t i = 0; i < n; ++i) tube.g[i] = tube.alpha0 + tube.g0[i];
    return tube;
}

}  // namespace tvar
