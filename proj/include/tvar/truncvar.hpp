#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tvar/path.hpp"

namespace tvar {

/// Alternating crossing times of the analyzed function g, where g = f if
/// `flipped` is false and g = -f otherwise.
///
/// T_U[k] is the first time g completes an upward move of size >= c from the
/// running minimum tracked since T_D[k-1] (from the interval start for k = 0);
/// T_D[k] is the analogous downward completion inside [T_U[k], ...). The
/// orientation is chosen so that the analyzed function's first completed
/// c-move is upward; everything is reported on the g scale.
///
///   local_mins[k]  = m_k = inf of g on [T_D[k-1], T_U[k])  (T_D[-1] = a),
///   local_maxes[k] = M_k = sup of g on [T_U[k], T_D[k]).
///
/// The final, still-running extremum of an incomplete phase is not included;
/// sizes satisfy up_times.size() - 1 <= down_times.size() <= up_times.size(),
/// local_mins.size() == up_times.size(), local_maxes.size() == down_times.size().
struct CrossingDecomposition {
    bool flipped = false;
    std::vector<double> up_times;
    std::vector<double> down_times;
    std::vector<double> local_mins;
    std::vector<double> local_maxes;
};

/// Cumulative truncated variations at every sample time of the input path.
/// All three sequences start at 0, are nondecreasing, and satisfy
/// tv[i] == utv[i] + dtv[i] exactly (tv is stored as that sum).
struct TruncVarCurve {
    std::vector<double> times;
    std::vector<double> utv;
    std::vector<double> dtv;
    std::vector<double> tv;
};

struct TruncVarTotals {
    double utv = 0.0;
    double dtv = 0.0;
    double tv = 0.0;
};

/// The two optimal tube approximants of a path f:
///   g0[i]  = f(a) + utv[i] - dtv[i],   the minimal-total-variation function
///            starting at f(a) with oscillation distance <= c from f;
///   g[i]   = alpha0 + g0[i],           uniform distance <= c/2 from f.
/// Both have total variation exactly TV^c(f).
struct LazyTube {
    std::vector<double> g0;
    std::vector<double> g;
    double alpha0 = 0.0;
};

namespace detail {

/// Streaming crossing engine. Feed values in time order; O(1) state.
///
/// Internally the engine analyzes g = s*f where the sign s in {+1,-1} is
/// resolved at the first completed c-move (s = -1 when the first completed
/// move of f is downward, mirroring the convention that the analyzed function
/// starts with an upward crossing). While no move has completed, UTV = DTV = 0.
///
/// Phase bookkeeping (all on the g scale):
///   up phase    [T_U[k], T_D[k]):  utv = base_u + (max_run - m_k - c), dtv = base_d
///   down phase  [T_D[k], T_U[k+1]): utv = base_u, dtv = base_d + (M_k - min_run - c)
/// where base_u/base_d accumulate the completed-phase terms. A detection
/// sample can never move the just-completed extremum (it sits >= c away), so
/// both running curves are continuous across phase transitions and exactly one
/// of them increases at any step.
///
/// The Observer receives phase-transition events (g-scale extrema). Use
/// NullObserver when only the values are needed; the calls inline away.
struct NullObserver {
    // First completed c-move at sample index i; the engine analyzes -f iff
    // flipped. m0 is the g-scale infimum over [a, T_U[0]).
    void on_first_crossing(std::size_t /*i*/, bool /*flipped*/, double /*m0*/) {}
    // Up phase k ended at sample index i with maximum Mk (g scale).
    void on_down_crossing(std::size_t /*i*/, double /*Mk*/) {}
    // Down phase ended at sample index i with minimum mk1 = m_{k+1} (g scale).
    void on_up_crossing(std::size_t /*i*/, double /*mk1*/) {}
};

template <class Observer>
class Engine {
  public:
    Engine(double c, Observer& obs) : c_(c), obs_(obs) {
        if (!(c > 0.0)) throw std::invalid_argument("truncvar: threshold c must be > 0");
    }

    void push(double v) {
        switch (phase_) {
            case Phase::pending: {
                if (count_ == 0) {
                    rmin_ = rmax_ = v;
                } else {
                    if (v > rmax_) rmax_ = v;
                    if (v < rmin_) rmin_ = v;
                    // Both conditions cannot fire at one sample: before the first
                    // completed move the running range is < c, and one new value
                    // extends it on one side only.
                    if (v - rmin_ >= c_) {
                        sign_ = 1.0;
                        m_ = rmin_;
                        run_ = v;
                        phase_ = Phase::up;
                        obs_.on_first_crossing(count_, false, m_);
                    } else if (rmax_ - v >= c_) {
                        sign_ = -1.0;
                        m_ = -rmax_;
                        run_ = -v;
                        phase_ = Phase::up;
                        obs_.on_first_crossing(count_, true, m_);
                    }
                }
                break;
            }
            case Phase::up: {
                const double g = sign_ * v;
                if (g > run_) run_ = g;
                if (run_ - g >= c_) {
                    base_u_ += run_ - m_ - c_;
                    M_ = run_;
                    run_ = g;
                    phase_ = Phase::down;
                    obs_.on_down_crossing(count_, M_);
                }
                break;
            }
            case Phase::down: {
                const double g = sign_ * v;
                if (g < run_) run_ = g;
                if (g - run_ >= c_) {
                    base_d_ += M_ - run_ - c_;
                    m_ = run_;
                    run_ = g;
                    phase_ = Phase::up;
                    obs_.on_up_crossing(count_, m_);
                }
                break;
            }
        }
        ++count_;
    }

    /// Cumulative values for the original path f over the samples pushed so far.
    double utv() const { return sign_ >= 0.0 ? value_up() : value_down(); }
    double dtv() const { return sign_ >= 0.0 ? value_down() : value_up(); }
    double tv() const { return value_up() + value_down(); }

    bool flipped() const { return sign_ < 0.0; }
    std::size_t count() const { return count_; }

  private:
    enum class Phase { pending, up, down };

    // Cumulative upward variation of the analyzed function g.
    double value_up() const {
        if (phase_ == Phase::pending) return 0.0;
        return phase_ == Phase::up ? base_u_ + (run_ - m_ - c_) : base_u_;
    }
    // Cumulative downward variation of g.
    double value_down() const {
        if (phase_ == Phase::pending) return 0.0;
        return phase_ == Phase::down ? base_d_ + (M_ - run_ - c_) : base_d_;
    }

    double c_;
    Observer& obs_;
    Phase phase_ = Phase::pending;
    std::size_t count_ = 0;
    double sign_ = 1.0;          // +1: analyze f, -1: analyze -f
    double rmin_ = 0.0, rmax_ = 0.0;  // pending-phase running extrema of f
    double m_ = 0.0;             // current cycle infimum (g scale)
    double M_ = 0.0;             // last completed cycle maximum (g scale)
    double run_ = 0.0;           // running max (up phase) / min (down phase) of g
    double base_u_ = 0.0, base_d_ = 0.0;  // completed-phase sums
};

}  // namespace detail

/// Streaming accumulator for cumulative UTV^c/DTV^c/TV^c of a path presented
/// one sample at a time, in time order. O(1) memory, O(1) amortized per push.
class TruncVarAccumulator {
  public:
    explicit TruncVarAccumulator(double c) : engine_(c, obs_) {}

    void push(double t, double v);

    double utv() const { return engine_.utv(); }
    double dtv() const { return engine_.dtv(); }
    double tv() const { return engine_.tv(); }
    std::size_t count() const { return engine_.count(); }

  private:
    detail::NullObserver obs_;
    detail::Engine<detail::NullObserver> engine_;
    bool has_time_ = false;
    double last_time_ = 0.0;
};

/// Crossing decomposition of p at threshold c > 0 (single forward pass).
CrossingDecomposition decompose(const SamplePath& p, double c);

/// Cumulative UTV/DTV/TV at every sample time (single forward pass). Final
/// entries agree with the brute-force oracles to rounding.
TruncVarCurve truncvar_curve(const SamplePath& p, double c);

/// Totals only; O(n) time and O(1) auxiliary space.
TruncVarTotals truncvar_total(const SamplePath& p, double c);

/// Optimal tube approximants g^{0,c} and g^c = alpha0 + g^{0,c}.
LazyTube tube_functions(const SamplePath& p, double c);

}  // namespace tvar
