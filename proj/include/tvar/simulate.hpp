#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tvar/path.hpp"
#include "tvar/rng.hpp"

namespace tvar {

/// Uniform time grid 0, dt, 2*dt, ..., n*dt with n = ceil(T/dt) steps after
/// time 0 (n*dt may exceed T by less than one step). Times are computed as
/// k*dt, not by accumulation, so grids are bit-reproducible.
struct GridSpec {
    double horizon = 1.0;  // T
    double dt = 1e-3;

    /// Number of steps after time 0; the path has steps()+1 samples.
    std::size_t steps() const;
    void validate() const;  // throws std::invalid_argument
};

/// Diffusion dX = sigma(X) dW + mu(X) dt, X_0 = 0, in one of three families:
///   bm_drift(mu):                sigma = 1,                 drift = mu
///   ou(theta, mu_bar):           sigma = 1,                 drift = theta*(mu_bar - x)
///   bounded_sine(sigma0, eps, mu): sigma = sigma0 + eps*sin(x), drift = mu
/// bounded_sine requires |eps| < sigma0 so that sigma stays strictly positive.
struct DiffusionSpec {
    enum class Family { bm_drift, ou, bounded_sine };

    Family family = Family::bm_drift;
    double mu = 0.0;       // bm_drift / bounded_sine constant drift
    double theta = 0.0;    // ou mean-reversion rate
    double mu_bar = 0.0;   // ou long-run mean
    double sigma0 = 1.0;   // bounded_sine base volatility
    double eps = 0.0;      // bounded_sine modulation amplitude

    static DiffusionSpec bm_drift(double mu);
    static DiffusionSpec ou(double theta, double mu_bar);
    static DiffusionSpec bounded_sine(double sigma0, double eps, double mu);

    void validate() const;  // throws std::invalid_argument
    double sigma_at(double x) const;
    double drift_at(double x) const;

    std::string family_name() const;
    static Family family_from_name(const std::string& name);  // throws on unknown
};

/// Seed and the PRNG/transform identifier that makes it meaningful.
struct RngSeed {
    std::uint64_t seed = 0;
    std::string algorithm_id = kAlgorithmId;
};

/// One Euler-Maruyama path, streamed step by step so that arbitrarily long
/// horizons need O(1) memory:
///   X_{k+1} = X_k + sigma(X_k)*sqrt(dt)*xi_k + drift(X_k)*dt,  xi_k iid N(0,1).
/// The Gaussian stream is GaussianSource(seed, stream); materializing the same
/// (spec, grid, seed, stream) via sample_diffusion_euler gives bit-identical
/// values.
class EulerStream {
  public:
    EulerStream(const DiffusionSpec& spec, const GridSpec& grid,
                std::uint64_t seed, std::uint64_t stream = 0);

    double x() const { return x_; }
    double t() const { return static_cast<double>(k_) * dt_; }
    std::size_t index() const { return k_; }
    bool done() const { return k_ >= n_; }

    /// Advance one step; returns the new state value.
    double step();

    /// sigma(X) evaluated at the current (pre-step) state; left-endpoint value
    /// for quadratic-variation accumulation.
    double sigma_now() const { return spec_.sigma_at(x_); }

  private:
    DiffusionSpec spec_;
    double dt_, sqdt_;
    std::size_t n_, k_ = 0;
    double x_ = 0.0;
    GaussianSource gauss_;
};

/// Brownian motion with drift on the grid; equals
/// sample_diffusion_euler(DiffusionSpec::bm_drift(mu), ...) bit for bit.
SamplePath sample_bm_drift(double mu, const GridSpec& grid,
                           std::uint64_t seed, std::uint64_t stream = 0);

/// Euler-Maruyama path for any family, materialized as a SamplePath.
SamplePath sample_diffusion_euler(const DiffusionSpec& spec, const GridSpec& grid,
                                  std::uint64_t seed, std::uint64_t stream = 0);

/// Left-Riemann quadratic-variation curve on the path's own grid:
/// qv[k] = sum_{j<k} sigma(values[j])^2 * (times[j+1]-times[j]); qv[0] = 0.
std::vector<double> quadratic_variation_grid(const DiffusionSpec& spec, const SamplePath& p);

}  // namespace tvar
