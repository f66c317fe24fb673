#include "tvar/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace tvar {

std::size_t GridSpec::steps() const {
    validate();
    // ceil with a small backoff so that exact ratios (e.g. 1/0.001) are not
    // bumped up by one step through floating-point representation error.
    const double ratio = horizon / dt;
    return static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12)));
}

void GridSpec::validate() const {
    if (!(dt > 0.0) || !(horizon > 0.0) || !(dt <= horizon) ||
        !std::isfinite(dt) || !std::isfinite(horizon))
        throw std::invalid_argument("GridSpec: need 0 < dt <= horizon, both finite");
}

DiffusionSpec DiffusionSpec::bm_drift(double mu) {
    DiffusionSpec s;
    s.family = Family::bm_drift;
    s.mu = mu;
    return s;
}

DiffusionSpec DiffusionSpec::ou(double theta, double mu_bar) {
    DiffusionSpec s;
    s.family = Family::ou;
    s.theta = theta;
    s.mu_bar = mu_bar;
    return s;
}

DiffusionSpec DiffusionSpec::bounded_sine(double sigma0, double eps, double mu) {
    DiffusionSpec s;
    s.family = Family::bounded_sine;
    s.sigma0 = sigma0;
    s.eps = eps;
    s.mu = mu;
    return s;
}

void DiffusionSpec::validate() const {
    switch (family) {
        case Family::bm_drift:
            if (!std::isfinite(mu)) throw std::invalid_argument("bm_drift: mu must be finite");
            return;
        case Family::ou:
            if (!std::isfinite(theta) || !std::isfinite(mu_bar))
                throw std::invalid_argument("ou: parameters must be finite");
            return;
        case Family::bounded_sine:
            if (!std::isfinite(sigma0) || !std::isfinite(eps) || !std::isfinite(mu))
                throw std::invalid_argument("bounded_sine: parameters must be finite");
            if (!(std::fabs(eps) < sigma0))
                throw std::invalid_argument(
                    "bounded_sine: need |eps| < sigma0 so that sigma stays positive");
            return;
    }
    throw std::invalid_argument("DiffusionSpec: unknown family");
}

double DiffusionSpec::sigma_at(double x) const {
    return family == Family::bounded_sine ? sigma0 + eps * std::sin(x) : 1.0;
}

double DiffusionSpec::drift_at(double x) const {
    return family == Family::ou ? theta * (mu_bar - x) : mu;
}

std::string DiffusionSpec::family_name() const {
    switch (family) {
        case Family::bm_drift: return "bm_drift";
        case Family::ou: return "ou";
        case Family::bounded_sine: return "bounded_sine";
    }
    return "?";
}

DiffusionSpec::Family DiffusionSpec::family_from_name(const std::string& name) {
    if (name == "bm_drift") return Family::bm_drift;
    if (name == "ou") return Family::ou;
    if (name == "bounded_sine") return Family::bounded_sine;
    throw std::invalid_argument("unknown diffusion family: " + name);
}

EulerStream::EulerStream(const DiffusionSpec& spec, const GridSpec& grid,
                         std::uint64_t seed, std::uint64_t stream)
    : spec_(spec), dt_(grid.dt), sqdt_(std::sqrt(grid.dt)),
      n_(grid.steps()), gauss_(seed, stream) {
    spec_.validate();
}

double EulerStream::step() {
    if (done()) throw std::logic_error("EulerStream: stepped past the horizon");
    x_ += spec_.sigma_at(x_) * sqdt_ * gauss_.next() + spec_.drift_at(x_) * dt_;
    ++k_;
    return x_;
}

SamplePath sample_diffusion_euler(const DiffusionSpec& spec, const GridSpec& grid,
                                  std::uint64_t seed, std::uint64_t stream) {
    EulerStream s(spec, grid, seed, stream);
    const std::size_t n = grid.steps();
    std::vector<double> values(n + 1);
    values[0] = 0.0;
    for (std::size_t k = 1; k <= n; ++k) values[k] = s.step();
    return SamplePath::uniform(0.0, grid.dt, std::move(values));
}

SamplePath sample_bm_drift(double mu, const GridSpec& grid,
                           std::uint64_t seed, std::uint64_t stream) {
    return sample_diffusion_euler(DiffusionSpec::bm_drift(mu), grid, seed, stream);
}

std::vector<double> quadratic_variation_grid(const DiffusionSpec& spec, const SamplePath& p) {
    spec.validate();
    std::vector<double> qv(p.size(), 0.0);
    for (std::size_t k = 1; k < p.size(); ++k) {
        const double sig = spec.sigma_at(p.values[k - 1]);
        qv[k] = qv[k - 1] + sig * sig * (p.times[k] - p.times[k - 1]);
    }
    return qv;
}

}  // namespace tvar
