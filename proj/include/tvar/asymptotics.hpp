#pragma once

namespace tvar {

/// Closed-form large-time and renewal constants for the truncated variations
/// of Brownian motion with drift mu at threshold c > 0.
///
/// Every function is continuous in mu at 0: for |c*mu| < 1e-2 the removable
/// singularities are evaluated through fixed Taylor expansions (error below
/// 1e-16 relative there) instead of direct division, so both branches agree
/// to ~5e-12 relative at the switch point. Thresholds c <= 0 throw
/// std::invalid_argument; arguments outside a transform's validity domain
/// throw std::domain_error.

/// Long-run TV^c rate: mu*coth(c*mu), value 1/c at mu = 0.
double m_mu_c(double mu, double c);

/// Long-run 2*UTV^c rate: mu*coth(c*mu) + mu, value 1/c at mu = 0.
/// The DTV rate is n_mu_c(-mu, c)/2.
double n_mu_c(double mu, double c);

/// Variance scale of the normalized large-time TV fluctuation:
/// (2 - 2*c*mu*coth(c*mu))/sinh(c*mu)^2 + 1, value 1/3 at mu = 0.
double sigma2_mu_c(double mu, double c);

/// Variance scale of the normalized large-time UTV fluctuation:
/// 2*exp(4*c*mu)*(sinh(2*c*mu) - 2*c*mu)/(exp(2*c*mu) - 1)^3, 1/3 at mu = 0.
/// The DTV scale is rho2_mu_c(-mu, c).
double rho2_mu_c(double mu, double c);

/// Mean renewal-cycle duration E[D] = 2*sinh(c*mu)^2/mu^2, = 2c^2 at mu = 0.
double mean_renewal_time(double mu, double c);

/// Laplace transform E[exp(-beta*D)] of the cycle duration,
/// (2*beta + mu^2)/(beta + mu^2 + beta*cosh(2*c*sqrt(2*beta + mu^2))).
/// Requires beta >= 0; returns exactly 1 at beta = 0.
double laplace_D(double beta, double mu, double c);

/// Mean per-cycle combination E[Z] for Z = a*G + b*H:
/// 2*sinh(c*mu)*(a*cosh(c*mu) + b*sinh(c*mu))/mu, = 2*a*c at mu = 0.
double mean_Z(double a, double b, double mu, double c);

/// Moment generating function E[exp(alpha*Z)] of Z = a*G + b*H, evaluated as
///   1 / ( [1 - (a+b)*exp(c*mu)*s*alpha] * [1 - (a-b)*exp(-c*mu)*s*alpha] ),
/// s = sinh(c*mu)/mu. Valid only while both bracketed factors stay positive;
/// outside that domain throws std::domain_error.
double laplace_Z(double alpha, double a, double b, double mu, double c);

/// Per-unit-time variance of the large-time TV fluctuation before dividing by
/// the mean cycle length: (3 + cosh(2*c*mu) - 4*c*mu*coth(c*mu))/mu^2,
/// = 2c^2/3 at mu = 0. Satisfies var_large_time_tv/mean_renewal_time = sigma2_mu_c.
double var_large_time_tv(double mu, double c);

/// Long-run drift rate of a*G + b*H per unit time: mu*(b + a*coth(c*mu)),
/// = a/c at mu = 0. Equals mean_Z/mean_renewal_time.
double drift_rate(double a, double b, double mu, double c);

/// Joint transform E[exp(alpha*V - beta*L)] of the variation increment V and
/// duration L of one monotone phase of the crossing cycle (up phase when
/// `up` is true, down phase otherwise), with delta = sqrt(mu^2 + 2*beta):
///   up:   delta*exp(-mu*c) / (delta*cosh(delta*c) - (alpha + mu)*sinh(delta*c))
///   down: delta*exp(+mu*c) / (delta*cosh(delta*c) - (alpha - mu)*sinh(delta*c))
/// Requires delta > 0 and a positive denominator. The two phases are
/// independent, so the product at alpha = 0 equals laplace_D.
double laplace_phase(double alpha, double beta, double mu, double c, bool up);

}  // namespace tvar
