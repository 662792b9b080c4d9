#pragma once

namespace fracsub {

/// Mittag-Leffler function E_alpha(z) = sum_n z^n / Gamma(alpha n + 1) for real z and 0 < alpha <= 1.
///
/// Evaluation is split by region: the power series near the origin, the
/// Laplace-type integral representation on the negative axis, and the
/// exponential-plus-correction representation for large positive z.
/// alpha == 1 returns exp(z) exactly. Throws DomainError for alpha outside (0, 1].
double ml_eval(double alpha, double z);

/// Density g_alpha of the one-sided stable law with Laplace transform exp(-p^alpha), 0 < alpha < 1.
/// Uses Zolotarev's single integral over [0, pi]. Throws DomainError for x <= 0 or alpha outside (0, 1).
double stable_density(double alpha, double x);

/// Distribution function P(S_1 <= x) of the same law; 0 for x <= 0.
double stable_cdf(double alpha, double x);

namespace detail {
/// Truncated power series for E_alpha; accurate only where |z|^{1/alpha} is moderate.
double ml_series(double alpha, double z);
/// Zolotarev's function A(phi) = (sin(a phi)/sin phi)^{1/(1-a)} sin((1-a)phi)/sin(a phi).
double zolotarev_a(double alpha, double phi);
}  // namespace detail

}  // namespace fracsub
