#include "fracsub/specialfns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracsub/errors.hpp"
#include "fracsub/quadrature.hpp"

namespace fracsub {

namespace {

constexpr double kPi = std::numbers::pi;

void require_ml_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        std::ostringstream os;
        os << "Mittag-Leffler index must lie in (0, 1], got " << alpha;
        throw DomainError(os.str());
    }
}

void require_stable_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "stability index must lie in (0, 1), got " << alpha;
        throw DomainError(os.str());
    }
}

// Integral over u in (0, inf) of exp(-(s u)^{1/alpha}) / (u^2 + 2 u c + 1), c = +-cos(alpha pi).
// With u = r^alpha this is the Laplace-type representation of E_alpha on the real axis.
double ml_tail_integral(double alpha, double s, double c) {
    auto f = [=](double u) {
        const double den = u * u + 2.0 * u * c + 1.0;
        return std::exp(-std::pow(s * u, 1.0 / alpha)) / den;
    };
    quad::Options opt;
    opt.rel_tol = 1e-14;
    opt.max_depth = 40;
    // Split where the exponential factor turns over (u ~ 1/s) and at the denominator's minimum (u ~ 1).
    const double split = std::max(1.0, 1.0 / s);
    const double cuts[] = {std::min(1.0, 1.0 / s)};
    const double head = quad::integrate_pieces(f, 0.0, split, cuts, opt).value;
    const double tail = quad::integrate(f, split, std::numeric_limits<double>::infinity(), opt).value;
    return head + tail;
}

}  // namespace

namespace detail {

double ml_series(double alpha, double z) {
    if (z == 0.0) return 1.0;
    const double logabs = std::log(std::abs(z));
    const bool alternating = z < 0.0;
    // Neumaier-compensated sum of z^n / Gamma(alpha n + 1).
    double sum = 1.0, comp = 0.0;
    double prev = 1.0;
    for (int n = 1; n < 20000; ++n) {
        const double mag = std::exp(n * logabs - std::lgamma(alpha * n + 1.0));
        const double term = (alternating && (n & 1)) ? -mag : mag;
        const double t = sum + term;
        comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        // Stop only once the terms are past their peak.
        if (mag <= prev && mag < 1e-17 * std::abs(sum + comp)) break;
        prev = mag;
    }
    return sum + comp;
}

double zolotarev_a(double alpha, double phi) {
    const double s_a = std::sin(alpha * phi);
    const double s_1a = std::sin((1.0 - alpha) * phi);
    // sin(phi) = sin(pi - phi) keeps relative accuracy near pi.
    const double s = phi > 0.5 * kPi ? std::sin(kPi - phi) : std::sin(phi);
    const double log_a = (std::log(s_a) - std::log(s)) / (1.0 - alpha) + std::log(s_1a) - std::log(s_a);
    return std::exp(log_a);
}

}  // namespace detail

double ml_eval(double alpha, double z) {
    require_ml_alpha(alpha);
    if (std::isnan(z)) throw DomainError("Mittag-Leffler argument is NaN");
    if (alpha == 1.0) return std::exp(z);
    if (z == 0.0) return 1.0;

    if (z < 0.0) {
        // The alternating series loses roughly log10(E_alpha(|z|)/E_alpha(z)) digits, so it is kept
        // to |z| <= 1; beyond that the positive integrand below has no cancellation.
        if (-z <= 1.0) return detail::ml_series(alpha, z);
        const double c = std::cos(alpha * kPi);
        return std::sin(alpha * kPi) / (alpha * kPi) * ml_tail_integral(alpha, -z, c);
    }

    if (z <= 5.0) return detail::ml_series(alpha, z);
    const double lead = std::pow(z, 1.0 / alpha);
    if (lead > 709.0) throw DomainError("Mittag-Leffler value overflows double precision");
    const double c = -std::cos(alpha * kPi);
    return std::exp(lead) / alpha - std::sin(alpha * kPi) / (alpha * kPi) * ml_tail_integral(alpha, z, c);
}

namespace {

// phi* in [0, pi] where c·A(phi) = 1; A is increasing, so bisection suffices.
double peak_location(double alpha, double c) {
    if (c * detail::zolotarev_a(alpha, 1e-300) >= 1.0) return 0.0;
    double lo = 0.0, hi = kPi;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (c * detail::zolotarev_a(alpha, mid) < 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Convergent expansions in x^{-alpha}, used where x^alpha is large and the Zolotarev integrand
// concentrates in a thin layer at phi = pi:
//   g(x)     = (1/pi) sum_k (-1)^{k+1} Gamma(alpha k + 1)/k! sin(pi alpha k) x^{-alpha k - 1}
//   1 - F(x) = (1/pi) sum_k (-1)^{k+1} Gamma(alpha k)/k! sin(pi alpha k) x^{-alpha k}
constexpr double kSeriesThreshold = 4.0;

double large_x_series(double alpha, double x, bool density) {
    const double w = std::pow(x, -alpha);
    double sum = 0.0, wk = 1.0, kfact = 1.0;
    for (int k = 1; k < 200; ++k) {
        wk *= w;
        kfact *= k;
        const double g = density ? std::tgamma(alpha * k + 1.0) : std::tgamma(alpha * k);
        const double mag = g / kfact * wk;
        sum += (k % 2 == 1 ? 1.0 : -1.0) * mag * std::sin(kPi * alpha * k);
        // The sine vanishes for some k (alpha rational), so stop on the magnitude alone.
        if (mag < 1e-17 * std::fabs(sum)) break;
    }
    return (density ? sum / x : sum) / kPi;
}

}  // namespace

double stable_density(double alpha, double x) {
    require_stable_alpha(alpha);
    if (!(x > 0.0)) {
        std::ostringstream os;
        os << "stable density requires x > 0, got " << x;
        throw DomainError(os.str());
    }
    // Levy law.
    if (alpha == 0.5) return std::exp(-0.25 / x) / (2.0 * std::sqrt(kPi) * x * std::sqrt(x));
    if (std::pow(x, alpha) >= kSeriesThreshold) return large_x_series(alpha, x, true);
    const double c = std::pow(x, -alpha / (1.0 - alpha));
    if (!std::isfinite(c) || c > 745.0 / detail::zolotarev_a(alpha, 1e-300)) return 0.0;
    // g(x) = alpha / ((1-alpha) pi x) * int_0^pi (c A) exp(-c A) dphi; the integrand peaks where c A = 1.
    auto f = [=](double phi) {
        if (phi <= 0.0 || phi >= kPi) return 0.0;
        const double ca = c * detail::zolotarev_a(alpha, phi);
        return ca * std::exp(-ca);
    };
    const double peak = peak_location(alpha, c);
    quad::Options opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-300;
    opt.max_depth = 40;
    const double cuts[] = {peak};
    const double integral = quad::integrate_pieces(f, 0.0, kPi, cuts, opt).value;
    return alpha / ((1.0 - alpha) * kPi * x) * integral;
}

double stable_cdf(double alpha, double x) {
    require_stable_alpha(alpha);
    if (x <= 0.0) return 0.0;
    if (alpha == 0.5) return std::erfc(0.5 / std::sqrt(x));
    if (std::pow(x, alpha) >= kSeriesThreshold) return 1.0 - large_x_series(alpha, x, false);
    const double c = std::pow(x, -alpha / (1.0 - alpha));
    if (!std::isfinite(c)) return 0.0;
    if (c == 0.0) return 1.0;
    auto f = [=](double phi) {
        if (phi <= 0.0) return std::exp(-c * detail::zolotarev_a(alpha, 1e-300));
        if (phi >= kPi) return 0.0;
        return std::exp(-c * detail::zolotarev_a(alpha, phi));
    };
    const double peak = peak_location(alpha, c);
    quad::Options opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-300;
    opt.max_depth = 40;
    const double cuts[] = {peak};
    return quad::integrate_pieces(f, 0.0, kPi, cuts, opt).value / kPi;
}

}  // namespace fracsub
