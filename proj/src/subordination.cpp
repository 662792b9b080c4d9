#include "fracsub/subordination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracsub/errors.hpp"
#include "fracsub/quadrature.hpp"
#include "fracsub/specialfns.hpp"

namespace fracsub {

namespace {

constexpr double kNegTol = 1e-8;

// rho_t(tau) = t^{-alpha} M_alpha(tau t^{-alpha}) with the Wright-type series
// M_alpha(z) = (1/pi) sum_{n>=0} (-z)^n/n! Gamma(alpha(n+1)) sin(pi alpha (n+1)).
// Used only for tiny z, where the closed form in g_alpha overflows.
double wright_small(double alpha, double z) {
    double sum = 0.0, zn = 1.0;
    for (int n = 0; n < 60; ++n) {
        const double a = alpha * (n + 1);
        const double term = zn * std::tgamma(a) * std::sin(std::numbers::pi * a);
        sum += term;
        if (n > 2 && std::fabs(term) < 1e-17 * std::fabs(sum)) break;
        zn *= -z / (n + 1);
    }
    return sum / std::numbers::pi;
}

double stable_rho(double alpha, double t, double tau) {
    const double z = tau * std::pow(t, -alpha);
    if (z < 1e-4) return std::pow(t, -alpha) * wright_small(alpha, z);
    const double x = t * std::pow(tau, -1.0 / alpha);
    return t / alpha * std::pow(tau, -1.0 - 1.0 / alpha) * stable_density(alpha, x);
}

double checked(double v, const char* what) {
    if (v < -kNegTol) throw ConsistencyError(std::string(what) + " is negative beyond -1e-8");
    return v;
}

void require_positive(double t, const char* name) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(name) + " must be positive and finite");
}

}  // namespace

TimeFunction TimeFunction::constant(double c) {
    return TimeFunction{[c](double) { return c; }, std::fabs(c), {}};
}

TimeFunction TimeFunction::exponential(double rate) {
    if (rate < 0.0) throw DomainError("exponential time function needs a nonnegative rate");
    return TimeFunction{[rate](double tau) { return std::exp(-rate * tau); }, 1.0, {}};
}

TimeFunction TimeFunction::step(double a) {
    if (a < 0.0) throw DomainError("step location must be nonnegative");
    return TimeFunction{[a](double tau) { return tau >= a ? 1.0 : 0.0; }, 1.0, {a}};
}

SubordinationEvaluator::SubordinationEvaluator(KernelSpec spec, InversionMethod method, double tail_cutoff)
    : spec_(std::move(spec)), method_(method), tail_cutoff_(tail_cutoff) {
    validate(method_);
    if (!(tail_cutoff > 0.0 && tail_cutoff <= 1e-4)) throw DomainError("tail_cutoff must lie in (0, 1e-4]");
}

double rho_inverted(const SubordinationEvaluator& ev, double t, double tau) {
    require_positive(t, "t");
    require_positive(tau, "tau");
    const KernelSpec& spec = ev.spec();
    auto logF = [&spec, tau](cplx p) {
        const cplx K = laplace_K(spec, p);
        return std::log(K) - tau * p * K;
    };
    return checked(invert_log(logF, ev.method(), t), "rho");
}

double rho(const SubordinationEvaluator& ev, double t, double tau) {
    require_positive(t, "t");
    require_positive(tau, "tau");
    if (ev.spec().is_stable()) return checked(stable_rho(ev.spec().stable_alpha(), t, tau), "rho");
    return rho_inverted(ev, t, tau);
}

double rho_tail(const SubordinationEvaluator& ev, double t, double a) {
    require_positive(t, "t");
    if (a < 0.0) throw DomainError("tail start must be nonnegative");
    if (a == 0.0) return 1.0;
    const KernelSpec& spec = ev.spec();
    auto logF = [&spec, a](cplx p) { return -std::log(p) - a * laplace_exponent(spec, p); };
    const double v = checked(invert_log(logF, ev.method(), t), "rho tail");
    return std::clamp(v, 0.0, 1.0);
}

double horizon(const SubordinationEvaluator& ev, double t) {
    double T = std::ldexp(1.0, -10);
    for (int k = 0; k < 80; ++k, T *= 2.0)
        if (rho_tail(ev, t, T) < ev.tail_cutoff()) return T;
    throw ConsistencyError("tail of rho_t does not fall below the cutoff before tau = 2^70");
}

double subordinate_range(const SubordinationEvaluator& ev, const TimeFunction& u0, double t, double lo, double hi) {
    require_positive(t, "t");
    const double T = horizon(ev, t);
    if (!std::isfinite(hi) || hi > T) hi = T;
    lo = std::max(lo, 0.0);
    if (hi <= lo) return 0.0;

    std::vector<double> bps;
    for (double b : quad::graded_breakpoints(0.0, T, 10))
        if (b > lo && b < hi) bps.push_back(b);
    for (double b : u0.breakpoints)
        if (b > lo && b < hi) bps.push_back(b);
    // Uniform panels over [0, T] so a narrow bulk (alpha near 1) is not skipped by the first Kronrod pass.
    for (int k = 1; k < 8; ++k) {
        const double b = T * k / 8.0;
        if (b > lo && b < hi) bps.push_back(b);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    auto f = [&](double tau) {
        if (tau <= 0.0) tau = std::numeric_limits<double>::min();
        return rho(ev, t, tau) * u0(tau);
    };
    // Inverted rho carries ~1e-10 relative noise; asking for more only burns panels.
    quad::Options opt;
    const bool closed_form = ev.spec().is_stable();
    opt.rel_tol = closed_form ? 1e-11 : 1e-8;
    opt.abs_tol = closed_form ? 1e-14 : 1e-12;
    opt.max_intervals = closed_form ? 300 : 100;
    return quad::integrate_pieces(f, lo, hi, bps, opt).value;
}

double subordinate(const SubordinationEvaluator& ev, const TimeFunction& u0, double t) {
    return subordinate_range(ev, u0, t, 0.0, std::numeric_limits<double>::infinity());
}

double gfd_grading(const KernelSpec& spec) {
    if (spec.is_stable()) return std::clamp((2.0 - spec.stable_alpha()) / spec.stable_alpha(), 2.0, 4.0);
    return 3.0;
}

double gfd_apply(const KernelSpec& spec, const TimeFunction& f, double t, int intervals) {
    require_positive(t, "t");
    if (intervals < 16) throw DomainError("gfd_apply needs at least 16 intervals");
    const double r = gfd_grading(spec);
    const int N = intervals;
    std::vector<double> s(static_cast<std::size_t>(N) + 1), v(s.size());
    for (int j = 0; j <= N; ++j) {
        s[static_cast<std::size_t>(j)] = j == N ? t : t * std::pow(static_cast<double>(j) / N, r);
        v[static_cast<std::size_t>(j)] = f(s[static_cast<std::size_t>(j)]);
    }
    double sum = 0.0, comp = 0.0;
    double upper = kernel_primitive(spec, t);
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        const double lower = kernel_primitive(spec, t - s[j + 1]);
        const double slope = (v[j + 1] - v[j]) / (s[j + 1] - s[j]);
        const double term = slope * (upper - lower);
        const double tsum = sum + term;
        comp += std::fabs(sum) >= std::fabs(term) ? (sum - tsum) + term : (term - tsum) + sum;
        sum = tsum;
        upper = lower;
    }
    const double out = sum + comp;
    if (!std::isfinite(out)) throw QuadratureError("gfd_apply produced a non-finite value");
    return out;
}

}  // namespace fracsub
