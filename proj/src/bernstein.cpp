#include "fracsub/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracsub/errors.hpp"
#include "fracsub/quadrature.hpp"

namespace fracsub {

namespace {

constexpr double kPi = std::numbers::pi;

// int_R g(y) dy as two half-lines.
double whole_line(const std::function<double(double)>& g, double rel_tol) {
    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-300;
    const double right = quad::integrate(g, 0.0, HUGE_VAL, opt).value;
    const double left = quad::integrate([&g](double s) { return g(-s); }, 0.0, HUGE_VAL, opt).value;
    return left + right;
}

double sigma_at(const StieltjesSpec& spec, double t) {
    const double s = spec.sigma_density(t);
    if (s < 0.0 || std::isnan(s)) throw DomainError("Stieltjes density must be nonnegative");
    return s;
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// Signed forward differences at tau: sign_n · Delta^n f for n = first..max, relative to the noise floor.
// Returns the first violating order, or nullopt; updates the running margin.
std::optional<int> check_point(const RealFunction& f, double tau, int first, int max_order, bool bernstein,
                               const DifferenceOptions& opt, double& margin) {
    const double h = opt.relative_step * tau;
    std::vector<double> v(static_cast<std::size_t>(max_order) + 1);
    double scale = 0.0;
    for (int k = 0; k <= max_order; ++k) {
        v[static_cast<std::size_t>(k)] = f(tau + k * h);
        if (!std::isfinite(v[static_cast<std::size_t>(k)])) return k == 0 ? 0 : k;
        scale = std::max(scale, std::fabs(v[static_cast<std::size_t>(k)]));
    }
    for (int n = first; n <= max_order; ++n) {
        double d = 0.0;
        for (int k = 0; k <= n; ++k) d += ((n - k) % 2 ? -1.0 : 1.0) * binomial(n, k) * v[static_cast<std::size_t>(k)];
        const double sign = bernstein ? (n % 2 ? 1.0 : -1.0) : (n % 2 ? -1.0 : 1.0);
        const double noise = std::ldexp(opt.relative_noise, n) * std::max(scale, 1e-300);
        const double rel = sign * d / noise;
        margin = std::min(margin, rel);
        if (rel < -1.0) return n;
    }
    return std::nullopt;
}

ClassEvidence scan(const RealFunction& f, const std::vector<double>& grid, const DifferenceOptions& opt,
                   bool bernstein) {
    if (opt.max_order < 1 || opt.max_order > 8) throw DomainError("difference order must lie in [1, 8]");
    if (!(opt.relative_step > 0.0)) throw DomainError("relative step must be positive");
    ClassEvidence ev;
    for (double tau : grid) {
        if (!(tau > 0.0)) throw DomainError("class checks live on (0, inf); grid points must be positive");
        const int first = bernstein ? 1 : 0;
        if (bernstein) {
            const double v = f(tau);
            if (!(v >= 0.0)) {
                ev.passed = false;
                ev.witness = tau;
                ev.order = 0;
                ev.reason = "negative value";
                return ev;
            }
        }
        if (auto bad = check_point(f, tau, first, opt.max_order, bernstein, opt, ev.margin)) {
            ev.passed = false;
            ev.witness = tau;
            ev.order = *bad;
            std::ostringstream os;
            os << "order-" << *bad << " difference has the wrong sign at tau = " << tau;
            ev.reason = os.str();
            return ev;
        }
    }
    ev.reason = "all sign conditions hold on the grid";
    return ev;
}

}  // namespace

void validate(const StieltjesSpec& spec) {
    if (spec.a < 0.0 || spec.b < 0.0) throw DomainError("Stieltjes constants a and b must be nonnegative");
    if (!spec.sigma_density) return;
    // The y-integrand must have settled by |y| = 200: doubling the window may not change the mass.
    auto g = [&spec](double y) {
        const double t = std::exp(y);
        return t == 0.0 || std::isinf(t) ? 0.0 : sigma_at(spec, t) * t / (1.0 + t);
    };
    double m = HUGE_VAL;
    try {
        quad::Options opt;
        opt.rel_tol = 1e-10;
        const double inner = quad::integrate_pieces(g, -200.0, 200.0, std::vector<double>{0.0}, opt).value;
        const double outer = inner + quad::integrate(g, 200.0, 400.0, opt).value + quad::integrate(g, -400.0, -200.0, opt).value;
        if (std::fabs(outer - inner) <= 1e-6 * std::max(1.0, std::fabs(inner))) m = inner;
    } catch (const QuadratureError&) {
    }
    if (!std::isfinite(m)) throw DomainError("Stieltjes measure fails int (1+t)^{-1} dsigma < inf");
}

double eval_stieltjes(const StieltjesSpec& spec, double tau) {
    if (!(tau > 0.0)) throw DomainError("Stieltjes functions are evaluated at tau > 0");
    double out = spec.a / tau + spec.b;
    if (spec.sigma_density) {
        out += whole_line(
            [&spec, tau](double y) {
                const double t = std::exp(y);
                return t == 0.0 || std::isinf(t) ? 0.0 : sigma_at(spec, t) * t / (tau + t);
            },
            1e-14);
    }
    return out;
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
    if (!(lo > 0.0 && hi > lo && ratio > 1.0)) throw DomainError("geometric grid needs 0 < lo < hi and ratio > 1");
    std::vector<double> out;
    for (double x = lo; x <= hi * (1.0 + 1e-12); x *= ratio) out.push_back(x);
    return out;
}

ClassEvidence is_completely_monotone(const RealFunction& f, const std::vector<double>& grid,
                                     const DifferenceOptions& opt) {
    return scan(f, grid, opt, false);
}

ClassEvidence is_bernstein(const RealFunction& f, const std::vector<double>& grid, const DifferenceOptions& opt) {
    ClassEvidence ev = scan(f, grid, opt, true);
    if (!ev.passed) return ev;
    for (double s : {0.5, 1.0, 2.0}) {
        ClassEvidence cm = is_completely_monotone([&f, s](double x) { return std::exp(-s * f(x)); }, grid, opt);
        ev.margin = std::min(ev.margin, cm.margin);
        if (!cm.passed) {
            cm.order = -1;
            std::ostringstream os;
            os << "exp(-" << s << " f) is not completely monotone: " << cm.reason;
            cm.reason = os.str();
            return cm;
        }
    }
    return ev;
}

std::vector<NamedFunction> builtin_functions() {
    const double t = 2.0;
    return {
        {"s1", "1", [](double) { return 1.0; }},
        {"s2", "1/tau", [](double x) { return 1.0 / x; }},
        {"s3", "1/(tau+2)", [t](double x) { return 1.0 / (x + t); }},
        {"s4", "3/(tau+2)", [t](double x) { return (1.0 + t) / (x + t); }},
        {"s5", "tau^(-0.5)", [](double x) { return std::pow(x, -0.5); }},
        {"s6", "tau^(-1/2) atan(tau^(-1/2))", [](double x) { return std::atan(1.0 / std::sqrt(x)) / std::sqrt(x); }},
        {"s7", "log(1+tau)/tau", [](double x) { return std::log1p(x) / x; }},
        {"b1", "tau^0.5", [](double x) { return std::sqrt(x); }},
        {"b2", "tau/(1+tau)", [](double x) { return x / (1.0 + x); }},
        {"b3", "log(1+tau)", [](double x) { return std::log1p(x); }},
        {"c1", "1", [](double) { return 1.0; }},
        {"c2", "tau", [](double x) { return x; }},
        {"c3", "tau/(tau+2)", [t](double x) { return x / (x + t); }},
        {"c4", "tau^0.5", [](double x) { return std::sqrt(x); }},
        {"c5", "tau^(1/2) atan(tau^(-1/2))", [](double x) { return std::sqrt(x) * std::atan(1.0 / std::sqrt(x)); }},
        {"c6", "log(1+tau)", [](double x) { return std::log1p(x); }},
        {"sin_plus_2", "sin(tau)+2", [](double x) { return std::sin(x) + 2.0; }},
        {"square", "tau^2", [](double x) { return x * x; }},
        {"exp_neg", "exp(-tau)", [](double x) { return std::exp(-x); }},
    };
}

NamedFunction builtin_function(const std::string& name) {
    for (auto& f : builtin_functions())
        if (f.name == name) return f;
    throw DomainError("unknown built-in function '" + name + "'");
}

}  // namespace fracsub
