#include "fracsub/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracsub/errors.hpp"

namespace fracsub::quad {

namespace {

void check(const Result& r, const Options& opt, double a, double b) {
    if (!std::isfinite(r.value)) {
        std::ostringstream os;
        os << "non-finite integral on [" << a << ", " << b << "]";
        throw QuadratureError(os.str());
    }
    // Kronrod error estimates are pessimistic; only gross failures are fatal.
    const double budget = std::max(opt.abs_tol, opt.rel_tol * r.l1);
    if (r.error > 1e4 * budget && r.error > 1e-6 * std::max(1.0, r.l1)) {
        std::ostringstream os;
        os << "adaptive quadrature did not converge on [" << a << ", " << b << "]: error estimate "
           << r.error << " for value " << r.value;
        throw QuadratureError(os.str());
    }
}

}  // namespace

namespace {

struct Panel {
    double a, b, value, error, l1;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// One 61-point Kronrod panel with its embedded 30-point Gauss rule; error = |K - G|.
Panel gk61(const Integrand& f, double a, double b) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 61>;
    using Gauss = boost::math::quadrature::gauss<double, 30>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double k = wk[0] * fc, g = 0.0, l1 = wk[0] * std::fabs(fc);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double f1 = f(c - h * x[i]), f2 = f(c + h * x[i]);
        k += wk[i] * (f1 + f2);
        l1 += wk[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) g += wg[(i - 1) / 2] * (f1 + f2);
    }
    return Panel{a, b, k * h, std::fabs(k - g) * h, l1 * h};
}

Result adaptive(const Integrand& f, double a, double b, const Options& opt) {
    const double min_width = (b - a) * std::ldexp(1.0, -static_cast<int>(std::min(opt.max_depth, 1000u)));
    std::priority_queue<Panel> heap;
    std::vector<Panel> done;  // panels too narrow to split further
    Panel first = gk61(f, a, b);
    double value = first.value, error = first.error, l1 = first.l1;
    heap.push(first);
    std::size_t count = 1;
    double retired = 0.0;  // error of panels that further bisection cannot improve
    while (!heap.empty() && count < opt.max_intervals) {
        // |K - G| cannot drop much below the rounding level of the absolute integrand.
        const double target = std::max({opt.abs_tol, opt.rel_tol * std::fabs(value), 1e-14 * l1});
        if (error - retired <= target) break;
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a <= min_width || mid <= worst.a || mid >= worst.b) {
            done.push_back(worst);
            retired += worst.error;
            continue;
        }
        const Panel left = gk61(f, worst.a, mid), right = gk61(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        ++count;
        // Halves no better than their parent at a tiny error level: the estimate sits on the
        // rounding floor, so stop spending intervals there.
        if (left.error + right.error >= worst.error && worst.error <= 1e-12 * l1) {
            done.push_back(left);
            done.push_back(right);
            retired += left.error + right.error;
            continue;
        }
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed drift from the running updates.
    Result r;
    auto add = [&r](const Panel& p) {
        r.value += p.value;
        r.error += p.error;
        r.l1 += p.l1;
    };
    for (const auto& p : done) add(p);
    while (!heap.empty()) {
        add(heap.top());
        heap.pop();
    }
    return r;
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
    if (a == b) return {};
    if (b < a) {
        Result r = integrate(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    Result r;
    if (std::isinf(b)) {
        // x = a + (1 - z)/z maps z in (0, 1] onto [a, inf).
        auto g = [&f, a](double z) {
            const double x = a + (1.0 - z) / z;
            const double v = f(x);
            return v == 0.0 ? 0.0 : v / (z * z);
        };
        r = adaptive(g, 0.0, 1.0, opt);
    } else {
        r = adaptive(f, a, b, opt);
    }
    check(r, opt, a, b);
    return r;
}

Result integrate_pieces(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                        const Options& opt) {
    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(b);
    Result total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        const Result piece = integrate(f, cuts[i], cuts[i + 1], opt);
        total.value += piece.value;
        total.error += piece.error;
        total.l1 += piece.l1;
    }
    return total;
}

std::vector<double> graded_breakpoints(double a, double b, int levels) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(levels, 0)));
    double w = b - a;
    for (int k = 0; k < levels; ++k) {
        w *= 0.5;
        out.push_back(a + w);
    }
    return out;
}

Result integrate_singular(const Integrand& f, double a, double b, const Options& opt) {
    boost::math::quadrature::tanh_sinh<double> ts;
    Result r;
    r.value = ts.integrate(f, a, b, opt.rel_tol, &r.error, &r.l1);
    check(r, opt, a, b);
    return r;
}

}  // namespace fracsub::quad
