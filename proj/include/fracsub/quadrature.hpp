#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fracsub::quad {

struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    unsigned max_depth = 30;        // smallest panel is (b - a) / 2^max_depth
    std::size_t max_intervals = 4000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 61-point Gauss-Kronrod on [a, b] (the panel with the largest error is
/// bisected first); b may be +infinity. Throws QuadratureError when the error estimate stays
/// far above the request.
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// Same as integrate() but splits [a, b] at the given interior breakpoints first.
Result integrate_pieces(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                        const Options& opt = {});

/// Geometric breakpoints a + (b-a)·2^{-k}, k = 1..levels, used to grade panels toward a.
std::vector<double> graded_breakpoints(double a, double b, int levels);

/// Tanh-sinh on a finite interval; tolerates integrable endpoint singularities.
Result integrate_singular(const Integrand& f, double a, double b, const Options& opt = {});

}  // namespace fracsub::quad
