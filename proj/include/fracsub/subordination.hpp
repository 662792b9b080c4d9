#pragma once

#include <functional>
#include <vector>

#include "fracsub/kernels.hpp"
#include "fracsub/laplace.hpp"

namespace fracsub {

/// A bounded function of tau >= 0. Breakpoints mark jumps or kinks so quadrature can split there.
struct TimeFunction {
    std::function<double(double)> evaluator;
    double bound = 1.0;
    std::vector<double> breakpoints;

    double operator()(double tau) const { return evaluator(tau); }

    static TimeFunction constant(double c);
    static TimeFunction exponential(double rate);
    /// 1 for tau >= a, 0 otherwise.
    static TimeFunction step(double a);
};

/// Binds a kernel to an inversion method and a tail cutoff for truncating tau-integrals.
class SubordinationEvaluator {
public:
    explicit SubordinationEvaluator(KernelSpec spec, InversionMethod method = FixedTalbot{},
                                    double tail_cutoff = 1e-10);

    const KernelSpec& spec() const { return spec_; }
    const InversionMethod& method() const { return method_; }
    double tail_cutoff() const { return tail_cutoff_; }

private:
    KernelSpec spec_;
    InversionMethod method_;
    double tail_cutoff_;
};

/// Density rho_t(tau) of the inverse subordinator E_t. Stable kernels use the closed form in
/// g_alpha; other kernels invert p -> K(p) exp(-tau L(p)) at t.
/// Throws ConsistencyError if the value is below -1e-8.
double rho(const SubordinationEvaluator& ev, double t, double tau);

/// Always the inversion route, also for stable kernels.
double rho_inverted(const SubordinationEvaluator& ev, double t, double tau);

/// P(E_t > a) = int_a^inf rho_t, from p -> exp(-a L(p))/p; clamped to [0, 1].
double rho_tail(const SubordinationEvaluator& ev, double t, double a);

/// Smallest T = 2^k (k >= -10) with rho_tail(t, T) below the evaluator's cutoff.
double horizon(const SubordinationEvaluator& ev, double t);

/// int_0^inf rho_t(tau) u0(tau) dtau, truncated at horizon(t).
double subordinate(const SubordinationEvaluator& ev, const TimeFunction& u0, double t);

/// Same integral restricted to [lo, hi] (hi may be +infinity, meaning the horizon).
double subordinate_range(const SubordinationEvaluator& ev, const TimeFunction& u0, double t, double lo, double hi);

/// General fractional derivative int_0^t k(t-s) f'(s) ds by product integration of a piecewise
/// linear interpolant on the mesh s_j = t (j/N)^r; the kernel primitive is integrated exactly.
double gfd_apply(const KernelSpec& spec, const TimeFunction& f, double t, int intervals = 2000);

/// Mesh grading exponent used by gfd_apply for this kernel.
double gfd_grading(const KernelSpec& spec);

}  // namespace fracsub
