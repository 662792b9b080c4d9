#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fracsub {

using cplx = std::complex<double>;

/// Caputo-Djrbashian kernel k(t) = t^{-alpha}/Gamma(1-alpha), K(p) = p^{alpha-1}.
struct StableKernel {
    double alpha;
};

/// Distributed-order kernel k(t) = int_0^1 t^{-a} mu(a) / Gamma(1-a) da.
///
/// The weight is integrated with a fixed Gauss-Legendre rule (64 nodes, or 8 nodes per
/// sample interval for sampled weights), so K(p) is a smooth deterministic function of p,
/// including complex p off the negative real axis.
class DistributedOrderKernel {
public:
    /// mu(a) = coeff · a^lambda; lambda = 0 gives the uniform weight.
    struct PowerLaw {
        double coeff;
        double lambda;
    };

    static DistributedOrderKernel uniform(double level = 1.0);
    static DistributedOrderKernel power(double lambda, double coeff = 1.0);
    /// Samples of mu on the uniform grid a_i = i/(n-1), i = 0..n-1 (endpoints included), linearly interpolated.
    static DistributedOrderKernel from_samples(std::vector<double> samples);

    DistributedOrderKernel(std::function<double(double)> weight, std::string name,
                           std::optional<PowerLaw> law = std::nullopt);

    double weight(double a) const { return weight_(a); }
    double mu0() const { return mu0_; }
    double mu1() const { return mu1_; }
    const std::optional<PowerLaw>& power_law() const { return law_; }
    const std::string& name() const { return name_; }

    cplx transform(cplx p) const;
    double k(double t) const;
    double primitive(double t) const;

private:
    std::function<double(double)> weight_;
    std::string name_;
    std::optional<PowerLaw> law_;
    double mu0_ = 0.0, mu1_ = 0.0;
    std::vector<double> nodes_;     // quadrature abscissae in [0, 1]
    std::vector<double> weighted_;  // mu(a_i) · w_i
};

/// Kernel whose Laplace transform is the Stieltjes transform K(p) = int_0^inf phi(t)/(p+t) dt.
///
/// phi ~ c0 t^{theta-1} at the origin and phi ~ c_inf t^{-alphaTail} at infinity. The
/// integrals are evaluated by the trapezoidal rule in y = log t on a fixed grid, which
/// converges geometrically because the integrand decays exponentially in y at both ends
/// and is analytic in a strip whose width is the distance from p to the negative axis.
class StieltjesKernel {
public:
    /// phi(t) = t^{theta-1} (1+t)^{-(alphaTail+theta-1)}.
    static StieltjesKernel two_power(double theta, double alpha_tail);
    /// phi(t) = t^{theta-1}; alphaTail = 1 - theta.
    static StieltjesKernel power(double theta);
    /// phi(t) = exp(-t), declared with theta = alphaTail = 1/2 (both bounds hold).
    static StieltjesKernel exponential();
    /// phi(t) = t^{-1/2} for t > 1, zero otherwise. K(0+) = 2 is finite, so hypothesis (H) fails at zero.
    static StieltjesKernel cut_power();
    /// Positive samples (t_i, phi_i) on an increasing grid, interpolated in log-log coordinates and
    /// extended by the declared power laws outside the sampled range.
    static StieltjesKernel from_samples(std::vector<double> t, std::vector<double> phi, double theta,
                                        double alpha_tail);

    StieltjesKernel(std::function<double(double)> density, double theta, double alpha_tail, std::string name,
                    std::optional<std::pair<double, double>> coefficients = std::nullopt);

    double density(double t) const { return table_->density(t); }
    double theta() const { return theta_; }
    double alpha_tail() const { return alpha_tail_; }
    /// c0 with phi(t) ~ c0 t^{theta-1} as t -> 0.
    double zero_coefficient() const { return c0_; }
    /// c_inf with phi(t) ~ c_inf t^{-alphaTail} as t -> inf.
    double infinity_coefficient() const { return cinf_; }
    const std::string& name() const { return name_; }

    cplx transform(cplx p) const;
    double k(double t) const;
    double primitive(double t) const;

private:
    struct Table {
        std::function<double(double)> density;
        std::vector<double> t;   // e^{y_j}
        std::vector<double> wt;  // h · phi(t_j) · t_j
        std::vector<double> w;   // h · phi(t_j)
    };
    std::shared_ptr<const Table> table_;
    double theta_, alpha_tail_;
    double c0_ = 0.0, cinf_ = 0.0;
    std::string name_;
};

/// A general-fractional-derivative kernel: one of the three supported families. Immutable.
class KernelSpec {
public:
    using Family = std::variant<StableKernel, DistributedOrderKernel, StieltjesKernel>;

    static KernelSpec stable(double alpha);
    explicit KernelSpec(DistributedOrderKernel kernel);
    explicit KernelSpec(StieltjesKernel kernel);

    const Family& family() const { return family_; }
    bool is_stable() const { return std::holds_alternative<StableKernel>(family_); }
    /// Throws DomainError unless the spec is Stable.
    double stable_alpha() const;
    /// "stable", "distributed" or "stieltjes".
    std::string family_name() const;
    /// Family plus parameters, e.g. "stable(alpha=0.5)".
    std::string describe() const;

private:
    explicit KernelSpec(Family f) : family_(std::move(f)) {}
    Family family_;
};

double kernel_k(const KernelSpec& spec, double t);
/// int_0^t k(s) ds; its Laplace transform is K(p)/p.
double kernel_primitive(const KernelSpec& spec, double t);

double laplace_K(const KernelSpec& spec, double p);
cplx laplace_K(const KernelSpec& spec, cplx p);

/// L(p) = p K(p), the Laplace exponent of the associated subordinator.
double laplace_exponent(const KernelSpec& spec, double p);
cplx laplace_exponent(const KernelSpec& spec, cplx p);

enum class Regime { zero, infinity };

/// Leading-order asymptote of K(p) as p -> 0 or p -> infinity.
/// Throws UnsupportedCase when the family's parameters do not pin down a leading term.
double asymptote_K(const KernelSpec& spec, Regime regime, double p);

struct HypothesisReport {
    bool limits_at_zero_ok = false;
    bool limits_at_infinity_ok = false;
    bool complete_monotone_ok = false;
    std::vector<double> sampled_p_grid;
    std::vector<std::pair<std::string, double>> details;

    bool all_ok() const { return limits_at_zero_ok && limits_at_infinity_ok && complete_monotone_ok; }
};

/// Sampled evidence for hypothesis (H): K diverges at 0 and vanishes at infinity, L = pK does the
/// opposite, and K passes an order-6 alternating forward-difference test at every grid point.
///
/// Divergence is judged by the iterated-log slope d log K / d log log(1/p) over the lowest decade
/// (and its analogue at the top decade); a magnitude >= 1/2 is required, which accepts every rate at
/// least as fast as (log)^{-1/2} and rejects finite limits. The grid must be sorted and span at least
/// six decades across p = 1; shorter grids leave the limit flags false.
HypothesisReport validate_hypothesis(const KernelSpec& spec, std::span<const double> p_grid);

/// 10^{lo_exp} .. 10^{hi_exp} with the given number of points per decade (endpoints included).
std::vector<double> log_grid(double lo_exp, double hi_exp, int points_per_decade);

}  // namespace fracsub
