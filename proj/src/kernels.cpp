#include "fracsub/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "fracsub/errors.hpp"

namespace fracsub {

namespace {

constexpr double kPi = std::numbers::pi;

template <typename... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Gauss-Legendre rule with N nodes mapped to [a, b], appended to (x, w).
template <int N>
void append_gauss(double a, double b, std::vector<double>& x, std::vector<double>& w) {
    using rule = boost::math::quadrature::gauss<double, N>;
    const auto& abs = rule::abscissa();
    const auto& wts = rule::weights();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < abs.size(); ++i) {
        if (abs[i] == 0.0) {
            x.push_back(mid);
            w.push_back(half * wts[i]);
            continue;
        }
        x.push_back(mid - half * abs[i]);
        w.push_back(half * wts[i]);
        x.push_back(mid + half * abs[i]);
        w.push_back(half * wts[i]);
    }
}

double rgamma(double x) { return 1.0 / std::tgamma(x); }

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// DistributedOrderKernel

DistributedOrderKernel::DistributedOrderKernel(std::function<double(double)> weight, std::string name,
                                               std::optional<PowerLaw> law)
    : weight_(std::move(weight)), name_(std::move(name)), law_(law) {
    mu0_ = weight_(0.0);
    mu1_ = weight_(1.0);
    bool nonzero = false;
    for (int i = 0; i <= 200; ++i) {
        const double v = weight_(i / 200.0);
        require(std::isfinite(v) && v >= 0.0, "distributed-order weight must be finite and nonnegative");
        nonzero = nonzero || v > 0.0;
    }
    require(nonzero, "distributed-order weight must not vanish identically");
    append_gauss<64>(0.0, 1.0, nodes_, weighted_);
    for (std::size_t i = 0; i < nodes_.size(); ++i) weighted_[i] *= weight_(nodes_[i]);
}

DistributedOrderKernel DistributedOrderKernel::uniform(double level) {
    require(level > 0.0, "uniform weight level must be positive");
    return DistributedOrderKernel([level](double) { return level; }, "uniform", PowerLaw{level, 0.0});
}

DistributedOrderKernel DistributedOrderKernel::power(double lambda, double coeff) {
    require(lambda >= 0.0 && coeff > 0.0, "power weight needs lambda >= 0 and coeff > 0");
    std::ostringstream os;
    os << "power:" << lambda;
    return DistributedOrderKernel([lambda, coeff](double a) { return coeff * std::pow(a, lambda); }, os.str(),
                                  PowerLaw{coeff, lambda});
}

DistributedOrderKernel DistributedOrderKernel::from_samples(std::vector<double> samples) {
    require(samples.size() >= 2, "sampled weight needs at least two samples");
    const auto n = samples.size();
    auto interp = [s = samples, n](double a) {
        const double pos = std::clamp(a, 0.0, 1.0) * static_cast<double>(n - 1);
        const auto i = std::min(static_cast<std::size_t>(pos), n - 2);
        const double f = pos - static_cast<double>(i);
        return (1.0 - f) * s[i] + f * s[i + 1];
    };
    DistributedOrderKernel out(interp, "samples");
    // Composite rule aligned with the sample intervals so the kinks sit on panel edges.
    out.nodes_.clear();
    out.weighted_.clear();
    for (std::size_t i = 0; i + 1 < n; ++i)
        append_gauss<8>(static_cast<double>(i) / static_cast<double>(n - 1),
                        static_cast<double>(i + 1) / static_cast<double>(n - 1), out.nodes_, out.weighted_);
    for (std::size_t i = 0; i < out.nodes_.size(); ++i) out.weighted_[i] *= interp(out.nodes_[i]);
    return out;
}

cplx DistributedOrderKernel::transform(cplx p) const {
    const cplx logp = std::log(p);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weighted_[i] * std::exp((nodes_[i] - 1.0) * logp);
    return sum;
}

double DistributedOrderKernel::k(double t) const {
    const double logt = std::log(t);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        sum += weighted_[i] * std::exp(-nodes_[i] * logt) * rgamma(1.0 - nodes_[i]);
    return sum;
}

double DistributedOrderKernel::primitive(double t) const {
    const double logt = std::log(t);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        sum += weighted_[i] * std::exp((1.0 - nodes_[i]) * logt) * rgamma(2.0 - nodes_[i]);
    return sum;
}

// ---------------------------------------------------------------------------
// StieltjesKernel

namespace {

constexpr double kLogStep = 0.2;
// e^{-38} is below double rounding relative to the O(1) bulk of every integral we form.
constexpr double kDecay = 38.0;
// Grid covers |p| and 1/t in [1e-16, 1e16].
constexpr double kLogRange = 36.9;

}  // namespace

StieltjesKernel::StieltjesKernel(std::function<double(double)> density, double theta, double alpha_tail,
                                 std::string name, std::optional<std::pair<double, double>> coefficients)
    : theta_(theta), alpha_tail_(alpha_tail), name_(std::move(name)) {
    require(theta > 0.0 && theta < 1.0, "Stieltjes kernel needs theta in (0, 1)");
    require(alpha_tail > 0.0 && alpha_tail < 1.0, "Stieltjes kernel needs alphaTail in (0, 1)");

    auto table = std::make_shared<Table>();
    table->density = std::move(density);
    const double y_lo = -kLogRange - kDecay / theta;
    const double y_hi = kLogRange + kDecay / alpha_tail;
    bool nonzero = false;
    for (double y = y_lo; y <= y_hi; y += kLogStep) {
        const double t = std::exp(y);
        const double v = table->density(t);
        require(std::isfinite(v) && v >= 0.0, "Stieltjes density must be finite and nonnegative");
        nonzero = nonzero || v > 0.0;
        table->t.push_back(t);
        table->wt.push_back(kLogStep * v * t);
        table->w.push_back(kLogStep * v);
    }
    require(nonzero, "Stieltjes density must not vanish identically");

    // Sampled boundedness of phi t^{1-theta} near 0 and phi t^{alpha} near infinity.
    auto near_zero = [&](double t) { return table->density(t) * std::pow(t, 1.0 - theta); };
    auto near_inf = [&](double t) { return table->density(t) * std::pow(t, alpha_tail); };
    const double z_far = near_zero(1e-12), z_mid = near_zero(1e-6);
    const double i_far = near_inf(1e12), i_mid = near_inf(1e6);
    require(z_far <= 4.0 * z_mid + 1e-300, "phi(t) t^{1-theta} is not bounded near 0 (theta too large)");
    require(i_far <= 4.0 * i_mid + 1e-300, "phi(t) t^{alphaTail} is not bounded near infinity (alphaTail too small)");

    if (coefficients) {
        c0_ = coefficients->first;
        cinf_ = coefficients->second;
    } else {
        c0_ = z_far;
        cinf_ = i_far;
    }
    table_ = std::move(table);
}

StieltjesKernel StieltjesKernel::two_power(double theta, double alpha_tail) {
    const double gamma = alpha_tail + theta - 1.0;
    std::ostringstream os;
    os << "twopower(theta=" << theta << ",alpha_tail=" << alpha_tail << ")";
    return StieltjesKernel([=](double t) { return std::pow(t, theta - 1.0) * std::pow(1.0 + t, -gamma); }, theta,
                           alpha_tail, os.str(), std::pair{1.0, 1.0});
}

StieltjesKernel StieltjesKernel::power(double theta) {
    std::ostringstream os;
    os << "power(theta=" << theta << ")";
    return StieltjesKernel([=](double t) { return std::pow(t, theta - 1.0); }, theta, 1.0 - theta, os.str(),
                           std::pair{1.0, 1.0});
}

StieltjesKernel StieltjesKernel::exponential() {
    return StieltjesKernel([](double t) { return std::exp(-t); }, 0.5, 0.5, "exp", std::pair{0.0, 0.0});
}

StieltjesKernel StieltjesKernel::cut_power() {
    return StieltjesKernel([](double t) { return t > 1.0 ? 1.0 / std::sqrt(t) : 0.0; }, 0.5, 0.5, "cutpower",
                           std::pair{0.0, 1.0});
}

StieltjesKernel StieltjesKernel::from_samples(std::vector<double> t, std::vector<double> phi, double theta,
                                              double alpha_tail) {
    require(t.size() == phi.size() && t.size() >= 4, "sampled Stieltjes density needs >= 4 (t, phi) pairs");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < t.size(); ++i) {
        require(t[i] > 0.0 && phi[i] > 0.0, "sampled Stieltjes density needs positive t and phi");
        require(i == 0 || t[i] > t[i - 1], "sampled Stieltjes grid must be increasing");
        lx.push_back(std::log(t[i]));
        ly.push_back(std::log(phi[i]));
    }
    const double t_lo = t.front(), t_hi = t.back(), phi_lo = phi.front(), phi_hi = phi.back();
    auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(lx),
                                                                                           std::move(ly));
    auto density = [=](double s) {
        if (s <= t_lo) return phi_lo * std::pow(s / t_lo, theta - 1.0);
        if (s >= t_hi) return phi_hi * std::pow(s / t_hi, -alpha_tail);
        return std::exp((*spline)(std::log(s)));
    };
    const double c0 = phi_lo * std::pow(t_lo, 1.0 - theta);
    const double cinf = phi_hi * std::pow(t_hi, alpha_tail);
    return StieltjesKernel(density, theta, alpha_tail, "samples", std::pair{c0, cinf});
}

cplx StieltjesKernel::transform(cplx p) const {
    const auto& tab = *table_;
    cplx sum = 0.0;
    for (std::size_t j = 0; j < tab.t.size(); ++j) sum += tab.wt[j] / (p + tab.t[j]);
    return sum;
}

double StieltjesKernel::k(double t) const {
    const auto& tab = *table_;
    double sum = 0.0;
    for (std::size_t j = 0; j < tab.t.size(); ++j) {
        const double x = t * tab.t[j];
        if (x > 745.0) break;
        sum += tab.wt[j] * std::exp(-x);
    }
    return sum;
}

double StieltjesKernel::primitive(double t) const {
    const auto& tab = *table_;
    double sum = 0.0;
    for (std::size_t j = 0; j < tab.t.size(); ++j) sum += -tab.w[j] * std::expm1(-t * tab.t[j]);
    return sum;
}

// ---------------------------------------------------------------------------
// KernelSpec

KernelSpec KernelSpec::stable(double alpha) {
    require(alpha > 0.0 && alpha < 1.0, "stable kernel needs alpha in (0, 1)");
    return KernelSpec(Family{StableKernel{alpha}});
}

KernelSpec::KernelSpec(DistributedOrderKernel kernel) : family_(std::move(kernel)) {}
KernelSpec::KernelSpec(StieltjesKernel kernel) : family_(std::move(kernel)) {}

double KernelSpec::stable_alpha() const {
    if (const auto* s = std::get_if<StableKernel>(&family_)) return s->alpha;
    throw DomainError("kernel is not of the stable family");
}

std::string KernelSpec::family_name() const {
    return std::visit(Overloaded{[](const StableKernel&) { return std::string("stable"); },
                                 [](const DistributedOrderKernel&) { return std::string("distributed"); },
                                 [](const StieltjesKernel&) { return std::string("stieltjes"); }},
                      family_);
}

std::string KernelSpec::describe() const {
    std::ostringstream os;
    std::visit(Overloaded{[&](const StableKernel& s) { os << "stable(alpha=" << s.alpha << ")"; },
                          [&](const DistributedOrderKernel& d) { os << "distributed(mu=" << d.name() << ")"; },
                          [&](const StieltjesKernel& s) { os << "stieltjes(phi=" << s.name() << ")"; }},
               family_);
    return os.str();
}

// ---------------------------------------------------------------------------
// Free functions

double kernel_k(const KernelSpec& spec, double t) {
    if (!(t > 0.0)) throw DomainError("kernel k(t) requires t > 0");
    return std::visit(
        Overloaded{[t](const StableKernel& s) { return std::pow(t, -s.alpha) * rgamma(1.0 - s.alpha); },
                   [t](const auto& kern) { return kern.k(t); }},
        spec.family());
}

double kernel_primitive(const KernelSpec& spec, double t) {
    if (t < 0.0) throw DomainError("kernel primitive requires t >= 0");
    if (t == 0.0) return 0.0;
    return std::visit(
        Overloaded{[t](const StableKernel& s) { return std::pow(t, 1.0 - s.alpha) * rgamma(2.0 - s.alpha); },
                   [t](const auto& kern) { return kern.primitive(t); }},
        spec.family());
}

cplx laplace_K(const KernelSpec& spec, cplx p) {
    if (p.real() <= 0.0 && p.imag() == 0.0) throw DomainError("laplace_K requires p off the closed negative axis");
    return std::visit(Overloaded{[p](const StableKernel& s) { return std::pow(p, s.alpha - 1.0); },
                                 [p](const auto& kern) { return kern.transform(p); }},
                      spec.family());
}

double laplace_K(const KernelSpec& spec, double p) {
    if (!(p > 0.0)) throw DomainError("laplace_K requires p > 0");
    if (spec.is_stable()) return std::pow(p, spec.stable_alpha() - 1.0);
    return laplace_K(spec, cplx(p, 0.0)).real();
}

cplx laplace_exponent(const KernelSpec& spec, cplx p) { return p * laplace_K(spec, p); }

double laplace_exponent(const KernelSpec& spec, double p) { return p * laplace_K(spec, p); }

double asymptote_K(const KernelSpec& spec, Regime regime, double p) {
    if (!(p > 0.0)) throw DomainError("asymptote_K requires p > 0");
    return std::visit(
        Overloaded{
            [p](const StableKernel& s) { return std::pow(p, s.alpha - 1.0); },
            [p, regime](const DistributedOrderKernel& d) {
                if (regime == Regime::infinity) {
                    if (d.mu1() == 0.0) throw UnsupportedCase("infinity asymptote needs mu(1) != 0");
                    if (p <= 1.0) throw UnsupportedCase("infinity asymptote needs p > 1");
                    return d.mu1() / std::log(p);
                }
                if (p >= 1.0) throw UnsupportedCase("zero asymptote needs p < 1");
                const double log_inv = std::log(1.0 / p);
                if (d.mu0() != 0.0) return d.mu0() / (p * log_inv);
                if (const auto& law = d.power_law(); law && law->lambda > 0.0)
                    return law->coeff * std::tgamma(1.0 + law->lambda) / (p * std::pow(log_inv, 1.0 + law->lambda));
                throw UnsupportedCase("zero asymptote needs mu(0) != 0 or a power-law weight");
            },
            [p, regime](const StieltjesKernel& s) {
                if (regime == Regime::zero) {
                    if (s.zero_coefficient() <= 0.0)
                        throw UnsupportedCase("zero asymptote needs phi ~ c t^{theta-1} with c > 0");
                    return s.zero_coefficient() * kPi / std::sin(kPi * s.theta()) * std::pow(p, s.theta() - 1.0);
                }
                if (s.infinity_coefficient() <= 0.0)
                    throw UnsupportedCase("infinity asymptote needs phi ~ c t^{-alphaTail} with c > 0");
                return s.infinity_coefficient() * kPi / std::sin(kPi * s.alpha_tail()) *
                       std::pow(p, -s.alpha_tail());
            }},
        spec.family());
}

std::vector<double> log_grid(double lo_exp, double hi_exp, int points_per_decade) {
    if (!(hi_exp > lo_exp) || points_per_decade < 1) throw DomainError("log_grid needs hi > lo and >= 1 point/decade");
    const int n = static_cast<int>(std::lround((hi_exp - lo_exp) * points_per_decade));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) out.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / n));
    return out;
}

HypothesisReport validate_hypothesis(const KernelSpec& spec, std::span<const double> p_grid) {
    HypothesisReport rep;
    rep.sampled_p_grid.assign(p_grid.begin(), p_grid.end());
    auto note = [&](std::string key, double v) { rep.details.emplace_back(std::move(key), v); };

    if (p_grid.size() < 2 || !std::is_sorted(p_grid.begin(), p_grid.end()) || p_grid.front() <= 0.0) {
        note("grid_invalid", 1.0);
        return rep;
    }
    const double decades = std::log10(p_grid.back() / p_grid.front());
    note("grid_decades", decades);

    std::vector<double> K(p_grid.size()), L(p_grid.size());
    bool monotone = true;
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        K[i] = laplace_K(spec, p_grid[i]);
        L[i] = p_grid[i] * K[i];
        if (!(K[i] > 0.0)) monotone = false;
        if (i > 0 && K[i] > K[i - 1] * (1.0 + 1e-12)) monotone = false;
    }
    note("K_nonincreasing", monotone ? 1.0 : 0.0);

    // Lowest decade below 1.
    const double p1 = p_grid.front();
    std::size_t i2 = 0;
    while (i2 + 1 < p_grid.size() && p_grid[i2] < 10.0 * p1) ++i2;
    if (p_grid[i2] < 1.0 && p1 < 1.0 && i2 > 0) {
        const double dll = std::log(std::log(1.0 / p1)) - std::log(std::log(1.0 / p_grid[i2]));
        const double sK = (std::log(K.front()) - std::log(K[i2])) / dll;
        const double sL = (std::log(L.front()) - std::log(L[i2])) / dll;
        note("zero_K_iterated_log_slope", sK);
        note("zero_L_iterated_log_slope", sL);
        rep.limits_at_zero_ok = monotone && decades >= 6.0 && sK >= 0.5 && sL <= -0.5;
    }

    // Highest decade above 1.
    const double pn = p_grid.back();
    std::size_t j1 = p_grid.size() - 1;
    while (j1 > 0 && p_grid[j1] > pn / 10.0) --j1;
    if (p_grid[j1] > 1.0 && j1 + 1 < p_grid.size()) {
        const double dll = std::log(std::log(pn)) - std::log(std::log(p_grid[j1]));
        const double sK = (std::log(K.back()) - std::log(K[j1])) / dll;
        const double sL = (std::log(L.back()) - std::log(L[j1])) / dll;
        note("infinity_K_iterated_log_slope", sK);
        note("infinity_L_iterated_log_slope", sL);
        rep.limits_at_infinity_ok = monotone && decades >= 6.0 && sK <= -0.5 && sL >= 0.5;
    }

    // Order-6 alternating forward differences at relative step 1e-2.
    constexpr int kOrder = 6;
    constexpr double kStep = 1e-2;
    bool cm = true;
    double worst = 1e300;
    for (double p : p_grid) {
        std::vector<double> v(kOrder + 1);
        for (int j = 0; j <= kOrder; ++j) v[static_cast<std::size_t>(j)] = laplace_K(spec, p * (1.0 + kStep * j));
        const double scale = v[0];
        for (int n = 1; n <= kOrder; ++n) {
            for (int j = 0; j + n <= kOrder; ++j)
                v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j) + 1] - v[static_cast<std::size_t>(j)];
            const double signed_diff = (n % 2 == 0 ? 1.0 : -1.0) * v[0];
            const double noise = std::ldexp(1e-13, n) * scale;
            worst = std::min(worst, signed_diff / scale);
            if (signed_diff < -noise) cm = false;
        }
    }
    note("cm_worst_relative_margin", worst);
    rep.complete_monotone_ok = cm;
    return rep;
}

}  // namespace fracsub
