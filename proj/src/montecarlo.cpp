#include "fracsub/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracsub/errors.hpp"
#include "fracsub/specialfns.hpp"

namespace fracsub {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("stable index must lie in (0, 1)");
}

// Kanter: S = (A(U) / E)^{(1-alpha)/alpha}, U ~ U(0, pi), E ~ Exp(1).
double kanter(double alpha, double u1, double u2) {
    const double U = std::numbers::pi * u1;
    const double E = -std::log(u2);
    const double A = std::pow(std::sin(alpha * U), alpha / (1.0 - alpha)) * std::sin((1.0 - alpha) * U) /
                     std::pow(std::sin(U), 1.0 / (1.0 - alpha));
    return std::pow(A / E, (1.0 - alpha) / alpha);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), key_(splitmix(seed ^ splitmix(stream + 0x632be59bd9b4e019ULL))) {}

std::uint64_t RngStream::next_u64() { return splitmix(key_ + 0x9e3779b97f4a7c15ULL * counter_++); }

double RngStream::uniform() {
    // 53 random bits, shifted off zero.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

RngStream RngStream::at(std::uint64_t index) const {
    RngStream r = *this;
    r.counter_ = index;
    return r;
}

RngStream RngStream::derive(std::uint64_t stream_id) const {
    return RngStream(seed_, splitmix(stream_ * 0x9e3779b97f4a7c15ULL + stream_id + 1));
}

std::vector<double> sample_stable(double alpha, std::size_t n, RngStream& rng) {
    require_alpha(alpha);
    if (n == 0) throw DomainError("sample count must be positive");
    std::vector<double> out(n);
    const RngStream base = rng;
    constexpr std::size_t chunk = std::size_t{1} << 16;
    parallel_for((n + chunk - 1) / chunk, [&](std::size_t c) {
        const std::size_t lo = c * chunk, hi = std::min(n, lo + chunk);
        RngStream r = base.at(base.position() + 2 * lo);
        for (std::size_t i = lo; i < hi; ++i) {
            const double u1 = r.uniform();
            const double u2 = r.uniform();
            out[i] = kanter(alpha, u1, u2);
        }
    });
    rng = base.at(base.position() + 2 * n);
    return out;
}

InverseSubordinatorSample sample_inverse(double alpha, double t, std::size_t n, RngStream& rng) {
    if (!(t > 0.0)) throw DomainError("t must be positive");
    InverseSubordinatorSample out{t, alpha, sample_stable(alpha, n, rng)};
    for (double& s : out.samples) s = std::pow(t / s, alpha);
    return out;
}

double inverse_stable_cdf(double alpha, double t, double tau) {
    require_alpha(alpha);
    if (tau <= 0.0) return 0.0;
    return 1.0 - stable_cdf(alpha, t * std::pow(tau, -1.0 / alpha));
}

double McEstimate::z_score(double target) const {
    const double d = estimate - target;
    if (std_error == 0.0) return d == 0.0 ? 0.0 : std::copysign(HUGE_VAL, d);
    return d / std_error;
}

McEstimate sample_mean(const std::vector<double>& samples, const std::function<double(double)>& f) {
    if (samples.size() < 2) throw DomainError("need at least two samples");
    // Welford update for a stable variance.
    double mean = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (double s : samples) {
        const double y = f(s);
        ++k;
        const double d = y - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (y - mean);
    }
    const double n = static_cast<double>(k);
    return {mean, std::sqrt(m2 / (n - 1.0) / n), k};
}

McEstimate mc_subordinate(double alpha, const TimeFunction& u0, double t, std::size_t n, RngStream& rng) {
    const auto draws = sample_inverse(alpha, t, n, rng);
    return sample_mean(draws.samples, u0.evaluator);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw DomainError("KS statistic needs samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

}  // namespace fracsub
