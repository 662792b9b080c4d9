#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracsub/parallel.hpp"
#include "fracsub/subordination.hpp"

namespace fracsub {

/// Counter-based generator: draw i of stream s is splitmix64(seed ^ mix(s), i). Any draw can be
/// recomputed from (seed, stream, index), so parallel chunks reproduce the sequential sequence.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    static constexpr const char* algorithm = "splitmix64-counter";

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t position() const { return counter_; }

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double uniform();
    /// Stream positioned at an absolute draw index.
    RngStream at(std::uint64_t index) const;
    /// Independent stream for another consumer (thread, experiment).
    RngStream derive(std::uint64_t stream_id) const;

private:
    std::uint64_t seed_, stream_, key_, counter_ = 0;
};

/// Positive alpha-stable S_1 with E exp(-p S_1) = exp(-p^alpha), by Kanter's two-uniform formula.
/// Uses two draws per sample; the stream advances by 2n. Parallel over FRACSUB_THREADS chunks.
std::vector<double> sample_stable(double alpha, std::size_t n, RngStream& rng);

struct InverseSubordinatorSample {
    double t = 0.0;
    double alpha = 0.0;
    std::vector<double> samples;
};

/// E_t = (t / S_1)^alpha in law, since P(E_t <= tau) = P(S_tau >= t) and S_tau = tau^{1/alpha} S_1.
InverseSubordinatorSample sample_inverse(double alpha, double t, std::size_t n, RngStream& rng);

/// P(E_t <= tau) = 1 - P(S_1 < t tau^{-1/alpha}) for the stable subordinator.
double inverse_stable_cdf(double alpha, double t, double tau);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    /// (estimate - target) / std_error, or 0 when both the error and the difference vanish.
    double z_score(double target) const;
};

/// Sample mean and standard error of f over the samples.
McEstimate sample_mean(const std::vector<double>& samples, const std::function<double(double)>& f);

/// E u0(E_t) for the alpha-stable inverse subordinator.
McEstimate mc_subordinate(double alpha, const TimeFunction& u0, double t, std::size_t n, RngStream& rng);

/// sup |F_n - F| of the empirical CDF of samples against cdf.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// 1% two-sided Kolmogorov critical value 1.628/sqrt(n).
double ks_critical_1pct(std::size_t n);

}  // namespace fracsub
