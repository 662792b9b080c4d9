#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "fracsub/kernels.hpp"
#include "fracsub/subordination.hpp"

namespace fracsub {

/// Periodic 1-D grid x_i = x_min + i dx, i = 0..n-1, dx = (x_max - x_min)/n; n a power of two.
struct Grid {
    double x_min = -1.0;
    double x_max = 1.0;
    int n = 16;

    double spacing() const { return (x_max - x_min) / n; }
    double length() const { return x_max - x_min; }
    Eigen::VectorXd points() const;
    /// Throws DomainError unless n is a power of two >= 2 and x_max > x_min.
    void validate() const;
    bool operator==(const Grid&) const = default;
};

struct DensityField {
    Eigen::VectorXd values;
    double time = 0.0;
    Grid grid;

    static DensityField constant(const Grid& g, double level, double time = 0.0);
};

/// drho/dt = d (a+ * rho) - m rho - c rho (a- * rho). d = c = 1 is the model proper; d = c = 0 gives
/// pure death, the linear sub-case.
class KineticModel {
public:
    /// Centered Gaussians with standard deviations sigma_plus, sigma_minus, renormalized on the grid.
    static KineticModel gaussian(double m, double sigma_plus, double sigma_minus, const Grid& grid);
    /// Kernel samples in wrap order (index i is displacement i dx for i < n/2, (i - n) dx otherwise).
    KineticModel(double m, Eigen::VectorXd a_plus, Eigen::VectorXd a_minus, const Grid& grid);

    KineticModel with_rates(double dispersal, double competition) const;

    double m() const { return m_; }
    const Grid& grid() const { return grid_; }
    const Eigen::VectorXd& a_plus() const { return a_plus_; }
    const Eigen::VectorXd& a_minus() const { return a_minus_; }
    double dispersal_rate() const { return dispersal_; }
    double competition_rate() const { return competition_; }
    /// Homogeneous stationary level rho* = d - m over c (1 - m for the model proper).
    double fixed_point() const;

    /// (a * rho)(x_i) = sum_j a(x_i - x_j) rho_j dx by FFT.
    Eigen::VectorXd convolve_plus(const Eigen::VectorXd& rho) const;
    Eigen::VectorXd convolve_minus(const Eigen::VectorXd& rho) const;

private:
    struct Spectra;
    double m_;
    Eigen::VectorXd a_plus_, a_minus_;
    Grid grid_;
    double dispersal_ = 1.0, competition_ = 1.0;
    std::shared_ptr<const Spectra> spectra_;
};

Eigen::VectorXd rhs(const KineticModel& model, const Eigen::VectorXd& rho);
Eigen::VectorXd rhs(const KineticModel& model, const DensityField& rho);

struct Trajectory {
    std::vector<DensityField> snapshots;

    std::vector<double> times() const;
    /// Values at grid index i across snapshots.
    std::vector<double> series(int i) const;
    double end_time() const { return snapshots.empty() ? 0.0 : snapshots.back().time; }
};

/// Classical RK4 with step T/ceil(T/dt). Snapshots every output_interval (rounded to whole steps;
/// 0 keeps only the endpoints). dt must not exceed 0.5. Aborts with ConsistencyError when a value
/// drops below -1e-8 or exceeds 10 times max(1, sup rho0).
Trajectory solve(const KineticModel& model, const DensityField& rho0, double T, double dt,
                 double output_interval = 0.0);

/// General fractional derivative in time: D^{(k)} rho = rhs(rho), discretized by the L1 product rule
/// on the graded mesh t_j = T (j/N)^r with N chosen so every step is <= dt; each implicit step is a
/// fixed-point iteration. Snapshots are linear interpolants of the mesh solution at multiples of
/// output_interval (0 returns every mesh point). Throws DomainError if T/dt > 1e6.
Trajectory solve_fractional(const KineticModel& model, const KernelSpec& spec, const DensityField& rho0, double T,
                            double dt, double output_interval = 0.0);

/// Rightmost downward crossing of level, linearly interpolated. Throws DomainError if none exists.
double front_position(const DensityField& rho, double level);

/// int rho_t(tau) rho_tau(x_i) dtau with rho_tau(x_i) a cubic spline through the (uniformly spaced)
/// snapshots. Throws DomainError when the trajectory ends before horizon(ev, t).
double subordinate_field(const SubordinationEvaluator& ev, const Trajectory& traj, double t, int index);

/// Monotone traveling-front profile psi (1 behind the front, 0 ahead), shifted so psi(0) = 1/2.
class WaveProfile {
public:
    WaveProfile(std::vector<double> x, std::vector<double> psi, double speed);

    double operator()(double x) const;
    double speed() const { return speed_; }
    /// Smallest x_delta with psi(x) < delta for x > x_delta and psi(x) > 1 - delta for x < -x_delta.
    double x_delta(double delta) const;
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& psi() const { return psi_; }

private:
    std::vector<double> x_, psi_;
    double speed_;
    std::shared_ptr<const std::function<double(double)>> interp_;
};

struct WaveOptions {
    double window = 512.0;
    int n = 4096;
    double dt = 0.05;
    double probe_interval = 5.0;
    double min_time = 20.0;
    double max_time = 120.0;
    double settle_tolerance = 0.01;
    double half_width = 40.0;
};

/// Runs solve() from a step (rho* on [-window/4, 0]) until the front speed changes by less than
/// settle_tolerance between probes, then freezes psi = rho/rho* around the front.
WaveProfile build_wave(double m, double sigma_plus, double sigma_minus, const WaveOptions& opt = {});

}  // namespace fracsub
