#include "fracsub/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <unsupported/Eigen/FFT>

#include "fracsub/errors.hpp"
#include "fracsub/quadrature.hpp"

namespace fracsub {

namespace {

constexpr double kNegTol = 1e-8;

Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

std::vector<std::complex<double>> forward(const Eigen::VectorXd& v) {
    std::vector<double> in(v.data(), v.data() + v.size());
    std::vector<std::complex<double>> out;
    fft_engine().fwd(out, in);
    return out;
}

Eigen::VectorXd convolve(const std::vector<std::complex<double>>& kernel_hat, const Eigen::VectorXd& rho) {
    auto spec = forward(rho);
    for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= kernel_hat[k];
    std::vector<double> out;
    fft_engine().inv(out, spec);
    return Eigen::Map<const Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

void require_same_grid(const KineticModel& model, const DensityField& rho) {
    if (!(model.grid() == rho.grid) || rho.values.size() != model.grid().n)
        throw DomainError("density field and kinetic model live on different grids");
}

double sup(const Eigen::VectorXd& v) { return v.size() ? v.maxCoeff() : 0.0; }

void check_state(const Eigen::VectorXd& v, double ceiling, double t) {
    const double lo = v.minCoeff(), hi = v.maxCoeff();
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < -kNegTol || hi > ceiling) {
        std::ostringstream os;
        os << "kinetic solver left the admissible range at t = " << t << " (min " << lo << ", max " << hi
           << ", ceiling " << ceiling << ")";
        throw ConsistencyError(os.str());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Grid and fields

Eigen::VectorXd Grid::points() const {
    return Eigen::VectorXd::LinSpaced(n, x_min, x_max - spacing());
}

void Grid::validate() const {
    if (!(x_max > x_min)) throw DomainError("grid needs x_max > x_min");
    if (n < 2 || (n & (n - 1)) != 0) throw DomainError("grid point count must be a power of two >= 2");
}

DensityField DensityField::constant(const Grid& g, double level, double time) {
    g.validate();
    return DensityField{Eigen::VectorXd::Constant(g.n, level), time, g};
}

// ---------------------------------------------------------------------------
// KineticModel

struct KineticModel::Spectra {
    std::vector<std::complex<double>> plus, minus;
};

KineticModel::KineticModel(double m, Eigen::VectorXd a_plus, Eigen::VectorXd a_minus, const Grid& grid)
    : m_(m), a_plus_(std::move(a_plus)), a_minus_(std::move(a_minus)), grid_(grid) {
    grid_.validate();
    if (!(m > 0.0 && m < 1.0)) {
        std::ostringstream os;
        os << "mortality must satisfy 0 < m < 1, got m = " << m;
        throw DomainError(os.str());
    }
    const double dx = grid_.spacing();
    for (auto* a : {&a_plus_, &a_minus_}) {
        if (a->size() != grid_.n) throw DomainError("kernel samples must match the grid size");
        if (a->minCoeff() < 0.0) throw DomainError("dispersal and competition kernels must be nonnegative");
        const double mass = a->sum() * dx;
        if (!(mass > 0.0)) throw DomainError("kernel samples must have positive mass");
        *a /= mass;
    }
    auto spectra = std::make_shared<Spectra>();
    spectra->plus = forward(a_plus_ * dx);
    spectra->minus = forward(a_minus_ * dx);
    spectra_ = std::move(spectra);
}

KineticModel KineticModel::gaussian(double m, double sigma_plus, double sigma_minus, const Grid& grid) {
    grid.validate();
    if (!(sigma_plus > 0.0 && sigma_minus > 0.0)) throw DomainError("kernel widths must be positive");
    const double dx = grid.spacing();
    auto sample = [&](double sigma) {
        Eigen::VectorXd a(grid.n);
        for (int i = 0; i < grid.n; ++i) {
            const double d = (i < grid.n / 2 ? i : i - grid.n) * dx;
            a[i] = std::exp(-0.5 * d * d / (sigma * sigma));
        }
        return a;
    };
    return KineticModel(m, sample(sigma_plus), sample(sigma_minus), grid);
}

KineticModel KineticModel::with_rates(double dispersal, double competition) const {
    if (dispersal < 0.0 || competition < 0.0) throw DomainError("rates must be nonnegative");
    KineticModel out = *this;
    out.dispersal_ = dispersal;
    out.competition_ = competition;
    return out;
}

double KineticModel::fixed_point() const {
    if (competition_ == 0.0) throw DomainError("no homogeneous fixed point without competition");
    return std::max(0.0, (dispersal_ - m_) / competition_);
}

Eigen::VectorXd KineticModel::convolve_plus(const Eigen::VectorXd& rho) const {
    return convolve(spectra_->plus, rho);
}

Eigen::VectorXd KineticModel::convolve_minus(const Eigen::VectorXd& rho) const {
    return convolve(spectra_->minus, rho);
}

Eigen::VectorXd rhs(const KineticModel& model, const Eigen::VectorXd& rho) {
    if (rho.size() != model.grid().n) throw DomainError("density size does not match the model grid");
    Eigen::VectorXd out = -model.m() * rho;
    if (model.dispersal_rate() != 0.0) out += model.dispersal_rate() * model.convolve_plus(rho);
    if (model.competition_rate() != 0.0)
        out -= model.competition_rate() * rho.cwiseProduct(model.convolve_minus(rho));
    return out;
}

Eigen::VectorXd rhs(const KineticModel& model, const DensityField& rho) {
    require_same_grid(model, rho);
    return rhs(model, rho.values);
}

// ---------------------------------------------------------------------------
// Trajectories

std::vector<double> Trajectory::times() const {
    std::vector<double> out;
    out.reserve(snapshots.size());
    for (const auto& s : snapshots) out.push_back(s.time);
    return out;
}

std::vector<double> Trajectory::series(int i) const {
    std::vector<double> out;
    out.reserve(snapshots.size());
    for (const auto& s : snapshots) out.push_back(s.values[i]);
    return out;
}

Trajectory solve(const KineticModel& model, const DensityField& rho0, double T, double dt, double output_interval) {
    require_same_grid(model, rho0);
    if (!(T > 0.0)) throw DomainError("final time must be positive");
    if (!(dt > 0.0 && dt <= 0.5)) throw DomainError("RK4 step must lie in (0, 0.5]");
    if (output_interval < 0.0) throw DomainError("output interval must be nonnegative");
    if (rho0.values.minCoeff() < -kNegTol) throw DomainError("initial density must be nonnegative");

    const long steps = static_cast<long>(std::ceil(T / dt - 1e-9));
    const double h = T / static_cast<double>(steps);
    const long every = output_interval > 0.0 ? std::max(1L, std::lround(output_interval / h)) : steps;
    const double ceiling = 10.0 * std::max(1.0, sup(rho0.values));

    Trajectory traj;
    traj.snapshots.push_back(rho0);
    Eigen::VectorXd y = rho0.values;
    const double t0 = rho0.time;
    for (long k = 1; k <= steps; ++k) {
        const Eigen::VectorXd k1 = rhs(model, y);
        const Eigen::VectorXd k2 = rhs(model, y + 0.5 * h * k1);
        const Eigen::VectorXd k3 = rhs(model, y + 0.5 * h * k2);
        const Eigen::VectorXd k4 = rhs(model, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t = t0 + k * h;
        check_state(y, ceiling, t);
        if (k % every == 0 || k == steps) traj.snapshots.push_back(DensityField{y, t, rho0.grid});
    }
    return traj;
}

Trajectory solve_fractional(const KineticModel& model, const KernelSpec& spec, const DensityField& rho0, double T,
                            double dt, double output_interval) {
    require_same_grid(model, rho0);
    if (!(T > 0.0)) throw DomainError("final time must be positive");
    if (!(dt > 0.0 && dt <= 0.5)) throw DomainError("step must lie in (0, 0.5]");
    if (T / dt > 1e6) throw DomainError("memory guard: T/dt exceeds 1e6 history steps");
    if (output_interval < 0.0) throw DomainError("output interval must be nonnegative");

    const double r = gfd_grading(spec);
    const int N = std::max(16, static_cast<int>(std::ceil(r * T / dt)));
    std::vector<double> t(static_cast<std::size_t>(N) + 1);
    for (int j = 0; j <= N; ++j) t[static_cast<std::size_t>(j)] = j == N ? T : T * std::pow(double(j) / N, r);

    const Eigen::Index nx = rho0.values.size();
    Eigen::MatrixXd incr(nx, N);  // column j-1 holds rho_j - rho_{j-1}
    std::vector<Eigen::VectorXd> sol{rho0.values};
    sol.reserve(static_cast<std::size_t>(N) + 1);
    const double ceiling = 10.0 * std::max(1.0, sup(rho0.values));

    std::vector<double> prim(static_cast<std::size_t>(N) + 1);
    for (int n = 1; n <= N; ++n) {
        const double tn = t[static_cast<std::size_t>(n)];
        // prim[j] = K1(t_n - t_j); the weight of increment j is (prim[j-1] - prim[j]) / (t_j - t_{j-1}).
        for (int j = 0; j <= n; ++j) prim[static_cast<std::size_t>(j)] = kernel_primitive(spec, tn - t[static_cast<std::size_t>(j)]);
        Eigen::VectorXd H = Eigen::VectorXd::Zero(nx);
        for (int j = 1; j < n; ++j) {
            const double w = (prim[static_cast<std::size_t>(j) - 1] - prim[static_cast<std::size_t>(j)]) /
                             (t[static_cast<std::size_t>(j)] - t[static_cast<std::size_t>(j) - 1]);
            H.noalias() += w * incr.col(j - 1);
        }
        const double tau = tn - t[static_cast<std::size_t>(n) - 1];
        const double c0 = prim[static_cast<std::size_t>(n) - 1] / tau;
        const Eigen::VectorXd& prev = sol.back();
        Eigen::VectorXd cur = prev;
        bool converged = false;
        for (int it = 0; it < 200; ++it) {
            Eigen::VectorXd next = prev + (rhs(model, cur) - H) / c0;
            const double change = (next - cur).cwiseAbs().maxCoeff();
            cur = std::move(next);
            if (change <= 1e-14 * (1.0 + cur.cwiseAbs().maxCoeff())) {
                converged = true;
                break;
            }
        }
        if (!converged) throw ConsistencyError("fractional step fixed-point iteration did not converge");
        check_state(cur, ceiling, tn);
        incr.col(n - 1) = cur - prev;
        sol.push_back(std::move(cur));
    }

    Trajectory traj;
    const double t0 = rho0.time;
    if (output_interval == 0.0) {
        for (int j = 0; j <= N; ++j)
            traj.snapshots.push_back(DensityField{sol[static_cast<std::size_t>(j)], t0 + t[static_cast<std::size_t>(j)], rho0.grid});
        return traj;
    }
    const long outs = std::max(1L, std::lround(T / output_interval));
    std::size_t j = 1;
    traj.snapshots.push_back(rho0);
    for (long k = 1; k <= outs; ++k) {
        const double s = k == outs ? T : k * output_interval;
        while (j < t.size() - 1 && t[j] < s) ++j;
        const double w = (s - t[j - 1]) / (t[j] - t[j - 1]);
        traj.snapshots.push_back(DensityField{(1.0 - w) * sol[j - 1] + w * sol[j], t0 + s, rho0.grid});
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Diagnostics

double front_position(const DensityField& rho, double level) {
    const auto& v = rho.values;
    const Eigen::Index n = v.size();
    const double dx = rho.grid.spacing();
    for (Eigen::Index i = n - 2; i >= 0; --i) {
        if (v[i] >= level && v[i + 1] < level) {
            const double w = (v[i] - level) / (v[i] - v[i + 1]);
            return rho.grid.x_min + (static_cast<double>(i) + w) * dx;
        }
    }
    throw DomainError("density never crosses the requested level from above");
}

double subordinate_field(const SubordinationEvaluator& ev, const Trajectory& traj, double t, int index) {
    if (traj.snapshots.size() < 4) throw DomainError("trajectory too short for cubic interpolation");
    const double T = horizon(ev, t);
    if (traj.end_time() < T) {
        std::ostringstream os;
        os << "insufficient horizon: trajectory ends at " << traj.end_time() << " but tau up to " << T
           << " is needed for t = " << t;
        throw DomainError(os.str());
    }
    const auto times = traj.times();
    const double t0 = times.front();
    const double h = times[1] - times[0];
    for (std::size_t k = 1; k < times.size(); ++k)
        if (std::fabs(times[k] - (t0 + h * static_cast<double>(k))) > 1e-9 * std::max(1.0, times[k]))
            throw DomainError("subordinate_field needs uniformly spaced snapshots");
    const auto values = traj.series(index);
    auto spline = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(values.begin(), values.end(), t0, h);
    double bound = 0.0;
    for (double v : values) bound = std::max(bound, std::fabs(v));
    TimeFunction u0{[spline](double tau) { return (*spline)(tau); }, bound, {}};
    return subordinate(ev, u0, t);
}

// ---------------------------------------------------------------------------
// Waves

WaveProfile::WaveProfile(std::vector<double> x, std::vector<double> psi, double speed)
    : x_(std::move(x)), psi_(std::move(psi)), speed_(speed) {
    if (x_.size() != psi_.size() || x_.size() < 4) throw DomainError("wave profile needs >= 4 samples");
    if (!(speed > 0.0)) throw DomainError("wave speed must be positive");
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i] > x_[i - 1])) throw DomainError("wave abscissae must increase");
        if (psi_[i] > psi_[i - 1]) throw DomainError("wave profile must be nonincreasing");
    }
    auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
        std::vector<double>(x_), std::vector<double>(psi_));
    const double lo = x_.front(), hi = x_.back(), left = psi_.front(), right = psi_.back();
    interp_ = std::make_shared<const std::function<double(double)>>([=](double s) {
        if (s <= lo) return left;
        if (s >= hi) return right;
        return std::clamp((*spline)(s), 0.0, 1.0);
    });
}

double WaveProfile::operator()(double x) const { return (*interp_)(x); }

double WaveProfile::x_delta(double delta) const {
    if (!(delta > 0.0 && delta < 0.5)) throw DomainError("delta must lie in (0, 1/2)");
    auto crossing = [&](double level) {
        for (std::size_t i = 0; i + 1 < x_.size(); ++i)
            if (psi_[i] >= level && psi_[i + 1] < level)
                return x_[i] + (psi_[i] - level) / (psi_[i] - psi_[i + 1]) * (x_[i + 1] - x_[i]);
        throw DomainError("wave profile does not resolve the requested level");
    };
    if (psi_.front() <= 1.0 - delta || psi_.back() >= delta)
        throw DomainError("wave window too narrow for the requested delta");
    const double right = crossing(delta);
    const double left = crossing(1.0 - delta);
    return std::max({right, -left, 0.0});
}

WaveProfile build_wave(double m, double sigma_plus, double sigma_minus, const WaveOptions& opt) {
    Grid grid{-0.5 * opt.window, 0.5 * opt.window, opt.n};
    const KineticModel model = KineticModel::gaussian(m, sigma_plus, sigma_minus, grid);
    const double level = model.fixed_point();
    const Eigen::VectorXd xs = grid.points();
    DensityField rho{Eigen::VectorXd::Zero(grid.n), 0.0, grid};
    for (int i = 0; i < grid.n; ++i)
        if (xs[i] >= -0.25 * opt.window && xs[i] <= 0.0) rho.values[i] = level;

    double front = front_position(rho, 0.5 * level);
    double prev_speed = -1.0, speed = -1.0;
    bool settled = false;
    while (rho.time < opt.max_time) {
        rho = solve(model, rho, opt.probe_interval, opt.dt).snapshots.back();
        const double next = front_position(rho, 0.5 * level);
        speed = (next - front) / opt.probe_interval;
        front = next;
        if (front > grid.x_max - 0.1 * opt.window) throw ConsistencyError("wave front reached the window boundary");
        if (rho.time >= opt.min_time && prev_speed > 0.0 &&
            std::fabs(speed - prev_speed) < opt.settle_tolerance * speed) {
            settled = true;
            break;
        }
        prev_speed = speed;
    }
    if (!settled || !(speed > 0.0)) throw ConsistencyError("front speed did not settle before max_time");

    std::vector<double> x, psi;
    double running = 1.0;
    for (int i = 0; i < grid.n; ++i) {
        const double s = xs[i] - front;
        if (std::fabs(s) > opt.half_width) continue;
        running = std::min(running, std::clamp(rho.values[i] / level, 0.0, 1.0));
        x.push_back(s);
        psi.push_back(running);
    }
    return WaveProfile(std::move(x), std::move(psi), speed);
}

}  // namespace fracsub
