#include <doctest.h>

#include <cmath>

#include "fracsub/errors.hpp"
#include "fracsub/kinetics.hpp"
#include "fracsub/specialfns.hpp"
#include "oracle_values.hpp"

using namespace fracsub;

namespace {
const Grid kSmall{-8.0, 8.0, 16};
}

TEST_CASE("homogeneous logistic dynamics follow the ODE oracle") {
    for (const auto& row : oracle::kLogistic) {
        const auto model = KineticModel::gaussian(row[0], 1.0, 1.0, kSmall);
        const auto traj = solve(model, DensityField::constant(kSmall, row[1]), row[2], 0.05);
        const auto& last = traj.snapshots.back();
        CHECK(last.time == doctest::Approx(row[2]));
        CHECK((last.values.array() - row[3]).abs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("the zero state is invariant") {
    const auto model = KineticModel::gaussian(0.5, 1.0, 2.0, kSmall);
    const auto traj = solve(model, DensityField::constant(kSmall, 0.0), 3.0, 0.1, 1.0);
    for (const auto& s : traj.snapshots) CHECK(s.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fixed point and renormalized kernels") {
    const Grid g{-32.0, 32.0, 256};
    const auto model = KineticModel::gaussian(0.3, 1.5, 0.7, g);
    CHECK(model.fixed_point() == doctest::Approx(0.7));
    CHECK(model.a_plus().sum() * g.spacing() == doctest::Approx(1.0).epsilon(1e-14));
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.n);
    CHECK((model.convolve_plus(ones).array() - 1.0).abs().maxCoeff() < 1e-12);
    const Eigen::VectorXd r = rhs(model, Eigen::VectorXd::Constant(g.n, 0.7));
    CHECK(r.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("convolution matches the direct periodic sum") {
    const Grid g{-4.0, 4.0, 32};
    const auto model = KineticModel::gaussian(0.5, 0.8, 0.8, g);
    Eigen::VectorXd rho(g.n);
    for (int i = 0; i < g.n; ++i) rho[i] = std::sin(0.3 * i) + 1.5;
    const Eigen::VectorXd fast = model.convolve_plus(rho);
    for (int i = 0; i < g.n; ++i) {
        double direct = 0.0;
        for (int j = 0; j < g.n; ++j) direct += model.a_plus()[((i - j) % g.n + g.n) % g.n] * rho[j] * g.spacing();
        CHECK(std::fabs(fast[i] - direct) < 1e-12);
    }
}

TEST_CASE("invalid model inputs") {
    CHECK_THROWS_AS(KineticModel::gaussian(1.5, 1.0, 1.0, kSmall), DomainError);
    CHECK_THROWS_AS(KineticModel::gaussian(0.0, 1.0, 1.0, kSmall), DomainError);
    CHECK_THROWS_AS((Grid{0.0, 1.0, 12}.validate()), DomainError);
    const auto model = KineticModel::gaussian(0.5, 1.0, 1.0, kSmall);
    CHECK_THROWS_AS(solve(model, DensityField::constant(kSmall, -1.0), 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(solve(model, DensityField::constant(kSmall, 0.1), 1.0, 0.6), DomainError);
    CHECK_THROWS_AS(solve_fractional(model, KernelSpec::stable(0.5), DensityField::constant(kSmall, 0.1), 2e5, 0.1),
                    DomainError);
}

TEST_CASE("fractional pure death matches Mittag-Leffler relaxation") {
    const auto model = KineticModel::gaussian(0.5, 1.0, 1.0, kSmall).with_rates(0.0, 0.0);
    const auto traj = solve_fractional(model, KernelSpec::stable(0.6), DensityField::constant(kSmall, 1.0), 3.0, 0.01, 1.0);
    REQUIRE(traj.snapshots.size() == 4);
    for (const auto& s : traj.snapshots) {
        const double ml = ml_eval(0.6, -0.5 * std::pow(s.time, 0.6));
        CHECK(std::fabs(s.values[3] - ml) < 1e-3);
    }
}

TEST_CASE("fractional solver reduces to RK4 behaviour as alpha approaches one") {
    const auto model = KineticModel::gaussian(0.5, 1.0, 1.0, kSmall);
    const auto frac = solve_fractional(model, KernelSpec::stable(0.999), DensityField::constant(kSmall, 0.1), 5.0, 0.005);
    CHECK(std::fabs(frac.snapshots.back().values[0] - oracle::kLogistic[1][3]) < 5e-3);
}

TEST_CASE("front position picks the rightmost downward crossing") {
    const Grid g{0.0, 8.0, 8};
    DensityField f = DensityField::constant(g, 0.0);
    f.values << 1, 1, 0, 0, 1, 1, 0.5, 0;
    CHECK(front_position(f, 0.75) == doctest::Approx(5.5));
    CHECK_THROWS_AS(front_position(DensityField::constant(g, 0.2), 0.5), DomainError);
}

TEST_CASE("subordinated field of a constant trajectory is that constant") {
    const auto model = KineticModel::gaussian(0.5, 1.0, 1.0, kSmall);
    const auto traj = solve(model, DensityField::constant(kSmall, 0.5), 64.0, 0.1, 0.5);
    const SubordinationEvaluator ev(KernelSpec::stable(0.5));
    CHECK(std::fabs(subordinate_field(ev, traj, 2.0, 0) - 0.5) < 1e-6);
    const auto shortrun = solve(model, DensityField::constant(kSmall, 0.5), 1.0, 0.1, 0.5);
    CHECK_THROWS_AS(subordinate_field(ev, shortrun, 2.0, 0), DomainError);
}

TEST_CASE("wave profile interpolation and x_delta") {
    std::vector<double> x, psi;
    for (int i = -200; i <= 200; ++i) {
        x.push_back(0.1 * i);
        psi.push_back(0.5 * (1.0 - std::tanh(0.1 * i)));
    }
    const WaveProfile w(x, psi, 1.0);
    CHECK(w(0.0) == doctest::Approx(0.5));
    CHECK(w(-100.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w(100.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.x_delta(0.05) == doctest::Approx(std::atanh(0.9)).epsilon(1e-3));
}

TEST_CASE("solver-generated wave is monotone with a positive speed") {
    const WaveProfile w = build_wave(0.5, 1.0, 1.0);
    CHECK(w.speed() > 0.5);
    CHECK(w.speed() < 2.0);
    CHECK(w(0.0) == doctest::Approx(0.5).epsilon(1e-6));
    for (std::size_t i = 1; i < w.psi().size(); ++i) CHECK(w.psi()[i] <= w.psi()[i - 1]);
    CHECK(w.x_delta(0.01) > w.x_delta(0.05));
}
