#include <doctest.h>

#include <cmath>

#include "fracsub/errors.hpp"
#include "fracsub/quadrature.hpp"
#include "fracsub/specialfns.hpp"
#include "oracle_values.hpp"

using namespace fracsub;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("Mittag-Leffler matches high-precision series values") {
    for (const auto& row : oracle::kMittagLeffler) {
        CAPTURE(row[0]);
        CAPTURE(row[1]);
        CHECK(rel(ml_eval(row[0], row[1]), row[2]) < 1e-9);
    }
}

TEST_CASE("Mittag-Leffler of order one is the exponential") {
    for (double z = -20.0; z <= 20.0; z += 0.37) CHECK(rel(ml_eval(1.0, z), std::exp(z)) < 1e-14);
}

TEST_CASE("Mittag-Leffler is monotone decreasing on the negative axis") {
    for (double alpha : {0.2, 0.5, 0.8}) {
        double prev = 1.0;
        for (double z = -0.05; z > -60.0; z *= 1.3) {
            const double v = ml_eval(alpha, z);
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("Mittag-Leffler rejects orders outside (0, 1]") {
    CHECK_THROWS_AS(ml_eval(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(ml_eval(1.5, -1.0), DomainError);
    CHECK_THROWS_AS(ml_eval(std::nan(""), -1.0), DomainError);
}

TEST_CASE("no jump where the evaluation regions meet") {
    for (double alpha : {0.35, 0.6, 0.95})
        for (double z : {-1.0, 5.0}) {
            const double below = ml_eval(alpha, z * (1.0 - 1e-12)), above = ml_eval(alpha, z * (1.0 + 1e-12));
            CHECK(rel(below, above) < 1e-9);
        }
}

TEST_CASE("one-sided stable density matches the Hankel-contour oracle") {
    for (const auto& row : oracle::kStableDensity) {
        CAPTURE(row[0]);
        CAPTURE(row[1]);
        CHECK(rel(stable_density(row[0], row[1]), row[2]) < 1e-8);
    }
}

TEST_CASE("alpha = 1/2 density and CDF are the Levy law") {
    for (double x : {0.01, 0.2, 1.0, 7.0, 300.0}) {
        const double dens = std::exp(-0.25 / x) / (2.0 * std::sqrt(M_PI) * std::pow(x, 1.5));
        CHECK(rel(stable_density(0.5, x), dens) < 1e-13);
        CHECK(rel(stable_cdf(0.5, x), std::erfc(0.5 / std::sqrt(x))) < 1e-13);
    }
}

TEST_CASE("general-path density near alpha = 1/2 approaches the Levy law") {
    // The Zolotarev integral and the large-x series, not the closed form.
    for (double x : {0.3, 2.0, 50.0}) {
        const double levy = std::exp(-0.25 / x) / (2.0 * std::sqrt(M_PI) * std::pow(x, 1.5));
        CHECK(rel(stable_density(0.5 + 1e-9, x), levy) < 1e-6);
    }
}

TEST_CASE("stable CDF matches the oracle and integrates the density") {
    for (const auto& row : oracle::kStableCdf) {
        CAPTURE(row[0]);
        CAPTURE(row[1]);
        CHECK(std::fabs(stable_cdf(row[0], row[1]) - row[2]) < 1e-9);
    }
    const double alpha = 0.7, x = 2.0;
    const auto r = quad::integrate([&](double s) { return s > 0 ? stable_density(alpha, s) : 0.0; }, 0.0, x,
                                   {1e-10, 1e-13});
    CHECK(std::fabs(r.value - stable_cdf(alpha, x)) < 1e-9);
}

TEST_CASE("stable density domain") {
    CHECK_THROWS_AS(stable_density(0.7, 0.0), DomainError);
    CHECK_THROWS_AS(stable_density(1.0, 1.0), DomainError);
    CHECK(stable_cdf(0.7, -1.0) == 0.0);
}
