#include <doctest.h>

#include <cmath>

#include "fracsub/errors.hpp"
#include "fracsub/kernels.hpp"
#include "oracle_values.hpp"

using namespace fracsub;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
const KernelSpec kUniform(DistributedOrderKernel::uniform());
}  // namespace

TEST_CASE("stable kernel transforms") {
    const KernelSpec s = KernelSpec::stable(0.6);
    for (double p : {1e-4, 0.3, 1.0, 50.0}) {
        CHECK(rel(laplace_K(s, p), std::pow(p, -0.4)) < 1e-14);
        CHECK(rel(laplace_exponent(s, p), std::pow(p, 0.6)) < 1e-14);
    }
    CHECK(rel(kernel_k(s, 2.0), std::pow(2.0, -0.6) / std::tgamma(0.4)) < 1e-14);
    CHECK(rel(kernel_primitive(s, 2.0), std::pow(2.0, 0.4) / std::tgamma(1.4)) < 1e-14);
    CHECK(s.is_stable());
    CHECK(s.family_name() == "stable");
    CHECK_THROWS_AS(KernelSpec::stable(1.0), DomainError);
    CHECK_THROWS_AS(KernelSpec::stable(0.0), DomainError);
}

TEST_CASE("uniform distributed-order kernel against quadrature oracle") {
    for (const auto& row : oracle::kDistributedUniformK) {
        CAPTURE(row[0]);
        CHECK(rel(laplace_K(kUniform, row[0]), row[1]) < 1e-10);
    }
    for (const auto& row : oracle::kDistributedUniformPrimitive) {
        CAPTURE(row[0]);
        CHECK(rel(kernel_primitive(kUniform, row[0]), row[1]) < 1e-10);
    }
    CHECK_THROWS_AS(kUniform.stable_alpha(), DomainError);
}

TEST_CASE("two-power Stieltjes kernel against quadrature oracle") {
    for (const auto& row : oracle::kTwoPowerK) {
        CAPTURE(row[0]);
        CAPTURE(row[2]);
        const KernelSpec s(StieltjesKernel::two_power(row[0], row[1]));
        CHECK(rel(laplace_K(s, row[2]), row[3]) < 1e-9);
    }
}

TEST_CASE("complex transform reduces to the real one on the positive axis") {
    for (const KernelSpec& s : {KernelSpec::stable(0.3), kUniform, KernelSpec(StieltjesKernel::two_power(0.4, 0.5))})
        for (double p : {0.01, 1.0, 100.0}) {
            const cplx z = laplace_K(s, cplx(p, 0.0));
            CHECK(rel(z.real(), laplace_K(s, p)) < 1e-12);
            CHECK(std::fabs(z.imag()) < 1e-12 * std::fabs(z.real()));
        }
}

TEST_CASE("pure power Stieltjes kernel has the Euler reflection closed form") {
    for (double theta : {0.25, 0.5, 0.75}) {
        const KernelSpec s(StieltjesKernel::power(theta));
        for (double p : {0.01, 1.0, 100.0})
            CHECK(rel(laplace_K(s, p), M_PI / std::sin(M_PI * theta) * std::pow(p, theta - 1.0)) < 1e-9);
    }
}

TEST_CASE("asymptotes at zero and infinity") {
    CHECK(rel(asymptote_K(kUniform, Regime::infinity, 1e8), laplace_K(kUniform, 1e8)) < 0.01);
    CHECK(rel(asymptote_K(kUniform, Regime::zero, 1e-8), laplace_K(kUniform, 1e-8)) < 0.01);
    const KernelSpec st(StieltjesKernel::two_power(0.4, 0.5));
    CHECK(rel(asymptote_K(st, Regime::zero, 1e-7), laplace_K(st, 1e-7)) < 0.01);
    CHECK(rel(asymptote_K(st, Regime::infinity, 1e8), laplace_K(st, 1e8)) < 0.01);
    CHECK_THROWS_AS(asymptote_K(KernelSpec(StieltjesKernel::cut_power()), Regime::zero, 1e-6), UnsupportedCase);
}

TEST_CASE("hypothesis check separates admissible kernels from a finite K(0+)") {
    const auto grid = log_grid(-6.0, 6.0, 2);
    CHECK(validate_hypothesis(KernelSpec::stable(0.5), grid).all_ok());
    CHECK(validate_hypothesis(kUniform, grid).all_ok());
    CHECK(validate_hypothesis(KernelSpec(StieltjesKernel::two_power(0.4, 0.5)), grid).all_ok());
    const auto cut = validate_hypothesis(KernelSpec(StieltjesKernel::cut_power()), grid);
    CHECK_FALSE(cut.limits_at_zero_ok);
    // Too short a grid cannot witness the limits.
    CHECK_FALSE(validate_hypothesis(kUniform, log_grid(-1.0, 1.0, 2)).all_ok());
}

TEST_CASE("distributed-order weights from samples and power laws") {
    const KernelSpec flat(DistributedOrderKernel::from_samples({1.0, 1.0, 1.0, 1.0}));
    CHECK(rel(laplace_K(flat, 3.0), laplace_K(kUniform, 3.0)) < 1e-10);
    const KernelSpec lin(DistributedOrderKernel::power(1.0));
    // int_0^1 a p^{a-1} da at p = e: [a e^{a-1} - e^{a-1}]_0^1 = e^{-1}.
    CHECK(rel(laplace_K(lin, std::exp(1.0)), std::exp(-1.0)) < 1e-10);
    CHECK_THROWS_AS(DistributedOrderKernel::from_samples({1.0}), DomainError);
    CHECK_THROWS_AS(DistributedOrderKernel::from_samples({1.0, -1.0, 1.0}), DomainError);
}

TEST_CASE("log grid includes both endpoints") {
    const auto g = log_grid(-2.0, 1.0, 3);
    REQUIRE(g.size() == 10);
    CHECK(g.front() == doctest::Approx(0.01));
    CHECK(g.back() == doctest::Approx(10.0));
}
