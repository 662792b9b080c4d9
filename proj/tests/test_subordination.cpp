#include <doctest.h>

#include <cmath>

#include "fracsub/errors.hpp"
#include "fracsub/specialfns.hpp"
#include "fracsub/subordination.hpp"
#include "oracle_values.hpp"

using namespace fracsub;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("stable kernel density equals its inverted transform") {
    for (double alpha : {0.3, 0.7}) {
        const SubordinationEvaluator ev(KernelSpec::stable(alpha));
        for (double tau : {0.05, 0.5, 1.5})
            CHECK(rel(rho(ev, 1.0, tau), rho_inverted(ev, 1.0, tau)) < 1e-7);
    }
}

TEST_CASE("uniform distributed-order density against mpmath Talbot") {
    const SubordinationEvaluator ev(KernelSpec(DistributedOrderKernel::uniform()));
    for (const auto& row : oracle::kDistributedUniformRho) {
        CAPTURE(row[0]);
        CAPTURE(row[1]);
        CHECK(std::fabs(rho(ev, row[0], row[1]) - row[2]) < 1e-9 * std::max(1.0, row[2]));
    }
}

TEST_CASE("stable tail probability is a stable CDF value") {
    // P(E_1 > 1) = P(S_1 < 1).
    const SubordinationEvaluator ev(KernelSpec::stable(0.7));
    CHECK(std::fabs(rho_tail(ev, 1.0, 1.0) - oracle::kStableCdf[5][2]) < 1e-8);
    CHECK(rho_tail(ev, 1.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("subordinating an exponential gives the Mittag-Leffler relaxation") {
    for (const auto& row : oracle::kLaplaceGrid) {
        const SubordinationEvaluator ev(KernelSpec::stable(row[0]));
        CHECK(std::fabs(subordinate(ev, TimeFunction::exponential(row[1]), row[2]) - row[3]) < 1e-8);
    }
}

TEST_CASE("subordinating a constant preserves it for every family") {
    for (const KernelSpec& s : {KernelSpec::stable(0.4), KernelSpec(DistributedOrderKernel::uniform()),
                                KernelSpec(StieltjesKernel::two_power(0.4, 0.5))}) {
        const SubordinationEvaluator ev(s);
        CHECK(std::fabs(subordinate(ev, TimeFunction::constant(2.0), 3.0) - 2.0) < 2e-6);
    }
}

TEST_CASE("split ranges add up") {
    const SubordinationEvaluator ev(KernelSpec(DistributedOrderKernel::uniform()));
    const auto u = TimeFunction::exponential(0.7);
    const double whole = subordinate(ev, u, 2.0);
    const double parts = subordinate_range(ev, u, 2.0, 0.0, 0.8) + subordinate_range(ev, u, 2.0, 0.8, HUGE_VAL);
    CHECK(std::fabs(whole - parts) < 1e-9);
}

TEST_CASE("horizon puts the tail below the cutoff") {
    const SubordinationEvaluator ev(KernelSpec::stable(0.5), FixedTalbot{}, 1e-10);
    const double T = horizon(ev, 5.0);
    CHECK(rho_tail(ev, 5.0, T) < 1e-10);
    CHECK(rho_tail(ev, 5.0, T / 2.0) >= 1e-10);
}

TEST_CASE("general fractional derivative of simple functions") {
    const TimeFunction lin{[](double s) { return s; }, HUGE_VAL, {}};
    for (double alpha : {0.3, 0.8}) {
        const KernelSpec s = KernelSpec::stable(alpha);
        const double t = 2.0;
        CHECK(rel(gfd_apply(s, lin, t), std::pow(t, 1.0 - alpha) / std::tgamma(2.0 - alpha)) < 1e-6);
    }
    const KernelSpec u(DistributedOrderKernel::uniform());
    for (const auto& row : oracle::kDistributedUniformPrimitive)
        CHECK(rel(gfd_apply(u, lin, row[0]), row[1]) < 1e-6);
    CHECK(gfd_apply(KernelSpec::stable(0.5), TimeFunction::constant(3.0), 1.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("invalid subordination arguments") {
    const SubordinationEvaluator ev(KernelSpec::stable(0.5));
    CHECK_THROWS_AS(rho(ev, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(rho(ev, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(SubordinationEvaluator(KernelSpec::stable(0.5), FixedTalbot{}, 0.5), DomainError);
}
