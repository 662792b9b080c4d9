#include <doctest.h>

#include <cmath>

#include "fracsub/errors.hpp"
#include "fracsub/laplace.hpp"

using namespace fracsub;

TEST_CASE("Talbot inverts rational and exponential-type transforms") {
    const Transform F = [](cplx p) { return 1.0 / (p + 1.0); };
    for (double t : {0.1, 1.0, 5.0, 20.0}) CHECK(std::fabs(invert(F, FixedTalbot{}, t) - std::exp(-t)) < 1e-10);
    const Transform G = [](cplx p) { return 1.0 / (p * p + 1.0); };
    for (double t : {0.5, 2.0, 7.0}) CHECK(std::fabs(invert(G, FixedTalbot{48}, t) - std::sin(t)) < 1e-8);
    // exp(-sqrt p) <-> exp(-1/(4t)) / (2 sqrt(pi) t^{3/2}).
    const Transform H = [](cplx p) { return std::exp(-std::sqrt(p)); };
    for (double t : {0.2, 1.0, 10.0}) {
        const double exact = std::exp(-0.25 / t) / (2.0 * std::sqrt(M_PI) * std::pow(t, 1.5));
        CHECK(std::fabs(invert(H, FixedTalbot{}, t) - exact) < 1e-10);
    }
}

TEST_CASE("log-space inversion handles transforms that overflow in parts") {
    const LogTransform logF = [](cplx p) { return -std::log(p + 1.0); };
    CHECK(std::fabs(invert_log(logF, FixedTalbot{}, 3.0) - std::exp(-3.0)) < 1e-10);
}

TEST_CASE("Gaver-Stehfest is a coarse cross-check") {
    const Transform F = [](cplx p) { return 1.0 / (p + 1.0); };
    CHECK(std::fabs(invert(F, GaverStehfest{}, 1.0) - std::exp(-1.0)) < 1e-4);
    const auto checked = invert_checked(F, 1.0);
    CHECK(std::fabs(checked.value - std::exp(-1.0)) < 1e-10);
    CHECK_FALSE(checked.accuracy_warning);
}

TEST_CASE("invalid methods and failing transforms are reported") {
    CHECK_THROWS_AS(validate(FixedTalbot{4}), DomainError);
    CHECK_THROWS_AS(validate(GaverStehfest{7}), DomainError);
    CHECK_THROWS_AS(validate(GaverStehfest{30}), DomainError);
    CHECK_NOTHROW(validate(GaverStehfest{16}));
    const Transform bad = [](cplx) { return cplx(std::nan(""), 0.0); };
    CHECK_THROWS_AS(invert(bad, FixedTalbot{}, 1.0), InversionError);
    CHECK(describe(FixedTalbot{32}) == "talbot(nodes=32)");
}
