#include <doctest.h>

#include <cmath>

#include "fracsub/asymptotics.hpp"
#include "fracsub/errors.hpp"

using namespace fracsub;

TEST_CASE("Cesaro mean of elementary functions") {
    CHECK(cesaro_mean(TimeFunction::constant(0.3), 50.0) == doctest::Approx(0.3).epsilon(1e-12));
    for (double t : {0.5, 10.0, 1000.0})
        CHECK(cesaro_mean(TimeFunction::exponential(1.0), t) == doctest::Approx(-std::expm1(-t) / t).epsilon(1e-9));
    CHECK(cesaro_mean(TimeFunction::step(2.0), 10.0) == doctest::Approx(0.8).epsilon(1e-9));
    CHECK_THROWS_AS(cesaro_mean(TimeFunction::constant(1.0), 0.0), DomainError);
}

TEST_CASE("Karamata prediction for regularly varying functions") {
    const auto one = [](double) { return 1.0; };
    CHECK(karamata_predict(1.0, one, 7.0) == doctest::Approx(7.0));
    CHECK(karamata_predict(0.5, one, 4.0) == doctest::Approx(2.0 / std::tgamma(1.5)));
    const auto logl = [](double s) { return std::log(s); };
    CHECK(karamata_predict(0.0, logl, 100.0, KaramataDirection::infinity_to_zero) == doctest::Approx(std::log(0.01)));
    CHECK_THROWS_AS(karamata_predict(-1.0, one, 1.0), DomainError);
}

TEST_CASE("step-front prediction for the stable kernel") {
    const KernelSpec s = KernelSpec::stable(0.5);
    for (double t : {10.0, 1e4}) {
        const Prediction p = predicted_cesaro(s, 2.0, 1.0, FixedPoint{}, t);
        CHECK(p.value == doctest::Approx(std::exp(-2.0 * std::pow(t, -0.5))));
    }
    CHECK(predicted_cesaro(s, 1.0, 1.0, FixedPoint{}, 100.0).verdict == Verdict::converging_to_one);
    CHECK_THROWS_AS(predicted_cesaro(s, 1.0, 1.0, MovingPoint{1.0, 0.6}, 100.0), UnsupportedCase);
}

TEST_CASE("moving-point predictions by family") {
    const KernelSpec d(DistributedOrderKernel::uniform());
    CHECK(predicted_cesaro(d, 0.0, 1.0, MovingPoint{1.0, 0.5}, 1e4).verdict == Verdict::vanishing);
    const KernelSpec st(StieltjesKernel::two_power(0.4, 0.5));
    CHECK(predicted_cesaro(st, 0.0, 1.0, MovingPoint{1.0, 0.8}, 1e4).verdict == Verdict::vanishing);
    CHECK_THROWS_AS(predicted_cesaro(st, 0.0, 1.0, MovingPoint{1.0, 0.3}, 1e4), UnsupportedCase);
    CHECK_THROWS_AS(predicted_cesaro(d, 1.0, 1.0, FixedPoint{}, 0.5), DomainError);
}

TEST_CASE("trend classification") {
    const std::vector<double> t{1, 10, 100, 1000, 10000};
    CHECK(classify_trend(t, {0.5, 0.8, 0.9, 0.95, 0.97}) == Verdict::converging_to_one);
    CHECK(classify_trend(t, {0.5, 0.2, 0.1, 0.04, 0.01}) == Verdict::vanishing);
    CHECK(classify_trend(t, {0.5, 0.5, 0.5, 0.5, 0.5}) == Verdict::indeterminate);
    CHECK(classify_trend(t, {0.5, 0.8, 0.9, 0.95, 0.96}) == Verdict::converging_to_one);
    CHECK(classify_trend(t, {0.5, 0.99, 0.97, 0.95, 0.93}) == Verdict::indeterminate);
    CHECK(to_string(Verdict::converging_to_one) == "converging-to-one");
}

TEST_CASE("Cesaro scan for a stable step front converges") {
    const SubordinationEvaluator ev(KernelSpec::stable(0.5));
    const auto rep = cesaro_scan(ev, StepFront{1.0, 1.0}, log_grid(1.0, 4.0, 1));
    CHECK(rep.verdict == Verdict::converging_to_one);
    CHECK(rep.rel_error.back() < 0.01);
    CHECK_THROWS_AS(cesaro_scan(ev, StepFront{1.0, 1.0}, {10.0, 100.0}), DomainError);
    CHECK_THROWS_AS(cesaro_scan(ev, StepFront{1.0, 1.0}, {10.0, 5.0, 1e4}), DomainError);
}

TEST_CASE("wave decomposition on a synthetic profile") {
    std::vector<double> x, psi;
    for (int i = -400; i <= 400; ++i) {
        x.push_back(0.05 * i);
        psi.push_back(0.5 * (1.0 - std::tanh(0.05 * i)));
    }
    const WaveProfile w(x, psi, 1.2);
    const SubordinationEvaluator ev(KernelSpec::stable(0.5));
    const double delta = 0.05;
    for (double t : {1.0, 30.0}) {
        const WaveTerms terms = wave_decomposition(ev, w, delta, t, 4.0);
        const double direct = subordinate(ev, wave_time_function(w, 4.0), t);
        CHECK(std::fabs(terms.sum() - direct) < 1e-8);
        CHECK(terms.I1 <= delta * (1.0 - rho_tail(ev, t, terms.zeta_minus)) + 1e-10);
        CHECK(terms.I3 >= (1.0 - delta) * rho_tail(ev, t, terms.zeta_plus) - 1e-10);
        CHECK(terms.I3 <= rho_tail(ev, t, terms.zeta_plus) + 1e-10);
    }
}
