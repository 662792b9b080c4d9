#include "fracsub/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracsub/errors.hpp"
#include "fracsub/parallel.hpp"
#include "fracsub/quadrature.hpp"

namespace fracsub {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// L_0(p) = p K_0(p), the small-p Laplace exponent from the leading asymptote of K.
double exponent_at_zero(const KernelSpec& spec, double p) { return p * asymptote_K(spec, Regime::zero, p); }

double require_speed(double v) {
    if (!(v > 0.0)) throw DomainError("front speed must be positive");
    return v;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::converging_to_one: return "converging-to-one";
        case Verdict::vanishing: return "vanishing";
        default: return "indeterminate";
    }
}

double cesaro_mean(const TimeFunction& u, double t) {
    if (!(t > 0.0)) throw DomainError("Cesaro mean needs t > 0");
    const int levels = std::clamp(static_cast<int>(std::ceil(std::log2(std::max(t, 1.0)))) + 6, 6, 60);
    std::vector<double> bps = quad::graded_breakpoints(0.0, t, levels);
    bps.insert(bps.end(), u.breakpoints.begin(), u.breakpoints.end());
    quad::Options opt;
    opt.rel_tol = 1e-8;
    opt.abs_tol = 1e-12 * t;
    opt.max_intervals = 200;
    return quad::integrate_pieces(u.evaluator, 0.0, t, bps, opt).value / t;
}

Prediction predicted_cesaro(const KernelSpec& spec, double x, double v, const PointMode& mode, double t) {
    require_speed(v);
    if (!(t > 1.0)) throw DomainError("Cesaro prediction is an asymptote in t -> infinity; needs t > 1");
    const double p = 1.0 / t;
    const auto* moving = std::get_if<MovingPoint>(&mode);
    if (moving && (moving->beta < 0.0 || !(moving->c > 0.0)))
        throw DomainError("moving point needs c > 0 and beta >= 0");
    const double pos = moving ? moving->c * std::pow(t, moving->beta) : x;

    Verdict verdict = Verdict::converging_to_one;
    if (moving && moving->beta > 0.0) {
        const double beta = moving->beta;
        std::visit(Overloaded{[&](const StableKernel& s) {
                                  if (beta >= s.alpha) {
                                      std::ostringstream os;
                                      os << "no Cesaro prediction for a stable kernel with beta >= alpha (beta = "
                                         << beta << ", alpha = " << s.alpha << ")";
                                      throw UnsupportedCase(os.str());
                                  }
                              },
                              [&](const DistributedOrderKernel&) { verdict = Verdict::vanishing; },
                              [&](const StieltjesKernel& s) {
                                  if (beta <= s.theta()) {
                                      std::ostringstream os;
                                      os << "no Cesaro prediction for a Stieltjes kernel with beta <= theta (beta = "
                                         << beta << ", theta = " << s.theta() << ")";
                                      throw UnsupportedCase(os.str());
                                  }
                                  verdict = Verdict::vanishing;
                              }},
                   spec.family());
    }
    if (pos <= 0.0) return {1.0, verdict};
    return {std::exp(-(pos / v) * exponent_at_zero(spec, p)), verdict};
}

double karamata_predict(double rho_index, const std::function<double(double)>& L, double t,
                        KaramataDirection direction) {
    if (rho_index < 0.0) throw DomainError("Karamata index must be nonnegative");
    if (!(t > 0.0)) throw DomainError("Karamata prediction needs t > 0");
    const double l = direction == KaramataDirection::zero_to_infinity ? L(t) : L(1.0 / t);
    return std::pow(t, rho_index) * l / std::tgamma(rho_index + 1.0);
}

TimeFunction wave_time_function(const WaveProfile& wave, double x) {
    const double v = wave.speed();
    // psi(x - v tau) changes only while x - v tau sweeps the sampled window.
    std::vector<double> bps;
    for (double s : {wave.x().back(), 0.0, wave.x().front()}) {
        const double tau = (x - s) / v;
        if (tau > 0.0) bps.push_back(tau);
    }
    return TimeFunction{[wave, x, v](double tau) { return wave(x - v * tau); }, 1.0, bps};
}

WaveTerms wave_decomposition(const SubordinationEvaluator& ev, const WaveProfile& wave, double delta, double t,
                             double x) {
    WaveTerms out;
    out.x_delta = wave.x_delta(delta);
    const double v = wave.speed();
    out.zeta_minus = std::max(0.0, (x - out.x_delta) / v);
    out.zeta_plus = std::max(0.0, (x + out.x_delta) / v);
    TimeFunction u0 = wave_time_function(wave, x);
    for (double z : {out.zeta_minus, out.zeta_plus})
        if (z > 0.0) u0.breakpoints.push_back(z);
    out.I1 = subordinate_range(ev, u0, t, 0.0, out.zeta_minus);
    out.I2 = subordinate_range(ev, u0, t, out.zeta_minus, out.zeta_plus);
    out.I3 = subordinate_range(ev, u0, t, out.zeta_plus, std::numeric_limits<double>::infinity());
    return out;
}

Verdict classify_trend(const std::vector<double>& t_grid, const std::vector<double>& M_values) {
    if (t_grid.size() != M_values.size() || t_grid.size() < 2) throw DomainError("trend test needs >= 2 samples");
    const std::size_t last = t_grid.size() - 1;
    // Reference point: the last grid time at or below t_last / 10.
    std::size_t ref = 0;
    for (std::size_t i = 0; i < last; ++i)
        if (t_grid[i] <= t_grid[last] / 10.0 * (1.0 + 1e-12)) ref = i;
    const double M = M_values[last], M_ref = M_values[ref];
    const double gap = 1.0 - M, gap_ref = 1.0 - M_ref;
    if (gap < 0.1 && (gap <= 1e-12 || gap < gap_ref)) return Verdict::converging_to_one;
    if (M < 0.05 && (M <= 1e-300 || M < M_ref)) return Verdict::vanishing;
    return Verdict::indeterminate;
}

CesaroReport cesaro_scan(const SubordinationEvaluator& ev, const CesaroDynamics& dynamics,
                         const std::vector<double>& t_grid) {
    if (t_grid.size() < 2 || !std::is_sorted(t_grid.begin(), t_grid.end()) ||
        std::adjacent_find(t_grid.begin(), t_grid.end()) != t_grid.end() || !(t_grid.front() > 0.0))
        throw DomainError("Cesaro scan needs a strictly increasing positive time grid");
    if (t_grid.back() < 1e3 * t_grid.front() * (1.0 - 1e-12))
        throw DomainError("Cesaro scan grid must span at least three decades");

    CesaroReport rep;
    rep.t_grid = t_grid;
    rep.M_values.resize(t_grid.size());
    rep.predicted.resize(t_grid.size());
    rep.rel_error.resize(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) {
        const double t = t_grid[i];
        double measured = 0.0;
        Prediction pred;
        std::visit(Overloaded{[&](const StepFront& s) {
                                  const double a = std::max(0.0, s.x / require_speed(s.v));
                                  TimeFunction u{[&ev, a](double r) { return r > 0.0 ? rho_tail(ev, r, a) : 0.0; },
                                                 1.0, {}};
                                  measured = a == 0.0 ? 1.0 : cesaro_mean(u, t);
                                  pred = predicted_cesaro(ev.spec(), s.x, s.v, FixedPoint{}, t);
                              },
                              [&](const MovingStepFront& s) {
                                  const double a = s.point.c * std::pow(t, s.point.beta) / require_speed(s.v);
                                  TimeFunction u{[&ev, a](double r) { return r > 0.0 ? rho_tail(ev, r, a) : 0.0; },
                                                 1.0, {}};
                                  measured = cesaro_mean(u, t);
                                  pred = predicted_cesaro(ev.spec(), 0.0, s.v, s.point, t);
                              },
                              [&](const WaveFront& w) {
                                  const TimeFunction u0 = wave_time_function(w.wave, w.x);
                                  TimeFunction u{[&ev, &u0](double r) {
                                                     return r > 0.0 ? subordinate(ev, u0, r) : u0(0.0);
                                                 },
                                                 1.0, {}};
                                  measured = cesaro_mean(u, t);
                                  pred = predicted_cesaro(ev.spec(), w.x, w.wave.speed(), FixedPoint{}, t);
                              }},
                   dynamics);
        rep.M_values[i] = measured;
        rep.predicted[i] = pred.value;
        rep.rel_error[i] = pred.value > 0.0 ? std::fabs(measured - pred.value) / pred.value : std::fabs(measured);
    });
    rep.verdict = classify_trend(rep.t_grid, rep.M_values);
    return rep;
}

}  // namespace fracsub
