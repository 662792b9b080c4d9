#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "fracsub/kernels.hpp"
#include "fracsub/kinetics.hpp"
#include "fracsub/subordination.hpp"

namespace fracsub {

enum class Verdict { converging_to_one, vanishing, indeterminate };

/// "converging-to-one", "vanishing" or "indeterminate".
std::string to_string(Verdict v);

/// Observation point x(t) = c t^beta.
struct MovingPoint {
    double c = 1.0;
    double beta = 0.0;
};

struct FixedPoint {};
using PointMode = std::variant<FixedPoint, MovingPoint>;

struct CesaroReport {
    std::vector<double> t_grid;
    std::vector<double> M_values;
    std::vector<double> predicted;
    std::vector<double> rel_error;
    Verdict verdict = Verdict::indeterminate;
};

/// (1/t) int_0^t u(tau) dtau by adaptive quadrature graded toward tau = 0.
double cesaro_mean(const TimeFunction& u, double t);

struct Prediction {
    double value = 0.0;
    Verdict verdict = Verdict::indeterminate;
};

/// Leading Karamata asymptote of the Cesaro mean of the subordinated step front 1{x <= v tau}:
/// exp(-(x/v) L_0(1/t)) with L_0(p) = p asymptote_K(spec, zero, p); x is replaced by c t^beta for a
/// moving point. Throws UnsupportedCase where no limit is predicted (stable with beta >= alpha,
/// Stieltjes with beta <= theta, kernels without a zero asymptote).
Prediction predicted_cesaro(const KernelSpec& spec, double x, double v, const PointMode& mode, double t);

enum class KaramataDirection { zero_to_infinity, infinity_to_zero };

/// t^rho L(t) / Gamma(rho + 1), or t^rho L(1/t) / Gamma(rho + 1) for the infinity-to-zero direction.
double karamata_predict(double rho_index, const std::function<double(double)>& L, double t,
                        KaramataDirection direction = KaramataDirection::zero_to_infinity);

struct WaveTerms {
    double I1 = 0.0, I2 = 0.0, I3 = 0.0;
    double zeta_minus = 0.0, zeta_plus = 0.0;
    double x_delta = 0.0;
    double sum() const { return I1 + I2 + I3; }
};

/// Observed wave u0(tau) = psi(x - v tau) as a TimeFunction with breakpoints at the front passage.
TimeFunction wave_time_function(const WaveProfile& wave, double x);

/// Splits int rho_t(tau) psi(x - v tau) dtau at zeta_-/+ = (x -/+ x_delta)/v (clamped at 0).
WaveTerms wave_decomposition(const SubordinationEvaluator& ev, const WaveProfile& wave, double delta, double t,
                             double x);

struct StepFront {
    double x = 1.0;
    double v = 1.0;
};
struct MovingStepFront {
    MovingPoint point;
    double v = 1.0;
};
struct WaveFront {
    WaveProfile wave;
    double x = 0.0;
};
using CesaroDynamics = std::variant<StepFront, MovingStepFront, WaveFront>;

/// Measured M_t = (1/t) int_0^t u(s) ds with u(s) the subordinated dynamics at time s, against the
/// step prediction (wave: x and the wave speed). The verdict comes from the last decade of the grid:
/// converging-to-one if 1 - M < 0.1 and decreasing, vanishing if M < 0.05 and decreasing.
/// The grid must be increasing and span at least three decades.
CesaroReport cesaro_scan(const SubordinationEvaluator& ev, const CesaroDynamics& dynamics,
                         const std::vector<double>& t_grid);

/// Trend verdict on (t, M) samples, as used by cesaro_scan.
Verdict classify_trend(const std::vector<double>& t_grid, const std::vector<double>& M_values);

}  // namespace fracsub
