#include "fracsub/laplace.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "fracsub/errors.hpp"

namespace fracsub {

namespace {

// e^{pt} F(p), computed either directly or through log F, plus log|F| on the real axis.
struct Weighted {
    std::function<cplx(cplx p, double t)> eval;
    std::function<double(double p)> log_abs;
};

template <typename Fn>
cplx guarded(const Fn& fn, cplx p) {
    cplx v;
    try {
        v = fn(p);
    } catch (const InversionError&) {
        throw;
    } catch (const std::exception& e) {
        throw InversionError(std::string("transform evaluation failed: ") + e.what());
    }
    return v;
}

void check_finite(cplx v) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw InversionError("transform returned a non-finite value");
}

Weighted direct(const Transform& F) {
    return {[&F](cplx p, double t) {
                const cplx v = guarded(F, p);
                check_finite(v);
                if (v == 0.0) return cplx(0.0);
                return std::exp(p * t) * v;
            },
            [&F](double p) { return std::log(std::abs(guarded(F, cplx(p, 0.0)))); }};
}

Weighted logarithmic(const LogTransform& logF) {
    return {[&logF](cplx p, double t) {
                const cplx v = guarded(logF, p);
                if (std::isnan(v.real()) || std::isnan(v.imag()) || v.real() == HUGE_VAL)
                    throw InversionError("log-transform returned a non-finite value");
                if (v.real() == -HUGE_VAL) return cplx(0.0);
                return std::exp(p * t + v);
            },
            [&logF](double p) { return guarded(logF, cplx(p, 0.0)).real(); }};
}

// Values whose saddle-point size is below e^{-50} are returned as zero.
constexpr double kNegligibleExponent = -50.0;
constexpr int kMaxTalbotNodes = 20000;

struct Saddle {
    double p;
    double phi;
};

// Minimum of phi(p) = p t + log|F(p)| over p >= p0, assuming phi is convex (true for log-convex F such
// as completely monotone transforms). Returns p0 itself when phi already increases there.
Saddle real_saddle(const Weighted& G, double t, double p0) {
    auto phi = [&](double u) { return std::exp(u) * t + G.log_abs(std::exp(u)); };
    double lo = std::log(p0);
    double f_lo = phi(lo);
    if (phi(lo + 0.05) >= f_lo) return {p0, f_lo};
    double hi = lo + 1.0;
    while (phi(hi) < phi(hi - 0.05) && hi < lo + 200.0) hi += 1.0;
    lo = std::max(std::log(p0), hi - 2.0);
    // Golden-section search on u = log p.
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = phi(c), fd = phi(d);
    for (int i = 0; i < 80 && b - a > 1e-6; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = phi(d);
        }
    }
    const double u = 0.5 * (a + b);
    return {std::exp(u), phi(u)};
}

// Abate-Valko fixed Talbot: s(th) = r th (cot th + i), r = 2M/(5t). When the real saddle of
// e^{pt}F(p) lies right of r (transforms like exp(-a L(p)) with a >> t), M is raised until the
// contour crosses the axis at the saddle; otherwise the terms near the negative axis swamp f.
double talbot(const Weighted& G, int M, double t) {
    const Saddle sd = real_saddle(G, t, 2.0 * M / (5.0 * t));
    if (sd.p > 2.0 * M / (5.0 * t)) {
        if (sd.phi < kNegligibleExponent) return 0.0;
        const double need = std::ceil(2.5 * t * sd.p);
        if (need > kMaxTalbotNodes) throw InversionError("Talbot contour would need more than 20000 nodes");
        M = std::max(M, static_cast<int>(need));
    }
    const double r = 2.0 * M / (5.0 * t);
    double sum = 0.5 * G.eval(cplx(r, 0.0), t).real();
    for (int k = 1; k < M; ++k) {
        const double th = k * std::numbers::pi / M;
        const double cot = std::cos(th) / std::sin(th);
        const cplx s(r * th * cot, r * th);
        const double sigma = th + (th * cot - 1.0) * cot;
        sum += (G.eval(s, t) * cplx(1.0, sigma)).real();
    }
    const double f = r / M * sum;
    if (!std::isfinite(f)) throw InversionError("Talbot sum overflowed");
    return f;
}

std::vector<long double> stehfest_weights(int N) {
    const int h = N / 2;
    auto fact = [](int n) {
        long double f = 1.0L;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    std::vector<long double> V(static_cast<std::size_t>(N) + 1, 0.0L);
    for (int k = 1; k <= N; ++k) {
        long double s = 0.0L;
        for (int j = (k + 1) / 2; j <= std::min(k, h); ++j)
            s += std::pow(static_cast<long double>(j), h) * fact(2 * j) /
                 (fact(h - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
        V[static_cast<std::size_t>(k)] = ((k + h) % 2 == 0 ? 1.0L : -1.0L) * s;
    }
    return V;
}

double stehfest(const Weighted& G, int N, double t) {
    static thread_local std::vector<std::vector<long double>> cache(25);
    auto& V = cache[static_cast<std::size_t>(N)];
    if (V.empty()) V = stehfest_weights(N);
    const long double ln2t = std::numbers::ln2_v<long double> / t;
    // Neumaier summation: the weights alternate in sign and reach ~1e9 for N = 14.
    long double sum = 0.0L, comp = 0.0L;
    for (int k = 1; k <= N; ++k) {
        const double p = static_cast<double>(k * ln2t);
        // G carries e^{pt}; undo it on the real axis.
        const long double Fp = G.eval(cplx(p, 0.0), 0.0).real();
        const long double term = V[static_cast<std::size_t>(k)] * Fp;
        const long double tsum = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - tsum) + term;
        else
            comp += (term - tsum) + sum;
        sum = tsum;
    }
    return static_cast<double>((sum + comp) * ln2t);
}

double run(const Weighted& G, const InversionMethod& method, double t) {
    if (!(t > 0.0)) throw DomainError("inversion needs t > 0");
    validate(method);
    if (const auto* tb = std::get_if<FixedTalbot>(&method)) return talbot(G, tb->nodes, t);
    return stehfest(G, std::get<GaverStehfest>(method).terms, t);
}

CheckedInversion run_checked(const Weighted& G, double t, int talbot_nodes, int gs_terms) {
    CheckedInversion out;
    out.value = run(G, FixedTalbot{talbot_nodes}, t);
    out.cross_check = run(G, GaverStehfest{gs_terms}, t);
    const double scale = std::max(std::fabs(out.value), 1e-8);
    out.accuracy_warning = std::fabs(out.value - out.cross_check) > 1e-4 * scale;
    return out;
}

}  // namespace

void validate(const InversionMethod& method) {
    if (const auto* tb = std::get_if<FixedTalbot>(&method)) {
        if (tb->nodes < 16) throw DomainError("Talbot needs at least 16 nodes");
        if (tb->nodes > 200) throw DomainError("Talbot node count above 200 loses double precision");
    } else {
        const auto& gs = std::get<GaverStehfest>(method);
        if (gs.terms < 8 || gs.terms > 24 || gs.terms % 2 != 0)
            throw DomainError("Gaver-Stehfest needs an even term count in [8, 24]");
        if (gs.working_digits < 1) throw DomainError("Gaver-Stehfest needs positive working digits");
    }
}

std::string describe(const InversionMethod& method) {
    std::ostringstream os;
    if (const auto* tb = std::get_if<FixedTalbot>(&method))
        os << "talbot(nodes=" << tb->nodes << ")";
    else
        os << "stehfest(terms=" << std::get<GaverStehfest>(method).terms << ")";
    return os.str();
}

double invert(const Transform& F, const InversionMethod& method, double t) { return run(direct(F), method, t); }

double invert_log(const LogTransform& logF, const InversionMethod& method, double t) {
    return run(logarithmic(logF), method, t);
}

CheckedInversion invert_checked(const Transform& F, double t, int talbot_nodes, int gs_terms) {
    return run_checked(direct(F), t, talbot_nodes, gs_terms);
}

CheckedInversion invert_log_checked(const LogTransform& logF, double t, int talbot_nodes, int gs_terms) {
    return run_checked(logarithmic(logF), t, talbot_nodes, gs_terms);
}

}  // namespace fracsub
