#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fracsub {

using RealFunction = std::function<double(double)>;

/// phi(tau) = a/tau + b + int_0^inf sigma(t)/(tau + t) dt.
struct StieltjesSpec {
    double a = 0.0;
    double b = 0.0;
    RealFunction sigma_density;  // empty means sigma = 0
};

/// Throws DomainError if a or b is negative or int sigma(t)/(1+t) dt is not finite.
void validate(const StieltjesSpec& spec);

/// Three-term sum; the integral is taken in y = log t over the whole line.
double eval_stieltjes(const StieltjesSpec& spec, double tau);

struct ClassEvidence {
    bool passed = true;
    /// First grid point where a sign condition failed.
    std::optional<double> witness;
    /// Order of the failing difference (0 for the value itself, -1 for a composed check).
    int order = 0;
    /// Smallest signed difference seen, relative to its noise floor (negative beyond -1 means a violation).
    double margin = HUGE_VAL;
    std::string reason;
};

/// tau_k = lo ratio^k up to hi.
std::vector<double> geometric_grid(double lo, double hi, double ratio = 1.05);

struct DifferenceOptions {
    int max_order = 8;
    double relative_step = 1e-2;  // forward-difference step h = relative_step · tau
    double relative_noise = 1e-12;  // per-value noise; order n tolerates 2^n times this
};

/// (-1)^n Delta_h^n f(tau) >= 0 for n = 0..max_order at every grid point, up to rounding noise.
ClassEvidence is_completely_monotone(const RealFunction& f, const std::vector<double>& grid,
                                     const DifferenceOptions& opt = {});

/// f >= 0 and (-1)^{n-1} Delta_h^n f >= 0 for n = 1..max_order, then exp(-s f) completely monotone
/// for s in {0.5, 1, 2}.
ClassEvidence is_bernstein(const RealFunction& f, const std::vector<double>& grid, const DifferenceOptions& opt = {});

struct NamedFunction {
    std::string name;
    std::string formula;
    RealFunction f;
};

/// Built-in class examples: Stieltjes (s1..s7), Bernstein (b1..b3), complete Bernstein (c1..c6) and
/// negative controls ("sin_plus_2", "square").
std::vector<NamedFunction> builtin_functions();
/// Throws DomainError for an unknown name.
NamedFunction builtin_function(const std::string& name);

}  // namespace fracsub
