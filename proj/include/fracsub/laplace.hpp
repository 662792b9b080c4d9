#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>

namespace fracsub {

using cplx = std::complex<double>;
using Transform = std::function<cplx(cplx)>;
/// log F(p); lets transforms whose factors overflow separately (e.g. exp(-tau L(p)) on the
/// Talbot contour) combine with exp(pt) in the exponent.
using LogTransform = std::function<cplx(cplx)>;

/// Fixed Talbot contour (Abate-Valko) with r = 2M/(5t).
struct FixedTalbot {
    int nodes = 32;
};

/// Gaver-Stehfest with Salzer weights, summed in long double with compensation.
struct GaverStehfest {
    int terms = 14;
    int working_digits = 18;
};

using InversionMethod = std::variant<FixedTalbot, GaverStehfest>;

/// Throws DomainError if node/term counts are outside Talbot >= 16, Gaver-Stehfest 8..24 even.
void validate(const InversionMethod& method);
std::string describe(const InversionMethod& method);

/// f(t) from its Laplace transform F. Talbot evaluates F on a complex contour in the right
/// half-plane's neighbourhood; Gaver-Stehfest only on the positive real axis.
/// Throws InversionError if F throws or returns a non-finite value on a node.
double invert(const Transform& F, const InversionMethod& method, double t);
double invert_log(const LogTransform& logF, const InversionMethod& method, double t);

struct CheckedInversion {
    double value = 0.0;       // primary (Talbot) result
    double cross_check = 0.0; // Gaver-Stehfest result
    bool accuracy_warning = false;
};

/// Talbot with a Gaver-Stehfest cross-check; the warning is raised above 1e-4 relative
/// disagreement (absolute when |f| < 1e-8).
CheckedInversion invert_checked(const Transform& F, double t, int talbot_nodes = 32, int gs_terms = 14);
CheckedInversion invert_log_checked(const LogTransform& logF, double t, int talbot_nodes = 32, int gs_terms = 14);

}  // namespace fracsub
