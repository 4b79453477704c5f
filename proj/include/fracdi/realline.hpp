#pragma once

#include <string>
#include <vector>

#include "fracdi/branchcut.hpp"
#include "fracdi/function.hpp"
#include "fracdi/order.hpp"
#include "fracdi/quadrature.hpp"

namespace fracdi {

enum class Method { IntegerDerivative, LiouvilleByParts, DirectConvergent, NFoldIntegral, EpsRegularized };
const char* to_string(Method m);

struct DifferintResult {
    cplx value{0.0};
    double est_error = 0.0;
    Method method = Method::IntegerDerivative;
    UnitPhase branch;
    bool approximate_derivatives = false;
};

struct GrowthReport {
    bool pass = true;
    std::string diagnostic;
    std::vector<double> samples;  // |f(z)/z^alpha1| at z = -+2^j, j = 4..20
};

/// Samples the growth condition f(z)/z^alpha1 -> 0 along the side's ray.
GrowthReport growth_check(const RealFunction& f, const Order& alpha, CutOrientation side);

/// D+ integrates over (-inf, x], D- over [x, +inf). D- is evaluated as
/// exp(i pi alpha) (D+ g)(-x) with g(z) = f(-z).
DifferintResult frac_differint(const RealFunction& f, const Order& alpha, double x, CutOrientation side,
                               const QuadratureConfig& cfg = {}, UnitPhase branch = {});

DifferintResult nfold_integral(const RealFunction& f, int n, double x, CutOrientation side,
                               const QuadratureConfig& cfg = {});

/// Split at distance eps from x with the f(x) endpoint term; alpha1 < 1,
/// alpha not an integer.
cplx eps_regularized(const RealFunction& f, const Order& alpha, double x, CutOrientation side, double eps,
                     const QuadratureConfig& cfg = {});

/// I(gamma, x) = int_0^inf t^-gamma f(x -+ t) dt, gamma < 1.
cplx liouville_integral(const RealFunction& f, double gamma, double x, CutOrientation side,
                        const QuadratureConfig& cfg = {});

/// Hadamard finite part of I(gamma, x) for 1 <= gamma < 2.
cplx liouville_integral_fp(const RealFunction& f, double gamma, double x, CutOrientation side,
                           const QuadratureConfig& cfg = {});

struct IntegralRecurrence {
    cplx lhs{0.0};  // d/dx I(gamma, x) by finite differences
    cplx rhs{0.0};  // -+gamma FP I(gamma+1, x), or +-f(x) at gamma = 0
    double residual = 0.0;
};

/// d/dx I(gamma) = -gamma I(gamma+1) on the D+ side (the sign flips for D-).
IntegralRecurrence derivative_of_integral(const RealFunction& f, double gamma, double x, CutOrientation side,
                                          const QuadratureConfig& cfg = {});

/// The other by-parts route: (d/dx)^(n+1) of the frac(alpha) integral,
/// differentiated numerically. Real alpha1 >= 0 only.
DifferintResult liouville_differentiated(const RealFunction& f, const Order& alpha, double x, CutOrientation side,
                                         const QuadratureConfig& cfg = {});

}  // namespace fracdi
