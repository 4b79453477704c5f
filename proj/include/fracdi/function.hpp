#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracdi/special.hpp"

namespace fracdi {

/// k-th derivative of g at x by central differences with Ridders-Richardson
/// extrapolation, starting at step h0. `err` receives the extrapolation
/// error estimate.
cplx fd_derivative(const std::function<cplx(double)>& g, int k, double x, double h0 = 0.1, double* err = nullptr);

/// A function analytic near the real axis, evaluable at complex points.
/// Growth hints are exponents g with |f(x)| = O(|x|^g) toward -inf / +inf;
/// -inf marks faster-than-algebraic decay, +inf unknown or exponential growth.
struct RealFunction {
    std::string name;
    std::function<cplx(cplx)> value;
    /// Optional derivative oracle for 0 <= k <= max_deriv.
    std::function<cplx(int, cplx)> deriv;
    int max_deriv = 0;
    double growth_left = std::numeric_limits<double>::infinity();
    double growth_right = std::numeric_limits<double>::infinity();
    std::vector<cplx> poles;

    cplx operator()(cplx z) const { return value(z); }
    /// Falls back to finite differences (and sets *approximate) past the oracle.
    cplx derivative(int k, cplx z, bool* approximate = nullptr, double* err = nullptr) const;
    bool has_oracle(int k) const { return k == 0 || (deriv && k <= max_deriv); }
};

RealFunction exp_function(cplx c);
RealFunction lorentzian();
RealFunction gaussian();

/// g(z) = f(-z) with derivatives, poles and growth hints carried over.
RealFunction reflected(const RealFunction& f);
/// a f + b g.
RealFunction linear_combination(cplx a, const RealFunction& f, cplx b, const RealFunction& g);
/// z -> f(z0 + nu z); used to move functions onto tilted lines.
RealFunction shifted(const RealFunction& f, cplx z0, cplx nu = 1.0);

/// Catalog lookup: "exp(c)", "exp", "lorentzian", "gaussian", "expr:<text>".
/// Rational functions are built from a PoleForm instead.
RealFunction make_catalog_function(const std::string& spec);

}  // namespace fracdi
