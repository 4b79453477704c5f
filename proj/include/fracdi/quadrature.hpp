#pragma once

#include <functional>
#include <vector>

#include "fracdi/special.hpp"

namespace fracdi {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    double truncation_radius = 0.0;  // 0: adaptive
    int max_subdivisions = 4000;
    int endpoint_nodes = 32;
};

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

struct QuadResult {
    cplx value{0.0};
    double err = 0.0;
};

using RealToComplex = std::function<cplx(double)>;

/// n-point Gauss-Legendre on [-1,1]. Rules are cached.
const Rule& gauss_legendre(int n);

/// n-point Gauss-Jacobi on [-1,1] for the weight (1-x)^a (1+x)^b, a,b > -1.
/// Golub-Welsch on the symmetric Jacobi matrix.
Rule gauss_jacobi(int n, double a, double b);

/// Adaptive bisection on [a,b] comparing a 20-point rule with its two halves.
QuadResult integrate_adaptive(const RealToComplex& f, double a, double b, const QuadratureConfig& cfg);

/// Double-exponential rule on [a,b]. The integrand receives (t, t-a, b-t) with the
/// endpoint distances computed without cancellation.
using EndpointIntegrand = std::function<cplx(double t, double da, double db)>;
QuadResult tanh_sinh(const EndpointIntegrand& f, double a, double b, double tol, int max_level = 12);

/// int_0^T t^p phi(t) dt for Re p > -1 and phi smooth on [0,T].
QuadResult singular_endpoint_integral(const RealToComplex& phi, cplx p, double T, const QuadratureConfig& cfg);

/// int_0^inf t^p phi(t) dt. `scale` marks where phi has structure (panels are
/// doubled beyond it until their contribution is negligible).
QuadResult ray_integral(const RealToComplex& phi, cplx p, double scale, const QuadratureConfig& cfg);

}  // namespace fracdi
