#include <cmath>

#include "doctest.h"
#include "fracdi/errors.hpp"
#include "fracdi/realline.hpp"
#include "gen.hpp"

using namespace fracdi;

namespace {
using C = CutOrientation;
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// (1+x^2)^(-(a+1)/2) Gamma(a+1) sin((atan x + pi/2)(a+1)), the D+ family member
double lorentz_plus(double a, double x) {
    return std::tgamma(a + 1.0) * std::pow(1.0 + x * x, -(a + 1.0) / 2.0) * std::sin((std::atan(x) + kPi / 2) * (a + 1.0));
}
}  // namespace

TEST_CASE("exp eigenfunction") {
    for (double c : {0.5, 1.0, 2.0})
        for (cplx a : {cplx{0.25}, cplx{0.5}, cplx{1.5}, cplx{0.5, 0.5}})
            for (double x : {-1.0, 0.0, 1.0}) {
                const cplx ref = std::pow(cplx{c}, a) * std::exp(c * x);
                CHECK(rel(frac_differint(exp_function(c), Order(a), x, C::PlusAxis).value, ref) < 1e-6);
            }
    CHECK(rel(frac_differint(exp_function(1.0), 0.5, 0.0, C::PlusAxis).value, 1.0) < 1e-6);
}

TEST_CASE("order zero is the identity") {
    const RealFunction f = lorentzian();
    for (double x : {-2.0, 0.0, 0.7})
        for (auto s : {C::PlusAxis, C::MinusAxis}) CHECK(frac_differint(f, 0.0, x, s).value == f.value(x));
}

TEST_CASE("lorentzian half derivative at the origin") {
    const double ref = 0.88622692545275801365 * std::sin(0.75 * kPi);
    CHECK(std::abs(frac_differint(lorentzian(), 0.5, 0.0, C::PlusAxis).value - ref) < 1e-8);
}

TEST_CASE("lorentzian against the closed family over a grid") {
    for (double a : {0.25, 0.5, 0.75, 1.5, -0.5, -0.25})
        for (int j = 0; j <= 20; ++j) {
            const double x = -5.0 + 0.5 * j;
            CHECK(rel(frac_differint(lorentzian(), a, x, C::PlusAxis).value, lorentz_plus(a, x)) < 1e-6);
        }
}

TEST_CASE("minus side is the reflection of the plus side") {
    for (double a : {0.3, 0.5, 1.5, -0.4})
        for (double x : {-1.2, 0.4}) {
            const cplx m = frac_differint(gaussian(), a, x, C::MinusAxis).value;
            const cplx p = frac_differint(gaussian(), a, -x, C::PlusAxis).value;
            CHECK(rel(m, std::exp(cplx{0.0, kPi * a}) * p) < 1e-8);
        }
}

TEST_CASE("gaussian against independent quadrature") {
    // mpmath quad of t^-1/2 f'(x-t) / Gamma(1/2)
    CHECK(rel(frac_differint(gaussian(), 0.5, 0.0, C::PlusAxis).value, 0.69136733903629335053) < 1e-7);
    CHECK(rel(frac_differint(gaussian(), 0.5, 1.0, C::PlusAxis).value, -0.37249557626978907484) < 1e-7);
    CHECK(rel(frac_differint(gaussian(), 0.5, -1.0, C::PlusAxis).value, 0.54493407583904813823) < 1e-7);
    CHECK(rel(frac_differint(lorentzian(), -0.5, 0.0, C::PlusAxis).value, 1.2533141373155002432) < 1e-8);
    CHECK(rel(frac_differint(lorentzian(), -0.5, 1.0, C::PlusAxis).value, 1.3769963318531534337) < 1e-8);
}

TEST_CASE("integer orders reproduce derivatives") {
    for (double x : {-1.5, 0.3, 2.0}) {
        const double L1 = -2 * x / std::pow(1 + x * x, 2);
        const double L2 = (6 * x * x - 2) / std::pow(1 + x * x, 3);
        const double G1 = -2 * x * std::exp(-x * x);
        const double G2 = (4 * x * x - 2) * std::exp(-x * x);
        for (auto s : {C::PlusAxis, C::MinusAxis}) {
            CHECK(rel(frac_differint(lorentzian(), 1.0, x, s).value, L1) < 1e-7);
            CHECK(rel(frac_differint(lorentzian(), 2.0, x, s).value, L2) < 1e-7);
            CHECK(rel(frac_differint(gaussian(), 1.0, x, s).value, G1) < 1e-7);
            CHECK(rel(frac_differint(gaussian(), 2.0, x, s).value, G2) < 1e-7);
        }
    }
    // no oracle: finite differences
    RealFunction bare;
    bare.name = "bare";
    bare.value = [](cplx z) { return std::exp(-z * z); };
    const DifferintResult r = frac_differint(bare, 2.0, 0.5, C::PlusAxis);
    CHECK(r.approximate_derivatives);
    CHECK(rel(r.value, (4 * 0.25 - 2) * std::exp(-0.25)) < 1e-7);
}

TEST_CASE("n-fold integrals") {
    CHECK(rel(nfold_integral(exp_function(1.0), 1, 0.0, C::PlusAxis).value, 1.0) < 1e-9);
    CHECK(rel(nfold_integral(exp_function(2.0), 2, 0.0, C::PlusAxis).value, 0.25) < 1e-9);
    CHECK(rel(nfold_integral(lorentzian(), 1, 0.0, C::PlusAxis).value, kPi / 2) < 1e-9);
    for (double x : {-3.0, 0.5, 4.0})
        CHECK(rel(frac_differint(lorentzian(), -1.0, x, C::PlusAxis).value, std::atan(x) + kPi / 2) < 1e-7);
    // mpmath: int_0^inf t exp(-(0.5-t)^2) dt
    CHECK(rel(nfold_integral(gaussian(), 2, 0.5, C::PlusAxis).value, 1.0631543574684776653) < 1e-9);
    CHECK(frac_differint(gaussian(), -2.0, 0.0, C::MinusAxis).method == Method::NFoldIntegral);
    // z^2/(1+z^2) does not vanish at infinity: the double integral diverges
    CHECK_THROWS_AS(frac_differint(lorentzian(), -2.0, 0.0, C::MinusAxis), ConvergenceError);
}

TEST_CASE("orders below minus one") {
    // the exp rule keeps holding: D^-1.5 e^x = e^x
    CHECK(rel(frac_differint(exp_function(1.0), -1.5, 0.3, C::PlusAxis).value, std::exp(0.3)) < 1e-7);
    CHECK(rel(frac_differint(exp_function(2.0), -2.5, 0.0, C::PlusAxis).value, std::pow(2.0, -2.5)) < 1e-7);
}

TEST_CASE("method dispatch") {
    CHECK(frac_differint(lorentzian(), 2.0, 0.0, C::PlusAxis).method == Method::IntegerDerivative);
    CHECK(frac_differint(lorentzian(), 1.5, 0.0, C::PlusAxis).method == Method::LiouvilleByParts);
    CHECK(frac_differint(lorentzian(), -0.5, 0.0, C::PlusAxis).method == Method::DirectConvergent);
    CHECK(frac_differint(lorentzian(), 0.5, 0.0, C::PlusAxis).est_error >= 0.0);
}

TEST_CASE("growth check") {
    CHECK(growth_check(exp_function(1.0), 0.5, C::PlusAxis).pass);
    CHECK_FALSE(growth_check(exp_function(1.0), 0.5, C::MinusAxis).pass);
    CHECK(growth_check(lorentzian(), 1.5, C::PlusAxis).pass);
    CHECK(growth_check(lorentzian(), 1.5, C::MinusAxis).pass);
    CHECK_THROWS_AS(frac_differint(exp_function(1.0), 0.5, 0.0, C::MinusAxis), ConvergenceError);
}

TEST_CASE("poles on the integration ray") {
    const RealFunction f{"pole", [](cplx z) { return 1.0 / (z + 1.0); }, {}, 0, -1.0, -1.0, {cplx{-1.0}}};
    try {
        frac_differint(f, 0.5, 0.0, C::PlusAxis);
        FAIL("expected a pole error");
    } catch (const PoleAtEvaluationPoint& e) {
        CHECK(e.where() == -1.0);
    }
}

TEST_CASE("linearity over the catalog") {
    Gen g(21);
    const RealFunction fs[] = {lorentzian(), gaussian(), exp_function(1.0)};
    for (int i = 0; i < 20; ++i) {
        const RealFunction& f = fs[g.integer(0, 2)];
        const RealFunction& h = fs[g.integer(0, 2)];
        const cplx a{g.uniform(-2, 2), g.uniform(-1, 1)}, b{g.uniform(-2, 2), 0.0};
        const double alpha = g.uniform(0.1, 1.9), x = g.uniform(-2, 2);
        const RealFunction mix = linear_combination(a, f, b, h);
        const cplx lhs = frac_differint(mix, alpha, x, C::PlusAxis).value;
        const cplx rhs = a * frac_differint(f, alpha, x, C::PlusAxis).value + b * frac_differint(h, alpha, x, C::PlusAxis).value;
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max({std::abs(lhs), std::abs(rhs), 1.0}));
    }
}

TEST_CASE("eps-regularized form converges") {
    const double ref = lorentz_plus(0.5, 0.0);
    double prev = 1e300;
    for (double eps : {0.1, 0.05, 0.025}) {
        const double err = std::abs(eps_regularized(lorentzian(), 0.5, 0.0, C::PlusAxis, eps) - ref);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 0.05);
    // for e^x the leading error is eps^(1-a) / ((1-a) Gamma(-a))
    for (double eps : {1e-4, 1e-6}) {
        const double predicted = std::pow(eps, 0.5) / (0.5 * std::tgamma(-0.5));
        const cplx err = eps_regularized(exp_function(1.0), 0.5, 0.0, C::PlusAxis, eps) - 1.0;
        CHECK(std::abs(err - predicted) < 0.05 * std::abs(predicted));
    }
    // negative orders: the endpoint term fades with eps
    CHECK(rel(eps_regularized(lorentzian(), -0.5, 0.0, C::PlusAxis, 1e-6), lorentz_plus(-0.5, 0.0)) < 1e-2);
}

TEST_CASE("integral recurrence") {
    CHECK(derivative_of_integral(exp_function(1.0), 0.5, 0.0, C::PlusAxis).residual < 1e-5);
    CHECK(derivative_of_integral(lorentzian(), 0.3, 1.0, C::PlusAxis).residual < 1e-5);
    CHECK(derivative_of_integral(lorentzian(), 0.3, 1.0, C::MinusAxis).residual < 1e-5);
    const IntegralRecurrence z = derivative_of_integral(gaussian(), 0.0, 0.4, C::PlusAxis);
    CHECK(z.residual < 1e-7);
    CHECK(std::abs(z.rhs - std::exp(-0.16)) < 1e-15);
}

TEST_CASE("by-parts routes agree") {
    for (double a : {0.3, 0.5, 1.4})
        for (double x : {-0.5, 0.8}) {
            const cplx direct = frac_differint(lorentzian(), a, x, C::PlusAxis).value;
            CHECK(rel(liouville_differentiated(lorentzian(), a, x, C::PlusAxis).value, direct) < 1e-6);
            const cplx dg = frac_differint(gaussian(), a, x, C::MinusAxis).value;
            CHECK(rel(liouville_differentiated(gaussian(), a, x, C::MinusAxis).value, dg) < 1e-6);
        }
}
