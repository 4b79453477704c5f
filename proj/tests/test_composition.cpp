#include <cmath>

#include "doctest.h"
#include "fracdi/composition.hpp"
#include "fracdi/errors.hpp"
#include "gen.hpp"

using namespace fracdi;

namespace {
using C = CutOrientation;
const cplx I{0.0, 1.0};
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("J integral closed form at integer orders") {
    CHECK(std::abs(j_closed(0.0, 1.0, 0.0, 0.0) - 2.0 * kPi * I) < 1e-15);
    CHECK(std::abs(j_closed(0.0, 2.0 * I, 0.0, 0.0) - kPi) < 1e-15);
    CHECK_THROWS_AS(j_closed(1.0, 1.0, 0.3, 0.4), DomainError);
    CHECK_THROWS_AS(j_closed(0.0, 1.0, -1.0, 0.5), GammaPoleError);
}

TEST_CASE("J integral at integer orders matches residues") {
    // 1/((z2-z)(z-z1)) has residue 1/(z2-z1) at z1; the bisector keeps z1 on its left
    Gen g(31);
    for (int i = 0; i < 10; ++i) {
        const cplx z1{g.uniform(-2, 2), g.uniform(-2, 2)}, z2{g.uniform(-2, 2), g.uniform(-2, 2)};
        CHECK(rel(j_numeric(z1, z2, 0.0, 0.0), 2.0 * kPi * I / (z2 - z1)) < 1e-8);
    }
}

TEST_CASE("J integral numeric against closed form") {
    Gen g(32);
    for (int i = 0; i < 10; ++i) {
        const cplx z1{g.uniform(-2, 2), g.uniform(-2, 2)}, z2{g.uniform(-2, 2), g.uniform(-2, 2)};
        if (std::abs(z1 - z2) < 0.1) continue;
        for (auto [a, b] : {std::pair{0.3, 0.4}, std::pair{-0.4, 0.2}, std::pair{1.1, 0.6}}) {
            CHECK(rel(j_numeric(z1, z2, a, b), j_closed(z1, z2, a, b)) < 1e-6);
        }
    }
}

TEST_CASE("J integral vanishes on a line that does not separate the points") {
    const cplx z1{0.2, -0.3}, z2{1.1, 0.4};
    const IntegrationLine apart{z2 + 1.0, I * (z2 - z1)};
    CHECK(std::abs(j_numeric(z1, z2, 0.3, 0.4, {}, apart)) < 1e-8);
    CHECK(std::abs(j_numeric(z1, z2, 0.0, 0.0, {}, IntegrationLine{z1 - 3.0, cplx{0.3, 1.0}})) < 1e-8);
}

TEST_CASE("J integral changes sign with the orientation") {
    const cplx z1{0.0}, z2{cplx{1.0, 1.0}};
    const IntegrationLine fwd{0.5 * (z1 + z2), I * (z2 - z1)};
    const IntegrationLine bwd{fwd.point, -fwd.direction};
    const cplx f = j_numeric(z1, z2, 0.3, 0.4, {}, fwd);
    CHECK(rel(j_numeric(z1, z2, 0.3, 0.4, {}, bwd), -f) < 1e-10);
    CHECK(rel(j_closed(z2, z1, 0.0, 0.0), -j_closed(z1, z2, 0.0, 0.0)) < 1e-15);
}

TEST_CASE("J integral through an off-centre separating line") {
    const cplx z1{0.0}, z2{2.0};
    CHECK(rel(j_numeric(z1, z2, 0.3, 0.4, {}, IntegrationLine{cplx{0.4, 0.0}, cplx{0.2, 1.0}}), j_closed(z1, z2, 0.3, 0.4)) < 1e-6);
}

TEST_CASE("semigroup on exp and lorentzian") {
    for (double a : {0.25, 0.5, 0.75})
        for (double b : {0.25, 0.5, 0.75})
            for (double x : {-1.0, 0.0, 1.0}) {
                CHECK(verify_composition(exp_function(1.0), a, b, x, C::PlusAxis).residual <= 1e-4);
                CHECK(verify_composition(lorentzian(), a, b, x, C::PlusAxis).residual <= 1e-4);
            }
}

TEST_CASE("two half derivatives make a first derivative") {
    const CompositionReport r = verify_composition(lorentzian(), 0.5, 0.5, 1.0, C::PlusAxis);
    CHECK(std::abs(r.rhs - (-0.5)) < 1e-6);
    CHECK(std::abs(r.lhs - (-0.5)) < 1e-9);
    const CompositionReport e = verify_composition(exp_function(1.0), 0.3, 0.7, 0.0, C::PlusAxis);
    CHECK(std::abs(e.lhs - 1.0) < 1e-6);
    CHECK(std::abs(e.rhs - 1.0) < 1e-4);
}

TEST_CASE("composition with order zero is exact") {
    for (double b : {0.3, -0.4, 1.5}) CHECK(verify_composition(gaussian(), 0.0, b, 0.2, C::PlusAxis).residual <= 1e-10);
}

TEST_CASE("composition on the minus side and with mixed signs") {
    for (auto [a, b] : {std::pair{0.3, 0.4}, std::pair{0.5, -0.2}, std::pair{-0.3, -0.4}, std::pair{1.2, 0.3}})
        for (auto s : {C::PlusAxis, C::MinusAxis}) CHECK(verify_composition(lorentzian(), a, b, 0.7, s).residual <= 1e-4);
}

TEST_CASE("composition commutes") {
    const CompositionReport ab = verify_composition(gaussian(), 0.3, 0.6, 0.4, C::PlusAxis);
    const CompositionReport ba = verify_composition(gaussian(), 0.6, 0.3, 0.4, C::PlusAxis);
    CHECK(std::abs(ab.residual - ba.residual) <= std::max(ab.residual, ba.residual) + 1e-15);
    CHECK(rel(ab.rhs, ba.rhs) < 1e-6);
}

TEST_CASE("gamma reflection") {
    CHECK(gamma_reflection(0.5) < 1e-15);
    CHECK(gamma_reflection(0.3) < 1e-12);
    CHECK(gamma_reflection(cplx{0.4, 0.2}) < 1e-10);
    Gen g(50);
    for (int i = 0; i < 50; ++i) {
        const cplx z{g.uniform(-4, 4), g.uniform(-2, 2)};
        CHECK(gamma_reflection(z) < 1e-10);
    }
    CHECK_THROWS_AS(gamma_reflection(2.0), GammaPoleError);
}

TEST_CASE("beta integral") {
    CHECK(std::abs(beta_integral(0.5, 0.5) - kPi) < 1e-12);
    CHECK(std::abs(beta_integral(2.0, 3.0) - 1.0 / 12.0) < 1e-14);
    CHECK_THROWS_AS(beta_integral(0.0, 1.0), InputError);
}

TEST_CASE("beta identity suite") {
    const BetaSuiteReport r = beta_identity_suite(0.6, 0.6, 0.0, 1.0);
    for (double v : r.residual) CHECK(v <= 1e-8);
    CHECK(r.cosine_residual <= 1e-8);
    CHECK(r.sine_residual < 1e-15);
    Gen g(51);
    for (int i = 0; i < 10; ++i) {
        const double a = g.uniform(0.2, 0.95), b = g.uniform(1.05 - a, 0.95);
        const double x = g.uniform(-2, 2), z = g.uniform(-2, 2);
        if (std::abs(x - z) < 0.05) continue;
        CHECK(beta_identity_suite(a, b, x, z).max_residual() <= 1e-8);
    }
    CHECK_THROWS_AS(beta_identity_suite(1.2, 0.5, 0.0, 1.0), InputError);
    CHECK_THROWS_AS(beta_identity_suite(0.6, 0.6, 1.0, 1.0), InputError);
}

TEST_CASE("phase table first row") {
    const double a = 0.6, b = 0.7;
    const double d = 1.0;
    const cplx G = 2.0 * kPi * I * std::tgamma(a + b - 1.0) / (std::pow(d, a + b - 1.0) * std::tgamma(a) * std::tgamma(b));
    const PhaseTableCase lt = phase_table_check(HKind::UpperPlus, HKind::UpperPlus, a, b, 0.0, 1.0);
    CHECK(rel(lt.expected, std::exp(-I * kPi * (a + b)) * G) < 1e-14);
    CHECK(rel(lt.extrapolated, lt.expected) < 1e-4);
    const PhaseTableCase gt = phase_table_check(HKind::UpperPlus, HKind::UpperPlus, a, b, 2.0, 1.0);
    CHECK(rel(gt.expected, -G) < 1e-14);
    CHECK(rel(gt.extrapolated, gt.expected) < 1e-4);
}

TEST_CASE("phase table, all tabulated arrangements") {
    for (auto [p, q] : tabulated_combos())
        for (double x : {0.0, 2.0}) {
            const PhaseTableCase c = phase_table_check(p, q, 0.6, 0.7, x, 1.0);
            CHECK_FALSE(c.vanishing);
            CHECK(c.residual < 1e-3);
        }
}

TEST_CASE("phase table, vanishing arrangements") {
    for (auto [p, q] : vanishing_combos())
        for (double x : {0.0, 2.0}) {
            const PhaseTableCase c = phase_table_check(p, q, 0.6, 0.7, x, 1.0);
            CHECK(c.vanishing);
            CHECK(std::abs(c.extrapolated) < 1e-6);
        }
}

TEST_CASE("composition of negative order kernels") {
    CHECK(negative_order_composition(-1.0, -0.5, 1.0, 0.0, C::PlusAxis).residual <= 1e-6);
    CHECK(negative_order_composition(-1.0, -1.0, 1.0, 0.0, C::PlusAxis).residual <= 1e-8);
    CHECK(std::abs(negative_order_composition(-1.0, -1.0, 1.0, 0.0, C::PlusAxis).lhs - 1.0) < 1e-15);
    for (auto [a, b] : {std::pair{-0.3, -0.4}, std::pair{-1.5, -0.7}})
        for (auto s : {C::PlusAxis, C::MinusAxis}) {
            const double x = s == C::PlusAxis ? 1.7 : -1.7;
            CHECK(negative_order_composition(a, b, x, 0.2, s).residual <= 1e-6);
        }
    const KernelCompositionReport off = negative_order_composition(-0.5, -0.5, -1.0, 0.0, C::PlusAxis);
    CHECK(off.lhs == cplx{0.0});
    CHECK(off.rhs == cplx{0.0});
}
