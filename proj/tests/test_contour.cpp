#include <cmath>

#include "doctest.h"
#include "fracdi/contour.hpp"
#include "fracdi/errors.hpp"
#include "gen.hpp"

using namespace fracdi;

namespace {
using C = CutOrientation;
const cplx I{0.0, 1.0};
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// in from -inf, up and over the pole at i, back down through the origin and
// out toward -i inf
CurvePsi hook() { return CurvePsi{{cplx{-0.5, 0.5}, cplx{-0.5, 2.0}, cplx{0.5, 2.0}, 0.5, -1.0}, kPi, -kPi / 2}; }

CurvePsi bent() { return CurvePsi{{-2.0, cplx{-1.0, 0.7}, -0.3, 0.3, cplx{1.0, -0.5}, 2.0}, kPi, 0.0}; }
}  // namespace

TEST_CASE("side labels follow the endpoint directions") {
    const SideLabels r = psi_side_labels(CurvePsi::real_axis());
    CHECK(r.plus_is_theta1);
    CHECK(r.plus_end == doctest::Approx(kPi));
    const SideLabels v = psi_side_labels(CurvePsi{{-I, I}, -kPi / 2, kPi / 2});
    CHECK(v.plus_is_theta1);
    CHECK_THROWS_AS(psi_side_labels(CurvePsi{{0.0, 1.0}, 0.0, 0.0}), GeometryError);
}

TEST_CASE("cut along the curve") {
    const CutCurve c = cut_along(hook(), 0.0, PsiSide::PsiPlus);
    REQUIRE(c.vertices.size() == 5);
    CHECK(c.vertices[1] == cplx{0.5});
    CHECK(c.vertices[4] == cplx{-0.5, 0.5});
    CHECK(c.terminal_angle == doctest::Approx(kPi));
    const CutCurve m = cut_along(hook(), 0.0, PsiSide::PsiMinus);
    CHECK(m.vertices.size() == 2);
    CHECK(m.vertices[1] == cplx{-1.0});
    CHECK_THROWS_AS(cut_along(hook(), cplx{0.5, 2.0}, PsiSide::PsiPlus), GeometryError);
    CHECK_THROWS_AS(cut_along(hook(), cplx{3.0, 3.0}, PsiSide::PsiPlus), GeometryError);
}

TEST_CASE("real axis curve reproduces the real-line operator") {
    for (double a : {0.25, 0.5, 0.75, 1.5, -0.5, 2.0, -1.0})
        for (double x : {-1.0, 0.0, 0.3, 2.5}) {
            const cplx p = frac_differint_curve(lorentzian(), a, x, CurvePsi::real_axis(), PsiSide::PsiPlus).value;
            const cplx m = frac_differint_curve(lorentzian(), a, x, CurvePsi::real_axis(), PsiSide::PsiMinus).value;
            CHECK(rel(p, frac_differint(lorentzian(), a, x, C::PlusAxis).value) < 1e-5);
            CHECK(rel(m, frac_differint(lorentzian(), a, x, C::MinusAxis).value) < 1e-5);
        }
}

TEST_CASE("entire functions do not feel the shape of the curve") {
    for (double a : {0.3, 0.5, 1.5, -0.5})
        for (auto s : {PsiSide::PsiPlus, PsiSide::PsiMinus}) {
            const cplx v = frac_differint_curve(gaussian(), a, 0.0, bent(), s).value;
            const cplx r = frac_differint(gaussian(), a, 0.0, s == PsiSide::PsiPlus ? C::PlusAxis : C::MinusAxis).value;
            CHECK(rel(v, r) < 1e-5);
        }
}

TEST_CASE("tilted straight lines agree up to the unit phase") {
    // e^z along a line through the origin: the cut toward the decaying end
    const RealFunction f = exp_function(1.0);
    for (double a : {0.3, 0.5, 1.2}) {
        const CurvePsi line = CurvePsi::line(0.0, std::polar(1.0, 0.4));
        const cplx v = frac_differint_curve(f, a, 0.0, line, PsiSide::PsiPlus).value;
        const cplx ref = frac_differint(f, a, 0.0, C::PlusAxis).value;
        // D^a e^z = e^z up to the unit phase, which enters as exp(2 pi i a k)
        double best = 1e300;
        for (int k = -3; k <= 3; ++k) best = std::min(best, rel(v, std::exp(cplx{0.0, 2.0 * kPi * a * k}) * ref));
        CHECK(best < 1e-6);
    }
}

TEST_CASE("hook curve against the pole form with induced windings") {
    const PoleForm h = PoleForm::lorentzian();
    for (double a : {0.3, 0.5, 1.5, -0.5})
        for (auto s : {PsiSide::PsiPlus, PsiSide::PsiMinus})
            for (cplx z0 : {cplx{0.0}, cplx{-0.5, 1.0}}) {
                const cplx v = frac_differint_curve(lorentzian(), a, z0, hook(), s).value;
                const cplx c = closed_frac_deriv(h, a, z0, induced_branch(h, hook(), z0, s));
                CHECK(rel(v, c) < 1e-6);
            }
    const BranchChoice b = induced_branch(h, hook(), 0.0, PsiSide::PsiPlus);
    CHECK(b.windings.m == std::vector<int>{-1, 0});
}

TEST_CASE("hook changes the first primitive by the residue step") {
    const cplx hooked = nfold_primitive_curve(lorentzian(), 1, 0.0, hook(), PsiSide::PsiPlus);
    const cplx straight = nfold_primitive_curve(lorentzian(), 1, 0.0, CurvePsi::real_axis(), PsiSide::PsiPlus);
    const PoleForm h = PoleForm::lorentzian();
    const cplx step = primitive_difference(1, h.terms[0], 0.0, -1) + primitive_difference(1, h.terms[1], 0.0, 0);
    CHECK(std::abs(hooked - straight - step) < 1e-9);
    CHECK(std::abs(straight - kPi / 2) < 1e-9);
}

TEST_CASE("integer orders are curve independent") {
    for (int n : {1, 2})
        for (auto s : {PsiSide::PsiPlus, PsiSide::PsiMinus}) {
            const cplx v = frac_differint_curve(lorentzian(), double(n), 0.0, hook(), s).value;
            const cplx ref = lorentzian().derivative(n, 0.0);
            CHECK(std::abs(v - ref) < 1e-9 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("remainder integral closes the pole sum") {
    // G is the half-plane below Im z = 1/2; only the pole at -i lies inside
    const PoleForm h = PoleForm::lorentzian();
    const PoleForm lower{{h.terms[1]}};
    const CurvePsi c0{{cplx{-1.0, 0.5}, cplx{1.0, 0.5}}, kPi, 0.0};
    for (double a : {0.3, 0.5, 1.5, -0.5})
        for (double x : {0.0, 0.7})
            for (double theta : {kPi, 0.0}) {
                const CutCurve cut = CutCurve::straight(x, theta);
                const cplx unit = UnitPhase{0}.value(a);
                const cplx rem = remainder_integral(lorentzian(), a, x, c0, cut);
                const cplx poles = closed_frac_deriv(lower, a, x, BranchChoice::straight(lower, x, theta));
                const cplx ref = frac_differint(lorentzian(), a, x, theta == 0.0 ? C::MinusAxis : C::PlusAxis).value;
                CHECK(rel(poles + unit * rem, ref) < 1e-8);
                CHECK(rel(remainder_integral(lorentzian(), a, x, c0.reversed(), cut), -rem) < 1e-12);
            }
}

TEST_CASE("remainder is zero when the boundary leaves no pole outside") {
    const CurvePsi high{{cplx{-1.0, 2.0}, cplx{1.0, 2.0}}, kPi, 0.0};
    CHECK(std::abs(remainder_integral(lorentzian(), 0.5, 0.3, high, CutCurve::straight(0.3, kPi))) < 1e-10);
}

TEST_CASE("remainder rejects a boundary that crosses the cut") {
    const CurvePsi crossing{{cplx{-1.0, -1.0}, cplx{-1.0, 1.0}}, -kPi / 2, kPi / 2};
    CHECK_THROWS_AS(remainder_integral(lorentzian(), 0.5, 0.0, crossing, CutCurve::straight(0.0, kPi)), GeometryError);
}

TEST_CASE("curve validation") {
    CHECK_THROWS_AS((CurvePsi{{0.0, 2.0, cplx{2.0, 1.0}, cplx{1.0, -1.0}}, kPi, kPi / 2}.validate()), InputError);
    CHECK_THROWS_AS((CurvePsi{{0.0, 0.0}, kPi, 0.0}.validate()), InputError);
    CHECK(rel(CurvePsi::real_axis().tangent_at(0.2), 1.0) < 1e-15);
    CHECK_THROWS_AS(bent().tangent_at(cplx{-1.0, 0.7}), GeometryError);
}
