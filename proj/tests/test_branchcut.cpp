#include <cmath>

#include "doctest.h"
#include "fracdi/branchcut.hpp"
#include "fracdi/errors.hpp"
#include "fracdi/poleform.hpp"
#include "gen.hpp"

using namespace fracdi;

namespace {
constexpr double kTwoPi = 2.0 * kPi;
const cplx I{0.0, 1.0};
}  // namespace

TEST_CASE("principal power on the positive axis from above has phase zero") {
    CHECK(std::abs(principal_power(1.0, 0.5, CutOrientation::MinusAxis) - 1.0) < 1e-15);
    CHECK(std::abs(principal_power(1.0, 0.5, CutOrientation::PlusAxis) - 1.0) < 1e-15);
}

TEST_CASE("principal power phase table on the real axis") {
    const double g = 0.3;
    auto ph = [&](double w, CutOrientation c, Approach a) { return principal_power(w, g, c, a) / std::pow(std::abs(w), g); };
    auto e = [](double t) { return std::exp(cplx{0.0, t}); };
    using C = CutOrientation;
    using A = Approach;
    CHECK(std::abs(ph(-2.0, C::PlusAxis, A::FromAbove) - e(kPi * g)) < 1e-15);
    CHECK(std::abs(ph(-2.0, C::MinusAxis, A::FromAbove) - e(kPi * g)) < 1e-15);
    CHECK(std::abs(ph(-2.0, C::PlusAxis, A::FromBelow) - e(kPi * g)) < 1e-15);
    CHECK(std::abs(ph(-2.0, C::MinusAxis, A::FromBelow) - e(-kPi * g)) < 1e-15);
    CHECK(std::abs(ph(2.0, C::PlusAxis, A::FromBelow) - e(2.0 * kPi * g)) < 1e-15);
    CHECK(std::abs(ph(2.0, C::MinusAxis, A::FromBelow) - 1.0) < 1e-15);
    CHECK(std::abs(principal_power(-1.0, 0.5, C::MinusAxis, A::FromBelow) - cplx{0.0, -1.0}) < 1e-15);
}

TEST_CASE("principal power at the branch point") { CHECK_THROWS_AS(principal_power(0.0, 0.5, CutOrientation::PlusAxis), DomainError); }

TEST_CASE("integer exponents are cut-free") {
    Gen g(3);
    for (int k = -3; k <= 3; ++k)
        for (int i = 0; i < 100; ++i) {
            const cplx w{g.uniform(-3, 3), g.uniform(-3, 3)};
            const cplx ref = std::pow(w, k);
            for (auto c : {CutOrientation::PlusAxis, CutOrientation::MinusAxis})
                for (auto a : {Approach::FromAbove, Approach::FromBelow})
                    CHECK(std::abs(principal_power(w, double(k), c, a) - ref) <= 1e-13 * std::abs(ref));
        }
    CHECK(principal_power(-1.0, 2.0, CutOrientation::PlusAxis, Approach::FromBelow) == cplx{1.0});
}

TEST_CASE("principal power is continuous along circles that avoid the cut") {
    for (auto c : {CutOrientation::PlusAxis, CutOrientation::MinusAxis}) {
        const double start = c == CutOrientation::PlusAxis ? 1e-3 : -kPi + 1e-3;
        const double stop = start + kTwoPi - 2e-3;
        cplx prev = principal_power(std::polar(1.5, start), cplx{0.7, 0.2}, c);
        for (int j = 1; j <= 4000; ++j) {
            const double t = start + (stop - start) * j / 4000.0;
            const cplx v = principal_power(std::polar(1.5, t), cplx{0.7, 0.2}, c);
            CHECK(std::abs(v - prev) < 5e-3);
            prev = v;
        }
    }
}

TEST_CASE("cut_arg windows") {
    CHECK(cut_arg(cplx{1.0, 0.0}, CutOrientation::PlusAxis, Approach::FromAbove) == 0.0);
    CHECK(cut_arg(cplx{1.0, 0.0}, CutOrientation::PlusAxis, Approach::FromBelow) == doctest::Approx(kTwoPi));
    CHECK(cut_arg(cplx{-1.0, 0.0}, CutOrientation::MinusAxis, Approach::FromAbove) == doctest::Approx(kPi));
    CHECK(cut_arg(cplx{-1.0, 0.0}, CutOrientation::MinusAxis, Approach::FromBelow) == doctest::Approx(-kPi));
    CHECK(cut_arg(-I, CutOrientation::PlusAxis) == doctest::Approx(1.5 * kPi));
    CHECK(cut_arg(-I, CutOrientation::MinusAxis) == doctest::Approx(-0.5 * kPi));
}

TEST_CASE("rule 1: pole above a cut along the positive axis") {
    // the arc from the reference direction may not pass the cut, so the
    // downward vector z0 - zk is taken at -pi/2
    CHECK(rule1_phase(0.0, I, 0.0) == doctest::Approx(-0.5 * kPi));
}

TEST_CASE("rule 1: pole on the reference ray has zero phase") {
    CHECK(rule1_phase(0.0, -1.0, 0.0) == 0.0);
    CHECK(rule1_phase(cplx{2.0, 1.0}, cplx{1.0, 1.0}, 0.0) == 0.0);
}

TEST_CASE("rule 1: crossing the cut costs 2 pi") {
    const double above = rule1_phase(0.0, cplx{1.0, 1e-6}, 0.0);
    const double below = rule1_phase(0.0, cplx{1.0, -1e-6}, 0.0);
    CHECK(below - above == doctest::Approx(kTwoPi).epsilon(1e-5));
    CHECK_THROWS_AS(rule1_phase(0.0, 1.0, 0.0), GeometryError);
    CHECK_THROWS_AS(rule1_phase(0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("rule 2 with a straight cut reproduces rule 1") {
    Gen g(17);
    for (int i = 0; i < 300; ++i) {
        const cplx z0{g.uniform(-2, 2), g.uniform(-2, 2)};
        const double theta = g.uniform(-kPi, kPi);
        std::vector<cplx> poles;
        for (int k = 0; k < 3; ++k) poles.push_back(z0 + std::polar(g.uniform(0.2, 3.0), g.uniform(-kPi, kPi)));
        const CutCurve cut = CutCurve::straight(z0, theta);
        bool near_cut = false;
        for (cplx p : poles) near_cut |= cut.distance(p) < 1e-6;
        if (near_cut || std::abs(std::remainder(theta - kPi, kTwoPi)) < 1e-6) continue;
        const BranchAssignment b = rule2_windings(cut, z0 - 0.05, poles);
        for (std::size_t k = 0; k < poles.size(); ++k) CHECK(b.effective(k) == doctest::Approx(rule1_phase(z0, poles[k], theta)));
    }
}

TEST_CASE("rule 2: a straight cut away from the arcs gives no windings") {
    const CutCurve cut = CutCurve::straight(0.0, kPi / 2);
    const BranchAssignment b = rule2_windings(cut, -0.5, {cplx{0.0, -1.0}, cplx{1.0, -2.0}});
    CHECK(b.m == std::vector<int>{0, 0});
}

TEST_CASE("rule 2: a cut looping between two poles separates their windings by one") {
    CutCurve cut;
    cut.branch_point = 0.0;
    cut.vertices = {0.0, 0.5, cplx{0.5, 2.0}, cplx{-0.5, 2.0}, cplx{-0.5, 0.5}};
    cut.terminal_angle = kPi;
    const BranchAssignment b = rule2_windings(cut, -1e-3, {I, -I});
    CHECK(b.m[0] - b.m[1] == -1);
    CHECK(b.m[1] == 0);
}

TEST_CASE("rule 2 rejects poles on the cut and self-intersecting cuts") {
    CHECK_THROWS_AS(rule2_windings(CutCurve::straight(0.0, 0.0), -1.0, {cplx{2.0}}), GeometryError);
    CutCurve bad;
    bad.branch_point = 0.0;
    bad.vertices = {0.0, 2.0, cplx{2.0, 1.0}, cplx{1.0, -1.0}};
    bad.terminal_angle = -kPi / 2;
    CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("moving the reference point shifts every winding by the same amount") {
    CutCurve cut;
    cut.branch_point = 0.0;
    cut.vertices = {0.0, cplx{0.0, -1.5}, cplx{-3.0, -1.5}, cplx{-3.0, 1.5}, cplx{1.0, 1.5}};
    cut.terminal_angle = 0.0;
    const std::vector<cplx> poles{cplx{0.5, 0.5}, cplx{0.5, -0.5}};
    const BranchAssignment nearb = rule2_windings(cut, -0.1, poles);
    const BranchAssignment farb = rule2_windings(cut, -3.5, poles);
    const int shift = farb.m[0] - nearb.m[0];
    CHECK(shift != 0);
    CHECK(farb.m[1] - nearb.m[1] == shift);

    // pole-form values agree once the common shift is moved into the unit phase
    PoleForm h{{{0.7, poles[0], 0}, {cplx{0.2, 0.3}, poles[1], 1}}};
    const Order a(0.37);
    const cplx v_near = closed_frac_deriv(h, a, 0.0, BranchChoice::along(h, cut, -0.1));
    const cplx v_far = closed_frac_deriv(h, a, 0.0, BranchChoice::along(h, cut, -3.5), UnitPhase{shift});
    CHECK(std::abs(v_near - v_far) <= 1e-12 * std::abs(v_near));
}
