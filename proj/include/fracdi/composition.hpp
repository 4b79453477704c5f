#pragma once

#include <array>
#include <optional>
#include <string>

#include "fracdi/branchcut.hpp"
#include "fracdi/function.hpp"
#include "fracdi/order.hpp"
#include "fracdi/quadrature.hpp"

namespace fracdi {

struct CompositionReport {
    Order alpha, beta;
    cplx lhs{0.0}, rhs{0.0};
    double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |f(x)|)
    std::string notes;
};

/// 2 i pi Gamma(a+b+1) / ((z2-z1)^(a+b+1) Gamma(a+1) Gamma(b+1)), principal power.
cplx j_closed(cplx z1, cplx z2, const Order& alpha, const Order& beta);

struct IntegrationLine {
    cplx point;
    cplx direction;
};

/// int_K dz / ((z2-z)^(a+1) (z-z1)^(b+1)) along K. Each power takes the
/// branch whose cut points away from K. Default K is the perpendicular
/// bisector directed i (z2 - z1).
cplx j_numeric(cplx z1, cplx z2, const Order& alpha, const Order& beta, const QuadratureConfig& cfg = {},
               std::optional<IntegrationLine> line = std::nullopt);

/// D^(a+b) f against D^a applied to x -> D^b f(x), the inner operator being
/// evaluated wherever the outer quadrature asks for it.
CompositionReport verify_composition(const RealFunction& f, const Order& alpha, const Order& beta, double x,
                                     CutOrientation side, const QuadratureConfig& cfg = {});

/// |Gamma(g) Gamma(1-g) sin(pi g) - pi|
double gamma_reflection(cplx g);

/// int_0^1 x^(l-1) (1-x)^(m-1) dx by double-exponential quadrature.
double beta_integral(double lambda, double mu);

struct BetaSuiteReport {
    std::array<double, 3> quadrature{};  // I1, I2, I3 by quadrature
    std::array<double, 3> closed{};      // Gamma-ratio forms over d^(a+b-1)
    std::array<double, 3> residual{};    // relative
    double cosine_residual = 0.0;
    double sine_residual = 0.0;
    double max_residual() const;
};

/// Requires a < 1, b < 1, a + b > 1, x != z.
BetaSuiteReport beta_identity_suite(double a, double b, double x, double z);

enum class HKind { UpperPlus, UpperMinus, LowerPlus, LowerMinus };

/// h^+- = 1/(w + i tau)^g and h_+- = -1/(w - i tau)^g with cuts (0, +-inf).
cplx h_function(HKind kind, double g, double w, double tau);

struct PhaseTableCase {
    HKind first, second;
    bool x_less_than_z;
    cplx expected{0.0};  // tabulated limit; 0 for the vanishing arrangements
    cplx at_tau1{0.0}, at_tau2{0.0}, extrapolated{0.0};
    double residual = 0.0;  // relative to |G|
    bool vanishing = false;
};

/// int h(a, x-y) h(b, y-z) dy at tau = 1e-2 and 1e-3, extrapolated linearly to 0.
PhaseTableCase phase_table_check(HKind first, HKind second, double a, double b, double x, double z,
                                 const QuadratureConfig& cfg = {});

/// The eight tabulated arrangements (upper/lower placement equal).
std::array<std::pair<HKind, HKind>, 8> tabulated_combos();
/// The eight vanishing arrangements (one factor above, one below).
std::array<std::pair<HKind, HKind>, 8> vanishing_combos();
const char* to_string(HKind k);

struct KernelCompositionReport {
    cplx lhs{0.0}, rhs{0.0};
    double residual = 0.0;
};

/// D^(a+b)(x-z) against int D^a(x-y) D^b(y-z) dy with the limiting kernels,
/// alpha, beta < 0.
KernelCompositionReport negative_order_composition(const Order& alpha, const Order& beta, double x, double z,
                                                   CutOrientation side);

}  // namespace fracdi
