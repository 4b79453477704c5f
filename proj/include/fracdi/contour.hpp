#pragma once

#include <vector>

#include "fracdi/branchcut.hpp"
#include "fracdi/function.hpp"
#include "fracdi/order.hpp"
#include "fracdi/poleform.hpp"
#include "fracdi/quadrature.hpp"
#include "fracdi/realline.hpp"

namespace fracdi {

/// Polyline curve: a ray arriving from exp(i theta1) inf at vertices.front(),
/// the segments, and a ray leaving vertices.back() toward exp(i theta2) inf.
struct CurvePsi {
    std::vector<cplx> vertices;
    double theta1 = kPi;
    double theta2 = 0.0;

    static CurvePsi real_axis() { return CurvePsi{{cplx{-1.0}, cplx{1.0}}, kPi, 0.0}; }
    static CurvePsi line(cplx point, cplx direction);
    /// Same geometric curve traversed backwards.
    CurvePsi reversed() const;
    void validate() const;
    /// Unit tangent of the piece containing z (throws GeometryError at vertices
    /// or off the curve).
    cplx tangent_at(cplx z) const;
};

enum class PsiSide { PsiPlus, PsiMinus };

struct SideLabels {
    double plus_end;   // endpoint angle reached by psi+
    double minus_end;
    bool plus_is_theta1;
};

/// psi+ ends at theta1 when cos theta1 < cos theta2 (ties: sin theta1 < sin theta2).
SideLabels psi_side_labels(const CurvePsi& psi);

/// Cut from z0 along psi toward the endpoint of the requested side.
CutCurve cut_along(const CurvePsi& psi, cplx z0, PsiSide side);

/// -(1/Gamma(-alpha)) FP int_cut f(u) (z0-u)^-(alpha+1) du over the cut from z0
/// toward the side's endpoint; phases follow the cut continuously. The finite
/// part subtracts the Taylor terms of f at z0. Non-negative integer orders use
/// a Cauchy loop around z0.
DifferintResult frac_differint_curve(const RealFunction& f, const Order& alpha, cplx z0, const CurvePsi& psi,
                                     PsiSide side, const QuadratureConfig& cfg = {}, UnitPhase branch = {});

/// Same operator with an explicit cut.
DifferintResult frac_differint_cut(const RealFunction& f, const Order& alpha, const CutCurve& cut,
                                   const QuadratureConfig& cfg = {}, UnitPhase branch = {});

/// -(1/(n-1)!) int_psi+- (z0-z)^(n-1) f(z) dz
cplx nfold_primitive_curve(const RealFunction& f, int n, cplx z0, const CurvePsi& psi, PsiSide side,
                           const QuadratureConfig& cfg = {});

/// The winding assignment the cut from z0 along psi induces on the poles.
BranchChoice induced_branch(const PoleForm& h, const CurvePsi& psi, cplx z0, PsiSide side);

/// (Gamma(alpha+1)/2 i pi) int_C0 f(z) (z0-z)^-(alpha+1) dz along the polyline
/// C0 (rays at both ends). The phase at the start of C0 is assigned by rule2_windings
/// for `cut` and continued along C0; C0 must not cross the cut.
cplx remainder_integral(const RealFunction& f, const Order& alpha, cplx z0, const CurvePsi& c0, const CutCurve& cut,
                        const QuadratureConfig& cfg = {});

}  // namespace fracdi
