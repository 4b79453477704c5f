#pragma once

#include <optional>
#include <vector>

#include "fracdi/branchcut.hpp"
#include "fracdi/function.hpp"
#include "fracdi/order.hpp"

namespace fracdi {

/// a / (z - z_pole)^(n+1)
struct PoleTerm {
    cplx a{1.0};
    cplx z{0.0};
    int n = 0;
};

struct PoleForm {
    std::vector<PoleTerm> terms;

    /// 1/(1+z^2) = (1/2i)/(z-i) - (1/2i)/(z+i)
    static PoleForm lorentzian();
    void validate() const;
    std::vector<cplx> poles() const;
    cplx operator()(cplx z) const;
    cplx derivative(int k, cplx z) const;
};

RealFunction rational_function(const PoleForm& h);

/// Phases of z0 - z_k for a cut leaving z0, either straight or a polyline.
struct BranchChoice {
    std::optional<CutCurve> curve;  // empty: straight half-line at `theta`
    double theta = kPi;
    BranchAssignment windings;

    static BranchChoice straight(const PoleForm& h, cplx z0, double theta);
    /// Windings from Rule 2 with the reference point z_ref on the ray z0 - inf.
    static BranchChoice along(const PoleForm& h, const CutCurve& cut, cplx z_ref);
    static BranchChoice along(const PoleForm& h, const CutCurve& cut);
};

/// (-1)^alpha sum_k Gamma(alpha+n_k+1)/Gamma(n_k+1) a_k exp(-i phi_k (alpha+1))
///                  / (|z0-z_k|^(alpha+1) (z0-z_k)^n_k)
/// with phi_k the effective (winding-corrected) phase. At alpha = -n the
/// finite part of the limit is returned: an n-fold primitive, exact when the
/// divergent polynomial parts of the terms cancel.
cplx closed_frac_deriv(const PoleForm& h, const Order& alpha, cplx z0, const BranchChoice& choice,
                       UnitPhase branch = {});

/// Same, with explicit effective phases per pole.
cplx closed_frac_deriv_phases(const PoleForm& h, const Order& alpha, cplx z0, const std::vector<double>& phases,
                              UnitPhase branch = {});

/// The k-family for 1/(1+x^2); k = 0 is D+, k = -1 is D-. alpha = -1 is the
/// primitive arctan(x) + (2k+1) pi/2.
cplx lorentzian_closed(const Order& alpha, double x, int k);

struct BranchValueSet {
    std::vector<cplx> values;        // distinct values
    std::vector<int> multiplicity;   // lattice points merged into each value
    std::size_t lattice_points = 0;
    std::optional<long> bound;       // q^(N+1) for rational alpha = p/q
    bool within_bound = true;
    bool periodic = true;            // m_k -> m_k + q invariance (rational alpha)
    std::vector<std::pair<double, double>> factors;  // (phase, scale) per winding shift m, complex alpha
};

/// Enumerates m_k in [-bound, bound]^N (and the UnitPhase index when
/// `with_unit_phase`) and merges values within 1e-10 of the largest modulus.
BranchValueSet branch_value_set(const PoleForm& h, const Order& alpha, cplx z0, int enum_bound,
                                bool with_unit_phase = false);

/// Jump of an n-fold primitive when the cut winds m times around pole p.
cplx primitive_difference(int n, const PoleTerm& pole, cplx z0, int m);

double reflection_check(const Order& alpha, double x);

}  // namespace fracdi
