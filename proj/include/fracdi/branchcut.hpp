#pragma once

#include <vector>

#include "fracdi/special.hpp"

namespace fracdi {

/// Which half-line carries the cut of w^gamma: PlusAxis is (0,+inf) and
/// selects D+, MinusAxis is (0,-inf) and selects D-.
enum class CutOrientation { PlusAxis, MinusAxis };
enum class Approach { FromAbove, FromBelow };

/// arg w in [0, 2pi) for PlusAxis and (-pi, pi] for MinusAxis. On the cut
/// itself the approach direction decides.
double cut_arg(cplx w, CutOrientation cut, Approach approach = Approach::FromAbove);

/// w^gamma = exp(gamma (ln|w| + i cut_arg(w))). Throws DomainError at w = 0.
cplx principal_power(cplx w, cplx gamma, CutOrientation cut, Approach approach = Approach::FromAbove);

/// Polyline cut from a branch point: branch_point, further vertices, then a
/// ray toward exp(i terminal_angle) * infinity.
struct CutCurve {
    cplx branch_point{0.0};
    std::vector<cplx> vertices;  // vertices.front() == branch_point
    double terminal_angle = 0.0;

    static CutCurve straight(cplx z0, double theta);
    /// Throws InputError for malformed or self-intersecting polylines.
    void validate() const;
    /// Euclidean distance from z to the cut.
    double distance(cplx z) const;
};

/// Base angles phi (in [0,2pi), measured counterclockwise from the reference
/// ray z0 - inf) and winding integers m. The effective phase is phi + 2 pi m.
struct BranchAssignment {
    cplx z_ref{0.0};
    std::vector<int> m;
    std::vector<double> phi;

    double effective(std::size_t k) const { return phi[k] + 2.0 * kPi * m[k]; }
    std::size_t size() const { return m.size(); }
};

/// Phase of z0 - zk for a straight cut leaving z0 in direction cut_direction:
/// the base angle, reduced by 2pi when the measuring arc passes the cut.
double rule1_phase(cplx z0, cplx zk, double cut_direction);

/// Signed crossing count of each measuring path (arc at radius |z_R - z0|,
/// then radial segment) with the cut.
BranchAssignment rule2_windings(const CutCurve& cut, cplx z_ref, const std::vector<cplx>& poles);

}  // namespace fracdi
