#include "fracdi/branchcut.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "fracdi/errors.hpp"

namespace fracdi {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double wrap_2pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

struct Piece {
    cplx a;
    cplx d;       // direction (not normalized for segments, unit for the ray)
    double tmax;  // 1 for segments, inf for the terminal ray
};

std::vector<Piece> pieces(const CutCurve& c) {
    std::vector<Piece> out;
    for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i)
        out.push_back({c.vertices[i], c.vertices[i + 1] - c.vertices[i], 1.0});
    out.push_back({c.vertices.back(), std::polar(1.0, c.terminal_angle), kInf});
    return out;
}

double point_piece_distance(cplx z, const Piece& p) {
    const double len2 = std::norm(p.d);
    double t = ((z - p.a) * std::conj(p.d)).real() / len2;
    t = std::clamp(t, 0.0, p.tmax);
    return std::abs(z - (p.a + t * p.d));
}

double scale_of(const CutCurve& c) {
    double s = 1.0;
    for (cplx v : c.vertices) s = std::max(s, std::abs(v));
    return s;
}

// Intersection of path segment P0 + u (P1 - P0), u in (0,1], with a cut piece,
// t in [0, tmax). Returns the crossing sign or nothing.
std::optional<int> segment_crossing(cplx P0, cplx P1, const Piece& c, double eps) {
    const cplx e = P1 - P0;
    const double den = cross(c.d, e);
    const cplx w = P0 - c.a;
    if (std::abs(den) <= eps * std::abs(c.d) * std::abs(e)) {
        // parallel: collinear overlap is a tangency
        if (std::abs(cross(c.d, w)) <= eps * std::abs(c.d) * std::max(1.0, std::abs(w))) {
            const double len2 = std::norm(c.d);
            const double t0 = (w * std::conj(c.d)).real() / len2;
            const double t1 = ((P1 - c.a) * std::conj(c.d)).real() / len2;
            const double lo = std::min(t0, t1), hi = std::max(t0, t1);
            if (hi >= 0.0 && lo < c.tmax) throw GeometryError("measuring path runs along the cut");
        }
        return std::nullopt;
    }
    // P0 + u e = a + t d
    const double t = cross(w, e) / den;
    const double u = cross(w, c.d) / den;
    if (u <= 0.0 || u > 1.0 || t < 0.0 || t >= c.tmax) return std::nullopt;
    return den > 0 ? 1 : -1;
}

}  // namespace

double cut_arg(cplx w, CutOrientation cut, Approach approach) {
    if (w == cplx{0.0}) throw DomainError("branch point w = 0");
    if (cut == CutOrientation::MinusAxis) {
        if (w.imag() == 0.0 && w.real() < 0.0) return approach == Approach::FromAbove ? kPi : -kPi;
        return std::atan2(w.imag(), w.real());  // (-pi, pi]
    }
    if (w.imag() == 0.0 && w.real() > 0.0) return approach == Approach::FromAbove ? 0.0 : kTwoPi;
    double a = std::atan2(w.imag(), w.real());
    if (a < 0) a += kTwoPi;
    return a;
}

cplx principal_power(cplx w, cplx gamma, CutOrientation cut, Approach approach) {
    if (w == cplx{0.0}) throw DomainError("branch point w = 0");
    if (gamma.imag() == 0.0 && gamma.real() == std::round(gamma.real()) && std::abs(gamma.real()) <= 64) {
        // integer powers are single valued
        const int n = static_cast<int>(gamma.real());
        return n >= 0 ? std::pow(w, n) : 1.0 / std::pow(w, -n);
    }
    const double arg = cut_arg(w, cut, approach);
    return std::exp(gamma * cplx{std::log(std::abs(w)), arg});
}

CutCurve CutCurve::straight(cplx z0, double theta) { return CutCurve{z0, {z0}, theta}; }

void CutCurve::validate() const {
    if (vertices.empty() || vertices.front() != branch_point)
        throw InputError("cut polyline must start at its branch point");
    if (!std::isfinite(terminal_angle)) throw InputError("terminal angle must be finite");
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        if (vertices[i] == vertices[i + 1]) throw InputError("cut has repeated vertices");
    const auto ps = pieces(*this);
    const double eps = 1e-12 * scale_of(*this);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const Piece& p = ps[i];
            const Piece& q = ps[j];
            const double den = cross(p.d, q.d);
            const cplx w = q.a - p.a;
            if (std::abs(den) <= 1e-14 * std::abs(p.d) * std::abs(q.d)) {
                if (std::abs(cross(w, p.d)) > eps * std::abs(p.d)) continue;
                // collinear: overlap beyond a shared vertex is self-intersection
                const double len2 = std::norm(p.d);
                const double t0 = (w * std::conj(p.d)).real() / len2;
                double t1;
                if (q.tmax == kInf)
                    t1 = (q.d * std::conj(p.d)).real() > 0 ? kInf : -kInf;
                else
                    t1 = ((q.a + q.d - p.a) * std::conj(p.d)).real() / len2;
                const double lo = std::min(t0, t1), hi = std::max(t0, t1);
                const double ov_lo = std::max(lo, 0.0), ov_hi = std::min(hi, p.tmax);
                if (ov_hi > ov_lo + 1e-12) throw InputError("cut polyline overlaps itself");
                continue;
            }
            const double t = cross(w, q.d) / den;
            const double s = cross(w, p.d) / den;
            const bool adjacent = (j == i + 1);
            const double tt = 1e-12;
            const bool hit = t >= -tt && t <= p.tmax + tt && s >= -tt && s <= q.tmax + tt;
            if (!hit) continue;
            if (adjacent && std::abs(t - p.tmax) <= tt && std::abs(s) <= tt) continue;
            throw InputError("cut polyline is self-intersecting");
        }
    }
}

double CutCurve::distance(cplx z) const {
    double d = kInf;
    for (const Piece& p : pieces(*this)) d = std::min(d, point_piece_distance(z, p));
    return d;
}

double rule1_phase(cplx z0, cplx zk, double cut_direction) {
    if (zk == z0) throw DomainError("pole coincides with the branch point");
    const double phi = wrap_2pi(std::arg(z0 - zk));
    const double rel = wrap_2pi(cut_direction - kPi);
    const double tol = 1e-13 * kTwoPi;
    if (rel > 0.0 && std::abs(rel - phi) <= tol) throw GeometryError("pole lies on the cut");
    if (rel > 0.0 && rel < phi) return phi - kTwoPi;
    return phi;
}

BranchAssignment rule2_windings(const CutCurve& cut, cplx z_ref, const std::vector<cplx>& poles) {
    cut.validate();
    const cplx z0 = cut.branch_point;
    const double rho = std::abs(z_ref - z0);
    const double scale = std::max(scale_of(cut), std::abs(z_ref));
    if (rho == 0.0 || std::abs((z0 - z_ref).imag()) > 1e-12 * scale || (z0 - z_ref).real() <= 0.0)
        throw InputError("reference point must lie on the ray from the branch point toward -inf");
    const auto ps = pieces(cut);

    BranchAssignment out;
    out.z_ref = z_ref;
    for (cplx zk : poles) {
        if (zk == z0) throw GeometryError("pole at the branch point");
        if (cut.distance(zk) <= 1e-12 * scale) throw GeometryError("pole lies on the cut");
        const double phi = wrap_2pi(std::arg(z0 - zk));
        int m = 0;

        // arc: directions pi + s, s in (0, phi]
        for (const Piece& p : ps) {
            const cplx w = p.a - z0;
            const double A = std::norm(p.d);
            const double B = 2.0 * (w * std::conj(p.d)).real();
            const double C = std::norm(w) - rho * rho;
            const double disc = B * B - 4.0 * A * C;
            if (disc < 0.0) continue;
            const double sq = std::sqrt(disc);
            if (disc <= 1e-12 * std::max(B * B, std::abs(4.0 * A * C))) {
                const double t = -B / (2.0 * A);
                if (t >= 0.0 && t < p.tmax) {
                    const double s = wrap_2pi(std::arg(w + t * p.d) - kPi);
                    if (s > 0.0 && s <= phi) throw GeometryError("cut is tangent to the measuring arc");
                }
                continue;
            }
            const double q = -0.5 * (B + std::copysign(sq, B));
            const double roots[2] = {q / A, C / q};
            for (double t : roots) {
                if (t < 0.0 || t >= p.tmax) continue;
                const cplx P = w + t * p.d;
                const double s = wrap_2pi(std::arg(P) - kPi);
                if (!(s > 0.0 && s <= phi)) continue;
                const cplx tangent = cplx{0.0, 1.0} * P / rho;
                const double c = cross(p.d, tangent);
                if (std::abs(c) <= 1e-12 * std::abs(p.d)) throw GeometryError("cut is tangent to the measuring arc");
                m -= c > 0 ? 1 : -1;
            }
        }
        // radial leg
        const cplx Q = z0 + std::polar(rho, kPi + phi);
        if (std::abs(zk - Q) > 0.0) {
            for (const Piece& p : ps) {
                if (auto sgn = segment_crossing(Q, zk, p, 1e-13)) m -= *sgn;
            }
        }
        out.m.push_back(m);
        out.phi.push_back(phi);
    }
    return out;
}

}  // namespace fracdi
