#include "fracdi/contour.hpp"

#include <cmath>
#include <limits>

#include "fracdi/errors.hpp"

namespace fracdi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * kPi;

struct Piece {
    cplx a;
    cplx d;       // unit direction
    double len;   // inf for rays
};

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double curve_scale(const std::vector<cplx>& vs) {
    double s = 1.0;
    for (cplx v : vs) s = std::max(s, std::abs(v));
    return s;
}

// traversal order: in-ray (outward from v0, traversed inward), segments, out-ray
std::vector<Piece> psi_pieces(const CurvePsi& psi) {
    std::vector<Piece> out;
    out.push_back({psi.vertices.front(), std::polar(1.0, psi.theta1), kInf});
    for (std::size_t i = 0; i + 1 < psi.vertices.size(); ++i) {
        const cplx e = psi.vertices[i + 1] - psi.vertices[i];
        out.push_back({psi.vertices[i], e / std::abs(e), std::abs(e)});
    }
    out.push_back({psi.vertices.back(), std::polar(1.0, psi.theta2), kInf});
    return out;
}

std::vector<Piece> cut_pieces(const CutCurve& c) {
    std::vector<Piece> out;
    for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
        const cplx e = c.vertices[i + 1] - c.vertices[i];
        out.push_back({c.vertices[i], e / std::abs(e), std::abs(e)});
    }
    out.push_back({c.vertices.back(), std::polar(1.0, c.terminal_angle), kInf});
    return out;
}

struct Location {
    int piece;  // 0 in-ray, 1..M segments, M+1 out-ray
    double t;
};

Location locate(const CurvePsi& psi, cplx z0) {
    const auto ps = psi_pieces(psi);
    const double tol = 1e-12 * curve_scale(psi.vertices);
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const Piece& p = ps[k];
        const double t = ((z0 - p.a) * std::conj(p.d)).real();
        if (t < -tol || t > p.len + tol) continue;
        if (std::abs(z0 - (p.a + t * p.d)) > tol) continue;
        return {static_cast<int>(k), std::clamp(t, 0.0, p.len)};
    }
    throw GeometryError("evaluation point does not lie on the curve");
}

// Unit direction of psi at z0; vertices are accepted only where psi is straight.
cplx direction_at(const CurvePsi& psi, cplx z0) {
    const auto ps = psi_pieces(psi);
    const double tol = 1e-12 * curve_scale(psi.vertices);
    const Location loc = locate(psi, z0);
    const Piece& p = ps[loc.piece];
    // traversal direction: the in-ray is walked against its stored direction
    const cplx dir = loc.piece == 0 ? -p.d : p.d;
    const bool at_start = loc.piece == 0 ? false : loc.t <= tol;
    const bool at_end = loc.piece == 0 ? loc.t <= tol : (p.len != kInf && loc.t >= p.len - tol);
    if (at_start || at_end) {
        const int other = at_end ? loc.piece + 1 : loc.piece - 1;
        const Piece& q = ps[other];
        const cplx odir = other == 0 ? -q.d : q.d;
        if (std::abs(odir - dir) > 1e-12) throw GeometryError("evaluation point sits on a kink of the curve");
    }
    return dir;
}

bool pieces_intersect(const Piece& p, const Piece& q) {
    const double den = cross(p.d, q.d);
    const cplx w = q.a - p.a;
    if (std::abs(den) < 1e-14) return false;
    const double t = cross(w, q.d) / den;
    const double s = cross(w, p.d) / den;
    return t >= 0.0 && t <= p.len && s >= 0.0 && s <= q.len;
}

cplx pow_tracked(cplx z0, cplx u, double phase, cplx expo) {
    // (z0-u)^expo with arg(z0-u) = phase
    return std::exp(expo * cplx{std::log(std::abs(z0 - u)), phase});
}

double nearest_pole(const RealFunction& f, cplx z0) {
    double d = kInf;
    for (cplx p : f.poles) d = std::min(d, std::abs(p - z0));
    return d;
}

DifferintResult cauchy_loop(const RealFunction& f, int n, cplx z0) {
    const double r = std::min(0.5, 0.5 * nearest_pole(f, z0));
    auto loop = [&](int M) {
        cplx s{0.0};
        for (int j = 0; j < M; ++j) {
            const double th = kTwoPi * j / M;
            s += f(z0 + std::polar(r, th)) * std::polar(1.0, -n * th);
        }
        return s * std::tgamma(n + 1.0) / (double(M) * std::pow(r, n));
    };
    DifferintResult out;
    out.method = Method::IntegerDerivative;
    out.value = loop(256);
    out.est_error = std::abs(out.value - loop(128));
    return out;
}

}  // namespace

CurvePsi CurvePsi::line(cplx point, cplx direction) {
    const cplx d = direction / std::abs(direction);
    return CurvePsi{{point - d, point + d}, std::arg(-d), std::arg(d)};
}

CurvePsi CurvePsi::reversed() const {
    CurvePsi r{{vertices.rbegin(), vertices.rend()}, theta2, theta1};
    return r;
}

void CurvePsi::validate() const {
    if (vertices.empty()) throw InputError("curve needs at least one vertex");
    if (!std::isfinite(theta1) || !std::isfinite(theta2)) throw InputError("curve end angles must be finite");
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        if (vertices[i] == vertices[i + 1]) throw InputError("curve has repeated vertices");
    if (std::abs(std::polar(1.0, theta1) - std::polar(1.0, theta2)) < 1e-12)
        throw GeometryError("degenerate curve: both ends go to the same infinity direction");
    const auto ps = psi_pieces(*this);
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 2; j < ps.size(); ++j)
            if (pieces_intersect(ps[i], ps[j])) throw InputError("curve is self-intersecting");
}

cplx CurvePsi::tangent_at(cplx z) const { return direction_at(*this, z); }

SideLabels psi_side_labels(const CurvePsi& psi) {
    const double c1 = std::cos(psi.theta1), c2 = std::cos(psi.theta2);
    const double s1 = std::sin(psi.theta1), s2 = std::sin(psi.theta2);
    if (std::abs(std::polar(1.0, psi.theta1) - std::polar(1.0, psi.theta2)) < 1e-12)
        throw GeometryError("degenerate curve: theta1 == theta2");
    bool plus_first;
    if (std::abs(c1 - c2) > 1e-12)
        plus_first = c1 < c2;
    else
        plus_first = s1 < s2;
    return plus_first ? SideLabels{psi.theta1, psi.theta2, true} : SideLabels{psi.theta2, psi.theta1, false};
}

CutCurve cut_along(const CurvePsi& psi, cplx z0, PsiSide side) {
    psi.validate();
    direction_at(psi, z0);  // rejects kinks and points off the curve
    const Location loc = locate(psi, z0);
    const SideLabels lab = psi_side_labels(psi);
    const bool toward_theta1 = (side == PsiSide::PsiPlus) == lab.plus_is_theta1;
    const int M = static_cast<int>(psi.vertices.size());
    const double tol = 1e-12 * curve_scale(psi.vertices);
    CutCurve cut{z0, {z0}, toward_theta1 ? psi.theta1 : psi.theta2};
    auto push = [&](cplx v) {
        if (std::abs(v - cut.vertices.back()) > tol) cut.vertices.push_back(v);
    };
    if (toward_theta1) {
        // back through vertices v_{piece-1} .. v_0
        for (int i = std::min(loc.piece, M) - 1; i >= 0; --i) push(psi.vertices[i]);
        if (loc.piece == 0) cut.vertices.resize(1);
    } else {
        for (int i = std::max(loc.piece, 0); i < M; ++i) push(psi.vertices[i]);
        if (loc.piece == M) cut.vertices.resize(1);
    }
    cut.validate();
    return cut;
}

DifferintResult frac_differint_cut(const RealFunction& f, const Order& alpha, const CutCurve& cut,
                                   const QuadratureConfig& cfg, UnitPhase branch) {
    cut.validate();
    const cplx z0 = cut.branch_point;
    const double scale = curve_scale(cut.vertices);
    for (cplx p : f.poles)
        if (cut.distance(p) <= 1e-12 * std::max(1.0, std::abs(p))) throw GeometryError("pole of f lies on the cut");

    if (alpha.cls() == OrderClass::NonNegInteger) {
        DifferintResult r = cauchy_loop(f, alpha.floor(), z0);
        r.branch = branch;
        return r;
    }

    const cplx a = alpha.value() + 1.0;
    const auto ps = cut_pieces(cut);
    const cplx nu0 = ps.front().d;
    double phi0 = std::arg(-nu0);
    if (phi0 > 0.0) phi0 -= kTwoPi;

    // head: finite part on [0, T] of the first piece
    const double T = std::min({ps.front().len, 0.5, 0.5 * nearest_pole(f, z0)});
    const int J = alpha.re() >= 0.0 ? alpha.floor() : -1;
    std::vector<cplx> c(J + 1);
    for (int j = 0; j <= J; ++j) c[j] = std::pow(nu0, j + 1) * f.derivative(j, z0) / std::tgamma(j + 1.0);
    auto remainder = [&](double t) {
        if (t == 0.0) return cplx{0.0};
        cplx g = nu0 * f(z0 + nu0 * t);
        cplx tp{1.0};
        for (int j = 0; j <= J; ++j) {
            g -= c[j] * tp;
            tp *= t;
        }
        return g / tp;
    };
    QuadResult head = singular_endpoint_integral(remainder, -a + double(J + 1), T, cfg);
    for (int j = 0; j <= J; ++j) head.value += c[j] * std::pow(T, double(j) - a + 1.0) / (double(j) - a + 1.0);
    const cplx rot = std::exp(-cplx{0.0, 1.0} * a * phi0);
    cplx total = head.value * rot;
    double err = head.err * std::abs(rot);

    // the rest with continuously tracked phases
    double phase = phi0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const Piece& p = ps[k];
        const cplx start = k == 0 ? z0 + nu0 * T : p.a;
        const double len = k == 0 ? p.len - T : p.len;
        if (k == 0 && len <= 0.0) continue;
        const cplx anchor = z0 - start;
        const double base = phase;
        auto F = [&](double s) {
            const cplx u = start + p.d * s;
            const double ph = base + std::arg((z0 - u) / anchor);
            return f(u) * pow_tracked(z0, u, ph, -a) * p.d;
        };
        QuadResult q = len == kInf ? ray_integral(F, 0.0, scale + std::abs(z0), cfg) : integrate_adaptive(F, 0.0, len, cfg);
        total += q.value;
        err += q.err;
        if (len != kInf) phase = base + std::arg((z0 - (start + p.d * len)) / anchor);
    }

    DifferintResult r;
    r.branch = branch;
    r.method = alpha.cls() == OrderClass::NegInteger ? Method::NFoldIntegral
               : alpha.re() >= 0.0                   ? Method::LiouvilleByParts
                                                     : Method::DirectConvergent;
    const cplx pre = -rgamma(-alpha.value()) * std::exp(cplx{0.0, kTwoPi * branch.n} * alpha.value());
    r.value = pre * total;
    r.est_error = std::abs(pre) * err;
    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
        throw ConvergenceError("curve integral is not finite");
    if (r.est_error > 100.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)))
        throw AccuracyError("curve quadrature error estimate exceeds tolerance", r.est_error);
    return r;
}

DifferintResult frac_differint_curve(const RealFunction& f, const Order& alpha, cplx z0, const CurvePsi& psi,
                                     PsiSide side, const QuadratureConfig& cfg, UnitPhase branch) {
    return frac_differint_cut(f, alpha, cut_along(psi, z0, side), cfg, branch);
}

cplx nfold_primitive_curve(const RealFunction& f, int n, cplx z0, const CurvePsi& psi, PsiSide side,
                           const QuadratureConfig& cfg) {
    if (n < 1) throw InputError("primitive order must be positive");
    return frac_differint_curve(f, Order(double(-n)), z0, psi, side, cfg).value;
}

BranchChoice induced_branch(const PoleForm& h, const CurvePsi& psi, cplx z0, PsiSide side) {
    return BranchChoice::along(h, cut_along(psi, z0, side));
}

cplx remainder_integral(const RealFunction& f, const Order& alpha, cplx z0, const CurvePsi& c0, const CutCurve& cut,
                        const QuadratureConfig& cfg) {
    c0.validate();
    cut.validate();
    if (cut.branch_point != z0) throw GeometryError("cut must start at the evaluation point");
    const auto cps = cut_pieces(cut);
    const auto ps = psi_pieces(c0);
    for (const Piece& p : ps)
        for (const Piece& q : cps)
            if (pieces_intersect(p, q)) throw GeometryError("boundary arc crosses the cut");

    const cplx a = alpha.value() + 1.0;
    const cplx v0 = c0.vertices.front();
    double rho = 1.0;
    for (std::size_t i = 1; i < cut.vertices.size(); ++i) rho = std::min(rho, 1e-3 * std::abs(cut.vertices[i] - z0));
    rho = std::min(rho, 1e-3 * std::abs(v0 - z0));
    const BranchAssignment ba = rule2_windings(cut, z0 - rho, {v0});
    const double phase0 = ba.effective(0);
    const double scale = curve_scale(c0.vertices) + std::abs(z0);

    cplx total{0.0};
    // in-ray, walked from infinity toward v0
    {
        const Piece& p = ps.front();
        auto F = [&](double s) {
            const cplx u = v0 + p.d * s;
            const double ph = phase0 + std::arg((z0 - u) / (z0 - v0));
            return f(u) * pow_tracked(z0, u, ph, -a) * p.d;
        };
        total -= ray_integral(F, 0.0, scale, cfg).value;
    }
    double phase = phase0;
    for (std::size_t k = 1; k < ps.size(); ++k) {
        const Piece& p = ps[k];
        const cplx anchor = z0 - p.a;
        const double base = phase;
        auto F = [&](double s) {
            const cplx u = p.a + p.d * s;
            const double ph = base + std::arg((z0 - u) / anchor);
            return f(u) * pow_tracked(z0, u, ph, -a) * p.d;
        };
        if (p.len == kInf) {
            total += ray_integral(F, 0.0, scale, cfg).value;
        } else {
            total += integrate_adaptive(F, 0.0, p.len, cfg).value;
            phase = base + std::arg((z0 - (p.a + p.d * p.len)) / anchor);
        }
    }
    return gamma(a) / cplx{0.0, kTwoPi} * total;
}

}  // namespace fracdi
