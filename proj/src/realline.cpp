#include "fracdi/realline.hpp"

#include <cmath>
#include <sstream>

#include "fracdi/errors.hpp"

namespace fracdi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// exp(i pi alpha), exact at integers
cplx reflection_factor(const Order& alpha) {
    if (alpha.is_integer()) return (alpha.floor() % 2 == 0) ? 1.0 : -1.0;
    return std::exp(cplx{0.0, kPi} * alpha.value());
}

double ray_scale(const RealFunction& f, double x) {
    double s = std::abs(x) + 1.0;
    for (cplx p : f.poles) s = std::max(s, std::abs(p.real() - x) + std::abs(p.imag()));
    return s;
}

void check_poles_on_ray(const RealFunction& f, double x) {
    for (cplx p : f.poles) {
        const double tol = 1e-12 * std::max(1.0, std::abs(p));
        if (std::abs(p.imag()) <= tol && p.real() <= x + tol)
            throw PoleAtEvaluationPoint("pole of f on the integration ray at x = " + std::to_string(p.real()), p.real());
    }
}

void check_accuracy(const DifferintResult& r, const QuadratureConfig& cfg) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
        throw ConvergenceError("differintegral evaluated to a non-finite value");
    if (r.est_error > 100.0 * tol)
        throw AccuracyError("quadrature error estimate exceeds tolerance", r.est_error);
}

DifferintResult nfold_plus(const RealFunction& f, int n, double x, const QuadratureConfig& cfg) {
    check_poles_on_ray(f, x);
    const GrowthReport g = growth_check(f, Order(double(-n)), CutOrientation::PlusAxis);
    if (!g.pass) throw ConvergenceError(g.diagnostic);
    const QuadResult q = ray_integral([&](double t) { return f(x - t); }, double(n - 1), ray_scale(f, x), cfg);
    DifferintResult r;
    r.method = Method::NFoldIntegral;
    const double inv = 1.0 / std::tgamma(double(n));
    r.value = q.value * inv;
    r.est_error = q.err * inv;
    check_accuracy(r, cfg);
    return r;
}

DifferintResult differint_plus(const RealFunction& f, const Order& alpha, double x, const QuadratureConfig& cfg,
                               UnitPhase branch) {
    DifferintResult r;
    r.branch = branch;
    if (alpha.cls() == OrderClass::NonNegInteger) {
        const int n = alpha.floor();
        for (cplx p : f.poles)
            if (std::abs(p - cplx{x}) <= 1e-12 * std::max(1.0, std::abs(p)))
                throw PoleAtEvaluationPoint("pole of f at the evaluation point", x);
        r.method = Method::IntegerDerivative;
        bool approx = false;
        double err = 0.0;
        r.value = f.derivative(n, x, &approx, &err);
        r.approximate_derivatives = approx;
        r.est_error = err;
        if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
            throw PoleAtEvaluationPoint("f is singular at the evaluation point", x);
        return r;
    }
    if (alpha.cls() == OrderClass::NegInteger) {
        DifferintResult q = nfold_plus(f, -alpha.floor(), x, cfg);
        q.branch = branch;
        return q;
    }
    check_poles_on_ray(f, x);
    const GrowthReport g = growth_check(f, alpha, CutOrientation::PlusAxis);
    if (!g.pass) throw ConvergenceError(g.diagnostic);

    const cplx drift = std::exp(cplx{0.0, 2.0 * kPi * branch.n} * alpha.value());
    const double scale = ray_scale(f, x);
    if (alpha.re() >= 0.0) {
        const int n = alpha.floor();
        const cplx frac = alpha.frac();
        bool approx = false;
        double fd_err = 0.0;
        auto phi = [&](double t) {
            double e = 0.0;
            const cplx v = f.derivative(n + 1, x - t, &approx, &e);
            fd_err = std::max(fd_err, e);
            return v;
        };
        const QuadResult q = ray_integral(phi, -frac, scale, cfg);
        const cplx rg = rgamma(1.0 - frac);
        r.method = Method::LiouvilleByParts;
        r.value = drift * q.value * rg;
        r.est_error = std::abs(rg) * (q.err + (approx ? fd_err * scale : 0.0));
        r.approximate_derivatives = approx;
    } else {
        const QuadResult q = ray_integral([&](double t) { return f(x - t); }, -alpha.value() - 1.0, scale, cfg);
        const cplx rg = rgamma(-alpha.value());
        r.method = Method::DirectConvergent;
        r.value = drift * q.value * rg;
        r.est_error = std::abs(rg) * q.err;
    }
    check_accuracy(r, cfg);
    return r;
}

QuadResult ray_from(const RealToComplex& phi, double a, double scale, const QuadratureConfig& cfg) {
    // int_a^inf phi(t) dt
    return ray_integral([&](double u) { return phi(a + u); }, 0.0, scale, cfg);
}

}  // namespace

const char* to_string(Method m) {
    switch (m) {
        case Method::IntegerDerivative: return "IntegerDerivative";
        case Method::LiouvilleByParts: return "LiouvilleByParts";
        case Method::DirectConvergent: return "DirectConvergent";
        case Method::NFoldIntegral: return "NFoldIntegral";
        case Method::EpsRegularized: return "EpsRegularized";
    }
    return "?";
}

GrowthReport growth_check(const RealFunction& f, const Order& alpha, CutOrientation side) {
    GrowthReport rep;
    const double a1 = alpha.re();
    const double hint = side == CutOrientation::PlusAxis ? f.growth_left : f.growth_right;
    const double dir = side == CutOrientation::PlusAxis ? -1.0 : 1.0;
    for (int j = 4; j <= 20; ++j) {
        const double r = std::ldexp(1.0, j);
        rep.samples.push_back(std::abs(f(dir * r)) / std::pow(r, a1));
    }
    if (hint < a1) {
        rep.diagnostic = "growth hint satisfies the condition";
        return rep;
    }
    std::ostringstream os;
    for (double s : rep.samples) {
        if (!std::isfinite(s)) {
            rep.pass = false;
            os << "f(z)/z^" << a1 << " is not finite toward " << (dir < 0 ? "-inf" : "+inf");
            rep.diagnostic = os.str();
            return rep;
        }
    }
    const std::size_t m = rep.samples.size();
    bool nondecreasing = rep.samples.back() > 0.0;
    for (std::size_t i = m - 5; i + 1 < m && nondecreasing; ++i)
        nondecreasing = rep.samples[i + 1] >= rep.samples[i];
    if (nondecreasing) {
        rep.pass = false;
        os << "growth condition f(z)/z^" << a1 << " -> 0 fails toward " << (dir < 0 ? "-inf" : "+inf")
           << " (last samples non-decreasing, " << rep.samples.back() << ")";
    } else {
        os << "sampled growth condition holds";
    }
    rep.diagnostic = os.str();
    return rep;
}

DifferintResult frac_differint(const RealFunction& f, const Order& alpha, double x, CutOrientation side,
                               const QuadratureConfig& cfg, UnitPhase branch) {
    if (alpha.value() == cplx{0.0}) {
        DifferintResult r;
        r.value = f(x);
        r.branch = branch;
        if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
            throw PoleAtEvaluationPoint("f is singular at the evaluation point", x);
        return r;
    }
    if (side == CutOrientation::PlusAxis) return differint_plus(f, alpha, x, cfg, branch);
    DifferintResult r = differint_plus(reflected(f), alpha, -x, cfg, branch);
    r.value *= reflection_factor(alpha);
    return r;
}

DifferintResult nfold_integral(const RealFunction& f, int n, double x, CutOrientation side,
                               const QuadratureConfig& cfg) {
    if (n < 1) throw InputError("n-fold integral needs n >= 1");
    if (side == CutOrientation::PlusAxis) return nfold_plus(f, n, x, cfg);
    DifferintResult r = nfold_plus(reflected(f), n, -x, cfg);
    if (n % 2 == 1) r.value = -r.value;
    return r;
}

cplx eps_regularized(const RealFunction& f, const Order& alpha, double x, CutOrientation side, double eps,
                     const QuadratureConfig& cfg) {
    if (!(eps > 0.0)) throw InputError("eps must be positive");
    if (alpha.is_integer() || alpha.re() >= 1.0)
        throw InputError("eps-regularized form needs a non-integer order with real part below 1");
    if (side == CutOrientation::MinusAxis)
        return reflection_factor(alpha) * eps_regularized(reflected(f), alpha, -x, CutOrientation::PlusAxis, eps, cfg);
    check_poles_on_ray(f, x);
    const GrowthReport g = growth_check(f, alpha, CutOrientation::PlusAxis);
    if (!g.pass) throw ConvergenceError(g.diagnostic);
    const cplx a = alpha.value();
    const QuadResult q = ray_from([&](double t) { return std::pow(t, -a - 1.0) * f(x - t); }, eps, ray_scale(f, x), cfg);
    const cplx endpoint = f(x) * std::pow(eps, -a) / a;
    return rgamma(-a) * (q.value - endpoint);
}

cplx liouville_integral(const RealFunction& f, double gamma, double x, CutOrientation side,
                        const QuadratureConfig& cfg) {
    if (!(gamma < 1.0)) throw InputError("Liouville integral needs gamma < 1");
    const double dir = side == CutOrientation::PlusAxis ? -1.0 : 1.0;
    return ray_integral([&](double t) { return f(x + dir * t); }, -gamma, ray_scale(f, x), cfg).value;
}

cplx liouville_integral_fp(const RealFunction& f, double gamma, double x, CutOrientation side,
                           const QuadratureConfig& cfg) {
    if (gamma < 1.0) return liouville_integral(f, gamma, x, side, cfg);
    if (!(gamma < 2.0)) throw InputError("finite part implemented for gamma < 2");
    const double dir = side == CutOrientation::PlusAxis ? -1.0 : 1.0;
    const double h = 0.5;
    const cplx f0 = f(x);
    const cplx d0 = f.derivative(1, x) * dir;
    auto slope = [&](double t) {
        if (t < 1e-7) return d0;
        return (f(x + dir * t) - f0) / t;
    };
    const cplx head = singular_endpoint_integral(slope, 1.0 - gamma, h, cfg).value;
    const cplx endpoint = gamma == 1.0 ? f0 * std::log(h) : f0 * std::pow(h, 1.0 - gamma) / (1.0 - gamma);
    const cplx tail =
        ray_from([&](double t) { return std::pow(t, -gamma) * f(x + dir * t); }, h, ray_scale(f, x), cfg).value;
    return head + endpoint + tail;
}

IntegralRecurrence derivative_of_integral(const RealFunction& f, double gamma, double x, CutOrientation side,
                                          const QuadratureConfig& cfg) {
    QuadratureConfig tight = cfg;
    tight.rel_tol = std::min(cfg.rel_tol, 1e-12);
    tight.abs_tol = std::min(cfg.abs_tol, 1e-14);
    const double sign = side == CutOrientation::PlusAxis ? 1.0 : -1.0;
    IntegralRecurrence out;
    out.lhs = fd_derivative([&](double y) { return liouville_integral(f, gamma, y, side, tight); }, 1, x, 0.05);
    if (gamma == 0.0)
        out.rhs = sign * f(x);
    else
        out.rhs = -sign * gamma * liouville_integral_fp(f, gamma + 1.0, x, side, tight);
    out.residual = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), 1e-300);
    return out;
}

DifferintResult liouville_differentiated(const RealFunction& f, const Order& alpha, double x, CutOrientation side,
                                         const QuadratureConfig& cfg) {
    if (!alpha.is_real() || alpha.re() < 0.0 || alpha.is_integer())
        throw InputError("differentiated Liouville route needs a real non-integer order >= 0");
    if (side == CutOrientation::MinusAxis) {
        DifferintResult r = liouville_differentiated(reflected(f), alpha, -x, CutOrientation::PlusAxis, cfg);
        r.value *= reflection_factor(alpha);
        return r;
    }
    check_poles_on_ray(f, x);
    const GrowthReport g = growth_check(f, alpha, CutOrientation::PlusAxis);
    if (!g.pass) throw ConvergenceError(g.diagnostic);
    QuadratureConfig tight = cfg;
    tight.rel_tol = std::min(cfg.rel_tol, 1e-13);
    tight.abs_tol = std::min(cfg.abs_tol, 1e-15);
    const int n = alpha.floor();
    const double frac = alpha.re() - n;
    const double rg = 1.0 / std::tgamma(1.0 - frac);
    DifferintResult r;
    r.method = Method::LiouvilleByParts;
    r.approximate_derivatives = true;
    r.value = rg * fd_derivative([&](double y) { return liouville_integral(f, frac, y, CutOrientation::PlusAxis, tight); },
                                 n + 1, x, 0.1, &r.est_error);
    r.est_error *= rg;
    return r;
}

}  // namespace fracdi
