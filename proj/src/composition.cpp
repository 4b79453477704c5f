#include "fracdi/composition.hpp"

#include <algorithm>
#include <cmath>

#include "fracdi/errors.hpp"
#include "fracdi/kernel.hpp"
#include "fracdi/realline.hpp"

namespace fracdi {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// arg(w) continued around `center`: (center - pi, center + pi]
double arg_around(cplx w, double center) {
    double d = std::remainder(std::arg(w) - center, kTwoPi);
    if (d <= -kPi) d += kTwoPi;
    return center + d;
}

cplx power_with_arg(cplx w, cplx expo, double arg) { return std::exp(expo * cplx{std::log(std::abs(w)), arg}); }

QuadratureConfig tightened(const QuadratureConfig& cfg, double rel, double abs) {
    QuadratureConfig t = cfg;
    t.rel_tol = std::min(cfg.rel_tol, rel);
    t.abs_tol = std::min(cfg.abs_tol, abs);
    return t;
}

// D+^alpha of a function known only through its values.
cplx outer_plus(const std::function<cplx(double)>& H, const Order& alpha, double X, const QuadratureConfig& cfg) {
    const double scale = std::abs(X) + 4.0;
    if (alpha.value() == cplx{0.0}) return H(X);
    if (alpha.cls() == OrderClass::NonNegInteger) return fd_derivative(H, alpha.floor(), X, 0.1);
    if (alpha.re() < 0.0) {
        const cplx p = -alpha.value() - 1.0;
        return rgamma(-alpha.value()) * ray_integral([&](double t) { return H(X - t); }, p, scale, cfg).value;
    }
    // Hadamard finite part with the Taylor terms of H at X removed
    const int J = alpha.floor();
    const cplx a = alpha.value();
    std::vector<cplx> c(J + 1);
    for (int j = 0; j <= J; ++j)
        c[j] = (j == 0 ? H(X) : fd_derivative(H, j, X, 0.1)) * (((j % 2) == 0 ? 1.0 : -1.0) / std::tgamma(j + 1.0));
    const double T = 0.5;
    auto rem = [&](double t) {
        if (t == 0.0) return cplx{0.0};
        cplx g = H(X - t);
        cplx tp{1.0};
        for (int j = 0; j <= J; ++j) {
            g -= c[j] * tp;
            tp *= t;
        }
        return g / tp;
    };
    cplx total = singular_endpoint_integral(rem, double(J) - a, T, cfg).value;
    for (int j = 0; j <= J; ++j) total += c[j] * std::pow(T, double(j) - a) / (double(j) - a);
    total += ray_integral([&](double u) { return std::pow(T + u, -a - 1.0) * H(X - T - u); }, 0.0, scale, cfg).value;
    return rgamma(-a) * total;
}

}  // namespace

cplx j_closed(cplx z1, cplx z2, const Order& alpha, const Order& beta) {
    if (z1 == z2) throw DomainError("j_closed needs distinct points");
    const cplx s = alpha.value() + beta.value() + 1.0;
    return cplx{0.0, kTwoPi} * gamma(s) / (std::pow(z2 - z1, s) * gamma(alpha.value() + 1.0) * gamma(beta.value() + 1.0));
}

cplx j_numeric(cplx z1, cplx z2, const Order& alpha, const Order& beta, const QuadratureConfig& cfg,
               std::optional<IntegrationLine> line) {
    if (z1 == z2) throw DomainError("j_numeric needs distinct points");
    if (alpha.value().real() + beta.value().real() <= -1.0) throw InputError("needs Re(alpha + beta) > -1");
    const IntegrationLine K = line.value_or(IntegrationLine{0.5 * (z1 + z2), cplx{0.0, 1.0} * (z2 - z1)});
    const cplx d = K.direction / std::abs(K.direction);
    const cplx nrm = cplx{0.0, 1.0} * d;
    auto side = [&](cplx z) {
        const double s = ((z - K.point) / d).imag();
        if (std::abs(s) <= 1e-14 * std::max(1.0, std::abs(z))) throw GeometryError("point lies on the integration line");
        return s > 0 ? 1.0 : -1.0;
    };
    const double c2 = std::arg(side(z2) * nrm);
    const double c1 = std::arg(-side(z1) * nrm);
    const cplx ea = -(alpha.value() + 1.0), eb = -(beta.value() + 1.0);
    auto F = [&](double s) {
        const cplx z = K.point + d * s;
        const cplx w2 = z2 - z, w1 = z - z1;
        return power_with_arg(w2, ea, arg_around(w2, c2)) * power_with_arg(w1, eb, arg_around(w1, c1)) * d;
    };
    const QuadratureConfig t = tightened(cfg, 1e-12, 1e-15);
    const double scale = std::abs(z2 - z1) + std::abs(K.point - 0.5 * (z1 + z2));
    const cplx fwd = ray_integral(F, 0.0, scale, t).value;
    const cplx bwd = ray_integral([&](double s) { return F(-s); }, 0.0, scale, t).value;
    return fwd + bwd;
}

CompositionReport verify_composition(const RealFunction& f, const Order& alpha, const Order& beta, double x,
                                     CutOrientation side, const QuadratureConfig& cfg) {
    CompositionReport rep{alpha, beta, 0.0, 0.0, 0.0, "inner operator evaluated on demand"};
    const QuadratureConfig inner = tightened(cfg, 1e-11, 1e-14);
    const QuadratureConfig outer = tightened(cfg, 1e-9, 1e-13);
    const Order sum(alpha.value() + beta.value());
    rep.lhs = frac_differint(f, sum, x, side, inner).value;
    if (side == CutOrientation::PlusAxis) {
        auto H = [&](double y) { return frac_differint(f, beta, y, side, inner).value; };
        rep.rhs = outer_plus(H, alpha, x, outer);
    } else {
        // D-^a h(x) = exp(i pi a) (D+^a h(-.))(-x)
        auto H = [&](double y) { return frac_differint(f, beta, -y, side, inner).value; };
        const cplx refl = alpha.is_integer() ? cplx{(alpha.floor() % 2 == 0) ? 1.0 : -1.0}
                                             : std::exp(cplx{0.0, kPi} * alpha.value());
        rep.rhs = refl * outer_plus(H, alpha, -x, outer);
    }
    // |f(x)| sets the scale where D^(a+b) f happens to vanish
    rep.residual = std::abs(rep.lhs - rep.rhs) / std::max({std::abs(rep.lhs), std::abs(f(x)), 1e-300});
    return rep;
}

double gamma_reflection(cplx g) {
    if (is_integer(g)) throw GammaPoleError("reflection formula needs a non-integer argument");
    return std::abs(gamma(g) * gamma(1.0 - g) * std::sin(kPi * g) - kPi);
}

double beta_integral(double lambda, double mu) {
    if (!(lambda > 0.0) || !(mu > 0.0)) throw InputError("Beta integral needs positive parameters");
    return tanh_sinh([&](double, double da, double db) { return cplx{std::pow(da, lambda - 1.0) * std::pow(db, mu - 1.0)}; },
                     0.0, 1.0, 1e-14)
        .value.real();
}

double BetaSuiteReport::max_residual() const {
    double m = std::max(cosine_residual, sine_residual);
    for (double r : residual) m = std::max(m, r);
    return m;
}

BetaSuiteReport beta_identity_suite(double a, double b, double x, double z) {
    if (!(a < 1.0) || !(b < 1.0) || !(a + b > 1.0)) throw InputError("needs a < 1, b < 1, a + b > 1");
    if (x == z) throw InputError("needs x != z");
    const double d = std::abs(x - z);
    const double dn = std::pow(d, a + b - 1.0);
    BetaSuiteReport rep;
    rep.closed[0] = std::tgamma(1.0 - a) * std::tgamma(a + b - 1.0) / std::tgamma(b) / dn;
    rep.closed[1] = std::tgamma(1.0 - a) * std::tgamma(1.0 - b) / std::tgamma(2.0 - a - b) / dn;
    rep.closed[2] = std::tgamma(1.0 - b) * std::tgamma(a + b - 1.0) / std::tgamma(a) / dn;

    // Jacobi-weighted panels absorb the endpoint powers exactly; exponents near
    // -1 leave tails that double-exponential truncation misses
    const QuadratureConfig t = tightened(QuadratureConfig{}, 1e-14, 1e-16);
    auto endpoint = [&](auto&& phi, double p, double T) { return singular_endpoint_integral(phi, p, T, t).value.real(); };
    // int_0^inf s^-p (s+1)^-q ds, split at s = 1 and folded by s = 1/r
    auto half_line = [&](double p, double q) {
        const double head = endpoint([q](double s) { return cplx{std::pow(1.0 + s, -q)}; }, -p, 1.0);
        const double tail = endpoint([q](double r) { return cplx{std::pow(1.0 + r, -q)}; }, p + q - 2.0, 1.0);
        return (head + tail) / dn;
    };
    rep.quadrature[0] = half_line(a, b);
    rep.quadrature[1] = endpoint([&](double s) { return cplx{std::pow(d - s, -b)}; }, -a, 0.5 * d) +
                        endpoint([&](double s) { return cplx{std::pow(d - s, -a)}; }, -b, 0.5 * d);
    rep.quadrature[2] = half_line(b, a);
    for (int k = 0; k < 3; ++k) rep.residual[k] = std::abs(rep.quadrature[k] - rep.closed[k]) / rep.closed[k];

    const double t1 = std::cos(a * kPi) * rep.quadrature[0], t2 = rep.quadrature[1], t3 = std::cos(b * kPi) * rep.quadrature[2];
    rep.cosine_residual = std::abs(t1 + t2 + t3) / (std::abs(t1) + std::abs(t2) + std::abs(t3));
    const double s1 = std::sin(a * kPi) * std::tgamma(1.0 - a) / std::tgamma(b);
    const double s2 = std::sin(b * kPi) * std::tgamma(1.0 - b) / std::tgamma(a);
    rep.sine_residual = std::abs(s1 - s2) / std::max(std::abs(s1), 1e-300);
    return rep;
}

cplx h_function(HKind kind, double g, double w, double tau) {
    switch (kind) {
        case HKind::UpperPlus: return principal_power(cplx{w, tau}, -g, CutOrientation::PlusAxis);
        case HKind::UpperMinus: return principal_power(cplx{w, tau}, -g, CutOrientation::MinusAxis);
        case HKind::LowerPlus: return -principal_power(cplx{w, -tau}, -g, CutOrientation::PlusAxis);
        case HKind::LowerMinus: return -principal_power(cplx{w, -tau}, -g, CutOrientation::MinusAxis);
    }
    return 0.0;
}

const char* to_string(HKind k) {
    switch (k) {
        case HKind::UpperPlus: return "h^+";
        case HKind::UpperMinus: return "h^-";
        case HKind::LowerPlus: return "h_+";
        case HKind::LowerMinus: return "h_-";
    }
    return "?";
}

std::array<std::pair<HKind, HKind>, 8> tabulated_combos() {
    using H = HKind;
    return {{{H::UpperPlus, H::UpperPlus},
             {H::LowerPlus, H::LowerPlus},
             {H::UpperPlus, H::UpperMinus},
             {H::LowerPlus, H::LowerMinus},
             {H::UpperMinus, H::UpperPlus},
             {H::LowerMinus, H::LowerPlus},
             {H::UpperMinus, H::UpperMinus},
             {H::LowerMinus, H::LowerMinus}}};
}

std::array<std::pair<HKind, HKind>, 8> vanishing_combos() {
    using H = HKind;
    return {{{H::UpperPlus, H::LowerPlus},
             {H::UpperMinus, H::LowerMinus},
             {H::UpperPlus, H::LowerMinus},
             {H::UpperMinus, H::LowerPlus},
             {H::LowerPlus, H::UpperPlus},
             {H::LowerMinus, H::UpperMinus},
             {H::LowerMinus, H::UpperPlus},
             {H::LowerPlus, H::UpperMinus}}};
}

namespace {

bool is_upper(HKind k) { return k == HKind::UpperPlus || k == HKind::UpperMinus; }

cplx tabulated_value(HKind p, HKind q, double a, double b, bool x_less, cplx G) {
    using H = HKind;
    auto E = [](double c) { return std::exp(cplx{0.0, kPi * c}); };
    if (is_upper(p) && is_upper(q)) return x_less ? E(-(a + b)) * G : -G;
    if (p == H::LowerPlus && q == H::LowerPlus) return x_less ? -E(-(a + b)) * G : E(-2.0 * (a + b)) * G;
    if (p == H::LowerPlus && q == H::LowerMinus) return x_less ? -E(-(a - b)) * G : E(-2.0 * a) * G;
    if (p == H::LowerMinus && q == H::LowerPlus) return x_less ? -E(a - b) * G : E(-2.0 * b) * G;
    if (p == H::LowerMinus && q == H::LowerMinus) return x_less ? -E(a + b) * G : G;
    return 0.0;
}

}  // namespace

PhaseTableCase phase_table_check(HKind first, HKind second, double a, double b, double x, double z,
                                 const QuadratureConfig& cfg) {
    if (!(a < 1.0) || !(b < 1.0) || !(a + b > 1.0)) throw InputError("needs a < 1, b < 1, a + b > 1");
    if (x == z) throw InputError("needs x != z");
    PhaseTableCase out;
    out.first = first;
    out.second = second;
    out.x_less_than_z = x < z;
    out.vanishing = is_upper(first) != is_upper(second);
    const double d = std::abs(x - z);
    const cplx G = cplx{0.0, kTwoPi} * std::tgamma(a + b - 1.0) / (std::pow(d, a + b - 1.0) * std::tgamma(a) * std::tgamma(b));
    out.expected = tabulated_value(first, second, a, b, x < z, G);

    const QuadratureConfig t = tightened(cfg, 1e-11, 1e-14);
    const double lo = std::min(x, z), hi = std::max(x, z);
    auto integral = [&](double tau) {
        auto prod = [&](double w1, double w2) { return h_function(first, a, w1, tau) * h_function(second, b, w2, tau); };
        // y = lo - t and y = hi + t on the outer rays, exact distances in the middle
        const cplx left = ray_integral([&](double s) { return prod((x - lo) + s, (lo - z) - s); }, 0.0, d + 1.0, t).value;
        const cplx right = ray_integral([&](double s) { return prod((x - hi) - s, (hi - z) + s); }, 0.0, d + 1.0, t).value;
        const bool x_is_lo = x < z;
        const cplx mid = tanh_sinh(
                             [&](double, double da, double db) {
                                 // x - y and y - z from the distances to lo and hi
                                 const double w1 = x_is_lo ? -da : db;
                                 const double w2 = x_is_lo ? -db : da;
                                 return prod(w1, w2);
                             },
                             lo, hi, 1e-13, 14)
                             .value;
        return left + mid + right;
    };
    constexpr double tau1 = 1e-2, tau2 = 1e-3;
    out.at_tau1 = integral(tau1);
    out.at_tau2 = integral(tau2);
    out.extrapolated = out.at_tau2 - tau2 * (out.at_tau1 - out.at_tau2) / (tau1 - tau2);
    out.residual = std::abs(out.extrapolated - out.expected) / std::abs(G);
    return out;
}

KernelCompositionReport negative_order_composition(const Order& alpha, const Order& beta, double x, double z,
                                                   CutOrientation side) {
    if (!alpha.is_real() || !beta.is_real() || !(alpha.re() < 0.0) || !(beta.re() < 0.0))
        throw InputError("negative order composition needs real alpha, beta < 0");
    if (x == z) throw DomainError("kernel is singular at x = z");
    KernelCompositionReport rep;
    const Order sum(alpha.re() + beta.re());
    rep.lhs = kernel_limit(sum, x - z, side);
    const bool plus = side == CutOrientation::PlusAxis;
    const bool support = plus ? x > z : x < z;
    if (support) {
        const double lo = std::min(x, z), hi = std::max(x, z);
        rep.rhs = tanh_sinh(
                      [&](double, double da, double db) {
                          // D+: x - y = db, y - z = da; D-: x - y = -da, y - z = -db
                          const double w1 = plus ? db : -da;
                          const double w2 = plus ? da : -db;
                          return kernel_limit(alpha, w1, side) * kernel_limit(beta, w2, side);
                      },
                      lo, hi, 1e-14)
                      .value;
    }
    const double scale = std::abs(rep.lhs);
    rep.residual = scale > 0 ? std::abs(rep.lhs - rep.rhs) / scale : std::abs(rep.rhs);
    return rep;
}

}  // namespace fracdi
