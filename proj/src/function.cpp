#include "fracdi/function.hpp"

#include <cmath>

#include "fracdi/errors.hpp"
#include "fracdi/expression.hpp"
#include "fracdi/order.hpp"

namespace fracdi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

cplx central_difference(const std::function<cplx(double)>& g, int k, double x, double h) {
    cplx s{0.0};
    for (int j = 0; j <= k; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        s += sign * binom(k, j) * g(x + (0.5 * k - j) * h);
    }
    return s / std::pow(h, k);
}

}  // namespace

cplx fd_derivative(const std::function<cplx(double)>& g, int k, double x, double h0, double* err) {
    if (k < 0) throw InputError("derivative order must be non-negative");
    if (k == 0) {
        if (err) *err = 0.0;
        return g(x);
    }
    constexpr int kTab = 12;
    constexpr double kCon = 1.4, kCon2 = kCon * kCon;
    cplx a[kTab][kTab];
    double h = h0;
    a[0][0] = central_difference(g, k, x, h);
    double best_err = kInf;
    cplx best = a[0][0];
    for (int i = 1; i < kTab; ++i) {
        h /= kCon;
        a[0][i] = central_difference(g, k, x, h);
        double fac = kCon2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= kCon2;
            const double e = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
            if (e <= best_err) {
                best_err = e;
                best = a[j][i];
            }
        }
        if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * best_err) break;
    }
    if (err) *err = best_err;
    return best;
}

cplx RealFunction::derivative(int k, cplx z, bool* approximate, double* err) const {
    if (k == 0) {
        if (err) *err = 0.0;
        return value(z);
    }
    if (has_oracle(k)) {
        if (err) *err = 0.0;
        return deriv(k, z);
    }
    if (approximate) *approximate = true;
    return fd_derivative([&](double t) { return value(z + t); }, k, 0.0, 0.1, err);
}

RealFunction exp_function(cplx c) {
    RealFunction f;
    f.name = "exp(" + Order(c).to_string() + ")";
    f.value = [c](cplx z) { return std::exp(c * z); };
    f.deriv = [c](int k, cplx z) { return std::pow(c, k) * std::exp(c * z); };
    f.max_deriv = 1 << 20;
    f.growth_left = c.real() > 0 ? -kInf : c.real() == 0 ? 0.0 : kInf;
    f.growth_right = c.real() < 0 ? -kInf : c.real() == 0 ? 0.0 : kInf;
    return f;
}

RealFunction lorentzian() {
    // 1/(1+z^2) = a/(z-i) - a/(z+i), a = 1/(2i)
    const cplx a = 1.0 / cplx{0.0, 2.0};
    const cplx I{0.0, 1.0};
    RealFunction f;
    f.name = "lorentzian";
    f.value = [](cplx z) { return 1.0 / (1.0 + z * z); };
    f.deriv = [a, I](int k, cplx z) {
        const double fact = std::tgamma(k + 1.0) * ((k % 2 == 0) ? 1.0 : -1.0);
        return fact * (a / std::pow(z - I, k + 1) - a / std::pow(z + I, k + 1));
    };
    f.max_deriv = 150;
    f.growth_left = f.growth_right = -2.0;
    f.poles = {I, -I};
    return f;
}

RealFunction gaussian() {
    RealFunction f;
    f.name = "gaussian";
    f.value = [](cplx z) { return std::exp(-z * z); };
    f.deriv = [](int k, cplx z) {
        // d^k exp(-z^2) = (-1)^k H_k(z) exp(-z^2)
        cplx h0{1.0}, h1 = 2.0 * z;
        cplx hk = k == 0 ? h0 : h1;
        for (int j = 1; j < k; ++j) {
            hk = 2.0 * z * h1 - 2.0 * double(j) * h0;
            h0 = h1;
            h1 = hk;
        }
        return ((k % 2 == 0) ? 1.0 : -1.0) * hk * std::exp(-z * z);
    };
    f.max_deriv = 60;
    f.growth_left = f.growth_right = -kInf;
    return f;
}

RealFunction reflected(const RealFunction& f) {
    RealFunction g;
    g.name = f.name + "(-x)";
    g.value = [v = f.value](cplx z) { return v(-z); };
    if (f.deriv)
        g.deriv = [d = f.deriv](int k, cplx z) { return ((k % 2 == 0) ? 1.0 : -1.0) * d(k, -z); };
    g.max_deriv = f.max_deriv;
    g.growth_left = f.growth_right;
    g.growth_right = f.growth_left;
    for (cplx p : f.poles) g.poles.push_back(-p);
    return g;
}

RealFunction linear_combination(cplx a, const RealFunction& f, cplx b, const RealFunction& g) {
    RealFunction h;
    h.name = "lincomb";
    h.value = [a, b, fv = f.value, gv = g.value](cplx z) { return a * fv(z) + b * gv(z); };
    if (f.deriv && g.deriv) {
        h.deriv = [a, b, fd = f.deriv, gd = g.deriv](int k, cplx z) { return a * fd(k, z) + b * gd(k, z); };
        h.max_deriv = std::min(f.max_deriv, g.max_deriv);
    }
    h.growth_left = std::max(f.growth_left, g.growth_left);
    h.growth_right = std::max(f.growth_right, g.growth_right);
    h.poles = f.poles;
    h.poles.insert(h.poles.end(), g.poles.begin(), g.poles.end());
    return h;
}

RealFunction shifted(const RealFunction& f, cplx z0, cplx nu) {
    RealFunction g;
    g.name = f.name + "(shifted)";
    g.value = [v = f.value, z0, nu](cplx z) { return v(z0 + nu * z); };
    if (f.deriv) g.deriv = [d = f.deriv, z0, nu](int k, cplx z) { return std::pow(nu, k) * d(k, z0 + nu * z); };
    g.max_deriv = f.max_deriv;
    for (cplx p : f.poles) g.poles.push_back((p - z0) / nu);
    return g;
}

RealFunction make_catalog_function(const std::string& spec) {
    if (spec == "lorentzian") return lorentzian();
    if (spec == "gaussian") return gaussian();
    if (spec == "exp") return exp_function(1.0);
    if (spec.rfind("exp(", 0) == 0 && spec.back() == ')')
        return exp_function(parse_order(spec.substr(4, spec.size() - 5)).value());
    if (spec.rfind("expr:", 0) == 0) return from_expression(spec.substr(5));
    throw InputError("unknown function '" + spec + "' (expected exp(c), lorentzian, gaussian, expr:<text>)");
}

}  // namespace fracdi
