#include "fracdi/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>

#include "fracdi/errors.hpp"

namespace fracdi {

namespace {

constexpr int kPanelNodes = 20;

Rule make_gauss_legendre(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

cplx gl_panel(const RealToComplex& f, double a, double b, int n) {
    const Rule& r = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s{0.0};
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
    return s * h;
}

}  // namespace

const Rule& gauss_legendre(int n) {
    if (n < 1) throw InputError("Gauss-Legendre order must be positive");
    static std::mutex mu;
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

Rule gauss_jacobi(int n, double a, double b) {
    if (n < 2) throw InputError("Gauss-Jacobi needs at least 2 nodes");
    if (!(a > -1.0) || !(b > -1.0)) throw InputError("Gauss-Jacobi exponents must exceed -1");
    const double ab = a + b;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        J(k, k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n) {
            const int m = k + 1;
            const double t = 2.0 * m + ab;
            double beta2;
            if (m == 1)
                beta2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
            else
                beta2 = 4.0 * m * (m + a) * (m + b) * (m + ab) / (t * t * (t + 1.0) * (t - 1.0));
            J(k, k + 1) = J(k + 1, k) = std::sqrt(beta2);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(ab + 2.0));
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        r.x[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        r.w[i] = mu0 * v * v;
    }
    return r;
}

QuadResult integrate_adaptive(const RealToComplex& f, double a, double b, const QuadratureConfig& cfg) {
    QuadResult out;
    if (a == b) return out;
    struct Piece {
        double a, b;
        cplx whole;
        int depth;
    };
    std::vector<Piece> stack{{a, b, gl_panel(f, a, b, kPanelNodes), 0}};
    int budget = cfg.max_subdivisions;
    while (!stack.empty()) {
        Piece p = stack.back();
        stack.pop_back();
        const double m = 0.5 * (p.a + p.b);
        const cplx left = gl_panel(f, p.a, m, kPanelNodes);
        const cplx right = gl_panel(f, m, p.b, kPanelNodes);
        const cplx fine = left + right;
        const double diff = std::abs(fine - p.whole);
        if (!std::isfinite(diff)) throw ConvergenceError("non-finite integrand value");
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(fine));
        if (diff <= tol || p.depth >= 50 || --budget <= 0 || m == p.a || m == p.b) {
            out.value += fine;
            out.err += diff;
            continue;
        }
        stack.push_back({p.a, m, left, p.depth + 1});
        stack.push_back({m, p.b, right, p.depth + 1});
    }
    return out;
}

QuadResult tanh_sinh(const EndpointIntegrand& f, double a, double b, double tol, int max_level) {
    const double half = 0.5 * (b - a);
    constexpr double kTMax = 4.0;
    auto term = [&](double t) -> cplx {
        const double s = 0.5 * kPi * std::sinh(t);
        const double e = std::exp(-2.0 * std::abs(s));
        // distances to the near and far end, scaled by the interval length
        const double near = (b - a) * e / (1.0 + e);
        const double far = (b - a) / (1.0 + e);
        const double da = s < 0 ? near : far;
        const double db = s < 0 ? far : near;
        if (da <= 0.0 || db <= 0.0) return cplx{0.0};
        const double ch = std::cosh(s);
        const double w = half * 0.5 * kPi * std::cosh(t) / (ch * ch);
        const double x = s < 0 ? a + da : b - db;
        const cplx v = f(x, da, db);
        if (w == 0.0) return cplx{0.0};
        return w * v;
    };
    double h = 1.0;
    cplx sum = term(0.0);
    for (int j = 1; j * h <= kTMax; ++j) sum += term(j * h) + term(-j * h);
    cplx prev = sum * h;
    QuadResult out{prev, std::abs(prev)};
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (int j = 1; j * h <= kTMax; j += 2) sum += term(j * h) + term(-j * h);
        const cplx cur = sum * h;
        out.err = std::abs(cur - prev);
        out.value = cur;
        if (level >= 4 && out.err <= tol * std::max(1.0, std::abs(cur))) break;
        prev = cur;
    }
    return out;
}

namespace {

QuadResult singular_real(const RealToComplex& phi, double p, double T, const QuadratureConfig& cfg, int depth) {
    const Rule gj = gauss_jacobi(std::max(2, cfg.endpoint_nodes), 0.0, p);
    auto gj_panel = [&](double len) {
        cplx s{0.0};
        for (std::size_t i = 0; i < gj.x.size(); ++i) s += gj.w[i] * phi(0.5 * len * (1.0 + gj.x[i]));
        return s * std::pow(0.5 * len, p + 1.0);
    };
    const cplx whole = gj_panel(T);
    const cplx head = gj_panel(0.5 * T);
    const QuadResult rest = integrate_adaptive(
        [&](double t) { return std::pow(t, p) * phi(t); }, 0.5 * T, T, cfg);
    const cplx split = head + rest.value;
    const double diff = std::abs(split - whole);
    if (diff <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(split)) || depth >= 40)
        return {split, diff + rest.err};
    QuadResult inner = singular_real(phi, p, 0.5 * T, cfg, depth + 1);
    return {inner.value + rest.value, inner.err + rest.err};
}

}  // namespace

QuadResult singular_endpoint_integral(const RealToComplex& phi, cplx p, double T, const QuadratureConfig& cfg) {
    if (!(p.real() > -1.0)) throw InputError("endpoint exponent must have real part > -1");
    if (!(T > 0.0)) return {};
    if (p.imag() == 0.0) return singular_real(phi, p.real(), T, cfg, 0);

    // complex exponent: geometrically graded panels toward t = 0
    constexpr int kLevels = 45;
    QuadResult out;
    double hi = T;
    for (int j = 0; j < kLevels; ++j) {
        const double lo = 0.5 * hi;
        QuadResult r = integrate_adaptive([&](double t) { return std::pow(t, p) * phi(t); }, lo, hi, cfg);
        out.value += r.value;
        out.err += r.err;
        hi = lo;
    }
    const double delta = hi;
    const double tm = delta * std::abs((p + 1.0) / (p + 2.0));
    const cplx inner = phi(tm) * std::pow(delta, p + 1.0) / (p + 1.0);
    out.value += inner;
    out.err += std::abs(inner) * delta;
    return out;
}

QuadResult ray_integral(const RealToComplex& phi, cplx p, double scale, const QuadratureConfig& cfg) {
    const double h = 0.5;
    QuadResult out = singular_endpoint_integral(phi, p, h, cfg);
    auto g = [&](double t) { return std::pow(t, p) * phi(t); };
    const double reach = std::max({4.0, 2.0 * std::abs(scale), cfg.truncation_radius});
    double a = h;
    double last = -1.0;
    for (int j = 0; j < 1100; ++j) {
        const double b = 2.0 * a;
        QuadResult r = integrate_adaptive(g, a, b, cfg);
        out.value += r.value;
        out.err += r.err;
        const double c = std::abs(r.value);
        if (a >= reach) {
            const double ratio = last > 0.0 ? c / last : 1.0;
            const double tail = ratio < 0.95 ? c * ratio / (1.0 - ratio) : c * 20.0;
            const double target = 0.1 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
            if (c + tail <= target || (c == 0.0 && last == 0.0)) {
                // geometric tail of the remaining panels
                if (ratio < 0.95) out.value += r.value * (ratio / (1.0 - ratio));
                out.err += tail;
                return out;
            }
        }
        last = c;
        a = b;
        if (!std::isfinite(a)) break;
    }
    throw ConvergenceError("ray integral did not converge (integrand tail does not decay)");
}

}  // namespace fracdi
