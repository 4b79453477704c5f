#include "fracdi/kernel.hpp"

#include <cmath>

#include "fracdi/errors.hpp"
#include "fracdi/quadrature.hpp"

namespace fracdi {

cplx kernel_eps(const Order& alpha, double w, double eps, CutOrientation side, UnitPhase branch) {
    if (!(eps > 0.0)) throw InputError("kernel regularization eps must be positive");
    if (alpha.cls() == OrderClass::NegInteger) throw GammaPoleError("Gamma(alpha+1) has a pole at negative integer alpha");
    const cplx a1 = alpha.value() + 1.0;
    const cplx sign = std::exp(cplx{0.0, 1.0} * kPi * a1 * (2.0 * branch.n + 1.0));
    const cplx pre = sign * gamma(a1) / cplx{0.0, 2.0 * kPi};
    const cplx up = principal_power(cplx{w, eps}, -a1, side);
    const cplx down = principal_power(cplx{w, -eps}, -a1, side);
    return pre * (up - down);
}

cplx kernel_limit(const Order& alpha, double w, CutOrientation side, UnitPhase branch) {
    if (alpha.cls() == OrderClass::NonNegInteger)
        throw NotAFunction("kernel of a non-negative integer order is a derivative of delta");
    if (w == 0.0) throw DomainError("kernel is singular at w = 0");
    const cplx a = alpha.value();
    const cplx drift = std::exp(cplx{0.0, 2.0 * kPi * branch.n} * a);
    if (side == CutOrientation::PlusAxis) {
        if (w < 0.0) return 0.0;
        return drift * std::pow(w, -(a + 1.0)) * rgamma(-a);
    }
    if (w > 0.0) return 0.0;
    return drift * std::exp(cplx{0.0, kPi} * a) * std::pow(-w, -(a + 1.0)) * rgamma(-a);
}

cplx kernel(const KernelParams& p, double w, UnitPhase branch) {
    if (p.eps < 0.0) throw InputError("kernel eps must be non-negative");
    return p.eps == 0.0 ? kernel_limit(p.alpha, w, p.side, branch) : kernel_eps(p.alpha, w, p.eps, p.side, branch);
}

double delta_moment_check(double eps, double R) {
    if (!(eps > 0.0) || !(R > 0.0)) throw InputError("eps and R must be positive");
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-15;
    cfg.abs_tol = 1e-17;
    const Order zero(0.0);
    auto f = [&](double w) { return kernel_eps(zero, w, eps, CutOrientation::PlusAxis); };
    // the peak sits at w = 0; integrate each half with graded panels
    double total = 0.0;
    double lo = 0.0;
    for (double hi = std::min(eps, R); lo < R; hi = std::min(2.0 * hi, R)) {
        total += 2.0 * integrate_adaptive(f, lo, hi, cfg).value.real();
        lo = hi;
    }
    return total;
}

}  // namespace fracdi
