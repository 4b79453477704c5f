#pragma once

#include "fracdi/branchcut.hpp"
#include "fracdi/order.hpp"

namespace fracdi {

struct KernelParams {
    Order alpha;
    CutOrientation side = CutOrientation::PlusAxis;
    double eps = 0.0;  // 0 selects the limiting kernel
};

/// E(w, eps) = ((-1)^(a+1) Gamma(a+1) / 2 i pi) ((w + i eps)^-(a+1) - (w - i eps)^-(a+1)).
/// Throws GammaPoleError for negative integer orders.
cplx kernel_eps(const Order& alpha, double w, double eps, CutOrientation side, UnitPhase branch = {});

/// eps -> 0 limit. D+ is w^-(a+1) / Gamma(-a) for w > 0, D- is
/// exp(i pi a) |w|^-(a+1) / Gamma(-a) for w < 0, zero on the other side.
/// Negative integers give the n-fold integration kernel; non-negative integers
/// throw NotAFunction.
cplx kernel_limit(const Order& alpha, double w, CutOrientation side, UnitPhase branch = {});

cplx kernel(const KernelParams& p, double w, UnitPhase branch = {});

/// Integral of the alpha = 0 kernel over [-R, R].
double delta_moment_check(double eps, double R);

}  // namespace fracdi
