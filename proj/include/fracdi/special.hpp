#pragma once

#include <complex>

namespace fracdi {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Complex Gamma function. Lanczos approximation (g = 7, 9 terms) with the
/// reflection formula for Re z < 1/4; real arguments go through std::tgamma. Relative accuracy is ~1e-15 on
/// moderate arguments.
/// Throws GammaPoleError at z = 0, -1, -2, ...
cplx gamma(cplx z);

/// 1 / Gamma(z), entire: returns exactly 0 at the poles of Gamma.
cplx rgamma(cplx z);

/// Principal log-Gamma for Re z > 0 (used for large arguments).
cplx lgamma_pos(cplx z);

bool is_nonpositive_integer(cplx z, double tol = 1e-14);
bool is_integer(cplx z, double tol = 1e-14);

}  // namespace fracdi
