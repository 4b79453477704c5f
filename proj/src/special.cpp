#include "fracdi/special.hpp"

#include <array>
#include <cmath>

#include "fracdi/errors.hpp"

namespace fracdi {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re z > 0.
cplx lanczos_log(cplx z) {
    z -= 1.0;
    cplx x = kLanczosCoef[0];
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) x += kLanczosCoef[i] / (z + double(i));
    const cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

bool is_integer(cplx z, double tol) {
    return std::abs(z.imag()) <= tol && std::abs(z.real() - std::round(z.real())) <= tol * std::max(1.0, std::abs(z.real()));
}

bool is_nonpositive_integer(cplx z, double tol) {
    return is_integer(z, tol) && std::round(z.real()) <= 0.0;
}

cplx lgamma_pos(cplx z) { return lanczos_log(z); }

cplx gamma(cplx z) {
    if (is_nonpositive_integer(z, 0.0)) throw GammaPoleError("Gamma has a pole at non-positive integer argument");
    if (z.imag() == 0.0 && z.real() <= 171.0) return std::tgamma(z.real());
    if (z.real() < 0.25) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
    }
    return std::exp(lanczos_log(z));
}

cplx rgamma(cplx z) {
    if (is_nonpositive_integer(z, 0.0)) return 0.0;
    if (z.imag() == 0.0 && z.real() <= 171.0) return 1.0 / std::tgamma(z.real());
    if (z.real() < 0.25) return std::sin(kPi * z) * gamma(1.0 - z) / kPi;
    return std::exp(-lanczos_log(z));
}

}  // namespace fracdi
