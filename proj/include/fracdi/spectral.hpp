#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracdi/branchcut.hpp"
#include "fracdi/order.hpp"

namespace fracdi {

/// Uniform samples x_j = x0 + j dx, j = 0..N-1.
struct SampledGrid {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<cplx> values;

    static SampledGrid sample(const std::function<cplx(double)>& f, double lo, double hi, std::size_t n);
    double x(std::size_t j) const { return x0 + dx * double(j); }
    std::size_t size() const { return values.size(); }
    void validate() const;
};

enum class DCMode { ZeroDC, RequireZeroMean, Error };
enum class Window { None, Exponential };

struct SpectralConfig {
    std::optional<DCMode> dc_mode;  // unset: ZeroDC for Re alpha > 0, RequireZeroMean otherwise
    Window window = Window::None;
    double decay = 0.0;  // taper exp(-decay |x - centre|)
    CutOrientation side = CutOrientation::PlusAxis;
};

/// Multiplier applied to the discrete transform at wavenumber kappa.
cplx spectral_multiplier(double kappa, const Order& alpha, CutOrientation side);

SampledGrid fft_frac_deriv(const SampledGrid& grid, const Order& alpha, const SpectralConfig& cfg = {});

/// Forward then inverse transform; the identity up to rounding.
std::vector<cplx> fft_round_trip(const std::vector<cplx>& values);

}  // namespace fracdi
