#include "fracdi/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "fracdi/errors.hpp"

namespace fracdi {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// In-place transform; sign -1 is exp(-i kappa x).
void transform(std::vector<cplx>& data, int sign) {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), p, p, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
}

}  // namespace

SampledGrid SampledGrid::sample(const std::function<cplx(double)>& f, double lo, double hi, std::size_t n) {
    if (n < 8) throw InputError("grid needs at least 8 samples");
    if (!(hi > lo)) throw InputError("grid needs lo < hi");
    SampledGrid g;
    g.x0 = lo;
    g.dx = (hi - lo) / double(n - 1);
    g.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) g.values[j] = f(g.x(j));
    return g;
}

void SampledGrid::validate() const {
    if (values.size() < 8) throw InputError("grid needs at least 8 samples");
    if (!(dx > 0.0) || !std::isfinite(dx)) throw InputError("grid spacing must be positive");
}

cplx spectral_multiplier(double kappa, const Order& alpha, CutOrientation side) {
    // exp(-i kappa x) transforms turn (-ik)^alpha into (i kappa)^alpha. D+ needs
    // analyticity in the upper k half-plane, which is the (0,-inf) cut.
    const CutOrientation cut = side == CutOrientation::PlusAxis ? CutOrientation::MinusAxis : CutOrientation::PlusAxis;
    return principal_power(cplx{0.0, kappa}, alpha.value(), cut);
}

std::vector<cplx> fft_round_trip(const std::vector<cplx>& values) {
    std::vector<cplx> data = values;
    transform(data, FFTW_FORWARD);
    transform(data, FFTW_BACKWARD);
    for (cplx& v : data) v /= double(data.size());
    return data;
}

SampledGrid fft_frac_deriv(const SampledGrid& grid, const Order& alpha, const SpectralConfig& cfg) {
    grid.validate();
    if (cfg.decay < 0.0) throw InputError("window decay must be non-negative");
    if (!(alpha.re() > -1.0)) throw InputError("spectral operator needs Re(alpha) > -1");
    const std::size_t N = grid.size();
    SampledGrid out = grid;
    if (alpha.value() == cplx{0.0}) return out;

    std::vector<cplx> data = grid.values;
    if (cfg.window == Window::Exponential) {
        const double centre = grid.x0 + 0.5 * grid.dx * double(N - 1);
        for (std::size_t j = 0; j < N; ++j) data[j] *= std::exp(-cfg.decay * std::abs(grid.x(j) - centre));
    } else {
        double peak = 0.0;
        for (const cplx& v : data) peak = std::max(peak, std::abs(v));
        const double edge = std::max(std::abs(data.front()), std::abs(data.back()));
        if (edge >= 1e-6 * peak) throw BoundaryError("samples do not decay toward the grid ends");
    }

    const bool positive = alpha.re() > 0.0;
    const DCMode mode = cfg.dc_mode.value_or(positive ? DCMode::ZeroDC : DCMode::RequireZeroMean);
    cplx sum{0.0};
    double mass = 0.0;
    for (const cplx& v : data) {
        sum += v;
        mass += std::abs(v);
    }
    if (!positive && mass > 0.0) {
        const double rel = std::abs(sum) / mass;
        if (mode == DCMode::Error && rel > 1e-14) throw DCError("nonzero mean with a negative order");
        if (mode == DCMode::RequireZeroMean && rel > 1e-8) throw DCError("negative order requires zero-mean samples");
    }

    transform(data, FFTW_FORWARD);
    const double dk = 2.0 * kPi / (double(N) * grid.dx);
    data[0] = 0.0;
    for (std::size_t j = 1; j < N; ++j) {
        const double idx = j <= N / 2 ? double(j) : double(j) - double(N);
        data[j] *= spectral_multiplier(idx * dk, alpha, cfg.side);
    }
    transform(data, FFTW_BACKWARD);
    for (std::size_t j = 0; j < N; ++j) out.values[j] = data[j] / double(N);
    return out;
}

}  // namespace fracdi
