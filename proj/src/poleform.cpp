#include "fracdi/poleform.hpp"

#include <cmath>

#include "fracdi/errors.hpp"

namespace fracdi {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double digamma_int(int m) {
    // psi(m) for positive integer m
    double s = -0.57721566490153286061;
    for (int k = 1; k < m; ++k) s += 1.0 / k;
    return s;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

PoleForm PoleForm::lorentzian() {
    const cplx a = 1.0 / cplx{0.0, 2.0};
    return PoleForm{{{a, cplx{0.0, 1.0}, 0}, {-a, cplx{0.0, -1.0}, 0}}};
}

void PoleForm::validate() const {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].n < 0) throw InputError("pole order must be non-negative");
        for (std::size_t j = i + 1; j < terms.size(); ++j)
            if (terms[i].z == terms[j].z) throw InputError("poles must be pairwise distinct");
    }
}

std::vector<cplx> PoleForm::poles() const {
    std::vector<cplx> out;
    for (const auto& t : terms) out.push_back(t.z);
    return out;
}

cplx PoleForm::operator()(cplx z) const { return derivative(0, z); }

cplx PoleForm::derivative(int k, cplx z) const {
    cplx s{0.0};
    for (const auto& t : terms) {
        // d^k (z-p)^-(n+1) = (-1)^k (n+k)!/n! (z-p)^-(n+k+1)
        const double c = ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(std::lgamma(t.n + k + 1.0) - std::lgamma(t.n + 1.0));
        s += c * t.a / std::pow(z - t.z, t.n + k + 1);
    }
    return s;
}

RealFunction rational_function(const PoleForm& h) {
    h.validate();
    RealFunction f;
    f.name = "rational";
    f.value = [h](cplx z) { return h(z); };
    f.deriv = [h](int k, cplx z) { return h.derivative(k, z); };
    f.max_deriv = 150;
    f.growth_left = f.growth_right = h.terms.empty() ? -std::numeric_limits<double>::infinity() : -1.0;
    f.poles = h.poles();
    return f;
}

BranchChoice BranchChoice::straight(const PoleForm& h, cplx z0, double theta) {
    BranchChoice c;
    c.theta = theta;
    c.windings.z_ref = z0 - 1.0;
    for (const auto& t : h.terms) {
        double base = std::arg(z0 - t.z);
        if (base < 0) base += kTwoPi;
        if (base >= kTwoPi) base -= kTwoPi;
        const double eff = rule1_phase(z0, t.z, theta);
        c.windings.phi.push_back(base);
        c.windings.m.push_back(eff < base ? -1 : 0);
    }
    return c;
}

BranchChoice BranchChoice::along(const PoleForm& h, const CutCurve& cut, cplx z_ref) {
    BranchChoice c;
    c.curve = cut;
    c.theta = cut.terminal_angle;
    c.windings = rule2_windings(cut, z_ref, h.poles());
    return c;
}

BranchChoice BranchChoice::along(const PoleForm& h, const CutCurve& cut) {
    // a tiny reference radius: only cut pieces leaving z0 meet the arc
    double rho = 1.0;
    for (const auto& t : h.terms) rho = std::min(rho, 1e-3 * std::abs(t.z - cut.branch_point));
    for (std::size_t i = 1; i < cut.vertices.size(); ++i)
        rho = std::min(rho, 1e-3 * std::abs(cut.vertices[i] - cut.branch_point));
    return along(h, cut, cut.branch_point - rho);
}

cplx closed_frac_deriv_phases(const PoleForm& h, const Order& alpha, cplx z0, const std::vector<double>& phases,
                              UnitPhase branch) {
    h.validate();
    if (phases.size() != h.terms.size()) throw InputError("one phase per pole required");
    const cplx a1 = alpha.value() + 1.0;
    const cplx unit = branch.value(alpha.value());
    cplx sum{0.0};
    for (std::size_t k = 0; k < h.terms.size(); ++k) {
        const PoleTerm& t = h.terms[k];
        const cplx d = z0 - t.z;
        if (d == cplx{0.0}) throw DomainError("evaluation point coincides with a pole");
        const cplx logL{std::log(std::abs(d)), phases[k]};
        if (alpha.cls() == OrderClass::NegInteger) {
            const int n = -alpha.floor();
            const int j = n - t.n - 1;
            if (j >= 0) {
                // finite part of Gamma(-j + delta) L^(n-1-delta) / (n_k! L^n_k)
                const double c = ((j % 2 == 0) ? 1.0 : -1.0) / (factorial(j) * factorial(t.n));
                sum += c * t.a * std::pow(d, j) * (digamma_int(j + 1) - logL);
                continue;
            }
        }
        const cplx g = gamma(alpha.value() + double(t.n) + 1.0) / factorial(t.n);
        sum += g * t.a * std::exp(-a1 * logL) / std::pow(d, t.n);
    }
    return unit * sum;
}

cplx closed_frac_deriv(const PoleForm& h, const Order& alpha, cplx z0, const BranchChoice& choice, UnitPhase branch) {
    if (choice.windings.size() != h.terms.size()) throw InputError("branch choice does not match the pole form");
    if (choice.curve) {
        if (choice.curve->branch_point != z0) throw GeometryError("cut must start at the evaluation point");
        for (const auto& t : h.terms)
            if (choice.curve->distance(t.z) <= 1e-12 * std::max(1.0, std::abs(t.z)))
                throw GeometryError("pole lies on the cut");
    }
    std::vector<double> ph;
    for (std::size_t k = 0; k < choice.windings.size(); ++k) ph.push_back(choice.windings.effective(k));
    return closed_frac_deriv_phases(h, alpha, z0, ph, branch);
}

cplx lorentzian_closed(const Order& alpha, double x, int k) {
    const double R = std::sqrt(1.0 + x * x);
    const double theta = std::asin(x / R) + (2.0 * k + 1.0) * kPi / 2.0;
    if (alpha.cls() == OrderClass::NegInteger) {
        if (alpha.floor() == -1) return theta;
        throw GammaPoleError("Lorentzian family is singular at alpha = -2, -3, ...");
    }
    const cplx a1 = alpha.value() + 1.0;
    const cplx sign = std::exp(cplx{0.0, -kPi * k} * a1);
    return sign * gamma(a1) * std::exp(-a1 * std::log(R)) * std::sin(theta * a1);
}

BranchValueSet branch_value_set(const PoleForm& h, const Order& alpha, cplx z0, int enum_bound, bool with_unit_phase) {
    if (enum_bound < 1) throw InputError("enumeration bound must be at least 1");
    h.validate();
    const std::size_t N = h.terms.size();
    const int width = 2 * enum_bound + 1;
    double points = std::pow(double(width), double(N) + (with_unit_phase ? 1.0 : 0.0));
    if (points > 5e6) throw InputError("winding lattice too large");

    std::vector<double> base(N);
    for (std::size_t k = 0; k < N; ++k) {
        double b = std::arg(z0 - h.terms[k].z);
        if (b < 0) b += kTwoPi;
        base[k] = b;
    }
    auto value_at = [&](const std::vector<int>& m, int n) {
        std::vector<double> ph(N);
        for (std::size_t k = 0; k < N; ++k) ph[k] = base[k] + kTwoPi * m[k];
        return closed_frac_deriv_phases(h, alpha, z0, ph, UnitPhase{n});
    };

    BranchValueSet out;
    std::vector<cplx> all;
    std::vector<int> m(N, -enum_bound);
    const int n_lo = with_unit_phase ? -enum_bound : 0, n_hi = with_unit_phase ? enum_bound : 0;
    for (;;) {
        for (int n = n_lo; n <= n_hi; ++n) all.push_back(value_at(m, n));
        std::size_t k = 0;
        while (k < N && ++m[k] > enum_bound) m[k++] = -enum_bound;
        if (k == N) break;
    }
    out.lattice_points = all.size();
    double scale = 0.0;
    for (cplx v : all) scale = std::max(scale, std::abs(v));
    const double tol = 1e-10 * std::max(scale, 1e-300);
    for (cplx v : all) {
        bool merged = false;
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            if (std::abs(out.values[i] - v) <= tol) {
                ++out.multiplicity[i];
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.values.push_back(v);
            out.multiplicity.push_back(1);
        }
    }

    if (alpha.cls() == OrderClass::RationalPQ) {
        const long q = alpha.q();
        out.bound = static_cast<long>(std::llround(std::pow(double(q), double(N) + 1.0)));
        out.within_bound = static_cast<long>(out.values.size()) <= *out.bound;
        std::vector<int> zero(N, 0);
        const cplx ref = value_at(zero, 0);
        for (std::size_t k = 0; k < N; ++k) {
            std::vector<int> shifted = zero;
            shifted[k] = static_cast<int>(q);
            const cplx v = value_at(shifted, 0);
            if (std::abs(v - ref) > 1e-12 * std::max(1.0, std::abs(ref))) out.periodic = false;
        }
    }
    if (!alpha.is_real()) {
        const cplx a1 = alpha.value() + 1.0;
        for (int s = -enum_bound; s <= enum_bound; ++s)
            out.factors.emplace_back(-kTwoPi * s * a1.real(), std::exp(kTwoPi * s * a1.imag()));
    }
    return out;
}

cplx primitive_difference(int n, const PoleTerm& pole, cplx z0, int m) {
    if (n < 1) throw InputError("primitive order must be positive");
    if (pole.n < 0) throw InputError("pole order must be non-negative");
    if (pole.n >= n) return 0.0;
    const int j = n - pole.n - 1;
    return cplx{0.0, kTwoPi} * double(m) * pole.a * std::pow(z0 - pole.z, j) / (factorial(j) * factorial(pole.n));
}

double reflection_check(const Order& alpha, double x) {
    const cplx lhs = lorentzian_closed(alpha, x, -1);
    const cplx rhs = UnitPhase{0}.value(alpha.value()) * lorentzian_closed(alpha, -x, 0);
    return std::abs(lhs - rhs);
}

}  // namespace fracdi
