#pragma once

#include <complex>
#include <string>

#include "fracdi/special.hpp"

namespace fracdi {

enum class OrderClass { NonNegInteger, NegInteger, RationalPQ, Other };

/// A complex differintegration order alpha = alpha1 + i alpha2, together with
/// its split alpha1 = n + frac (0 <= frac < 1) and its classification.
class Order {
public:
    Order() : Order(cplx{0.0}) {}
    /// Real rational orders given as decimals are detected by continued
    /// fractions (denominator <= 64, within 1e-12).
    Order(cplx value);  // NOLINT(google-explicit-constructor)
    Order(double value) : Order(cplx{value}) {}  // NOLINT(google-explicit-constructor)
    static Order rational(long p, long q);

    cplx value() const noexcept { return value_; }
    double re() const noexcept { return value_.real(); }
    double im() const noexcept { return value_.imag(); }
    int floor() const noexcept { return n_; }
    /// alpha - floor(alpha1); complex when alpha is.
    cplx frac() const noexcept { return value_ - double(n_); }
    OrderClass cls() const noexcept { return cls_; }
    long p() const noexcept { return p_; }
    long q() const noexcept { return q_; }

    bool is_integer() const noexcept { return cls_ == OrderClass::NonNegInteger || cls_ == OrderClass::NegInteger; }
    bool is_real() const noexcept { return value_.imag() == 0.0; }

    std::string to_string() const;

private:
    cplx value_;
    int n_ = 0;
    OrderClass cls_ = OrderClass::Other;
    long p_ = 0;
    long q_ = 1;
};

/// The global factor (-1)^alpha = exp(i alpha (2n+1) pi); branch n is chosen by
/// the caller and defaults to 0.
struct UnitPhase {
    int n = 0;
    cplx value(cplx alpha) const;
};

/// Parses "0.5", "1/2", "0.5+0.2i", "-0.3i", "2".
Order parse_order(const std::string& text);

const char* to_string(OrderClass c);

}  // namespace fracdi
