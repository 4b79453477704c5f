#include "fracdi/order.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fracdi/errors.hpp"

namespace fracdi {

namespace {

constexpr long kMaxDetectedDenominator = 64;

bool detect_rational(double x, long& p, long& q) {
    // continued-fraction convergents
    long h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    double r = x;
    for (int it = 0; it < 32; ++it) {
        const double a = std::floor(r);
        if (std::abs(a) > 1e9) return false;
        const long ai = static_cast<long>(a);
        const long h2 = ai * h0 + h1;
        const long k2 = ai * k0 + k1;
        h1 = h0; h0 = h2;
        k1 = k0; k0 = k2;
        if (k0 > kMaxDetectedDenominator) return false;
        if (std::abs(x - double(h0) / double(k0)) <= 1e-12 * std::max(1.0, std::abs(x))) {
            p = h0;
            q = k0;
            return true;
        }
        const double f = r - a;
        if (f == 0.0) return false;
        r = 1.0 / f;
    }
    return false;
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto* b = s.data();
    const auto* e = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e) throw InputError("cannot parse number '" + std::string(s) + "'");
    return v;
}

}  // namespace

Order::Order(cplx value) : value_(value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) throw InputError("order must be finite");
    n_ = static_cast<int>(std::floor(value.real()));
    if (value.imag() != 0.0) {
        cls_ = OrderClass::Other;
        return;
    }
    if (value.real() == std::round(value.real())) {
        n_ = static_cast<int>(std::round(value.real()));
        cls_ = n_ >= 0 ? OrderClass::NonNegInteger : OrderClass::NegInteger;
        p_ = n_;
        q_ = 1;
        return;
    }
    long p = 0, q = 1;
    if (detect_rational(value.real(), p, q)) {
        cls_ = OrderClass::RationalPQ;
        p_ = p;
        q_ = q;
    }
}

Order Order::rational(long p, long q) {
    if (q == 0) throw InputError("rational order with zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    const long g = std::gcd(p, q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    Order o(double(p) / double(q));
    if (q != 1) {
        o.cls_ = OrderClass::RationalPQ;
        o.p_ = p;
        o.q_ = q;
    }
    return o;
}

std::string Order::to_string() const {
    std::ostringstream os;
    os.precision(17);
    if (cls_ == OrderClass::RationalPQ) {
        os << p_ << '/' << q_;
    } else if (value_.imag() == 0.0) {
        os << value_.real();
    } else {
        os << value_.real() << (value_.imag() < 0 ? "" : "+") << value_.imag() << 'i';
    }
    return os.str();
}

cplx UnitPhase::value(cplx alpha) const {
    return std::exp(cplx{0.0, 1.0} * alpha * (2.0 * n + 1.0) * kPi);
}

const char* to_string(OrderClass c) {
    switch (c) {
        case OrderClass::NonNegInteger: return "NonNegInteger";
        case OrderClass::NegInteger: return "NegInteger";
        case OrderClass::RationalPQ: return "RationalPQ";
        case OrderClass::Other: return "Other";
    }
    return "?";
}

Order parse_order(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    if (text.empty()) throw InputError("empty order");

    if (auto slash = text.find('/'); slash != std::string::npos) {
        long p = 0, q = 0;
        const std::string ps = text.substr(0, slash), qs = text.substr(slash + 1);
        auto r1 = std::from_chars(ps.data() + (ps[0] == '+'), ps.data() + ps.size(), p);
        auto r2 = std::from_chars(qs.data(), qs.data() + qs.size(), q);
        if (r1.ec != std::errc{} || r1.ptr != ps.data() + ps.size() || r2.ec != std::errc{} ||
            r2.ptr != qs.data() + qs.size())
            throw InputError("cannot parse rational order '" + raw + "'");
        return Order::rational(p, q);
    }

    if (text.back() == 'i') {
        const std::string body = text.substr(0, text.size() - 1);
        // split at the last sign that is not part of an exponent and not leading
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        double re = 0.0, im = 0.0;
        if (split == std::string::npos) {
            im = body.empty() || body == "+" ? 1.0 : body == "-" ? -1.0 : parse_double(body);
        } else {
            re = parse_double(body.substr(0, split));
            const std::string ims = body.substr(split);
            im = ims == "+" ? 1.0 : ims == "-" ? -1.0 : parse_double(ims);
        }
        return Order(cplx{re, im});
    }
    return Order(parse_double(text));
}

}  // namespace fracdi
