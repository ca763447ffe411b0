#pragma once

// Exact rational and complex-rational scalars.
//
// Rationals are kept in canonical form after every operation: the
// denominator is positive and coprime to the numerator, so structural
// equality is value equality.

#include "hardy/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace hardy {

using BigInt = boost::multiprecision::cpp_int;
using ComplexFloat = std::complex<double>;

inline bool is_finite(const ComplexFloat& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

class Rational {
public:
    Rational() = default;
    Rational(long long value) : num_(value) {} // NOLINT(google-explicit-constructor)
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) {
            throw Error(ErrorKind::construction, "rational with zero denominator");
        }
        canonicalize();
    }
    explicit Rational(BigInt num) : num_(std::move(num)) {}

    /// Exact value of a finite double (binary decomposition, no rounding).
    static Rational from_double(double x) {
        if (!std::isfinite(x)) {
            throw Error(ErrorKind::range, "non-finite float has no rational value");
        }
        if (x == 0.0) {
            return {};
        }
        int exponent = 0;
        const double frac = std::frexp(x, &exponent);
        // frac * 2^53 is an integer with |.| < 2^53
        const auto mantissa = static_cast<std::int64_t>(std::ldexp(frac, 53));
        exponent -= 53;
        BigInt num = mantissa;
        BigInt den = 1;
        if (exponent >= 0) {
            num <<= exponent;
        } else {
            den <<= -exponent;
        }
        return {std::move(num), std::move(den)};
    }

    /// Parses "p/q" or "p" with optional sign on either part.
    static Rational parse(std::string_view text) {
        auto parse_int = [&](std::string_view s) {
            if (s.empty()) {
                throw Error(ErrorKind::parse, "malformed rational '" + std::string(text) + "'");
            }
            std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (start == s.size()) {
                throw Error(ErrorKind::parse, "malformed rational '" + std::string(text) + "'");
            }
            for (std::size_t i = start; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9') {
                    throw Error(ErrorKind::parse, "malformed rational '" + std::string(text) + "'");
                }
            }
            BigInt v(std::string(s.substr(start)));
            return s[0] == '-' ? BigInt(-v) : v;
        };
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) {
            return Rational(parse_int(text));
        }
        return {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
    }

    const BigInt& numerator() const noexcept { return num_; }
    const BigInt& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    int sign() const noexcept { return num_.sign(); }

    Rational inverse() const {
        if (is_zero()) {
            throw Error(ErrorKind::arithmetic, "division by zero");
        }
        return {den_, num_};
    }

    std::string to_string() const { return num_.str() + "/" + den_.str(); }

    /// Nearest double (round-half-even on the exact quotient).
    double to_double() const {
        using boost::multiprecision::msb;
        if (num_.is_zero()) {
            return 0.0;
        }
        const bool negative = num_.sign() < 0;
        const BigInt a = boost::multiprecision::abs(num_);
        // Scale so that the quotient q = floor(a 2^s / den) lies in [2^54, 2^56).
        const long shift = 55 - (static_cast<long>(msb(a)) - static_cast<long>(msb(den_)));
        BigInt scaled_num = a;
        BigInt scaled_den = den_;
        if (shift >= 0) {
            scaled_num <<= shift;
        } else {
            scaled_den <<= -shift;
        }
        BigInt q;
        BigInt rem;
        boost::multiprecision::divide_qr(scaled_num, scaled_den, q, rem);
        const bool sticky = !rem.is_zero();
        auto bits = q.convert_to<std::uint64_t>();
        const int width = 64 - __builtin_clzll(bits);
        const int drop = width - 53;
        std::uint64_t mantissa = bits >> drop;
        const std::uint64_t low = bits & ((std::uint64_t{1} << drop) - 1);
        const std::uint64_t half = std::uint64_t{1} << (drop - 1);
        if (low > half || (low == half && (sticky || (mantissa & 1U) != 0))) {
            ++mantissa;
        }
        const double value = std::ldexp(static_cast<double>(mantissa), drop - static_cast<int>(shift));
        if (!std::isfinite(value)) {
            throw Error(ErrorKind::range, "rational " + to_string() + " overflows double");
        }
        return negative ? -value : value;
    }

    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        canonicalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        canonicalize();
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        canonicalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) {
            throw Error(ErrorKind::arithmetic, "division by zero");
        }
        num_ *= o.den_;
        den_ *= o.num_;
        canonicalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) {
            return std::strong_ordering::less;
        }
        if (lhs > rhs) {
            return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    void canonicalize() {
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_{0};
    BigInt den_{1};
};

/// Exact Gaussian rational re + i*im.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() = default;
    ComplexRational(Rational real) : re(std::move(real)) {} // NOLINT(google-explicit-constructor)
    ComplexRational(long long real) : re(real) {}           // NOLINT(google-explicit-constructor)
    ComplexRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

    bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
    bool is_real() const noexcept { return im.is_zero(); }

    ComplexRational conj() const { return {re, -im}; }
    ComplexRational operator-() const { return {-re, -im}; }

    /// |a|^2, exact.
    Rational norm_sq() const { return re * re + im * im; }

    ComplexRational& operator+=(const ComplexRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ComplexRational& operator-=(const ComplexRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    ComplexRational& operator*=(const ComplexRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    ComplexRational& operator/=(const ComplexRational& o) {
        if (o.is_zero()) {
            throw Error(ErrorKind::arithmetic, "division by zero");
        }
        const Rational d = o.norm_sq();
        Rational r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) = default;

    friend std::ostream& operator<<(std::ostream& os, const ComplexRational& z) {
        return os << z.re << (z.im.sign() < 0 ? " - " : " + ") << (z.im.sign() < 0 ? -z.im : z.im) << "i";
    }
};

inline ComplexRational conj(const ComplexRational& z) { return z.conj(); }

inline double to_float(const Rational& r) { return r.to_double(); }

/// Nearest-float rounding of each part.
inline ComplexFloat to_float(const ComplexRational& z) { return {z.re.to_double(), z.im.to_double()}; }

inline ComplexRational complex_from_float(const ComplexFloat& z) {
    return {Rational::from_double(z.real()), Rational::from_double(z.imag())};
}

} // namespace hardy
