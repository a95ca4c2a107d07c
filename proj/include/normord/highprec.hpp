#pragma once

#include "normord/arith.hpp"

#include <mpfr.h>

#include <string>

namespace normord {

inline constexpr unsigned kDefaultPrecisionDigits = 50;

// Arbitrary-precision binary float carrying a working precision in decimal
// digits. Mixed-precision arithmetic runs at the larger of the two.
class HighPrecReal {
public:
    explicit HighPrecReal(unsigned digits = kDefaultPrecisionDigits);
    HighPrecReal(const BigRat& value, unsigned digits = kDefaultPrecisionDigits);
    HighPrecReal(long value, unsigned digits = kDefaultPrecisionDigits);
    // Decimal string such as "1e-30" or "3.25".
    static HighPrecReal from_string(const std::string& text, unsigned digits = kDefaultPrecisionDigits);

    HighPrecReal(const HighPrecReal& other);
    HighPrecReal(HighPrecReal&& other) noexcept;
    HighPrecReal& operator=(const HighPrecReal& other);
    HighPrecReal& operator=(HighPrecReal&& other) noexcept;
    ~HighPrecReal();

    unsigned digits() const { return digits_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    HighPrecReal& operator+=(const HighPrecReal& o);
    HighPrecReal& operator-=(const HighPrecReal& o);
    HighPrecReal& operator*=(const HighPrecReal& o);
    HighPrecReal& operator/=(const HighPrecReal& o);
    friend HighPrecReal operator+(HighPrecReal a, const HighPrecReal& b) { return a += b; }
    friend HighPrecReal operator-(HighPrecReal a, const HighPrecReal& b) { return a -= b; }
    friend HighPrecReal operator*(HighPrecReal a, const HighPrecReal& b) { return a *= b; }
    friend HighPrecReal operator/(HighPrecReal a, const HighPrecReal& b) { return a /= b; }
    HighPrecReal operator-() const;

    friend bool operator<(const HighPrecReal& a, const HighPrecReal& b);
    friend bool operator>(const HighPrecReal& a, const HighPrecReal& b) { return b < a; }
    friend bool operator<=(const HighPrecReal& a, const HighPrecReal& b) { return !(b < a); }

    bool is_zero() const;
    double to_double() const;
    // Scientific notation with the given number of significant digits.
    std::string to_string(unsigned significant = 20) const;

private:
    static mpfr_prec_t bits_for(unsigned digits);
    unsigned digits_;
    mpfr_t value_;
};

HighPrecReal abs(const HighPrecReal& x);
HighPrecReal exp(const HighPrecReal& x);
HighPrecReal sqrt(const HighPrecReal& x);
HighPrecReal sin(const HighPrecReal& x);
HighPrecReal pow(const HighPrecReal& x, unsigned long exponent);
// Real power x^y for x > 0.
HighPrecReal pow(const HighPrecReal& x, const HighPrecReal& y);
HighPrecReal pi(unsigned digits = kDefaultPrecisionDigits);

// Gamma function at a rational argument: a convergent series for the lower
// incomplete gamma on [1,2), exact Pochhammer shifts into that window, and the
// reflection formula for negative arguments. Throws DomainError at poles.
HighPrecReal gamma(const BigRat& x, unsigned digits = kDefaultPrecisionDigits);

// |a - b| / |b|, or |a - b| when b is zero.
HighPrecReal relative_deviation(const HighPrecReal& a, const HighPrecReal& b);

// 10^(-exponent) at the given precision.
HighPrecReal ten_to_minus(unsigned exponent, unsigned digits = kDefaultPrecisionDigits);

}  // namespace normord
