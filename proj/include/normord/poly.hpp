#pragma once

#include "normord/arith.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace normord {

// Dense univariate polynomial over the rationals. Trailing zeros are
// stripped, so the zero polynomial has no coefficients.
class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<BigRat> coeffs);
    PolyQ(std::initializer_list<BigRat> coeffs);

    static PolyQ constant(const BigRat& c);
    static PolyQ monomial(const BigRat& c, std::size_t degree);

    bool is_zero() const { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    // Zero beyond the stored degree.
    BigRat coeff(std::size_t i) const;
    const std::vector<BigRat>& coeffs() const { return coeffs_; }

    BigRat evaluate(const BigRat& x) const;

    // p(x) -> p(x + shift)
    PolyQ shifted(const BigRat& shift) const;

    PolyQ& operator+=(const PolyQ& other);
    PolyQ& operator-=(const PolyQ& other);
    PolyQ& operator*=(const BigRat& c);

    friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
    friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
    friend PolyQ operator*(PolyQ a, const BigRat& c) { return a *= c; }
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
    friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string(const std::string& var = "x") const;

private:
    void strip();
    std::vector<BigRat> coeffs_;
};

PolyQ pow(const PolyQ& p, unsigned long exponent);

// Falling factorial polynomial x(x-1)...(x-k+1).
PolyQ falling_factorial_poly(unsigned long k);

// Laguerre polynomial L_n(y) = sum_k C(n,k) (-y)^k / k!.
PolyQ laguerre_poly(unsigned long n);

}  // namespace normord
