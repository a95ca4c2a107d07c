#pragma once

#include "normord/arith.hpp"
#include "normord/poly.hpp"

#include <cstddef>
#include <vector>

namespace normord {

inline constexpr std::size_t kDefaultSeriesOrder = 32;
inline constexpr std::size_t kDefaultLambdaOrder = 8;

// Truncated power series c_0 + c_1 t + ... + c_{N-1} t^{N-1} + O(t^N).
// Binary operations clamp to the smaller truncation order.
class SeriesQ {
public:
    SeriesQ() = default;
    explicit SeriesQ(std::size_t order) : coeffs_(order) {}
    SeriesQ(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) {}

    static SeriesQ from_poly(const PolyQ& p, std::size_t order);
    // t, the generator, to the given order.
    static SeriesQ variable(std::size_t order);
    static SeriesQ constant(const BigRat& c, std::size_t order);

    std::size_t order() const { return coeffs_.size(); }
    // Throws RangeError for i >= order().
    const BigRat& coeff(std::size_t i) const;
    BigRat& coeff(std::size_t i);
    const std::vector<BigRat>& coeffs() const { return coeffs_; }

    SeriesQ truncated(std::size_t order) const;
    SeriesQ derivative() const;

    SeriesQ& operator+=(const SeriesQ& other);
    SeriesQ& operator-=(const SeriesQ& other);
    SeriesQ& operator*=(const BigRat& c);

    friend SeriesQ operator+(SeriesQ a, const SeriesQ& b) { return a += b; }
    friend SeriesQ operator-(SeriesQ a, const SeriesQ& b) { return a -= b; }
    friend SeriesQ operator*(SeriesQ a, const BigRat& c) { return a *= c; }
    friend SeriesQ operator*(const SeriesQ& a, const SeriesQ& b);
    friend bool operator==(const SeriesQ& a, const SeriesQ& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<BigRat> coeffs_;
};

// exp(s) for s with zero constant term, through f' = s' f. Throws DomainError
// when the constant term is nonzero.
SeriesQ series_exp(const SeriesQ& s);

// (1 + c t)^alpha = sum_k C(alpha,k) c^k t^k, to the given order (>= 1).
SeriesQ series_binpow(const BigRat& c, const BigRat& alpha, std::size_t order);

// Truncated bivariate series sum c_{ij} x^i lambda^j, i < x_order, j < lambda_order.
class BiSeriesQ {
public:
    BiSeriesQ() = default;
    BiSeriesQ(std::size_t x_order, std::size_t lambda_order);

    std::size_t x_order() const { return x_order_; }
    std::size_t lambda_order() const { return lambda_order_; }

    const BigRat& coeff(std::size_t i, std::size_t j) const;
    BigRat& coeff(std::size_t i, std::size_t j);

    // Coefficient of lambda^j as a series in x.
    SeriesQ lambda_slice(std::size_t j) const;
    void set_lambda_slice(std::size_t j, const SeriesQ& s);

    BiSeriesQ truncated(std::size_t x_order, std::size_t lambda_order) const;

    BiSeriesQ& operator+=(const BiSeriesQ& other);
    BiSeriesQ& operator-=(const BiSeriesQ& other);
    BiSeriesQ& operator*=(const BigRat& c);
    friend BiSeriesQ operator+(BiSeriesQ a, const BiSeriesQ& b) { return a += b; }
    friend BiSeriesQ operator-(BiSeriesQ a, const BiSeriesQ& b) { return a -= b; }
    friend BiSeriesQ operator*(const BiSeriesQ& a, const BiSeriesQ& b);
    friend bool operator==(const BiSeriesQ& a, const BiSeriesQ& b);

private:
    std::size_t x_order_ = 0;
    std::size_t lambda_order_ = 0;
    std::vector<BigRat> cells_;  // row-major in x
};

}  // namespace normord
