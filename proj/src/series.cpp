#include "normord/series.hpp"

#include "normord/error.hpp"

#include <algorithm>

namespace normord {

SeriesQ SeriesQ::from_poly(const PolyQ& p, std::size_t order) {
    SeriesQ s(order);
    for (std::size_t i = 0; i < order; ++i) s.coeffs_[i] = p.coeff(i);
    return s;
}

SeriesQ SeriesQ::variable(std::size_t order) {
    SeriesQ s(order);
    if (order > 1) s.coeffs_[1] = 1;
    return s;
}

SeriesQ SeriesQ::constant(const BigRat& c, std::size_t order) {
    SeriesQ s(order);
    if (order > 0) s.coeffs_[0] = c;
    return s;
}

const BigRat& SeriesQ::coeff(std::size_t i) const {
    if (i >= coeffs_.size())
        throw RangeError("coefficient " + std::to_string(i) + " beyond truncation order " +
                         std::to_string(coeffs_.size()));
    return coeffs_[i];
}

BigRat& SeriesQ::coeff(std::size_t i) {
    if (i >= coeffs_.size())
        throw RangeError("coefficient " + std::to_string(i) + " beyond truncation order " +
                         std::to_string(coeffs_.size()));
    return coeffs_[i];
}

SeriesQ SeriesQ::truncated(std::size_t order) const {
    SeriesQ s(std::min(order, coeffs_.size()));
    std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
    return s;
}

SeriesQ SeriesQ::derivative() const {
    if (coeffs_.empty()) return {};
    SeriesQ s(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) s.coeffs_[i - 1] = coeffs_[i] * i;
    return s;
}

SeriesQ& SeriesQ::operator+=(const SeriesQ& other) {
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SeriesQ& SeriesQ::operator-=(const SeriesQ& other) {
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SeriesQ& SeriesQ::operator*=(const BigRat& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

SeriesQ operator*(const SeriesQ& a, const SeriesQ& b) {
    const std::size_t n = std::min(a.order(), b.order());
    SeriesQ out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
}

SeriesQ series_exp(const SeriesQ& s) {
    const std::size_t n = s.order();
    if (n == 0) return {};
    if (s.coeff(0) != 0) throw DomainError("series_exp needs a zero constant term");
    // f' = s' f  =>  k f_k = sum_{j=1..k} j s_j f_{k-j}
    SeriesQ f(n);
    f.coeff(0) = 1;
    for (std::size_t k = 1; k < n; ++k) {
        BigRat acc = 0;
        for (std::size_t j = 1; j <= k; ++j)
            if (s.coeff(j) != 0) acc += BigRat(j) * s.coeff(j) * f.coeff(k - j);
        f.coeff(k) = acc / k;
    }
    return f;
}

SeriesQ series_binpow(const BigRat& c, const BigRat& alpha, std::size_t order) {
    if (order == 0) throw RangeError("series_binpow needs order >= 1");
    SeriesQ out(order);
    BigRat binom = 1;  // C(alpha, k)
    BigRat cpow = 1;
    for (std::size_t k = 0; k < order; ++k) {
        out.coeff(k) = binom * cpow;
        binom = binom * (alpha - k) / BigRat(k + 1);
        cpow *= c;
    }
    return out;
}

BiSeriesQ::BiSeriesQ(std::size_t x_order, std::size_t lambda_order)
    : x_order_(x_order), lambda_order_(lambda_order), cells_(x_order * lambda_order) {}

const BigRat& BiSeriesQ::coeff(std::size_t i, std::size_t j) const {
    if (i >= x_order_ || j >= lambda_order_) throw RangeError("bivariate coefficient beyond truncation");
    return cells_[i * lambda_order_ + j];
}

BigRat& BiSeriesQ::coeff(std::size_t i, std::size_t j) {
    if (i >= x_order_ || j >= lambda_order_) throw RangeError("bivariate coefficient beyond truncation");
    return cells_[i * lambda_order_ + j];
}

SeriesQ BiSeriesQ::lambda_slice(std::size_t j) const {
    SeriesQ s(x_order_);
    for (std::size_t i = 0; i < x_order_; ++i) s.coeff(i) = coeff(i, j);
    return s;
}

void BiSeriesQ::set_lambda_slice(std::size_t j, const SeriesQ& s) {
    for (std::size_t i = 0; i < x_order_; ++i) coeff(i, j) = i < s.order() ? s.coeff(i) : BigRat(0);
}

BiSeriesQ BiSeriesQ::truncated(std::size_t x_order, std::size_t lambda_order) const {
    BiSeriesQ out(std::min(x_order, x_order_), std::min(lambda_order, lambda_order_));
    for (std::size_t i = 0; i < out.x_order_; ++i)
        for (std::size_t j = 0; j < out.lambda_order_; ++j) out.coeff(i, j) = coeff(i, j);
    return out;
}

BiSeriesQ& BiSeriesQ::operator+=(const BiSeriesQ& other) {
    BiSeriesQ out = truncated(other.x_order_, other.lambda_order_);
    for (std::size_t i = 0; i < out.x_order_; ++i)
        for (std::size_t j = 0; j < out.lambda_order_; ++j) out.coeff(i, j) += other.coeff(i, j);
    return *this = std::move(out);
}

BiSeriesQ& BiSeriesQ::operator-=(const BiSeriesQ& other) {
    BiSeriesQ out = truncated(other.x_order_, other.lambda_order_);
    for (std::size_t i = 0; i < out.x_order_; ++i)
        for (std::size_t j = 0; j < out.lambda_order_; ++j) out.coeff(i, j) -= other.coeff(i, j);
    return *this = std::move(out);
}

BiSeriesQ& BiSeriesQ::operator*=(const BigRat& c) {
    for (auto& x : cells_) x *= c;
    return *this;
}

BiSeriesQ operator*(const BiSeriesQ& a, const BiSeriesQ& b) {
    const std::size_t nx = std::min(a.x_order_, b.x_order_);
    const std::size_t nl = std::min(a.lambda_order_, b.lambda_order_);
    BiSeriesQ out(nx, nl);
    for (std::size_t i1 = 0; i1 < nx; ++i1)
        for (std::size_t j1 = 0; j1 < nl; ++j1) {
            const BigRat& c1 = a.coeff(i1, j1);
            if (c1 == 0) continue;
            for (std::size_t i2 = 0; i1 + i2 < nx; ++i2)
                for (std::size_t j2 = 0; j1 + j2 < nl; ++j2) {
                    const BigRat& c2 = b.coeff(i2, j2);
                    if (c2 != 0) out.coeff(i1 + i2, j1 + j2) += c1 * c2;
                }
        }
    return out;
}

bool operator==(const BiSeriesQ& a, const BiSeriesQ& b) {
    return a.x_order_ == b.x_order_ && a.lambda_order_ == b.lambda_order_ && a.cells_ == b.cells_;
}

}  // namespace normord
