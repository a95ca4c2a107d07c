#include "normord/hypergeom.hpp"

#include "normord/error.hpp"

#include <algorithm>

namespace normord {

namespace {

// t_{k+1} / t_k without the x factor; throws at a lower-parameter pole.
BigRat term_ratio(const ParamList& upper, const ParamList& lower, std::size_t k) {
    BigRat num = 1;
    BigRat den = k + 1;
    for (const auto& a : upper) num *= a + k;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        const BigRat b = lower[i] + k;
        if (b == 0)
            throw DomainError("hypergeometric pole: lower parameter #" + std::to_string(i) + " = " +
                              to_string(lower[i]) + " reaches zero at term " + std::to_string(k + 1));
        den *= b;
    }
    return num / den;
}

}  // namespace

BigRat phyperq_partial(const ParamList& upper, const ParamList& lower, const BigRat& x,
                       std::size_t terms) {
    BigRat sum = 0;
    BigRat term = 1;
    for (std::size_t k = 0; k < terms; ++k) {
        sum += term;
        if (k + 1 < terms) term *= term_ratio(upper, lower, k) * x;
    }
    return sum;
}

SeriesQ phyperq_series(const ParamList& upper, const ParamList& lower, std::size_t order,
                       const BigRat& scale) {
    SeriesQ out(order);
    BigRat term = 1;
    for (std::size_t k = 0; k < order; ++k) {
        out.coeff(k) = term;
        if (k + 1 < order) term *= term_ratio(upper, lower, k) * scale;
    }
    return out;
}

HyperSum phyperq_value(const ParamList& upper, const ParamList& lower, const BigRat& x,
                       unsigned digits, std::size_t max_terms) {
    if (upper.size() > lower.size() + 1)
        throw DomainError("phyperq_value only handles convergent series with p <= q + 1");
    BigRat size_bound = abs(x) + 1;
    for (const auto& a : upper) size_bound = std::max(size_bound, BigRat(abs(a) + 1));
    for (const auto& b : lower) size_bound = std::max(size_bound, BigRat(abs(b) + 1));
    const BigRat min_k = 2 * size_bound;

    // Stop threshold kept exact: |term| < |sum| / 10^(digits+10).
    const BigRat threshold(1, pow(BigInt(10), digits + 10));

    BigRat sum = 0;
    BigRat term = 1;
    std::size_t k = 0;
    for (; k < max_terms; ++k) {
        sum += term;
        const BigRat ratio = term_ratio(upper, lower, k) * x;
        term *= ratio;
        if (term == 0) {
            ++k;
            break;
        }
        if (BigRat(k) >= min_k && abs(ratio) < BigRat(1, 2) && abs(term) < abs(sum) * threshold) {
            ++k;
            break;
        }
    }
    if (k >= max_terms) throw DomainError("hypergeometric series did not settle within the term budget");
    return HyperSum{HighPrecReal(sum, digits), k};
}

}  // namespace normord
