#include "normord/poly.hpp"

#include <algorithm>
#include <sstream>

namespace normord {

PolyQ::PolyQ(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

PolyQ::PolyQ(std::initializer_list<BigRat> coeffs) : coeffs_(coeffs) { strip(); }

PolyQ PolyQ::constant(const BigRat& c) { return PolyQ({c}); }

PolyQ PolyQ::monomial(const BigRat& c, std::size_t degree) {
    std::vector<BigRat> coeffs(degree + 1);
    coeffs[degree] = c;
    return PolyQ(std::move(coeffs));
}

void PolyQ::strip() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRat PolyQ::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigRat(0); }

BigRat PolyQ::evaluate(const BigRat& x) const {
    BigRat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

PolyQ PolyQ::shifted(const BigRat& shift) const {
    // Horner in the polynomial ring: acc = acc * (x + shift) + c.
    const PolyQ linear({shift, BigRat(1)});
    PolyQ acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * linear + constant(*it);
    return acc;
}

PolyQ& PolyQ::operator+=(const PolyQ& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    strip();
    return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    strip();
    return *this;
}

PolyQ& PolyQ::operator*=(const BigRat& c) {
    for (auto& x : coeffs_) x *= c;
    strip();
    return *this;
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRat> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return PolyQ(std::move(out));
}

std::string PolyQ::to_string(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const BigRat& c = coeffs_[i];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const BigRat mag = abs(c);
        if (i == 0 || mag != 1) os << normord::to_string(mag);
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

PolyQ pow(const PolyQ& p, unsigned long exponent) {
    PolyQ out = PolyQ::constant(1);
    for (unsigned long i = 0; i < exponent; ++i) out = out * p;
    return out;
}

PolyQ falling_factorial_poly(unsigned long k) {
    PolyQ out = PolyQ::constant(1);
    for (unsigned long i = 0; i < k; ++i) out = out * PolyQ({BigRat(-static_cast<long>(i)), BigRat(1)});
    return out;
}

PolyQ laguerre_poly(unsigned long n) {
    std::vector<BigRat> coeffs(n + 1);
    for (unsigned long k = 0; k <= n; ++k) {
        BigRat c(binomial(n, k), factorial(k));
        c.canonicalize();
        coeffs[k] = (k % 2 == 0) ? c : BigRat(-c);
    }
    return PolyQ(std::move(coeffs));
}

}  // namespace normord
