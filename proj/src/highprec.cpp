#include "normord/highprec.hpp"

#include "normord/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace normord {

namespace {

// Extra bits carried beyond the requested decimal precision.
constexpr mpfr_prec_t kGuardBits = 24;

}  // namespace

mpfr_prec_t HighPrecReal::bits_for(unsigned digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873622)) + kGuardBits;
}

HighPrecReal::HighPrecReal(unsigned digits) : digits_(digits) {
    mpfr_init2(value_, bits_for(digits));
    mpfr_set_zero(value_, 1);
}

HighPrecReal::HighPrecReal(const BigRat& value, unsigned digits) : digits_(digits) {
    mpfr_init2(value_, bits_for(digits));
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

HighPrecReal::HighPrecReal(long value, unsigned digits) : digits_(digits) {
    mpfr_init2(value_, bits_for(digits));
    mpfr_set_si(value_, value, MPFR_RNDN);
}

HighPrecReal HighPrecReal::from_string(const std::string& text, unsigned digits) {
    HighPrecReal out(digits);
    if (mpfr_set_str(out.value_, text.c_str(), 10, MPFR_RNDN) != 0)
        throw ParseError("malformed decimal '" + text + "'", 0);
    return out;
}

HighPrecReal::HighPrecReal(const HighPrecReal& other) : digits_(other.digits_) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

HighPrecReal::HighPrecReal(HighPrecReal&& other) noexcept : digits_(other.digits_) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

HighPrecReal& HighPrecReal::operator=(const HighPrecReal& other) {
    if (this != &other) {
        digits_ = other.digits_;
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

HighPrecReal& HighPrecReal::operator=(HighPrecReal&& other) noexcept {
    std::swap(digits_, other.digits_);
    mpfr_swap(value_, other.value_);
    return *this;
}

HighPrecReal::~HighPrecReal() { mpfr_clear(value_); }

namespace {

template <typename Op>
HighPrecReal& widen_and_apply(HighPrecReal& self, const HighPrecReal& o, Op op) {
    if (o.digits() > self.digits()) {
        HighPrecReal wide(o.digits());
        mpfr_set(wide.get(), self.get(), MPFR_RNDN);
        self = std::move(wide);
    }
    op(self.get(), self.get(), o.get(), MPFR_RNDN);
    return self;
}

}  // namespace

HighPrecReal& HighPrecReal::operator+=(const HighPrecReal& o) { return widen_and_apply(*this, o, mpfr_add); }
HighPrecReal& HighPrecReal::operator-=(const HighPrecReal& o) { return widen_and_apply(*this, o, mpfr_sub); }
HighPrecReal& HighPrecReal::operator*=(const HighPrecReal& o) { return widen_and_apply(*this, o, mpfr_mul); }
HighPrecReal& HighPrecReal::operator/=(const HighPrecReal& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    return widen_and_apply(*this, o, mpfr_div);
}

HighPrecReal HighPrecReal::operator-() const {
    HighPrecReal out(*this);
    mpfr_neg(out.value_, out.value_, MPFR_RNDN);
    return out;
}

bool operator<(const HighPrecReal& a, const HighPrecReal& b) { return mpfr_less_p(a.value_, b.value_) != 0; }

bool HighPrecReal::is_zero() const { return mpfr_zero_p(value_) != 0; }

double HighPrecReal::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

std::string HighPrecReal::to_string(unsigned significant) const {
    std::vector<char> buf(significant + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", static_cast<int>(significant - 1), value_);
    return std::string(buf.data());
}

HighPrecReal abs(const HighPrecReal& x) {
    HighPrecReal out(x);
    mpfr_abs(out.get(), out.get(), MPFR_RNDN);
    return out;
}

HighPrecReal exp(const HighPrecReal& x) {
    HighPrecReal out(x.digits());
    mpfr_exp(out.get(), x.get(), MPFR_RNDN);
    return out;
}

HighPrecReal sqrt(const HighPrecReal& x) {
    HighPrecReal out(x.digits());
    mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
    return out;
}

HighPrecReal sin(const HighPrecReal& x) {
    HighPrecReal out(x.digits());
    mpfr_sin(out.get(), x.get(), MPFR_RNDN);
    return out;
}

HighPrecReal pow(const HighPrecReal& x, unsigned long exponent) {
    HighPrecReal out(x.digits());
    mpfr_pow_ui(out.get(), x.get(), exponent, MPFR_RNDN);
    return out;
}

HighPrecReal pow(const HighPrecReal& x, const HighPrecReal& y) {
    HighPrecReal out(std::max(x.digits(), y.digits()));
    mpfr_pow(out.get(), x.get(), y.get(), MPFR_RNDN);
    return out;
}

HighPrecReal pi(unsigned digits) {
    HighPrecReal out(digits);
    mpfr_const_pi(out.get(), MPFR_RNDN);
    return out;
}

HighPrecReal ten_to_minus(unsigned exponent, unsigned digits) {
    HighPrecReal out(digits);
    mpfr_ui_pow_ui(out.get(), 10, exponent, MPFR_RNDN);
    mpfr_ui_div(out.get(), 1, out.get(), MPFR_RNDN);
    return out;
}

HighPrecReal relative_deviation(const HighPrecReal& a, const HighPrecReal& b) {
    HighPrecReal diff = abs(a - b);
    if (b.is_zero()) return diff;
    return diff / abs(b);
}

namespace {

// Gamma on [1,2): Gamma(x) = gamma_lower(x, N) + Gamma_upper(x, N) with
//   gamma_lower(x, N) = N^x e^{-N} sum_{k>=0} N^k / (x (x+1) ... (x+k)).
// Gamma_upper(x, N) <= N^{x-1} e^{-N}, so N is picked so that the dropped
// tail sits below 10^{-(digits+5)}.
HighPrecReal gamma_unit_window(const BigRat& x, unsigned digits) {
    const unsigned long cut =
        static_cast<unsigned long>(std::ceil((digits + 10) * std::log(10.0))) + 20;
    // All terms are positive and the peak is about e^N / N^x; give the
    // accumulation enough headroom to absorb the summation error.
    const unsigned work = digits + 10;
    const HighPrecReal xr(x, work);
    const HighPrecReal n(static_cast<long>(cut), work);

    HighPrecReal term = HighPrecReal(1L, work) / xr;  // k = 0
    HighPrecReal sum = term;
    const HighPrecReal eps = ten_to_minus(work + 5, work);
    for (unsigned long k = 1;; ++k) {
        term *= n;
        term /= xr + HighPrecReal(static_cast<long>(k), work);
        sum += term;
        if (k > cut && term < sum * eps) break;
    }
    HighPrecReal prefactor = pow(n, xr) * exp(-n);
    HighPrecReal out = prefactor * sum;
    HighPrecReal rounded(digits);
    mpfr_set(rounded.get(), out.get(), MPFR_RNDN);
    return rounded;
}

}  // namespace

HighPrecReal gamma(const BigRat& x, unsigned digits) {
    if (x <= 0 && is_integer(x)) throw DomainError("gamma pole at " + to_string(x));
    if (x < 0) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        const unsigned work = digits + 10;
        HighPrecReal s = sin(pi(work) * HighPrecReal(x, work));
        HighPrecReal out = pi(work) / (s * gamma(BigRat(1 - x), work));
        HighPrecReal rounded(digits);
        mpfr_set(rounded.get(), out.get(), MPFR_RNDN);
        return rounded;
    }
    // Move x into [1,2) with an exact rational factor.
    BigRat shifted = x;
    BigRat factor = 1;
    while (shifted >= 2) {
        shifted -= 1;
        factor *= shifted;
    }
    while (shifted < 1) {
        factor /= shifted;
        shifted += 1;
    }
    return gamma_unit_window(shifted, digits) * HighPrecReal(factor, digits);
}

}  // namespace normord
