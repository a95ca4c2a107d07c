#pragma once

#include "normord/arith.hpp"
#include "normord/boson.hpp"
#include "normord/check.hpp"
#include "normord/highprec.hpp"
#include "normord/series.hpp"

#include <string>
#include <vector>

namespace normord {

// D_x(r,M) = (d/dx)^r (x d/dx)^M, acting by x^p -> p^(r falling) p^M x^{p-r}.
struct DxOperator {
    unsigned r = 1;
    unsigned M = 0;
};

// Coefficients below p = r vanish; the result is truncated r lower than s.
SeriesQ apply_Dx(const DxOperator& op, const SeriesQ& s);

// sum_{m <= lambda_max} lambda^m / m! D_x^m s, as a bivariate series with
// x-order s.order() - r lambda_max and lambda-order lambda_max + 1.
// Throws RangeError unless r lambda_max < s.order().
BiSeriesQ exp_lambda_Dx(const DxOperator& op, const SeriesQ& s, std::size_t lambda_max);

// E(r,M;x) = 0F_{M+r-1}(; 1/r..(r-1)/r, 1 (M times); x^r / r^{r+M}), the
// eigenfunction of D_x(r,M) with eigenvalue 1.
SeriesQ eigenfunction_series(unsigned r, unsigned M, std::size_t order = kDefaultSeriesOrder);

// T(lambda,x) = x (1 - lambda r x^r)^{-1/r} and g(lambda,x) = (1 - lambda r x^r)^{-1}.
struct ShefferPair {
    unsigned r = 1;
    BiSeriesQ T;
    BiSeriesQ g;
};
ShefferPair sheffer_forms(unsigned r, std::size_t lambda_order, std::size_t x_order);

// Entry n is n! [lambda^n] :g(lambda,a) exp(a†(T(lambda,a) - a)):, n = 0..n_max.
std::vector<NormalForm> exp_D_r1_normal_form(unsigned r, unsigned n_max);

// (1 - r lambda)^{-1} exp((1 - r lambda)^{-1/r} - 1) to the given order.
SeriesQ egf_bell_r1(unsigned r, std::size_t order);

// Truncated power series in lambda whose coefficients are commutative
// polynomials in (a†, a), stored as NormalForms. Multiplication ignores the
// commutator, which is exactly the double-dot convention.
class DoubleDotSeries {
public:
    DoubleDotSeries() = default;
    explicit DoubleDotSeries(std::size_t order) : slices_(order) {}
    // c lambda^m (a†)^dag a^ann
    static DoubleDotSeries monomial(const BigRat& c, std::size_t m, unsigned long dag, unsigned long ann,
                                    std::size_t order);
    static DoubleDotSeries one(std::size_t order);

    std::size_t order() const { return slices_.size(); }
    const NormalForm& slice(std::size_t m) const { return slices_.at(m); }
    NormalForm& slice(std::size_t m) { return slices_.at(m); }
    const std::vector<NormalForm>& slices() const { return slices_; }

    DoubleDotSeries& operator+=(const DoubleDotSeries& other);
    DoubleDotSeries& operator-=(const DoubleDotSeries& other);
    DoubleDotSeries& operator*=(const BigRat& c);
    friend DoubleDotSeries operator+(DoubleDotSeries a, const DoubleDotSeries& b) { return a += b; }
    friend DoubleDotSeries operator-(DoubleDotSeries a, const DoubleDotSeries& b) { return a -= b; }
    friend DoubleDotSeries operator*(DoubleDotSeries a, const BigRat& c) { return a *= c; }
    friend DoubleDotSeries operator*(const DoubleDotSeries& a, const DoubleDotSeries& b);
    friend bool operator==(const DoubleDotSeries& a, const DoubleDotSeries& b) { return a.slices_ == b.slices_; }

private:
    std::vector<NormalForm> slices_;
};

// Commutative product of two normal forms, (a†)^i a^j (a†)^k a^l -> (a†)^{i+k} a^{j+l}.
NormalForm commutative_product(const NormalForm& f, const NormalForm& g);

// sum_j taylor[j] u^j; u must have no lambda^0 part (DomainError otherwise).
DoubleDotSeries dd_compose(const std::vector<BigRat>& taylor, const DoubleDotSeries& u);
DoubleDotSeries dd_exp(const DoubleDotSeries& u);
// (1 + u)^alpha
DoubleDotSeries dd_binpow(const DoubleDotSeries& u, const BigRat& alpha);

// e^{lambda D_x} e^{-b x} against (1 + b lambda)^{-1} exp(-b x / (1 + b lambda)).
CheckResult exp_on_exp_check(const BigRat& b, std::size_t x_order = 16, std::size_t lambda_max = kDefaultLambdaOrder);
// e^{lambda D_x} 1F1(b;1;x) against (1 - lambda)^{-b} 1F1(b;1;x/(1 - lambda)).
CheckResult exp_on_1f1_check(const BigRat& b, std::size_t x_order = 16, std::size_t lambda_max = kDefaultLambdaOrder);
// e^{y D_x} x^n = n! y^n L_n(-x/y) as a polynomial identity in (x,y).
CheckResult exp_on_monomial_check(unsigned n);
// [D(1,1)]^n = n! :L_n(-a†a): a^n
CheckResult laguerre_power_check(unsigned n);
// D_x(r,M) E = E through order - r, plus the boundary conditions at 0.
CheckResult eigen_check(unsigned r, unsigned M, std::size_t order = kDefaultSeriesOrder);
// exp_D_r1_normal_form against oracle powers of D(r,1).
CheckResult sheffer_check(unsigned r, unsigned n_max);
// n! [lambda^n] egf_bell_r1 against gen_bell_number(r,1,n).
CheckResult egf_check(unsigned r, unsigned n_max);

// Operator-function examples. Each side becomes a lambda-series of normal
// forms: the left through Taylor coefficients applied to oracle powers, the
// right through the double-dot expansion. `param` is p for laguerre_p and
// M for eigen_operator / d1m_power; other ids ignore it.
const std::vector<std::string>& example_ids();
CheckResult example_check(const std::string& id, std::size_t lambda_max = 5, unsigned param = 1);

// Both sides of an example, slice by slice (not used for eigen_operator / d1m_power).
struct ExampleSides {
    std::vector<NormalForm> lhs;
    std::vector<NormalForm> rhs;
};
ExampleSides example_sides(const std::string& id, std::size_t lambda_max, unsigned param = 1);

// The I0 variant of the J0 example, :e^{-lambda a} I0(2 sqrt(lambda a† a^2)):,
// kept to document that it differs from the operator function.
std::vector<NormalForm> bessel_j0_with_i0_rhs(std::size_t lambda_max);

enum class HypKind { stirling_gf, bell_poly, bell_poly_r2, bell_poly_r3 };
HypKind parse_hyp_kind(const std::string& name);
std::string to_string(HypKind kind);
unsigned hyp_kind_r(HypKind kind);

// Closed hypergeometric forms of S_1^(M)(n,k) and B_r^(M)(n,x) for r = 1, 2, 3.
// stirling_gf and bell_poly are exact (bell_poly also evaluated at xs);
// bell_poly_r2/2 are numeric against exact gen_bell_poly values at xs.
CheckResult hyp_closed_form_check(HypKind kind, unsigned M, unsigned n, const std::vector<BigRat>& xs,
                                  unsigned digits = kDefaultPrecisionDigits,
                                  const HighPrecReal& tol = ten_to_minus(30));

// Numeric value of the closed form for B_r^(M)(n,x), r = 1, 2, 3.
HighPrecReal hyp_closed_form_value(unsigned r, unsigned M, unsigned n, const BigRat& x,
                                   unsigned digits = kDefaultPrecisionDigits);

// [lambda^n] of e^{-x} sum_l x^l/l! MFM(l/r+1 (M times); 1 (M times); r^M lambda),
// the outer sum truncated adaptively.
HighPrecReal hyp_gf_coefficient(unsigned r, unsigned M, const BigRat& x, unsigned n,
                                unsigned digits = kDefaultPrecisionDigits);
// Compares hyp_gf_coefficient with B_r^(M)(n,x)/(n!)^{M+1} for n <= lambda_max.
CheckResult hyp_generating_function_check(unsigned r, unsigned M, const BigRat& x, std::size_t lambda_max = 6,
                                          unsigned digits = kDefaultPrecisionDigits,
                                          const HighPrecReal& tol = ten_to_minus(30));

}  // namespace normord
