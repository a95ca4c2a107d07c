#include "normord/error.hpp"
#include "normord/laguerre.hpp"
#include "normord/stirling.hpp"

#include <doctest.h>

using namespace normord;

namespace {

SeriesQ exp_series(std::size_t order) { return series_exp(SeriesQ::variable(order)); }

void require_pass(const CheckResult& c) {
    CAPTURE(c.first_mismatch);
    CHECK(c.pass);
}

NormalForm nf(std::initializer_list<std::tuple<unsigned long, unsigned long, long>> entries) {
    NormalForm f;
    for (auto [k, l, c] : entries) f.add(k, l, c);
    return f;
}

}  // namespace

TEST_CASE("apply_Dx") {
    const SeriesQ x2 = SeriesQ::from_poly(PolyQ::monomial(1, 2), 3);
    const SeriesQ out = apply_Dx({2, 1}, x2);
    REQUIRE(out.order() == 1);
    CHECK(out.coeff(0) == 4);

    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned M = 0; M <= 2; ++M) {
            const SeriesQ c = apply_Dx({r, M}, SeriesQ::constant(5, 8));
            for (std::size_t i = 0; i < c.order(); ++i) CHECK(c.coeff(i) == 0);
        }

    // D_x(1,1) e^x: coefficient of x^{p-1} is p * p / p!
    const SeriesQ d = apply_Dx({1, 1}, exp_series(10));
    REQUIRE(d.order() == 9);
    for (std::size_t q = 0; q < 9; ++q) CHECK(d.coeff(q) == BigRat((q + 1) * (q + 1)) / BigRat(factorial(q + 1)));

    // D_x(1,0) is d/dx
    CHECK(apply_Dx({1, 0}, exp_series(7)) == exp_series(6));
    CHECK_THROWS_AS(apply_Dx({0, 1}, exp_series(4)), RangeError);
}

TEST_CASE("exp_lambda_Dx") {
    const SeriesQ s = exp_series(9);
    const BiSeriesQ zero = exp_lambda_Dx({1, 1}, s, 0);
    CHECK(zero.lambda_order() == 1);
    CHECK(zero.lambda_slice(0) == s);
    const BiSeriesQ two = exp_lambda_Dx({2, 1}, s, 2);
    CHECK(two.x_order() == 5);
    CHECK(two.lambda_slice(1) == apply_Dx({2, 1}, s).truncated(5));
    CHECK(two.lambda_slice(2) == apply_Dx({2, 1}, apply_Dx({2, 1}, s)).truncated(5) * make_rat(1, 2));
    CHECK_THROWS_AS(exp_lambda_Dx({2, 1}, s, 5), RangeError);
}

TEST_CASE("exponential of the Laguerre derivative on e^{-bx} and 1F1") {
    for (const BigRat& b : {BigRat(1), BigRat(2), make_rat(1, 3)}) {
        CAPTURE(to_string(b));
        require_pass(exp_on_exp_check(b, 16, 8));
    }
    for (const BigRat& b : {BigRat(1), BigRat(2), BigRat(3), make_rat(3, 2)}) {
        CAPTURE(to_string(b));
        require_pass(exp_on_1f1_check(b, 16, 8));
    }
}

TEST_CASE("e^{y D_x} x^n and [D(1,1)]^n through Laguerre polynomials") {
    for (unsigned n = 0; n <= 6; ++n) {
        CAPTURE(n);
        require_pass(exp_on_monomial_check(n));
        require_pass(laguerre_power_check(n));
    }
}

TEST_CASE("eigenfunctions") {
    CHECK(eigenfunction_series(1, 0, 12) == exp_series(12));
    const SeriesQ e11 = eigenfunction_series(1, 1, 10);
    for (std::size_t p = 0; p < 10; ++p) CHECK(e11.coeff(p) == BigRat(1) / BigRat(factorial(p) * factorial(p)));
    for (auto [r, M] : {std::pair{1u, 1u}, {1u, 2u}, {2u, 1u}, {2u, 2u}, {3u, 3u}}) {
        CAPTURE(r);
        CAPTURE(M);
        require_pass(eigen_check(r, M, 32));
    }
    // Independent oracle for r = 2: solve D_x(2,M) E = E term by term.
    for (unsigned M = 0; M <= 2; ++M) {
        const SeriesQ e = eigenfunction_series(2, M, 20);
        for (std::size_t p = 2; p < 20; ++p) {
            const BigInt bp(static_cast<unsigned long>(p));
            CHECK(e.coeff(p) * BigRat(bp * (bp - 1) * pow(bp, M)) == e.coeff(p - 2));
        }
    }
    CHECK_THROWS_AS(eigenfunction_series(3, 1, 2), RangeError);
}

TEST_CASE("sheffer_forms") {
    for (unsigned r = 1; r <= 3; ++r) {
        const ShefferPair sp = sheffer_forms(r, 5, 16);
        const SeriesQ t0 = sp.T.lambda_slice(0), g0 = sp.g.lambda_slice(0);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(t0.coeff(i) == (i == 1 ? 1 : 0));
            CHECK(g0.coeff(i) == (i == 0 ? 1 : 0));
        }
        const SeriesQ t1 = sp.T.lambda_slice(1);
        for (std::size_t i = 0; i < 16; ++i) CHECK(t1.coeff(i) == (i == r + 1 ? 1 : 0));
    }
    // r = 1: x / (1 - lambda x) and 1 / (1 - lambda x)
    const ShefferPair one = sheffer_forms(1, 6, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t m = 0; m < 6; ++m) {
            CHECK(one.T.coeff(i, m) == (i == m + 1 ? 1 : 0));
            CHECK(one.g.coeff(i, m) == (i == m ? 1 : 0));
        }
}

TEST_CASE("exp(lambda D(r,1)) in normal form") {
    CHECK(exp_D_r1_normal_form(1, 1)[1] == nf({{1, 2, 1}, {0, 1, 1}}));
    CHECK(exp_D_r1_normal_form(2, 1)[1] == nf({{1, 3, 1}, {0, 2, 2}}));
    CHECK(exp_D_r1_normal_form(1, 2)[2] == nf_power(laguerre_normal_form(1, 1), 2));
    for (unsigned r = 1; r <= 3; ++r) {
        CAPTURE(r);
        require_pass(sheffer_check(r, 5));
    }
    CHECK_THROWS_AS(exp_D_r1_normal_form(1, 0), RangeError);
}

TEST_CASE("egf_bell_r1") {
    // r = 1 against the matching numbers sum_k C(n,k)^2 k!
    const SeriesQ e1 = egf_bell_r1(1, 9);
    for (unsigned n = 0; n < 9; ++n) {
        BigInt matchings = 0;
        for (unsigned k = 0; k <= n; ++k) matchings += binomial(n, k) * binomial(n, k) * factorial(k);
        CHECK(e1.coeff(n) * BigRat(factorial(n)) == BigRat(matchings));
    }
    const long b11[] = {1, 2, 7, 34, 209, 1546};
    for (unsigned n = 0; n < 6; ++n) CHECK(e1.coeff(n) * BigRat(factorial(n)) == b11[n]);
    CHECK(e1.coeff(6) * BigRat(factorial(6)) == 13327);
    const SeriesQ e2 = egf_bell_r1(2, 5);
    const long b21[] = {1, 3, 16, 121, 1179};
    for (unsigned n = 0; n < 5; ++n) CHECK(e2.coeff(n) * BigRat(factorial(n)) == b21[n]);
    for (unsigned r = 1; r <= 4; ++r) require_pass(egf_check(r, 8));
}

TEST_CASE("double-dot series") {
    const auto u = DoubleDotSeries::monomial(1, 1, 1, 0, 4);
    const auto e = dd_exp(u);
    CHECK(e.slice(3) == NormalForm::monomial(3, 0, make_rat(1, 6)));
    CHECK(dd_binpow(u, -1).slice(2) == NormalForm::monomial(2, 0, 1));
    CHECK_THROWS_AS(dd_exp(DoubleDotSeries::one(3)), DomainError);
    // a a† under the double dots commutes
    CHECK(commutative_product(NormalForm::monomial(0, 1), NormalForm::monomial(1, 0)) == NormalForm::monomial(1, 1));
}

TEST_CASE("operator-function examples") {
    for (const std::string& id : example_ids()) {
        const std::vector<unsigned> params = (id == "eigen_operator" || id == "d1m_power") ? std::vector<unsigned>{1, 2, 3}
                                             : id == "laguerre_p"           ? std::vector<unsigned>{1, 2, 3}
                                                                              : std::vector<unsigned>{1};
        for (unsigned param : params) {
            CAPTURE(id);
            CAPTURE(param);
            require_pass(example_check(id, 5, param));
        }
    }
    // slice n of e^{lambda D(1,1)} is [D(1,1)]^n / n! = :L_n(-a†a): a^n
    const ExampleSides xs = example_sides("exp_d11", 3);
    CHECK(xs.rhs[1] == nf({{1, 2, 1}, {0, 1, 1}}));
    CHECK_THROWS_AS(example_check("nope"), RangeError);
}

TEST_CASE("J0 example is the I0 example under lambda -> -lambda") {
    const auto i0 = example_sides("bessel_I0", 6).rhs;
    const auto j0 = example_sides("bessel_J0", 6).rhs;
    for (std::size_t n = 0; n <= 6; ++n) CHECK(j0[n] == i0[n] * BigRat(n % 2 == 0 ? 1 : -1));
    // Flipping only the exponential prefactor does not give the J0 operator function.
    const auto with_i0 = bessel_j0_with_i0_rhs(6);
    CHECK(with_i0[0] == j0[0]);
    CHECK(with_i0[1] != j0[1]);
}

TEST_CASE("hypergeometric closed forms") {
    for (unsigned M = 1; M <= 3; ++M)
        for (unsigned n = 0; n <= 5; ++n) {
            CAPTURE(M);
            CAPTURE(n);
            require_pass(hyp_closed_form_check(HypKind::stirling_gf, M, n, {}));
            require_pass(hyp_closed_form_check(HypKind::bell_poly, M, n, {make_rat(1, 2), 1, 2}));
        }
    const HighPrecReal tol = ten_to_minus(30);
    CHECK(abs(hyp_closed_form_value(1, 2, 2, 1) - HighPrecReal(87L)) < tol * HighPrecReal(87L));
    CHECK(relative_deviation(hyp_closed_form_value(3, 3, 1, 1), HighPrecReal(77L)) < tol);
    for (unsigned M = 1; M <= 3; ++M)
        for (unsigned n = 0; n <= 5; ++n) {
            CAPTURE(M);
            CAPTURE(n);
            const auto c1 = hyp_closed_form_check(HypKind::bell_poly_r2, M, n, {make_rat(1, 2), 1, 2});
            require_pass(c1);
            CHECK(c1.numeric);
            CHECK(c1.max_deviation < tol);
            require_pass(hyp_closed_form_check(HypKind::bell_poly_r3, M, n, {make_rat(1, 2), 1, 2}));
        }
    CHECK(parse_hyp_kind("bell_poly_r3") == HypKind::bell_poly_r3);
    CHECK_THROWS_AS(parse_hyp_kind("bellgenpol9"), RangeError);
}

TEST_CASE("hypergeometric generating functions") {
    for (unsigned n = 0; n <= 3; ++n) {
        const long b[] = {1, 2, 7, 34};
        const BigRat want = BigRat(b[n]) / BigRat(factorial(n) * factorial(n));
        CHECK(relative_deviation(hyp_gf_coefficient(1, 1, 1, n), HighPrecReal(want)) < ten_to_minus(30));
    }
    CHECK(relative_deviation(hyp_gf_coefficient(2, 2, 1, 2), HighPrecReal(make_rat(339, 8))) < ten_to_minus(25));
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned M = 1; M <= 3; ++M) {
            CHECK(relative_deviation(hyp_gf_coefficient(r, M, make_rat(3, 2), 0), HighPrecReal(1L)) < ten_to_minus(30));
            CAPTURE(r);
            CAPTURE(M);
            require_pass(hyp_generating_function_check(r, M, 1, 6));
            require_pass(hyp_generating_function_check(r, M, make_rat(1, 2), 6));
        }
}
