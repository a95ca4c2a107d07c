#include "normord/boson.hpp"
#include "normord/error.hpp"

#include <doctest.h>

#include <random>

using namespace normord;

namespace {

NormalForm nf(std::initializer_list<std::tuple<unsigned long, unsigned long, long>> entries) {
    NormalForm f;
    for (auto [k, l, c] : entries) f.add(k, l, c);
    return f;
}

BosonWord random_word(std::mt19937& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::bernoulli_distribution coin(0.5);
    std::string s(len(rng), 'A');
    for (char& c : s) c = coin(rng) ? 'A' : 'D';
    return BosonWord(s);
}

NormalForm letter_form(char c) { return c == 'A' ? NormalForm::monomial(0, 1) : NormalForm::monomial(1, 0); }

NormalForm random_form(std::mt19937& rng) {
    std::uniform_int_distribution<int> power(0, 4), coeff(-5, 5), count(1, 4);
    NormalForm f;
    for (int i = count(rng); i > 0; --i) f.add(power(rng), power(rng), coeff(rng));
    return f;
}

}  // namespace

TEST_CASE("parse_expr") {
    const BosonExpr e1 = parse_expr("a*ad");
    REQUIRE(e1.terms().size() == 1);
    CHECK(e1.terms()[0].word.letters() == "AD");
    CHECK(e1.terms()[0].coeff == 1);

    const BosonExpr e2 = parse_expr("a^2*(ad*a)");
    REQUIRE(e2.terms().size() == 1);
    CHECK(e2.terms()[0].word == laguerre_word(2, 1));

    const BosonExpr e3 = parse_expr("ad*a^2 + a");
    REQUIRE(e3.terms().size() == 2);
    CHECK(e3.terms()[0].word.letters() == "A");
    CHECK(e3.terms()[1].word.letters() == "DAA");

    CHECK(parse_expr("n").terms()[0].word.letters() == "DA");
    CHECK(parse_expr("a\xE2\x80\xA0 a").terms()[0].word.letters() == "DA");
    CHECK(parse_expr("a ad").terms()[0].word.letters() == "AD");

    const BosonExpr e4 = parse_expr("3/2 a - 1/2*(a) + 2");
    REQUIRE(e4.terms().size() == 2);
    CHECK(e4.terms()[0].coeff == 2);
    CHECK(e4.terms()[1].coeff == 1);

    CHECK(parse_expr("(a+ad)^2").terms().size() == 4);
    CHECK(parse_expr("-a").terms()[0].coeff == -1);
    CHECK(parse_expr("a^0").terms()[0].word.empty());
}

TEST_CASE("parse_expr errors carry positions") {
    CHECK_THROWS_AS(parse_expr("a^-1"), ParseError);
    CHECK_THROWS_AS(parse_expr("a +"), ParseError);
    CHECK_THROWS_AS(parse_expr("(a"), ParseError);
    CHECK_THROWS_AS(parse_expr("1/0"), ParseError);
    try {
        parse_expr("a*x");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("normal_order_rewrite") {
    CHECK(normal_order_rewrite(BosonWord("AD")) == nf({{1, 1, 1}, {0, 0, 1}}));
    CHECK(normal_order_rewrite(laguerre_word(1, 1)) == nf({{1, 2, 1}, {0, 1, 1}}));
    CHECK(normal_order_rewrite(laguerre_word(2, 1)) == nf({{1, 3, 1}, {0, 2, 2}}));
    CHECK(normal_order_rewrite(BosonWord()) == NormalForm::identity());
    CHECK(normal_order_rewrite(parse_expr("a*ad - ad*a")) == NormalForm::identity());
}

TEST_CASE("nf_multiply") {
    const NormalForm d11 = laguerre_normal_form(1, 1);
    CHECK(nf_multiply(d11, NormalForm::identity()) == d11);
    CHECK(nf_multiply(NormalForm::monomial(0, 1), NormalForm::monomial(1, 0)) == nf({{1, 1, 1}, {0, 0, 1}}));
    const NormalForm n = NormalForm::monomial(1, 1);
    CHECK(nf_multiply(n, n) == normal_order_rewrite(BosonWord("DADA")));
    CHECK(nf_multiply(n, n) == nf({{2, 2, 1}, {1, 1, 1}}));
}

TEST_CASE("nf_power") {
    const NormalForm d11 = laguerre_normal_form(1, 1);
    const NormalForm sq = nf_power(d11, 2);
    CHECK(sq == nf({{2, 4, 1}, {1, 3, 4}, {0, 2, 2}}));
    CHECK(sq.total_weight() == 7);
    CHECK(nf_power(d11, 0) == NormalForm::identity());
    CHECK(nf_power(NormalForm::monomial(0, 1), 3) == NormalForm::monomial(0, 3));
}

TEST_CASE("dagger") {
    CHECK(dagger(NormalForm::identity()) == NormalForm::identity());
    CHECK(dagger(laguerre_normal_form(1, 1)) == nf({{2, 1, 1}, {1, 0, 1}}));
    // Conjugating the word and ordering agrees with conjugating the form.
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned M = 0; M <= 2; ++M)
            CHECK(dagger(laguerre_normal_form(r, M)) == normal_order_rewrite(laguerre_word(r, M).dagger()));
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
        const NormalForm f = random_form(rng);
        CHECK(dagger(dagger(f)) == f);
    }
}

TEST_CASE("coherent_expectation") {
    const ExactComplex one{1, 0};
    CHECK(coherent_expectation(NormalForm::identity(), {make_rat(3, 7), -2}) == one);
    const NormalForm n = NormalForm::monomial(1, 1);
    CHECK(coherent_expectation(n, one) == one);
    const long bell[] = {1, 1, 2, 5, 15, 52, 203};
    for (unsigned k = 0; k < 7; ++k) CHECK(coherent_expectation(nf_power(n, k), one).re == bell[k]);
    const long b11[] = {1, 2, 7, 34, 209};
    const NormalForm d11 = laguerre_normal_form(1, 1);
    for (unsigned k = 0; k < 5; ++k) CHECK(coherent_expectation(nf_power(d11, k), one) == ExactComplex{b11[k], 0});

    // <z| a† |z> = conj(z); <z| a |z> = z
    const ExactComplex z{2, 3};
    CHECK(coherent_expectation(NormalForm::monomial(1, 0), z) == ExactComplex{2, -3});
    CHECK(coherent_expectation(NormalForm::monomial(0, 1), z) == z);
    CHECK(coherent_expectation(n, z) == ExactComplex{13, 0});
}

TEST_CASE("diagonal_reduce") {
    CHECK(diagonal_reduce(NormalForm::monomial(1, 1)) == PolyQ({0, 1}));
    CHECK(diagonal_reduce(nf({{2, 2, 1}, {1, 1, 1}})) == PolyQ({0, 0, 1}));
    const BosonWord d = laguerre_word(1, 1);
    const NormalForm comm = normal_order_rewrite(BosonExpr::of_word(d + d.dagger()) - BosonExpr::of_word(d.dagger() + d));
    CHECK(diagonal_reduce(comm) == PolyQ({1, 3, 3}));
    CHECK_THROWS_AS(diagonal_reduce(NormalForm::monomial(1, 0)), DomainError);
}

TEST_CASE("property: rewriting oracle agrees with the contraction product on random words") {
    std::mt19937 rng(500);
    for (int trial = 0; trial < 500; ++trial) {
        const BosonWord w = random_word(rng, 10);
        NormalForm folded = NormalForm::identity();
        for (char c : w.letters()) folded = nf_multiply(folded, letter_form(c));
        CAPTURE(w.letters());
        CHECK(normal_order_rewrite(w) == folded);
    }
}

TEST_CASE("property: rewrite order does not change the result") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const BosonWord w = random_word(rng, 12);
        CHECK(normal_order_rewrite(w, RewriteStrategy::Leftmost) == normal_order_rewrite(w, RewriteStrategy::Rightmost));
    }
}

TEST_CASE("property: powers add") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const NormalForm f = random_form(rng);
        const unsigned m = trial % 3, n = (trial / 3) % 3;
        CHECK(nf_power(f, m + n) == nf_multiply(nf_power(f, m), nf_power(f, n)));
    }
}

TEST_CASE("property: action on monomials reproduces the falling-factorial product") {
    // [D_x(r,M)]^n x^p = prod_{j<n} (p-rj)^(r falling) (p-rj)^M  x^{p-rn}
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned M = 0; M <= 2; ++M)
            for (unsigned n = 1; n <= 3; ++n) {
                const NormalForm f = nf_power(laguerre_normal_form(r, M), n);
                for (unsigned long p = 0; p <= 12; ++p) {
                    BigInt expected = 1;
                    for (unsigned j = 0; j < n; ++j) {
                        const BigInt base = BigInt(static_cast<long>(p)) - r * j;
                        expected *= falling_factorial(base, r) * pow(base, M);
                    }
                    const PolyQ got = apply_to_monomial(f, p);
                    if (expected == 0) {
                        CHECK(got.is_zero());
                    } else {
                        CAPTURE(r); CAPTURE(M); CAPTURE(n); CAPTURE(p);
                        CHECK(got == PolyQ::monomial(BigRat(expected), p - r * n));
                    }
                }
            }
}

TEST_CASE("property: diagonal products have positive expectation at z = 1") {
    for (unsigned M = 1; M <= 3; ++M)
        for (unsigned n = 1; n <= 4; ++n) {
            const NormalForm f = nf_power(normal_order_rewrite(BosonWord("DA").repeated(M)), n);
            bool nonneg = true;
            for (const auto& [k, c] : f.terms()) nonneg = nonneg && c >= 0;
            REQUIRE(nonneg);
            CHECK(coherent_expectation(f, {1, 0}).re > 0);
        }
}

TEST_CASE("NormalForm JSON round trip") {
    std::mt19937 rng(99);
    for (int i = 0; i < 50; ++i) {
        NormalForm f = random_form(rng);
        f *= make_rat(1 + i, 3);
        CHECK(nf_from_json(nf_to_json(f)) == f);
    }
    const std::string json = nf_to_json(laguerre_normal_form(2, 1));
    CHECK(json ==
          R"({"sorted":"dag desc, ann desc","terms":[{"ann":3,"coeff":"1","dag":1},{"ann":2,"coeff":"2","dag":0}]})");
    CHECK_THROWS_AS(nf_from_json("{\"terms\": 3}"), ParseError);
    CHECK_THROWS_AS(nf_from_json("not json"), ParseError);
    CHECK(nf_to_string(laguerre_normal_form(2, 1)) == "a†a^3 + 2a^2");
}
