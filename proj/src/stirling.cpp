#include "normord/stirling.hpp"

#include "normord/boson.hpp"
#include "normord/error.hpp"

#include <future>

namespace normord {

namespace {

// [prod_{i=1..n} (j + i r)]^M
BigInt dobinski_weight(unsigned r, unsigned M, unsigned n, unsigned long j) {
    BigInt prod = 1;
    for (unsigned i = 1; i <= n; ++i) prod *= j + static_cast<unsigned long>(i) * r;
    return pow(prod, M);
}

std::vector<std::vector<BigInt>> stirling2_triangle(unsigned n_max) {
    std::vector<std::vector<BigInt>> s(n_max + 1);
    s[0] = {1};
    for (unsigned n = 1; n <= n_max; ++n) {
        s[n].assign(n + 1, 0);
        for (unsigned k = 1; k <= n; ++k) {
            s[n][k] = (k < n ? BigInt(s[n - 1][k] * k) : BigInt(0)) + s[n - 1][k - 1];
        }
    }
    return s;
}

}  // namespace

std::vector<BigInt> gen_stirling_row(unsigned r, unsigned M, unsigned n) {
    const unsigned width = M * n + 1;
    // Forward differences of the weight sequence at 0: Delta^k P(0) / k!.
    std::vector<BigInt> diff(width);
    for (unsigned j = 0; j < width; ++j) diff[j] = dobinski_weight(r, M, n, j);
    std::vector<BigInt> row(width);
    for (unsigned k = 0; k < width; ++k) {
        row[k] = diff[0];
        for (unsigned j = 0; j + 1 < width - k; ++j) diff[j] = diff[j + 1] - diff[j];
    }
    for (unsigned k = 0; k < width; ++k) {
        const BigInt f = factorial(k);
        if (!mpz_divisible_p(row[k].get_mpz_t(), f.get_mpz_t()))
            throw InvariantError("S_r^(M)(n,k) not integral at r=" + std::to_string(r) + " M=" + std::to_string(M) +
                                 " n=" + std::to_string(n) + " k=" + std::to_string(k));
        mpz_divexact(row[k].get_mpz_t(), row[k].get_mpz_t(), f.get_mpz_t());
    }
    return row;
}

BigInt gen_stirling(unsigned r, unsigned M, unsigned n, unsigned k) {
    if (k > M * n)
        throw RangeError("gen_stirling: k=" + std::to_string(k) + " exceeds M n=" + std::to_string(M * n));
    BigInt acc = 0;
    for (unsigned j = 0; j <= k; ++j) {
        const BigInt term = binomial(k, j) * dobinski_weight(r, M, n, j);
        if ((k - j) % 2 == 0) acc += term;
        else acc -= term;
    }
    const BigInt f = factorial(k);
    if (!mpz_divisible_p(acc.get_mpz_t(), f.get_mpz_t()))
        throw InvariantError("S_r^(M)(n,k) not integral");
    return acc / f;
}

StirlingTriangle::StirlingTriangle(unsigned r, unsigned M, std::vector<std::vector<BigInt>> rows)
    : r_(r), M_(M), rows_(std::move(rows)) {
    for (std::size_t n = 0; n < rows_.size(); ++n)
        if (rows_[n].size() != M_ * n + 1)
            throw InvariantError("triangle row " + std::to_string(n) + " has width " + std::to_string(rows_[n].size()));
}

StirlingTriangle StirlingTriangle::compute(unsigned r, unsigned M, unsigned n_max) {
    std::vector<std::future<std::vector<BigInt>>> jobs;
    for (unsigned n = 0; n <= n_max; ++n)
        jobs.push_back(std::async(std::launch::async, [=] { return gen_stirling_row(r, M, n); }));
    std::vector<std::vector<BigInt>> rows;
    for (auto& job : jobs) rows.push_back(job.get());
    return StirlingTriangle(r, M, std::move(rows));
}

std::vector<BigInt> StirlingTriangle::bell_numbers() const {
    std::vector<BigInt> out;
    for (const auto& row : rows_) {
        BigInt sum = 0;
        for (const auto& v : row) sum += v;
        out.push_back(sum);
    }
    return out;
}

PolyQ gen_bell_poly(unsigned r, unsigned M, unsigned n) {
    std::vector<BigRat> coeffs;
    for (const auto& s : gen_stirling_row(r, M, n)) coeffs.emplace_back(s);
    return PolyQ(std::move(coeffs));
}

BigInt gen_bell_number(unsigned r, unsigned M, unsigned n) {
    BigInt sum = 0;
    for (const auto& s : gen_stirling_row(r, M, n)) sum += s;
    return sum;
}

BellRecord gen_bell(unsigned r, unsigned M, unsigned n) {
    BellRecord rec{r, M, n, gen_bell_poly(r, M, n), 0};
    rec.number = require_integer(rec.polynomial.evaluate(1), "gen_bell");
    return rec;
}

BigInt classical_stirling2(unsigned n, unsigned k) {
    if (k > n) return 0;
    return stirling2_triangle(n)[n][k];
}

BigInt classical_bell(unsigned n) {
    const auto tri = stirling2_triangle(n);
    BigInt sum = 0;
    for (const auto& s : tri[n]) sum += s;
    return sum;
}

PolyQ classical_bell_poly(unsigned n) {
    const auto tri = stirling2_triangle(n);
    std::vector<BigRat> coeffs;
    for (const auto& s : tri[n]) coeffs.emplace_back(s);
    return PolyQ(std::move(coeffs));
}

BigInt stirling1_signless(unsigned n, unsigned k) {
    if (n < 1 || k < 1 || k > n)
        throw RangeError("stirling1_signless needs 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    // row[k] = |s(m,k)|, grown from m = 1.
    std::vector<BigInt> row(n + 1, 0);
    row[1] = 1;
    for (unsigned m = 1; m < n; ++m) {
        for (unsigned j = m + 1; j >= 1; --j) row[j] = row[j - 1] + row[j] * m;
    }
    return row[k];
}

BigInt stirling1_signed(unsigned n, unsigned k) {
    const BigInt mag = stirling1_signless(n, k);
    return (n - k) % 2 == 0 ? mag : BigInt(-mag);
}

PolyQ product_poly(unsigned r) {
    PolyQ out = PolyQ::constant(1);
    for (unsigned p = 1; p <= r; ++p) out = out * PolyQ({BigRat(p), BigRat(1)});
    return out;
}

BigRat dobinski_partial(unsigned r, unsigned M, unsigned n, const BigRat& x, unsigned L) {
    if (x < 0) throw RangeError("dobinski_partial needs x >= 0");
    if (L < 1) throw RangeError("dobinski_partial needs L >= 1");
    BigRat sum = 0;
    BigRat xpow_over_fact = 1;  // x^l / l!
    for (unsigned l = 0; l < L; ++l) {
        sum += BigRat(dobinski_weight(r, M, n, l)) * xpow_over_fact;
        xpow_over_fact *= x / BigRat(l + 1);
    }
    return sum;
}

DobinskiResult dobinski_adaptive(unsigned r, unsigned M, unsigned n, const BigRat& x, const HighPrecReal& tol,
                                 unsigned digits, unsigned max_terms) {
    if (x < 0) throw RangeError("dobinski_adaptive needs x >= 0");
    const HighPrecReal damping = exp(-HighPrecReal(x, digits));
    if (x == 0) {
        return {HighPrecReal(BigRat(dobinski_weight(r, M, n, 0)), digits), 1, HighPrecReal(digits)};
    }
    BigRat sum = 0;
    BigRat prev_term = 0;
    BigRat xpow_over_fact = 1;
    for (unsigned l = 0; l < max_terms; ++l) {
        const BigRat term = BigRat(dobinski_weight(r, M, n, l)) * xpow_over_fact;
        sum += term;
        xpow_over_fact *= x / BigRat(l + 1);
        if (l > 0 && prev_term > 0 && 2 * term <= prev_term) {
            HighPrecReal scaled_term = damping * HighPrecReal(term, digits);
            if (scaled_term < tol) return {damping * HighPrecReal(sum, digits), l + 1, scaled_term};
        }
        prev_term = term;
    }
    throw DomainError("dobinski_adaptive: tolerance not reached within " + std::to_string(max_terms) + " terms");
}

BigInt b_pp(unsigned p, unsigned n) {
    const NormalForm f = nf_power(NormalForm::monomial(p, p), n);
    return require_integer(coherent_expectation(f, {1, 0}).re, "b_pp");
}

}  // namespace normord
