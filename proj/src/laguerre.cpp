#include "normord/laguerre.hpp"

#include "normord/error.hpp"
#include "normord/hypergeom.hpp"
#include "normord/poly.hpp"
#include "normord/stirling.hpp"

namespace normord {

namespace {

std::string cell(std::size_t i, std::size_t j) {
    return "x^" + std::to_string(i) + " lambda^" + std::to_string(j);
}

void compare_bi(const BiSeriesQ& lhs, const BiSeriesQ& rhs, CheckResult& out) {
    if (lhs.x_order() != rhs.x_order() || lhs.lambda_order() != rhs.lambda_order()) {
        out.fail("truncation orders differ");
        return;
    }
    for (std::size_t j = 0; j < lhs.lambda_order(); ++j)
        for (std::size_t i = 0; i < lhs.x_order(); ++i)
            if (lhs.coeff(i, j) != rhs.coeff(i, j)) {
                out.fail(cell(i, j) + ": " + to_string(lhs.coeff(i, j)) + " vs " + to_string(rhs.coeff(i, j)));
                return;
            }
}

// First differing entry of two normal forms, reported as (dag, ann).
void compare_nf(const NormalForm& lhs, const NormalForm& rhs, const std::string& where, CheckResult& out) {
    if (lhs == rhs) return;
    NormalForm diff = lhs - rhs;
    const auto& [key, c] = *diff.terms().begin();
    out.fail(where + " (a†)^" + std::to_string(key.dag) + " a^" + std::to_string(key.ann) + ": " +
             to_string(lhs.coeff(key.dag, key.ann)) + " vs " + to_string(rhs.coeff(key.dag, key.ann)));
}

std::vector<NormalForm> oracle_powers(const NormalForm& f, std::size_t n_max) {
    std::vector<NormalForm> out{NormalForm::identity()};
    for (std::size_t n = 1; n <= n_max; ++n) out.push_back(nf_multiply(out.back(), f));
    return out;
}

ParamList repeat(const BigRat& value, std::size_t times) { return ParamList(times, value); }

BigRat inv_factorial(unsigned long n) { return BigRat(1) / BigRat(factorial(n)); }

}  // namespace

SeriesQ apply_Dx(const DxOperator& op, const SeriesQ& s) {
    if (op.r < 1) throw RangeError("D_x(r,M) needs r >= 1");
    const std::size_t order = s.order() > op.r ? s.order() - op.r : 0;
    SeriesQ out(order);
    for (std::size_t q = 0; q < order; ++q) {
        const std::size_t p = q + op.r;
        const BigInt bp(static_cast<unsigned long>(p));
        out.coeff(q) = s.coeff(p) * BigRat(falling_factorial(bp, op.r) * pow(bp, op.M));
    }
    return out;
}

BiSeriesQ exp_lambda_Dx(const DxOperator& op, const SeriesQ& s, std::size_t lambda_max) {
    if (op.r * lambda_max >= s.order())
        throw RangeError("exp_lambda_Dx: x-order " + std::to_string(s.order()) + " leaves no headroom for lambda^" +
                         std::to_string(lambda_max));
    const std::size_t x_order = s.order() - op.r * lambda_max;
    BiSeriesQ out(x_order, lambda_max + 1);
    SeriesQ cur = s;
    for (std::size_t m = 0; m <= lambda_max; ++m) {
        out.set_lambda_slice(m, cur.truncated(x_order) * inv_factorial(m));
        if (m < lambda_max) cur = apply_Dx(op, cur);
    }
    return out;
}

SeriesQ eigenfunction_series(unsigned r, unsigned M, std::size_t order) {
    if (r < 1) throw RangeError("eigenfunction_series needs r >= 1");
    if (order < r) throw RangeError("eigenfunction_series needs order >= r");
    SeriesQ out(order);
    const BigRat rr(r);
    const BigRat step = BigRat(pow(BigInt(r), r + M));
    BigRat c = 1;
    for (std::size_t j = 0; r * j < order; ++j) {
        if (j > 0) {
            BigRat den = BigRat(j) * BigRat(pow(BigInt(static_cast<unsigned long>(j)), M)) * step;
            for (unsigned s = 1; s < r; ++s) den *= BigRat(s) / rr + BigRat(j - 1);
            c /= den;
        }
        out.coeff(r * j) = c;
    }
    return out;
}

ShefferPair sheffer_forms(unsigned r, std::size_t lambda_order, std::size_t x_order) {
    if (r < 1 || lambda_order < 1 || x_order < 1) throw RangeError("sheffer_forms needs r, orders >= 1");
    ShefferPair out{r, BiSeriesQ(x_order, lambda_order), BiSeriesQ(x_order, lambda_order)};
    const SeriesQ t_factor = series_binpow(-BigRat(r), make_rat(-1, r), lambda_order);
    const SeriesQ g_factor = series_binpow(-BigRat(r), -1, lambda_order);
    for (std::size_t m = 0; m < lambda_order; ++m) {
        if (1 + r * m < x_order) out.T.coeff(1 + r * m, m) = t_factor.coeff(m);
        if (r * m < x_order) out.g.coeff(r * m, m) = g_factor.coeff(m);
    }
    return out;
}

std::vector<NormalForm> exp_D_r1_normal_form(unsigned r, unsigned n_max) {
    if (n_max < 1) throw RangeError("exp_D_r1_normal_form needs n_max >= 1");
    const std::size_t order = n_max + 1;
    const ShefferPair sp = sheffer_forms(r, order, r * n_max + 2);
    DoubleDotSeries g(order), u(order);
    for (std::size_t m = 0; m < order; ++m)
        for (std::size_t i = 0; i < sp.g.x_order(); ++i) {
            if (sgn(sp.g.coeff(i, m)) != 0) g.slice(m).add(0, i, sp.g.coeff(i, m));
            BigRat t = sp.T.coeff(i, m);
            if (i == 1 && m == 0) t -= 1;
            if (sgn(t) != 0) u.slice(m).add(1, i, t);  // a† (T - a)
        }
    const DoubleDotSeries product = g * dd_exp(u);
    std::vector<NormalForm> out;
    for (std::size_t n = 0; n < order; ++n) out.push_back(product.slice(n) * BigRat(factorial(n)));
    return out;
}

SeriesQ egf_bell_r1(unsigned r, std::size_t order) {
    if (order < 1) throw RangeError("egf_bell_r1 needs order >= 1");
    const BigRat c = -BigRat(r);
    const SeriesQ inner = series_binpow(c, make_rat(-1, r), order) - SeriesQ::constant(1, order);
    return series_binpow(c, -1, order) * series_exp(inner);
}

DoubleDotSeries DoubleDotSeries::monomial(const BigRat& c, std::size_t m, unsigned long dag, unsigned long ann,
                                          std::size_t order) {
    DoubleDotSeries out(order);
    if (m < order) out.slices_[m].add(dag, ann, c);
    return out;
}

DoubleDotSeries DoubleDotSeries::one(std::size_t order) { return monomial(1, 0, 0, 0, order); }

DoubleDotSeries& DoubleDotSeries::operator+=(const DoubleDotSeries& other) {
    slices_.resize(std::min(order(), other.order()));
    for (std::size_t m = 0; m < order(); ++m) slices_[m] += other.slices_[m];
    return *this;
}

DoubleDotSeries& DoubleDotSeries::operator-=(const DoubleDotSeries& other) {
    slices_.resize(std::min(order(), other.order()));
    for (std::size_t m = 0; m < order(); ++m) slices_[m] -= other.slices_[m];
    return *this;
}

DoubleDotSeries& DoubleDotSeries::operator*=(const BigRat& c) {
    for (auto& s : slices_) s *= c;
    return *this;
}

NormalForm commutative_product(const NormalForm& f, const NormalForm& g) {
    NormalForm out;
    for (const auto& [kf, cf] : f.terms())
        for (const auto& [kg, cg] : g.terms()) out.add(kf.dag + kg.dag, kf.ann + kg.ann, cf * cg);
    return out;
}

DoubleDotSeries operator*(const DoubleDotSeries& a, const DoubleDotSeries& b) {
    const std::size_t order = std::min(a.order(), b.order());
    DoubleDotSeries out(order);
    for (std::size_t i = 0; i < order; ++i) {
        if (a.slice(i).empty()) continue;
        for (std::size_t j = 0; i + j < order; ++j)
            if (!b.slice(j).empty()) out.slice(i + j) += commutative_product(a.slice(i), b.slice(j));
    }
    return out;
}

DoubleDotSeries dd_compose(const std::vector<BigRat>& taylor, const DoubleDotSeries& u) {
    if (u.order() > 0 && !u.slice(0).empty())
        throw DomainError("dd_compose: the inner series has a lambda^0 part");
    DoubleDotSeries out(u.order());
    DoubleDotSeries power = DoubleDotSeries::one(u.order());
    for (std::size_t j = 0; j < taylor.size() && j < u.order(); ++j) {
        if (j > 0) power = power * u;
        out += power * taylor[j];
    }
    return out;
}

DoubleDotSeries dd_exp(const DoubleDotSeries& u) {
    std::vector<BigRat> taylor;
    for (std::size_t j = 0; j < u.order(); ++j) taylor.push_back(inv_factorial(j));
    return dd_compose(taylor, u);
}

DoubleDotSeries dd_binpow(const DoubleDotSeries& u, const BigRat& alpha) {
    std::vector<BigRat> taylor;
    for (std::size_t j = 0; j < u.order(); ++j) taylor.push_back(gen_binomial(alpha, j));
    return dd_compose(taylor, u);
}

CheckResult exp_on_exp_check(const BigRat& b, std::size_t x_order, std::size_t lambda_max) {
    const std::size_t in_order = x_order + lambda_max;
    SeriesQ s(in_order);
    BigRat c = 1;
    for (std::size_t i = 0; i < in_order; ++i) {
        s.coeff(i) = c;
        c *= -b / BigRat(i + 1);
    }
    const BiSeriesQ lhs = exp_lambda_Dx({1, 1}, s, lambda_max);
    BiSeriesQ rhs(x_order, lambda_max + 1);
    for (std::size_t i = 0; i < x_order; ++i)
        for (std::size_t j = 0; j <= lambda_max; ++j)
            rhs.coeff(i, j) = s.coeff(i) * gen_binomial(BigRat(-1) - BigRat(i), j) * pow(b, j);
    CheckResult out;
    compare_bi(lhs, rhs, out);
    return out;
}

CheckResult exp_on_1f1_check(const BigRat& b, std::size_t x_order, std::size_t lambda_max) {
    const SeriesQ s = phyperq_series({b}, {1}, x_order + lambda_max);
    const BiSeriesQ lhs = exp_lambda_Dx({1, 1}, s, lambda_max);
    BiSeriesQ rhs(x_order, lambda_max + 1);
    for (std::size_t i = 0; i < x_order; ++i)
        for (std::size_t j = 0; j <= lambda_max; ++j) {
            const BigRat g = gen_binomial(-b - BigRat(i), j);
            rhs.coeff(i, j) = s.coeff(i) * (j % 2 == 0 ? g : BigRat(-g));
        }
    CheckResult out;
    compare_bi(lhs, rhs, out);
    return out;
}

CheckResult exp_on_monomial_check(unsigned n) {
    const BiSeriesQ lhs = exp_lambda_Dx({1, 1}, SeriesQ::from_poly(PolyQ::monomial(1, n), 2 * n + 1), n);
    BiSeriesQ rhs(n + 1, n + 1);
    const PolyQ l = laguerre_poly(n);
    const BigRat nf(factorial(n));
    for (unsigned k = 0; k <= n; ++k) rhs.coeff(k, n - k) = nf * (k % 2 == 0 ? l.coeff(k) : BigRat(-l.coeff(k)));
    CheckResult out;
    compare_bi(lhs, rhs, out);
    return out;
}

CheckResult laguerre_power_check(unsigned n) {
    const NormalForm lhs = nf_power(laguerre_normal_form(1, 1), n);
    NormalForm rhs;
    const PolyQ l = laguerre_poly(n);
    const BigRat nf(factorial(n));
    for (unsigned k = 0; k <= n; ++k) rhs.add(k, k + n, nf * (k % 2 == 0 ? l.coeff(k) : BigRat(-l.coeff(k))));
    CheckResult out;
    compare_nf(lhs, rhs, "n=" + std::to_string(n), out);
    return out;
}

CheckResult eigen_check(unsigned r, unsigned M, std::size_t order) {
    const SeriesQ e = eigenfunction_series(r, M, order);
    CheckResult out;
    if (e.coeff(0) != 1) out.fail("E(0) != 1");
    for (unsigned p = 1; p < r && p < order; ++p)
        if (sgn(e.coeff(p)) != 0) out.fail("derivative " + std::to_string(p) + " at 0 is nonzero");
    const SeriesQ de = apply_Dx({r, M}, e);
    for (std::size_t p = 0; p < de.order(); ++p)
        if (de.coeff(p) != e.coeff(p)) {
            out.fail("x^" + std::to_string(p) + ": " + to_string(de.coeff(p)) + " vs " + to_string(e.coeff(p)));
            break;
        }
    return out;
}

CheckResult sheffer_check(unsigned r, unsigned n_max) {
    const auto forms = exp_D_r1_normal_form(r, n_max);
    const auto oracle = oracle_powers(laguerre_normal_form(r, 1), n_max);
    CheckResult out;
    for (unsigned n = 0; n <= n_max; ++n) compare_nf(forms[n], oracle[n], "n=" + std::to_string(n), out);
    return out;
}

CheckResult egf_check(unsigned r, unsigned n_max) {
    const SeriesQ egf = egf_bell_r1(r, n_max + 1);
    CheckResult out;
    for (unsigned n = 0; n <= n_max; ++n) {
        const BigRat got = egf.coeff(n) * BigRat(factorial(n));
        const BigInt want = gen_bell_number(r, 1, n);
        if (got != BigRat(want)) out.fail("n=" + std::to_string(n) + ": " + to_string(got) + " vs " + want.get_str());
    }
    return out;
}

const std::vector<std::string>& example_ids() {
    static const std::vector<std::string> ids{"exp_d11",      "hyp1f1_b3",  "hyp1f1_b3half", "laguerre_p",
                                              "bessel_I0", "bessel_J0", "eigen_operator",         "d1m_power"};
    return ids;
}

namespace {

struct DoubleDotBasics {
    std::size_t order;
    DoubleDotSeries lambda_a;      // lambda a
    DoubleDotSeries w;             // lambda a† a^2 / (1 - lambda a)
    DoubleDotSeries lambda_ad_a2;  // lambda a† a^2

    explicit DoubleDotBasics(std::size_t order_)
        : order(order_),
          lambda_a(DoubleDotSeries::monomial(1, 1, 0, 1, order_)),
          lambda_ad_a2(DoubleDotSeries::monomial(1, 1, 1, 2, order_)) {
        w = lambda_ad_a2 * inv_one_minus_lambda_a(-1);
    }
    // (1 - lambda a)^alpha
    DoubleDotSeries inv_one_minus_lambda_a(const BigRat& alpha) const { return dd_binpow(lambda_a * BigRat(-1), alpha); }
};

std::vector<BigRat> bessel_taylor(std::size_t order, bool alternating) {
    // sum_k (+-u)^k / (k!)^2, i.e. I0 or J0 at 2 sqrt(u)
    std::vector<BigRat> t;
    for (std::size_t k = 0; k < order; ++k) {
        const BigRat c = inv_factorial(k) * inv_factorial(k);
        t.push_back(alternating && k % 2 == 1 ? BigRat(-c) : c);
    }
    return t;
}

std::vector<NormalForm> slices_of(const DoubleDotSeries& s) { return s.slices(); }

std::vector<NormalForm> example_rhs(const std::string& id, std::size_t lambda_max, unsigned param) {
    const DoubleDotBasics b(lambda_max + 1);
    if (id == "exp_d11") return slices_of(b.inv_one_minus_lambda_a(-1) * dd_exp(b.w));
    if (id == "hyp1f1_b3") {
        std::vector<BigRat> l2;  // L_2(-w)
        const PolyQ l = laguerre_poly(2);
        for (unsigned k = 0; k <= 2; ++k) l2.push_back(k % 2 == 0 ? l.coeff(k) : BigRat(-l.coeff(k)));
        return slices_of(b.inv_one_minus_lambda_a(-3) * dd_compose(l2, b.w) * dd_exp(b.w));
    }
    if (id == "hyp1f1_b3half") {
        // 1F1(3/2;1;w) = e^{w/2} [(1 + w) I0(w/2) + w I1(w/2)]
        std::vector<BigRat> i0, i1;
        for (std::size_t k = 0; k < b.order; ++k) {
            i0.push_back(k % 2 == 0 ? BigRat(inv_factorial(k / 2) * inv_factorial(k / 2) / BigRat(pow(BigInt(4), k))) : BigRat(0));
            i1.push_back(k % 2 == 1 ? BigRat(inv_factorial(k / 2) * inv_factorial(k / 2 + 1) / BigRat(pow(BigInt(4), k)))
                                    : BigRat(0));
        }
        const DoubleDotSeries one_plus_w = DoubleDotSeries::one(b.order) + b.w;
        const DoubleDotSeries bracket = one_plus_w * dd_compose(i0, b.w) + b.w * dd_compose(i1, b.w);
        return slices_of(b.inv_one_minus_lambda_a(make_rat(-3, 2)) * dd_exp(b.w * make_rat(1, 2)) * bracket);
    }
    if (id == "laguerre_p") {
        const unsigned p = param;
        // L_p(-a†a/(1 - lambda a)) as a finite sum of powers
        const DoubleDotSeries v = DoubleDotSeries::monomial(1, 0, 1, 1, b.order) * b.inv_one_minus_lambda_a(-1);
        const PolyQ l = laguerre_poly(p);
        DoubleDotSeries lp(b.order), power = DoubleDotSeries::one(b.order);
        for (unsigned k = 0; k <= p; ++k) {
            if (k > 0) power = power * v;
            lp += power * (k % 2 == 0 ? l.coeff(k) : BigRat(-l.coeff(k)));
        }
        const DoubleDotSeries tail = DoubleDotSeries::monomial(1, p, 0, p, b.order);
        return slices_of(b.inv_one_minus_lambda_a(-BigRat(p + 1)) * dd_exp(b.w) * lp * tail);
    }
    if (id == "bessel_I0")
        return slices_of(dd_exp(b.lambda_a) * dd_compose(bessel_taylor(b.order, false), b.lambda_ad_a2));
    if (id == "bessel_J0")
        return slices_of(dd_exp(b.lambda_a * BigRat(-1)) * dd_compose(bessel_taylor(b.order, true), b.lambda_ad_a2));
    throw RangeError("unknown example id '" + id + "'");
}

std::vector<BigRat> example_taylor(const std::string& id, std::size_t lambda_max, unsigned param) {
    std::vector<BigRat> c;
    for (std::size_t n = 0; n <= lambda_max; ++n) {
        const BigRat sq = inv_factorial(n) * inv_factorial(n);
        if (id == "exp_d11") c.push_back(inv_factorial(n));
        else if (id == "hyp1f1_b3") c.push_back(pochhammer(3, n) * sq);
        else if (id == "hyp1f1_b3half") c.push_back(pochhammer(make_rat(3, 2), n) * sq);
        else if (id == "laguerre_p") c.push_back(n >= param ? BigRat(inv_factorial(param) * inv_factorial(n - param)) : BigRat(0));
        else if (id == "bessel_I0") c.push_back(sq);
        else if (id == "bessel_J0") c.push_back(n % 2 == 0 ? sq : BigRat(-sq));
        else throw RangeError("unknown example id '" + id + "'");
    }
    return c;
}

// Slice n of e^{-t} * A(t) with t = a† a, attached to a^n, as a normal form.
// The t-series is truncated well above the expected degree so that any
// surviving high-order term shows up as a mismatch.
NormalForm t_series_to_nf(const SeriesQ& a, unsigned n) {
    SeriesQ e_minus(a.order());
    BigRat c = 1;
    for (std::size_t k = 0; k < a.order(); ++k) {
        e_minus.coeff(k) = c;
        c *= BigRat(-1) / BigRat(k + 1);
    }
    const SeriesQ prod = e_minus * a;
    NormalForm out;
    for (std::size_t k = 0; k < prod.order(); ++k) out.add(k, k + n, prod.coeff(k));
    return out;
}

constexpr std::size_t kTailMargin = 6;

CheckResult eigen_operator_check(unsigned M, std::size_t lambda_max) {
    // E(1,M; lambda D(1,M)) = sum_n lambda^n / (n!)^{M+1} [D(1,M)]^n
    //   = :e^{-t} sum_l t^l / l! MFM(1+l (M times); 1 (M times); lambda a):
    const auto oracle = oracle_powers(laguerre_normal_form(1, M), lambda_max);
    CheckResult out;
    for (unsigned n = 0; n <= lambda_max; ++n) {
        const BigRat scale = BigRat(1) / BigRat(pow(factorial(n), M + 1));
        const std::size_t order = M * n + kTailMargin;
        SeriesQ a(order);
        for (std::size_t l = 0; l < order; ++l) {
            const BigRat ratio = BigRat(factorial(n + l)) / BigRat(factorial(l));
            a.coeff(l) = inv_factorial(l) * pow(ratio, M) * scale;
        }
        compare_nf(oracle[n] * scale, t_series_to_nf(a, n), "lambda^" + std::to_string(n), out);
    }
    return out;
}

CheckResult d1m_power_check(unsigned M, std::size_t lambda_max) {
    // [D(1,M)]^n = (n!)^M :e^{-t} MFM(n+1 (M times); 1 (M times); t) a^n:
    const auto oracle = oracle_powers(laguerre_normal_form(1, M), lambda_max);
    CheckResult out;
    for (unsigned n = 0; n <= lambda_max; ++n) {
        const SeriesQ f = phyperq_series(repeat(n + 1, M), repeat(1, M), M * n + kTailMargin) *
                          BigRat(pow(factorial(n), M));
        const NormalForm rhs = t_series_to_nf(f, n);
        compare_nf(oracle[n], rhs, "n=" + std::to_string(n), out);
        if (rhs.total_weight() != BigRat(gen_bell_number(1, M, n)))
            out.fail("n=" + std::to_string(n) + ": weight at z=1 differs from B_1^(M)(n)");
    }
    return out;
}

}  // namespace

ExampleSides example_sides(const std::string& id, std::size_t lambda_max, unsigned param) {
    const std::vector<BigRat> taylor = example_taylor(id, lambda_max, param);
    const auto powers = oracle_powers(laguerre_normal_form(1, 1), lambda_max);
    ExampleSides out;
    for (std::size_t n = 0; n <= lambda_max; ++n) out.lhs.push_back(powers[n] * taylor[n]);
    out.rhs = example_rhs(id, lambda_max, param);
    return out;
}

std::vector<NormalForm> bessel_j0_with_i0_rhs(std::size_t lambda_max) {
    const DoubleDotBasics b(lambda_max + 1);
    return slices_of(dd_exp(b.lambda_a * BigRat(-1)) * dd_compose(bessel_taylor(b.order, false), b.lambda_ad_a2));
}

CheckResult example_check(const std::string& id, std::size_t lambda_max, unsigned param) {
    if (id == "eigen_operator") return eigen_operator_check(param, lambda_max);
    if (id == "d1m_power") return d1m_power_check(param, lambda_max);
    const ExampleSides sides = example_sides(id, lambda_max, param);
    CheckResult out;
    for (std::size_t n = 0; n <= lambda_max; ++n)
        compare_nf(sides.lhs[n], sides.rhs[n], "lambda^" + std::to_string(n), out);
    return out;
}

HypKind parse_hyp_kind(const std::string& name) {
    if (name == "stirling_gf") return HypKind::stirling_gf;
    if (name == "bell_poly") return HypKind::bell_poly;
    if (name == "bell_poly_r2") return HypKind::bell_poly_r2;
    if (name == "bell_poly_r3") return HypKind::bell_poly_r3;
    throw RangeError("unknown hypergeometric form '" + name + "'");
}

std::string to_string(HypKind kind) {
    switch (kind) {
        case HypKind::stirling_gf: return "stirling_gf";
        case HypKind::bell_poly: return "bell_poly";
        case HypKind::bell_poly_r2: return "bell_poly_r2";
        case HypKind::bell_poly_r3: return "bell_poly_r3";
    }
    return "?";
}

unsigned hyp_kind_r(HypKind kind) {
    switch (kind) {
        case HypKind::bell_poly_r2: return 2;
        case HypKind::bell_poly_r3: return 3;
        default: return 1;
    }
}

HighPrecReal hyp_closed_form_value(unsigned r, unsigned M, unsigned n, const BigRat& x, unsigned digits) {
    auto hp = [digits](const BigRat& v) { return HighPrecReal(v, digits); };
    auto F = [digits](const ParamList& up, const ParamList& low, const BigRat& z) {
        return phyperq_value(up, low, z, digits).value;
    };
    const HighPrecReal damping = exp(-hp(x));
    const BigRat nn(n);
    switch (r) {
        case 1:
            return damping * hp(BigRat(pow(factorial(n), M))) * F(repeat(nn + 1, M), repeat(1, M), x);
        case 2: {
            const BigRat z = x * x / BigRat(4);
            ParamList low_a = repeat(1, M);
            low_a.push_back(make_rat(1, 2));
            const HighPrecReal pi_m2 = pow(sqrt(pi(digits)), M);
            const HighPrecReal first = hp(BigRat(pow(factorial(n), M))) * F(repeat(nn + 1, M), low_a, z) * pi_m2;
            const HighPrecReal second = hp(BigRat(pow(BigInt(2), M))) * pow(gamma(nn + make_rat(3, 2), digits), M) *
                                        hp(x) * F(repeat(nn + make_rat(3, 2), M), repeat(make_rat(3, 2), M + 1), z);
            return hp(BigRat(pow(BigInt(2), M * n))) / pi_m2 * damping * (first + second);
        }
        case 3: {
            const BigRat z = x * x * x / BigRat(27);
            const HighPrecReal pi_h = pi(digits);
            const HighPrecReal g23 = gamma(make_rat(2, 3), digits);
            const HighPrecReal three_mn = hp(BigRat(pow(BigInt(3), M * n)));
            ParamList low1 = repeat(1, M);
            low1.push_back(make_rat(1, 3));
            low1.push_back(make_rat(2, 3));
            ParamList low2 = repeat(make_rat(4, 3), M + 1);
            low2.push_back(make_rat(2, 3));
            ParamList low3 = repeat(make_rat(5, 3), M + 1);
            low3.push_back(make_rat(4, 3));
            const HighPrecReal t1 = hp(BigRat(pow(BigInt(2), M + 1))) * three_mn *
                                    pow(pi_h * hp(BigRat(factorial(n))) * g23, M) * F(repeat(nn + 1, M), low1, z);
            // 3^{M(n+3/2)} = 3^{Mn} 3^M sqrt(3)^M
            const HighPrecReal t2 = hp(2) * three_mn * hp(BigRat(pow(BigInt(3), M))) * pow(sqrt(hp(3)), M) *
                                    pow(g23 * g23 * gamma(nn + make_rat(4, 3), digits), M) * hp(x) *
                                    F(repeat(nn + make_rat(4, 3), M), low2, z);
            const HighPrecReal t3 = three_mn * hp(BigRat(pow(BigInt(3), M))) *
                                    pow(pi_h * gamma(nn + make_rat(5, 3), digits), M) * hp(x * x) *
                                    F(repeat(nn + make_rat(5, 3), M), low3, z);
            const HighPrecReal pre = hp(BigRat(pow(BigInt(2), M + 1))) * pow(pi_h * g23, M);
            return damping * (t1 + t2 + t3) / pre;
        }
        default:
            throw RangeError("hyp_closed_form_value covers r = 1, 2, 3 only");
    }
}

CheckResult hyp_closed_form_check(HypKind kind, unsigned M, unsigned n, const std::vector<BigRat>& xs,
                                  unsigned digits, const HighPrecReal& tol) {
    if (M < 1) throw RangeError("hyp_closed_form_check needs M >= 1");
    if (kind == HypKind::stirling_gf) {
        CheckResult out;
        const BigRat nf_m(pow(factorial(n), M));
        for (unsigned k = 0; k <= M * n; ++k) {
            ParamList up = repeat(BigRat(n + 1), M);
            up.insert(up.begin(), -BigRat(k));
            const BigRat f = phyperq_partial(up, repeat(1, M), 1, k + 1);
            const BigRat got = (k % 2 == 0 ? nf_m : BigRat(-nf_m)) * inv_factorial(k) * f;
            if (got != BigRat(gen_stirling(1, M, n, k)))
                out.fail("k=" + std::to_string(k) + ": " + to_string(got) + " vs " + gen_stirling(1, M, n, k).get_str());
        }
        return out;
    }
    const unsigned r = hyp_kind_r(kind);
    const PolyQ exact = gen_bell_poly(r, M, n);
    CheckResult out = kind == HypKind::bell_poly ? CheckResult::exact() : CheckResult::numeric_mode(digits, tol);
    if (kind == HypKind::bell_poly) {
        // e^x B_1^(M)(n,x) = (n!)^M MFM(n+1; 1; x) coefficientwise
        const std::size_t order = M * n + kTailMargin + 4;
        const SeriesQ lhs = series_exp(SeriesQ::variable(order)) * SeriesQ::from_poly(exact, order);
        const SeriesQ rhs =
            phyperq_series(repeat(BigRat(n + 1), M), repeat(1, M), order) * BigRat(pow(factorial(n), M));
        for (std::size_t i = 0; i < order; ++i)
            if (lhs.coeff(i) != rhs.coeff(i)) {
                out.fail("x^" + std::to_string(i) + ": " + to_string(lhs.coeff(i)) + " vs " + to_string(rhs.coeff(i)));
                break;
            }
    }
    CheckResult values = CheckResult::numeric_mode(digits, tol);
    for (const BigRat& x : xs) {
        const HighPrecReal got = hyp_closed_form_value(r, M, n, x, digits);
        values.deviation(relative_deviation(got, HighPrecReal(exact.evaluate(x), digits)), "x=" + to_string(x));
    }
    out.merge(values);
    if (kind == HypKind::bell_poly) out.max_deviation = values.max_deviation;
    return out;
}

HighPrecReal hyp_gf_coefficient(unsigned r, unsigned M, const BigRat& x, unsigned n, unsigned digits) {
    if (r < 1) throw RangeError("hyp_gf_coefficient needs r >= 1");
    if (x < 0) throw RangeError("hyp_gf_coefficient needs x >= 0");
    // [lambda^n] MFM(l/r+1; 1; r^M lambda) = ((l/r+1)_n)^M r^{Mn} / ((n!)^M n!)
    const BigRat scale = BigRat(pow(BigInt(r), M * n)) / BigRat(pow(factorial(n), M + 1));
    const BigRat cutoff = BigRat(1) / BigRat(pow(BigInt(10), digits + 5));
    BigRat sum = 0, prev = 0, xpow = 1;
    for (unsigned l = 0; l < 100000; ++l) {
        const BigRat term = xpow * pow(pochhammer(make_rat(l, r) + 1, n), M) * scale;
        sum += term;
        if (sgn(x) == 0) break;
        if (l > 0 && 2 * term <= prev && term <= sum * cutoff) break;
        prev = term;
        xpow *= x / BigRat(l + 1);
        if (l + 1 == 100000) throw DomainError("hyp_gf_coefficient: outer sum did not settle");
    }
    return exp(-HighPrecReal(x, digits)) * HighPrecReal(sum, digits);
}

CheckResult hyp_generating_function_check(unsigned r, unsigned M, const BigRat& x, std::size_t lambda_max,
                                          unsigned digits, const HighPrecReal& tol) {
    CheckResult out = CheckResult::numeric_mode(digits, tol);
    for (unsigned n = 0; n <= lambda_max; ++n) {
        const BigRat exact = gen_bell_poly(r, M, n).evaluate(x) / BigRat(pow(factorial(n), M + 1));
        out.deviation(relative_deviation(hyp_gf_coefficient(r, M, x, n, digits), HighPrecReal(exact, digits)),
                      "lambda^" + std::to_string(n));
    }
    return out;
}

}  // namespace normord
