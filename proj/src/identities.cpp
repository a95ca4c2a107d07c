#include "normord/identities.hpp"

#include "normord/boson.hpp"
#include "normord/error.hpp"
#include "normord/graph.hpp"
#include "normord/hypergeom.hpp"
#include "normord/laguerre.hpp"
#include "normord/poly.hpp"
#include "normord/stirling.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace normord {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

std::string str(unsigned v) { return std::to_string(v); }

IdentityReport from_check(std::string id, Params params, const CheckResult& c, std::string pass_details = {}) {
    IdentityReport r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.numeric = c.numeric;
    r.status = c.pass ? ReportStatus::pass : ReportStatus::fail;
    r.details = c.pass ? std::move(pass_details) : c.first_mismatch;
    if (c.numeric) {
        r.digits = c.digits;
        r.tolerance = c.tolerance.to_string(3);
        r.max_deviation = c.max_deviation.to_string(3);
    }
    return r;
}

std::string join(const std::vector<BigInt>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + values[i].get_str();
    return s;
}

PolyQ number_op() { return PolyQ({0, 1}); }

}  // namespace

std::string IdentityReport::param_key() const {
    std::string s;
    for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + params[i].first + "=" + params[i].second;
    return s;
}

std::string to_string(ReportStatus s) {
    switch (s) {
        case ReportStatus::pass: return "pass";
        case ReportStatus::fail: return "fail";
        case ReportStatus::info: return "info";
    }
    return "?";
}

namespace {

nlohmann::ordered_json report_json(const IdentityReport& r, bool with_timing) {
    nlohmann::ordered_json j;
    j["identity"] = r.id;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["parameters"] = params;
    j["mode"] = r.numeric ? "numeric" : "exact";
    j["status"] = to_string(r.status);
    if (r.numeric) {
        j["precision_digits"] = r.digits;
        j["tolerance"] = r.tolerance;
        j["max_deviation"] = r.max_deviation;
    }
    if (r.status == ReportStatus::fail) j["first_mismatch"] = r.details;
    else j["details"] = r.details;
    if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

}  // namespace

std::string report_to_json(const IdentityReport& r, bool with_timing) { return report_json(r, with_timing).dump(); }

std::string reports_to_json(const std::vector<IdentityReport>& rs, bool with_timing) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rs) arr.push_back(report_json(r, with_timing));
    return arr.dump(2);
}

IdentityReport verify_commutator(unsigned r, unsigned M) {
    if (r < 1) throw RangeError("verify_commutator needs r >= 1");
    const BosonWord w = laguerre_word(r, M);
    const NormalForm comm =
        normal_order_rewrite(BosonExpr::of_word(w + w.dagger()) - BosonExpr::of_word(w.dagger() + w));
    const PolyQ reduced = diagonal_reduce(comm);

    const PolyQ n = number_op();
    PolyQ first, second, literal;
    for (unsigned k = 1; k <= r + 1; ++k) first += PolyQ::monomial(BigRat(stirling1_signless(r + 1, k)), k - 1);
    for (unsigned k = 1; k <= r; ++k) {
        second += PolyQ::monomial(BigRat(stirling1_signed(r, k)), k);
        literal += PolyQ::monomial(BigRat(stirling1_signless(r, k)), k);
    }
    const PolyQ shift = pow(PolyQ({BigRat(r), 1}), 2 * M);
    const PolyQ n2m = pow(n, 2 * M);
    const PolyQ expected = shift * first - n2m * second;

    CheckResult c;
    if (reduced != expected) c.fail("oracle " + reduced.to_string() + " vs " + expected.to_string());
    if (r == 1) {
        const PolyQ canonical = pow(PolyQ({1, 1}), 2 * M + 1) - pow(n, 2 * M + 1);
        if (reduced != canonical) c.fail("(n+1)^{2M+1} - n^{2M+1} = " + canonical.to_string());
    }
    const bool literal_ok = reduced == shift * first - n2m * literal;
    return from_check("commutator", {{"r", str(r)}, {"M", str(M)}}, c,
                      "[D,D†] = " + reduced.to_string() + " in x = a†a; signless second sum " +
                          (literal_ok ? "also matches" : "does not match"));
}

IdentityReport verify_stirling_form(unsigned r, unsigned M, unsigned n) {
    const NormalForm oracle = normal_order_rewrite(laguerre_word(r, M).repeated(n));
    NormalForm closed;
    const auto row = gen_stirling_row(r, M, n);
    BigInt bell = 0;
    for (unsigned k = 0; k < row.size(); ++k) {
        closed.add(k, k + r * n, BigRat(row[k]));
        bell += row[k];
    }
    CheckResult c;
    if (oracle != closed) c.fail("rewriting " + nf_to_string(oracle) + " vs closed " + nf_to_string(closed));
    if (oracle.total_weight() != BigRat(bell)) c.fail("z=1 value differs from the row sum");
    return from_check("stirling_form", {{"r", str(r)}, {"M", str(M)}, {"n", str(n)}}, c, "B=" + bell.get_str());
}

IdentityReport verify_bell_first_kind(unsigned r, unsigned n) {
    const BigInt direct = gen_bell_number(r, 1, n);
    BigInt sum = 0;
    for (unsigned p = 1; p <= n + 1; ++p)
        sum += stirling1_signless(n + 1, p) * pow(BigInt(r), n - p + 1) * classical_bell(p - 1);
    const BigRat oracle = nf_power(laguerre_normal_form(r, 1), n).total_weight();
    CheckResult c;
    if (sum != direct) c.fail("first-kind sum " + sum.get_str() + " vs " + direct.get_str());
    if (oracle != BigRat(direct)) c.fail("oracle " + to_string(oracle) + " vs " + direct.get_str());
    return from_check("bell_first_kind", {{"r", str(r)}, {"n", str(n)}}, c, "B=" + direct.get_str());
}

IdentityReport verify_bell_bpp(unsigned M, unsigned n) {
    const BigInt lhs = gen_bell_number(1, M, n);
    const BigInt rhs = b_pp(n, M + 1);
    CheckResult c;
    if (lhs != rhs) c.fail(lhs.get_str() + " vs " + rhs.get_str());
    return from_check("bell_bpp", {{"M", str(M)}, {"n", str(n)}}, c, lhs.get_str());
}

IdentityReport verify_laguerre_power(unsigned n) { return from_check("laguerre_power", {{"n", str(n)}}, laguerre_power_check(n)); }

IdentityReport verify_exp_on_monomial(unsigned n) { return from_check("exp_on_monomial", {{"n", str(n)}}, exp_on_monomial_check(n)); }

IdentityReport verify_exp_on_exp(const BigRat& b, std::size_t series_order, std::size_t lambda_max) {
    if (series_order <= lambda_max) throw RangeError("exp_on_exp needs series order above the lambda order");
    const std::size_t x_order = series_order - lambda_max;
    return from_check("exp_on_exp",
                      {{"b", to_string(b)}, {"x_order", std::to_string(x_order)},
                       {"lambda_max", std::to_string(lambda_max)}},
                      exp_on_exp_check(b, x_order, lambda_max));
}

IdentityReport verify_exp_on_1f1(const BigRat& b, std::size_t series_order, std::size_t lambda_max) {
    if (series_order <= lambda_max) throw RangeError("exp_on_1f1 needs series order above the lambda order");
    const std::size_t x_order = series_order - lambda_max;
    return from_check("exp_on_1f1",
                      {{"b", to_string(b)}, {"x_order", std::to_string(x_order)},
                       {"lambda_max", std::to_string(lambda_max)}},
                      exp_on_1f1_check(b, x_order, lambda_max));
}

IdentityReport verify_sheffer(unsigned r, unsigned n_max) {
    return from_check("sheffer", {{"r", str(r)}, {"n", str(n_max)}}, sheffer_check(r, n_max));
}

IdentityReport verify_egf(unsigned r, unsigned n_max) {
    std::vector<BigInt> values;
    const SeriesQ egf = egf_bell_r1(r, n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) values.push_back(require_integer(egf.coeff(n) * BigRat(factorial(n)), "egf"));
    return from_check("egf", {{"r", str(r)}, {"n", str(n_max)}}, egf_check(r, n_max), join(values));
}

IdentityReport verify_eigen(unsigned r, unsigned M, std::size_t order) {
    return from_check("eigen", {{"r", str(r)}, {"M", str(M)}, {"order", std::to_string(order)}},
                      eigen_check(r, M, order));
}

IdentityReport verify_examples(const std::string& example_id, std::size_t lambda_max, unsigned param) {
    Params p{{"example", example_id}, {"lambda_max", std::to_string(lambda_max)}};
    if (example_id == "laguerre_p") p.emplace_back("p", str(param));
    if (example_id == "eigen_operator" || example_id == "d1m_power") p.emplace_back("M", str(param));
    if (example_id == "bessel_J0_with_I0") {
        // Opt-in only: I0 in place of J0, which is not the normal form and fails.
        const auto lhs = example_sides("bessel_J0", lambda_max).lhs;
        const auto rhs = bessel_j0_with_i0_rhs(lambda_max);
        CheckResult c;
        for (std::size_t j = 0; j < lhs.size() && j < rhs.size(); ++j)
            if (lhs[j] != rhs[j]) {
                c.fail("lambda^" + std::to_string(j) + ": " + nf_to_string(lhs[j]) + " vs " + nf_to_string(rhs[j]));
                break;
            }
        return from_check("examples", std::move(p), c);
    }
    return from_check("examples", std::move(p), example_check(example_id, lambda_max, param));
}

IdentityReport verify_hyp_closed(const std::string& kind, unsigned M, unsigned n, const std::vector<BigRat>& xs,
                                 unsigned digits, const std::string& tolerance) {
    const HypKind k = parse_hyp_kind(kind);
    std::string xs_s;
    for (std::size_t i = 0; i < xs.size(); ++i) xs_s += (i ? "," : "") + to_string(xs[i]);
    Params p{{"kind", kind}, {"M", str(M)}, {"n", str(n)}};
    if (k != HypKind::stirling_gf) p.emplace_back("x", xs_s);
    return from_check("hyp_closed", std::move(p),
                      hyp_closed_form_check(k, M, n, xs, digits, HighPrecReal::from_string(tolerance, digits)));
}

IdentityReport verify_hyp_gf(unsigned r, unsigned M, const BigRat& x, std::size_t lambda_max, unsigned digits,
                             const std::string& tolerance) {
    return from_check("hyp_gf",
                      {{"r", str(r)}, {"M", str(M)}, {"x", to_string(x)}, {"lambda_max", std::to_string(lambda_max)}},
                      hyp_generating_function_check(r, M, x, lambda_max, digits,
                                                    HighPrecReal::from_string(tolerance, digits)));
}

IdentityReport verify_graphs(unsigned r, unsigned M, unsigned n) {
    const NormalForm h = laguerre_normal_form(r, M);
    const auto blocks = blocks_from(h);
    std::vector<GraphLevelState> states{{0, 0, 1}};
    std::vector<BigInt> totals;
    CheckResult c;
    for (unsigned k = 0; k <= n; ++k) {
        if (k > 0) states = enumerate_step(states, blocks);
        NormalForm graphs;
        for (const auto& st : states) graphs.add(st.white, st.gray, st.multiplicity);
        const NormalForm oracle = normal_order_rewrite(laguerre_word(r, M).repeated(k));
        NormalForm closed;
        const auto row = gen_stirling_row(r, M, k);
        for (unsigned j = 0; j < row.size(); ++j) closed.add(j, j + r * k, BigRat(row[j]));
        if (graphs != oracle) c.fail("n=" + str(k) + ": graphs " + nf_to_string(graphs) + " vs oracle " + nf_to_string(oracle));
        if (closed != oracle) c.fail("n=" + str(k) + ": closed form " + nf_to_string(closed) + " vs oracle " + nf_to_string(oracle));
        totals.push_back(require_integer(graphs.total_weight(), "graph total"));
    }
    return from_check("graphs", {{"r", str(r)}, {"M", str(M)}, {"n", str(n)}}, c, "totals " + join(totals));
}

IdentityReport verify_dobinski(unsigned r, unsigned M, unsigned n, unsigned digits, const std::string& tolerance) {
    const BigInt exact = gen_bell_number(r, M, n);
    // Absolute tolerance on a value with many integer digits needs the extra room.
    const unsigned work = digits + static_cast<unsigned>(exact.get_str().size()) + 10;
    const HighPrecReal tol = HighPrecReal::from_string(tolerance, work);
    const DobinskiResult d = dobinski_adaptive(r, M, n, 1, tol * HighPrecReal(make_rat(1, 100), work), work);
    const HighPrecReal dev = abs(d.value - HighPrecReal(BigRat(exact), work));
    CheckResult c = CheckResult::numeric_mode(work, tol);
    c.max_deviation = dev;
    if (!(dev < tol)) c.fail("absolute deviation " + dev.to_string(6));
    return from_check("dobinski", {{"r", str(r)}, {"M", str(M)}, {"n", str(n)}}, c,
                      "B=" + exact.get_str() + " terms=" + std::to_string(d.terms));
}

HighPrecReal conjectured_bell_value(unsigned r, unsigned M, unsigned n, const BigRat& x, unsigned digits) {
    if (r < 1 || M < 1) throw RangeError("conjectured_bell_value needs r, M >= 1");
    const BigRat rr(r);
    const BigRat z = pow(x, r) / BigRat(pow(BigInt(r), r));
    HighPrecReal total(0L, digits);
    for (unsigned s = 0; s < r; ++s) {
        const BigRat shift = BigRat(s) / rr;
        const BigRat coeff = BigRat(pow(BigInt(r), M * n)) * pow(pochhammer(1 + shift, n), M) * pow(x, s) /
                             BigRat(factorial(s));
        ParamList upper(M, BigRat(n + 1) + shift);
        ParamList lower(M, 1 + shift);
        for (unsigned j = 1; j <= r; ++j)
            if (j != r - s) lower.push_back(BigRat(s + j) / rr);
        total += HighPrecReal(coeff, digits) * phyperq_value(upper, lower, z, digits).value;
    }
    return exp(-HighPrecReal(x, digits)) * total;
}

IdentityReport conjecture_probe(unsigned r, unsigned M, unsigned n, const std::vector<BigRat>& xs, unsigned digits) {
    const PolyQ exact = gen_bell_poly(r, M, n);
    IdentityReport rep;
    rep.id = "conjecture";
    rep.numeric = true;
    rep.status = ReportStatus::info;
    rep.digits = digits;
    HighPrecReal worst(0L, digits);
    std::string xs_s;
    for (const BigRat& x : xs) {
        const HighPrecReal res =
            relative_deviation(conjectured_bell_value(r, M, n, x, digits), HighPrecReal(exact.evaluate(x), digits));
        if (worst < res) worst = res;
        rep.details += (rep.details.empty() ? "" : "; ") + ("x=" + to_string(x) + ": " + res.to_string(3));
        xs_s += (xs_s.empty() ? "" : ",") + to_string(x);
    }
    rep.params = {{"r", str(r)}, {"M", str(M)}, {"n", str(n)}, {"x", xs_s}};
    rep.max_deviation = worst.to_string(3);
    rep.tolerance = "none";
    return rep;
}

const std::vector<std::string>& identity_ids() {
    static const std::vector<std::string> ids{"bell_bpp",  "bell_first_kind", "commutator", "conjecture", "laguerre_power",
                                              "dobinski", "egf",   "eigen",      "exp_on_monomial",  "exp_on_exp",
                                              "exp_on_1f1",     "examples", "graphs",   "hyp_closed", "hyp_gf",
                                              "stirling_form",     "sheffer"};
    return ids;
}

bool is_identity_id(const std::string& id) {
    const auto& ids = identity_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace {

using Job = std::function<IdentityReport()>;

std::vector<unsigned> axis(const std::optional<unsigned>& v, unsigned lo, unsigned hi) {
    if (v) return {*v};
    std::vector<unsigned> out;
    for (unsigned i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

std::vector<BigRat> rat_axis(const std::optional<BigRat>& v, std::vector<BigRat> defaults) {
    if (v) return {*v};
    return defaults;
}

const std::vector<BigRat> kSamplePoints{make_rat(1, 2), BigRat(1), BigRat(2)};

void add_jobs(const std::string& id, const SuiteOptions& o, std::vector<Job>& jobs) {
    const std::size_t L = o.lambda_order;
    const std::size_t S = o.series_order;
    const unsigned digits = o.digits;
    const std::string tol = o.tolerance;
    if (id == "commutator") {
        for (unsigned r : axis(o.r, 1, 4))
            for (unsigned M : axis(o.M, 0, 3)) jobs.push_back([=] { return verify_commutator(r, M); });
    } else if (id == "stirling_form") {
        for (unsigned r : axis(o.r, 1, 3))
            for (unsigned M : axis(o.M, 1, 3))
                for (unsigned n : axis(o.n, 0, 5)) jobs.push_back([=] { return verify_stirling_form(r, M, n); });
    } else if (id == "bell_first_kind") {
        for (unsigned r : axis(o.r, 1, 4))
            for (unsigned n : axis(o.n, 0, 8)) jobs.push_back([=] { return verify_bell_first_kind(r, n); });
    } else if (id == "bell_bpp") {
        for (unsigned M : axis(o.M, 0, 3))
            for (unsigned n : axis(o.n, 0, 5)) jobs.push_back([=] { return verify_bell_bpp(M, n); });
    } else if (id == "laguerre_power") {
        for (unsigned n : axis(o.n, 0, 6)) jobs.push_back([=] { return verify_laguerre_power(n); });
    } else if (id == "exp_on_monomial") {
        for (unsigned n : axis(o.n, 0, 6)) jobs.push_back([=] { return verify_exp_on_monomial(n); });
    } else if (id == "exp_on_exp") {
        for (const BigRat& b : rat_axis(o.b, {1, 2, make_rat(1, 3)})) jobs.push_back([=] { return verify_exp_on_exp(b, S, L); });
    } else if (id == "exp_on_1f1") {
        for (const BigRat& b : rat_axis(o.b, {1, 2, 3, make_rat(3, 2)}))
            jobs.push_back([=] { return verify_exp_on_1f1(b, S, L); });
    } else if (id == "sheffer") {
        for (unsigned r : axis(o.r, 1, 3)) {
            const unsigned n = o.n.value_or(5);
            jobs.push_back([=] { return verify_sheffer(r, n); });
        }
    } else if (id == "egf") {
        for (unsigned r : axis(o.r, 1, 4)) {
            const unsigned n = o.n.value_or(8);
            jobs.push_back([=] { return verify_egf(r, n); });
        }
    } else if (id == "eigen") {
        std::vector<std::pair<unsigned, unsigned>> pairs{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}};
        if (o.r || o.M) pairs = {{o.r.value_or(1), o.M.value_or(1)}};
        for (auto [r, M] : pairs) jobs.push_back([=] { return verify_eigen(r, M, S); });
    } else if (id == "examples") {
        const std::vector<std::string> ids = o.example ? std::vector<std::string>{*o.example} : example_ids();
        for (const std::string& ex : ids) {
            std::vector<unsigned> params{1};
            if (ex == "laguerre_p") params = axis(o.p, 1, 3);
            if (ex == "eigen_operator" || ex == "d1m_power") params = axis(o.M, 1, 3);
            for (unsigned p : params) jobs.push_back([=] { return verify_examples(ex, L, p); });
        }
    } else if (id == "hyp_closed") {
        const std::vector<std::string> kinds =
            o.kind ? std::vector<std::string>{*o.kind}
                   : std::vector<std::string>{"stirling_gf", "bell_poly", "bell_poly_r2", "bell_poly_r3"};
        const std::vector<BigRat> xs = rat_axis(o.x, kSamplePoints);
        for (const auto& kind : kinds)
            for (unsigned M : axis(o.M, 1, 3))
                for (unsigned n : axis(o.n, 0, 5))
                    jobs.push_back([=] { return verify_hyp_closed(kind, M, n, xs, digits, tol); });
    } else if (id == "hyp_gf") {
        for (unsigned r : axis(o.r, 1, 3))
            for (unsigned M : axis(o.M, 1, 3))
                for (const BigRat& x : rat_axis(o.x, kSamplePoints))
                    jobs.push_back([=] { return verify_hyp_gf(r, M, x, L, digits, tol); });
    } else if (id == "graphs") {
        for (unsigned r : axis(o.r, 1, 3))
            for (unsigned M : axis(o.M, 1, 3)) {
                const unsigned n = o.n.value_or(5);
                jobs.push_back([=] { return verify_graphs(r, M, n); });
            }
    } else if (id == "dobinski") {
        // the reference sequences: (r, M, largest n)
        std::vector<std::array<unsigned, 3>> grid{{1, 1, 6}, {1, 2, 5}, {1, 3, 5}, {2, 2, 6},
                                                  {2, 3, 6}, {3, 3, 6}, {3, 4, 6}};
        if (o.r || o.M || o.n) grid = {{o.r.value_or(1), o.M.value_or(1), o.n.value_or(5)}};
        for (auto [r, M, n_max] : grid)
            for (unsigned n = (o.n ? n_max : 0); n <= n_max; ++n)
                jobs.push_back([=] { return verify_dobinski(r, M, n, digits, tol); });
    } else if (id == "conjecture") {
        const std::vector<BigRat> xs = rat_axis(o.x, kSamplePoints);
        for (unsigned r : axis(o.r, 1, 4))
            for (unsigned M : axis(o.M, 1, 2))
                for (unsigned n : axis(o.n, 1, 3))
                    jobs.push_back([=] { return conjecture_probe(r, M, n, xs, digits); });
    } else {
        throw RangeError("unknown identity '" + id + "'");
    }
}

}  // namespace

std::vector<IdentityReport> run_identity(const std::string& id, const SuiteOptions& opt) {
    std::vector<Job> jobs;
    if (id == "all") {
        for (const auto& each : identity_ids()) add_jobs(each, opt, jobs);
    } else {
        add_jobs(id, opt, jobs);
    }

    std::vector<IdentityReport> reports(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const auto start = std::chrono::steady_clock::now();
            try {
                reports[i] = jobs[i]();
            } catch (const std::exception& e) {
                reports[i].id = id;
                reports[i].status = ReportStatus::fail;
                reports[i].details = std::string("error: ") + e.what();
            }
            reports[i].elapsed_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    };
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::stable_sort(reports.begin(), reports.end(), [](const IdentityReport& a, const IdentityReport& b) {
        return a.id != b.id ? a.id < b.id : a.param_key() < b.param_key();
    });
    return reports;
}

}  // namespace normord
