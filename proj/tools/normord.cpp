#include "normord/normord.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CtxDeleter {
    void operator()(normord_ctx* c) const { normord_ctx_free(c); }
};
struct NfDeleter {
    void operator()(normord_nf* n) const { normord_nf_free(n); }
};
using Ctx = std::unique_ptr<normord_ctx, CtxDeleter>;
using Nf = std::unique_ptr<normord_nf, NfDeleter>;

// Carries a library status out of nested calls.
struct Failure {
    normord_status status;
    std::string message;
};

void check(normord_ctx* ctx, normord_status s, const std::string& what) {
    if (s != NORMORD_OK) throw Failure{s, what + ": " + normord_last_error(ctx)};
    const std::string warn = normord_last_warning(ctx);
    if (!warn.empty()) std::cerr << "warning: " << warn << '\n';
}

// Takes ownership of a library string.
std::string take(char* s) {
    std::string out = s ? s : "";
    normord_string_free(s);
    return out;
}

int exit_code_for(normord_status s) {
    switch (s) {
        case NORMORD_ERR_PARSE:
        case NORMORD_ERR_RANGE:
        case NORMORD_ERR_ARGUMENT: return kExitUsage;
        default: return kExitRuntime;
    }
}

struct Global {
    std::string format = "json";
    std::optional<std::size_t> order, lambda_order;
    std::optional<unsigned> precision, threads;
    std::optional<std::string> tolerance, cache_dir;
};

normord_format parse_format(const std::string& f) {
    if (f == "table") return NORMORD_FORMAT_TABLE;
    if (f == "bfile") return NORMORD_FORMAT_BFILE;
    return NORMORD_FORMAT_JSON;
}

Ctx make_context(const Global& g) {
    normord_ctx* raw = nullptr;
    if (normord_ctx_new(&raw) != NORMORD_OK) throw Failure{NORMORD_ERR_INTERNAL, "cannot create context"};
    Ctx ctx(raw);
    if (g.order) check(raw, normord_set_series_order(raw, *g.order), "--order");
    if (g.lambda_order) check(raw, normord_set_lambda_order(raw, *g.lambda_order), "--lambda-order");
    // Tolerance first when it is coarser than the default, precision first otherwise;
    // both orders are tried so that any valid pair is accepted.
    if (g.precision && g.tolerance) {
        if (normord_set_tolerance(raw, g.tolerance->c_str()) != NORMORD_OK) {
            check(raw, normord_set_precision(raw, *g.precision), "--precision");
            check(raw, normord_set_tolerance(raw, g.tolerance->c_str()), "--tolerance");
        } else {
            check(raw, normord_set_precision(raw, *g.precision), "--precision");
        }
    } else if (g.precision) {
        check(raw, normord_set_precision(raw, *g.precision), "--precision");
    } else if (g.tolerance) {
        check(raw, normord_set_tolerance(raw, g.tolerance->c_str()), "--tolerance");
    }
    if (g.cache_dir) check(raw, normord_set_cache_dir(raw, g.cache_dir->c_str()), "--cache-dir");
    if (g.threads) check(raw, normord_set_threads(raw, *g.threads), "--threads");
    return ctx;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal ordering of boson expressions, generalized Stirling/Bell sequences and identity checks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", normord_version());

    Global g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table", "bfile"}));
    app.add_option("--order", g.order, "Series truncation order")->check(CLI::PositiveNumber);
    app.add_option("--lambda-order", g.lambda_order, "Truncation order in lambda")->check(CLI::PositiveNumber);
    app.add_option("--precision", g.precision, "Working precision in decimal digits (>= 30)");
    app.add_option("--tolerance", g.tolerance, "Numeric tolerance, e.g. 1e-30");
    app.add_option("--cache-dir", g.cache_dir, "Triangle cache directory")->envname("NORMORD_CACHE_DIR");
    app.add_option("--threads", g.threads, "Worker threads for verify (0: all cores)");

    auto* order = app.add_subcommand("order", "Normal order an expression");
    std::string expr;
    unsigned long power = 1;
    std::optional<std::string> expectation;
    bool graphs = false, explicit_graphs = false;
    order->add_option("expr", expr, "Expression over a, ad, n, rationals")->required();
    order->add_option("--power", power, "Raise the expression to this power");
    order->add_option("--expectation", expectation, "Coherent-state value at z = re or re,im");
    order->add_flag("--graphs", graphs, "Coefficient table counted over graphs with --power vertices");
    order->add_flag("--explicit", explicit_graphs, "List every graph (power <= 3)");

    auto* seq = app.add_subcommand("seq", "Generalized Bell numbers or Stirling rows");
    unsigned r = 1, M = 1, n_max = 6;
    bool poly = false, number = false;
    seq->add_option("--r", r, "Annihilator power r")->required();
    seq->add_option("--M", M, "Number-operator power M")->required();
    seq->add_option("--n-max,--n", n_max, "Largest n");
    auto* poly_flag = seq->add_flag("--poly", poly, "Rows S_r^(M)(n,k), i.e. polynomial coefficients");
    seq->add_flag("--number", number, "Row sums B_r^(M)(n) (default)")->excludes(poly_flag);

    auto* verify = app.add_subcommand("verify", "Run identity checks");
    std::string id;
    std::optional<unsigned> vr, vM, vn, vp;
    std::optional<std::string> vb, vx, vexample, vkind;
    bool no_timing = false, list = false;
    verify->add_option("id", id, "Identity id or 'all'");
    verify->add_option("--r", vr);
    verify->add_option("--M", vM);
    verify->add_option("--n", vn);
    verify->add_option("--p", vp);
    verify->add_option("--b", vb, "Rational parameter b");
    verify->add_option("--x", vx, "Rational sample point");
    verify->add_option("--example", vexample);
    verify->add_option("--kind", vkind);
    verify->add_flag("--no-timing", no_timing, "Omit elapsed times for byte-stable output");
    verify->add_flag("--list", list, "Print the identity ids");

    auto* cache = app.add_subcommand("cache", "Manage the triangle cache");
    cache->require_subcommand(1);
    auto* clear = cache->add_subcommand("clear", "Remove every cached triangle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Ctx ctx = make_context(g);
        normord_ctx* c = ctx.get();
        const normord_format fmt = parse_format(g.format);
        char* out = nullptr;

        if (*order) {
            normord_nf* raw = nullptr;
            check(c, normord_nf_parse(c, expr.c_str(), &raw), "parse");
            Nf base(raw);
            if (graphs || explicit_graphs) {
                if (explicit_graphs) check(c, normord_nf_graph_list(c, base.get(), power, &out), "graphs");
                else check(c, normord_nf_graph_table(c, base.get(), power, &out), "graphs");
                std::cout << take(out) << (explicit_graphs ? "" : "\n");
                return kExitOk;
            }
            check(c, normord_nf_power(c, base.get(), power, &raw), "power");
            Nf result(raw);
            if (expectation) {
                const std::size_t comma = expectation->find(',');
                const std::string re = expectation->substr(0, comma);
                const std::string im = comma == std::string::npos ? "" : expectation->substr(comma + 1);
                check(c, normord_nf_expectation(c, result.get(), re.c_str(), im.empty() ? nullptr : im.c_str(), &out),
                      "expectation");
                std::cout << take(out) << '\n';
                return kExitOk;
            }
            check(c, normord_nf_render(c, result.get(), fmt, &out), "render");
            std::cout << take(out);
            return kExitOk;
        }

        if (*seq) {
            check(c, normord_sequence(c, r, M, n_max, poly ? 1 : 0, fmt, &out), "seq");
            std::cout << take(out);
            return kExitOk;
        }

        if (*verify) {
            if (list) {
                check(c, normord_identity_ids(c, &out), "list");
                std::cout << take(out);
                return kExitOk;
            }
            if (id.empty()) {
                std::cerr << "verify: an identity id or 'all' is required\n";
                return kExitUsage;
            }
            normord_verify_options opt;
            normord_verify_options_init(&opt);
            if (vr) opt.has_r = 1, opt.r = *vr;
            if (vM) opt.has_M = 1, opt.M = *vM;
            if (vn) opt.has_n = 1, opt.n = *vn;
            if (vp) opt.has_p = 1, opt.p = *vp;
            if (vb) opt.b = vb->c_str();
            if (vx) opt.x = vx->c_str();
            if (vexample) opt.example = vexample->c_str();
            if (vkind) opt.kind = vkind->c_str();
            opt.with_timing = no_timing ? 0 : 1;
            std::size_t failures = 0;
            check(c, normord_verify(c, id.c_str(), &opt, &out, &failures), "verify");
            std::cout << take(out);
            if (failures) std::cerr << failures << " check(s) failed\n";
            return failures ? kExitVerifyFailed : kExitOk;
        }

        if (*clear) {
            std::size_t removed = 0;
            check(c, normord_cache_clear(c, &removed), "cache clear");
            std::cout << "removed " << removed << " cached triangle(s)\n";
            return kExitOk;
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return exit_code_for(f.status);
    }
    return kExitUsage;
}
