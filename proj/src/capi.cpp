#include "normord/normord.h"

#include "normord/boson.hpp"
#include "normord/cache.hpp"
#include "normord/error.hpp"
#include "normord/graph.hpp"
#include "normord/identities.hpp"
#include "normord/sequence.hpp"

#include <cstring>
#include <memory>
#include <new>

using namespace normord;

struct normord_ctx {
    std::size_t series_order = kDefaultSeriesOrder;
    std::size_t lambda_order = kDefaultLambdaOrder;
    unsigned digits = kDefaultPrecisionDigits;
    std::string tolerance = "1e-30";
    std::filesystem::path cache_dir = default_cache_dir();
    unsigned threads = 0;
    std::unique_ptr<TriangleCache> cache;
    std::string error;
    std::string warning;
};

struct normord_nf {
    NormalForm value;
};

namespace {

class ArgumentError : public Error {
public:
    using Error::Error;
};

template <class F>
normord_status guard(normord_ctx* ctx, F&& body) {
    if (!ctx) return NORMORD_ERR_ARGUMENT;
    ctx->error.clear();
    ctx->warning.clear();
    try {
        body();
        return NORMORD_OK;
    } catch (const ParseError& e) {
        ctx->error = e.what();
        return NORMORD_ERR_PARSE;
    } catch (const RangeError& e) {
        ctx->error = e.what();
        return NORMORD_ERR_RANGE;
    } catch (const DomainError& e) {
        ctx->error = e.what();
        return NORMORD_ERR_DOMAIN;
    } catch (const InvariantError& e) {
        ctx->error = e.what();
        return NORMORD_ERR_INVARIANT;
    } catch (const IoError& e) {
        ctx->error = e.what();
        return NORMORD_ERR_IO;
    } catch (const ArgumentError& e) {
        ctx->error = e.what();
        return NORMORD_ERR_ARGUMENT;
    } catch (const std::bad_alloc&) {
        ctx->error = "out of memory";
        return NORMORD_ERR_INTERNAL;
    } catch (const std::exception& e) {
        ctx->error = e.what();
        return NORMORD_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) throw ArgumentError(std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void store(normord_nf** out, NormalForm nf) { *out = new normord_nf{std::move(nf)}; }

void check_tolerance(const std::string& tol, unsigned digits) {
    const HighPrecReal t = HighPrecReal::from_string(tol, digits + 10);
    if (!(HighPrecReal(0L, digits) < t)) throw ArgumentError("tolerance must be positive");
    if (t < ten_to_minus(digits - 10, digits + 10))
        throw ArgumentError("tolerance " + tol + " is below 1e-" + std::to_string(digits - 10) + " for " +
                            std::to_string(digits) + " digits");
}

std::string numbers_table(const std::vector<BigInt>& values) {
    const std::size_t wn = std::to_string(values.size() - 1).size();
    std::string out;
    for (std::size_t n = 0; n < values.size(); ++n) {
        const std::string idx = std::to_string(n);
        out += std::string(wn - idx.size(), ' ') + idx + "  " + values[n].get_str() + "\n";
    }
    return out;
}

}  // namespace

extern "C" {

const char* normord_version(void) { return "1.0.0"; }

const char* normord_status_name(normord_status s) {
    switch (s) {
        case NORMORD_OK: return "ok";
        case NORMORD_ERR_PARSE: return "parse error";
        case NORMORD_ERR_RANGE: return "range error";
        case NORMORD_ERR_DOMAIN: return "domain error";
        case NORMORD_ERR_INVARIANT: return "invariant violated";
        case NORMORD_ERR_IO: return "i/o error";
        case NORMORD_ERR_ARGUMENT: return "invalid argument";
        case NORMORD_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

normord_status normord_ctx_new(normord_ctx** out) {
    if (!out) return NORMORD_ERR_ARGUMENT;
    try {
        *out = new normord_ctx();
        return NORMORD_OK;
    } catch (...) {
        *out = nullptr;
        return NORMORD_ERR_INTERNAL;
    }
}

void normord_ctx_free(normord_ctx* ctx) { delete ctx; }

const char* normord_last_error(const normord_ctx* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

const char* normord_last_warning(const normord_ctx* ctx) { return ctx ? ctx->warning.c_str() : ""; }

normord_status normord_set_series_order(normord_ctx* ctx, size_t order) {
    return guard(ctx, [&] {
        if (order == 0) throw ArgumentError("series order must be positive");
        ctx->series_order = order;
    });
}

normord_status normord_set_lambda_order(normord_ctx* ctx, size_t order) {
    return guard(ctx, [&] {
        if (order == 0) throw ArgumentError("lambda order must be positive");
        ctx->lambda_order = order;
    });
}

normord_status normord_set_precision(normord_ctx* ctx, unsigned digits) {
    return guard(ctx, [&] {
        if (digits < 30) throw ArgumentError("precision must be at least 30 digits");
        check_tolerance(ctx->tolerance, digits);
        ctx->digits = digits;
    });
}

normord_status normord_set_tolerance(normord_ctx* ctx, const char* tolerance) {
    return guard(ctx, [&] {
        require(tolerance, "tolerance");
        check_tolerance(tolerance, ctx->digits);
        ctx->tolerance = tolerance;
    });
}

normord_status normord_set_cache_dir(normord_ctx* ctx, const char* dir) {
    return guard(ctx, [&] {
        require(dir, "cache directory");
        if (!*dir) throw ArgumentError("cache directory must not be empty");
        ctx->cache_dir = dir;
        ctx->cache.reset();
    });
}

normord_status normord_set_threads(normord_ctx* ctx, unsigned threads) {
    return guard(ctx, [&] { ctx->threads = threads; });
}

void normord_string_free(char* s) { std::free(s); }

normord_status normord_nf_parse(normord_ctx* ctx, const char* expr, normord_nf** out) {
    return guard(ctx, [&] {
        require(expr, "expression");
        require(out, "output");
        store(out, normal_order_rewrite(parse_expr(expr)));
    });
}

normord_status normord_nf_from_json(normord_ctx* ctx, const char* json, normord_nf** out) {
    return guard(ctx, [&] {
        require(json, "json");
        require(out, "output");
        store(out, nf_from_json(json));
    });
}

void normord_nf_free(normord_nf* nf) { delete nf; }

normord_status normord_nf_power(normord_ctx* ctx, const normord_nf* nf, unsigned long n, normord_nf** out) {
    return guard(ctx, [&] {
        require(nf, "normal form");
        require(out, "output");
        store(out, nf_power(nf->value, n));
    });
}

normord_status normord_nf_multiply(normord_ctx* ctx, const normord_nf* a, const normord_nf* b, normord_nf** out) {
    return guard(ctx, [&] {
        require(a, "left factor");
        require(b, "right factor");
        require(out, "output");
        store(out, nf_multiply(a->value, b->value));
    });
}

normord_status normord_nf_dagger(normord_ctx* ctx, const normord_nf* nf, normord_nf** out) {
    return guard(ctx, [&] {
        require(nf, "normal form");
        require(out, "output");
        store(out, dagger(nf->value));
    });
}

normord_status normord_nf_equal(normord_ctx* ctx, const normord_nf* a, const normord_nf* b, int* out) {
    return guard(ctx, [&] {
        require(a, "left form");
        require(b, "right form");
        require(out, "output");
        *out = a->value == b->value;
    });
}

normord_status normord_nf_render(normord_ctx* ctx, const normord_nf* nf, normord_format fmt, char** out) {
    return guard(ctx, [&] {
        require(nf, "normal form");
        require(out, "output");
        if (fmt == NORMORD_FORMAT_JSON) *out = dup(nf_to_json(nf->value, 2) + "\n");
        else if (fmt == NORMORD_FORMAT_TABLE) *out = dup(nf_to_table(nf->value));
        else throw ArgumentError("normal forms render as json or table only");
    });
}

normord_status normord_nf_expectation(normord_ctx* ctx, const normord_nf* nf, const char* re, const char* im,
                                      char** out) {
    return guard(ctx, [&] {
        require(nf, "normal form");
        require(re, "real part");
        require(out, "output");
        const ExactComplex z{parse_rat(re), im ? parse_rat(im) : BigRat(0)};
        const ExactComplex v = coherent_expectation(nf->value, z);
        std::string s = to_string(v.re);
        if (v.im != 0) s += (v.im < 0 ? " - " : " + ") + to_string(BigRat(abs(v.im))) + " i";
        *out = dup(s);
    });
}

normord_status normord_nf_graph_table(normord_ctx* ctx, const normord_nf* nf, unsigned n, char** out) {
    return guard(ctx, [&] {
        require(nf, "normal form");
        require(out, "output");
        *out = dup(coeff_table_to_json(enumerate(nf->value, n)));
    });
}

normord_status normord_nf_graph_list(normord_ctx* ctx, const normord_nf* nf, unsigned n, char** out) {
    return guard(ctx, [&] {
        require(nf, "normal form");
        require(out, "output");
        std::string s;
        for (const auto& g : enumerate_explicit(nf->value, n)) s += describe(g) + "\n";
        *out = dup(s);
    });
}

normord_status normord_sequence(normord_ctx* ctx, unsigned r, unsigned M, unsigned n_max, int poly,
                                normord_format fmt, char** out) {
    return guard(ctx, [&] {
        require(out, "output");
        if (!ctx->cache) ctx->cache = std::make_unique<TriangleCache>(ctx->cache_dir);
        CacheLookup got = ctx->cache->get(r, M, n_max);
        ctx->warning = got.warning;
        const StirlingTriangle& t = got.triangle;
        if (poly) {
            if (fmt == NORMORD_FORMAT_JSON) *out = dup(triangle_to_json(t) + "\n");
            else if (fmt == NORMORD_FORMAT_TABLE) *out = dup(triangle_to_table(t));
            else *out = dup(triangle_to_bfile(t));
        } else {
            const auto values = t.bell_numbers();
            if (fmt == NORMORD_FORMAT_JSON) *out = dup(bell_numbers_to_json(r, M, values) + "\n");
            else if (fmt == NORMORD_FORMAT_TABLE) *out = dup(numbers_table(values));
            else *out = dup(to_bfile(values));
        }
    });
}

normord_status normord_cache_clear(normord_ctx* ctx, size_t* removed) {
    return guard(ctx, [&] {
        if (!ctx->cache) ctx->cache = std::make_unique<TriangleCache>(ctx->cache_dir);
        const std::size_t n = ctx->cache->clear();
        if (removed) *removed = n;
    });
}

void normord_verify_options_init(normord_verify_options* opt) {
    if (opt) *opt = normord_verify_options{0, 0, 0, 0, 0, 0, 0, 0, nullptr, nullptr, nullptr, nullptr, 1};
}

normord_status normord_verify(normord_ctx* ctx, const char* id, const normord_verify_options* opt, char** json,
                              size_t* failures) {
    return guard(ctx, [&] {
        require(id, "identity id");
        require(json, "output");
        SuiteOptions so;
        so.series_order = ctx->series_order;
        so.lambda_order = ctx->lambda_order;
        so.digits = ctx->digits;
        so.tolerance = ctx->tolerance;
        so.threads = ctx->threads;
        bool timing = true;
        if (opt) {
            if (opt->has_r) so.r = opt->r;
            if (opt->has_M) so.M = opt->M;
            if (opt->has_n) so.n = opt->n;
            if (opt->has_p) so.p = opt->p;
            if (opt->b) so.b = parse_rat(opt->b);
            if (opt->x) so.x = parse_rat(opt->x);
            if (opt->example) so.example = opt->example;
            if (opt->kind) so.kind = opt->kind;
            timing = opt->with_timing != 0;
        }
        const std::string sid = id;
        if (sid != "all" && !is_identity_id(sid)) throw RangeError("unknown identity '" + sid + "'");
        const auto reports = run_identity(sid, so);
        std::size_t failed = 0;
        for (const auto& r : reports) failed += r.failed();
        *json = dup(reports_to_json(reports, timing) + "\n");
        if (failures) *failures = failed;
    });
}

normord_status normord_identity_ids(normord_ctx* ctx, char** out) {
    return guard(ctx, [&] {
        require(out, "output");
        std::string s;
        for (const auto& id : identity_ids()) s += id + "\n";
        *out = dup(s);
    });
}

}  // extern "C"
