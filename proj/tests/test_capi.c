#include "normord/normord.h"

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                  \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                               \
        }                                                             \
    } while (0)

int main(void) {
    normord_ctx* ctx = NULL;
    EXPECT(normord_ctx_new(&ctx) == NORMORD_OK);
    const char* dir = getenv("NORMORD_TEST_CACHE");
    EXPECT(normord_set_cache_dir(ctx, dir ? dir : "capi-cache") == NORMORD_OK);

    normord_nf* d = NULL;
    normord_nf* d2 = NULL;
    char* s = NULL;
    EXPECT(normord_nf_parse(ctx, "a*(ad*a)", &d) == NORMORD_OK);
    EXPECT(normord_nf_power(ctx, d, 2, &d2) == NORMORD_OK);
    EXPECT(normord_nf_expectation(ctx, d2, "1", NULL, &s) == NORMORD_OK);
    EXPECT(s && strcmp(s, "7") == 0);
    normord_string_free(s);

    EXPECT(normord_nf_expectation(ctx, d, "0", "1", &s) == NORMORD_OK);
    EXPECT(s && strcmp(s, "0 + 2 i") == 0);
    normord_string_free(s);

    EXPECT(normord_nf_render(ctx, d2, NORMORD_FORMAT_JSON, &s) == NORMORD_OK);
    normord_nf* back = NULL;
    int same = 0;
    EXPECT(normord_nf_from_json(ctx, s, &back) == NORMORD_OK);
    EXPECT(normord_nf_equal(ctx, back, d2, &same) == NORMORD_OK && same);
    normord_string_free(s);
    normord_nf_free(back);

    EXPECT(normord_nf_graph_table(ctx, d, 2, &s) == NORMORD_OK);
    EXPECT(s && strstr(s, "\"total_weight\":\"7\""));
    normord_string_free(s);
    EXPECT(normord_nf_render(ctx, d, NORMORD_FORMAT_BFILE, &s) == NORMORD_ERR_ARGUMENT);

    normord_nf* bad = NULL;
    EXPECT(normord_nf_parse(ctx, "a*(ad", &bad) == NORMORD_ERR_PARSE);
    EXPECT(bad == NULL);
    EXPECT(strlen(normord_last_error(ctx)) > 0);
    EXPECT(normord_nf_parse(ctx, NULL, &bad) == NORMORD_ERR_ARGUMENT);
    EXPECT(normord_nf_parse(NULL, "a", &bad) == NORMORD_ERR_ARGUMENT);

    EXPECT(normord_set_precision(ctx, 20) == NORMORD_ERR_ARGUMENT);
    EXPECT(normord_set_tolerance(ctx, "1e-45") == NORMORD_ERR_ARGUMENT);
    EXPECT(normord_set_tolerance(ctx, "1e-35") == NORMORD_OK);
    EXPECT(normord_set_tolerance(ctx, "1e-30") == NORMORD_OK);

    EXPECT(normord_sequence(ctx, 2, 3, 3, 0, NORMORD_FORMAT_BFILE, &s) == NORMORD_OK);
    EXPECT(s && strcmp(s, "0 1\n1 37\n2 9415\n3 7063615\n") == 0);
    normord_string_free(s);

    normord_verify_options opt;
    normord_verify_options_init(&opt);
    opt.has_r = opt.has_M = opt.has_n = 1;
    opt.r = 1;
    opt.M = 1;
    opt.n = 2;
    size_t failed = 99;
    EXPECT(normord_verify(ctx, "graphs", &opt, &s, &failed) == NORMORD_OK);
    EXPECT(failed == 0);
    EXPECT(s && strstr(s, "totals 1,2,7"));
    normord_string_free(s);
    EXPECT(normord_verify(ctx, "nonsense", NULL, &s, &failed) == NORMORD_ERR_RANGE);

    size_t removed = 0;
    EXPECT(normord_cache_clear(ctx, &removed) == NORMORD_OK);
    EXPECT(removed == 1);

    normord_nf_free(d);
    normord_nf_free(d2);
    normord_ctx_free(ctx);
    if (failures) fprintf(stderr, "%d failure(s)\n", failures);
    else printf("capi smoke test passed\n");
    return failures ? 1 : 0;
}
