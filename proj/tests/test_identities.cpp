#include "normord/error.hpp"
#include "normord/identities.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace normord;

TEST_CASE("commutator reductions") {
    auto r11 = verify_commutator(1, 1);
    CHECK(r11.status == ReportStatus::pass);
    CHECK(r11.details.find("3*x^2 + 3*x + 1") != std::string::npos);
    auto r10 = verify_commutator(1, 0);
    CHECK(r10.status == ReportStatus::pass);
    CHECK(r10.details.find("= 1 ") != std::string::npos);
    for (unsigned r = 1; r <= 4; ++r)
        for (unsigned M = 0; M <= 3; ++M) CHECK_FALSE(verify_commutator(r, M).failed());
    // the signless variant only agrees when the falling factorial has no negative terms
    CHECK(verify_commutator(1, 2).details.find("also matches") != std::string::npos);
    CHECK(verify_commutator(2, 0).details.find("does not match") != std::string::npos);
}

TEST_CASE("individual drivers") {
    auto sf = verify_stirling_form(2, 2, 3);
    CHECK(sf.status == ReportStatus::pass);
    CHECK(sf.details == "B=23395");
    CHECK(verify_bell_first_kind(2, 2).details == "B=16");
    CHECK(verify_bell_bpp(2, 2).details == "87");

    auto g = verify_graphs(1, 1, 2);
    CHECK(g.status == ReportStatus::pass);
    CHECK(g.details == "totals 1,2,7");

    auto egf = verify_egf(1, 6);
    CHECK(egf.status == ReportStatus::pass);
    CHECK(egf.details == "1,2,7,34,209,1546,13327");

    auto dob = verify_dobinski(2, 2, 3, 50, "1e-30");
    CHECK(dob.status == ReportStatus::pass);
    CHECK(dob.numeric);
    CHECK(dob.details.find("B=23395") == 0);

    CHECK(verify_exp_on_exp(make_rat(1, 3), 12, 4).status == ReportStatus::pass);
    CHECK_THROWS_AS(verify_exp_on_exp(1, 4, 4), RangeError);
    CHECK(verify_hyp_closed("bell_poly_r2", 2, 3, {make_rat(1, 2)}, 50, "1e-30").status == ReportStatus::pass);
    CHECK_THROWS_AS(verify_hyp_closed("nope", 1, 1, {1}, 50, "1e-30"), RangeError);
}

TEST_CASE("conjecture probe is informational") {
    auto r1 = conjecture_probe(1, 2, 3, {make_rat(1, 2), 1});
    CHECK(r1.status == ReportStatus::info);
    auto r2 = conjecture_probe(2, 1, 2, {1, 2});
    CHECK(r2.status == ReportStatus::info);
    CHECK(HighPrecReal::from_string(r2.max_deviation) < HighPrecReal::from_string("1e-30"));
    // r = 1 reduces to a single hypergeometric term
    const HighPrecReal v = conjectured_bell_value(1, 1, 2, 1);
    CHECK(relative_deviation(v, HighPrecReal(7L)) < HighPrecReal::from_string("1e-40"));
}

TEST_CASE("run_identity") {
    SuiteOptions opt;
    opt.r = 1;
    opt.M = 1;
    auto reps = run_identity("stirling_form", opt);
    CHECK(reps.size() == 6);
    for (std::size_t i = 1; i < reps.size(); ++i) CHECK(reps[i - 1].param_key() < reps[i].param_key());
    for (const auto& r : reps) CHECK(r.status == ReportStatus::pass);

    CHECK_THROWS_AS(run_identity("unknown"), RangeError);
    CHECK(is_identity_id("graphs"));
    CHECK_FALSE(is_identity_id("all"));

    opt = {};
    opt.threads = 3;
    const auto a = reports_to_json(run_identity("commutator", opt), false);
    opt.threads = 1;
    const auto b = reports_to_json(run_identity("commutator", opt), false);
    CHECK(a == b);
    const auto j = nlohmann::json::parse(a);
    CHECK(j.size() == 16);
    CHECK(j[0]["identity"] == "commutator");
    CHECK(j[0]["mode"] == "exact");
    CHECK_FALSE(j[0].contains("elapsed_ms"));
}

TEST_CASE("every identity passes on its default grid") {
    SuiteOptions opt;
    for (const auto& id : identity_ids()) {
        CAPTURE(id);
        const auto reps = run_identity(id, opt);
        CHECK_FALSE(reps.empty());
        for (const auto& r : reps) {
            CAPTURE(r.param_key());
            CAPTURE(r.details);
            CHECK_FALSE(r.failed());
        }
    }
}
