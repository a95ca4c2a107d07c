#pragma once

#include "normord/arith.hpp"
#include "normord/check.hpp"
#include "normord/highprec.hpp"
#include "normord/series.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace normord {

enum class ReportStatus { pass, fail, info };

struct IdentityReport {
    std::string id;
    std::vector<std::pair<std::string, std::string>> params;  // in insertion order
    bool numeric = false;
    ReportStatus status = ReportStatus::pass;
    std::string details;
    double elapsed_ms = 0;
    unsigned digits = 0;       // numeric mode only
    std::string tolerance;     // numeric mode only
    std::string max_deviation; // numeric mode only

    bool failed() const { return status == ReportStatus::fail; }
    // Parameters joined as "k=v,k=v"; the suite sorts on (id, this).
    std::string param_key() const;
};

std::string to_string(ReportStatus s);
std::string report_to_json(const IdentityReport& r, bool with_timing = true);
std::string reports_to_json(const std::vector<IdentityReport>& rs, bool with_timing = true);

struct SuiteOptions {
    std::size_t series_order = kDefaultSeriesOrder;
    std::size_t lambda_order = kDefaultLambdaOrder;
    unsigned digits = kDefaultPrecisionDigits;
    std::string tolerance = "1e-30";
    // Overrides; a set field replaces that axis of the default grid.
    std::optional<unsigned> r, M, n, p;
    std::optional<BigRat> b, x;
    std::optional<std::string> example, kind;
    unsigned threads = 0;  // 0: hardware concurrency
};

// [D(r,M), D†(r,M)] reduced to a polynomial in a†a against
// (n+r)^{2M} prod_{p=1..r} (n+p) - n^{2M} n(n-1)...(n-r+1); r = 1 also
// against (n+1)^{2M+1} - n^{2M+1}.
IdentityReport verify_commutator(unsigned r, unsigned M);
IdentityReport verify_stirling_form(unsigned r, unsigned M, unsigned n);
IdentityReport verify_bell_first_kind(unsigned r, unsigned n);
IdentityReport verify_bell_bpp(unsigned M, unsigned n);
IdentityReport verify_laguerre_power(unsigned n);
IdentityReport verify_exp_on_monomial(unsigned n);
IdentityReport verify_exp_on_exp(const BigRat& b, std::size_t series_order, std::size_t lambda_max);
IdentityReport verify_exp_on_1f1(const BigRat& b, std::size_t series_order, std::size_t lambda_max);
IdentityReport verify_sheffer(unsigned r, unsigned n_max);
IdentityReport verify_egf(unsigned r, unsigned n_max);
IdentityReport verify_eigen(unsigned r, unsigned M, std::size_t order);
// "bessel_J0_with_I0" is accepted but never part of the default grid.
IdentityReport verify_examples(const std::string& example_id, std::size_t lambda_max, unsigned param);
IdentityReport verify_hyp_closed(const std::string& kind, unsigned M, unsigned n, const std::vector<BigRat>& xs,
                                 unsigned digits, const std::string& tolerance);
IdentityReport verify_hyp_gf(unsigned r, unsigned M, const BigRat& x, std::size_t lambda_max, unsigned digits,
                             const std::string& tolerance);
// Rewriting oracle, closed form and graph enumeration for every power up to n.
IdentityReport verify_graphs(unsigned r, unsigned M, unsigned n);
// Adaptive Dobinski sum at x = 1 against B_r^(M)(n), absolute tolerance.
IdentityReport verify_dobinski(unsigned r, unsigned M, unsigned n, unsigned digits, const std::string& tolerance);

// Relative residuals of the r-term hypergeometric structure at sample points;
// status is always info.
IdentityReport conjecture_probe(unsigned r, unsigned M, unsigned n, const std::vector<BigRat>& xs,
                                unsigned digits = kDefaultPrecisionDigits);
// The r-term structure itself: e^{-x} r^{Mn} sum_{s<r} [(1+s/r)_n]^M x^s/s! MF_{M+r-1}(...; x^r/r^r).
HighPrecReal conjectured_bell_value(unsigned r, unsigned M, unsigned n, const BigRat& x,
                                    unsigned digits = kDefaultPrecisionDigits);

const std::vector<std::string>& identity_ids();
bool is_identity_id(const std::string& id);

// Expands the default grid of one id (or "all"), applying overrides, runs the
// jobs in parallel and returns the reports sorted by (id, parameters).
// Throws RangeError for an unknown id.
std::vector<IdentityReport> run_identity(const std::string& id, const SuiteOptions& opt = {});

}  // namespace normord
