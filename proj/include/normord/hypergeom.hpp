#pragma once

#include "normord/arith.hpp"
#include "normord/highprec.hpp"
#include "normord/series.hpp"

#include <vector>

namespace normord {

using ParamList = std::vector<BigRat>;

// Partial sum of pFq(upper; lower; x) over the first `terms` terms, exactly.
// Throws DomainError naming the lower parameter when a pole is reached.
BigRat phyperq_partial(const ParamList& upper, const ParamList& lower, const BigRat& x,
                       std::size_t terms);

// pFq(upper; lower; scale * t) as a series in t truncated at `order`.
SeriesQ phyperq_series(const ParamList& upper, const ParamList& lower, std::size_t order,
                       const BigRat& scale = 1);

struct HyperSum {
    HighPrecReal value;
    std::size_t terms = 0;
};

// Numerical value of a convergent pFq (p <= q, or a terminating series) at a
// rational point. Terms are summed exactly until the term ratio has settled
// below 1/2 and the last term falls under 10^{-(digits+10)} of the partial
// sum; the geometric tail bound then sits under the working precision.
HyperSum phyperq_value(const ParamList& upper, const ParamList& lower, const BigRat& x,
                       unsigned digits = kDefaultPrecisionDigits, std::size_t max_terms = 100000);

}  // namespace normord
