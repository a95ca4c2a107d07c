#pragma once

#include "normord/stirling.hpp"

#include <optional>
#include <string>
#include <vector>

namespace normord {

// Static OEIS association of B_r^(M)(n); no lookup is ever performed.
std::optional<std::string> oeis_id(unsigned r, unsigned M);

// "n a(n)" per line, offset 0.
std::string to_bfile(const std::vector<BigInt>& values);
// Inverse of to_bfile; lines must be "n a(n)" with n = 0, 1, ... (ParseError otherwise).
std::vector<BigInt> parse_bfile(const std::string& text);

// {"r","M","n_max","kind":"numbers","values":[decimal strings],"metadata":{...}}
std::string bell_numbers_to_json(unsigned r, unsigned M, const std::vector<BigInt>& values, int indent = 2);
std::vector<BigInt> bell_numbers_from_json(const std::string& text);

// Rows of S_r^(M)(n,k), i.e. the coefficients of B_r^(M)(n,x).
// JSON: {"r","M","n_max","kind":"polynomials","rows":[[...]],"metadata":{...}}
std::string triangle_to_json(const StirlingTriangle& t, int indent = 2);
StirlingTriangle triangle_from_json(const std::string& text);
// One row per line, right-aligned columns.
std::string triangle_to_table(const StirlingTriangle& t);
// Rows flattened in reading order, the usual b-file layout for triangles.
std::string triangle_to_bfile(const StirlingTriangle& t);

}  // namespace normord
