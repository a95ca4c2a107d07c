#pragma once

#include "normord/arith.hpp"
#include "normord/highprec.hpp"
#include "normord/poly.hpp"

#include <vector>

namespace normord {

// S_r^(M)(n,k) through the finite-difference closed form
//   (1/k!) sum_j C(k,j) (-1)^{k-j} [prod_{i=1..n} (j + i r)]^M.
// r = 0 is admitted and reproduces the classical numbers at M = 1.
// Throws RangeError for k > M n; InvariantError if the division is inexact.
BigInt gen_stirling(unsigned r, unsigned M, unsigned n, unsigned k);

// Row n: S_r^(M)(n,k) for k = 0..M n.
std::vector<BigInt> gen_stirling_row(unsigned r, unsigned M, unsigned n);

// Rows n = 0..n_max of S_r^(M)(n,k); row n has exactly M n + 1 entries.
class StirlingTriangle {
public:
    StirlingTriangle(unsigned r, unsigned M, std::vector<std::vector<BigInt>> rows);
    // Rows are independent and computed concurrently.
    static StirlingTriangle compute(unsigned r, unsigned M, unsigned n_max);

    unsigned r() const { return r_; }
    unsigned M() const { return M_; }
    unsigned n_max() const { return static_cast<unsigned>(rows_.size()) - 1; }
    const std::vector<BigInt>& row(unsigned n) const { return rows_.at(n); }
    const std::vector<std::vector<BigInt>>& rows() const { return rows_; }
    // Row sums, i.e. B_r^(M)(n) for n = 0..n_max.
    std::vector<BigInt> bell_numbers() const;

    friend bool operator==(const StirlingTriangle&, const StirlingTriangle&) = default;

private:
    unsigned r_;
    unsigned M_;
    std::vector<std::vector<BigInt>> rows_;
};

struct BellRecord {
    unsigned r = 0;
    unsigned M = 0;
    unsigned n = 0;
    PolyQ polynomial;  // B_r^(M)(n, x)
    BigInt number;     // B_r^(M)(n) = B_r^(M)(n, 1)
};

BellRecord gen_bell(unsigned r, unsigned M, unsigned n);
PolyQ gen_bell_poly(unsigned r, unsigned M, unsigned n);
BigInt gen_bell_number(unsigned r, unsigned M, unsigned n);

// Classical numbers from the triangle recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1).
BigInt classical_stirling2(unsigned n, unsigned k);
BigInt classical_bell(unsigned n);
PolyQ classical_bell_poly(unsigned n);

// Signless first kind, |s(n+1,k)| = |s(n,k-1)| + n |s(n,k)|; 1 <= k <= n.
BigInt stirling1_signless(unsigned n, unsigned k);
// Signed first kind s(n,k) = (-1)^{n-k} |s(n,k)|; x^(n falling) = sum_k s(n,k) x^k.
BigInt stirling1_signed(unsigned n, unsigned k);
// prod_{p=1..r} (x + p)
PolyQ product_poly(unsigned r);

// sum_{l<L} [prod_{i=1..n} (l + i r)]^M x^l / l!, exactly; x >= 0, L >= 1.
BigRat dobinski_partial(unsigned r, unsigned M, unsigned n, const BigRat& x, unsigned L);

struct DobinskiResult {
    HighPrecReal value;       // e^{-x} times the partial sum
    unsigned terms = 0;       // L
    HighPrecReal tail_bound;  // bound on the dropped tail, already scaled by e^{-x}
};

// Sums until the scaled last term drops below tol while the term ratio is
// under 1/2; the ratio is decreasing there, so the dropped tail is bounded by
// the last term.
DobinskiResult dobinski_adaptive(unsigned r, unsigned M, unsigned n, const BigRat& x, const HighPrecReal& tol,
                                 unsigned digits = kDefaultPrecisionDigits, unsigned max_terms = 100000);

// B_{p,p}(n): coherent value at z = 1 of the normal form of [(a†)^p a^p]^n.
BigInt b_pp(unsigned p, unsigned n);

}  // namespace normord
