#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace normord {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Reduced rational num/den; den must be nonzero.
BigRat make_rat(const BigInt& num, const BigInt& den);
BigRat make_rat(long num, long den = 1);

// Accepts "p", "-p", "p/q". Throws ParseError on malformed input and
// RangeError on a zero denominator.
BigRat parse_rat(std::string_view text);
BigInt parse_int(std::string_view text);

// "p" when integral, "p/q" otherwise.
std::string to_string(const BigRat& q);
std::string to_string(const BigInt& z);

bool is_integer(const BigRat& q);

// Throws InvariantError when q is not integral.
BigInt require_integer(const BigRat& q, std::string_view context);

BigInt pow(const BigInt& base, unsigned long exponent);
BigRat pow(const BigRat& base, unsigned long exponent);

// Memoized in a process-wide table guarded by a shared mutex.
BigInt factorial(unsigned long n);

// C(n,k) for 0 <= k <= n, and 0 for k > n.
BigInt binomial(unsigned long n, unsigned long k);

// p(p-1)...(p-r+1); equals 1 for r = 0.
BigInt falling_factorial(const BigInt& p, unsigned long r);
BigRat falling_factorial(const BigRat& p, unsigned long r);

// Pochhammer (rising) symbol (a)_k = a(a+1)...(a+k-1).
BigRat pochhammer(const BigRat& a, unsigned long k);

// Generalized binomial coefficient C(alpha, k) for rational alpha.
BigRat gen_binomial(const BigRat& alpha, unsigned long k);

}  // namespace normord
