#include "normord/arith.hpp"

#include "normord/error.hpp"

#include <cctype>
#include <mutex>
#include <shared_mutex>
#include <vector>

namespace normord {

namespace {

class FactorialTable {
public:
    BigInt get(unsigned long n) {
        {
            std::shared_lock lock(mutex_);
            if (n < table_.size()) return table_[n];
        }
        std::unique_lock lock(mutex_);
        if (table_.empty()) table_.emplace_back(1);
        while (table_.size() <= n) {
            BigInt next = table_.back() * static_cast<unsigned long>(table_.size());
            table_.push_back(std::move(next));
        }
        return table_[n];
    }

private:
    std::shared_mutex mutex_;
    std::vector<BigInt> table_;
};

FactorialTable& factorial_table() {
    static FactorialTable table;
    return table;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw RangeError("rational with zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

BigRat make_rat(long num, long den) { return make_rat(BigInt(num), BigInt(den)); }

BigInt parse_int(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body)) throw ParseError("malformed integer '" + std::string(text) + "'", 0);
    BigInt z(std::string(body), 10);
    return negative ? BigInt(-z) : z;
}

BigRat parse_rat(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return BigRat(parse_int(text));
    const BigInt num = parse_int(text.substr(0, slash));
    const std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text))
        throw ParseError("malformed denominator in '" + std::string(text) + "'", slash + 1);
    return make_rat(num, BigInt(std::string(den_text), 10));
}

std::string to_string(const BigRat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

bool is_integer(const BigRat& q) { return q.get_den() == 1; }

BigInt require_integer(const BigRat& q, std::string_view context) {
    if (!is_integer(q))
        throw InvariantError("non-integral value " + to_string(q) + " in " + std::string(context));
    return q.get_num();
}

BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

BigRat pow(const BigRat& base, unsigned long exponent) {
    return make_rat(pow(base.get_num(), exponent), pow(base.get_den(), exponent));
}

BigInt factorial(unsigned long n) { return factorial_table().get(n); }

BigInt binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

BigInt falling_factorial(const BigInt& p, unsigned long r) {
    BigInt out = 1;
    for (unsigned long i = 0; i < r; ++i) out *= p - i;
    return out;
}

BigRat falling_factorial(const BigRat& p, unsigned long r) {
    BigRat out = 1;
    for (unsigned long i = 0; i < r; ++i) out *= p - i;
    return out;
}

BigRat pochhammer(const BigRat& a, unsigned long k) {
    BigRat out = 1;
    for (unsigned long i = 0; i < k; ++i) out *= a + i;
    return out;
}

BigRat gen_binomial(const BigRat& alpha, unsigned long k) {
    return falling_factorial(alpha, k) / BigRat(factorial(k));
}

}  // namespace normord
