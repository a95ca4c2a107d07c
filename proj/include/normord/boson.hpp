#pragma once

#include "normord/arith.hpp"
#include "normord/poly.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace normord {

// A word over {a, a†}. Letters are stored as 'A' (annihilator) and 'D'
// (creator); the empty word is the identity operator.
class BosonWord {
public:
    BosonWord() = default;
    // Letters must be 'A' or 'D'; throws RangeError otherwise.
    explicit BosonWord(std::string letters);

    static BosonWord annihilators(std::size_t count) { return BosonWord(std::string(count, 'A')); }
    static BosonWord creators(std::size_t count) { return BosonWord(std::string(count, 'D')); }

    const std::string& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    // Number of (A before D) pairs; zero exactly when the word is normally ordered.
    std::size_t inversions() const;
    bool is_normal() const;

    BosonWord& operator+=(const BosonWord& other) {
        letters_ += other.letters_;
        return *this;
    }
    friend BosonWord operator+(BosonWord a, const BosonWord& b) { return a += b; }
    BosonWord repeated(std::size_t times) const;
    // Conjugate: reverse the word and exchange a <-> a†.
    BosonWord dagger() const;

    friend auto operator<=>(const BosonWord&, const BosonWord&) = default;

private:
    std::string letters_;
};

// D(r,M) = a^r (a†a)^M as a word.
BosonWord laguerre_word(unsigned r, unsigned M);

struct BosonTerm {
    BigRat coeff;
    BosonWord word;
};

// Linear combination of words with exact rational coefficients.
class BosonExpr {
public:
    BosonExpr() = default;
    explicit BosonExpr(std::vector<BosonTerm> terms);
    static BosonExpr of_word(const BosonWord& w, const BigRat& c = 1);
    static BosonExpr scalar(const BigRat& c);

    const std::vector<BosonTerm>& terms() const { return terms_; }

    // Merges equal words, drops zero coefficients, sorts by word.
    BosonExpr normalized() const;

    BosonExpr& operator+=(const BosonExpr& other);
    BosonExpr& operator-=(const BosonExpr& other);
    friend BosonExpr operator+(BosonExpr a, const BosonExpr& b) { return a += b; }
    friend BosonExpr operator-(BosonExpr a, const BosonExpr& b) { return a -= b; }
    friend BosonExpr operator*(const BosonExpr& a, const BosonExpr& b);
    friend BosonExpr operator*(BosonExpr a, const BigRat& c);
    BosonExpr power(unsigned long n) const;

private:
    std::vector<BosonTerm> terms_;
};

// Grammar: sum of terms joined by + or -, factors joined by * or
// juxtaposition, atoms a | ad | a† | n (= ad*a) | integer | p/q | ( expr ),
// postfix ^k with a nonnegative integer k. Throws ParseError with a position.
BosonExpr parse_expr(std::string_view text);

struct MonomialKey {
    unsigned long dag = 0;  // creator power k
    unsigned long ann = 0;  // annihilator power l
    friend auto operator<=>(const MonomialKey&, const MonomialKey&) = default;
};

// Sorted dag desc, ann desc.
struct MonomialOrder {
    bool operator()(const MonomialKey& a, const MonomialKey& b) const {
        return a.dag != b.dag ? a.dag > b.dag : a.ann > b.ann;
    }
};

// sum c_{k,l} (a†)^k a^l with no zero entries.
class NormalForm {
public:
    using Map = std::map<MonomialKey, BigRat, MonomialOrder>;

    NormalForm() = default;
    static NormalForm identity();
    static NormalForm monomial(unsigned long dag, unsigned long ann, const BigRat& c = 1);

    void add(unsigned long dag, unsigned long ann, const BigRat& c);
    BigRat coeff(unsigned long dag, unsigned long ann) const;
    const Map& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    bool is_diagonal() const;
    bool has_integer_coefficients() const;
    // Sum of all coefficients, i.e. the coherent-state value at z = 1.
    BigRat total_weight() const;

    NormalForm& operator+=(const NormalForm& other);
    NormalForm& operator-=(const NormalForm& other);
    NormalForm& operator*=(const BigRat& c);
    friend NormalForm operator+(NormalForm a, const NormalForm& b) { return a += b; }
    friend NormalForm operator-(NormalForm a, const NormalForm& b) { return a -= b; }
    friend NormalForm operator*(NormalForm a, const BigRat& c) { return a *= c; }
    friend bool operator==(const NormalForm& a, const NormalForm& b) { return a.terms_ == b.terms_; }

private:
    Map terms_;
};

enum class RewriteStrategy { Leftmost, Rightmost };

// Ground-truth normal ordering: every "a a†" adjacency is replaced by
// "a† a + 1" until no word has one left. Words are processed in decreasing
// inversion count so each distinct word is expanded once with its final
// merged coefficient.
NormalForm normal_order_rewrite(const BosonExpr& e, RewriteStrategy strategy = RewriteStrategy::Leftmost);
NormalForm normal_order_rewrite(const BosonWord& w, RewriteStrategy strategy = RewriteStrategy::Leftmost);

// Product through the contraction formula
// (a†)^p a^q (a†)^r a^s = sum_k k! C(q,k) C(r,k) (a†)^{p+r-k} a^{q+s-k}.
NormalForm nf_multiply(const NormalForm& f, const NormalForm& g);
NormalForm nf_power(const NormalForm& f, unsigned long n);
NormalForm dagger(const NormalForm& f);

// Normal form of D(r,M) through the rewriter.
NormalForm laguerre_normal_form(unsigned r, unsigned M);

struct ExactComplex {
    BigRat re;
    BigRat im;
    friend bool operator==(const ExactComplex&, const ExactComplex&) = default;
};

ExactComplex operator*(const ExactComplex& a, const ExactComplex& b);

// <z| f |z> = sum c_{k,l} conj(z)^k z^l.
ExactComplex coherent_expectation(const NormalForm& f, const ExactComplex& z);

// Rewrites a number-conserving form as a polynomial in n = a†a using
// (a†)^k a^k = n(n-1)...(n-k+1). Throws DomainError on an off-diagonal term.
PolyQ diagonal_reduce(const NormalForm& f);

// Action on x^p in the derivative picture a -> d/dx, a† -> x:
// sum c_{k,l} p^(l falling) x^{p-l+k}.
PolyQ apply_to_monomial(const NormalForm& f, unsigned long p);

// JSON: {"terms":[{"dag":k,"ann":l,"coeff":"p/q"}],"sorted":"dag desc, ann desc"}
std::string nf_to_json(const NormalForm& f, int indent = -1);
NormalForm nf_from_json(std::string_view text);
// Aligned plain-text table, one term per row.
std::string nf_to_table(const NormalForm& f);
// Human-readable sum, e.g. "a†a^2 + a".
std::string nf_to_string(const NormalForm& f);

}  // namespace normord

template <>
struct std::hash<normord::BosonWord> {
    std::size_t operator()(const normord::BosonWord& w) const noexcept {
        return std::hash<std::string>{}(w.letters());
    }
};
