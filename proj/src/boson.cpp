#include "normord/boson.hpp"

#include "normord/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <iomanip>
#include <sstream>

namespace normord {

// --- BosonWord -------------------------------------------------------------

BosonWord::BosonWord(std::string letters) : letters_(std::move(letters)) {
    for (char c : letters_)
        if (c != 'A' && c != 'D') throw RangeError(std::string("invalid boson letter '") + c + "'");
}

std::size_t BosonWord::inversions() const {
    std::size_t seen_a = 0;
    std::size_t inv = 0;
    for (char c : letters_) {
        if (c == 'A') ++seen_a;
        else inv += seen_a;
    }
    return inv;
}

bool BosonWord::is_normal() const { return letters_.find("AD") == std::string::npos; }

BosonWord BosonWord::repeated(std::size_t times) const {
    std::string out;
    out.reserve(letters_.size() * times);
    for (std::size_t i = 0; i < times; ++i) out += letters_;
    return BosonWord(std::move(out));
}

BosonWord BosonWord::dagger() const {
    std::string out(letters_.rbegin(), letters_.rend());
    for (char& c : out) c = (c == 'A') ? 'D' : 'A';
    return BosonWord(std::move(out));
}

BosonWord laguerre_word(unsigned r, unsigned M) {
    return BosonWord::annihilators(r) + BosonWord("DA").repeated(M);
}

// --- BosonExpr -------------------------------------------------------------

BosonExpr::BosonExpr(std::vector<BosonTerm> terms) : terms_(std::move(terms)) {}

BosonExpr BosonExpr::of_word(const BosonWord& w, const BigRat& c) { return BosonExpr({{c, w}}); }

BosonExpr BosonExpr::scalar(const BigRat& c) { return BosonExpr({{c, BosonWord()}}); }

BosonExpr BosonExpr::normalized() const {
    std::map<BosonWord, BigRat> merged;
    for (const auto& t : terms_) merged[t.word] += t.coeff;
    std::vector<BosonTerm> out;
    for (auto& [w, c] : merged)
        if (c != 0) out.push_back({c, w});
    return BosonExpr(std::move(out));
}

BosonExpr& BosonExpr::operator+=(const BosonExpr& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

BosonExpr& BosonExpr::operator-=(const BosonExpr& other) {
    for (const auto& t : other.terms_) terms_.push_back({-t.coeff, t.word});
    return *this;
}

BosonExpr operator*(const BosonExpr& a, const BosonExpr& b) {
    std::vector<BosonTerm> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) out.push_back({x.coeff * y.coeff, x.word + y.word});
    return BosonExpr(std::move(out)).normalized();
}

BosonExpr operator*(BosonExpr a, const BigRat& c) {
    for (auto& t : a.terms_) t.coeff *= c;
    return a;
}

BosonExpr BosonExpr::power(unsigned long n) const {
    BosonExpr out = scalar(1);
    for (unsigned long i = 0; i < n; ++i) out = out * *this;
    return out;
}

// --- parser ----------------------------------------------------------------

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    BosonExpr parse() {
        BosonExpr e = parse_sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e.normalized();
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool at_factor_start() {
        skip_space();
        if (pos_ >= text_.size()) return false;
        const char c = text_[pos_];
        return c == '(' || c == 'a' || c == 'n' || std::isdigit(static_cast<unsigned char>(c));
    }

    BosonExpr parse_sum() {
        skip_space();
        BosonExpr acc;
        bool negate = false;
        if (peek('+') || peek('-')) {
            negate = text_[pos_] == '-';
            ++pos_;
        }
        BosonExpr first = parse_product();
        acc = negate ? first * BigRat(-1) : first;
        while (peek('+') || peek('-')) {
            const bool minus = text_[pos_] == '-';
            ++pos_;
            BosonExpr next = parse_product();
            if (minus) acc -= next;
            else acc += next;
        }
        return acc;
    }

    BosonExpr parse_product() {
        BosonExpr acc = parse_power();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                acc = acc * parse_power();
            } else if (at_factor_start()) {
                acc = acc * parse_power();
            } else {
                return acc;
            }
        }
    }

    BosonExpr parse_power() {
        BosonExpr base = parse_atom();
        while (peek('^')) {
            ++pos_;
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponent");
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a nonnegative integer exponent");
            const unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
            base = base.power(k);
        }
        return base;
    }

    BosonExpr parse_atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            BosonExpr inner = parse_sum();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return BosonExpr::scalar(parse_number());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view ident = text_.substr(start, pos_ - start);
            if (ident == "a") {
                static constexpr std::string_view kDagger = "\xE2\x80\xA0";  // U+2020
                if (text_.substr(pos_, kDagger.size()) == kDagger) {
                    pos_ += kDagger.size();
                    return BosonExpr::of_word(BosonWord("D"));
                }
                return BosonExpr::of_word(BosonWord("A"));
            }
            if (ident == "ad") return BosonExpr::of_word(BosonWord("D"));
            if (ident == "n") return BosonExpr::of_word(BosonWord("DA"));
            pos_ = start;
            fail("unknown symbol '" + std::string(ident) + "'");
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    BigRat parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        BigInt num(std::string(text_.substr(start, pos_ - start)), 10);
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            const std::size_t dstart = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (dstart == pos_) fail("expected a denominator");
            BigInt den(std::string(text_.substr(dstart, pos_ - dstart)), 10);
            if (den == 0) {
                pos_ = dstart;
                fail("zero denominator");
            }
            return make_rat(num, den);
        }
        return BigRat(num);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

BosonExpr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

// --- NormalForm ------------------------------------------------------------

NormalForm NormalForm::identity() { return monomial(0, 0, 1); }

NormalForm NormalForm::monomial(unsigned long dag, unsigned long ann, const BigRat& c) {
    NormalForm f;
    f.add(dag, ann, c);
    return f;
}

void NormalForm::add(unsigned long dag, unsigned long ann, const BigRat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(MonomialKey{dag, ann}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BigRat NormalForm::coeff(unsigned long dag, unsigned long ann) const {
    auto it = terms_.find(MonomialKey{dag, ann});
    return it == terms_.end() ? BigRat(0) : it->second;
}

bool NormalForm::is_diagonal() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.dag == kv.first.ann; });
}

bool NormalForm::has_integer_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return is_integer(kv.second); });
}

BigRat NormalForm::total_weight() const {
    BigRat sum = 0;
    for (const auto& [key, c] : terms_) sum += c;
    return sum;
}

NormalForm& NormalForm::operator+=(const NormalForm& other) {
    for (const auto& [key, c] : other.terms_) add(key.dag, key.ann, c);
    return *this;
}

NormalForm& NormalForm::operator-=(const NormalForm& other) {
    for (const auto& [key, c] : other.terms_) add(key.dag, key.ann, -c);
    return *this;
}

NormalForm& NormalForm::operator*=(const BigRat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, v] : terms_) v *= c;
    return *this;
}

// --- rewriting oracle ------------------------------------------------------

namespace {

std::size_t count_letter(const std::string& s, char c) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), c));
}

}  // namespace

NormalForm normal_order_rewrite(const BosonExpr& e, RewriteStrategy strategy) {
    // Keyed by (inversions, letters), largest first: a child always has fewer
    // inversions than its parent, so a popped word has collected every
    // contribution it will ever receive.
    using Key = std::pair<std::size_t, std::string>;
    std::map<Key, BigRat, std::greater<>> pending;
    for (const auto& t : e.terms())
        if (t.coeff != 0) pending[{t.word.inversions(), t.word.letters()}] += t.coeff;

    NormalForm out;
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const auto& [inv, word] = node.key();
        const BigRat& c = node.mapped();
        if (c == 0) continue;
        if (inv == 0) {
            out.add(count_letter(word, 'D'), count_letter(word, 'A'), c);
            continue;
        }
        const std::size_t at = strategy == RewriteStrategy::Leftmost ? word.find("AD") : word.rfind("AD");
        // a a† -> a† a
        std::string swapped = word;
        swapped[at] = 'D';
        swapped[at + 1] = 'A';
        pending[{inv - 1, std::move(swapped)}] += c;
        // a a† -> 1
        std::string contracted = word;
        contracted.erase(at, 2);
        const std::size_t contracted_inv = BosonWord(contracted).inversions();
        pending[{contracted_inv, std::move(contracted)}] += c;
    }
    return out;
}

NormalForm normal_order_rewrite(const BosonWord& w, RewriteStrategy strategy) {
    return normal_order_rewrite(BosonExpr::of_word(w), strategy);
}

// --- closed-form algebra ---------------------------------------------------

NormalForm nf_multiply(const NormalForm& f, const NormalForm& g) {
    NormalForm out;
    for (const auto& [fk, fc] : f.terms()) {
        for (const auto& [gk, gc] : g.terms()) {
            const unsigned long q = fk.ann;
            const unsigned long r = gk.dag;
            const BigRat c = fc * gc;
            for (unsigned long k = 0; k <= std::min(q, r); ++k) {
                const BigInt weight = factorial(k) * binomial(q, k) * binomial(r, k);
                out.add(fk.dag + r - k, q + gk.ann - k, c * BigRat(weight));
            }
        }
    }
    return out;
}

NormalForm nf_power(const NormalForm& f, unsigned long n) {
    NormalForm out = NormalForm::identity();
    for (unsigned long i = 0; i < n; ++i) out = nf_multiply(out, f);
    return out;
}

NormalForm dagger(const NormalForm& f) {
    // The conjugate of (a†)^k a^l is (a†)^l a^k, already normally ordered.
    NormalForm out;
    for (const auto& [key, c] : f.terms()) out.add(key.ann, key.dag, c);
    return out;
}

NormalForm laguerre_normal_form(unsigned r, unsigned M) { return normal_order_rewrite(laguerre_word(r, M)); }

ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ExactComplex coherent_expectation(const NormalForm& f, const ExactComplex& z) {
    const ExactComplex zbar{z.re, -z.im};
    ExactComplex sum{0, 0};
    // Powers are cached since keys repeat exponents heavily.
    std::map<unsigned long, ExactComplex> zpow, zbarpow;
    auto power = [](std::map<unsigned long, ExactComplex>& cache, const ExactComplex& base, unsigned long e) {
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        ExactComplex acc{1, 0};
        for (unsigned long i = 0; i < e; ++i) acc = acc * base;
        cache.emplace(e, acc);
        return acc;
    };
    for (const auto& [key, c] : f.terms()) {
        const ExactComplex term = power(zbarpow, zbar, key.dag) * power(zpow, z, key.ann);
        sum.re += c * term.re;
        sum.im += c * term.im;
    }
    return sum;
}

PolyQ diagonal_reduce(const NormalForm& f) {
    PolyQ out;
    for (const auto& [key, c] : f.terms()) {
        if (key.dag != key.ann)
            throw DomainError("diagonal_reduce: off-diagonal term (a†)^" + std::to_string(key.dag) + " a^" +
                              std::to_string(key.ann));
        out += falling_factorial_poly(key.dag) * c;
    }
    return out;
}

PolyQ apply_to_monomial(const NormalForm& f, unsigned long p) {
    PolyQ out;
    for (const auto& [key, c] : f.terms()) {
        if (key.ann > p) continue;
        const BigInt ff = falling_factorial(BigInt(p), key.ann);
        out += PolyQ::monomial(c * BigRat(ff), p - key.ann + key.dag);
    }
    return out;
}

std::string nf_to_table(const NormalForm& f) {
    std::vector<std::array<std::string, 3>> rows;
    std::array<std::size_t, 3> width{3, 3, 5};
    for (const auto& [key, c] : f.terms()) {
        rows.push_back({std::to_string(key.dag), std::to_string(key.ann), to_string(c)});
        for (std::size_t i = 0; i < 3; ++i) width[i] = std::max(width[i], rows.back()[i].size());
    }
    std::ostringstream os;
    os << std::right << std::setw(static_cast<int>(width[0])) << "dag" << "  " << std::setw(static_cast<int>(width[1]))
       << "ann" << "  " << std::setw(static_cast<int>(width[2])) << "coeff" << "\n";
    for (const auto& row : rows)
        os << std::setw(static_cast<int>(width[0])) << row[0] << "  " << std::setw(static_cast<int>(width[1])) << row[1]
           << "  " << std::setw(static_cast<int>(width[2])) << row[2] << "\n";
    return os.str();
}

std::string nf_to_string(const NormalForm& f) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : f.terms()) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const BigRat mag = abs(c);
        const bool bare = key.dag == 0 && key.ann == 0;
        if (mag != 1 || bare) os << to_string(mag);
        if (key.dag > 0) {
            os << "a†";
            if (key.dag > 1) os << "^" << key.dag;
        }
        if (key.ann > 0) {
            os << "a";
            if (key.ann > 1) os << "^" << key.ann;
        }
    }
    return os.str();
}

}  // namespace normord
