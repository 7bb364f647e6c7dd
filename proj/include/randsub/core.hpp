#pragma once

// Alphabets, words, random substitutions and their abelianisations.
//
// A Word stores letter *indices* (one char per letter), not display text;
// the Alphabet owns the mapping between indices and UTF-8 symbols.  All
// set-valued results are kept canonical: sorted by (length, lex) and
// deduplicated.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace randsub {

using BigInt = boost::multiprecision::cpp_int;
using Word = std::string;           // one char per letter index
using WordView = std::string_view;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyAlphabet : Error {
    EmptyAlphabet() : Error("alphabet must be non-empty") {}
};
struct DuplicateSymbol : Error {
    explicit DuplicateSymbol(const std::string& s)
        : Error("duplicate symbol in alphabet: " + s) {}
};
struct BadSymbol : Error {
    explicit BadSymbol(const std::string& s)
        : Error("symbol must be a single Unicode scalar: " + s) {}
};
struct UnknownSymbol : Error {
    explicit UnknownSymbol(const std::string& s)
        : Error("unknown symbol: " + s) {}
};
struct EmptyRuleSet : Error {
    explicit EmptyRuleSet(const std::string& letter)
        : Error("empty rule set for letter " + letter) {}
};
struct EmptyRuleWord : Error {
    explicit EmptyRuleWord(const std::string& letter)
        : Error("empty rule word for letter " + letter) {}
};
struct NotCompatible : Error {
    NotCompatible() : Error("substitution is not compatible") {}
};
struct NotPrimitive : Error {
    NotPrimitive() : Error("substitution is not primitive") {}
};
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what)
        : Error("budget exceeded: " + what) {}
};
struct LengthExceedsTable : Error {
    LengthExceedsTable() : Error("word longer than language table") {}
};
struct TableTooSmall : Error {
    explicit TableTooSmall(const std::string& what)
        : Error("language table too small: " + what) {}
};
struct NotLegal : Error {
    explicit NotLegal(const std::string& w)
        : Error("word is not legal: " + w) {}
};

inline constexpr std::size_t kDefaultBudget = 1'000'000;

// Number of bytes of the UTF-8 sequence starting at s[0], or 0 if invalid.
inline std::size_t utf8_len(std::string_view s) {
    if (s.empty()) return 0;
    unsigned char c = static_cast<unsigned char>(s[0]);
    std::size_t n = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3
                  : (c >> 3) == 0x1E ? 4 : 0;
    if (n == 0 || s.size() < n) return 0;
    for (std::size_t i = 1; i < n; ++i)
        if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) return 0;
    return n;
}

class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> symbols)
        : symbols_(std::move(symbols)) {
        if (symbols_.empty()) throw EmptyAlphabet();
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            const auto& s = symbols_[i];
            if (utf8_len(s) != s.size() || s.empty()) throw BadSymbol(s);
            if (!index_.emplace(s, static_cast<int>(i)).second)
                throw DuplicateSymbol(s);
        }
    }

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& symbol(int i) const { return symbols_.at(i); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    int index_of(const std::string& symbol) const {
        auto it = index_.find(symbol);
        if (it == index_.end()) throw UnknownSymbol(symbol);
        return it->second;
    }

    // Text made of alphabet symbols -> word of letter indices.
    Word parse(std::string_view text) const {
        Word w;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t n = utf8_len(text.substr(pos));
            if (n == 0) throw UnknownSymbol(std::string(text.substr(pos, 1)));
            std::string sym(text.substr(pos, n));
            w.push_back(static_cast<char>(index_of(sym)));
            pos += n;
        }
        return w;
    }

    std::string format(WordView w) const {
        std::string out;
        for (char c : w) out += symbol(static_cast<unsigned char>(c));
        return out;
    }

private:
    std::vector<std::string> symbols_;
    std::map<std::string, int> index_;
};

// Abelianisation vector: counts[i] = number of occurrences of letter i.
inline std::vector<BigInt> abelianise(WordView w, int d) {
    std::vector<BigInt> counts(d, 0);
    for (char c : w) counts.at(static_cast<unsigned char>(c)) += 1;
    return counts;
}

inline void canonical_sort(std::vector<Word>& words) {
    std::sort(words.begin(), words.end(), [](const Word& x, const Word& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    words.erase(std::unique(words.begin(), words.end()), words.end());
}

// Square matrix with arbitrary-precision integer entries.
class IntMatrix {
public:
    IntMatrix() : d_(0) {}
    explicit IntMatrix(int d) : d_(d), e_(static_cast<std::size_t>(d) * d, 0) {}

    int dim() const { return d_; }
    BigInt& at(int i, int j) { return e_[static_cast<std::size_t>(i) * d_ + j]; }
    const BigInt& at(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * d_ + j];
    }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix operator*(const IntMatrix& o) const {
        IntMatrix r(d_);
        for (int i = 0; i < d_; ++i)
            for (int k = 0; k < d_; ++k) {
                const BigInt& m = at(i, k);
                if (m == 0) continue;
                for (int j = 0; j < d_; ++j) r.at(i, j) += m * o.at(k, j);
            }
        return r;
    }

    static IntMatrix identity(int d) {
        IntMatrix r(d);
        for (int i = 0; i < d; ++i) r.at(i, i) = 1;
        return r;
    }

    IntMatrix pow(unsigned n) const {
        IntMatrix r = identity(d_), b = *this;
        for (; n; n >>= 1) {
            if (n & 1) r = r * b;
            if (n > 1) b = b * b;
        }
        return r;
    }

    bool positive() const {
        return std::all_of(e_.begin(), e_.end(),
                           [](const BigInt& v) { return v > 0; });
    }

    std::vector<BigInt> column_sums() const {
        std::vector<BigInt> s(d_, 0);
        for (int j = 0; j < d_; ++j)
            for (int i = 0; i < d_; ++i) s[j] += at(i, j);
        return s;
    }

    std::vector<BigInt> apply(const std::vector<BigInt>& v) const {
        std::vector<BigInt> r(d_, 0);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

private:
    int d_;
    std::vector<BigInt> e_;
};

class RandomSubstitution {
public:
    RandomSubstitution(Alphabet alphabet, std::vector<std::vector<Word>> rules)
        : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
        if (static_cast<int>(rules_.size()) != alphabet_.size())
            throw Error("rule count does not match alphabet size");
        for (int a = 0; a < alphabet_.size(); ++a) {
            if (rules_[a].empty()) throw EmptyRuleSet(alphabet_.symbol(a));
            for (const Word& w : rules_[a]) {
                if (w.empty()) throw EmptyRuleWord(alphabet_.symbol(a));
                for (char c : w)
                    if (static_cast<unsigned char>(c) >=
                        static_cast<unsigned>(alphabet_.size()))
                        throw Error("rule word uses letter outside alphabet");
            }
            canonical_sort(rules_[a]);
        }
    }

    const Alphabet& alphabet() const { return alphabet_; }
    int dim() const { return alphabet_.size(); }
    const std::vector<Word>& rule(int letter) const { return rules_.at(letter); }
    const std::vector<std::vector<Word>>& rules() const { return rules_; }

    bool deterministic() const {
        return std::all_of(rules_.begin(), rules_.end(),
                           [](const auto& r) { return r.size() == 1; });
    }

    std::size_t max_rule_length() const {
        std::size_t k = 0;
        for (const auto& r : rules_)
            for (const Word& w : r) k = std::max(k, w.size());
        return k;
    }

private:
    Alphabet alphabet_;
    std::vector<std::vector<Word>> rules_;
};

// Shared abelianisation per letter across all its rule words.
inline bool is_compatible(const RandomSubstitution& s) {
    for (int a = 0; a < s.dim(); ++a) {
        auto ref = abelianise(s.rule(a).front(), s.dim());
        for (const Word& w : s.rule(a))
            if (abelianise(w, s.dim()) != ref) return false;
    }
    return true;
}

// M_ij = number of occurrences of letter i in any rule word for letter j.
inline IntMatrix substitution_matrix(const RandomSubstitution& s) {
    if (!is_compatible(s)) throw NotCompatible();
    IntMatrix m(s.dim());
    for (int j = 0; j < s.dim(); ++j) {
        auto counts = abelianise(s.rule(j).front(), s.dim());
        for (int i = 0; i < s.dim(); ++i) m.at(i, j) = counts[i];
    }
    return m;
}

// Wielandt bound: a non-negative d x d matrix is primitive iff
// M^(d^2 - 2d + 2) is positive.
inline bool is_primitive(const IntMatrix& m) {
    int d = m.dim();
    if (d == 0) return false;
    unsigned p = static_cast<unsigned>(d) * d - 2u * d + 2u;
    if (d == 1) return m.at(0, 0) > 0;
    return m.pow(p).positive();
}

inline bool is_primitive(const RandomSubstitution& s) {
    return is_primitive(substitution_matrix(s));
}

inline bool is_constant_length(const RandomSubstitution& s, std::size_t* len = nullptr) {
    std::size_t l = s.rule(0).front().size();
    for (const auto& r : s.rules())
        for (const Word& w : r)
            if (w.size() != l) return false;
    if (len) *len = l;
    return true;
}

// All realizations of the set-valued image of w, canonical and deduplicated.
inline std::vector<Word> apply(const RandomSubstitution& s, WordView w,
                               std::size_t budget = kDefaultBudget) {
    std::size_t count = 1;
    for (char c : w) {
        count *= s.rule(static_cast<unsigned char>(c)).size();
        if (count > budget)
            throw BudgetExceeded("apply would enumerate more than " +
                                 std::to_string(budget) + " realizations");
    }
    std::vector<Word> out{Word()};
    for (char c : w) {
        const auto& choices = s.rule(static_cast<unsigned char>(c));
        std::vector<Word> next;
        next.reserve(out.size() * choices.size());
        for (const Word& prefix : out)
            for (const Word& piece : choices) next.push_back(prefix + piece);
        out = std::move(next);
    }
    canonical_sort(out);
    return out;
}

// theta^n as a random substitution; n = 0 gives the identity.
inline RandomSubstitution power(const RandomSubstitution& s, unsigned n,
                                std::size_t budget = kDefaultBudget) {
    std::vector<std::vector<Word>> rules(s.dim());
    for (int a = 0; a < s.dim(); ++a)
        rules[a] = {Word(1, static_cast<char>(a))};
    for (unsigned k = 0; k < n; ++k) {
        std::size_t total = 0;
        for (int a = 0; a < s.dim(); ++a) {
            std::vector<Word> next;
            for (const Word& u : rules[a]) {
                auto images = apply(s, u, budget);
                next.insert(next.end(), images.begin(), images.end());
            }
            canonical_sort(next);
            total += next.size();
            if (total > budget)
                throw BudgetExceeded("power rule sets exceed " +
                                     std::to_string(budget) + " words");
            rules[a] = std::move(next);
        }
    }
    return RandomSubstitution(s.alphabet(), std::move(rules));
}

// All deterministic marginals, i.e. one rule word chosen per letter, in
// canonical order (mixed radix over the sorted rule sets).
inline std::vector<RandomSubstitution> marginals(const RandomSubstitution& s,
                                                 std::size_t budget = kDefaultBudget) {
    std::size_t count = 1;
    for (const auto& r : s.rules()) {
        count *= r.size();
        if (count > budget)
            throw BudgetExceeded("marginal count exceeds " + std::to_string(budget));
    }
    std::vector<RandomSubstitution> out;
    out.reserve(count);
    std::vector<std::size_t> idx(s.dim(), 0);
    for (;;) {
        std::vector<std::vector<Word>> rules(s.dim());
        for (int a = 0; a < s.dim(); ++a) rules[a] = {s.rule(a)[idx[a]]};
        out.emplace_back(s.alphabet(), std::move(rules));
        int a = s.dim() - 1;
        while (a >= 0 && ++idx[a] == s.rule(a).size()) idx[a--] = 0;
        if (a < 0) break;
    }
    return out;
}

// Letter frequency check helper: |w|_i for each letter.
inline std::vector<std::size_t> letter_counts(WordView w, int d) {
    std::vector<std::size_t> counts(d, 0);
    for (char c : w) counts.at(static_cast<unsigned char>(c)) += 1;
    return counts;
}

}  // namespace randsub
