#pragma once

// The legal language of a primitive random substitution, saturated up to a
// length cap.
//
// Closure construction: start from the letters (degree-0 super-words) and
// repeatedly harvest, for each known legal word w, all "tight" subwords of
// realizations of theta(w): a non-empty suffix of an element of theta(w_1),
// followed by full elements, followed by a non-empty prefix of an element
// of theta(w_m).  Every subword of a realization of theta(w) is a tight
// subword of a minimal covering subword of w, so the closure contains every
// legal word of length <= max_length once it stabilizes.

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "randsub/core.hpp"
#include "randsub/oracle.hpp"

namespace randsub {

class LanguageTable {
public:
    LanguageTable() = default;

    static LanguageTable build(const RandomSubstitution& s,
                               std::size_t max_length,
                               std::size_t budget = kDefaultBudget) {
        LanguageTable t;
        t.max_length_ = max_length;
        if (max_length == 0) {
            t.finalize();
            return t;
        }
        std::vector<Word> queue;
        for (int a = 0; a < s.dim(); ++a) {
            Word w(1, static_cast<char>(a));
            t.all_.insert(w);
            queue.push_back(w);
        }
        std::size_t processed = 0;
        while (processed < queue.size()) {
            ++t.rounds_;
            std::vector<Word> frontier(queue.begin() +
                                           static_cast<std::ptrdiff_t>(processed),
                                       queue.end());
            processed = queue.size();
            std::sort(frontier.begin(), frontier.end());
            // Shared-prefix walk: keep the right-flush fragment sets of the
            // current word's proper prefixes on a stack.
            std::vector<std::vector<Word>> stack;  // stack[k] = S(w[0..k+1))
            Word prev;
            for (const Word& w : frontier) {
                std::size_t keep = 0;
                while (keep < prev.size() && keep < w.size() &&
                       prev[keep] == w[keep])
                    ++keep;
                stack.resize(keep);
                for (std::size_t k = stack.size(); k < w.size(); ++k) {
                    int letter = static_cast<unsigned char>(w[k]);
                    std::vector<Word> next;
                    if (k == 0) {
                        for (const Word& e : s.rule(letter))
                            for (std::size_t cut = 0; cut < e.size(); ++cut)
                                if (e.size() - cut + 1 <= max_length)
                                    next.push_back(e.substr(cut));
                    } else {
                        for (const Word& y : stack[k - 1])
                            for (const Word& e : s.rule(letter)) {
                                if (y.size() + e.size() > max_length - 1)
                                    continue;
                                next.push_back(y + e);
                            }
                    }
                    canonical_sort(next);
                    stack.push_back(std::move(next));
                }
                harvest(s, w, stack, t, queue, budget);
                prev = w;
            }
        }
        t.finalize();
        return t;
    }

    bool contains(WordView w) const {
        return all_.count(Word(w)) != 0;
    }

    std::size_t max_length() const { return max_length_; }
    std::size_t size() const { return all_.size(); }
    unsigned rounds() const { return rounds_; }

    const std::vector<Word>& of_length(std::size_t n) const {
        static const std::vector<Word> empty;
        if (n == 0 || n > max_length_) return empty;
        return by_length_[n];
    }

    const std::vector<Word>& all_sorted() const { return sorted_; }

private:
    static void harvest(const RandomSubstitution& s, const Word& w,
                        const std::vector<std::vector<Word>>& stack,
                        LanguageTable& t, std::vector<Word>& queue,
                        std::size_t budget) {
        auto add = [&](const Word& x) {
            if (x.empty() || x.size() > t.max_length_) return;
            if (t.all_.insert(x).second) {
                if (t.all_.size() > budget)
                    throw BudgetExceeded("language table exceeds " +
                                         std::to_string(budget) + " words");
                queue.push_back(x);
            }
        };
        int last = static_cast<unsigned char>(w.back());
        if (w.size() == 1) {
            for (const Word& e : s.rule(last))
                for (std::size_t i = 0; i < e.size(); ++i)
                    for (std::size_t l = 1; l + i <= e.size(); ++l)
                        add(e.substr(i, l));
            return;
        }
        const std::vector<Word>& partials = stack[w.size() - 2];
        for (const Word& y : partials)
            for (const Word& e : s.rule(last))
                for (std::size_t cut = 1; cut <= e.size(); ++cut) {
                    if (y.size() + cut > t.max_length_) break;
                    add(y + e.substr(0, cut));
                }
    }

    void finalize() {
        sorted_.assign(all_.begin(), all_.end());
        canonical_sort(sorted_);
        by_length_.assign(max_length_ + 1, {});
        for (const Word& w : sorted_)
            if (w.size() <= max_length_) by_length_[w.size()].push_back(w);
    }

    std::size_t max_length_ = 0;
    unsigned rounds_ = 0;
    std::unordered_set<std::string> all_;
    std::vector<Word> sorted_;
    std::vector<std::vector<Word>> by_length_;
};

inline LanguageTable legal_words(const RandomSubstitution& s,
                                 std::size_t max_length,
                                 std::size_t budget = kDefaultBudget) {
    return LanguageTable::build(s, max_length, budget);
}

inline bool is_legal(WordView w, const LanguageTable& table) {
    if (w.empty()) return true;
    if (w.size() > table.max_length()) throw LengthExceedsTable();
    return table.contains(w);
}

inline std::size_t complexity(const LanguageTable& table, std::size_t n) {
    if (n > table.max_length()) throw LengthExceedsTable();
    return table.of_length(n).size();
}

// A witness that u occurs inside a single degree-k super-word: the element
// of theta^k(letter) together with the offset of u in it.
struct SubwordWitness {
    unsigned degree = 0;
    int letter = 0;
    Word element;
    std::size_t offset = 0;
};

inline SubwordWitness marginal_containing(const RandomSubstitution& s,
                                          const Word& u, unsigned degree_cap = 40) {
    if (u.empty()) throw NotLegal("(empty)");
    for (unsigned k = 0; k <= degree_cap; ++k) {
        ImageOracle oracle(s, u, static_cast<int>(k));
        for (int c = 0; c < s.dim(); ++c) {
            if (!oracle.subword(0, static_cast<int>(u.size()),
                                static_cast<int>(k), c))
                continue;
            WitnessBuilder builder(s, oracle);
            SubwordWitness w;
            w.degree = k;
            w.letter = c;
            w.element = builder.containing(0, static_cast<int>(u.size()),
                                           static_cast<int>(k), c, &w.offset);
            return w;
        }
    }
    throw NotLegal("no containing super-word up to degree " +
                   std::to_string(degree_cap));
}

}  // namespace randsub
