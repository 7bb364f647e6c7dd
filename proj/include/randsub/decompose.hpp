#pragma once

// The inflation parser: theta^n-cuttings of a word, induced decompositions,
// exactness, recognisability with a radius, bounded local-recognisability
// certification, and recognisable-word search.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "randsub/core.hpp"
#include "randsub/language.hpp"
#include "randsub/oracle.hpp"

namespace randsub {

struct IndexOutOfRange : Error {
    IndexOutOfRange() : Error("position range outside the decomposed word") {}
};

struct DecompositionItem {
    std::vector<Word> pieces;
    Word root;
    unsigned level = 0;
    // True when the boundary piece is strictly shorter than every matching
    // element (a proper suffix / proper prefix).  Both false iff the word is
    // an exact level-n inflation word.  Identity ignores the flags.
    bool first_proper = false;
    bool last_proper = false;

    Word word() const {
        Word w;
        for (const Word& p : pieces) w += p;
        return w;
    }
    friend bool operator==(const DecompositionItem& a, const DecompositionItem& b) {
        return a.pieces == b.pieces && a.root == b.root;
    }
    friend bool operator<(const DecompositionItem& a, const DecompositionItem& b) {
        if (a.pieces != b.pieces) return a.pieces < b.pieces;
        return a.root < b.root;
    }
};

inline bool in_image(const RandomSubstitution& s, const Word& w, unsigned n,
                     int letter) {
    if (n == 0) return w.size() == 1 && w[0] == static_cast<char>(letter);
    ImageOracle oracle(s, w, static_cast<int>(n));
    return oracle.full(0, static_cast<int>(w.size()), static_cast<int>(n), letter);
}

struct EnumerateOptions {
    const LanguageTable* root_table = nullptr;  // null: skip root legality
    std::size_t budget = kDefaultBudget;
};

// Enumerates D_{theta^n}(u) via DFS over cut positions, one membership oracle
// for the whole word.  The callback returns false to stop early.  Roots are
// pruned against the table prefix-by-prefix when a table is given (legal
// words are closed under subwords, so the pruning is sound).
inline void enumerate_decompositions(
    const RandomSubstitution& s, unsigned n, const Word& u,
    const EnumerateOptions& opts,
    const std::function<bool(const DecompositionItem&)>& emit) {
    if (n == 0) throw Error("decomposition level must be >= 1");
    if (u.empty()) throw Error("cannot decompose the empty word");
    int m = static_cast<int>(u.size());
    int d = s.dim();
    ImageOracle oracle(s, u, static_cast<int>(n));
    std::size_t steps = 0;
    auto tick = [&] {
        if (++steps > opts.budget)
            throw BudgetExceeded("decomposition search at " +
                                 std::to_string(opts.budget) + " steps");
    };
    auto root_viable = [&](const Word& r) {
        return opts.root_table == nullptr ||
               (r.size() <= opts.root_table->max_length() &&
                opts.root_table->contains(r));
    };

    bool stopped = false;
    auto make_item = [&](const std::vector<int>& cuts, const Word& root) {
        DecompositionItem item;
        item.level = n;
        item.root = root;
        int prev = 0;
        for (std::size_t t = 0; t < cuts.size(); ++t) {
            item.pieces.push_back(u.substr(prev, cuts[t] - prev));
            prev = cuts[t];
        }
        int nn = static_cast<int>(n);
        if (item.pieces.size() == 1) {
            bool full = oracle.full(0, m, nn, static_cast<unsigned char>(root[0]));
            item.first_proper = item.last_proper = !full;
        } else {
            int c1 = cuts[0];
            int pl = cuts[cuts.size() - 2];
            item.first_proper =
                !oracle.full(0, c1, nn, static_cast<unsigned char>(root.front()));
            item.last_proper =
                !oracle.full(pl, m, nn, static_cast<unsigned char>(root.back()));
        }
        return item;
    };

    // Single-piece items: u a subword of an element of theta^n(letter).
    for (int c = 0; c < d && !stopped; ++c) {
        tick();
        if (!oracle.subword(0, m, static_cast<int>(n), c)) continue;
        Word root(1, static_cast<char>(c));
        if (!root_viable(root)) continue;
        if (!emit(make_item({m}, root))) stopped = true;
    }
    if (stopped) return;

    // Multi-piece items.
    std::vector<int> cuts;
    Word root;
    std::function<void(int)> dfs = [&](int pos) {
        if (stopped) return;
        for (int c = 0; c < d && !stopped; ++c) {
            tick();
            root.push_back(static_cast<char>(c));
            if (root_viable(root)) {
                if (oracle.prefix(pos, m, static_cast<int>(n), c)) {
                    cuts.push_back(m);
                    if (!emit(make_item(cuts, root))) stopped = true;
                    cuts.pop_back();
                }
                for (int q = pos + 1; q < m && !stopped; ++q) {
                    if (!oracle.full(pos, q, static_cast<int>(n), c)) continue;
                    cuts.push_back(q);
                    dfs(q);
                    cuts.pop_back();
                }
            }
            root.pop_back();
        }
    };
    for (int c = 0; c < d && !stopped; ++c) {
        for (int q = 1; q < m && !stopped; ++q) {
            tick();
            if (!oracle.suffix(0, q, static_cast<int>(n), c)) continue;
            root.push_back(static_cast<char>(c));
            if (root_viable(root)) {
                cuts.push_back(q);
                dfs(q);
                cuts.pop_back();
            }
            root.pop_back();
        }
    }
}

inline std::vector<DecompositionItem> decompositions_assume_legal(
    const RandomSubstitution& s, unsigned n, const Word& u,
    const LanguageTable& table, std::size_t budget = kDefaultBudget) {
    EnumerateOptions opts;
    opts.root_table = &table;
    opts.budget = budget;
    std::vector<DecompositionItem> items;
    enumerate_decompositions(s, n, u, opts, [&](const DecompositionItem& it) {
        items.push_back(it);
        return true;
    });
    std::sort(items.begin(), items.end());
    return items;
}

inline std::vector<DecompositionItem> decompositions(
    const RandomSubstitution& s, unsigned n, const Word& u,
    const LanguageTable& table, std::size_t budget = kDefaultBudget) {
    if (!is_legal(u, table)) throw NotLegal(s.alphabet().format(u));
    return decompositions_assume_legal(s, n, u, table, budget);
}

// Restriction of a decomposition to positions [i, j] (1-based, inclusive).
inline DecompositionItem induced(const RandomSubstitution& s,
                                 const DecompositionItem& d, std::size_t i,
                                 std::size_t j) {
    std::size_t total = 0;
    for (const Word& p : d.pieces) total += p.size();
    if (i < 1 || i > j || j > total) throw IndexOutOfRange();
    std::vector<std::size_t> cum(d.pieces.size() + 1, 0);
    for (std::size_t t = 0; t < d.pieces.size(); ++t)
        cum[t + 1] = cum[t] + d.pieces[t].size();
    auto piece_of = [&](std::size_t pos) {  // 1-based position -> piece index
        std::size_t k = 0;
        while (cum[k + 1] < pos) ++k;
        return k;
    };
    std::size_t ka = piece_of(i), kb = piece_of(j);
    DecompositionItem out;
    out.level = d.level;
    out.root = d.root.substr(ka, kb - ka + 1);
    if (ka == kb) {
        out.pieces.push_back(
            d.pieces[ka].substr(i - 1 - cum[ka], j - i + 1));
        bool full = in_image(s, out.pieces[0], d.level,
                             static_cast<unsigned char>(out.root[0]));
        out.first_proper = out.last_proper = !full;
        return out;
    }
    out.pieces.push_back(d.pieces[ka].substr(i - 1 - cum[ka]));
    for (std::size_t t = ka + 1; t < kb; ++t) out.pieces.push_back(d.pieces[t]);
    out.pieces.push_back(d.pieces[kb].substr(0, j - cum[kb]));
    out.first_proper = !in_image(s, out.pieces.front(), d.level,
                                 static_cast<unsigned char>(out.root.front()));
    out.last_proper = !in_image(s, out.pieces.back(), d.level,
                                static_cast<unsigned char>(out.root.back()));
    return out;
}

inline std::vector<Word> exact_preimages(const RandomSubstitution& s, unsigned n,
                                         const Word& u, const LanguageTable& table,
                                         std::size_t budget = kDefaultBudget) {
    std::vector<Word> roots;
    for (const DecompositionItem& it : decompositions(s, n, u, table, budget))
        if (!it.first_proper && !it.last_proper) roots.push_back(it.root);
    canonical_sort(roots);
    return roots;
}

enum class RecStatus { Recognisable, Ambiguous, Inconclusive };

struct RecognisabilityVerdict {
    Word word;
    unsigned level = 0;
    RecStatus status = RecStatus::Inconclusive;
    unsigned radius = 0;
    DecompositionItem induced_item;  // Recognisable: the forced decomposition
    bool cross_extension_agreement = false;
    Word ambiguous_extension;  // Ambiguous: a witness extension and the two
    DecompositionItem witness_a, witness_b;  // induced decompositions it admits
    DecompositionItem parent_a, parent_b;    // via these full decompositions
};

// u is radius-N recognisable at level n when every legal extension l+u+r with
// |l| = |r| = N admits exactly one induced decomposition of u.  Agreement
// across different extensions is reported, not required.
inline RecognisabilityVerdict is_recognisable(const RandomSubstitution& s,
                                              unsigned n, const Word& u,
                                              unsigned N,
                                              const LanguageTable& table,
                                              std::size_t budget = kDefaultBudget) {
    RecognisabilityVerdict v;
    v.word = u;
    v.level = n;
    v.radius = N;
    if (u.size() + 2 * static_cast<std::size_t>(N) > table.max_length())
        throw TableTooSmall("|u| + 2N = " +
                            std::to_string(u.size() + 2 * N) + " > " +
                            std::to_string(table.max_length()));
    if (!table.contains(u)) throw NotLegal(s.alphabet().format(u));

    std::vector<Word> extensions;
    if (N == 0) {
        extensions.push_back(u);
    } else {
        for (const Word& w : table.of_length(u.size() + 2 * N))
            if (w.compare(N, u.size(), u) == 0) extensions.push_back(w);
    }

    EnumerateOptions opts;
    opts.root_table = &table;
    opts.budget = budget;
    std::optional<DecompositionItem> across;
    bool agree = true;
    for (const Word& w : extensions) {
        std::optional<DecompositionItem> first;
        DecompositionItem first_parent;
        bool ambiguous = false;
        enumerate_decompositions(s, n, w, opts, [&](const DecompositionItem& it) {
            DecompositionItem ind = induced(s, it, N + 1, N + u.size());
            if (!first) {
                first = ind;
                first_parent = it;
                return true;
            }
            if (ind == *first) return true;
            v.status = RecStatus::Ambiguous;
            v.ambiguous_extension = w;
            v.witness_a = *first;
            v.witness_b = ind;
            v.parent_a = first_parent;
            v.parent_b = it;
            ambiguous = true;
            return false;
        });
        if (ambiguous) return v;
        if (!first) throw Error("legal extension admits no decomposition");
        if (across && !(*across == *first)) agree = false;
        if (!across) across = first;
    }
    v.status = RecStatus::Recognisable;
    v.induced_item = *across;
    v.cross_extension_agreement = agree;
    return v;
}

struct RadiusSearch {
    std::optional<unsigned> radius;
    RecognisabilityVerdict verdict;  // success: the certifying verdict;
};                                   // failure: the last ambiguity witness

inline RadiusSearch recognisability_radius(const RandomSubstitution& s,
                                           unsigned n, const Word& u,
                                           unsigned N_max,
                                           const LanguageTable& table,
                                           std::size_t budget = kDefaultBudget) {
    if (u.size() + 2 * static_cast<std::size_t>(N_max) > table.max_length())
        throw TableTooSmall("radius search needs length " +
                            std::to_string(u.size() + 2 * N_max));
    RadiusSearch out;
    for (unsigned N = 0; N <= N_max; ++N) {
        out.verdict = is_recognisable(s, n, u, N, table, budget);
        if (out.verdict.status == RecStatus::Recognisable) {
            out.radius = N;
            return out;
        }
    }
    return out;
}

enum class LocalRecStatus { CertifiedUpToTable, RefutedEvidence, Inconclusive };

struct LocalRecognisability {
    LocalRecStatus status = LocalRecStatus::Inconclusive;
    unsigned level = 0;
    unsigned radius = 0;  // certified: the largest radius any word needed
    Word refuted_word;
    RecognisabilityVerdict witness;
    std::vector<std::pair<Word, unsigned>> per_word;
    std::string note;
};

// Certification over every legal 1- and 2-letter word.  Cut positions in any
// legal word are fixed by its 2-letter subwords' induced decompositions and
// the roots by its letters', so this lifts to words of arbitrary length; the
// certificate is still only as strong as the extension table.
inline LocalRecognisability local_recognisability(const RandomSubstitution& s,
                                                  unsigned n, unsigned N_max,
                                                  const LanguageTable& table,
                                                  std::size_t budget = kDefaultBudget) {
    LocalRecognisability out;
    out.level = n;
    if (2 + 2 * static_cast<std::size_t>(N_max) > table.max_length())
        throw TableTooSmall("local certification at radius " +
                            std::to_string(N_max));
    std::vector<Word> centres = table.of_length(1);
    const std::vector<Word>& pairs = table.of_length(2);
    centres.insert(centres.end(), pairs.begin(), pairs.end());
    try {
        for (const Word& w : centres) {
            RadiusSearch r = recognisability_radius(s, n, w, N_max, table, budget);
            if (!r.radius) {
                out.status = LocalRecStatus::RefutedEvidence;
                out.refuted_word = w;
                out.witness = r.verdict;
                return out;
            }
            out.radius = std::max(out.radius, *r.radius);
            out.per_word.emplace_back(w, *r.radius);
        }
    } catch (const BudgetExceeded& e) {
        out.status = LocalRecStatus::Inconclusive;
        out.note = e.what();
        return out;
    }
    out.status = LocalRecStatus::CertifiedUpToTable;
    return out;
}

// Incremental count of level-1 cuttings, over all roots with no legality
// check (a superset of D_theta(w)), saturated at `cap`.  States are (still
// in the first piece?, letter, rule index, offset) plus the between-pieces
// state; boundary pieces are deduplicated by content so the count matches
// the (pieces, root) identity of decompositions.  A count of one therefore
// certifies |D_theta(w)| = 1 (the set is nonempty and contained in this
// one), while larger counts may include phantoms with illegal roots.
class Level1ParseCounter {
public:
    explicit Level1ParseCounter(const RandomSubstitution& s, unsigned cap = 2)
        : sub_(&s), cap_(cap) {
        reset();
    }

    void reset() {
        mid_.clear();
        at_cut_ = 1;
        // The first piece may start mid-element (a proper suffix); identical
        // suffixes within one letter's rule set seed a single state.
        for (int c = 0; c < sub_->dim(); ++c) {
            const auto& rules = sub_->rule(c);
            std::vector<Word> seen;
            for (int r = 0; r < static_cast<int>(rules.size()); ++r)
                for (int off = 1; off < static_cast<int>(rules[r].size()); ++off) {
                    Word suffix = rules[r].substr(off);
                    if (std::find(seen.begin(), seen.end(), suffix) != seen.end())
                        continue;
                    seen.push_back(suffix);
                    mid_[pack(true, c, r, off)] = 1;
                }
        }
    }

    void step(char ch) {
        std::map<int, unsigned> next;
        unsigned next_cut = 0;
        auto saturate = [&](unsigned& slot, unsigned add) {
            slot = std::min(cap_, slot + add);
        };
        for (const auto& [key, cnt] : mid_) {
            auto [first, c, r, off] = unpack(key);
            const Word& rw = sub_->rule(c)[r];
            if (rw[off] != ch) continue;
            if (off + 1 == static_cast<int>(rw.size()))
                saturate(next_cut, cnt);
            else
                saturate(next[pack(first, c, r, off + 1)], cnt);
        }
        if (at_cut_ > 0)
            for (int c = 0; c < sub_->dim(); ++c) {
                const auto& rules = sub_->rule(c);
                for (int r = 0; r < static_cast<int>(rules.size()); ++r) {
                    if (rules[r][0] != ch) continue;
                    if (rules[r].size() == 1)
                        saturate(next_cut, at_cut_);
                    else
                        saturate(next[pack(false, c, r, 1)], at_cut_);
                }
            }
        mid_ = std::move(next);
        at_cut_ = next_cut;
    }

    bool dead() const { return mid_.empty() && at_cut_ == 0; }

    // Accept at a cut (last piece a full element) or mid-piece (a proper
    // prefix).  Mid-piece states describing the same piece content are
    // grouped, not summed: for later pieces the content is the consumed
    // element prefix; states still inside the first piece all describe the
    // single-piece item ([w], c).
    unsigned accept_count() const {
        unsigned total = at_cut_;
        std::map<std::pair<int, Word>, unsigned> groups;
        for (const auto& [key, cnt] : mid_) {
            auto [first, c, r, off] = unpack(key);
            Word piece = first ? Word() : sub_->rule(c)[r].substr(0, off);
            unsigned& slot = groups[{c, piece}];
            slot = std::max(slot, cnt);
        }
        for (const auto& g : groups) total = std::min(cap_, total + g.second);
        return total;
    }

    struct Snapshot {
        std::map<int, unsigned> mid;
        unsigned at_cut;
    };
    Snapshot save() const { return {mid_, at_cut_}; }
    void restore(Snapshot snap) {
        mid_ = std::move(snap.mid);
        at_cut_ = snap.at_cut;
    }

private:
    static int pack(bool first, int c, int r, int off) {
        return ((first ? 1 : 0) << 22) | (c << 14) | (r << 7) | off;
    }
    static std::tuple<bool, int, int, int> unpack(int key) {
        return {(key >> 22) != 0, (key >> 14) & 0xff, (key >> 7) & 0x7f,
                key & 0x7f};
    }

    const RandomSubstitution* sub_;
    unsigned cap_;
    std::map<int, unsigned> mid_;
    unsigned at_cut_ = 0;
};

inline unsigned level1_parse_count(const RandomSubstitution& s, const Word& w,
                                   unsigned cap = 2) {
    Level1ParseCounter counter(s, cap);
    for (char ch : w) {
        counter.step(ch);
        if (counter.dead()) return 0;
    }
    return counter.accept_count();
}

struct FindOptions {
    unsigned radius_bound = 0;
    std::size_t root_length_max = 4;
    unsigned exhaustive_level_max = 3;
    std::size_t frontier_cap = 8;
    std::size_t budget = kDefaultBudget;
};

struct FindResult {
    Word word;
    unsigned radius = 0;
};

namespace detail {

// Counts (pieces, root) cuttings of x whose root never shows an illegal
// factor within the sliding window, stopping at `limit`.  The filter is a
// superset of D_theta(x): roots of true decompositions are legal, so all
// their windows are; a count of one therefore certifies |D_theta(x)| = 1.
// Budget exhaustion reports `limit` so callers under-claim uniqueness.
inline unsigned window_parse_count(const RandomSubstitution& s, const Word& x,
                                   const LanguageTable& table, unsigned limit,
                                   std::size_t* budget) {
    const std::size_t window = std::min<std::size_t>(table.max_length(), 8);
    unsigned found = 0;
    auto extend = [&](const Word& root, int c) {
        Word r = root;
        r += static_cast<char>(c);
        if (r.size() > window) r.erase(0, r.size() - window);
        return r;
    };
    // rec(i, root window): a cut sits before x[i]
    std::function<bool(std::size_t, const Word&)> rec =
        [&](std::size_t i, const Word& root) -> bool {
        if (*budget == 0) {
            found = limit;
            return false;
        }
        --*budget;
        if (i == x.size()) return ++found < limit;
        for (int c = 0; c < s.dim(); ++c) {
            Word r2 = extend(root, c);
            if (!is_legal(r2, table)) continue;
            bool tail = false;
            for (const Word& rw : s.rule(static_cast<unsigned char>(c))) {
                std::size_t rem = x.size() - i;
                if (rw.size() <= rem) {
                    if (x.compare(i, rw.size(), rw) == 0 &&
                        !rec(i + rw.size(), r2))
                        return false;
                } else if (i > 0 && rw.compare(0, rem, x, i, rem) == 0) {
                    tail = true;  // last piece a proper prefix; one item per c
                }
            }
            if (tail && ++found >= limit) return false;
        }
        return true;
    };
    // single-piece items ([x], c)
    for (int c = 0; c < s.dim() && found < limit; ++c) {
        if (!is_legal(extend(Word(), c), table)) continue;
        for (const Word& rw : s.rule(static_cast<unsigned char>(c)))
            if (rw.size() > x.size() && rw.find(x) != Word::npos) {
                ++found;
                break;
            }
    }
    // first piece a proper suffix of a rule word, deduplicated by content
    for (int c = 0; c < s.dim() && found < limit; ++c) {
        Word r1 = extend(Word(), c);
        if (!is_legal(r1, table)) continue;
        std::vector<Word> seen;
        for (const Word& rw : s.rule(static_cast<unsigned char>(c)))
            for (std::size_t off = 1; off < rw.size(); ++off) {
                Word sfx = rw.substr(off);
                if (sfx.size() >= x.size()) continue;
                if (std::find(seen.begin(), seen.end(), sfx) != seen.end())
                    continue;
                seen.push_back(sfx);
                if (x.compare(0, sfx.size(), sfx) != 0) continue;
                if (!rec(sfx.size(), r1)) return found;
            }
    }
    if (found >= limit) return found;
    rec(0, Word());  // first piece a full element
    return found;
}

// All words with a unique level-1 decomposition among the realizations of
// theta(w), in canonical choice order, up to `cap` of them.  The root-free
// parse automaton runs incrementally along the choice DFS, so realization
// prefixes with no live parse prune their whole subtree; completed
// realizations are then screened by the window-filtered count.
inline std::vector<Word> unique_parse_children(const RandomSubstitution& s,
                                               const Word& w, std::size_t cap,
                                               const LanguageTable& table,
                                               std::size_t* budget) {
    std::vector<Word> out;
    Word acc;
    Level1ParseCounter counter(s, 2);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (*budget == 0) return false;
        --*budget;
        if (i == w.size()) {
            if (window_parse_count(s, acc, table, 2, budget) == 1)
                out.push_back(acc);
            return out.size() < cap;
        }
        bool go = true;
        for (const Word& e : s.rule(static_cast<unsigned char>(w[i]))) {
            Level1ParseCounter::Snapshot snap = counter.save();
            for (char ch : e) counter.step(ch);
            if (!counter.dead()) {
                acc += e;
                go = rec(i + 1);
                acc.resize(acc.size() - e.size());
            }
            counter.restore(std::move(snap));
            if (!go) return false;
        }
        return true;
    };
    rec(0);
    canonical_sort(out);
    return out;
}

}  // namespace detail

// Searches for a level-n word with a unique decomposition set of radius <=
// radius_bound.  Exhaustive in root (length, lex) order for small n; for
// larger n, lifts a frontier of proven radius-0 words one level at a time:
// if |D_theta(w')| = 1 for w' in theta(w) and |D_{theta^{n-1}}(w)| = 1, every
// level-n cutting of w' projects to the unique level-1 cutting and then to
// the unique level-(n-1) cutting of w, so |D_{theta^n}(w')| = 1.  The
// level-1 filter admits every cutting whose root windows are legal, a
// superset of D_theta(w'), so a count of one is still conclusive and the
// lift only ever under-claims.
inline std::optional<FindResult> find_recognisable_word(
    const RandomSubstitution& s, unsigned n, const LanguageTable& table,
    const FindOptions& opts = {}) {
    if (n == 0) throw Error("level must be >= 1");
    std::size_t budget = opts.budget;
    auto exhaustive = [&](unsigned level,
                          std::size_t keep) -> std::vector<FindResult> {
        std::vector<FindResult> found;
        RandomSubstitution powered = power(s, level, budget);
        for (std::size_t len = 1; len <= opts.root_length_max; ++len) {
            for (const Word& v : table.of_length(len)) {
                for (const Word& u : apply(powered, v, budget)) {
                    if (u.size() + 2 * opts.radius_bound > table.max_length())
                        continue;
                    if (budget < u.size()) return found;
                    budget -= u.size();
                    RadiusSearch r = recognisability_radius(
                        s, level, u, opts.radius_bound, table, budget);
                    if (!r.radius) continue;
                    bool dup = false;
                    for (const FindResult& f : found)
                        if (f.word == u) dup = true;
                    if (dup) continue;
                    found.push_back({u, *r.radius});
                    if (found.size() >= keep) return found;
                }
            }
        }
        return found;
    };

    if (n <= opts.exhaustive_level_max) {
        std::vector<FindResult> hits = exhaustive(n, 1);
        if (hits.empty()) return std::nullopt;
        return hits.front();
    }

    // Ladder: radius 0 only.
    std::vector<FindResult> seeds = exhaustive(1, opts.frontier_cap);
    std::vector<Word> frontier;
    for (const FindResult& f : seeds)
        if (f.radius == 0) frontier.push_back(f.word);
    if (frontier.empty()) return std::nullopt;
    for (unsigned level = 2; level <= n; ++level) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            std::vector<Word> kids = detail::unique_parse_children(
                s, w, opts.frontier_cap - next.size(), table, &budget);
            next.insert(next.end(), kids.begin(), kids.end());
            if (next.size() >= opts.frontier_cap || budget == 0) break;
        }
        canonical_sort(next);
        frontier = std::move(next);
        if (frontier.empty()) return std::nullopt;
    }
    return FindResult{frontier.front(), 0};
}

// The deterministic map that rebuilds the recognisable Fibonacci words:
// each b becomes a; an a after b becomes ab; an a after a takes the
// opposite image of that previous a; a leading a becomes ab when another a
// follows and ba when b follows.  F_n is the n-th iterate of aa.
inline Word fib_recognisable_word(unsigned n) {
    const char A = 0, B = 1;
    Word w(2, A);
    for (unsigned step = 0; step < n; ++step) {
        Word out;
        bool prev_was_ba = false;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] == B) {
                out += A;
                continue;
            }
            bool use_ab;
            if (i == 0)
                use_ab = w.size() > 1 && w[1] == A;
            else if (w[i - 1] == B)
                use_ab = true;
            else
                use_ab = prev_was_ba;
            if (use_ab) {
                out += A;
                out += B;
            } else {
                out += B;
                out += A;
            }
            prev_was_ba = !use_ab;
        }
        w = std::move(out);
    }
    return w;
}

}  // namespace randsub
