#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "randsub/core.hpp"
#include "randsub/decompose.hpp"
#include "randsub/language.hpp"

using namespace randsub;

namespace {

RandomSubstitution fib() {
    Alphabet ab({"a", "b"});
    return {ab, {{ab.parse("ab"), ab.parse("ba")}, {ab.parse("a")}}};
}

RandomSubstitution pd() {
    Alphabet ab({"a", "b"});
    return {ab, {{ab.parse("ab"), ab.parse("ba")}, {ab.parse("aa")}}};
}

DecompositionItem item(const Alphabet& ab, unsigned level,
                       const std::vector<std::string>& pieces,
                       const std::string& root) {
    DecompositionItem d;
    for (const auto& p : pieces) d.pieces.push_back(ab.parse(p));
    d.root = ab.parse(root);
    d.level = level;
    return d;
}

std::vector<std::string> fmt(const std::vector<DecompositionItem>& items,
                             const Alphabet& ab) {
    std::vector<std::string> out;
    for (const auto& d : items) {
        std::string s = "[";
        for (std::size_t i = 0; i < d.pieces.size(); ++i)
            s += (i ? "|" : "") + ab.format(d.pieces[i]);
        s += "]," + ab.format(d.root);
        out.push_back(s);
    }
    return out;
}

// Split-based oracle, independent of the production enumerator: walk every
// composition of u into pieces, check boundary pieces against realization
// suffix/prefix sets and interior pieces against full realization sets, and
// keep legal roots.
std::vector<DecompositionItem> brute_decompositions(const RandomSubstitution& s,
                                                    unsigned n, const Word& u,
                                                    const LanguageTable& table) {
    RandomSubstitution sn = power(s, n, 4'000'000);
    int d = s.dim();
    std::vector<std::set<Word>> full(d), suffixes(d), prefixes(d);
    for (int c = 0; c < d; ++c) {
        for (const Word& w : sn.rule(c)) {
            full[c].insert(w);
            for (std::size_t k = 1; k <= w.size(); ++k) {
                suffixes[c].insert(w.substr(w.size() - k));
                prefixes[c].insert(w.substr(0, k));
            }
        }
    }
    std::set<DecompositionItem> out;
    std::size_t m = u.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << (m - 1)); ++mask) {
        std::vector<Word> pieces;
        std::size_t start = 0;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (mask & (std::size_t(1) << i)) {
                pieces.push_back(u.substr(start, i + 1 - start));
                start = i + 1;
            }
        }
        pieces.push_back(u.substr(start));
        std::size_t l = pieces.size();
        std::vector<std::vector<char>> letter_choices(l);
        bool dead = false;
        for (std::size_t i = 0; i < l && !dead; ++i) {
            for (int c = 0; c < d; ++c) {
                bool ok;
                if (l == 1)
                    ok = false;  // single pieces handled separately below
                else if (i == 0)
                    ok = suffixes[c].count(pieces[i]) > 0;
                else if (i + 1 == l)
                    ok = prefixes[c].count(pieces[i]) > 0;
                else
                    ok = full[c].count(pieces[i]) > 0;
                if (ok) letter_choices[i].push_back(static_cast<char>(c));
            }
            if (letter_choices[i].empty()) dead = true;
        }
        if (dead || l == 1) continue;
        std::vector<std::size_t> pick(l, 0);
        while (true) {
            Word root;
            for (std::size_t i = 0; i < l; ++i) root += letter_choices[i][pick[i]];
            if (is_legal(root, table)) {
                DecompositionItem it;
                it.pieces = pieces;
                it.root = root;
                it.level = n;
                out.insert(it);
            }
            std::size_t i = 0;
            while (i < l && ++pick[i] == letter_choices[i].size()) pick[i++] = 0;
            if (i == l) break;
        }
    }
    // single-piece items: u inside one realization, one item per letter
    for (int c = 0; c < d; ++c) {
        bool found = false;
        for (const Word& w : sn.rule(c))
            if (w.find(u) != Word::npos) found = true;
        if (found && is_legal(Word(1, static_cast<char>(c)), table)) {
            DecompositionItem it;
            it.pieces = {u};
            it.root = Word(1, static_cast<char>(c));
            it.level = n;
            out.insert(it);
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("level-1 decompositions of aab") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 3);
    auto got = decompositions(s, 1, ab.parse("aab"), t);
    std::vector<DecompositionItem> want = {
        item(ab, 1, {"a", "ab"}, "ba"), item(ab, 1, {"a", "ab"}, "aa"),
        item(ab, 1, {"a", "a", "b"}, "bba"), item(ab, 1, {"a", "a", "b"}, "aba")};
    std::sort(want.begin(), want.end());
    REQUIRE(fmt(got, ab) == fmt(want, ab));
}

TEST_CASE("level-2 decompositions of bb have four roots") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 2);
    auto got = decompositions(s, 2, ab.parse("bb"), t);
    std::vector<DecompositionItem> want = {
        item(ab, 2, {"b", "b"}, "aa"), item(ab, 2, {"b", "b"}, "ab"),
        item(ab, 2, {"b", "b"}, "ba"), item(ab, 2, {"b", "b"}, "bb")};
    std::sort(want.begin(), want.end());
    REQUIRE(fmt(got, ab) == fmt(want, ab));
}

TEST_CASE("period doubling bab has a unique root but two cuttings") {
    RandomSubstitution s = pd();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 3);
    auto got = decompositions(s, 1, ab.parse("bab"), t);
    std::vector<DecompositionItem> want = {item(ab, 1, {"ba", "b"}, "aa"),
                                           item(ab, 1, {"b", "ab"}, "aa")};
    std::sort(want.begin(), want.end());
    REQUIRE(fmt(got, ab) == fmt(want, ab));
}

TEST_CASE("ababa and its induced decompositions") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 5);
    auto got = decompositions(s, 1, ab.parse("ababa"), t);
    std::vector<DecompositionItem> want = {
        item(ab, 1, {"a", "ba", "ba"}, "baa"),
        item(ab, 1, {"a", "ba", "ba"}, "aaa"),
        item(ab, 1, {"ab", "ab", "a"}, "aab"),
        item(ab, 1, {"ab", "ab", "a"}, "aaa"),
        item(ab, 1, {"ab", "a", "ba"}, "aba")};
    std::sort(want.begin(), want.end());
    REQUIRE(fmt(got, ab) == fmt(want, ab));

    std::set<std::string> induced_set;
    for (const auto& d : got)
        induced_set.insert(fmt({induced(s, d, 2, 4)}, ab).front());
    REQUIRE(induced_set.size() == 3);
    REQUIRE(induced_set.count("[ba|b],aa") == 1);
    REQUIRE(induced_set.count("[b|ab],aa") == 1);
    REQUIRE(induced_set.count("[b|a|b],aba") == 1);

    auto unique_bbaba = decompositions(s, 1, ab.parse("bbaba"), t);
    REQUIRE(unique_bbaba.size() == 1);
    REQUIRE(unique_bbaba[0] == item(ab, 1, {"b", "ba", "ba"}, "aaa"));
    REQUIRE(induced(s, unique_bbaba[0], 2, 4) == item(ab, 1, {"ba", "b"}, "aa"));
}

TEST_CASE("induced rejects out-of-range windows") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 5);
    auto d = decompositions(s, 1, ab.parse("ababa"), t).front();
    REQUIRE_THROWS_AS(induced(s, d, 0, 3), IndexOutOfRange);
    REQUIRE_THROWS_AS(induced(s, d, 3, 2), IndexOutOfRange);
    REQUIRE_THROWS_AS(induced(s, d, 1, 6), IndexOutOfRange);
}

TEST_CASE("illegal words cannot be decomposed") {
    RandomSubstitution s = fib();
    LanguageTable t = LanguageTable::build(s, 3);
    REQUIRE_THROWS_AS(decompositions(s, 1, s.alphabet().parse("bbb"), t),
                      NotLegal);
}

TEST_CASE("exactness flags mark full inflation words") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 4);
    auto abba = decompositions(s, 1, ab.parse("abba"), t);
    REQUIRE(abba.size() == 1);
    REQUIRE(abba[0] == item(ab, 1, {"ab", "ba"}, "aa"));
    REQUIRE_FALSE(abba[0].first_proper);
    REQUIRE_FALSE(abba[0].last_proper);

    auto bb = decompositions(s, 1, ab.parse("bb"), t);
    REQUIRE_FALSE(bb.empty());
    for (const auto& d : bb) REQUIRE((d.first_proper || d.last_proper));
}

TEST_CASE("exact preimages") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 4);
    auto pre = exact_preimages(s, 1, ab.parse("abba"), t);
    REQUIRE(pre == std::vector<Word>{ab.parse("aa")});
    REQUIRE(exact_preimages(s, 1, ab.parse("bb"), t).empty());
}

TEST_CASE("enumerator agrees with the split-based oracle") {
    for (const RandomSubstitution& s : {fib(), pd()}) {
        const Alphabet& ab = s.alphabet();
        LanguageTable t = LanguageTable::build(s, 6);
        for (unsigned n = 1; n <= 2; ++n) {
            for (std::size_t len = 1; len <= 6; ++len) {
                for (const Word& u : t.of_length(len)) {
                    auto got = decompositions(s, n, u, t);
                    auto want = brute_decompositions(s, n, u, t);
                    INFO(ab.format(u) << " at level " << n);
                    REQUIRE(fmt(got, ab) == fmt(want, ab));
                }
            }
        }
    }
}

TEST_CASE("abba is recognisable at radius 0") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 8);
    auto v = is_recognisable(s, 1, ab.parse("abba"), 0, t);
    REQUIRE(v.status == RecStatus::Recognisable);
    REQUIRE(v.induced_item == item(ab, 1, {"ab", "ba"}, "aa"));

    auto rs = recognisability_radius(s, 1, ab.parse("abba"), 2, t);
    REQUIRE(rs.radius);
    REQUIRE(*rs.radius == 0);
}

TEST_CASE("a single letter is ambiguous at radius 0") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 8);
    auto v = is_recognisable(s, 1, ab.parse("a"), 0, t);
    REQUIRE(v.status == RecStatus::Ambiguous);
}

TEST_CASE("radius search needs a large enough table") {
    RandomSubstitution s = fib();
    LanguageTable t = LanguageTable::build(s, 4);
    REQUIRE_THROWS_AS(
        recognisability_radius(s, 1, s.alphabet().parse("abba"), 3, t),
        TableTooSmall);
}

TEST_CASE("period doubling is not locally recognisable") {
    RandomSubstitution s = pd();
    LanguageTable t = LanguageTable::build(s, 14);
    LocalRecognisability lr = local_recognisability(s, 1, 5, t);
    REQUIRE(lr.status == LocalRecStatus::RefutedEvidence);
}

TEST_CASE("level-1 parse counts with phantom roots") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    REQUIRE(level1_parse_count(s, ab.parse("abba"), 4) == 1);
    REQUIRE(level1_parse_count(s, ab.parse("aab"), 8) == 4);
    REQUIRE(level1_parse_count(s, ab.parse("aab"), 2) == 2);  // saturates at cap
}

TEST_CASE("finding recognisable words: exhaustive and ladder agree") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 12);

    auto direct = find_recognisable_word(s, 3, t);
    REQUIRE(direct);
    REQUIRE(direct->radius == 0);
    REQUIRE(ab.format(direct->word) == "aabababbaa");

    FindOptions ladder;
    ladder.exhaustive_level_max = 1;
    auto lifted = find_recognisable_word(s, 3, t, ladder);
    REQUIRE(lifted);
    REQUIRE(ab.format(lifted->word) == "aabababbaa");
}

TEST_CASE("the Fibonacci ladder words") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    const std::vector<std::string> rows = {
        "abba", "baaaab", "aabbaabbaa", "abbaaaabbaaaabba",
        "baaaabbaabbaaaabbaabbaaaab"};
    for (unsigned n = 1; n <= rows.size(); ++n)
        REQUIRE(ab.format(fib_recognisable_word(n)) == rows[n - 1]);

    // each table word is a realization of its predecessor
    for (unsigned n = 1; n <= 5; ++n) {
        Word prev = fib_recognisable_word(n - 1);
        Word cur = fib_recognisable_word(n);
        auto images = apply(s, prev, 4'000'000);
        REQUIRE(std::find(images.begin(), images.end(), cur) != images.end());
    }
    REQUIRE(ab.format(fib_recognisable_word(0)) == "aa");
}
