// Acceptance harness: twelve independent checks, one pass/fail line each.
// Exits 0 only if every check passes.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "randsub/analysis.hpp"
#include "randsub/core.hpp"
#include "randsub/decompose.hpp"
#include "randsub/language.hpp"
#include "randsub/quad.hpp"
#include "randsub/spectral.hpp"
#include "randsub/tiling.hpp"

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

RandomSubstitution ex51() {
    Alphabet ab({"a", "b"});
    return {ab,
            {{ab.parse("abababa"), ab.parse("bbbaaaa")},
             {ab.parse("babb"), ab.parse("bbab")}}};
}

RandomSubstitution ex52() {
    Alphabet ab({"a", "b"});
    return {ab, {{ab.parse("bb")}, {ab.parse("abaaba"), ab.parse("ababaa")}}};
}

std::string key(const DecompositionItem& d, const Alphabet& ab) {
    std::string s = "[";
    for (std::size_t i = 0; i < d.pieces.size(); ++i)
        s += (i ? "|" : "") + ab.format(d.pieces[i]);
    return s + "]," + ab.format(d.root);
}

std::set<std::string> keys(const std::vector<DecompositionItem>& items,
                           const Alphabet& ab) {
    std::set<std::string> out;
    for (const auto& d : items) out.insert(key(d, ab));
    return out;
}

// Composition-enumeration oracle: every way of cutting u into pieces, with
// boundary pieces matched against realization suffix/prefix pools and inner
// pieces against whole realizations.
struct BruteDecomposer {
    const RandomSubstitution& s;
    const LanguageTable& table;
    unsigned n;
    std::vector<std::set<Word>> full, suffixes, prefixes;

    BruteDecomposer(const RandomSubstitution& sub, unsigned level,
                    const LanguageTable& t)
        : s(sub), table(t), n(level) {
        RandomSubstitution sn = power(s, n, 16'000'000);
        int d = s.dim();
        full.resize(d);
        suffixes.resize(d);
        prefixes.resize(d);
        for (int c = 0; c < d; ++c)
            for (const Word& w : sn.rule(c)) {
                full[c].insert(w);
                for (std::size_t k = 1; k <= w.size(); ++k) {
                    suffixes[c].insert(w.substr(w.size() - k));
                    prefixes[c].insert(w.substr(0, k));
                }
            }
    }

    std::set<std::string> run(const Word& u) const {
        int d = s.dim();
        std::set<DecompositionItem> out;
        std::size_t m = u.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << (m - 1)); ++mask) {
            std::vector<Word> pieces;
            std::size_t start = 0;
            for (std::size_t i = 0; i + 1 < m; ++i)
                if (mask & (std::size_t(1) << i)) {
                    pieces.push_back(u.substr(start, i + 1 - start));
                    start = i + 1;
                }
            pieces.push_back(u.substr(start));
            std::size_t l = pieces.size();
            if (l == 1) continue;
            std::vector<std::vector<char>> choices(l);
            bool dead = false;
            for (std::size_t i = 0; i < l && !dead; ++i) {
                for (int c = 0; c < d; ++c) {
                    bool ok;
                    if (i == 0)
                        ok = suffixes[c].count(pieces[i]) > 0;
                    else if (i + 1 == l)
                        ok = prefixes[c].count(pieces[i]) > 0;
                    else
                        ok = full[c].count(pieces[i]) > 0;
                    if (ok) choices[i].push_back(static_cast<char>(c));
                }
                if (choices[i].empty()) dead = true;
            }
            if (dead) continue;
            std::vector<std::size_t> pick(l, 0);
            while (true) {
                Word root;
                for (std::size_t i = 0; i < l; ++i) root += choices[i][pick[i]];
                if (is_legal(root, table)) {
                    DecompositionItem it;
                    it.pieces = pieces;
                    it.root = root;
                    it.level = n;
                    out.insert(it);
                }
                std::size_t i = 0;
                while (i < l && ++pick[i] == choices[i].size()) pick[i++] = 0;
                if (i == l) break;
            }
        }
        for (int c = 0; c < d; ++c) {
            bool found = false;
            for (const Word& w : full[c])
                if (w.find(u) != Word::npos) found = true;
            if (found && is_legal(Word(1, static_cast<char>(c)), table)) {
                DecompositionItem it;
                it.pieces = {u};
                it.root = Word(1, static_cast<char>(c));
                it.level = n;
                out.insert(it);
            }
        }
        return keys({out.begin(), out.end()}, s.alphabet());
    }
};

int failures = 0;

void report(int idx, const std::string& label, bool ok,
            const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx,
                label.c_str(), detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(int idx, const std::string& label, bool (*fn)(std::string&)) {
    bool ok = false;
    std::string detail;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(idx, label, ok, detail);
}

int run_cli(const std::string& cmd) {
    int ret = std::system(cmd.c_str());
    if (ret == -1) return -1;
    if (WIFEXITED(ret)) return WEXITSTATUS(ret);
    return -1;
}

std::string g_cli_path, g_fixtures_dir;
std::optional<LanguageTable> g_fib_table, g_pd_table;

const LanguageTable& fib_table() {
    if (!g_fib_table) g_fib_table = LanguageTable::build(fib(), 26, 16'000'000);
    return *g_fib_table;
}

const LanguageTable& pd_table() {
    if (!g_pd_table) g_pd_table = LanguageTable::build(pd(), 20, 16'000'000);
    return *g_pd_table;
}

bool c1_aab(std::string&) {
    RandomSubstitution s = fib();
    auto got = keys(decompositions(s, 1, s.alphabet().parse("aab"), fib_table()),
                    s.alphabet());
    return got == std::set<std::string>{"[a|ab],ba", "[a|ab],aa", "[a|a|b],bba",
                                        "[a|a|b],aba"};
}

bool c2_bb_bab(std::string&) {
    RandomSubstitution f = fib();
    auto got = keys(decompositions(f, 2, f.alphabet().parse("bb"), fib_table()),
                    f.alphabet());
    bool ok = got == std::set<std::string>{"[b|b],aa", "[b|b],ab", "[b|b],ba",
                                           "[b|b],bb"};
    RandomSubstitution p = pd();
    auto got_p = keys(decompositions(p, 1, p.alphabet().parse("bab"), pd_table()),
                      p.alphabet());
    return ok && got_p == std::set<std::string>{"[ba|b],aa", "[b|ab],aa"};
}

bool c3_induced(std::string&) {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    auto items = decompositions(s, 1, ab.parse("ababa"), fib_table());
    bool ok = keys(items, ab) ==
              std::set<std::string>{"[a|ba|ba],baa", "[a|ba|ba],aaa",
                                    "[ab|ab|a],aab", "[ab|ab|a],aaa",
                                    "[ab|a|ba],aba"};
    std::set<std::string> window;
    for (const auto& d : items) window.insert(key(induced(s, d, 2, 4), ab));
    ok = ok && window == std::set<std::string>{"[ba|b],aa", "[b|ab],aa",
                                               "[b|a|b],aba"};
    auto unique_item = decompositions(s, 1, ab.parse("bbaba"), fib_table());
    ok = ok && unique_item.size() == 1 &&
         key(unique_item[0], ab) == "[b|ba|ba],aaa" &&
         key(induced(s, unique_item[0], 2, 4), ab) == "[ba|b],aa";
    return ok;
}

bool c4_legal(std::string&) {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    const LanguageTable& t = fib_table();
    return is_legal(ab.parse("aa"), t) && is_legal(ab.parse("bb"), t) &&
           !is_legal(ab.parse("bbb"), t) && !is_legal(ab.parse("aaaaa"), t);
}

bool c5_ladder(std::string& detail) {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    const LanguageTable& t = fib_table();
    struct Row {
        std::string word, left, right;
    };
    const std::vector<Row> rows = {
        {"abba", "ab", "ba"},
        {"baaaab", "baa", "aab"},
        {"aabbaabbaa", "aabba", "abbaa"},
        {"abbaaaabbaaaabba", "abbaaaab", "baaaabba"},
        {"baaaabbaabbaaaabbaabbaaaab", "baaaabbaabbaa", "aabbaabbaaaab"}};
    for (unsigned n = 1; n <= rows.size(); ++n) {
        const Row& r = rows[n - 1];
        if (ab.format(fib_recognisable_word(n)) != r.word) {
            detail = "construction differs at level " + std::to_string(n);
            return false;
        }
        auto items = decompositions(s, n, ab.parse(r.word), t);
        if (items.size() != 1 ||
            key(items[0], ab) != "[" + r.left + "|" + r.right + "],aa") {
            detail = "decomposition differs at level " + std::to_string(n);
            return false;
        }
        if (n <= 4) {
            auto v = is_recognisable(s, n, ab.parse(r.word), 0, t);
            if (v.status != RecStatus::Recognisable) {
                detail = "not recognisable at level " + std::to_string(n);
                return false;
            }
        }
    }
    return true;
}

bool c6_spectra(std::string&) {
    SpectralData f = spectral_data(substitution_matrix(fib()));
    bool ok = f.lambda1 == QuadNumber(BigRat(1, 2), BigRat(1, 2), 5) &&
              f.lambda2 == QuadNumber(BigRat(1, 2), BigRat(-1, 2), 5) &&
              f.abs_lambda2 < QuadNumber(1);
    SpectralData e1 = spectral_data(substitution_matrix(ex51()));
    ok = ok && e1.lambda1 == QuadNumber(BigRat(7, 2), BigRat(1, 2), 13) &&
         e1.lambda2 == QuadNumber(BigRat(7, 2), BigRat(-1, 2), 13) &&
         QuadNumber(1) < e1.lambda2;
    SpectralData e2 = spectral_data(substitution_matrix(ex52()));
    return ok && e2.lambda1 == QuadNumber(4) && e2.lambda2 == QuadNumber(-2);
}

bool c7_gcds(std::string&) {
    GcdReport g51 = gcd_report(ex51(), 10);
    bool ok = g51.all_one;
    for (const BigInt& g : g51.gcds) ok = ok && g == 1;
    ok = ok && gcd_report(ex52(), 1).gcds.at(0) == 2;
    ok = ok && gcd_report(pd(), 1).gcds.at(0) == 2;
    for (const RandomSubstitution& s : {fib(), pd(), ex51(), ex52()}) {
        IntMatrix m = substitution_matrix(s);
        bool brute_all_one = true;
        IntMatrix p = IntMatrix::identity(s.dim());
        for (unsigned n = 1; n <= 20; ++n) {
            p = p * m;
            BigInt g = 0;
            for (const BigInt& c : p.column_sums())
                g = boost::multiprecision::gcd(g, c);
            if (g != 1) brute_all_one = false;
        }
        ok = ok && gcd_report(s, static_cast<unsigned>(s.dim())).all_one ==
                       brute_all_one;
    }
    return ok;
}

bool c8_cli(std::string& detail) {
    if (g_cli_path.empty() || g_fixtures_dir.empty()) {
        detail = "--cli-path / --fixtures-dir not given";
        return false;
    }
    auto mix = [&](const std::string& fixture, const std::string& extra = "") {
        return run_cli(g_cli_path + " mix --spec " + g_fixtures_dir + "/" +
                       fixture + extra + " >/dev/null 2>&1");
    };
    auto tiling = [&](const std::string& fixture) {
        return run_cli(g_cli_path + " tiling --spec " + g_fixtures_dir + "/" +
                       fixture + " --lengths natural >/dev/null 2>&1");
    };
    struct Want {
        std::string what;
        int got, want;
    };
    std::vector<Want> checks = {{"mix ex51", mix("ex51.json", " --proof-strength"), 0},
                                {"mix ex52", mix("ex52.json"), 1},
                                {"mix pd", mix("pd.json"), 1},
                                {"tiling fib", tiling("fib.json"), 1},
                                {"tiling ex51", tiling("ex51.json"), 0}};
    bool ok = true;
    for (const Want& w : checks)
        if (w.got != w.want) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + w.what + " exited " +
                      std::to_string(w.got) + " not " + std::to_string(w.want);
        }
    return ok;
}

bool c9_oracle(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    std::size_t words = 0;
    for (const RandomSubstitution& s : {fib(), pd()}) {
        const Alphabet& ab = s.alphabet();
        const LanguageTable& t =
            s.rule(1)[0].size() == 1 ? fib_table() : pd_table();
        for (unsigned n = 1; n <= 3; ++n) {
            BruteDecomposer brute(s, n, t);
            for (std::size_t len = 1; len <= 8; ++len)
                for (const Word& u : t.of_length(len)) {
                    ++words;
                    if (keys(decompositions(s, n, u, t), ab) != brute.run(u)) {
                        detail = "mismatch at " + ab.format(u) + " level " +
                                 std::to_string(n);
                        return false;
                    }
                }
        }
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    detail = std::to_string(words) + " words in " + std::to_string(secs) + "s";
    return secs < 10.0;
}

bool c10_balance(std::string&) {
    BalanceReport br = balance_report(fib(), fib_table(), 12);
    return br.theoretical && br.discrepancy <= br.B && br.pair_count_max <= br.C;
}

bool c11_periodicity(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    Alphabet ab({"a", "b"});
    std::vector<Word> pool;
    for (std::size_t len = 1; len <= 4; ++len)
        for (std::size_t bits = 0; bits < (std::size_t(1) << len); ++bits) {
            Word w;
            for (std::size_t i = 0; i < len; ++i)
                w += static_cast<char>((bits >> i) & 1);
            pool.push_back(w);
        }
    std::size_t tested = 0;
    for (const Word& wa : pool)
        for (const Word& wb : pool) {
            RandomSubstitution s(ab, {{wa}, {wb}});
            if (!is_primitive(s)) continue;
            ++tested;
            PeriodicityVerdict v = classify_periodicity(s);
            LanguageTable t = LanguageTable::build(s, 12);
            bool low_complexity = false;
            for (std::size_t n = 1; n <= 12; ++n)
                if (complexity(t, n) <= n) low_complexity = true;
            if (v.periodic != low_complexity) {
                detail = "disagreement at a=" + ab.format(wa) + " b=" +
                         ab.format(wb);
                return false;
            }
        }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    detail = std::to_string(tested) + " primitive rules in " +
             std::to_string(secs) + "s";
    return secs < 30.0;
}

bool c12_obstruction_density(std::string& detail) {
    RandomSubstitution s = ex52();
    LanguageTable t = LanguageTable::build(s, 48, 16'000'000);
    Word b6 = s.alphabet().parse("bbbbbb");
    LengthSpectrum sp = return_length_spectrum(s, b6, b6, 48, t);
    CongruenceReport cr = congruence_obstruction(sp);
    bool ok = cr.modulus.has_value() && *cr.modulus % 2 == 0;
    if (!ok) detail = "no even modulus over b^6";
    DensityReport dp = inflation_length_density(pd(), 1, 40, pd_table());
    if (!(dp.density <= 0.5 + 1.0 / 40.0)) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("density ") +
                  std::to_string(dp.density);
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        std::string a = argv[i];
        if (a == "--cli-path") g_cli_path = argv[i + 1];
        if (a == "--fixtures-dir") g_fixtures_dir = argv[i + 1];
    }
    run(1, "level-1 decompositions of aab", c1_aab);
    run(2, "level-2 roots of bb and the bab cuttings", c2_bb_bab);
    run(3, "induced decompositions over the inner window", c3_induced);
    run(4, "legality of short words", c4_legal);
    run(5, "recognisable word ladder", c5_ladder);
    run(6, "exact eigenvalue pins", c6_spectra);
    run(7, "inflation length gcds and stabilization", c7_gcds);
    run(8, "mixing verdicts through the command line", c8_cli);
    run(9, "decomposition enumerator matches brute force", c9_oracle);
    run(10, "balance bounds over the scan", c10_balance);
    run(11, "periodicity classifier agrees with complexity", c11_periodicity);
    run(12, "congruence obstruction and length density", c12_obstruction_density);
    std::printf("%d of 12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
