#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "randsub/analysis.hpp"
#include "randsub/core.hpp"
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

bool has_certified(const AnalysisVerdict& v) {
    return std::any_of(v.checklist.begin(), v.checklist.end(),
                       [](const ChecklistItem& c) {
                           return c.state == "certified-up-to-table";
                       });
}

void check_spectrum_shape(const RandomSubstitution& s, const LengthSpectrum& sp,
                          const LanguageTable& table) {
    REQUIRE(sp.values.size() == sp.witnesses.size());
    for (std::size_t i = 0; i < sp.values.size(); ++i) {
        const Word& w = sp.witnesses[i];
        REQUIRE(is_legal(w, table));
        REQUIRE(w.compare(0, sp.u.size(), sp.u) == 0);
        REQUIRE(w.compare(w.size() - sp.v.size(), sp.v.size(), sp.v) == 0);
        REQUIRE(w.size() - sp.v.size() == sp.values[i]);
        REQUIRE(w.size() <= sp.max_length);
    }
    REQUIRE(std::is_sorted(sp.values.begin(), sp.values.end()));
    REQUIRE(std::adjacent_find(sp.values.begin(), sp.values.end()) ==
            sp.values.end());
    if (sp.values.size() >= 2) {
        std::size_t lo = SIZE_MAX, hi = 0;
        for (std::size_t i = 1; i < sp.values.size(); ++i) {
            std::size_t gap = sp.values[i] - sp.values[i - 1];
            lo = std::min(lo, gap);
            hi = std::max(hi, gap);
        }
        REQUIRE(sp.min_gap == lo);
        REQUIRE(sp.max_gap == hi);
    } else {
        REQUIRE(sp.min_gap == 0);
        REQUIRE(sp.max_gap == 0);
    }
    (void)s;
}

}  // namespace

TEST_CASE("return length spectra are sorted legal witnesses") {
    for (const RandomSubstitution& s : {fib(), pd()}) {
        const Alphabet& ab = s.alphabet();
        LanguageTable t = LanguageTable::build(s, 14);
        for (const std::string& su : {"a", "b", "aa", "ab"}) {
            Word u = ab.parse(su);
            LengthSpectrum sp = return_length_spectrum(s, u, u, 14, t);
            check_spectrum_shape(s, sp, t);
        }
    }
}

TEST_CASE("period doubling return lengths of bb are all even") {
    RandomSubstitution s = pd();
    LanguageTable t = LanguageTable::build(s, 16);
    Word bb = s.alphabet().parse("bb");
    LengthSpectrum sp = return_length_spectrum(s, bb, bb, 16, t);
    check_spectrum_shape(s, sp, t);
    REQUIRE(sp.values.size() >= 2);
    for (std::size_t v : sp.values) REQUIRE(v % 2 == 0);
    CongruenceReport cr = congruence_obstruction(sp);
    REQUIRE(cr.modulus);
    REQUIRE(*cr.modulus % 2 == 0);
}

TEST_CASE("return lengths of b^6 carry an even congruence obstruction") {
    RandomSubstitution s = ex52();
    LanguageTable t = LanguageTable::build(s, 48, 16'000'000);
    Word b6 = s.alphabet().parse("bbbbbb");
    LengthSpectrum sp = return_length_spectrum(s, b6, b6, 48, t);
    check_spectrum_shape(s, sp, t);
    REQUIRE(sp.values.size() >= 2);
    CongruenceReport cr = congruence_obstruction(sp);
    REQUIRE(cr.modulus);
    REQUIRE(*cr.modulus % 2 == 0);
}

TEST_CASE("empty and singleton spectra") {
    RandomSubstitution s = fib();
    const Alphabet& ab = s.alphabet();
    LanguageTable t = LanguageTable::build(s, 6);
    LengthSpectrum none = return_length_spectrum(s, ab.parse("bb"),
                                                 ab.parse("bb"), 4, t);
    REQUIRE(none.values.empty());
    REQUIRE_THROWS_AS(congruence_obstruction(none), EmptySpectrum);

    LengthSpectrum one = return_length_spectrum(s, ab.parse("aa"),
                                                ab.parse("aa"), 4, t);
    REQUIRE(one.values == std::vector<std::size_t>{2});
    CongruenceReport cr = congruence_obstruction(one);
    REQUIRE(cr.insufficient);
    REQUIRE_FALSE(cr.modulus);
}

TEST_CASE("Fibonacci balance constants are exact") {
    RandomSubstitution s = fib();
    LanguageTable t = LanguageTable::build(s, 12);
    BalanceReport br = balance_report(s, t);
    REQUIRE(br.theoretical);
    QuadNumber inv_phi(BigRat(-1, 2), BigRat(1, 2), 5);
    REQUIRE(br.D == inv_phi);
    REQUIRE(br.B == QuadNumber(1, 1, 5));
    REQUIRE(br.c1 == inv_phi);
    REQUIRE(br.c2 == QuadNumber(-1, 1, 5));
    REQUIRE(br.C == 7);
    REQUIRE(br.threshold_N == 6);
    REQUIRE_FALSE(br.jordan_flag);
    REQUIRE(br.scan_length == 12);
    REQUIRE(br.discrepancy <= br.B);
    REQUIRE(br.pair_count_max <= br.C);
}

TEST_CASE("balance gates report why constants are unavailable") {
    LanguageTable tp = LanguageTable::build(pd(), 10);
    BalanceReport bp = balance_report(pd(), tp);
    REQUIRE_FALSE(bp.theoretical);
    REQUIRE(bp.gate_reason == "characteristic polynomial is reducible");

    LanguageTable t2 = LanguageTable::build(ex52(), 10);
    BalanceReport b2 = balance_report(ex52(), t2);
    REQUIRE_FALSE(b2.theoretical);
    REQUIRE(b2.gate_reason == "characteristic polynomial is reducible");

    LanguageTable t1 = LanguageTable::build(ex51(), 10);
    BalanceReport b1 = balance_report(ex51(), t1);
    REQUIRE_FALSE(b1.theoretical);
    REQUIRE(b1.gate_reason ==
            "|lambda2| >= 1, no geometric decay of discrepancies");
}

TEST_CASE("inflation length densities") {
    RandomSubstitution p = pd();
    LanguageTable tp = LanguageTable::build(p, 20);
    DensityReport dp = inflation_length_density(p, 1, 40, tp);
    REQUIRE(dp.density == 0.5);
    REQUIRE_FALSE(dp.bound);
    REQUIRE_FALSE(dp.note.empty());
    for (std::size_t len : dp.lengths) REQUIRE(len % 2 == 0);

    RandomSubstitution f = fib();
    LanguageTable tf = LanguageTable::build(f, 12);
    DensityReport d1 = inflation_length_density(f, 1, 12, tf);
    REQUIRE(d1.density == 1.0);
    REQUIRE(d1.bound);

    DensityReport d6 = inflation_length_density(f, 6, 40, tf);
    REQUIRE(d6.bound);
    REQUIRE(d6.density <= *d6.bound);
    REQUIRE(d6.lengths == std::vector<std::size_t>{13, 21, 26, 34});
}

TEST_CASE("Fibonacci: recognisable ladder word defeats mixing") {
    AnalysisVerdict v = mixing_verdict(fib());
    REQUIRE(v.status == MixingStatus::NotMixing);
    REQUIRE(v.applied_rule == "Pisot recognisable word");
    REQUIRE_FALSE(v.conditional);
    REQUIRE(v.balance);
    REQUIRE(v.balance->threshold_N == 6);
    REQUIRE(v.recognisable);
    REQUIRE(v.recognisable_level == 6);
    REQUIRE(v.recognisable->radius == 0);
    REQUIRE_FALSE(has_certified(v));
}

TEST_CASE("period doubling: the pinned marker bb kills mixing") {
    AnalysisVerdict v = mixing_verdict(pd());
    REQUIRE(v.status == MixingStatus::NotMixing);
    REQUIRE(v.applied_rule == "pinned-marker congruence");
    REQUIRE_FALSE(v.conditional);
    REQUIRE(v.marker);
    REQUIRE(v.marker_level == 1);
    REQUIRE(pd().alphabet().format(v.marker->word()) == "bb");
    REQUIRE(v.marker_spectrum);
    for (std::size_t val : v.marker_spectrum->values) REQUIRE(val % 2 == 0);
    REQUIRE(v.marker_obstruction);
    REQUIRE(v.marker_obstruction->modulus);
    REQUIRE(*v.marker_obstruction->modulus % 2 == 0);
    REQUIRE_FALSE(has_certified(v));
}

TEST_CASE("even inflation lengths pin a marker") {
    AnalysisVerdict v = mixing_verdict(ex52());
    REQUIRE(v.status == MixingStatus::NotMixing);
    REQUIRE(v.applied_rule == "pinned-marker congruence");
    REQUIRE_FALSE(v.conditional);
    REQUIRE(v.marker);
    REQUIRE(v.marker_level == 1);
    REQUIRE(v.marker->pieces.size() >= 2);
    REQUIRE_FALSE(has_certified(v));
}

TEST_CASE("expanding second eigenvalue with trivial gcds gives mixing") {
    MixingConfig cfg;
    cfg.proof_strength = true;
    AnalysisVerdict v = mixing_verdict(ex51(), cfg);
    REQUIRE(v.status == MixingStatus::Mixing);
    REQUIRE(v.applied_rule == "two-letter sufficiency (proof strength)");
    REQUIRE_FALSE(v.conditional);
    REQUIRE(v.gcd);
    REQUIRE(v.gcd->all_one);
    REQUIRE_FALSE(has_certified(v));
}

TEST_CASE("conditional verdicts always cite a table-certified hypothesis") {
    std::vector<AnalysisVerdict> verdicts;
    verdicts.push_back(mixing_verdict(fib()));
    verdicts.push_back(mixing_verdict(pd()));
    verdicts.push_back(mixing_verdict(ex52()));
    verdicts.push_back(mixing_verdict(ex51()));
    for (const AnalysisVerdict& v : verdicts)
        REQUIRE(v.conditional == has_certified(v));
}
