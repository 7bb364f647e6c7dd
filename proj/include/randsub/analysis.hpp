#pragma once

// The verdict engine: subshift mixing decision tree, C-balancedness bounds,
// return-length spectra, congruence obstructions, and inflation-length
// density estimates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "randsub/core.hpp"
#include "randsub/decompose.hpp"
#include "randsub/language.hpp"
#include "randsub/quad.hpp"
#include "randsub/spectral.hpp"

namespace randsub {

enum class MixingStatus { Mixing, NotMixing, Inconclusive };

inline const char* to_string(MixingStatus s) {
    switch (s) {
        case MixingStatus::Mixing: return "Mixing";
        case MixingStatus::NotMixing: return "NotMixing";
        default: return "Inconclusive";
    }
}

struct ChecklistItem {
    std::string hypothesis;
    std::string state;  // holds | fails | certified-up-to-table | unknown
    std::string witness;
};

struct EmptySpectrum : Error {
    EmptySpectrum() : Error("length spectrum is empty") {}
};

struct LengthSpectrum {
    Word u, v;
    std::size_t max_length = 0;
    std::vector<std::size_t> values;  // sorted distinct |uw| with uwv legal
    std::vector<Word> witnesses;      // one legal uwv per value
    std::size_t min_gap = 0, max_gap = 0;
};

// All |uw| such that uwv is legal and |uwv| <= L; w = eps is admitted, so
// |u| itself appears whenever uv is legal.
inline LengthSpectrum return_length_spectrum(const RandomSubstitution& s,
                                             const Word& u, const Word& v,
                                             std::size_t L,
                                             const LanguageTable& table) {
    if (u.empty() || v.empty()) throw Error("spectrum context words must be non-empty");
    if (!is_legal(u, table)) throw NotLegal(s.alphabet().format(u));
    if (!is_legal(v, table)) throw NotLegal(s.alphabet().format(v));
    if (L > table.max_length())
        throw TableTooSmall("spectrum bound " + std::to_string(L) + " > table " +
                            std::to_string(table.max_length()));
    LengthSpectrum sp;
    sp.u = u;
    sp.v = v;
    sp.max_length = L;
    for (std::size_t T = u.size() + v.size(); T <= L; ++T) {
        for (const Word& x : table.of_length(T)) {
            if (x.compare(0, u.size(), u) != 0) continue;
            if (x.compare(T - v.size(), v.size(), v) != 0) continue;
            sp.values.push_back(T - v.size());
            sp.witnesses.push_back(x);
            break;
        }
    }
    for (std::size_t i = 1; i < sp.values.size(); ++i) {
        std::size_t gap = sp.values[i] - sp.values[i - 1];
        sp.min_gap = sp.min_gap == 0 ? gap : std::min(sp.min_gap, gap);
        sp.max_gap = std::max(sp.max_gap, gap);
    }
    return sp;
}

struct CongruenceReport {
    std::optional<std::size_t> modulus;  // largest m > 1 dividing all diffs
    bool insufficient = false;           // fewer than two values
};

inline CongruenceReport congruence_obstruction(const LengthSpectrum& sp) {
    if (sp.values.empty()) throw EmptySpectrum();
    CongruenceReport r;
    if (sp.values.size() == 1) {
        r.insufficient = true;
        return r;
    }
    std::size_t g = 0;
    for (std::size_t v : sp.values) g = std::gcd(g, v - sp.values.front());
    if (g >= 2) r.modulus = g;
    return r;
}

struct BalanceReport {
    // Theoretical constants, present for two-letter irreducible Pisot input.
    bool theoretical = false;
    std::string gate_reason;
    QuadNumber D, B, c1, c2;
    std::uint64_t C = 0;        // ceil(2B)
    unsigned threshold_N = 0;   // least n with lambda1^n > (C+1)^{d-1}/c1
    bool jordan_flag = false;   // non-diagonalizable lambda2 = 0 (d >= 3 only)
    // Empirical scan over the language table.
    std::size_t scan_length = 0;
    QuadNumber discrepancy;            // max_a max_w | |w|_a - f_a |w| |
    double discrepancy_numeric = 0.0;
    std::uint64_t pair_count_max = 0;  // max same-length letter-count spread
};

inline BalanceReport balance_report(const RandomSubstitution& s,
                                    const LanguageTable& table,
                                    std::size_t scan_length = 12) {
    IntMatrix m = substitution_matrix(s);
    SpectralData sd = spectral_data(m);
    int d = s.dim();
    BalanceReport br;
    br.scan_length = std::min(scan_length, table.max_length());

    std::size_t k = 0;
    for (const auto& r : s.rules()) k = std::max(k, r.size());

    if (!sd.exact)
        br.gate_reason = "theoretical constants require a two-letter alphabet";
    else if (sd.irreducible != Tristate::Yes)
        br.gate_reason = "characteristic polynomial is reducible";
    else if (sd.pisot != Tristate::Yes)
        br.gate_reason = "|lambda2| >= 1, no geometric decay of discrepancies";
    else if (k < 2)
        br.gate_reason = "deterministic rule sets (the bound degenerates)";
    else {
        // lambda2-projector P2 = (M - lambda1 I)/(lambda2 - lambda1); the
        // letter-count deviation of any inflation word from the frequency
        // line is (I - f 1^T) P2 applied to the root's abelianisation,
        // scaled by lambda2^n.
        const QuadNumber& l1 = sd.lambda1;
        const QuadNumber& l2 = sd.lambda2;
        QuadNumber p2[2][2];
        QuadNumber denom = l2 - l1;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                QuadNumber mij{BigRat(m.at(i, j))};
                if (i == j) mij = mij - l1;
                p2[i][j] = mij / denom;
            }
        QuadNumber kmat[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                QuadNumber acc;
                for (int t = 0; t < 2; ++t) {
                    QuadNumber factor = (i == t ? QuadNumber(1) : QuadNumber(0)) -
                                        sd.frequencies[i];
                    acc = acc + factor * p2[t][j];
                }
                kmat[i][j] = acc;
            }
        br.D = QuadNumber(0);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (br.D < kmat[i][j].abs()) br.D = kmat[i][j].abs();
        QuadNumber one(1);
        br.B = QuadNumber(2) * QuadNumber(static_cast<long>(k - 1)) * br.D /
               (one - sd.abs_lambda2);
        QuadNumber twoB = QuadNumber(2) * br.B;
        std::uint64_t c = static_cast<std::uint64_t>(std::max(0.0, twoB.to_double()));
        while (QuadNumber(static_cast<long>(c)) < twoB) ++c;
        br.C = c;
        // |theta^n(a)| / lambda1^n = alpha_a + beta_a (lambda2/lambda1)^n
        // with beta_a the column sum of P2 and alpha_a = 1 - beta_a.
        QuadNumber ratio = sd.abs_lambda2 / l1;
        bool have = false;
        for (int a = 0; a < 2; ++a) {
            QuadNumber beta = p2[0][a] + p2[1][a];
            QuadNumber alpha = one - beta;
            QuadNumber lo = alpha - beta.abs() * ratio;
            QuadNumber hi = alpha + beta.abs() * ratio;
            if (!have || lo < br.c1) br.c1 = lo;
            if (!have || br.c2 < hi) br.c2 = hi;
            have = true;
        }
        if (!(QuadNumber(0) < br.c1))
            throw Error("lower growth constant is not positive");
        // Direct check of the growth envelope for small n.
        IntMatrix pw = IntMatrix::identity(d);
        QuadNumber l1n(1);
        for (unsigned n = 1; n <= 12; ++n) {
            pw = pw * m;
            l1n = l1n * l1;
            for (const BigInt& len : pw.column_sums()) {
                QuadNumber value{BigRat(len)};
                if (value < br.c1 * l1n || br.c2 * l1n < value)
                    throw Error("growth envelope violated at level " +
                                std::to_string(n));
            }
        }
        QuadNumber target = (QuadNumber(static_cast<long>(br.C)) + one) / br.c1;
        QuadNumber power(1);
        unsigned n = 0;
        while (n < 64) {
            ++n;
            power = power * l1;
            if (target < power) break;
        }
        br.threshold_N = n;
        br.theoretical = true;
    }

    // Empirical discrepancy scan, exact when the frequency vector is exact.
    if (sd.exact) {
        QuadNumber best;
        std::uint64_t spread = 0;
        for (std::size_t len = 1; len <= br.scan_length; ++len) {
            std::vector<std::size_t> lo(d, SIZE_MAX), hi(d, 0);
            for (const Word& w : table.of_length(len)) {
                for (int a = 0; a < d; ++a) {
                    std::size_t cnt = static_cast<std::size_t>(
                        std::count(w.begin(), w.end(), static_cast<char>(a)));
                    lo[a] = std::min(lo[a], cnt);
                    hi[a] = std::max(hi[a], cnt);
                    QuadNumber dev = (QuadNumber(static_cast<long>(cnt)) -
                                      sd.frequencies[a] *
                                          QuadNumber(static_cast<long>(len)))
                                         .abs();
                    if (best < dev) best = dev;
                }
            }
            if (!table.of_length(len).empty())
                for (int a = 0; a < d; ++a)
                    spread = std::max<std::uint64_t>(spread, hi[a] - lo[a]);
        }
        br.discrepancy = best;
        br.discrepancy_numeric = best.to_double();
        br.pair_count_max = spread;
    } else {
        double best = 0.0;
        std::uint64_t spread = 0;
        for (std::size_t len = 1; len <= br.scan_length; ++len) {
            std::vector<std::size_t> lo(d, SIZE_MAX), hi(d, 0);
            for (const Word& w : table.of_length(len)) {
                for (int a = 0; a < d; ++a) {
                    std::size_t cnt = static_cast<std::size_t>(
                        std::count(w.begin(), w.end(), static_cast<char>(a)));
                    lo[a] = std::min(lo[a], cnt);
                    hi[a] = std::max(hi[a], cnt);
                    best = std::max(best, std::abs(static_cast<double>(cnt) -
                                                   sd.frequencies_numeric[a] *
                                                       static_cast<double>(len)));
                }
            }
            if (!table.of_length(len).empty())
                for (int a = 0; a < d; ++a)
                    spread = std::max<std::uint64_t>(spread, hi[a] - lo[a]);
        }
        br.discrepancy_numeric = best;
        br.pair_count_max = spread;
    }
    return br;
}

struct DensityReport {
    unsigned level = 0;
    std::size_t max_length = 0;
    std::vector<std::size_t> lengths;  // exact level-n inflation word lengths
    double density = 0.0;              // |lengths| / max_length
    std::optional<double> bound;       // (C+1)^{d-1}/(c1 lambda1^n) + 1/L
    std::string note;
};

// Counting density in [1, L] of the lengths of exact level-n inflation
// words, i.e. realizations of theta^n(v) over legal roots v.
inline DensityReport inflation_length_density(const RandomSubstitution& s,
                                              unsigned n, std::size_t L,
                                              const LanguageTable& table) {
    DensityReport rep;
    rep.level = n;
    rep.max_length = L;
    if (L == 0) throw Error("density window must be non-empty");
    if (n == 0) {
        // Level 0 is no inflation: every length is realized by legal words.
        for (std::size_t len = 1; len <= L; ++len) rep.lengths.push_back(len);
        rep.density = 1.0;
        rep.note = "level 0: every legal word is its own root";
        return rep;
    }
    int d = s.dim();
    // Possible lengths of theta^n(c) per letter, truncated at L.
    std::vector<std::vector<char>> letter_lengths(
        d, std::vector<char>(L + 1, 0));
    for (int c = 0; c < d; ++c) letter_lengths[c][1] = 1;
    for (unsigned step = 0; step < n; ++step) {
        std::vector<std::vector<char>> next(d, std::vector<char>(L + 1, 0));
        for (int c = 0; c < d; ++c)
            for (const Word& r : s.rule(c)) {
                std::vector<char> acc(L + 1, 0);
                acc[0] = 1;
                for (char rc : r) {
                    std::vector<char> sum(L + 1, 0);
                    const auto& add = letter_lengths[static_cast<unsigned char>(rc)];
                    for (std::size_t x = 0; x <= L; ++x) {
                        if (!acc[x]) continue;
                        for (std::size_t y = 1; x + y <= L; ++y)
                            if (add[y]) sum[x + y] = 1;
                    }
                    acc = std::move(sum);
                }
                for (std::size_t x = 1; x <= L; ++x)
                    if (acc[x]) next[c][x] = 1;
            }
        letter_lengths = std::move(next);
    }
    std::size_t min_len = L + 1;
    for (int c = 0; c < d; ++c)
        for (std::size_t x = 1; x <= L; ++x)
            if (letter_lengths[c][x]) {
                min_len = std::min(min_len, x);
                break;
            }
    if (min_len > L) {
        rep.density = 0.0;
        rep.note = "every level-" + std::to_string(n) +
                   " inflation word is longer than the window";
        return rep;
    }
    std::vector<char> seen(L + 1, 0);
    for (std::size_t rl = 1; rl * min_len <= L; ++rl) {
        if (rl > table.max_length())
            throw TableTooSmall("density needs legal roots of length " +
                                std::to_string(rl));
        for (const Word& v : table.of_length(rl)) {
            std::vector<char> acc(L + 1, 0);
            acc[0] = 1;
            for (char c : v) {
                std::vector<char> sum(L + 1, 0);
                const auto& add = letter_lengths[static_cast<unsigned char>(c)];
                for (std::size_t x = 0; x <= L; ++x) {
                    if (!acc[x]) continue;
                    for (std::size_t y = 1; x + y <= L; ++y)
                        if (add[y]) sum[x + y] = 1;
                }
                acc = std::move(sum);
            }
            for (std::size_t x = 1; x <= L; ++x)
                if (acc[x]) seen[x] = 1;
        }
    }
    for (std::size_t x = 1; x <= L; ++x)
        if (seen[x]) rep.lengths.push_back(x);
    rep.density = static_cast<double>(rep.lengths.size()) /
                  static_cast<double>(L);
    BalanceReport br = balance_report(s, table);
    if (br.theoretical) {
        double l1 = spectral_data(substitution_matrix(s)).lambda1_numeric;
        rep.bound = std::pow(static_cast<double>(br.C) + 1.0,
                             static_cast<double>(s.dim() - 1)) /
                        (br.c1.to_double() * std::pow(l1, n)) +
                    1.0 / static_cast<double>(L);
    } else {
        rep.note = br.gate_reason;
    }
    return rep;
}

struct MixingConfig {
    std::size_t table_length = 16;
    unsigned gcd_n_max = 8;
    unsigned pin_level_max = 3;     // marker scan levels
    std::size_t pin_word_max = 10;  // marker scan word length
    unsigned local_radius_max = 0;  // 0: derived from the table
    bool proof_strength = false;    // proof-level sufficiency branch
    std::size_t budget = 4'000'000;
    std::size_t frontier_cap = 8;
};

struct AnalysisVerdict {
    MixingStatus status = MixingStatus::Inconclusive;
    std::string applied_rule = "none";
    bool conditional = false;
    std::vector<ChecklistItem> checklist;
    std::optional<GcdReport> gcd;
    std::optional<SpectralData> spectral;
    std::optional<LocalRecognisability> local_rec;
    std::optional<DecompositionItem> marker;  // pinned-marker rule
    unsigned marker_level = 0;
    std::optional<LengthSpectrum> marker_spectrum;
    std::optional<CongruenceReport> marker_obstruction;
    std::optional<FindResult> recognisable;  // ladder rule
    unsigned recognisable_level = 0;
    std::optional<BalanceReport> balance;
    std::vector<LengthSpectrum> sample_spectra;
    std::vector<CongruenceReport> sample_obstructions;
    std::string note;
};

namespace detail {

inline void append_note(std::string& note, const std::string& line) {
    if (!note.empty()) note += "; ";
    note += line;
}

}  // namespace detail

// Decision tree for topological mixing of the subshift; the first
// applicable rule wins.  Hypotheses verified by exact arithmetic or exact
// enumeration are marked holds; hypotheses that rely on the finite language
// table are marked certified-up-to-table and make the verdict conditional.
inline AnalysisVerdict mixing_verdict(const RandomSubstitution& s,
                                      const MixingConfig& cfg,
                                      const LanguageTable& table) {
    AnalysisVerdict v;
    v.checklist.push_back(
        {"compatibility", "holds", "identical abelianisations per rule set"});
    if (!is_primitive(s)) {
        v.checklist.push_back({"primitivity", "fails",
                               "substitution matrix is not primitive"});
        v.applied_rule = "hypothesis gate";
        return v;
    }
    v.checklist.push_back({"primitivity", "holds", "Wielandt power positive"});

    GcdReport g = gcd_report(s, cfg.gcd_n_max);
    v.gcd = g;
    SpectralData sd = spectral_data(substitution_matrix(s));
    v.spectral = sd;

    unsigned n_loc = cfg.local_radius_max;
    if (n_loc == 0 && table.max_length() >= 4)
        n_loc = static_cast<unsigned>(
            std::min<std::size_t>(5, (table.max_length() - 2) / 2));

    // Pinned marker: a level-n word with a unique decomposition straddling a
    // cut pins the cut's residue; with gcd_n > 1 the return lengths of the
    // word lie in one residue class, which kills mixing outright.
    for (unsigned n = 1; n <= cfg.pin_level_max && n <= g.gcds.size(); ++n) {
        if (g.gcds[n - 1] <= 1) continue;
        std::optional<DecompositionItem> marker;
        for (std::size_t len = 2;
             len <= std::min(cfg.pin_word_max, table.max_length()) && !marker;
             ++len) {
            for (const Word& w : table.of_length(len)) {
                std::vector<DecompositionItem> items;
                EnumerateOptions opts;
                opts.root_table = &table;
                opts.budget = cfg.budget;
                enumerate_decompositions(
                    s, n, w, opts, [&](const DecompositionItem& it) {
                        items.push_back(it);
                        return items.size() < 2;
                    });
                if (items.size() == 1 && items[0].pieces.size() >= 2) {
                    marker = items[0];
                    break;
                }
            }
        }
        if (!marker) continue;
        Word mw = marker->word();
        v.marker = marker;
        v.marker_level = n;
        v.status = MixingStatus::NotMixing;
        v.applied_rule = "pinned-marker congruence";
        v.conditional = false;
        v.checklist.push_back({"gcd of level-" + std::to_string(n) +
                                   " inflation word lengths > 1",
                               "holds", "gcd = " + g.gcds[n - 1].str()});
        v.checklist.push_back(
            {"radius-0 recognisable word straddling a cut", "holds",
             s.alphabet().format(mw) + " at level " + std::to_string(n)});
        if (2 * mw.size() <= table.max_length()) {
            v.marker_spectrum =
                return_length_spectrum(s, mw, mw, table.max_length(), table);
            if (!v.marker_spectrum->values.empty())
                v.marker_obstruction = congruence_obstruction(*v.marker_spectrum);
        }
        return v;
    }

    auto certify_local = [&]() -> const LocalRecognisability& {
        if (!v.local_rec)
            v.local_rec = local_recognisability(s, 1, n_loc, table, cfg.budget);
        return *v.local_rec;
    };
    auto local_item = [&](const LocalRecognisability& lr) -> ChecklistItem {
        if (lr.status == LocalRecStatus::CertifiedUpToTable)
            return {"local recognisability", "certified-up-to-table",
                    "all 1- and 2-letter words, radius <= " +
                        std::to_string(lr.radius)};
        if (lr.status == LocalRecStatus::RefutedEvidence)
            return {"local recognisability", "fails",
                    "ambiguous at radius " + std::to_string(n_loc) + ": " +
                        s.alphabet().format(lr.refuted_word)};
        return {"local recognisability", "unknown", lr.note};
    };

    std::size_t clen = 0;
    if (is_constant_length(s, &clen) && clen > 1) {
        const LocalRecognisability& lr = certify_local();
        if (lr.status == LocalRecStatus::CertifiedUpToTable) {
            v.status = MixingStatus::NotMixing;
            v.applied_rule = "constant length";
            v.conditional = true;
            v.checklist.push_back({"constant length > 1", "holds",
                                   "every rule word has length " +
                                       std::to_string(clen)});
            v.checklist.push_back(local_item(lr));
            return v;
        }
        detail::append_note(v.note,
                            "constant-length rule skipped: recognisability not certified");
    }

    bool big_lambda2 = s.dim() == 2 && sd.exact &&
                       QuadNumber(1) < sd.abs_lambda2;
    if (big_lambda2) {
        if (g.all_one) {
            if (cfg.proof_strength) {
                v.status = MixingStatus::Mixing;
                v.applied_rule = "two-letter sufficiency (proof strength)";
                v.conditional = false;
                v.checklist.push_back({"|lambda2| > 1", "holds",
                                       "exact: |" + sd.lambda2.str() + "| > 1"});
                v.checklist.push_back({"gcd of inflation word lengths = 1 at every level",
                                       "holds", g.rationale});
                return v;
            }
            const LocalRecognisability& lr = certify_local();
            if (lr.status == LocalRecStatus::CertifiedUpToTable) {
                v.status = MixingStatus::Mixing;
                v.applied_rule = "two-letter sufficiency";
                v.conditional = true;
                v.checklist.push_back({"|lambda2| > 1", "holds",
                                       "exact: |" + sd.lambda2.str() + "| > 1"});
                v.checklist.push_back({"gcd of inflation word lengths = 1 at every level",
                                       "holds", g.rationale});
                v.checklist.push_back(local_item(lr));
                return v;
            }
            detail::append_note(
                v.note, "sufficiency rule skipped: recognisability not certified");
        } else {
            const LocalRecognisability& lr = certify_local();
            if (lr.status == LocalRecStatus::CertifiedUpToTable) {
                v.status = MixingStatus::NotMixing;
                v.applied_rule = "gcd necessity";
                v.conditional = true;
                v.checklist.push_back(
                    {"gcd of inflation word lengths > 1", "holds",
                     "gcd_" + std::to_string(g.exceed_n) + " = " +
                         g.exceed_value.str()});
                v.checklist.push_back(local_item(lr));
                return v;
            }
            detail::append_note(
                v.note, "gcd-necessity rule skipped: recognisability not certified");
        }
    }

    if (s.dim() == 2 && sd.exact && sd.lambda1.is_rational() && big_lambda2) {
        const LocalRecognisability& lr = certify_local();
        if (lr.status == LocalRecStatus::CertifiedUpToTable) {
            v.status = MixingStatus::NotMixing;
            v.applied_rule = "integer leading eigenvalue";
            v.conditional = true;
            v.checklist.push_back({"lambda1 is an integer", "holds",
                                   "lambda1 = " + sd.lambda1.str()});
            v.checklist.push_back({"|lambda2| > 1", "holds",
                                   "exact: |" + sd.lambda2.str() + "| > 1"});
            v.checklist.push_back(local_item(lr));
            return v;
        }
        detail::append_note(
            v.note, "integer-eigenvalue rule skipped: recognisability not certified");
    }

    if (sd.irreducible == Tristate::Yes && sd.pisot == Tristate::Yes) {
        BalanceReport br = balance_report(s, table);
        v.balance = br;
        if (br.theoretical) {
            FindOptions fo;
            fo.radius_bound = 0;
            fo.frontier_cap = cfg.frontier_cap;
            fo.budget = cfg.budget;
            std::optional<FindResult> hit =
                find_recognisable_word(s, br.threshold_N, table, fo);
            if (hit) {
                v.recognisable = hit;
                v.recognisable_level = br.threshold_N;
                v.status = MixingStatus::NotMixing;
                v.applied_rule = "Pisot recognisable word";
                v.conditional = false;
                v.checklist.push_back({"irreducible Pisot", "holds",
                                       "exact: |" + sd.lambda2.str() + "| < 1"});
                v.checklist.push_back({"C-balanced", "holds",
                                       "C = " + std::to_string(br.C) +
                                           " from the eigenvalue bound"});
                v.checklist.push_back(
                    {"recognisable word at level >= N = " +
                         std::to_string(br.threshold_N),
                     "holds", s.alphabet().format(hit->word) + " (radius 0)"});
                return v;
            }
            for (unsigned m = br.threshold_N; m-- > 1;) {
                std::optional<FindResult> partial =
                    find_recognisable_word(s, m, table, fo);
                if (partial) {
                    v.recognisable = partial;
                    v.recognisable_level = m;
                    break;
                }
            }
            v.applied_rule = "Pisot recognisable word (partial ladder)";
            v.checklist.push_back({"irreducible Pisot", "holds",
                                   "exact: |" + sd.lambda2.str() + "| < 1"});
            v.checklist.push_back(
                {"recognisable word at level >= N = " +
                     std::to_string(br.threshold_N),
                 "unknown",
                 v.recognisable
                     ? "ladder reached level " +
                           std::to_string(v.recognisable_level) + " only"
                     : "no radius-0 word found at any level"});
            return v;
        }
        detail::append_note(v.note, "balance gate: " + br.gate_reason);
    }

    v.applied_rule = "no applicable rule";
    for (int c = 0; c < s.dim(); ++c) {
        Word u(1, static_cast<char>(c));
        if (!table.contains(u)) continue;
        LengthSpectrum sp =
            return_length_spectrum(s, u, u, table.max_length(), table);
        if (sp.values.empty()) continue;
        v.sample_obstructions.push_back(congruence_obstruction(sp));
        v.sample_spectra.push_back(std::move(sp));
    }
    return v;
}

inline AnalysisVerdict mixing_verdict(const RandomSubstitution& s,
                                      const MixingConfig& cfg = {}) {
    LanguageTable table =
        LanguageTable::build(s, cfg.table_length, cfg.budget);
    return mixing_verdict(s, cfg, table);
}

}  // namespace randsub
