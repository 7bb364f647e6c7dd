// Command-line front end: one subcommand per library operation, JSON or
// human-readable output, and a golden-fixture runner for the bundled
// examples.  Exit codes: mix/tiling carry the verdict (0 = Mixing,
// 1 = NotMixing, 2 = Inconclusive), informational commands return 0,
// errors return >= 3.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "randsub/analysis.hpp"
#include "randsub/core.hpp"
#include "randsub/decompose.hpp"
#include "randsub/language.hpp"
#include "randsub/report_json.hpp"
#include "randsub/spectral.hpp"
#include "randsub/tiling.hpp"

namespace {

using namespace randsub;
using nlohmann::json;

struct FixtureMissing : Error {
    explicit FixtureMissing(const std::string& path)
        : Error("fixture missing: " + path) {}
};

std::size_t default_budget() {
    if (const char* env = std::getenv("RANDSUB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw Error("RANDSUB_BUDGET must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return kDefaultBudget;
}

RandomSubstitution load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file: " + path);
    json j = json::parse(in);
    Alphabet ab(j.at("alphabet").get<std::vector<std::string>>());
    std::vector<std::vector<Word>> rules(static_cast<std::size_t>(ab.size()));
    const json& jr = j.at("rules");
    for (int a = 0; a < ab.size(); ++a) {
        const std::string& sym = ab.symbol(a);
        if (!jr.contains(sym)) throw Error("no rule for letter " + sym);
        for (const auto& t : jr.at(sym))
            rules[static_cast<std::size_t>(a)].push_back(
                ab.parse(t.get<std::string>()));
    }
    return {std::move(ab), std::move(rules)};
}

std::string fmt_item(const DecompositionItem& d, const Alphabet& ab) {
    std::string out = "([";
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        if (i) out += ", ";
        out += ab.format(d.pieces[i]);
    }
    out += "], " + ab.format(d.root) + ")";
    if (!d.first_proper && !d.last_proper) out += "  exact";
    return out;
}

std::string fmt_quad(const QuadNumber& q) {
    if (q.is_rational()) return q.str();
    std::ostringstream os;
    os << q.str() << "  (~" << std::setprecision(8) << q.to_double() << ")";
    return os.str();
}

void print_checklist(const std::vector<ChecklistItem>& items) {
    std::cout << "checklist:\n";
    for (const ChecklistItem& c : items) {
        std::cout << "  [" << c.state << "] " << c.hypothesis;
        if (!c.witness.empty()) std::cout << ": " << c.witness;
        std::cout << "\n";
    }
}

int status_exit(MixingStatus s) {
    switch (s) {
        case MixingStatus::Mixing: return 0;
        case MixingStatus::NotMixing: return 1;
        default: return 2;
    }
}

// --- legal ----------------------------------------------------------------

struct LegalOpts {
    std::string spec;
    std::size_t max_len = 8;
    bool words = false;
    bool as_json = false;
};

int run_legal(const LegalOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    LanguageTable table = legal_words(s, o.max_len, default_budget());
    if (o.as_json) {
        json lengths = json::array();
        for (std::size_t n = 1; n <= o.max_len; ++n) {
            json entry{{"length", n}, {"count", table.of_length(n).size()}};
            if (o.words) {
                json ws = json::array();
                for (const Word& w : table.of_length(n))
                    ws.push_back(s.alphabet().format(w));
                entry["words"] = ws;
            }
            lengths.push_back(std::move(entry));
        }
        std::cout << json{{"max_length", o.max_len}, {"lengths", lengths}}.dump(2)
                  << "\n";
        return 0;
    }
    std::cout << "length  count\n";
    for (std::size_t n = 1; n <= o.max_len; ++n) {
        std::cout << std::setw(6) << n << "  " << table.of_length(n).size()
                  << "\n";
        if (o.words) {
            for (const Word& w : table.of_length(n))
                std::cout << "        " << s.alphabet().format(w) << "\n";
        }
    }
    return 0;
}

// --- decompose --------------------------------------------------------------

struct DecomposeOpts {
    std::string spec;
    std::string word;
    unsigned level = 1;
    std::size_t table_len = 0;  // 0: |word|
    bool as_json = false;
};

int run_decompose(const DecomposeOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    Word u = s.alphabet().parse(o.word);
    std::size_t tl = o.table_len ? o.table_len : u.size();
    LanguageTable table = legal_words(s, tl, default_budget());
    auto items = decompositions(s, o.level, u, table, default_budget());
    if (o.as_json) {
        json arr = json::array();
        for (const auto& d : items) arr.push_back(json_of(d, s.alphabet()));
        std::cout << json{{"word", o.word},
                          {"level", o.level},
                          {"count", items.size()},
                          {"decompositions", arr}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    std::cout << "D_theta^" << o.level << "(" << o.word << "): " << items.size()
              << " decomposition" << (items.size() == 1 ? "" : "s") << "\n";
    for (const auto& d : items)
        std::cout << "  " << fmt_item(d, s.alphabet()) << "\n";
    return 0;
}

// --- recognisable -----------------------------------------------------------

struct RecognisableOpts {
    std::string spec;
    std::string word;
    unsigned level = 1;
    unsigned radius_max = 3;
    std::size_t table_len = 0;  // 0: |word| + 2 radius_max
    bool as_json = false;
};

int run_recognisable(const RecognisableOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    Word u = s.alphabet().parse(o.word);
    std::size_t tl = o.table_len ? o.table_len : u.size() + 2 * o.radius_max;
    LanguageTable table = legal_words(s, tl, default_budget());
    RadiusSearch rs =
        recognisability_radius(s, o.level, u, o.radius_max, table, default_budget());
    if (o.as_json) {
        json j{{"word", o.word}, {"level", o.level}};
        j["radius"] = rs.radius ? json(*rs.radius) : json(nullptr);
        j["verdict"] = json_of(rs.verdict, s.alphabet());
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "word " << o.word << ", level " << o.level << ": ";
    if (rs.radius) {
        std::cout << "recognisable at radius " << *rs.radius << "\n";
        std::cout << "  induced: " << fmt_item(rs.verdict.induced_item, s.alphabet())
                  << "\n";
    } else if (rs.verdict.status == RecStatus::Ambiguous) {
        std::cout << "ambiguous up to radius " << o.radius_max << "\n";
        std::cout << "  extension " << s.alphabet().format(rs.verdict.ambiguous_extension)
                  << " admits " << fmt_item(rs.verdict.witness_a, s.alphabet())
                  << " and " << fmt_item(rs.verdict.witness_b, s.alphabet()) << "\n";
    } else {
        std::cout << "inconclusive up to radius " << o.radius_max << "\n";
    }
    return 0;
}

// --- local-recognisability ----------------------------------------------------

struct LocalRecOpts {
    std::string spec;
    unsigned level = 1;
    unsigned radius_max = 5;
    std::size_t table_len = 0;  // 0: 2 + 2 radius_max
    bool as_json = false;
};

int run_local_rec(const LocalRecOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    std::size_t tl = o.table_len ? o.table_len : 2 + 2 * o.radius_max;
    LanguageTable table = legal_words(s, tl, default_budget());
    LocalRecognisability lr =
        local_recognisability(s, o.level, o.radius_max, table, default_budget());
    if (o.as_json) {
        std::cout << json_of(lr, s.alphabet()).dump(2) << "\n";
        return 0;
    }
    std::cout << "level " << o.level << ": " << to_string(lr.status) << "\n";
    if (lr.status == LocalRecStatus::CertifiedUpToTable) {
        std::cout << "  radius " << lr.radius
                  << " certifies every 1- and 2-letter word\n";
        for (const auto& [w, r] : lr.per_word)
            std::cout << "    " << s.alphabet().format(w) << ": radius " << r
                      << "\n";
    } else if (lr.status == LocalRecStatus::RefutedEvidence) {
        std::cout << "  word " << s.alphabet().format(lr.refuted_word)
                  << " stays ambiguous at radius " << o.radius_max << "\n";
    }
    if (!lr.note.empty()) std::cout << "  note: " << lr.note << "\n";
    return 0;
}

// --- spectral / gcd / periodicity ---------------------------------------------

struct SpecOnlyOpts {
    std::string spec;
    unsigned n_max = 8;
    bool as_json = false;
};

int run_spectral(const SpecOnlyOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    SpectralData sd = spectral_data(substitution_matrix(s));
    if (o.as_json) {
        std::cout << json_of(sd).dump(2) << "\n";
        return 0;
    }
    std::cout << "matrix:\n";
    for (int i = 0; i < sd.matrix.dim(); ++i) {
        std::cout << "  ";
        for (int j = 0; j < sd.matrix.dim(); ++j)
            std::cout << sd.matrix.at(i, j) << " ";
        std::cout << "\n";
    }
    if (sd.exact) {
        std::cout << "lambda1 = " << fmt_quad(sd.lambda1) << "\n";
        std::cout << "lambda2 = " << fmt_quad(sd.lambda2) << "\n";
        std::cout << "frequencies:";
        for (const auto& f : sd.frequencies) std::cout << "  " << f.str();
        std::cout << "\nnatural lengths:";
        for (const auto& l : sd.natural_lengths) std::cout << "  " << l.str();
        std::cout << "\n";
    } else {
        std::cout << "lambda1 ~ " << sd.lambda1_numeric << "\n";
        std::cout << "moduli:";
        for (double m : sd.moduli_numeric) std::cout << "  " << m;
        std::cout << "\n";
    }
    std::cout << "irreducible over Q: " << to_string(sd.irreducible) << "\n";
    std::cout << "Pisot: " << to_string(sd.pisot) << "\n";
    std::cout << "|lambda2| vs 1: " << to_string(sd.lambda2_modulus) << "\n";
    return 0;
}

int run_gcd(const SpecOnlyOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    GcdReport g = gcd_report(s, o.n_max);
    if (o.as_json) {
        std::cout << json_of(g).dump(2) << "\n";
        return 0;
    }
    for (std::size_t i = 0; i < g.gcds.size(); ++i)
        std::cout << "gcd_" << (i + 1) << " = " << g.gcds[i] << "\n";
    if (g.all_one)
        std::cout << "verdict: all one (" << g.rationale << ")\n";
    else
        std::cout << "verdict: gcd_" << g.exceed_n << " = " << g.exceed_value
                  << " > 1\n";
    return 0;
}

int run_periodicity(const SpecOnlyOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    PeriodicityVerdict p = classify_periodicity(s);
    if (o.as_json) {
        std::cout << json_of(p, s.alphabet()).dump(2) << "\n";
        return 0;
    }
    if (p.periodic) {
        std::cout << "periodic (" << to_string(p.form);
        if (p.form == PeriodicForm::PowerOfCommonWord)
            std::cout << ", word " << s.alphabet().format(p.common_word);
        std::cout << ", k=" << p.k << ", l=" << p.l << ", conjugations="
                  << p.conjugations << ")\n";
    } else {
        std::cout << "aperiodic: " << p.certificate << "\n";
    }
    return 0;
}

// --- mix -----------------------------------------------------------------------

struct MixOpts {
    std::string spec;
    std::size_t table_len = 16;
    unsigned gcd_n_max = 8;
    bool proof_strength = false;
    bool as_json = false;
};

int run_mix(const MixOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    MixingConfig cfg;
    cfg.table_length = o.table_len;
    cfg.gcd_n_max = o.gcd_n_max;
    cfg.proof_strength = o.proof_strength;
    if (std::getenv("RANDSUB_BUDGET")) cfg.budget = default_budget();
    AnalysisVerdict v = mixing_verdict(s, cfg);
    if (o.as_json) {
        std::cout << json_of(v, s.alphabet()).dump(2) << "\n";
        return status_exit(v.status);
    }
    std::cout << "verdict: " << to_string(v.status)
              << (v.conditional ? " (conditional)" : "") << "\n";
    std::cout << "rule: " << v.applied_rule << "\n";
    print_checklist(v.checklist);
    if (v.spectral && v.spectral->exact) {
        std::cout << "lambda1 = " << v.spectral->lambda1.str()
                  << ", lambda2 = " << v.spectral->lambda2.str() << "\n";
    }
    if (v.gcd) {
        std::cout << "gcd: ";
        if (v.gcd->all_one)
            std::cout << "1 at every level checked\n";
        else
            std::cout << "gcd_" << v.gcd->exceed_n << " = " << v.gcd->exceed_value
                      << "\n";
    }
    if (v.marker) {
        std::cout << "marker: " << fmt_item(*v.marker, s.alphabet()) << " at level "
                  << v.marker_level;
        if (v.marker_obstruction && v.marker_obstruction->modulus)
            std::cout << ", return lengths = " << *v.marker_obstruction->modulus
                      << " mod class";
        std::cout << "\n";
    }
    if (v.recognisable)
        std::cout << "recognisable word: "
                  << s.alphabet().format(v.recognisable->word) << " (level "
                  << v.recognisable_level << ", radius " << v.recognisable->radius
                  << ")\n";
    if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
    return status_exit(v.status);
}

// --- balance ---------------------------------------------------------------------

struct BalanceOpts {
    std::string spec;
    std::size_t table_len = 12;
    std::size_t scan_len = 12;
    bool as_json = false;
};

int run_balance(const BalanceOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    LanguageTable table = legal_words(s, o.table_len, default_budget());
    BalanceReport br = balance_report(s, table, o.scan_len);
    if (o.as_json) {
        std::cout << json_of(br).dump(2) << "\n";
        return 0;
    }
    if (br.theoretical) {
        std::cout << "D = " << fmt_quad(br.D) << "\n";
        std::cout << "B = " << fmt_quad(br.B) << "\n";
        std::cout << "C = ceil(2B) = " << br.C << "\n";
        std::cout << "c1 = " << fmt_quad(br.c1) << ", c2 = " << fmt_quad(br.c2)
                  << "\n";
        std::cout << "threshold N = " << br.threshold_N << "\n";
    } else {
        std::cout << "no theoretical constants: " << br.gate_reason << "\n";
    }
    std::cout << "empirical discrepancy over |w| <= " << br.scan_length << ": "
              << fmt_quad(br.discrepancy) << "\n";
    std::cout << "max same-length letter-count spread: " << br.pair_count_max
              << "\n";
    return 0;
}

// --- spectrum ----------------------------------------------------------------------

struct SpectrumOpts {
    std::string spec;
    std::string u, v;
    std::size_t max_len = 16;
    std::size_t table_len = 0;  // 0: max_len
    bool as_json = false;
};

int run_spectrum(const SpectrumOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    Word u = s.alphabet().parse(o.u), v = s.alphabet().parse(o.v);
    std::size_t tl = o.table_len ? o.table_len : o.max_len;
    LanguageTable table = legal_words(s, tl, default_budget());
    LengthSpectrum sp = return_length_spectrum(s, u, v, o.max_len, table);
    CongruenceReport cr = congruence_obstruction(sp);
    if (o.as_json) {
        json j{{"spectrum", json_of(sp, s.alphabet())},
               {"obstruction", json_of(cr)}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "S_{" << o.u << "," << o.v << "} up to |uwv| <= " << o.max_len
              << ": {";
    for (std::size_t i = 0; i < sp.values.size(); ++i)
        std::cout << (i ? ", " : "") << sp.values[i];
    std::cout << "}\n";
    for (std::size_t i = 0; i < sp.values.size(); ++i)
        std::cout << "  " << sp.values[i] << ": "
                  << s.alphabet().format(sp.witnesses[i]) << "\n";
    if (sp.values.size() > 1)
        std::cout << "gaps: min " << sp.min_gap << ", max " << sp.max_gap << "\n";
    if (cr.modulus)
        std::cout << "congruence obstruction: values agree mod " << *cr.modulus
                  << "\n";
    else if (cr.insufficient)
        std::cout << "congruence obstruction: fewer than two values\n";
    else
        std::cout << "congruence obstruction: none\n";
    return 0;
}

// --- tiling ------------------------------------------------------------------------

TileLengths parse_lengths(const RandomSubstitution& s, const std::string& text) {
    if (text == "natural") return natural_lengths(substitution_matrix(s));
    if (text == "unit") return unit_lengths(s.dim());
    std::vector<QuadNumber> lens;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) throw Error("empty tile length in " + text);
        lens.emplace_back(BigRat(part));
    }
    if (static_cast<int>(lens.size()) != s.dim())
        throw Error("expected " + std::to_string(s.dim()) + " tile lengths");
    return make_lengths(std::move(lens));
}

struct TilingOpts {
    std::string spec;
    std::string lengths = "natural";
    bool as_json = false;
};

int run_tiling(const TilingOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    TileLengths l = parse_lengths(s, o.lengths);
    TilingVerdict v = tiling_mixing_verdict(s, l);
    if (o.as_json) {
        json j = json_of(v, s.alphabet());
        j["tile_lengths"] = json_of(l, s.alphabet());
        std::cout << j.dump(2) << "\n";
        return status_exit(v.status);
    }
    std::cout << "verdict: " << to_string(v.status)
              << (v.conditional ? " (conditional)" : "") << "\n";
    std::cout << "rule: " << v.applied_rule << "\n";
    std::cout << "tile lengths (" << l.source << "):";
    for (int a = 0; a < s.dim(); ++a)
        std::cout << "  " << s.alphabet().symbol(a) << " = "
                  << l.lengths[static_cast<std::size_t>(a)].str();
    std::cout << "\nratios: " << to_string(v.ratios.cls) << "\n";
    print_checklist(v.checklist);
    if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
    return status_exit(v.status);
}

// --- tiling-spectrum ------------------------------------------------------------------

struct TilingSpectrumOpts {
    std::string spec;
    std::string u, v;
    std::size_t max_len = 16;
    std::size_t table_len = 0;
    std::string lengths = "natural";
    double eps = -1.0;
    std::string window;
    bool as_json = false;
};

int run_tiling_spectrum(const TilingSpectrumOpts& o) {
    RandomSubstitution s = load_spec(o.spec);
    TileLengths l = parse_lengths(s, o.lengths);
    Word u = s.alphabet().parse(o.u), v = s.alphabet().parse(o.v);
    std::size_t tl = o.table_len ? o.table_len : o.max_len;
    LanguageTable table = legal_words(s, tl, default_budget());
    GeometricSpectrum sp = geometric_spectrum(s, l, u, v, o.max_len, table);
    std::optional<GapReport> gaps;
    if (!o.window.empty()) {
        if (o.eps < 0) throw Error("--window requires --eps");
        auto colon = o.window.find(':');
        if (colon == std::string::npos)
            throw Error("--window expects R0:R1");
        double r0 = std::stod(o.window.substr(0, colon));
        double r1 = std::stod(o.window.substr(colon + 1));
        gaps = epsilon_density_check(sp, o.eps, r0, r1);
    }
    if (o.as_json) {
        json j{{"spectrum", json_of(sp, s.alphabet())}};
        if (gaps) j["density"] = json_of(*gaps);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "value,witness\n";
    for (std::size_t i = 0; i < sp.values.size(); ++i)
        std::cout << std::setprecision(12) << sp.values[i].to_double() << ","
                  << s.alphabet().format(sp.witnesses[i]) << "\n";
    if (gaps) {
        std::cout << "uncovered subintervals of [" << gaps->r0 << ", " << gaps->r1
                  << "] at eps " << gaps->eps << ":\n";
        if (gaps->gaps.empty()) std::cout << "  none\n";
        for (const auto& g : gaps->gaps)
            std::cout << "  (" << std::setprecision(12) << g.lo << ", " << g.hi
                      << ")\n";
    }
    return 0;
}

// --- reproduce-paper --------------------------------------------------------------------

struct ReproduceOpts {
    std::string fixtures_dir = "fixtures";
    std::string only;
};

struct GoldenCheck {
    std::string name;
    std::function<std::vector<std::string>()> run;  // failure messages
};

DecompositionItem make_item(const Alphabet& ab, unsigned level,
                            const std::vector<std::string>& pieces,
                            const std::string& root) {
    DecompositionItem d;
    for (const auto& p : pieces) d.pieces.push_back(ab.parse(p));
    d.root = ab.parse(root);
    d.level = level;
    return d;
}

std::vector<std::string> diff_items(const std::vector<DecompositionItem>& got,
                                    std::vector<DecompositionItem> want,
                                    const Alphabet& ab) {
    std::sort(want.begin(), want.end());
    std::vector<std::string> fails;
    if (got == want) return fails;
    for (const auto& d : want)
        if (std::find(got.begin(), got.end(), d) == got.end())
            fails.push_back("missing " + fmt_item(d, ab));
    for (const auto& d : got)
        if (std::find(want.begin(), want.end(), d) == want.end())
            fails.push_back("unexpected " + fmt_item(d, ab));
    if (fails.empty()) fails.push_back("multiplicity mismatch");
    return fails;
}

int run_reproduce(const ReproduceOpts& o) {
    auto fixture = [&](const std::string& name) {
        std::string path = o.fixtures_dir + "/" + name;
        std::ifstream probe(path);
        if (!probe) throw FixtureMissing(path);
        return load_spec(path);
    };

    std::vector<GoldenCheck> checks;

    checks.push_back({"decompose-fib-aab", [&] {
        RandomSubstitution s = fixture("fib.json");
        const Alphabet& ab = s.alphabet();
        LanguageTable t = legal_words(s, 3);
        auto got = decompositions(s, 1, ab.parse("aab"), t);
        return diff_items(got,
                          {make_item(ab, 1, {"a", "ab"}, "ba"),
                           make_item(ab, 1, {"a", "ab"}, "aa"),
                           make_item(ab, 1, {"a", "a", "b"}, "bba"),
                           make_item(ab, 1, {"a", "a", "b"}, "aba")},
                          ab);
    }});

    checks.push_back({"decompose-fib-level2-bb", [&] {
        RandomSubstitution s = fixture("fib.json");
        const Alphabet& ab = s.alphabet();
        LanguageTable t = legal_words(s, 2);
        auto got = decompositions(s, 2, ab.parse("bb"), t);
        return diff_items(got,
                          {make_item(ab, 2, {"b", "b"}, "aa"),
                           make_item(ab, 2, {"b", "b"}, "ab"),
                           make_item(ab, 2, {"b", "b"}, "ba"),
                           make_item(ab, 2, {"b", "b"}, "bb")},
                          ab);
    }});

    checks.push_back({"decompose-pd-bab", [&] {
        RandomSubstitution s = fixture("pd.json");
        const Alphabet& ab = s.alphabet();
        LanguageTable t = legal_words(s, 3);
        auto got = decompositions(s, 1, ab.parse("bab"), t);
        return diff_items(got,
                          {make_item(ab, 1, {"ba", "b"}, "aa"),
                           make_item(ab, 1, {"b", "ab"}, "aa")},
                          ab);
    }});

    checks.push_back({"decompose-fib-ababa", [&] {
        RandomSubstitution s = fixture("fib.json");
        const Alphabet& ab = s.alphabet();
        LanguageTable t = legal_words(s, 5);
        auto got = decompositions(s, 1, ab.parse("ababa"), t);
        auto fails = diff_items(got,
                                {make_item(ab, 1, {"a", "ba", "ba"}, "baa"),
                                 make_item(ab, 1, {"a", "ba", "ba"}, "aaa"),
                                 make_item(ab, 1, {"ab", "ab", "a"}, "aab"),
                                 make_item(ab, 1, {"ab", "ab", "a"}, "aaa"),
                                 make_item(ab, 1, {"ab", "a", "ba"}, "aba")},
                                ab);
        std::vector<DecompositionItem> induced_set;
        for (const auto& d : got) {
            DecompositionItem r = induced(s, d, 2, 4);
            if (std::find(induced_set.begin(), induced_set.end(), r) ==
                induced_set.end())
                induced_set.push_back(r);
        }
        if (induced_set.size() != 3)
            fails.push_back("induced [2,4] gave " +
                            std::to_string(induced_set.size()) + " results");
        auto bb = decompositions(s, 1, ab.parse("bbaba"), t);
        if (bb.size() != 1)
            fails.push_back("bbaba has " + std::to_string(bb.size()) +
                            " decompositions");
        else if (!(induced(s, bb[0], 2, 4) ==
                   make_item(ab, 1, {"ba", "b"}, "aa")))
            fails.push_back("bbaba induced [2,4] is " +
                            fmt_item(induced(s, bb[0], 2, 4), ab));
        return fails;
    }});

    checks.push_back({"legal-fib-facts", [&] {
        RandomSubstitution s = fixture("fib.json");
        const Alphabet& ab = s.alphabet();
        LanguageTable t = legal_words(s, 5);
        std::vector<std::string> fails;
        for (const char* w : {"aa", "ab", "ba", "bb"})
            if (!is_legal(ab.parse(w), t))
                fails.push_back(std::string(w) + " should be legal");
        for (const char* w : {"bbb", "aaaaa"})
            if (is_legal(ab.parse(w), t))
                fails.push_back(std::string(w) + " should be illegal");
        return fails;
    }});

    checks.push_back({"fib-exact-inflation-words", [&] {
        RandomSubstitution s = fixture("fib.json");
        const Alphabet& ab = s.alphabet();
        LanguageTable t = legal_words(s, 16);
        std::vector<std::string> fails;
        auto exact_at = [&](const std::string& w, unsigned n) {
            auto items = decompositions(s, n, ab.parse(w), t);
            return std::any_of(items.begin(), items.end(), [](const auto& d) {
                return !d.first_proper && !d.last_proper;
            });
        };
        if (!exact_at("abba", 1)) fails.push_back("abba not exact at level 1");
        if (exact_at("bb", 1)) fails.push_back("bb exact at level 1");
        for (unsigned n = 1; n <= 4; ++n)
            if (!exact_at("abbaaaabbaaaabba", n))
                fails.push_back("abbaaaabbaaaabba not exact at level " +
                                std::to_string(n));
        return fails;
    }});

    checks.push_back({"fib-recognisable-table", [&] {
        RandomSubstitution s = fixture("fib.json");
        const Alphabet& ab = s.alphabet();
        struct Row {
            const char* left;
            const char* right;
        };
        const std::vector<Row> rows = {
            {"ab", "ba"},
            {"baa", "aab"},
            {"aabba", "abbaa"},
            {"abbaaaab", "baaaabba"},
            {"baaaabbaabbaa", "aabbaabbaaaab"},
        };
        std::vector<std::string> fails;
        LanguageTable t = legal_words(s, 26, 8'000'000);
        for (unsigned n = 1; n <= rows.size(); ++n) {
            const Row& row = rows[n - 1];
            Word want = ab.parse(std::string(row.left) + row.right);
            Word got = fib_recognisable_word(n);
            if (got != want) {
                fails.push_back("F_" + std::to_string(n) + " is " +
                                ab.format(got));
                continue;
            }
            auto items = decompositions(s, n, want, t, 8'000'000);
            auto f2 = diff_items(
                items, {make_item(ab, n, {row.left, row.right}, "aa")}, ab);
            for (auto& f : f2)
                fails.push_back("F_" + std::to_string(n) + ": " + f);
            if (n <= 4) {
                auto rv = is_recognisable(s, n, want, 0, t, 8'000'000);
                if (rv.status != RecStatus::Recognisable)
                    fails.push_back("F_" + std::to_string(n) +
                                    " not recognisable at radius 0");
            }
        }
        return fails;
    }});

    checks.push_back({"fib-f4-multilevel-rows", [&] {
        RandomSubstitution s = fixture("fib.json");
        const Alphabet& ab = s.alphabet();
        LanguageTable t = legal_words(s, 16);
        Word w = ab.parse("abbaaaabbaaaabba");
        std::vector<std::string> fails;
        auto row = [&](unsigned n, const std::vector<std::string>& pieces,
                       const std::string& root) {
            auto got = decompositions(s, n, w, t, 8'000'000);
            for (auto& f : diff_items(got, {make_item(ab, n, pieces, root)}, ab))
                fails.push_back("level " + std::to_string(n) + ": " + f);
        };
        row(1, {"ab", "ba", "a", "a", "ab", "ba", "a", "a", "ab", "ba"},
            "aabbaabbaa");
        row(2, {"ab", "baa", "aab", "baa", "aab", "ba"}, "baaaab");
        row(3, {"abbaa", "aab", "baa", "aabba"}, "abba");
        row(4, {"abbaaaab", "baaaabba"}, "aa");
        return fails;
    }});

    checks.push_back({"spectral-fib", [&] {
        RandomSubstitution s = fixture("fib.json");
        SpectralData sd = spectral_data(substitution_matrix(s));
        std::vector<std::string> fails;
        QuadNumber phi(BigRat(1, 2), BigRat(1, 2), 5);
        if (!(sd.lambda1 == phi))
            fails.push_back("lambda1 = " + sd.lambda1.str());
        return fails;
    }});

    checks.push_back({"spectral-ex51", [&] {
        RandomSubstitution s = fixture("ex51.json");
        SpectralData sd = spectral_data(substitution_matrix(s));
        std::vector<std::string> fails;
        QuadNumber l1(BigRat(7, 2), BigRat(1, 2), 13);
        QuadNumber l2(BigRat(7, 2), BigRat(-1, 2), 13);
        if (!(sd.lambda1 == l1)) fails.push_back("lambda1 = " + sd.lambda1.str());
        if (!(sd.lambda2 == l2)) fails.push_back("lambda2 = " + sd.lambda2.str());
        if (!(QuadNumber(1) < sd.lambda2)) fails.push_back("lambda2 <= 1");
        return fails;
    }});

    checks.push_back({"spectral-ex52", [&] {
        RandomSubstitution s = fixture("ex52.json");
        SpectralData sd = spectral_data(substitution_matrix(s));
        std::vector<std::string> fails;
        if (!(sd.lambda1 == QuadNumber(4)))
            fails.push_back("lambda1 = " + sd.lambda1.str());
        if (!(sd.lambda2 == QuadNumber(-2)))
            fails.push_back("lambda2 = " + sd.lambda2.str());
        return fails;
    }});

    checks.push_back({"gcd-ex51", [&] {
        RandomSubstitution s = fixture("ex51.json");
        GcdReport g = gcd_report(s, 10);
        std::vector<std::string> fails;
        if (!g.all_one) fails.push_back("expected all gcd_n = 1");
        for (std::size_t i = 0; i < g.gcds.size(); ++i)
            if (g.gcds[i] != 1)
                fails.push_back("gcd_" + std::to_string(i + 1) + " = " +
                                g.gcds[i].str());
        return fails;
    }});

    checks.push_back({"gcd-ex52-pd", [&] {
        std::vector<std::string> fails;
        GcdReport g52 = gcd_report(fixture("ex52.json"), 4);
        if (g52.gcds.empty() || g52.gcds[0] != 2)
            fails.push_back("ex52 gcd_1 != 2");
        GcdReport gpd = gcd_report(fixture("pd.json"), 4);
        if (gpd.gcds.empty() || gpd.gcds[0] != 2)
            fails.push_back("pd gcd_1 != 2");
        return fails;
    }});

    checks.push_back({"mix-verdicts", [&] {
        std::vector<std::string> fails;
        auto expect = [&](const char* name, MixingStatus want, bool proof) {
            MixingConfig cfg;
            cfg.proof_strength = proof;
            AnalysisVerdict v = mixing_verdict(fixture(name), cfg);
            if (v.status != want)
                fails.push_back(std::string(name) + " -> " +
                                to_string(v.status) + " via " + v.applied_rule);
        };
        expect("ex51.json", MixingStatus::Mixing, true);
        expect("ex52.json", MixingStatus::NotMixing, false);
        expect("pd.json", MixingStatus::NotMixing, false);
        expect("fib.json", MixingStatus::NotMixing, false);
        return fails;
    }});

    checks.push_back({"spectrum-ex52-b6", [&] {
        RandomSubstitution s = fixture("ex52.json");
        const Alphabet& ab = s.alphabet();
        LanguageTable t = legal_words(s, 48, 16'000'000);
        Word b6 = ab.parse("bbbbbb");
        LengthSpectrum sp = return_length_spectrum(s, b6, b6, 48, t);
        CongruenceReport cr = congruence_obstruction(sp);
        std::vector<std::string> fails;
        if (!cr.modulus)
            fails.push_back("no congruence obstruction");
        else if (*cr.modulus % 2 != 0)
            fails.push_back("modulus " + std::to_string(*cr.modulus) +
                            " is odd");
        return fails;
    }});

    checks.push_back({"density-pd", [&] {
        RandomSubstitution s = fixture("pd.json");
        LanguageTable t = legal_words(s, 20);
        DensityReport rep = inflation_length_density(s, 1, 40, t);
        std::vector<std::string> fails;
        if (rep.density > 0.5 + 1.0 / 40.0)
            fails.push_back("density " + std::to_string(rep.density));
        return fails;
    }});

    int failures = 0, ran = 0;
    for (const auto& check : checks) {
        if (!o.only.empty() && check.name.find(o.only) == std::string::npos)
            continue;
        ++ran;
        std::vector<std::string> fails = check.run();
        if (fails.empty()) {
            std::cout << "PASS " << check.name << "\n";
        } else {
            ++failures;
            std::cout << "FAIL " << check.name << "\n";
            for (const auto& f : fails) std::cout << "     " << f << "\n";
        }
    }
    std::cout << ran - failures << "/" << ran << " checks passed\n";
    if (ran == 0) {
        std::cerr << "error: no check matches --only " << o.only << "\n";
        return 3;
    }
    return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact analysis of random substitution subshifts"};
    app.require_subcommand(1);
    int exit_code = 0;

    auto legal_opts = std::make_shared<LegalOpts>();
    auto* legal = app.add_subcommand("legal", "count legal words per length");
    legal->add_option("--spec", legal_opts->spec, "substitution JSON")->required();
    legal->add_option("--max-len", legal_opts->max_len, "table length");
    legal->add_flag("--words", legal_opts->words, "print the words themselves");
    legal->add_flag("--json", legal_opts->as_json, "JSON output");
    legal->callback([legal_opts, &exit_code] { exit_code = run_legal(*legal_opts); });

    auto dec_opts = std::make_shared<DecomposeOpts>();
    auto* dec = app.add_subcommand("decompose",
                                   "inflation word decompositions of a word");
    dec->add_option("--spec", dec_opts->spec, "substitution JSON")->required();
    dec->add_option("--word", dec_opts->word, "word to decompose")->required();
    dec->add_option("--level", dec_opts->level, "inflation level n");
    dec->add_option("--table-len", dec_opts->table_len, "language table length");
    dec->add_flag("--json", dec_opts->as_json, "JSON output");
    dec->callback([dec_opts, &exit_code] { exit_code = run_decompose(*dec_opts); });

    auto rec_opts = std::make_shared<RecognisableOpts>();
    auto* rec = app.add_subcommand("recognisable",
                                   "smallest recognisability radius of a word");
    rec->add_option("--spec", rec_opts->spec, "substitution JSON")->required();
    rec->add_option("--word", rec_opts->word, "centre word")->required();
    rec->add_option("--level", rec_opts->level, "inflation level n");
    rec->add_option("--radius-max", rec_opts->radius_max, "largest radius tried");
    rec->add_option("--table-len", rec_opts->table_len, "language table length");
    rec->add_flag("--json", rec_opts->as_json, "JSON output");
    rec->callback(
        [rec_opts, &exit_code] { exit_code = run_recognisable(*rec_opts); });

    auto loc_opts = std::make_shared<LocalRecOpts>();
    auto* loc = app.add_subcommand("local-recognisability",
                                   "certify or refute one radius for all words");
    loc->add_option("--spec", loc_opts->spec, "substitution JSON")->required();
    loc->add_option("--level", loc_opts->level, "inflation level n");
    loc->add_option("--radius-max", loc_opts->radius_max, "largest radius tried");
    loc->add_option("--table-len", loc_opts->table_len, "language table length");
    loc->add_flag("--json", loc_opts->as_json, "JSON output");
    loc->callback([loc_opts, &exit_code] { exit_code = run_local_rec(*loc_opts); });

    auto sp_opts = std::make_shared<SpecOnlyOpts>();
    auto* spc = app.add_subcommand("spectral",
                                   "eigenvalues, frequencies, natural lengths");
    spc->add_option("--spec", sp_opts->spec, "substitution JSON")->required();
    spc->add_flag("--json", sp_opts->as_json, "JSON output");
    spc->callback([sp_opts, &exit_code] { exit_code = run_spectral(*sp_opts); });

    auto gcd_opts = std::make_shared<SpecOnlyOpts>();
    auto* gcd = app.add_subcommand("gcd", "gcd of level-n inflation lengths");
    gcd->add_option("--spec", gcd_opts->spec, "substitution JSON")->required();
    gcd->add_option("--n-max", gcd_opts->n_max, "levels to report");
    gcd->add_flag("--json", gcd_opts->as_json, "JSON output");
    gcd->callback([gcd_opts, &exit_code] { exit_code = run_gcd(*gcd_opts); });

    auto per_opts = std::make_shared<SpecOnlyOpts>();
    auto* per = app.add_subcommand(
        "periodicity", "periodic or aperiodic (two-letter deterministic)");
    per->add_option("--spec", per_opts->spec, "substitution JSON")->required();
    per->add_flag("--json", per_opts->as_json, "JSON output");
    per->callback([per_opts, &exit_code] { exit_code = run_periodicity(*per_opts); });

    auto mix_opts = std::make_shared<MixOpts>();
    auto* mix = app.add_subcommand("mix", "topological mixing verdict");
    mix->add_option("--spec", mix_opts->spec, "substitution JSON")->required();
    mix->add_option("--table-len", mix_opts->table_len, "language table length");
    mix->add_option("--gcd-n-max", mix_opts->gcd_n_max, "gcd levels checked");
    mix->add_flag("--proof-strength", mix_opts->proof_strength,
                  "treat published hypotheses as proven, not certified");
    mix->add_flag("--json", mix_opts->as_json, "JSON output");
    mix->callback([mix_opts, &exit_code] { exit_code = run_mix(*mix_opts); });

    auto bal_opts = std::make_shared<BalanceOpts>();
    auto* bal = app.add_subcommand("balance", "balancedness constants and scan");
    bal->add_option("--spec", bal_opts->spec, "substitution JSON")->required();
    bal->add_option("--table-len", bal_opts->table_len, "language table length");
    bal->add_option("--scan-len", bal_opts->scan_len, "empirical scan length");
    bal->add_flag("--json", bal_opts->as_json, "JSON output");
    bal->callback([bal_opts, &exit_code] { exit_code = run_balance(*bal_opts); });

    auto spm_opts = std::make_shared<SpectrumOpts>();
    auto* spm = app.add_subcommand("spectrum", "return-length spectrum S_{u,v}");
    spm->add_option("--spec", spm_opts->spec, "substitution JSON")->required();
    spm->add_option("--u", spm_opts->u, "left word")->required();
    spm->add_option("--v", spm_opts->v, "right word")->required();
    spm->add_option("--max-len", spm_opts->max_len, "bound on |uwv|");
    spm->add_option("--table-len", spm_opts->table_len, "language table length");
    spm->add_flag("--json", spm_opts->as_json, "JSON output");
    spm->callback([spm_opts, &exit_code] { exit_code = run_spectrum(*spm_opts); });

    auto til_opts = std::make_shared<TilingOpts>();
    auto* til = app.add_subcommand("tiling", "tiling-space mixing verdict");
    til->add_option("--spec", til_opts->spec, "substitution JSON")->required();
    til->add_option("--lengths", til_opts->lengths,
                    "natural | unit | comma-separated rationals");
    til->add_flag("--json", til_opts->as_json, "JSON output");
    til->callback([til_opts, &exit_code] { exit_code = run_tiling(*til_opts); });

    auto tsp_opts = std::make_shared<TilingSpectrumOpts>();
    auto* tsp = app.add_subcommand("tiling-spectrum",
                                   "geometric return-length spectrum");
    tsp->add_option("--spec", tsp_opts->spec, "substitution JSON")->required();
    tsp->add_option("--u", tsp_opts->u, "left word")->required();
    tsp->add_option("--v", tsp_opts->v, "right word")->required();
    tsp->add_option("--max-len", tsp_opts->max_len, "bound on |uwv|");
    tsp->add_option("--table-len", tsp_opts->table_len, "language table length");
    tsp->add_option("--lengths", tsp_opts->lengths,
                    "natural | unit | comma-separated rationals");
    tsp->add_option("--eps", tsp_opts->eps, "density tolerance");
    tsp->add_option("--window", tsp_opts->window, "density window R0:R1");
    tsp->add_flag("--json", tsp_opts->as_json, "JSON output");
    tsp->callback(
        [tsp_opts, &exit_code] { exit_code = run_tiling_spectrum(*tsp_opts); });

    auto rep_opts = std::make_shared<ReproduceOpts>();
    auto* rep = app.add_subcommand("reproduce-paper",
                                   "golden checks on the bundled fixtures");
    rep->add_option("--fixtures-dir", rep_opts->fixtures_dir,
                    "directory with fib/pd/ex51/ex52 fixtures");
    rep->add_option("--only", rep_opts->only, "run checks whose name contains this");
    rep->callback([rep_opts, &exit_code] { exit_code = run_reproduce(*rep_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
