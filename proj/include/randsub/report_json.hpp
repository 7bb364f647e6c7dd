#pragma once

// JSON rendering for every report type.  Exact quantities are emitted as
// strings next to a double approximation; nothing here feeds back into the
// decision procedures.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "randsub/analysis.hpp"
#include "randsub/core.hpp"
#include "randsub/decompose.hpp"
#include "randsub/spectral.hpp"
#include "randsub/tiling.hpp"

namespace randsub {

using nlohmann::json;

inline json json_of(const QuadNumber& q) {
    return {{"exact", q.str()}, {"numeric", q.to_double()}};
}

inline json json_of(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json json_of(const ChecklistItem& c) {
    json j{{"hypothesis", c.hypothesis}, {"state", c.state}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    return j;
}

inline json json_of(const std::vector<ChecklistItem>& items) {
    json arr = json::array();
    for (const ChecklistItem& c : items) arr.push_back(json_of(c));
    return arr;
}

inline json json_of(const SpectralData& sd) {
    json j;
    j["matrix"] = json_of(sd.matrix);
    json poly = json::array();
    for (const BigInt& c : sd.poly) poly.push_back(c.str());
    j["char_poly"] = poly;
    j["exact"] = sd.exact;
    if (sd.exact) {
        j["lambda1"] = json_of(sd.lambda1);
        j["lambda2"] = json_of(sd.lambda2);
        json freq = json::array(), len = json::array();
        for (const QuadNumber& f : sd.frequencies) freq.push_back(json_of(f));
        for (const QuadNumber& l : sd.natural_lengths) len.push_back(json_of(l));
        j["frequencies"] = freq;
        j["natural_lengths"] = len;
    } else {
        j["lambda1"] = sd.lambda1_numeric;
        j["moduli"] = sd.moduli_numeric;
        j["numeric_error"] = sd.numeric_error;
        j["frequencies"] = sd.frequencies_numeric;
        j["natural_lengths"] = sd.natural_lengths_numeric;
    }
    j["irreducible"] = to_string(sd.irreducible);
    j["pisot"] = to_string(sd.pisot);
    j["lambda2_modulus"] = to_string(sd.lambda2_modulus);
    return j;
}

inline json json_of(const GcdReport& g) {
    json gcds = json::array();
    for (const BigInt& v : g.gcds) gcds.push_back(v.str());
    json j{{"gcds", gcds}, {"all_one", g.all_one}, {"rationale", g.rationale}};
    if (!g.all_one) {
        j["exceed_n"] = g.exceed_n;
        j["exceed_value"] = g.exceed_value.str();
    }
    return j;
}

inline json json_of(const DecompositionItem& d, const Alphabet& ab) {
    json pieces = json::array();
    for (const Word& p : d.pieces) pieces.push_back(ab.format(p));
    return {{"pieces", pieces},       {"root", ab.format(d.root)},
            {"level", d.level},       {"first_proper", d.first_proper},
            {"last_proper", d.last_proper}, {"word", ab.format(d.word())}};
}

inline const char* to_string(RecStatus s) {
    switch (s) {
        case RecStatus::Recognisable: return "recognisable";
        case RecStatus::Ambiguous: return "ambiguous";
        default: return "inconclusive";
    }
}

inline json json_of(const RecognisabilityVerdict& r, const Alphabet& ab) {
    json j{{"word", ab.format(r.word)},
           {"level", r.level},
           {"status", to_string(r.status)},
           {"radius", r.radius}};
    if (r.status == RecStatus::Recognisable) {
        j["induced"] = json_of(r.induced_item, ab);
        j["cross_extension_agreement"] = r.cross_extension_agreement;
    }
    if (r.status == RecStatus::Ambiguous) {
        j["ambiguous_extension"] = ab.format(r.ambiguous_extension);
        j["induced_a"] = json_of(r.witness_a, ab);
        j["induced_b"] = json_of(r.witness_b, ab);
        j["parent_a"] = json_of(r.parent_a, ab);
        j["parent_b"] = json_of(r.parent_b, ab);
    }
    return j;
}

inline const char* to_string(LocalRecStatus s) {
    switch (s) {
        case LocalRecStatus::CertifiedUpToTable: return "certified-up-to-table";
        case LocalRecStatus::RefutedEvidence: return "refuted-evidence";
        default: return "inconclusive";
    }
}

inline json json_of(const LocalRecognisability& lr, const Alphabet& ab) {
    json j{{"status", to_string(lr.status)}, {"level", lr.level}};
    if (lr.status == LocalRecStatus::CertifiedUpToTable) {
        j["radius"] = lr.radius;
        json per = json::array();
        for (const auto& [word, radius] : lr.per_word)
            per.push_back({{"word", ab.format(word)}, {"radius", radius}});
        j["per_word"] = per;
    }
    if (lr.status == LocalRecStatus::RefutedEvidence) {
        j["refuted_word"] = ab.format(lr.refuted_word);
        j["witness"] = json_of(lr.witness, ab);
    }
    if (!lr.note.empty()) j["note"] = lr.note;
    return j;
}

inline json json_of(const LengthSpectrum& sp, const Alphabet& ab) {
    json witnesses = json::array();
    for (const Word& w : sp.witnesses) witnesses.push_back(ab.format(w));
    return {{"u", ab.format(sp.u)},   {"v", ab.format(sp.v)},
            {"max_length", sp.max_length}, {"values", sp.values},
            {"witnesses", witnesses}, {"min_gap", sp.min_gap},
            {"max_gap", sp.max_gap}};
}

inline json json_of(const CongruenceReport& c) {
    json j{{"insufficient", c.insufficient}};
    if (c.modulus) j["modulus"] = *c.modulus;
    else j["modulus"] = nullptr;
    return j;
}

inline json json_of(const BalanceReport& br) {
    json j{{"theoretical", br.theoretical},
           {"scan_length", br.scan_length},
           {"discrepancy", json_of(br.discrepancy)},
           {"pair_count_max", br.pair_count_max}};
    if (br.theoretical) {
        j["D"] = json_of(br.D);
        j["B"] = json_of(br.B);
        j["C"] = br.C;
        j["c1"] = json_of(br.c1);
        j["c2"] = json_of(br.c2);
        j["threshold_N"] = br.threshold_N;
        j["jordan_flag"] = br.jordan_flag;
    } else {
        j["gate_reason"] = br.gate_reason;
    }
    return j;
}

inline json json_of(const DensityReport& dr) {
    json j{{"level", dr.level},
           {"max_length", dr.max_length},
           {"count", dr.lengths.size()},
           {"lengths", dr.lengths},
           {"density", dr.density}};
    if (dr.bound) j["bound"] = *dr.bound;
    else j["bound"] = nullptr;
    if (!dr.note.empty()) j["note"] = dr.note;
    return j;
}

inline json json_of(const AnalysisVerdict& v, const Alphabet& ab) {
    json j{{"status", to_string(v.status)},
           {"rule", v.applied_rule},
           {"conditional", v.conditional},
           {"checklist", json_of(v.checklist)}};
    json ev;
    if (v.gcd) ev["gcd"] = json_of(*v.gcd);
    if (v.spectral) ev["spectral"] = json_of(*v.spectral);
    if (v.local_rec) ev["local_recognisability"] = json_of(*v.local_rec, ab);
    if (v.marker) {
        json m{{"item", json_of(*v.marker, ab)}, {"level", v.marker_level}};
        if (v.marker_spectrum) m["spectrum"] = json_of(*v.marker_spectrum, ab);
        if (v.marker_obstruction)
            m["obstruction"] = json_of(*v.marker_obstruction);
        ev["marker"] = m;
    }
    if (v.recognisable)
        ev["recognisable_word"] = {{"word", ab.format(v.recognisable->word)},
                                   {"radius", v.recognisable->radius},
                                   {"level", v.recognisable_level}};
    if (v.balance) ev["balance"] = json_of(*v.balance);
    if (!v.sample_spectra.empty()) {
        json samples = json::array();
        for (std::size_t i = 0; i < v.sample_spectra.size(); ++i) {
            json s{{"spectrum", json_of(v.sample_spectra[i], ab)}};
            if (i < v.sample_obstructions.size())
                s["obstruction"] = json_of(v.sample_obstructions[i]);
            samples.push_back(std::move(s));
        }
        ev["samples"] = samples;
    }
    j["evidence"] = ev;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline json json_of(const TileLengths& l, const Alphabet& ab) {
    json lengths;
    for (std::size_t a = 0; a < l.lengths.size(); ++a)
        lengths[ab.format(Word(1, static_cast<char>(a)))] = json_of(l.lengths[a]);
    return {{"source", l.source}, {"lengths", lengths}};
}

inline const char* to_string(RatioClass c) {
    switch (c) {
        case RatioClass::AllRational: return "all-rational";
        case RatioClass::IrrationalPairFound: return "irrational-pair";
        default: return "unknown";
    }
}

inline json json_of(const RatioReport& r) {
    json j{{"class", to_string(r.cls)}};
    if (r.cls == RatioClass::IrrationalPairFound) j["pair"] = {r.a, r.b};
    return j;
}

inline json json_of(const GeometricSpectrum& sp, const Alphabet& ab) {
    json values = json::array(), exact = json::array(), gaps = json::array(),
         witnesses = json::array();
    for (const QuadNumber& v : sp.values) {
        values.push_back(v.to_double());
        exact.push_back(v.str());
    }
    for (const QuadNumber& g : sp.gaps) gaps.push_back(g.str());
    for (const Word& w : sp.witnesses) witnesses.push_back(ab.format(w));
    return {{"u", ab.format(sp.u)},
            {"v", ab.format(sp.v)},
            {"max_length", sp.max_length},
            {"tile_lengths", json_of(sp.tile_lengths, ab)},
            {"values", values},
            {"values_exact", exact},
            {"witnesses", witnesses},
            {"gaps_exact", gaps}};
}

inline json json_of(const GapReport& g) {
    json gaps = json::array();
    for (const GapReport::Gap& gap : g.gaps)
        gaps.push_back({{"lo", gap.lo}, {"hi", gap.hi}});
    return {{"eps", g.eps}, {"window", {g.r0, g.r1}}, {"gaps", gaps}};
}

inline json json_of(const TilingVerdict& v, const Alphabet& ab) {
    (void)ab;
    json j{{"status", to_string(v.status)},
           {"rule", v.applied_rule},
           {"conditional", v.conditional},
           {"checklist", json_of(v.checklist)},
           {"ratios", json_of(v.ratios)}};
    if (v.spectral) j["spectral"] = json_of(*v.spectral);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline const char* to_string(PeriodicForm f) {
    switch (f) {
        case PeriodicForm::PowerOfCommonWord: return "power-of-common-word";
        case PeriodicForm::AlternatingAB: return "alternating-ab";
        default: return "alternating-ba";
    }
}

inline json json_of(const PeriodicityVerdict& p, const Alphabet& ab) {
    json j{{"periodic", p.periodic}};
    if (p.periodic) {
        j["form"] = to_string(p.form);
        if (p.form == PeriodicForm::PowerOfCommonWord)
            j["common_word"] = ab.format(p.common_word);
        j["k"] = p.k;
        j["l"] = p.l;
        j["conjugations"] = p.conjugations;
    } else {
        j["certificate"] = p.certificate;
    }
    return j;
}

}  // namespace randsub
