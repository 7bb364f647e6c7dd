#pragma once

// Geometric realizations: tile lengths, geometric return-length spectra,
// window-bounded epsilon-density evidence, and the tiling-space mixing
// verdict.  All length arithmetic is exact (rationals or one quadratic
// field); the rational-vs-irrational ratio test is the entire decision and
// must never pass through floats.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randsub/analysis.hpp"
#include "randsub/core.hpp"
#include "randsub/language.hpp"
#include "randsub/quad.hpp"
#include "randsub/spectral.hpp"

namespace randsub {

struct WindowExceedsBound : Error {
    WindowExceedsBound()
        : Error("density window extends past the computed spectrum bound") {}
};

struct TileLengths {
    std::vector<QuadNumber> lengths;  // per letter
    std::string source;               // natural | unit | custom
};

inline TileLengths make_lengths(std::vector<QuadNumber> lengths,
                                std::string source = "custom") {
    if (lengths.empty()) throw Error("no tile lengths given");
    for (const QuadNumber& l : lengths)
        if (l.sign() <= 0) throw Error("tile lengths must be positive");
    for (std::size_t i = 0; i < lengths.size(); ++i)
        for (std::size_t j = 0; j < lengths.size(); ++j)
            (void)(lengths[i] / lengths[j]);  // throws FieldMismatch if mixed
    return {std::move(lengths), std::move(source)};
}

inline TileLengths unit_lengths(int d) {
    return {std::vector<QuadNumber>(static_cast<std::size_t>(d), QuadNumber(1)),
            "unit"};
}

// Left Perron-Frobenius eigenvector, normalized so the minimum entry is 1.
inline TileLengths natural_lengths(const IntMatrix& m) {
    SpectralData sd = spectral_data(m);
    if (!sd.exact)
        throw Error("natural lengths are exact for two-letter matrices only");
    return {sd.natural_lengths, "natural"};
}

enum class RatioClass { AllRational, IrrationalPairFound, Unknown };

struct RatioReport {
    RatioClass cls = RatioClass::Unknown;
    int a = -1, b = -1;  // an irrational pair, when found
};

inline RatioReport ratio_class(const TileLengths& l) {
    for (std::size_t i = 0; i < l.lengths.size(); ++i)
        for (std::size_t j = i + 1; j < l.lengths.size(); ++j)
            if (!(l.lengths[i] / l.lengths[j]).is_rational())
                return {RatioClass::IrrationalPairFound, static_cast<int>(i),
                        static_cast<int>(j)};
    return {RatioClass::AllRational, -1, -1};
}

struct GeometricSpectrum {
    Word u, v;
    std::size_t max_length = 0;        // combinatorial bound on |uwv|
    TileLengths tile_lengths;
    std::vector<QuadNumber> values;    // sorted distinct lengths of uw
    std::vector<Word> witnesses;       // one legal uwv per value
    std::vector<QuadNumber> gaps;      // consecutive differences
};

// Lengths factor through the abelianisation: length(uw) = l . Phi(uw).
inline GeometricSpectrum geometric_spectrum(const RandomSubstitution& s,
                                            const TileLengths& l, const Word& u,
                                            const Word& v, std::size_t L,
                                            const LanguageTable& table) {
    if (static_cast<int>(l.lengths.size()) != s.dim())
        throw Error("one tile length per letter required");
    if (u.empty() || v.empty()) throw Error("spectrum context words must be non-empty");
    if (!is_legal(u, table)) throw NotLegal(s.alphabet().format(u));
    if (!is_legal(v, table)) throw NotLegal(s.alphabet().format(v));
    if (L > table.max_length())
        throw TableTooSmall("spectrum bound " + std::to_string(L) + " > table " +
                            std::to_string(table.max_length()));
    std::vector<std::pair<QuadNumber, Word>> found;
    for (std::size_t T = u.size() + v.size(); T <= L; ++T) {
        for (const Word& x : table.of_length(T)) {
            if (x.compare(0, u.size(), u) != 0) continue;
            if (x.compare(T - v.size(), v.size(), v) != 0) continue;
            std::vector<BigInt> phi =
                abelianise(WordView(x).substr(0, T - v.size()), s.dim());
            QuadNumber value;
            for (int a = 0; a < s.dim(); ++a)
                value = value + l.lengths[a] * QuadNumber(BigRat(phi[a]));
            found.emplace_back(std::move(value), x);
        }
    }
    std::sort(found.begin(), found.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    GeometricSpectrum sp;
    sp.u = u;
    sp.v = v;
    sp.max_length = L;
    sp.tile_lengths = l;
    for (auto& [value, witness] : found) {
        if (!sp.values.empty() && sp.values.back() == value) continue;
        sp.values.push_back(std::move(value));
        sp.witnesses.push_back(std::move(witness));
    }
    for (std::size_t i = 1; i < sp.values.size(); ++i)
        sp.gaps.push_back(sp.values[i] - sp.values[i - 1]);
    return sp;
}

struct GapReport {
    double eps = 0.0;
    double r0 = 0.0, r1 = 0.0;
    struct Gap {
        double lo, hi;
    };
    std::vector<Gap> gaps;  // maximal open subintervals farther than eps
                            // from every spectrum value
};

// Evidence only: a truncated spectrum can refute eps-density on a window,
// never prove asymptotic density.
inline GapReport epsilon_density_check(const GeometricSpectrum& sp, double eps,
                                       double r0, double r1) {
    if (eps < 0 || r1 < r0) throw Error("bad density window");
    QuadNumber min_len;
    bool have = false;
    for (const QuadNumber& l : sp.tile_lengths.lengths)
        if (!have || l < min_len) {
            min_len = l;
            have = true;
        }
    double coverage = static_cast<double>(sp.max_length - sp.v.size()) *
                      (have ? min_len.to_double() : 1.0);
    if (r1 > coverage) throw WindowExceedsBound();
    GapReport rep;
    rep.eps = eps;
    rep.r0 = r0;
    rep.r1 = r1;
    double cursor = r0;
    for (const QuadNumber& value : sp.values) {
        double v = value.to_double();
        if (v + eps < cursor) continue;
        if (v - eps > r1) break;
        if (v - eps > cursor) rep.gaps.push_back({cursor, std::min(v - eps, r1)});
        cursor = std::max(cursor, std::min(v + eps, r1));
        if (cursor >= r1) break;
    }
    if (cursor < r1) rep.gaps.push_back({cursor, r1});
    return rep;
}

struct TilingVerdict {
    MixingStatus status = MixingStatus::Inconclusive;
    std::string applied_rule = "none";
    bool conditional = false;
    std::vector<ChecklistItem> checklist;
    RatioReport ratios;
    std::optional<SpectralData> spectral;
    std::string note;
};

// Decision tree for topological mixing of the tiling space.
inline TilingVerdict tiling_mixing_verdict(const RandomSubstitution& s,
                                           const TileLengths& l) {
    TilingVerdict v;
    v.checklist.push_back(
        {"compatibility", "holds", "identical abelianisations per rule set"});
    if (!is_primitive(s)) {
        v.checklist.push_back({"primitivity", "fails",
                               "substitution matrix is not primitive"});
        v.applied_rule = "hypothesis gate";
        return v;
    }
    v.checklist.push_back({"primitivity", "holds", "Wielandt power positive"});
    v.ratios = ratio_class(l);
    if (v.ratios.cls == RatioClass::AllRational) {
        v.status = MixingStatus::NotMixing;
        v.applied_rule = "rational length ratios";
        v.checklist.push_back(
            {"every tile-length ratio rational", "holds",
             "all patch lengths are multiples of a common unit"});
        return v;
    }
    SpectralData sd = spectral_data(substitution_matrix(s));
    v.spectral = sd;
    if (s.dim() == 2 && sd.exact) {
        if (sd.abs_lambda2 < QuadNumber(1)) {
            v.status = MixingStatus::NotMixing;
            v.applied_rule = "contracting second eigenvalue";
            v.checklist.push_back({"|lambda2| < 1", "holds",
                                   "exact: |" + sd.lambda2.str() + "| < 1"});
            return v;
        }
        if (QuadNumber(1) < sd.abs_lambda2) {
            v.status = MixingStatus::Mixing;
            v.applied_rule = "irrational ratio with expanding second eigenvalue";
            v.checklist.push_back({"|lambda2| > 1", "holds",
                                   "exact: |" + sd.lambda2.str() + "| > 1"});
            v.checklist.push_back(
                {"some tile-length ratio irrational", "holds",
                 "letters " + std::to_string(v.ratios.a) + ", " +
                     std::to_string(v.ratios.b)});
            return v;
        }
        v.applied_rule = "borderline second eigenvalue";
        v.checklist.push_back({"|lambda2| != 1", "fails", "|lambda2| = 1"});
        return v;
    }
    if (sd.irreducible == Tristate::Yes && sd.pisot == Tristate::Yes) {
        v.status = MixingStatus::NotMixing;
        v.applied_rule = "contracting second eigenvalue";
        v.checklist.push_back(
            {"irreducible Pisot", "holds", "validated numeric spectrum"});
        return v;
    }
    v.applied_rule = "no applicable rule";
    v.note = "two-letter exact rules do not apply and the input is not "
             "certified irreducible Pisot";
    return v;
}

}  // namespace randsub
