#pragma once

// JSON (de)serialization of random substitutions.
//
// Format:
//   { "alphabet": ["a", "b"],
//     "rules": { "a": ["ab", "ba"], "b": ["a"] } }

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "randsub/core.hpp"

namespace randsub {

using Json = nlohmann::json;

struct BadInput : Error {
    explicit BadInput(const std::string& what) : Error("bad input: " + what) {}
};

inline RandomSubstitution substitution_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("alphabet") || !j.contains("rules"))
        throw BadInput("expected object with 'alphabet' and 'rules'");
    if (!j["alphabet"].is_array())
        throw BadInput("'alphabet' must be an array of symbols");
    std::vector<std::string> symbols;
    for (const auto& s : j["alphabet"]) {
        if (!s.is_string()) throw BadInput("alphabet symbols must be strings");
        symbols.push_back(s.get<std::string>());
    }
    Alphabet alphabet(std::move(symbols));
    if (!j["rules"].is_object())
        throw BadInput("'rules' must map symbols to arrays of words");
    std::vector<std::vector<Word>> rules(alphabet.size());
    for (int a = 0; a < alphabet.size(); ++a) {
        const std::string& sym = alphabet.symbol(a);
        if (!j["rules"].contains(sym))
            throw BadInput("missing rule for letter " + sym);
        const auto& entry = j["rules"][sym];
        if (!entry.is_array())
            throw BadInput("rule for " + sym + " must be an array of words");
        for (const auto& w : entry) {
            if (!w.is_string()) throw BadInput("rule words must be strings");
            rules[a].push_back(alphabet.parse(w.get<std::string>()));
        }
    }
    for (const auto& [key, ignored] : j["rules"].items())
        alphabet.index_of(key);  // reject rules for symbols outside the alphabet
    return RandomSubstitution(std::move(alphabet), std::move(rules));
}

inline RandomSubstitution substitution_from_json_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw BadInput(std::string("invalid JSON: ") + e.what());
    }
    return substitution_from_json(j);
}

inline Json substitution_to_json(const RandomSubstitution& s) {
    Json j;
    j["alphabet"] = s.alphabet().symbols();
    Json rules = Json::object();
    for (int a = 0; a < s.dim(); ++a) {
        std::vector<std::string> words;
        for (const Word& w : s.rule(a)) words.push_back(s.alphabet().format(w));
        rules[s.alphabet().symbol(a)] = words;
    }
    j["rules"] = std::move(rules);
    return j;
}

}  // namespace randsub
