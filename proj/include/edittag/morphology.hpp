#pragma once

#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "edittag/errors.hpp"
#include "edittag/strings.hpp"
#include "edittag/tag.hpp"

namespace edittag {

// Conjugation table loaded from lines of shape "token0_token1:tag0_tag1",
// e.g. "go_goes:VB_VBZ". Each line is one unidirectional transition from
// token0 to token1 under the form pair tag0_tag1; reverse transitions exist
// only if listed. Duplicate keys keep the first occurrence.
class VerbDictionary {
  public:
    void add(const std::string& from, const std::string& pair, const std::string& to) {
        transitions_.emplace(key(from, pair), to);
    }

    std::optional<std::string> lookup(const std::string& token, const std::string& pair) const {
        auto it = transitions_.find(key(token, pair));
        if (it == transitions_.end()) return std::nullopt;
        return it->second;
    }

    size_t size() const { return transitions_.size(); }

    struct Entry {
        std::string from, pair, to;
    };
    std::vector<Entry> entries() const {
        std::vector<Entry> out;
        out.reserve(transitions_.size());
        for (const auto& [k, to] : transitions_) {
            auto sep = k.find('\x1f');
            out.push_back({k.substr(0, sep), k.substr(sep + 1), to});
        }
        return out;
    }

  private:
    static std::string key(const std::string& token, const std::string& pair) {
        return token + '\x1f' + pair;
    }
    std::unordered_map<std::string, std::string> transitions_;
};

inline bool is_verb_form_pair(const std::string& pair) {
    auto us = pair.find('_');
    if (us == std::string::npos) return false;
    const std::string a = pair.substr(0, us), b = pair.substr(us + 1);
    if (a == b) return false;
    const auto& codes = verb_form_codes();
    auto known = [&](const std::string& c) {
        for (const auto& k : codes)
            if (k == c) return true;
        return false;
    };
    return known(a) && known(b);
}

inline VerbDictionary load_verb_dictionary(std::istream& in) {
    VerbDictionary dict;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto where = [&] { return "verb dictionary line " + std::to_string(lineno); };
        auto colon = line.find(':');
        if (colon == std::string::npos || line.find(':', colon + 1) != std::string::npos)
            throw MalformedEntry(where() + ": expected token0_token1:tag0_tag1");
        const std::string tokens = line.substr(0, colon);
        const std::string pair = line.substr(colon + 1);
        auto us = tokens.find('_');
        if (us == std::string::npos || us == 0 || us + 1 == tokens.size() ||
            tokens.find('_', us + 1) != std::string::npos)
            throw MalformedEntry(where() + ": token side must be token0_token1");
        if (!is_verb_form_pair(pair))
            throw MalformedEntry(where() + ": '" + pair + "' is not a verb form pair");
        dict.add(tokens.substr(0, us), pair, tokens.substr(us + 1));
    }
    return dict;
}

// Irregular singular/plural pairs, bijective in both directions.
class NounExceptionTable {
  public:
    void add(const std::string& singular, const std::string& plural) {
        if (to_plural_.count(singular) || to_singular_.count(plural))
            throw MalformedEntry("noun table: duplicate mapping for '" + singular + "'/'" +
                                 plural + "'");
        to_plural_[singular] = plural;
        to_singular_[plural] = singular;
    }

    std::optional<std::string> plural_of(const std::string& s) const {
        auto it = to_plural_.find(s);
        if (it == to_plural_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<std::string> singular_of(const std::string& s) const {
        auto it = to_singular_.find(s);
        if (it == to_singular_.end()) return std::nullopt;
        return it->second;
    }

    size_t size() const { return to_plural_.size(); }

  private:
    std::unordered_map<std::string, std::string> to_plural_;
    std::unordered_map<std::string, std::string> to_singular_;
};

// TSV "singular<TAB>plural", one pair per line.
inline NounExceptionTable load_noun_exceptions(std::istream& in) {
    NounExceptionTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
            line.find('\t', tab + 1) != std::string::npos)
            throw MalformedEntry("noun table line " + std::to_string(lineno) +
                                 ": expected singular<TAB>plural");
        table.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return table;
}

namespace detail {

inline bool is_vowel(char c) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

inline bool sibilant_ending(const std::string& w) {
    if (w.empty()) return false;
    char last = w.back();
    if (last == 's' || last == 'x' || last == 'z') return true;
    if (w.size() >= 2) {
        const std::string tail = w.substr(w.size() - 2);
        if (tail == "ch" || tail == "sh") return true;
    }
    return false;
}

// Stems that take an es suffix unambiguously. A single trailing s is
// excluded: "diseases" strips to "disease", not "diseas" (words like
// bus/buses live in the exception table instead).
inline bool es_strippable_stem(const std::string& w) {
    if (w.empty()) return false;
    char last = w.back();
    if (last == 'x' || last == 'z') return true;
    if (w.size() >= 2) {
        const std::string tail = w.substr(w.size() - 2);
        if (tail == "ch" || tail == "sh" || tail == "ss") return true;
    }
    return false;
}

}  // namespace detail

// Regular pluralization: exception table, then consonant+y -> ies, then
// sibilant endings -> +es, else +s.
inline std::optional<std::string> noun_to_plural(const std::string& w,
                                                 const NounExceptionTable& nouns) {
    if (w.empty()) return std::nullopt;
    if (auto hit = nouns.plural_of(w)) return *hit;
    if (w.size() >= 2 && w.back() == 'y' && !detail::is_vowel(w[w.size() - 2]))
        return w.substr(0, w.size() - 1) + "ies";
    if (detail::sibilant_ending(w)) return w + "es";
    return w + "s";
}

// Regular singularization: exception table, then ies -> y, then es after a
// sibilant stem, else strip a final s (but not from an ss ending). Returns
// nothing when no rule applies.
inline std::optional<std::string> noun_to_singular(const std::string& w,
                                                   const NounExceptionTable& nouns) {
    if (auto hit = nouns.singular_of(w)) return *hit;
    if (w.size() > 3 && w.compare(w.size() - 3, 3, "ies") == 0)
        return w.substr(0, w.size() - 3) + "y";
    if (w.size() > 2 && w.compare(w.size() - 2, 2, "es") == 0 &&
        detail::es_strippable_stem(w.substr(0, w.size() - 2)))
        return w.substr(0, w.size() - 2);
    if (w.size() >= 2 && w.back() == 's' && w[w.size() - 2] != 's')
        return w.substr(0, w.size() - 1);
    return std::nullopt;
}

// Executes one grammatical transformation on a token. MERGE consumes
// next_token and yields the joined token; SPLIT yields two tokens; everything
// else yields one. Returns nothing when the transformation does not apply
// (verb pair absent from the dictionary, SPLIT without an interior hyphen,
// MERGE at the end of a sentence, ...); callers treat that as "leave the
// token unchanged".
inline std::optional<std::vector<std::string>> apply_g(
    const std::string& token, const Tag& tag,
    const std::optional<std::string>& next_token, const VerbDictionary& dict,
    const NounExceptionTable& nouns) {
    switch (tag.core) {
        case Core::Case:
            if (tag.suffix == "CAPITAL") return {{upper_at(token, 0)}};
            if (tag.suffix == "CAPITAL_1") {
                if (scalar_count(token) < 2) return std::nullopt;
                return {{upper_at(token, 1)}};
            }
            if (tag.suffix == "LOWER") return {{to_lower(token)}};
            if (tag.suffix == "UPPER") return {{to_upper(token)}};
            return std::nullopt;
        case Core::Merge: {
            if (!next_token) return std::nullopt;
            const char* sep = tag.suffix == "HYPHEN" ? "-" : "";
            return {{token + sep + *next_token}};
        }
        case Core::Split: {
            // Split around the first interior hyphen; both halves must be
            // non-empty tokens.
            for (size_t i = 1; i + 1 < token.size(); ++i)
                if (token[i] == '-') return {{token.substr(0, i), token.substr(i + 1)}};
            return std::nullopt;
        }
        case Core::NounNumber: {
            auto result = tag.suffix == "SINGULAR" ? noun_to_singular(token, nouns)
                                                   : noun_to_plural(token, nouns);
            if (!result) return std::nullopt;
            return {{*result}};
        }
        case Core::VerbForm: {
            auto result = dict.lookup(token, tag.suffix);
            if (!result) return std::nullopt;
            return {{*result}};
        }
        default:
            return std::nullopt;  // not a g-transformation
    }
}

// First transformation in fixed inventory order that maps source_token onto
// target_tokens. With next_source present only the pair-consuming MERGE
// shapes are searched; without it only the single-token shapes are. Identity
// is KEEP's job, never a g-tag's.
inline std::optional<Tag> candidate_g(const std::string& source_token,
                                      const std::vector<std::string>& target_tokens,
                                      const VerbDictionary& dict,
                                      const NounExceptionTable& nouns,
                                      const std::optional<std::string>& next_source = {}) {
    if (target_tokens.empty() || target_tokens.size() > 2) return std::nullopt;
    if (!next_source && target_tokens.size() == 1 && target_tokens[0] == source_token)
        return std::nullopt;
    for (const auto& g : g_transformation_inventory()) {
        if ((g.core == Core::Merge) != next_source.has_value()) continue;
        auto produced = apply_g(source_token, g, next_source, dict, nouns);
        if (!produced || *produced != target_tokens) continue;
        // a transformation that leaves the token unchanged is not a match
        if (produced->size() == 1 && (*produced)[0] == source_token) continue;
        return g;
    }
    return std::nullopt;
}

}  // namespace edittag
