#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "edittag/errors.hpp"

namespace edittag {

// A token-level transformation. Rendered form is "$CORE" or "$CORE_SUFFIX":
// the suffix is a literal token for APPEND/REPLACE and an operation name for
// the grammatical transformations (e.g. "CAPITAL", "HYPHEN", "VB_VBZ").
// UNKNOWN and PADDING are bookkeeping tags any closed-vocabulary tagger
// needs; UNKNOWN decodes as KEEP when applied.
enum class Core {
    Keep,
    Delete,
    Append,
    Replace,
    Case,
    Merge,
    Split,
    NounNumber,
    VerbForm,
    Unknown,
    Padding,
};

struct Tag {
    Core core = Core::Keep;
    std::string suffix;

    bool operator==(const Tag& o) const { return core == o.core && suffix == o.suffix; }
    bool operator!=(const Tag& o) const { return !(*this == o); }
};

struct TagHash {
    size_t operator()(const Tag& t) const {
        return std::hash<std::string>()(t.suffix) * 31 + static_cast<size_t>(t.core);
    }
};

inline Tag keep_tag() { return {Core::Keep, ""}; }
inline Tag delete_tag() { return {Core::Delete, ""}; }
inline Tag unknown_tag() { return {Core::Unknown, ""}; }
inline Tag padding_tag() { return {Core::Padding, ""}; }
inline Tag append_tag(const std::string& t) { return {Core::Append, t}; }
inline Tag replace_tag(const std::string& t) { return {Core::Replace, t}; }

inline bool is_g_core(Core c) {
    return c == Core::Case || c == Core::Merge || c == Core::Split ||
           c == Core::NounNumber || c == Core::VerbForm;
}

inline bool is_g(const Tag& t) { return is_g_core(t.core); }

inline const char* core_name(Core c) {
    switch (c) {
        case Core::Keep: return "KEEP";
        case Core::Delete: return "DELETE";
        case Core::Append: return "APPEND";
        case Core::Replace: return "REPLACE";
        case Core::Case: return "CASE";
        case Core::Merge: return "MERGE";
        case Core::Split: return "SPLIT";
        case Core::NounNumber: return "NOUN_NUMBER";
        case Core::VerbForm: return "VERB_FORM";
        case Core::Unknown: return "UNKNOWN";
        case Core::Padding: return "PADDING";
    }
    return "?";
}

inline std::string render(const Tag& t) {
    std::string out = "$";
    out += core_name(t.core);
    if (!t.suffix.empty()) {
        out += '_';
        out += t.suffix;
    }
    return out;
}

// The five verb form codes, in the order the inventory enumerates pairs.
inline const std::array<std::string, 5>& verb_form_codes() {
    static const std::array<std::string, 5> codes = {"VB", "VBZ", "VBN", "VBD", "VBG"};
    return codes;
}

// The 29 token-independent grammatical transformations, in fixed order:
// 4 CASE, 2 MERGE, 1 SPLIT, 2 NOUN_NUMBER, then the 20 ordered VERB_FORM
// pairs over {VB, VBZ, VBN, VBD, VBG}.
inline const std::vector<Tag>& g_transformation_inventory() {
    static const std::vector<Tag> inv = [] {
        std::vector<Tag> v;
        v.push_back({Core::Case, "CAPITAL"});
        v.push_back({Core::Case, "CAPITAL_1"});
        v.push_back({Core::Case, "LOWER"});
        v.push_back({Core::Case, "UPPER"});
        v.push_back({Core::Merge, "SPACE"});
        v.push_back({Core::Merge, "HYPHEN"});
        v.push_back({Core::Split, "HYPHEN"});
        v.push_back({Core::NounNumber, "SINGULAR"});
        v.push_back({Core::NounNumber, "PLURAL"});
        for (const auto& from : verb_form_codes())
            for (const auto& to : verb_form_codes())
                if (from != to) v.push_back({Core::VerbForm, from + "_" + to});
        return v;
    }();
    return inv;
}

inline bool is_known_g(const Tag& t) {
    for (const auto& g : g_transformation_inventory())
        if (g == t) return true;
    return false;
}

inline Tag parse_tag(const std::string& text) {
    if (text.size() < 2 || text[0] != '$')
        throw MalformedTag("'" + text + "' (expected \"$CORE\" or \"$CORE_SUFFIX\")");
    const std::string body = text.substr(1);

    if (body == "KEEP") return keep_tag();
    if (body == "DELETE") return delete_tag();
    if (body == "UNKNOWN") return unknown_tag();
    if (body == "PADDING") return padding_tag();

    struct Prefix {
        const char* name;
        Core core;
    };
    static const Prefix prefixes[] = {
        {"APPEND_", Core::Append},     {"REPLACE_", Core::Replace},
        {"CASE_", Core::Case},         {"MERGE_", Core::Merge},
        {"SPLIT_", Core::Split},       {"NOUN_NUMBER_", Core::NounNumber},
        {"VERB_FORM_", Core::VerbForm},
    };
    for (const auto& p : prefixes) {
        const std::string name = p.name;
        if (body.size() > name.size() && body.compare(0, name.size(), name) == 0) {
            Tag t{p.core, body.substr(name.size())};
            if (is_g_core(p.core) && !is_known_g(t))
                throw UnknownGTransformation("'" + text + "'");
            return t;
        }
    }
    throw MalformedTag("'" + text + "'");
}

}  // namespace edittag
