#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edittag/errors.hpp"
#include "edittag/morphology.hpp"
#include "edittag/tag.hpp"
#include "edittag/vocabulary.hpp"

namespace edittag {

// Per-token tag distributions for one sentence, plus the error estimates the
// inference tweaks act on. Rows are probabilities over the vocabulary, one
// row per token.
struct PredictionMatrix {
    std::vector<std::string> tokens;
    std::vector<std::vector<double>> tag_probs;
    std::vector<double> error_probs;
    double sentence_error_prob = 0.0;
    std::string vocab_checksum;
};

struct InferenceTweaks {
    double confidence_bias = 0.0;  // added to the KEEP probability before the argmax
    double min_error_prob = 0.0;   // sentences below this are left untouched
    int max_iterations = 5;
};

// Argmax decoding with the two inference knobs. The bias is added to each
// row's KEEP entry after the probabilities are formed (no renormalisation);
// ties go to KEEP, then to the lower tag id.
inline std::vector<Tag> choose_tags(const PredictionMatrix& matrix, const TagVocabulary& vocab,
                                    const InferenceTweaks& tweaks = {}) {
    if (matrix.tag_probs.size() != matrix.tokens.size())
        throw ShapeMismatch("prediction rows: " + std::to_string(matrix.tag_probs.size()) +
                            " for " + std::to_string(matrix.tokens.size()) + " tokens");
    const int keep_id = vocab.keep_id();
    std::vector<Tag> tags;
    tags.reserve(matrix.tokens.size());
    if (matrix.sentence_error_prob < tweaks.min_error_prob) {
        tags.assign(matrix.tokens.size(), keep_tag());
        return tags;
    }
    for (const auto& row : matrix.tag_probs) {
        if (row.size() != vocab.size())
            throw ShapeMismatch("prediction row width " + std::to_string(row.size()) +
                                " for vocabulary of " + std::to_string(vocab.size()));
        int best = keep_id;
        double best_p = row[keep_id] + tweaks.confidence_bias;
        for (size_t id = 0; id < row.size(); ++id) {
            double p = row[id] + (static_cast<int>(id) == keep_id ? tweaks.confidence_bias : 0.0);
            if (p > best_p) {
                best = static_cast<int>(id);
                best_p = p;
            }
        }
        tags.push_back(vocab.tag_at(best));
    }
    return tags;
}

struct ApplyResult {
    std::vector<std::string> tokens;
    int corrections = 0;
};

namespace detail {

// Content of a token absorbed into a merge: structural tags and DELETE are
// overridden (the token survives inside the merged word), APPEND defers its
// suffix, everything else applies as usual.
inline std::string merged_content(const std::string& token, const Tag& tag,
                                  const VerbDictionary& dict, const NounExceptionTable& nouns,
                                  std::vector<std::string>& pending, int& corrections) {
    switch (tag.core) {
        case Core::Append:
            pending.push_back(tag.suffix);
            return token;
        case Core::Replace:
            if (tag.suffix != token) {
                ++corrections;
                return tag.suffix;
            }
            return token;
        case Core::Case:
        case Core::NounNumber:
        case Core::VerbForm: {
            auto out = apply_g(token, tag, std::nullopt, dict, nouns);
            if (out && out->size() == 1 && (*out)[0] != token) {
                ++corrections;
                return (*out)[0];
            }
            return token;
        }
        default:
            return token;
    }
}

}  // namespace detail

// One decoding pass: applies one tag per token left to right. MERGE tags
// chain (each link joins the next token with the link's separator), a MERGE
// on the last token degrades to KEEP, UNKNOWN and PADDING act as KEEP, an
// inapplicable g-transformation or an identity REPLACE leaves the token
// unchanged and counts no correction.
inline ApplyResult apply_tags(const std::vector<std::string>& tokens, const std::vector<Tag>& tags,
                              const VerbDictionary& dict, const NounExceptionTable& nouns) {
    if (tokens.size() != tags.size())
        throw LengthMismatch(std::to_string(tokens.size()) + " tokens vs " +
                             std::to_string(tags.size()) + " tags");
    ApplyResult result;
    const size_t n = tokens.size();
    for (size_t i = 0; i < n; ++i) {
        Tag tag = tags[i];
        if (tag.core == Core::Unknown || tag.core == Core::Padding) tag = keep_tag();
        if (tag.core == Core::Merge && i + 1 == n) tag = keep_tag();

        if (tag.core == Core::Merge) {
            std::vector<std::string> pending;
            std::string merged = tokens[i];
            size_t j = i;
            while (tags[j].core == Core::Merge && j + 1 < n) {
                merged += (tags[j].suffix == "HYPHEN" ? "-" : "");
                merged += detail::merged_content(tokens[j + 1], tags[j + 1], dict, nouns, pending,
                                                 result.corrections);
                ++result.corrections;  // the link itself
                ++j;
            }
            result.tokens.push_back(merged);
            for (auto& suffix : pending) {
                result.tokens.push_back(std::move(suffix));
                ++result.corrections;
            }
            i = j;
            continue;
        }

        switch (tag.core) {
            case Core::Keep:
                result.tokens.push_back(tokens[i]);
                break;
            case Core::Delete:
                ++result.corrections;
                break;
            case Core::Append:
                result.tokens.push_back(tokens[i]);
                result.tokens.push_back(tag.suffix);
                ++result.corrections;
                break;
            case Core::Replace:
                if (tag.suffix != tokens[i]) ++result.corrections;
                result.tokens.push_back(tag.suffix == tokens[i] ? tokens[i] : tag.suffix);
                break;
            case Core::Split: {
                auto out = apply_g(tokens[i], tag, std::nullopt, dict, nouns);
                if (out) {
                    result.tokens.insert(result.tokens.end(), out->begin(), out->end());
                    ++result.corrections;
                } else {
                    result.tokens.push_back(tokens[i]);
                }
                break;
            }
            default: {  // CASE, NOUN_NUMBER, VERB_FORM
                auto out = apply_g(tokens[i], tag, std::nullopt, dict, nouns);
                if (out && out->size() == 1 && (*out)[0] != tokens[i]) {
                    result.tokens.push_back((*out)[0]);
                    ++result.corrections;
                } else {
                    result.tokens.push_back(tokens[i]);
                }
                break;
            }
        }
    }
    return result;
}

// Anything that can produce a prediction matrix for a token sequence.
class Tagger {
  public:
    virtual ~Tagger() = default;
    virtual const TagVocabulary& vocabulary() const = 0;
    virtual PredictionMatrix predict(const std::vector<std::string>& tokens) = 0;
};

struct IterationStep {
    std::vector<std::string> tokens;  // sentence after this pass
    std::vector<Tag> tags;            // tags chosen for the pass
    int corrections = 0;
};

struct IterationTrace {
    std::vector<std::string> initial;
    std::vector<IterationStep> steps;
    std::vector<std::string> final_tokens;
    int total_corrections = 0;
};

// Iterative correction: re-tag and re-apply until a pass changes nothing or
// the iteration budget runs out. Tagger errors surface as TaggerFailure with
// the iteration that raised them.
inline IterationTrace iterate(const std::vector<std::string>& tokens, Tagger& tagger,
                              const InferenceTweaks& tweaks, const VerbDictionary& dict,
                              const NounExceptionTable& nouns) {
    IterationTrace trace;
    trace.initial = tokens;
    trace.final_tokens = tokens;
    for (int it = 0; it < tweaks.max_iterations; ++it) {
        PredictionMatrix matrix;
        try {
            matrix = tagger.predict(trace.final_tokens);
        } catch (const std::exception& e) {
            throw TaggerFailure(it, e.what());
        }
        std::vector<Tag> tags = choose_tags(matrix, tagger.vocabulary(), tweaks);
        ApplyResult applied = apply_tags(trace.final_tokens, tags, dict, nouns);
        if (applied.corrections == 0) break;
        trace.total_corrections += applied.corrections;
        trace.steps.push_back({applied.tokens, std::move(tags), applied.corrections});
        trace.final_tokens = std::move(applied.tokens);
    }
    return trace;
}

// Mean of prediction matrices in deviation form: v0 + sum(vk - v0) / k. An
// ensemble of identical matrices reproduces the input bit for bit, and the
// result is unchanged (to rounding) under input permutation.
inline PredictionMatrix ensemble_average(const std::vector<PredictionMatrix>& matrices) {
    if (matrices.empty()) throw ShapeMismatch("ensemble of zero matrices");
    const PredictionMatrix& v0 = matrices[0];
    for (const auto& v : matrices) {
        if (v.tokens != v0.tokens) throw ShapeMismatch("ensemble token sequences differ");
        if (v.tag_probs.size() != v0.tag_probs.size() ||
            v.error_probs.size() != v0.error_probs.size())
            throw ShapeMismatch("ensemble row counts differ");
        for (size_t r = 0; r < v.tag_probs.size(); ++r)
            if (v.tag_probs[r].size() != v0.tag_probs[r].size())
                throw ShapeMismatch("ensemble row widths differ");
        if (v.vocab_checksum != v0.vocab_checksum)
            throw ChecksumMismatch("ensemble members use different vocabularies");
    }
    PredictionMatrix out = v0;
    const double k = static_cast<double>(matrices.size());
    for (size_t r = 0; r < out.tag_probs.size(); ++r) {
        for (size_t c = 0; c < out.tag_probs[r].size(); ++c) {
            double dev = 0.0;
            for (size_t m = 1; m < matrices.size(); ++m)
                dev += matrices[m].tag_probs[r][c] - v0.tag_probs[r][c];
            out.tag_probs[r][c] = v0.tag_probs[r][c] + dev / k;
        }
    }
    for (size_t r = 0; r < out.error_probs.size(); ++r) {
        double dev = 0.0;
        for (size_t m = 1; m < matrices.size(); ++m)
            dev += matrices[m].error_probs[r] - v0.error_probs[r];
        out.error_probs[r] = v0.error_probs[r] + dev / k;
    }
    double dev = 0.0;
    for (size_t m = 1; m < matrices.size(); ++m)
        dev += matrices[m].sentence_error_prob - v0.sentence_error_prob;
    out.sentence_error_prob = v0.sentence_error_prob + dev / k;
    return out;
}

}  // namespace edittag
