#pragma once

#include <string>
#include <vector>

#include "edittag/alignment.hpp"
#include "edittag/errors.hpp"
#include "edittag/morphology.hpp"

namespace edittag {

// A correction as a span over source token positions (half-open) plus the
// replacement tokens. begin == end is an insertion point; an empty
// replacement is a deletion.
struct EditSpan {
    int begin = 0;
    int end = 0;
    std::vector<std::string> replacement;

    bool operator==(const EditSpan& o) const {
        return begin == o.begin && end == o.end && replacement == o.replacement;
    }
};

namespace detail {

// Replacement tokens for a run of pieces: pieces are grouped back into their
// originating target tokens, partial words contribute their fragment.
inline std::vector<std::string> group_pieces(const std::vector<Piece>& pieces, int b, int e) {
    std::vector<std::string> out;
    for (int j = b; j < e; ++j) {
        if (j == b || pieces[j].word != pieces[j - 1].word)
            out.emplace_back();
        out.back() += pieces[j].text;
    }
    return out;
}

}  // namespace detail

// Aligns the two sentences and turns every difference into an edit span.
// A token whose range contains a contiguous same-word window equal to the
// token itself is clean: pieces before the window become an insertion in
// front of it, pieces after become an insertion behind it. Everything else
// is a substitution over the token. Touching spans merge.
inline std::vector<EditSpan> extract_edits(const std::vector<std::string>& src,
                                           const std::vector<std::string>& tgt,
                                           const VerbDictionary& dict,
                                           const NounExceptionTable& nouns) {
    TokenMapping mapping = map_tokens(src, tgt, dict, nouns);
    const auto& pieces = mapping.pieces;

    if (src.empty()) {
        std::vector<EditSpan> all;
        if (!tgt.empty()) all.push_back({0, 0, tgt});
        return all;
    }

    // token span plus the piece interval backing the replacement; merging
    // happens on piece intervals so a replacement spanning several raw spans
    // still groups back into whole target tokens
    struct RawSpan {
        int begin, end, pb, pe;
    };
    std::vector<RawSpan> raw;

    for (int i = 0; i < static_cast<int>(src.size()); ++i) {
        auto [b, e] = mapping.ranges[i];
        if (b == e) {
            raw.push_back({i, i + 1, b, e});
            continue;
        }
        // same-word window equal to the source token, anywhere in the range
        int wb = -1, we = -1;
        for (int s = b; s < e && wb < 0; ++s) {
            std::string acc;
            for (int t = s; t < e && pieces[t].word == pieces[s].word; ++t) {
                acc += pieces[t].text;
                if (acc.size() > src[i].size()) break;
                if (acc == src[i]) {
                    wb = s;
                    we = t + 1;
                    break;
                }
            }
        }
        if (wb < 0) {
            raw.push_back({i, i + 1, b, e});
            continue;
        }
        if (wb > b) raw.push_back({i, i, b, wb});
        if (we < e) raw.push_back({i + 1, i + 1, we, e});
    }

    std::vector<RawSpan> merged;
    for (const auto& span : raw) {
        if (!merged.empty() && span.begin <= merged.back().end) {
            merged.back().end = std::max(merged.back().end, span.end);
            merged.back().pe = span.pe;
        } else {
            merged.push_back(span);
        }
    }

    std::vector<EditSpan> out;
    for (const auto& span : merged)
        out.push_back({span.begin, span.end, detail::group_pieces(pieces, span.pb, span.pe)});
    return out;
}

struct EvalScores {
    uint64_t tp = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;
    double precision = 1.0;
    double recall = 1.0;
    double f_half = 0.0;
};

inline double f_beta_half(double precision, double recall) {
    const double denom = 0.25 * precision + recall;
    if (denom <= 0.0) return 0.0;
    return 1.25 * precision * recall / denom;
}

// Micro-averaged span-level P / R / F0.5 of hypothesis edits against
// reference edits, both extracted from the shared source sentences. An edit
// counts as correct only when span and replacement agree exactly.
inline EvalScores score(const std::vector<std::vector<std::string>>& sources,
                        const std::vector<std::vector<std::string>>& hypotheses,
                        const std::vector<std::vector<std::string>>& references,
                        const VerbDictionary& dict, const NounExceptionTable& nouns) {
    if (sources.size() != hypotheses.size() || sources.size() != references.size())
        throw LengthMismatch("sources/hypotheses/references: " + std::to_string(sources.size()) +
                             "/" + std::to_string(hypotheses.size()) + "/" +
                             std::to_string(references.size()) + " sentences");
    EvalScores scores;
    for (size_t s = 0; s < sources.size(); ++s) {
        auto hyp = extract_edits(sources[s], hypotheses[s], dict, nouns);
        auto ref = extract_edits(sources[s], references[s], dict, nouns);
        std::vector<bool> used(ref.size(), false);
        for (const auto& edit : hyp) {
            bool matched = false;
            for (size_t r = 0; r < ref.size(); ++r) {
                if (!used[r] && ref[r] == edit) {
                    used[r] = true;
                    matched = true;
                    break;
                }
            }
            matched ? ++scores.tp : ++scores.fp;
        }
        for (size_t r = 0; r < ref.size(); ++r)
            if (!used[r]) ++scores.fn;
    }
    scores.precision =
        scores.tp + scores.fp == 0 ? 1.0 : static_cast<double>(scores.tp) / (scores.tp + scores.fp);
    scores.recall =
        scores.tp + scores.fn == 0 ? 1.0 : static_cast<double>(scores.tp) / (scores.tp + scores.fn);
    scores.f_half = f_beta_half(scores.precision, scores.recall);
    return scores;
}

}  // namespace edittag
