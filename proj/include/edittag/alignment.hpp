#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "edittag/errors.hpp"
#include "edittag/morphology.hpp"
#include "edittag/tag.hpp"
#include "edittag/vocabulary.hpp"

namespace edittag {

using SentencePair = std::pair<std::vector<std::string>, std::vector<std::string>>;

// One fragment of a target token. Target tokens are refined around hyphens
// ("ten-year-old" becomes ten / - / year / - / old) so that merges and splits
// line up with single source tokens; concatenating a word's pieces always
// reproduces the original token. Source tokens are never refined.
struct Piece {
    std::string text;
    int word = 0;           // index of the originating target token
    int index_in_word = 0;  // position among that token's pieces
    bool last_of_word = true;
};

inline std::vector<Piece> refine_target(const std::vector<std::string>& tokens) {
    std::vector<Piece> out;
    for (size_t w = 0; w < tokens.size(); ++w) {
        const std::string& tok = tokens[w];
        size_t first = out.size();
        size_t i = 0;
        while (i < tok.size()) {
            size_t j = i;
            if (tok[i] == '-') {
                j = i + 1;
            } else {
                while (j < tok.size() && tok[j] != '-') ++j;
            }
            out.push_back({tok.substr(i, j - i), static_cast<int>(w),
                           static_cast<int>(out.size() - first), false});
            i = j;
        }
        if (out.size() > first) out.back().last_of_word = true;
    }
    return out;
}

// Per-source-token target subsequence: ranges are half-open intervals over
// the refined piece stream, in order, and partition it exactly. An empty
// range means the token is deleted.
struct TokenMapping {
    std::vector<std::string> target_tokens;
    std::vector<Piece> pieces;
    std::vector<std::pair<int, int>> ranges;
};

namespace detail {

enum class AlignOp : uint8_t {
    None,
    KIdentity,  // source token equals the concatenation of k same-word pieces
    GPiece,     // g-transformation onto a single piece
    GWord,      // g-transformation onto a whole (multi-piece) word
    Merge,      // two source tokens onto one word
    Split,      // one source token onto two words
    SubWord,    // plain substitution onto a whole word
    SubPiece,   // plain substitution onto a single piece
    Del,
    Ins,
};

struct AlignCell {
    int32_t cost = std::numeric_limits<int32_t>::max() / 2;
    AlignOp op = AlignOp::None;
    int16_t consumed = 0;  // pieces consumed by this step
};

}  // namespace detail

// Modified Levenshtein alignment over source tokens and target pieces.
// Matches and g-reachable substitutions (including the 2-to-1 merge and
// 1-to-2 split shapes) cost 0, other substitutions and indels cost 1. Ties
// prefer, in order: identity, g on a piece, g on a word, merge, split,
// substitution on a word, substitution on a piece, deletion, insertion.
// Inserted pieces attach to the nearest preceding source token; leading
// insertions attach to the first one. With allow_g false the target is kept
// atomic (no hyphen refinement) and only the cost-1 cells participate.
inline TokenMapping map_tokens(const std::vector<std::string>& src,
                               const std::vector<std::string>& tgt,
                               const VerbDictionary& dict, const NounExceptionTable& nouns,
                               bool allow_g = true) {
    using detail::AlignCell;
    using detail::AlignOp;

    TokenMapping mapping;
    mapping.target_tokens = tgt;
    mapping.pieces = allow_g ? refine_target(tgt) : [&] {
        std::vector<Piece> atomic;
        for (size_t w = 0; w < tgt.size(); ++w) atomic.push_back({tgt[w], static_cast<int>(w), 0, true});
        return atomic;
    }();

    const int n = static_cast<int>(src.size());
    const int m = static_cast<int>(mapping.pieces.size());
    const auto& pieces = mapping.pieces;

    if (n == 0) return mapping;  // degenerate: nothing to attach pieces to

    // word_first[j]: index of the first piece of the word piece j belongs to.
    std::vector<int> word_first(m);
    for (int j = 0; j < m; ++j) word_first[j] = j - pieces[j].index_in_word;
    auto ends_word = [&](int j) { return pieces[j].last_of_word; };
    auto joined = [&](int j) { return mapping.target_tokens[pieces[j].word]; };

    std::vector<AlignCell> dp((n + 1) * (m + 1));
    auto cell = [&](int i, int j) -> AlignCell& { return dp[i * (m + 1) + j]; };
    cell(0, 0) = {0, AlignOp::None, 0};

    auto offer = [&](AlignCell& c, int32_t cost, AlignOp op, int16_t consumed) {
        if (cost < c.cost) c = {cost, op, consumed};  // first offer wins ties
    };

    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= m; ++j) {
            if (i == 0 && j == 0) continue;
            AlignCell& c = cell(i, j);
            const std::string* s = i > 0 ? &src[i - 1] : nullptr;

            if (i > 0 && j > 0) {
                // Identity over k trailing pieces of one word.
                std::string acc;
                for (int k = 1; j - k >= word_first[j - 1]; ++k) {
                    acc = pieces[j - k].text + acc;
                    if (acc.size() > s->size()) break;
                    if (acc == *s) {
                        offer(c, cell(i - 1, j - k).cost, AlignOp::KIdentity, static_cast<int16_t>(k));
                        break;
                    }
                }
                if (allow_g && candidate_g(*s, {pieces[j - 1].text}, dict, nouns))
                    offer(c, cell(i - 1, j - 1).cost, AlignOp::GPiece, 1);
            }
            if (i > 0 && j > 0 && ends_word(j - 1)) {
                const int b = word_first[j - 1];
                const int span = j - b;
                if (allow_g && span >= 2 && candidate_g(*s, {joined(j - 1)}, dict, nouns))
                    offer(c, cell(i - 1, b).cost, AlignOp::GWord, static_cast<int16_t>(span));
                if (allow_g && i >= 2 &&
                    candidate_g(src[i - 2], {joined(j - 1)}, dict, nouns, *s))
                    offer(c, cell(i - 2, b).cost, AlignOp::Merge, static_cast<int16_t>(span));
                if (allow_g && b >= 1) {
                    const int b1 = word_first[b - 1];
                    auto halves = apply_g(*s, {Core::Split, "HYPHEN"}, std::nullopt, dict, nouns);
                    if (halves && halves->size() == 2 && (*halves)[0] == joined(b - 1) &&
                        (*halves)[1] == joined(j - 1))
                        offer(c, cell(i - 1, b1).cost, AlignOp::Split, static_cast<int16_t>(j - b1));
                }
                if (span >= 2)
                    offer(c, cell(i - 1, b).cost + 1, AlignOp::SubWord, static_cast<int16_t>(span));
            }
            if (i > 0 && j > 0) offer(c, cell(i - 1, j - 1).cost + 1, AlignOp::SubPiece, 1);
            if (i > 0) offer(c, cell(i - 1, j).cost + 1, AlignOp::Del, 0);
            if (j > 0) offer(c, cell(i, j - 1).cost + 1, AlignOp::Ins, 1);
        }
    }

    // Backtrace, then replay forward to assign ranges.
    std::vector<std::pair<AlignOp, int16_t>> ops;
    {
        int i = n, j = m;
        while (i != 0 || j != 0) {
            const AlignCell& c = cell(i, j);
            ops.push_back({c.op, c.consumed});
            switch (c.op) {
                case AlignOp::Merge: i -= 2; j -= c.consumed; break;
                case AlignOp::Del: i -= 1; break;
                case AlignOp::Ins: j -= 1; break;
                default: i -= 1; j -= c.consumed; break;
            }
        }
    }
    std::reverse(ops.begin(), ops.end());

    mapping.ranges.assign(n, {0, 0});
    int i = 0, j = 0;
    int attach = -1;    // last source token holding pieces
    int assigned = -1;  // last source token with any range assigned
    int leading = 0;    // inserted pieces seen before the first consumer
    for (const auto& [op, consumed] : ops) {
        switch (op) {
            case detail::AlignOp::Ins:
                if (attach >= 0) {
                    mapping.ranges[attach].second += 1;
                    // keep empty ranges (merge partners) ordered after the extension
                    for (int t = attach + 1; t <= assigned; ++t)
                        mapping.ranges[t] = {mapping.ranges[attach].second,
                                             mapping.ranges[attach].second};
                } else {
                    ++leading;
                }
                j += 1;
                break;
            case detail::AlignOp::Del:
                mapping.ranges[i] = {j, j};
                assigned = std::max(assigned, i);
                i += 1;
                break;
            case detail::AlignOp::Merge:
                mapping.ranges[i] = {j - leading, j + consumed};
                mapping.ranges[i + 1] = {j + consumed, j + consumed};
                attach = i;
                assigned = std::max(assigned, i + 1);
                leading = 0;
                i += 2;
                j += consumed;
                break;
            default:
                mapping.ranges[i] = {j - leading, j + consumed};
                attach = i;
                assigned = std::max(assigned, i);
                leading = 0;
                i += 1;
                j += consumed;
                break;
        }
    }
    return mapping;
}

// A sentence with one chosen tag per source token. residual means the tags
// do not fully reach the target in one pass (deferred edits remain for later
// iterations); uncovered counts edits that had to degrade to KEEP because
// the vocabulary lacks their tag.
struct TaggedSentence {
    std::vector<std::string> tokens;
    std::vector<Tag> tags;
    bool residual = false;
    int uncovered = 0;
    bool inexpressible = false;
};

namespace detail {

struct TagList {
    std::vector<Tag> tags;
    bool inexpressible = false;
};

// Appends the tags for the unconsumed remainder of a range: whole words
// become APPEND, a trailing lone hyphen of a continuing word becomes
// MERGE_HYPHEN, stranded same-word fragments become APPEND of the fragment,
// and a range that stops mid-word closes with MERGE_SPACE so later
// iterations can finish the word.
inline void tail_tags(const std::vector<Piece>& pieces, int pos, int e, bool next_src_exists,
                      const std::vector<std::string>& target_tokens, TagList& out) {
    bool merged_ending = false;
    while (pos < e) {
        const Piece& p = pieces[pos];
        if (pos == e - 1 && p.text == "-" && !p.last_of_word && next_src_exists) {
            out.tags.push_back({Core::Merge, "HYPHEN"});
            merged_ending = true;
            ++pos;
            break;
        }
        if (p.index_in_word == 0) {
            // complete word within the range?
            int r = pos;
            while (r < e && pieces[r].word == p.word) ++r;
            if (pieces[r - 1].last_of_word) {
                out.tags.push_back(append_tag(target_tokens[p.word]));
                pos = r;
                continue;
            }
        }
        // fragment: maximal same-word run
        int r = pos;
        std::string acc;
        while (r < e && pieces[r].word == p.word) acc += pieces[r++].text;
        out.tags.push_back(append_tag(acc));
        pos = r;
    }
    if (!merged_ending && e > 0 && !pieces[e - 1].last_of_word) {
        if (next_src_exists)
            out.tags.push_back({Core::Merge, "SPACE"});
        else
            out.inexpressible = true;
    }
}

}  // namespace detail

// Step 2: per-token transformation lists for a computed mapping, in target
// order. The head of each list converts the source token to the leading
// pieces of its range (KEEP / g-tag / MERGE / SPLIT / REPLACE, tried in that
// order); the rest of the range becomes APPEND and MERGE continuations.
inline std::vector<detail::TagList> transformation_lists(const std::vector<std::string>& src,
                                                         const TokenMapping& mapping,
                                                         const VerbDictionary& dict,
                                                         const NounExceptionTable& nouns,
                                                         bool allow_g = true) {
    const auto& pieces = mapping.pieces;
    const int n = static_cast<int>(src.size());
    std::vector<detail::TagList> lists(n);
    for (int i = 0; i < n; ++i) {
        auto [b, e] = mapping.ranges[i];
        detail::TagList& out = lists[i];
        if (b == e) {
            out.tags.push_back(delete_tag());
            continue;
        }
        const bool next_src_exists = i + 1 < n;

        // How far a complete word starting at b reaches, or 0 if the range
        // does not begin at a word start or cuts the word short.
        int word_span = 0;
        if (pieces[b].index_in_word == 0) {
            int r = b;
            while (r < e && pieces[r].word == pieces[b].word) ++r;
            if (pieces[r - 1].last_of_word) word_span = r - b;
        }
        const std::string* word_text =
            word_span ? &mapping.target_tokens[pieces[b].word] : nullptr;

        int consumed = 0;
        bool chosen = false;
        // A whole-word range with an empty-ranged successor is the aligner
        // saying "these two source tokens merged"; honour that before
        // anything else, or the word can never be completed in one tag.
        if (allow_g && word_span && next_src_exists &&
            mapping.ranges[i + 1].first == mapping.ranges[i + 1].second) {
            if (auto g = candidate_g(src[i], {*word_text}, dict, nouns, src[i + 1])) {
                out.tags.push_back(*g);
                consumed = word_span;
                chosen = true;
            }
        }
        // identity over a same-word prefix of the range
        if (!chosen) {
            std::string acc;
            for (int k = 1; b + k <= e && pieces[b + k - 1].word == pieces[b].word; ++k) {
                acc += pieces[b + k - 1].text;
                if (acc.size() > src[i].size()) break;
                if (acc == src[i]) {
                    out.tags.push_back(keep_tag());
                    consumed = k;
                    chosen = true;
                    break;
                }
            }
        }
        if (!chosen && allow_g) {
            if (auto g = candidate_g(src[i], {pieces[b].text}, dict, nouns)) {
                out.tags.push_back(*g);
                consumed = 1;
                chosen = true;
            }
        }
        if (!chosen && allow_g && word_span >= 2) {
            if (auto g = candidate_g(src[i], {*word_text}, dict, nouns)) {
                out.tags.push_back(*g);
                consumed = word_span;
                chosen = true;
            }
        }
        if (!chosen && allow_g && word_span && b + word_span < e) {
            // two adjacent complete words reachable by a hyphen split
            const Piece& second = pieces[b + word_span];
            if (second.index_in_word == 0) {
                int r = b + word_span;
                while (r < e && pieces[r].word == second.word) ++r;
                if (pieces[r - 1].last_of_word) {
                    auto halves = apply_g(src[i], {Core::Split, "HYPHEN"}, std::nullopt, dict, nouns);
                    if (halves && halves->size() == 2 && (*halves)[0] == *word_text &&
                        (*halves)[1] == mapping.target_tokens[second.word]) {
                        out.tags.push_back({Core::Split, "HYPHEN"});
                        consumed = r - b;
                        chosen = true;
                    }
                }
            }
        }
        if (!chosen && word_span) {
            out.tags.push_back(replace_tag(*word_text));
            consumed = word_span;
            chosen = true;
        }
        if (!chosen) {
            // replace with the leading same-word fragment
            int r = b;
            std::string acc;
            while (r < e && pieces[r].word == pieces[b].word) acc += pieces[r++].text;
            out.tags.push_back(replace_tag(acc));
            consumed = r - b;
        }
        detail::tail_tags(pieces, b + consumed, e, next_src_exists, mapping.target_tokens, out);
    }
    return lists;
}

// Step 2, single-token convenience form. The subsequence is interpreted the
// way the aligner would hand it over: hyphen elements glue their neighbours
// into one hyphenated word, and a trailing hyphen means the word continues
// past this token's range.
inline std::vector<Tag> transformations_for_mapping(const std::string& src_token,
                                                    const std::vector<std::string>& tgt_subseq,
                                                    const VerbDictionary& dict,
                                                    const NounExceptionTable& nouns) {
    TokenMapping mapping;
    int word = 0;
    bool glue = false;  // previous element was a hyphen
    for (size_t t = 0; t < tgt_subseq.size(); ++t) {
        const std::string& el = tgt_subseq[t];
        if (t > 0 && !glue && el != "-") ++word;
        int idx = mapping.pieces.empty() || mapping.pieces.back().word != word
                      ? 0
                      : mapping.pieces.back().index_in_word + 1;
        mapping.pieces.push_back({el, word, idx, false});
        glue = el == "-";
    }
    // close words and rebuild their joined text
    for (size_t t = 0; t < mapping.pieces.size(); ++t) {
        bool last = t + 1 == mapping.pieces.size() ||
                    mapping.pieces[t + 1].word != mapping.pieces[t].word;
        bool continuing = last && mapping.pieces[t].text == "-" &&
                          t + 1 == mapping.pieces.size();
        mapping.pieces[t].last_of_word = last && !continuing;
    }
    mapping.target_tokens.assign(word + 1, "");
    for (const auto& p : mapping.pieces) mapping.target_tokens[p.word] += p.text;
    mapping.ranges = {{0, static_cast<int>(mapping.pieces.size())}};

    std::vector<std::string> src_tokens = {src_token, ""};  // phantom successor
    mapping.ranges.push_back({static_cast<int>(mapping.pieces.size()),
                              static_cast<int>(mapping.pieces.size())});
    auto lists = transformation_lists(src_tokens, mapping, dict, nouns);
    return lists[0].tags;
}

// Step 3: keep the first non-KEEP transformation per token; the rest are
// deferred to later iterations and flagged through residual.
inline TaggedSentence collapse(const std::vector<std::string>& src,
                               const std::vector<detail::TagList>& lists) {
    TaggedSentence out;
    out.tokens = src;
    for (const auto& list : lists) {
        size_t pick = 0;
        while (pick < list.tags.size() && list.tags[pick] == keep_tag()) ++pick;
        if (pick == list.tags.size()) {
            out.tags.push_back(keep_tag());
        } else {
            out.tags.push_back(list.tags[pick]);
            for (size_t t = pick + 1; t < list.tags.size(); ++t)
                if (list.tags[t] != keep_tag()) out.residual = true;
        }
        if (list.inexpressible) out.inexpressible = true;
    }
    return out;
}

// The full 3-step preprocessing pipeline. With a vocabulary, tags outside it
// degrade (APPEND/REPLACE to KEEP; a g-tag falls back to the equivalent
// REPLACE when that is in the vocabulary) and are counted as uncovered.
inline TaggedSentence preprocess_pair(const std::vector<std::string>& src,
                                      const std::vector<std::string>& tgt,
                                      const TagVocabulary* vocab, const VerbDictionary& dict,
                                      const NounExceptionTable& nouns, bool allow_g = true) {
    TokenMapping mapping = map_tokens(src, tgt, dict, nouns, allow_g);
    if (src.empty()) {
        TaggedSentence out;
        out.residual = !tgt.empty();
        out.inexpressible = !tgt.empty();
        return out;
    }
    auto lists = transformation_lists(src, mapping, dict, nouns, allow_g);
    TaggedSentence out = collapse(src, lists);
    if (vocab) {
        for (size_t i = 0; i < out.tags.size(); ++i) {
            Tag& tag = out.tags[i];
            if (vocab->contains(tag)) continue;
            Tag fallback = keep_tag();
            if (is_g(tag)) {
                auto produced = apply_g(out.tokens[i], tag, std::nullopt, dict, nouns);
                if (produced && produced->size() == 1 && vocab->contains(replace_tag((*produced)[0])))
                    fallback = replace_tag((*produced)[0]);
            }
            tag = fallback;
            out.uncovered += 1;
            out.residual = true;
        }
    }
    return out;
}

enum class CoverageMode { BasicOnly, All };

struct CoverageRow {
    size_t vocab_size;
    double fraction;
};

// Share of non-KEEP gold edits whose tag fits in a vocabulary of each given
// size. The gold edits are derived once with the full inventory; the mode
// only decides which tags the vocabulary can hold. Both modes rank
// token-dependent APPEND/REPLACE tags into the slots left after the fixed
// block, so the basic-only membership is a strict subset of the all-mode
// membership at equal size and the mode/size orderings below are exact.
inline std::vector<CoverageRow> coverage(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs,
    const std::vector<size_t>& vocab_sizes, CoverageMode mode, const VerbDictionary& dict,
    const NounExceptionTable& nouns) {
    if (pairs.empty()) throw EmptyCorpus("coverage needs at least one sentence pair");
    const bool allow_g = mode == CoverageMode::All;

    std::unordered_map<Tag, uint64_t, TagHash> edits;
    for (const auto& [src, tgt] : pairs) {
        if (src.empty()) continue;
        TokenMapping mapping = map_tokens(src, tgt, dict, nouns);
        for (const auto& list : transformation_lists(src, mapping, dict, nouns))
            for (const auto& tag : list.tags)
                if (tag != keep_tag()) edits[tag] += 1;
    }

    uint64_t total = 0;
    for (const auto& [tag, n] : edits) total += n;

    std::vector<std::pair<Tag, uint64_t>> ranked;
    for (const auto& [tag, n] : edits)
        if (tag.core == Core::Append || tag.core == Core::Replace) ranked.push_back({tag, n});
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return render(a.first) < render(b.first);
    });

    std::vector<CoverageRow> rows;
    for (size_t size : vocab_sizes) {
        if (size < TagVocabulary::kMinSize)
            throw SizeTooSmall(std::to_string(size) + " < " +
                               std::to_string(TagVocabulary::kMinSize));
        std::unordered_map<Tag, bool, TagHash> member;
        member[delete_tag()] = true;
        if (allow_g)
            for (const auto& g : g_transformation_inventory()) member[g] = true;
        const size_t slots = size - TagVocabulary::kMinSize;
        for (size_t r = 0; r < ranked.size() && r < slots; ++r) member[ranked[r].first] = true;

        uint64_t covered = 0;
        for (const auto& [tag, n] : edits)
            if (member.count(tag)) covered += n;
        rows.push_back({size, total == 0 ? 1.0 : static_cast<double>(covered) / total});
    }
    return rows;
}

}  // namespace edittag
