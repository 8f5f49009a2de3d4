#pragma once

#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "edittag/alignment.hpp"
#include "edittag/decoder.hpp"
#include "edittag/errors.hpp"
#include "edittag/morphology.hpp"
#include "edittag/strings.hpp"
#include "edittag/vocabulary.hpp"
#include "edittag/wire.hpp"

namespace edittag {

// Tag counts over a corpus, from the full per-token transformation lists.
inline std::unordered_map<Tag, uint64_t, TagHash> count_tags(
    const std::vector<SentencePair>& pairs, const VerbDictionary& dict,
    const NounExceptionTable& nouns) {
    std::unordered_map<Tag, uint64_t, TagHash> counts;
    for (const auto& [src, tgt] : pairs) {
        if (src.empty()) continue;
        TokenMapping mapping = map_tokens(src, tgt, dict, nouns);
        for (const auto& list : transformation_lists(src, mapping, dict, nouns))
            for (const auto& tag : list.tags) counts[tag] += 1;
    }
    return counts;
}

// A vocabulary sized to hold every APPEND/REPLACE tag the corpus needs.
inline TagVocabulary vocabulary_for_pairs(const std::vector<SentencePair>& pairs,
                                          const VerbDictionary& dict,
                                          const NounExceptionTable& nouns) {
    auto counts = count_tags(pairs, dict, nouns);
    size_t open = 0;
    for (const auto& [tag, n] : counts)
        if (tag.core == Core::Append || tag.core == Core::Replace) ++open;
    return build_vocabulary(counts, TagVocabulary::kMinSize + open);
}

namespace detail {

// One-hot prediction for a fixed tag sequence.
inline PredictionMatrix one_hot_matrix(const std::vector<std::string>& tokens,
                                       const std::vector<Tag>& tags, const TagVocabulary& vocab) {
    PredictionMatrix m;
    m.tokens = tokens;
    m.vocab_checksum = vocab.checksum();
    for (size_t i = 0; i < tokens.size(); ++i) {
        std::vector<double> row(vocab.size(), 0.0);
        auto id = vocab.id_of(tags[i]);
        row[id ? *id : vocab.keep_id()] = 1.0;
        m.tag_probs.push_back(std::move(row));
        const bool edit = tags[i] != keep_tag();
        m.error_probs.push_back(edit ? 1.0 : 0.0);
        if (edit) m.sentence_error_prob = 1.0;
    }
    return m;
}

}  // namespace detail

// Tags any sentence with the transformations that lead towards a fixed
// reference, by realigning against it on every call. The corpus form keys
// references by source sentence and falls back to the last matched reference
// for the intermediate sentences an iteration loop produces.
class OracleTagger : public Tagger {
  public:
    OracleTagger(std::vector<std::string> target, TagVocabulary vocab,
                 const VerbDictionary& dict, const NounExceptionTable& nouns)
        : vocab_(std::move(vocab)), dict_(dict), nouns_(nouns) {
        active_ = std::move(target);
        have_active_ = true;
    }

    OracleTagger(const std::vector<SentencePair>& pairs, TagVocabulary vocab,
                 const VerbDictionary& dict, const NounExceptionTable& nouns)
        : vocab_(std::move(vocab)), dict_(dict), nouns_(nouns) {
        for (const auto& [src, tgt] : pairs) references_[join(src, " ")] = tgt;
    }

    const TagVocabulary& vocabulary() const override { return vocab_; }

    PredictionMatrix predict(const std::vector<std::string>& tokens) override {
        auto hit = references_.find(join(tokens, " "));
        if (hit != references_.end()) {
            active_ = hit->second;
            have_active_ = true;
        } else if (!have_active_) {
            throw MissingReference("no reference for: " + join(tokens, " "));
        }
        TaggedSentence ts = preprocess_pair(tokens, active_, &vocab_, dict_, nouns_);
        return detail::one_hot_matrix(tokens, ts.tags, vocab_);
    }

  private:
    TagVocabulary vocab_;
    const VerbDictionary& dict_;
    const NounExceptionTable& nouns_;
    std::unordered_map<std::string, std::vector<std::string>> references_;
    std::vector<std::string> active_;
    bool have_active_ = false;
};

// Per-token tag frequencies. Deliberately context-free: the point is a
// cheap, fully reproducible stand-in for a learned tagger.
struct UnigramModel {
    // token -> rendered tag -> count; ordered for stable serialisation
    std::map<std::string, std::map<std::string, uint64_t>> counts;
};

inline UnigramModel train_unigram(const std::vector<SentencePair>& pairs,
                                  const TagVocabulary& vocab, const VerbDictionary& dict,
                                  const NounExceptionTable& nouns) {
    if (pairs.empty()) throw EmptyCorpus("unigram training needs sentence pairs");
    UnigramModel model;
    for (const auto& [src, tgt] : pairs) {
        TaggedSentence ts = preprocess_pair(src, tgt, &vocab, dict, nouns);
        for (size_t i = 0; i < ts.tokens.size(); ++i)
            model.counts[ts.tokens[i]][render(ts.tags[i])] += 1;
    }
    return model;
}

// Relative tag frequencies per token, with one extra KEEP count so KEEP is
// never impossible; unseen tokens predict KEEP outright.
inline PredictionMatrix predict_unigram(const UnigramModel& model,
                                        const std::vector<std::string>& tokens,
                                        const TagVocabulary& vocab) {
    PredictionMatrix m;
    m.tokens = tokens;
    m.vocab_checksum = vocab.checksum();
    for (const auto& token : tokens) {
        std::vector<double> row(vocab.size(), 0.0);
        auto seen = model.counts.find(token);
        if (seen == model.counts.end()) {
            row[vocab.keep_id()] = 1.0;
        } else {
            uint64_t total = 1;  // the smoothing count on KEEP
            for (const auto& [rendered, n] : seen->second) total += n;
            row[vocab.keep_id()] = 1.0 / static_cast<double>(total);
            for (const auto& [rendered, n] : seen->second) {
                auto id = vocab.id_of(parse_tag(rendered));
                row[id ? *id : vocab.keep_id()] +=
                    static_cast<double>(n) / static_cast<double>(total);
            }
        }
        m.error_probs.push_back(1.0 - row[vocab.keep_id()]);
        m.sentence_error_prob = std::max(m.sentence_error_prob, m.error_probs.back());
        m.tag_probs.push_back(std::move(row));
    }
    return m;
}

inline void save_unigram(std::ostream& out, const UnigramModel& model) {
    for (const auto& [token, tags] : model.counts)
        for (const auto& [rendered, n] : tags)
            out << token << '\t' << rendered << '\t' << n << '\n';
}

inline UnigramModel load_unigram(std::istream& in) {
    UnigramModel model;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_on(line, '\t');
        uint64_t n = 0;
        if (fields.size() == 3 && !fields[0].empty()) {
            try {
                parse_tag(fields[1]);
                n = std::stoull(fields[2]);
            } catch (const std::exception&) {
                n = 0;
            }
        }
        if (n == 0)
            throw MalformedEntry("unigram model line " + std::to_string(line_no) + ": " + line);
        model.counts[fields[0]][fields[1]] += n;
    }
    return model;
}

class UnigramTagger : public Tagger {
  public:
    UnigramTagger(UnigramModel model, TagVocabulary vocab)
        : model_(std::move(model)), vocab_(std::move(vocab)) {}

    const TagVocabulary& vocabulary() const override { return vocab_; }

    PredictionMatrix predict(const std::vector<std::string>& tokens) override {
        return predict_unigram(model_, tokens, vocab_);
    }

  private:
    UnigramModel model_;
    TagVocabulary vocab_;
};

// Replays precomputed predictions from one or more JSONL streams, one record
// per sentence in order; multiple streams are ensembled. Only suitable for
// single-pass decoding: records must line up with the sentences exactly as
// they are queried.
class FileTagger : public Tagger {
  public:
    FileTagger(std::vector<std::istream*> streams, TagVocabulary vocab)
        : streams_(std::move(streams)), vocab_(std::move(vocab)) {}

    const TagVocabulary& vocabulary() const override { return vocab_; }

    PredictionMatrix predict(const std::vector<std::string>& tokens) override {
        std::vector<PredictionMatrix> member;
        for (std::istream* stream : streams_) {
            std::string line;
            do {
                ++line_no_;
                if (!std::getline(*stream, line)) throw ExhaustedStream("no prediction left for: " + join(tokens, " "));
            } while (line.empty());
            member.push_back(parse_prediction(line, vocab_, line_no_));
        }
        PredictionMatrix m = member.size() == 1 ? std::move(member[0]) : ensemble_average(member);
        if (m.tokens != tokens)
            throw ShapeMismatch("prediction tokens differ from the sentence being tagged");
        return m;
    }

  private:
    std::vector<std::istream*> streams_;
    TagVocabulary vocab_;
    size_t line_no_ = 0;
};

}  // namespace edittag
