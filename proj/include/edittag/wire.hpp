#pragma once

#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "edittag/decoder.hpp"
#include "edittag/errors.hpp"
#include "edittag/strings.hpp"
#include "edittag/vocabulary.hpp"

namespace edittag {

// One prediction per line as JSON: tokens, tag_probs (tokens x vocab), and
// optionally error_probs (default 1 - P(KEEP)) and sentence_error_prob
// (default max of error_probs). vocab_checksum pins the vocabulary the
// probabilities are indexed by.

inline constexpr double kRowSumTolerance = 1e-6;

inline PredictionMatrix parse_prediction(const std::string& line, const TagVocabulary& vocab,
                                         size_t line_no = 0) {
    auto where = [&] { return line_no ? " (line " + std::to_string(line_no) + ")" : ""; };
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedRecord(std::string(e.what()) + where());
    }
    if (!j.is_object() || !j.contains("tokens") || !j.contains("tag_probs") ||
        !j.contains("vocab_checksum"))
        throw MalformedRecord("record needs tokens, tag_probs and vocab_checksum" + where());

    PredictionMatrix m;
    try {
        m.tokens = j.at("tokens").get<std::vector<std::string>>();
        m.tag_probs = j.at("tag_probs").get<std::vector<std::vector<double>>>();
        if (j.contains("error_probs"))
            m.error_probs = j.at("error_probs").get<std::vector<double>>();
        if (j.contains("sentence_error_prob"))
            m.sentence_error_prob = j.at("sentence_error_prob").get<double>();
        m.vocab_checksum = j.at("vocab_checksum").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedRecord(std::string(e.what()) + where());
    }

    if (m.vocab_checksum != vocab.checksum())
        throw ChecksumMismatch("prediction written for a different vocabulary" + where());
    if (m.tag_probs.size() != m.tokens.size())
        throw MalformedRecord("row count differs from token count" + where());
    for (const auto& row : m.tag_probs) {
        if (row.size() != vocab.size())
            throw MalformedRecord("row width differs from vocabulary size" + where());
        double sum = 0.0;
        for (double p : row) sum += p;
        if (std::fabs(sum - 1.0) > kRowSumTolerance)
            throw MalformedRecord("row probabilities sum to " + std::to_string(sum) + where());
    }
    if (j.contains("error_probs")) {
        if (m.error_probs.size() != m.tokens.size())
            throw MalformedRecord("error_probs length differs from token count" + where());
    } else {
        m.error_probs.reserve(m.tokens.size());
        for (const auto& row : m.tag_probs) m.error_probs.push_back(1.0 - row[vocab.keep_id()]);
    }
    if (!j.contains("sentence_error_prob")) {
        m.sentence_error_prob = 0.0;
        for (double p : m.error_probs) m.sentence_error_prob = std::max(m.sentence_error_prob, p);
    }
    return m;
}

inline void write_prediction(std::ostream& out, const PredictionMatrix& m) {
    nlohmann::json j;
    j["tokens"] = m.tokens;
    j["tag_probs"] = m.tag_probs;
    j["error_probs"] = m.error_probs;
    j["sentence_error_prob"] = m.sentence_error_prob;
    j["vocab_checksum"] = m.vocab_checksum;
    out << j.dump() << '\n';
}

inline std::vector<PredictionMatrix> read_predictions(std::istream& in,
                                                      const TagVocabulary& vocab) {
    std::vector<PredictionMatrix> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        out.push_back(parse_prediction(line, vocab, line_no));
    }
    return out;
}

}  // namespace edittag
