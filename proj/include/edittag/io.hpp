#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "edittag/alignment.hpp"
#include "edittag/errors.hpp"
#include "edittag/strings.hpp"
#include "edittag/tag.hpp"

namespace edittag {

inline std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

// One whitespace-tokenised sentence per line.
inline std::vector<std::vector<std::string>> read_token_lines(std::istream& in) {
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) out.push_back(split_ws(strip_cr(line)));
    return out;
}

// TSV with one pair per line: source sentence, tab, target sentence.
inline std::vector<SentencePair> read_pairs_tsv(std::istream& in) {
    std::vector<SentencePair> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw MalformedEntry("pairs line " + std::to_string(line_no) +
                                 ": expected source<TAB>target");
        out.push_back({split_ws(line.substr(0, tab)), split_ws(line.substr(tab + 1))});
    }
    return out;
}

// Two parallel files, one sentence per line.
inline std::vector<SentencePair> read_parallel(std::istream& src_in, std::istream& tgt_in) {
    auto src = read_token_lines(src_in);
    auto tgt = read_token_lines(tgt_in);
    if (src.size() != tgt.size())
        throw LengthMismatch("source has " + std::to_string(src.size()) + " lines, target " +
                             std::to_string(tgt.size()));
    std::vector<SentencePair> out;
    for (size_t i = 0; i < src.size(); ++i) out.push_back({std::move(src[i]), std::move(tgt[i])});
    return out;
}

// Tagged sentences as TSV blocks: a "#residual=..." header line, one
// token<TAB>tag line per token, and a blank line ending the block.
inline void write_tagged(std::ostream& out, const TaggedSentence& ts) {
    out << "#residual=" << (ts.residual ? "true" : "false") << '\n';
    for (size_t i = 0; i < ts.tokens.size(); ++i)
        out << ts.tokens[i] << '\t' << render(ts.tags[i]) << '\n';
    out << '\n';
}

inline std::vector<TaggedSentence> read_tagged(std::istream& in) {
    std::vector<TaggedSentence> out;
    TaggedSentence current;
    bool open = false;
    std::string line;
    size_t line_no = 0;
    auto flush = [&] {
        if (open) out.push_back(std::move(current));
        current = {};
        open = false;
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            flush();
            continue;
        }
        if (line.rfind("#residual=", 0) == 0) {
            flush();
            const std::string value = line.substr(10);
            if (value != "true" && value != "false")
                throw MalformedEntry("tagged line " + std::to_string(line_no) +
                                     ": residual must be true or false");
            current.residual = value == "true";
            open = true;
            continue;
        }
        if (!open)
            throw MalformedEntry("tagged line " + std::to_string(line_no) +
                                 ": token line before #residual header");
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw MalformedEntry("tagged line " + std::to_string(line_no) +
                                 ": expected token<TAB>tag");
        current.tokens.push_back(line.substr(0, tab));
        current.tags.push_back(parse_tag(line.substr(tab + 1)));
    }
    flush();
    return out;
}

}  // namespace edittag
