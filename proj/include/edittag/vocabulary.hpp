#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "edittag/errors.hpp"
#include "edittag/strings.hpp"
#include "edittag/tag.hpp"

namespace edittag {

// Closed, indexed tag set. Layout is fixed: ids 0..3 are KEEP, DELETE,
// UNKNOWN, PADDING; ids 4..32 are the 29 grammatical transformations in
// inventory order; the remaining slots hold APPEND/REPLACE tags ranked by
// corpus frequency (ties broken by rendered string). Immutable once built.
class TagVocabulary {
  public:
    static constexpr int kReservedCount = 4;
    static constexpr int kMinSize = 33;  // 4 reserved + 29 g-transformations

    static TagVocabulary build(const std::unordered_map<Tag, uint64_t, TagHash>& counts,
                               size_t size) {
        if (size < kMinSize)
            throw SizeTooSmall(std::to_string(size) + " < " + std::to_string(kMinSize));
        TagVocabulary v;
        v.push(keep_tag());
        v.push(delete_tag());
        v.push(unknown_tag());
        v.push(padding_tag());
        for (const auto& g : g_transformation_inventory()) v.push(g);

        std::vector<std::pair<Tag, uint64_t>> ranked;
        for (const auto& [tag, n] : counts)
            if (tag.core == Core::Append || tag.core == Core::Replace)
                ranked.push_back({tag, n});
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return render(a.first) < render(b.first);
        });
        for (const auto& [tag, n] : ranked) {
            (void)n;
            if (v.tags_.size() >= size) break;
            v.push(tag);
        }
        return v;
    }

    static TagVocabulary load(std::istream& in) {
        TagVocabulary v;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            Tag t = parse_tag(line);  // throws with the offending text
            if (v.index_.count(t))
                throw MalformedEntry("vocabulary line " + std::to_string(lineno) +
                                     ": duplicate tag " + line);
            v.push(t);
        }
        for (const Tag& t : {keep_tag(), delete_tag(), unknown_tag(), padding_tag()})
            if (!v.contains(t))
                throw MalformedEntry("vocabulary is missing reserved tag " + render(t));
        for (const auto& g : g_transformation_inventory())
            if (!v.contains(g))
                throw MalformedEntry("vocabulary is missing " + render(g));
        return v;
    }

    void save(std::ostream& out) const {
        for (const auto& t : tags_) out << render(t) << '\n';
    }

    size_t size() const { return tags_.size(); }
    const std::vector<Tag>& tags() const { return tags_; }
    const Tag& tag_at(size_t id) const { return tags_.at(id); }
    bool contains(const Tag& t) const { return index_.count(t) != 0; }

    std::optional<int> id_of(const Tag& t) const {
        auto it = index_.find(t);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int keep_id() const { return *id_of(keep_tag()); }

    // Fingerprint of the rendered tag list; embedded in prediction records to
    // catch id-space mismatches between a tagger and the decoder.
    std::string checksum() const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (const auto& t : tags_) h = fnv1a64(render(t) + "\n", h);
        return hex64(h);
    }

  private:
    void push(const Tag& t) {
        index_[t] = static_cast<int>(tags_.size());
        tags_.push_back(t);
    }

    std::vector<Tag> tags_;
    std::unordered_map<Tag, int, TagHash> index_;
};

inline TagVocabulary build_vocabulary(const std::unordered_map<Tag, uint64_t, TagHash>& counts,
                                      size_t size) {
    return TagVocabulary::build(counts, size);
}

// Count file: TSV "rendered_tag<TAB>frequency", one per line.
inline std::unordered_map<Tag, uint64_t, TagHash> load_tag_counts(std::istream& in) {
    std::unordered_map<Tag, uint64_t, TagHash> counts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw MalformedEntry("counts line " + std::to_string(lineno) + ": expected TSV");
        Tag t = parse_tag(line.substr(0, tab));
        uint64_t n = 0;
        try {
            n = std::stoull(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw MalformedEntry("counts line " + std::to_string(lineno) + ": bad frequency");
        }
        counts[t] += n;
    }
    return counts;
}

inline void save_tag_counts(std::ostream& out,
                            const std::unordered_map<Tag, uint64_t, TagHash>& counts) {
    // Sorted for reproducible output.
    std::map<std::string, uint64_t> rows;
    for (const auto& [tag, n] : counts) rows[render(tag)] += n;
    for (const auto& [text, n] : rows) out << text << '\t' << n << '\n';
}

}  // namespace edittag
