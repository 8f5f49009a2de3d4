#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <unordered_set>

#include "test_util.hpp"

using namespace edittag;

TEST_CASE("inventory has 29 transformations in fixed order") {
    const auto& inv = g_transformation_inventory();
    REQUIRE(inv.size() == 29);

    CHECK(render(inv[0]) == "$CASE_CAPITAL");
    CHECK(render(inv[1]) == "$CASE_CAPITAL_1");
    CHECK(render(inv[2]) == "$CASE_LOWER");
    CHECK(render(inv[3]) == "$CASE_UPPER");
    CHECK(render(inv[4]) == "$MERGE_SPACE");
    CHECK(render(inv[5]) == "$MERGE_HYPHEN");
    CHECK(render(inv[6]) == "$SPLIT_HYPHEN");
    CHECK(render(inv[7]) == "$NOUN_NUMBER_SINGULAR");
    CHECK(render(inv[8]) == "$NOUN_NUMBER_PLURAL");
    CHECK(render(inv[9]) == "$VERB_FORM_VB_VBZ");
    // row-major over the code list means the 14th slot crosses into the
    // VBZ-source block
    CHECK(render(inv[13]) == "$VERB_FORM_VBZ_VB");
    CHECK(render(inv[28]) == "$VERB_FORM_VBG_VBD");

    std::unordered_set<std::string> seen;
    int verb_forms = 0;
    for (const auto& t : inv) {
        CHECK(seen.insert(render(t)).second);
        if (t.core == Core::VerbForm) ++verb_forms;
    }
    CHECK(verb_forms == 20);
}

TEST_CASE("every inventory tag and reserved tag round-trips through text") {
    for (const auto& t : g_transformation_inventory()) CHECK(parse_tag(render(t)) == t);
    for (const auto& t : {keep_tag(), delete_tag(), unknown_tag(), padding_tag(),
                          append_tag("to"), replace_tag("Internet"), append_tag("$"),
                          replace_tag("a_b_c")})
        CHECK(parse_tag(render(t)) == t);
}

TEST_CASE("parse_tag rejects malformed text") {
    CHECK_THROWS_AS(parse_tag(""), MalformedTag);
    CHECK_THROWS_AS(parse_tag("KEEP"), MalformedTag);
    CHECK_THROWS_AS(parse_tag("$"), MalformedTag);
    CHECK_THROWS_AS(parse_tag("$APPEND"), MalformedTag);
    CHECK_THROWS_AS(parse_tag("$APPEND_"), MalformedTag);
    CHECK_THROWS_AS(parse_tag("$REPLACE_"), MalformedTag);
    CHECK_THROWS_AS(parse_tag("$keep"), MalformedTag);
    CHECK_THROWS_AS(parse_tag("$SOMETHING_ELSE"), MalformedTag);
}

TEST_CASE("parse_tag rejects unknown grammatical suffixes") {
    CHECK_THROWS_AS(parse_tag("$CASE_TITLE"), UnknownGTransformation);
    CHECK_THROWS_AS(parse_tag("$MERGE_UNDERSCORE"), UnknownGTransformation);
    CHECK_THROWS_AS(parse_tag("$SPLIT_SPACE"), UnknownGTransformation);
    CHECK_THROWS_AS(parse_tag("$NOUN_NUMBER_DUAL"), UnknownGTransformation);
    CHECK_THROWS_AS(parse_tag("$VERB_FORM_VB_VB"), UnknownGTransformation);
    CHECK_THROWS_AS(parse_tag("$VERB_FORM_VB_XYZ"), UnknownGTransformation);
}

TEST_CASE("vocabulary layout: reserved block, inventory block, ranked tail") {
    std::unordered_map<Tag, uint64_t, TagHash> counts;
    counts[append_tag("the")] = 10;
    counts[replace_tag("the")] = 10;
    counts[append_tag(",")] = 25;
    counts[replace_tag("rare")] = 1;
    counts[keep_tag()] = 999;        // non-rankable cores are ignored
    counts[delete_tag()] = 999;
    counts[{Core::Case, "LOWER"}] = 999;

    TagVocabulary v = TagVocabulary::build(counts, 36);
    REQUIRE(v.size() == 36);
    CHECK(v.tag_at(0) == keep_tag());
    CHECK(v.tag_at(1) == delete_tag());
    CHECK(v.tag_at(2) == unknown_tag());
    CHECK(v.tag_at(3) == padding_tag());
    for (int i = 0; i < 29; ++i) CHECK(v.tag_at(4 + i) == g_transformation_inventory()[i]);
    CHECK(v.tag_at(33) == append_tag(","));
    // tie on count: rendered "$APPEND_the" sorts before "$REPLACE_the"
    CHECK(v.tag_at(34) == append_tag("the"));
    CHECK(v.tag_at(35) == replace_tag("the"));
    CHECK_FALSE(v.contains(replace_tag("rare")));

    CHECK(v.keep_id() == 0);
    CHECK(v.id_of(append_tag(",")) == 33);
    CHECK_FALSE(v.id_of(replace_tag("rare")).has_value());
}

TEST_CASE("vocabulary membership is monotone in size") {
    std::unordered_map<Tag, uint64_t, TagHash> counts;
    for (int i = 0; i < 40; ++i) counts[append_tag("w" + std::to_string(i))] = 40 - i;

    TagVocabulary small = TagVocabulary::build(counts, 40);
    TagVocabulary large = TagVocabulary::build(counts, 60);
    for (size_t id = 0; id < small.size(); ++id) {
        CHECK(large.contains(small.tag_at(id)));
        CHECK(large.tag_at(id) == small.tag_at(id));
    }
}

TEST_CASE("vocabulary rejects undersized requests and truncates over-asks") {
    std::unordered_map<Tag, uint64_t, TagHash> counts;
    counts[append_tag("x")] = 1;
    CHECK_THROWS_AS(TagVocabulary::build(counts, 32), SizeTooSmall);
    CHECK(TagVocabulary::build(counts, 33).size() == 33);
    // only one rankable tag available, so the asked-for 40 slots cap at 34
    CHECK(TagVocabulary::build(counts, 40).size() == 34);
}

TEST_CASE("vocabulary save/load round-trip preserves ids and checksum") {
    std::unordered_map<Tag, uint64_t, TagHash> counts;
    counts[append_tag("to")] = 3;
    counts[replace_tag("The")] = 2;
    TagVocabulary v = TagVocabulary::build(counts, 35);

    std::stringstream buffer;
    v.save(buffer);
    TagVocabulary reloaded = TagVocabulary::load(buffer);
    REQUIRE(reloaded.size() == v.size());
    for (size_t id = 0; id < v.size(); ++id) CHECK(reloaded.tag_at(id) == v.tag_at(id));
    CHECK(reloaded.checksum() == v.checksum());

    TagVocabulary other = TagVocabulary::build({}, 33);
    CHECK(other.checksum() != v.checksum());
}

TEST_CASE("vocabulary load validates structure") {
    std::stringstream missing("$KEEP\n$DELETE\n$UNKNOWN\n$PADDING\n");
    CHECK_THROWS_AS(TagVocabulary::load(missing), MalformedEntry);

    TagVocabulary v = TagVocabulary::build({}, 33);
    std::stringstream buffer;
    v.save(buffer);
    buffer << "$KEEP\n";  // duplicate
    CHECK_THROWS_AS(TagVocabulary::load(buffer), MalformedEntry);

    std::stringstream garbage("not a tag\n");
    CHECK_THROWS_AS(TagVocabulary::load(garbage), MalformedTag);
}

TEST_CASE("tag count files round-trip and reject junk") {
    std::unordered_map<Tag, uint64_t, TagHash> counts;
    counts[append_tag("to")] = 7;
    counts[keep_tag()] = 120;
    std::stringstream buffer;
    save_tag_counts(buffer, counts);
    auto reloaded = load_tag_counts(buffer);
    CHECK(reloaded == counts);

    std::stringstream no_tab("$KEEP 5\n");
    CHECK_THROWS_AS(load_tag_counts(no_tab), MalformedEntry);
    std::stringstream bad_count("$KEEP\tmany\n");
    CHECK_THROWS_AS(load_tag_counts(bad_count), MalformedEntry);
}
