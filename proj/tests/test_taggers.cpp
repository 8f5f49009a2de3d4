#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "test_util.hpp"

using namespace edittag;
using testutil::nouns;
using testutil::toks;
using testutil::verbs;

TEST_CASE("oracle predictions are one-hot rows toward the reference") {
    auto src = toks("citizens go");
    auto tgt = toks("citizen goes");
    std::vector<SentencePair> pairs = {{src, tgt}};
    TagVocabulary vocab = testutil::vocab_for(pairs);
    OracleTagger tagger(tgt, vocab, verbs(), nouns());

    PredictionMatrix m = tagger.predict(src);
    REQUIRE(m.tag_probs.size() == 2);
    CHECK(m.vocab_checksum == vocab.checksum());
    for (const auto& row : m.tag_probs) {
        double sum = 0.0;
        int ones = 0;
        for (double p : row) {
            sum += p;
            if (p == 1.0) ++ones;
        }
        CHECK(sum == 1.0);
        CHECK(ones == 1);
    }
    CHECK(m.tag_probs[0][*vocab.id_of(parse_tag("$NOUN_NUMBER_SINGULAR"))] == 1.0);
    CHECK(m.tag_probs[1][*vocab.id_of(parse_tag("$VERB_FORM_VB_VBZ"))] == 1.0);
    CHECK(m.error_probs == std::vector<double>{1.0, 1.0});
    CHECK(m.sentence_error_prob == 1.0);

    // clean tokens carry zero error probability
    m = tagger.predict(tgt);
    CHECK(m.error_probs == std::vector<double>{0.0, 0.0});
    CHECK(m.sentence_error_prob == 0.0);
}

TEST_CASE("corpus oracle keys by source and falls back for intermediates") {
    std::vector<SentencePair> pairs = {
        {toks("he go home"), toks("he goes home .")},
        {toks("she like cats"), toks("she likes cats")},
    };
    TagVocabulary vocab = testutil::vocab_for(pairs);
    OracleTagger tagger(pairs, vocab, verbs(), nouns());

    // exact source hit
    PredictionMatrix m = tagger.predict(toks("she like cats"));
    CHECK(m.sentence_error_prob == 1.0);

    // an intermediate sentence (not a key) reuses the active reference
    m = tagger.predict(toks("she likes cats"));
    CHECK(m.sentence_error_prob == 0.0);

    // with no sentence matched yet there is nothing to align against
    OracleTagger fresh(pairs, vocab, verbs(), nouns());
    CHECK_THROWS_AS(fresh.predict(toks("never seen before")), MissingReference);
}

TEST_CASE("unigram training counts collapsed tags per token") {
    std::vector<SentencePair> pairs = {
        {toks("go home"), toks("go home")},
        {toks("go home"), toks("go home")},
        {toks("go home"), toks("go home")},
        {toks("go home"), toks("home")},
    };
    TagVocabulary vocab = testutil::vocab_for(pairs);
    UnigramModel model = train_unigram(pairs, vocab, verbs(), nouns());
    REQUIRE(model.counts.count("go"));
    CHECK(model.counts["go"]["$KEEP"] == 3);
    CHECK(model.counts["go"]["$DELETE"] == 1);
    CHECK(model.counts["home"]["$KEEP"] == 4);

    // 3 KEEP + 1 DELETE, one smoothing count on KEEP: 4/5 and 1/5
    PredictionMatrix m = predict_unigram(model, toks("go"), vocab);
    CHECK(m.tag_probs[0][vocab.keep_id()] == Catch::Approx(0.8));
    CHECK(m.tag_probs[0][*vocab.id_of(delete_tag())] == Catch::Approx(0.2));
    CHECK(m.error_probs[0] == Catch::Approx(0.2));

    // unseen tokens are KEEP outright
    m = predict_unigram(model, toks("unseen"), vocab);
    CHECK(m.tag_probs[0][vocab.keep_id()] == 1.0);
    CHECK(m.error_probs[0] == 0.0);

    CHECK_THROWS_AS(train_unigram({}, vocab, verbs(), nouns()), EmptyCorpus);
}

TEST_CASE("unigram rows are proper distributions") {
    std::vector<SentencePair> pairs = {
        {toks("a b a"), toks("a c a")},
        {toks("a b"), toks("a b")},
    };
    TagVocabulary vocab = testutil::vocab_for(pairs);
    UnigramModel model = train_unigram(pairs, vocab, verbs(), nouns());
    PredictionMatrix m = predict_unigram(model, toks("a b never"), vocab);
    for (const auto& row : m.tag_probs) {
        double sum = 0.0;
        for (double p : row) sum += p;
        CHECK(sum == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("unigram models round-trip through their text format") {
    std::vector<SentencePair> pairs = {{toks("go home now"), toks("goes home now .")}};
    TagVocabulary vocab = testutil::vocab_for(pairs);
    UnigramModel model = train_unigram(pairs, vocab, verbs(), nouns());

    std::stringstream buffer;
    save_unigram(buffer, model);
    UnigramModel reloaded = load_unigram(buffer);
    CHECK(reloaded.counts == model.counts);

    std::stringstream missing_field("go\t$KEEP\n");
    CHECK_THROWS_AS(load_unigram(missing_field), MalformedEntry);
    std::stringstream bad_tag("go\tKEEP\t3\n");
    CHECK_THROWS_AS(load_unigram(bad_tag), MalformedEntry);
    std::stringstream bad_count("go\t$KEEP\tlots\n");
    CHECK_THROWS_AS(load_unigram(bad_count), MalformedEntry);
}

TEST_CASE("file tagger replays a prediction stream") {
    TagVocabulary vocab = TagVocabulary::build({}, 33);
    std::vector<double> keep_row(vocab.size(), 0.0);
    keep_row[0] = 1.0;

    PredictionMatrix first;
    first.tokens = toks("a b");
    first.tag_probs = {keep_row, keep_row};
    first.error_probs = {0.0, 0.0};
    first.vocab_checksum = vocab.checksum();
    PredictionMatrix second = first;
    second.tokens = toks("c");
    second.tag_probs = {keep_row};
    second.error_probs = {0.0};

    std::stringstream file;
    write_prediction(file, first);
    write_prediction(file, second);

    FileTagger tagger({&file}, vocab);
    CHECK(tagger.predict(toks("a b")).tokens == toks("a b"));
    CHECK(tagger.predict(toks("c")).tokens == toks("c"));
    CHECK_THROWS_AS(tagger.predict(toks("d")), ExhaustedStream);
}

TEST_CASE("file tagger rejects records for a different sentence") {
    TagVocabulary vocab = TagVocabulary::build({}, 33);
    std::vector<double> keep_row(vocab.size(), 0.0);
    keep_row[0] = 1.0;
    PredictionMatrix m;
    m.tokens = toks("a b");
    m.tag_probs = {keep_row, keep_row};
    m.error_probs = {0.0, 0.0};
    m.vocab_checksum = vocab.checksum();

    std::stringstream file;
    write_prediction(file, m);
    FileTagger tagger({&file}, vocab);
    CHECK_THROWS_AS(tagger.predict(toks("something else")), ShapeMismatch);
}

TEST_CASE("file tagger ensembles multiple streams") {
    TagVocabulary vocab = TagVocabulary::build({}, 33);
    auto row_with = [&](double keep, int other_id, double other) {
        std::vector<double> row(vocab.size(), 0.0);
        row[0] = keep;
        row[other_id] = other;
        return row;
    };

    PredictionMatrix a, b;
    a.tokens = b.tokens = toks("x");
    a.vocab_checksum = b.vocab_checksum = vocab.checksum();
    a.tag_probs = {row_with(0.6, 1, 0.4)};
    a.error_probs = {0.4};
    a.sentence_error_prob = 0.4;
    b.tag_probs = {row_with(0.2, 1, 0.8)};
    b.error_probs = {0.8};
    b.sentence_error_prob = 0.8;

    std::stringstream fa, fb;
    write_prediction(fa, a);
    write_prediction(fb, b);

    FileTagger tagger({&fa, &fb}, vocab);
    PredictionMatrix avg = tagger.predict(toks("x"));
    CHECK(avg.tag_probs[0][0] == Catch::Approx(0.4));
    CHECK(avg.tag_probs[0][1] == Catch::Approx(0.6));
    CHECK(avg.sentence_error_prob == Catch::Approx(0.6));
}
