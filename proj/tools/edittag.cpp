// Command line front end: vocabulary construction, corpus preprocessing,
// tag application, iterative correction, ensembling and span-level scoring,
// all over the plain text formats described in the README.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edittag/edittag.hpp"

namespace {

using namespace edittag;

// A flag combination the parser cannot express (e.g. a tagger that needs a
// flag another tagger does not). Distinct from data errors: exits 1, not 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedEntry("cannot open " + path);
    return in;
}

// "-" means stdout.
class OutputFile {
  public:
    explicit OutputFile(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw MalformedEntry("cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

struct CorpusArgs {
    std::string pairs, source, target;

    void attach(CLI::App* cmd) {
        cmd->add_option("--pairs", pairs, "TSV file: source<TAB>target per line");
        cmd->add_option("--source", source, "source sentences, one per line");
        cmd->add_option("--target", target, "target sentences, one per line");
    }

    std::vector<SentencePair> load() const {
        if (!pairs.empty()) {
            auto in = open_input(pairs);
            return read_pairs_tsv(in);
        }
        if (source.empty() || target.empty())
            throw UsageError("provide --pairs or both --source and --target");
        auto src_in = open_input(source);
        auto tgt_in = open_input(target);
        return read_parallel(src_in, tgt_in);
    }
};

struct MorphArgs {
    std::string verb_dict, nouns;

    void attach(CLI::App* cmd) {
        cmd->add_option("--verb-dict", verb_dict, "verb form transition file");
        cmd->add_option("--nouns", nouns, "irregular noun TSV");
    }

    VerbDictionary load_verbs() const {
        VerbDictionary dict;
        if (!verb_dict.empty()) {
            auto in = open_input(verb_dict);
            dict = load_verb_dictionary(in);
        }
        return dict;
    }

    NounExceptionTable load_nouns() const {
        NounExceptionTable table;
        if (!nouns.empty()) {
            auto in = open_input(nouns);
            table = load_noun_exceptions(in);
        }
        return table;
    }
};

TagVocabulary load_vocabulary_file(const std::string& path) {
    auto in = open_input(path);
    return TagVocabulary::load(in);
}

TagVocabulary vocabulary_from_model(const UnigramModel& model) {
    std::unordered_map<Tag, uint64_t, TagHash> counts;
    for (const auto& [token, tags] : model.counts)
        for (const auto& [rendered, n] : tags) counts[parse_tag(rendered)] += n;
    size_t open = 0;
    for (const auto& [tag, n] : counts)
        if (tag.core == Core::Append || tag.core == Core::Replace) ++open;
    return build_vocabulary(counts, TagVocabulary::kMinSize + open);
}

int run(int argc, char** argv) {
    CLI::App app{"token-level edit tagging for sentence correction"};
    app.require_subcommand(1);
    unsigned seed = 0;
    app.add_option("--seed", seed, "seed for sampling commands (reserved)");

    // build-vocab
    auto* build_cmd = app.add_subcommand("build-vocab", "rank tags into a fixed-size vocabulary");
    CorpusArgs build_corpus;
    MorphArgs build_morph;
    std::string build_counts, build_output = "-";
    size_t build_size = 0;
    build_cmd->add_option("--counts", build_counts, "tag count TSV (tag<TAB>frequency)");
    build_corpus.attach(build_cmd);
    build_morph.attach(build_cmd);
    build_cmd->add_option("--size", build_size, "total vocabulary size")->required();
    build_cmd->add_option("--output,-o", build_output, "output file, - for stdout");

    // preprocess
    auto* pre_cmd = app.add_subcommand("preprocess", "align pairs and emit one tag per token");
    CorpusArgs pre_corpus;
    MorphArgs pre_morph;
    std::string pre_vocab, pre_output = "-";
    pre_corpus.attach(pre_cmd);
    pre_morph.attach(pre_cmd);
    pre_cmd->add_option("--vocab", pre_vocab, "restrict tags to this vocabulary file");
    pre_cmd->add_option("--output,-o", pre_output, "output file, - for stdout");

    // coverage
    auto* cov_cmd = app.add_subcommand("coverage", "share of gold edits expressible per size");
    CorpusArgs cov_corpus;
    MorphArgs cov_morph;
    std::vector<size_t> cov_sizes;
    std::string cov_mode = "all";
    bool cov_tsv = false;
    cov_corpus.attach(cov_cmd);
    cov_morph.attach(cov_cmd);
    cov_cmd->add_option("--sizes", cov_sizes, "vocabulary sizes to report")
        ->required()
        ->delimiter(',');
    cov_cmd->add_option("--mode", cov_mode, "all or basic_only")
        ->check(CLI::IsMember({"all", "basic_only"}));
    cov_cmd->add_flag("--tsv", cov_tsv, "machine readable output");

    // apply
    auto* apply_cmd = app.add_subcommand("apply", "apply tagged sentences in one pass");
    MorphArgs apply_morph;
    std::string apply_tagged, apply_output = "-";
    apply_cmd->add_option("--tagged", apply_tagged, "tagged TSV input")->required();
    apply_morph.attach(apply_cmd);
    apply_cmd->add_option("--output,-o", apply_output, "output file, - for stdout");

    // correct
    auto* cor_cmd = app.add_subcommand("correct", "iteratively correct sentences");
    MorphArgs cor_morph;
    std::string cor_input, cor_tagger = "oracle", cor_ref, cor_model, cor_vocab;
    std::string cor_output = "-";
    double cor_bias = 0.0, cor_min_error = 0.0;
    int cor_max_iters = 5;
    bool cor_trace = false;
    cor_cmd->add_option("--input", cor_input, "sentences to correct, one per line")->required();
    cor_cmd->add_option("--tagger", cor_tagger, "oracle, unigram, or file:PATH[,PATH...]");
    cor_cmd->add_option("--ref", cor_ref, "reference sentences for the oracle tagger");
    cor_cmd->add_option("--model", cor_model, "unigram model file");
    cor_cmd->add_option("--vocab", cor_vocab, "vocabulary file");
    cor_morph.attach(cor_cmd);
    cor_cmd->add_option("--bias", cor_bias, "confidence bias added to KEEP");
    cor_cmd->add_option("--min-error-prob", cor_min_error, "sentence error threshold");
    cor_cmd->add_option("--max-iters", cor_max_iters, "iteration budget");
    cor_cmd->add_flag("--trace", cor_trace, "print per-iteration steps to stderr");
    cor_cmd->add_option("--output,-o", cor_output, "output file, - for stdout");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "span-level precision/recall/F0.5");
    MorphArgs eval_morph;
    std::string eval_source, eval_hyp, eval_ref;
    bool eval_tsv = false;
    eval_cmd->add_option("--source", eval_source, "source sentences")->required();
    eval_cmd->add_option("--hyp", eval_hyp, "hypothesis sentences")->required();
    eval_cmd->add_option("--ref", eval_ref, "reference sentences")->required();
    eval_morph.attach(eval_cmd);
    eval_cmd->add_flag("--tsv", eval_tsv, "machine readable output");

    // ensemble
    auto* ens_cmd = app.add_subcommand("ensemble", "average prediction files");
    std::string ens_vocab, ens_output = "-";
    std::vector<std::string> ens_inputs;
    ens_cmd->add_option("--vocab", ens_vocab, "vocabulary file")->required();
    ens_cmd->add_option("inputs", ens_inputs, "prediction JSONL files")->required();
    ens_cmd->add_option("--output,-o", ens_output, "output file, - for stdout");

    // train-unigram
    auto* train_cmd = app.add_subcommand("train-unigram", "count tags per token over a corpus");
    CorpusArgs train_corpus;
    MorphArgs train_morph;
    std::string train_vocab, train_output = "-", train_save_vocab;
    train_corpus.attach(train_cmd);
    train_morph.attach(train_cmd);
    train_cmd->add_option("--vocab", train_vocab, "vocabulary file (derived when omitted)");
    train_cmd->add_option("--save-vocab", train_save_vocab, "write the vocabulary used");
    train_cmd->add_option("--output,-o", train_output, "model file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the error
        return code == 0 ? 0 : 1;
    }

    if (app.got_subcommand(build_cmd)) {
        std::unordered_map<Tag, uint64_t, TagHash> counts;
        if (!build_counts.empty()) {
            auto in = open_input(build_counts);
            counts = load_tag_counts(in);
        } else {
            counts = count_tags(build_corpus.load(), build_morph.load_verbs(),
                                build_morph.load_nouns());
        }
        TagVocabulary vocab = build_vocabulary(counts, build_size);
        OutputFile out(build_output);
        vocab.save(out.stream());
        return 0;
    }

    if (app.got_subcommand(pre_cmd)) {
        auto pairs = pre_corpus.load();
        VerbDictionary dict = pre_morph.load_verbs();
        NounExceptionTable nouns = pre_morph.load_nouns();
        std::unique_ptr<TagVocabulary> vocab;
        if (!pre_vocab.empty()) vocab = std::make_unique<TagVocabulary>(load_vocabulary_file(pre_vocab));
        OutputFile out(pre_output);
        for (const auto& [src, tgt] : pairs)
            write_tagged(out.stream(), preprocess_pair(src, tgt, vocab.get(), dict, nouns));
        return 0;
    }

    if (app.got_subcommand(cov_cmd)) {
        auto rows = coverage(cov_corpus.load(), cov_sizes,
                             cov_mode == "all" ? CoverageMode::All : CoverageMode::BasicOnly,
                             cov_morph.load_verbs(), cov_morph.load_nouns());
        for (const auto& row : rows) {
            if (cov_tsv)
                std::cout << row.vocab_size << '\t' << row.fraction << '\n';
            else
                std::cout << "size " << row.vocab_size << ": " << row.fraction * 100.0
                          << "% of edits covered\n";
        }
        return 0;
    }

    if (app.got_subcommand(apply_cmd)) {
        auto in = open_input(apply_tagged);
        auto sentences = read_tagged(in);
        VerbDictionary dict = apply_morph.load_verbs();
        NounExceptionTable nouns = apply_morph.load_nouns();
        OutputFile out(apply_output);
        for (const auto& ts : sentences) {
            ApplyResult result = apply_tags(ts.tokens, ts.tags, dict, nouns);
            out.stream() << join(result.tokens, " ") << '\n';
        }
        return 0;
    }

    if (app.got_subcommand(cor_cmd)) {
        auto in = open_input(cor_input);
        auto sentences = read_token_lines(in);
        VerbDictionary dict = cor_morph.load_verbs();
        NounExceptionTable nouns = cor_morph.load_nouns();
        InferenceTweaks tweaks;
        tweaks.confidence_bias = cor_bias;
        tweaks.min_error_prob = cor_min_error;
        tweaks.max_iterations = cor_max_iters;

        std::unique_ptr<Tagger> tagger;
        std::vector<std::unique_ptr<std::ifstream>> prediction_files;
        if (cor_tagger == "oracle") {
            if (cor_ref.empty()) throw UsageError("--tagger oracle needs --ref");
            auto ref_in = open_input(cor_ref);
            auto refs = read_token_lines(ref_in);
            if (refs.size() != sentences.size())
                throw LengthMismatch("input has " + std::to_string(sentences.size()) +
                                     " sentences, --ref has " + std::to_string(refs.size()));
            std::vector<SentencePair> pairs;
            for (size_t i = 0; i < sentences.size(); ++i)
                pairs.push_back({sentences[i], refs[i]});
            TagVocabulary vocab = cor_vocab.empty() ? vocabulary_for_pairs(pairs, dict, nouns)
                                                    : load_vocabulary_file(cor_vocab);
            tagger = std::make_unique<OracleTagger>(pairs, std::move(vocab), dict, nouns);
        } else if (cor_tagger == "unigram") {
            if (cor_model.empty()) throw UsageError("--tagger unigram needs --model");
            auto model_in = open_input(cor_model);
            UnigramModel model = load_unigram(model_in);
            TagVocabulary vocab = cor_vocab.empty() ? vocabulary_from_model(model)
                                                    : load_vocabulary_file(cor_vocab);
            tagger = std::make_unique<UnigramTagger>(std::move(model), std::move(vocab));
        } else if (cor_tagger.rfind("file:", 0) == 0) {
            if (cor_vocab.empty()) throw UsageError("--tagger file:... needs --vocab");
            std::vector<std::istream*> streams;
            for (const auto& path : split_on(cor_tagger.substr(5), ',')) {
                prediction_files.push_back(std::make_unique<std::ifstream>(path));
                if (!*prediction_files.back()) throw MalformedEntry("cannot open " + path);
                streams.push_back(prediction_files.back().get());
            }
            if (streams.empty()) throw UsageError("--tagger file: needs at least one path");
            tagger = std::make_unique<FileTagger>(streams, load_vocabulary_file(cor_vocab));
            tweaks.max_iterations = 1;  // records line up with input sentences only
        } else {
            throw UsageError("unknown tagger: " + cor_tagger);
        }

        OutputFile out(cor_output);
        for (const auto& tokens : sentences) {
            IterationTrace trace = iterate(tokens, *tagger, tweaks, dict, nouns);
            if (cor_trace) {
                std::cerr << "input: " << join(trace.initial, " ") << '\n';
                for (size_t s = 0; s < trace.steps.size(); ++s)
                    std::cerr << "  pass " << s + 1 << " (" << trace.steps[s].corrections
                              << " corrections): " << join(trace.steps[s].tokens, " ") << '\n';
            }
            out.stream() << join(trace.final_tokens, " ") << '\n';
        }
        return 0;
    }

    if (app.got_subcommand(eval_cmd)) {
        auto src_in = open_input(eval_source);
        auto hyp_in = open_input(eval_hyp);
        auto ref_in = open_input(eval_ref);
        EvalScores s = score(read_token_lines(src_in), read_token_lines(hyp_in),
                             read_token_lines(ref_in), eval_morph.load_verbs(),
                             eval_morph.load_nouns());
        if (eval_tsv) {
            std::cout << "tp\t" << s.tp << "\nfp\t" << s.fp << "\nfn\t" << s.fn << '\n'
                      << "precision\t" << s.precision << "\nrecall\t" << s.recall << '\n'
                      << "f_half\t" << s.f_half << '\n';
        } else {
            std::cout << "tp " << s.tp << ", fp " << s.fp << ", fn " << s.fn << '\n'
                      << "precision " << s.precision << '\n'
                      << "recall    " << s.recall << '\n'
                      << "F0.5      " << s.f_half << '\n';
        }
        return 0;
    }

    if (app.got_subcommand(ens_cmd)) {
        TagVocabulary vocab = load_vocabulary_file(ens_vocab);
        std::vector<std::vector<PredictionMatrix>> files;
        for (const auto& path : ens_inputs) {
            auto in = open_input(path);
            files.push_back(read_predictions(in, vocab));
            if (files.back().size() != files[0].size())
                throw LengthMismatch(path + " has " + std::to_string(files.back().size()) +
                                     " records, expected " + std::to_string(files[0].size()));
        }
        OutputFile out(ens_output);
        for (size_t r = 0; r < files[0].size(); ++r) {
            std::vector<PredictionMatrix> member;
            for (const auto& file : files) member.push_back(file[r]);
            write_prediction(out.stream(), ensemble_average(member));
        }
        return 0;
    }

    if (app.got_subcommand(train_cmd)) {
        auto pairs = train_corpus.load();
        VerbDictionary dict = train_morph.load_verbs();
        NounExceptionTable nouns = train_morph.load_nouns();
        TagVocabulary vocab = train_vocab.empty() ? vocabulary_for_pairs(pairs, dict, nouns)
                                                  : load_vocabulary_file(train_vocab);
        UnigramModel model = train_unigram(pairs, vocab, dict, nouns);
        if (!train_save_vocab.empty()) {
            OutputFile vocab_out(train_save_vocab);
            vocab.save(vocab_out.stream());
        }
        OutputFile out(train_output);
        save_unigram(out.stream(), model);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const edittag::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
