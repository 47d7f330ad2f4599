// tweetrank: rank tweets by topic-based interestingness and annotate sentiment.
//
//   tweetrank preprocess --input tweets.jsonl --output-dir out [--hashtags iccwc,cwc15]
//   tweetrank train      --output-dir out [--k 15 --alpha 0.01 --beta 0.01 --sweeps 1000 --seed 0]
//   tweetrank score      --output-dir out --lexicon words.txt [--threshold 1.0]
//   tweetrank sentiment  --output-dir out --sentiment-lexicon sentiment.tsv
//   tweetrank pipeline   (all of the above) [--from-manifest out/manifest.json]
//
// Exit codes: 0 success, 1 data or validation failure, 2 usage error.

#include "tweetrank/errors.hpp"
#include "tweetrank/pipeline.hpp"

#include <iostream>
#include <string>

#include "CLI11.hpp"

namespace {

using tweetrank::PipelineConfig;

void add_output_dir(CLI::App* cmd, PipelineConfig& c) {
    cmd->add_option("--output-dir,-o", c.output_dir, "Artifact directory")->capture_default_str();
}

void add_preprocess_flags(CLI::App* cmd, PipelineConfig& c, bool input_required) {
    auto* input = cmd->add_option("--input,-i", c.input_path, "Tweets as JSON lines");
    if (input_required) input->required();
    cmd->add_option("--hashtags", c.hashtags, "Keep only tweets carrying one of these tags (comma separated)")
        ->delimiter(',');
    cmd->add_option("--stopwords", c.preprocess.stopword_path, "Stopword file, one word per line");
    cmd->add_option("--min-tokens", c.preprocess.min_tokens, "Drop documents shorter than this")
        ->capture_default_str();
    cmd->add_option("--min-ascii-ratio", c.preprocess.min_ascii_ratio, "Minimum ASCII share of an English tweet")
        ->capture_default_str();
    cmd->add_option("--keep-hashtag-tokens", c.preprocess.keep_hashtag_tokens,
                    "Keep hashtags as words (true) or drop them (false)")
        ->capture_default_str();
    cmd->add_option("--lowercase", c.preprocess.lowercase, "Lowercase text before tokenizing")
        ->capture_default_str();
}

void add_lda_flags(CLI::App* cmd, PipelineConfig& c) {
    cmd->add_option("--k", c.lda.k, "Number of topics")->capture_default_str();
    cmd->add_option("--alpha", c.lda.alpha, "Dirichlet prior on document-topic mixtures")->capture_default_str();
    cmd->add_option("--beta", c.lda.beta, "Dirichlet prior on topic-word distributions")->capture_default_str();
    cmd->add_option("--sweeps", c.lda.sweeps, "Gibbs sweeps")->capture_default_str();
    cmd->add_option("--seed", c.lda.seed, "Sampler seed")->capture_default_str();
}

void add_score_flags(CLI::App* cmd, PipelineConfig& c, bool required) {
    auto* lex = cmd->add_option("--lexicon", c.lexicon_path, "Wordlist for topic integrity");
    if (required) lex->required();
    cmd->add_option("--threshold", c.score.threshold, "A tweet is interesting when its score is above this")
        ->capture_default_str();
}

void add_sentiment_flags(CLI::App* cmd, PipelineConfig& c, bool required) {
    auto* lex = cmd->add_option("--sentiment-lexicon", c.sentiment_lexicon_path, "word<TAB>pos<TAB>neg file");
    if (required) lex->required();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank tweets by topic-based interestingness and annotate sentiment polarity"};
    app.require_subcommand(1);

    PipelineConfig config;
    std::string manifest_path;

    auto* pre = app.add_subcommand("preprocess", "Load, filter and tokenize tweets into a corpus");
    add_output_dir(pre, config);
    add_preprocess_flags(pre, config, true);

    auto* trn = app.add_subcommand("train", "Fit the topic model to the corpus");
    add_output_dir(trn, config);
    add_lda_flags(trn, config);

    auto* scr = app.add_subcommand("score", "Compute topic weights and rank documents");
    add_output_dir(scr, config);
    add_score_flags(scr, config, true);

    auto* sen = app.add_subcommand("sentiment", "Annotate documents with sentiment polarity");
    add_output_dir(sen, config);
    add_sentiment_flags(sen, config, true);

    auto* pipe = app.add_subcommand("pipeline", "Run preprocess, train, score and sentiment, then write a manifest");
    add_output_dir(pipe, config);
    add_preprocess_flags(pipe, config, false);
    add_lda_flags(pipe, config);
    add_score_flags(pipe, config, false);
    add_sentiment_flags(pipe, config, false);
    pipe->add_option("--from-manifest", manifest_path, "Rerun with the config recorded in a manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*pre) {
            tweetrank::run_preprocess(config, std::cout);
        } else if (*trn) {
            tweetrank::run_train(config, std::cout);
        } else if (*scr) {
            tweetrank::run_score(config, std::cout);
        } else if (*sen) {
            tweetrank::run_sentiment(config, std::cout);
        } else if (*pipe) {
            if (!manifest_path.empty()) {
                auto out_dir = config.output_dir;
                config = tweetrank::config_from_manifest(manifest_path);
                config.output_dir = out_dir;
            } else if (config.input_path.empty() || config.lexicon_path.empty() ||
                       config.sentiment_lexicon_path.empty()) {
                std::cerr << "error: pipeline needs --input, --lexicon and --sentiment-lexicon "
                             "(or --from-manifest)\n\n"
                          << pipe->help();
                return 2;
            }
            tweetrank::run_pipeline(config, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
