#include "tweetrank/pipeline.hpp"

#include "tweetrank/errors.hpp"
#include "tweetrank/lexicon.hpp"
#include "tweetrank/model_io.hpp"
#include "tweetrank/report.hpp"
#include "tweetrank/sentiment.hpp"

#include <openssl/evp.h>

#include <array>
#include <cctype>
#include <chrono>
#include <fstream>
#include <memory>
#include <ostream>

#include "json.hpp"

namespace tweetrank {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

fs::path artifact(const PipelineConfig& config, const char* name) { return config.output_dir / name; }

TagSet normalize_tags(const std::vector<std::string>& tags) {
    TagSet out;
    for (std::string tag : tags) {
        if (!tag.empty() && tag.front() == '#') tag.erase(0, 1);
        for (char& c : tag) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (!tag.empty()) out.insert(std::move(tag));
    }
    return out;
}

void require_file(const fs::path& path, const char* what) {
    if (path.empty()) throw ValidationError(std::string(what) + " path not set");
    if (!fs::is_regular_file(path)) throw IoError(std::string(what) + " not found: " + path.string());
}

json config_to_json(const PipelineConfig& c) {
    json j;
    j["input"] = c.input_path.string();
    j["hashtags"] = c.hashtags;
    j["preprocess"] = {
        {"stopwords", c.preprocess.stopword_path.string()},
        {"min_tokens", c.preprocess.min_tokens},
        {"min_ascii_ratio", c.preprocess.min_ascii_ratio},
        {"keep_hashtag_tokens", c.preprocess.keep_hashtag_tokens},
        {"lowercase", c.preprocess.lowercase},
    };
    j["lda"] = {
        {"k", c.lda.k},
        {"alpha", c.lda.alpha},
        {"beta", c.lda.beta},
        {"sweeps", c.lda.sweeps},
        {"seed", c.lda.seed},
        {"inference", "collapsed-gibbs"},
        {"rng", "xoshiro256**/splitmix64"},
    };
    j["score"] = {
        {"threshold", c.score.threshold},
        {"comparison", "greater"},
        {"log_base", "e"},
    };
    j["lexicon"] = c.lexicon_path.string();
    j["sentiment_lexicon"] = c.sentiment_lexicon_path.string();
    return j;
}

} // namespace

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());

    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw IoError("sha256 init failed");
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);

    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

PreprocessSummary run_preprocess(const PipelineConfig& config, std::ostream& log) {
    config.preprocess.validate();
    require_file(config.input_path, "input");

    PreprocessSummary summary;
    LoadResult loaded = load_jsonl(config.input_path);
    summary.loaded = loaded.tweets.size();
    summary.skipped = loaded.skipped;

    auto tweets = filter_by_hashtags(loaded.tweets, normalize_tags(config.hashtags));
    summary.filtered_hashtag = summary.loaded - tweets.size();

    StopwordSet stopwords;
    if (!config.preprocess.stopword_path.empty()) stopwords = load_stopwords(config.preprocess.stopword_path);

    log << "loaded " << summary.loaded << ", skipped " << summary.skipped << " malformed, filtered "
        << summary.filtered_hashtag << " by hashtag\n";

    Corpus corpus = build_corpus(tweets, config.preprocess, stopwords);
    summary.corpus = corpus.stats;
    summary.vocab_size = corpus.vocab.size();

    fs::create_directories(config.output_dir);
    write_corpus(corpus, artifact(config, artifacts::corpus), artifact(config, artifacts::vocab));

    log << "dropped-non-english " << corpus.stats.dropped_non_english << ", dropped-short "
        << corpus.stats.dropped_short << ", kept " << corpus.stats.kept << " (vocabulary " << summary.vocab_size
        << ", tokens " << corpus.total_tokens() << ")\n";
    return summary;
}

TrainSummary run_train(const PipelineConfig& config, std::ostream& log) {
    config.lda.validate();
    const Corpus corpus = read_corpus(artifact(config, artifacts::corpus), artifact(config, artifacts::vocab));

    TrainSummary summary;
    summary.num_docs = corpus.documents.size();
    summary.num_tokens = corpus.total_tokens();

    const auto start = std::chrono::steady_clock::now();
    const TopicModel model = train(corpus.documents, corpus.vocab.size(), config.lda,
                                   [&](std::size_t sweep, const GibbsState& state) {
                                       if (sweep == config.lda.sweeps)
                                           summary.log_likelihood = log_likelihood(state, config.lda);
                                   });
    summary.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    save_model(model, artifact(config, artifacts::model));
    log << "trained k=" << config.lda.k << " on " << summary.num_docs << " documents (" << summary.num_tokens
        << " tokens), " << config.lda.sweeps << " sweeps\n"
        << "final log-likelihood " << summary.log_likelihood << "\n"
        << "elapsed " << summary.elapsed_seconds << " s\n";
    return summary;
}

ScoreSummary run_score(const PipelineConfig& config, std::ostream& log) {
    config.score.validate();
    require_file(config.lexicon_path, "lexicon");
    const TopicModel model = load_model(artifact(config, artifacts::model));
    const Vocabulary vocab = read_vocabulary(artifact(config, artifacts::vocab));
    if (vocab.size() != model.vocab_size)
        throw ValidationError("vocabulary has " + std::to_string(vocab.size()) + " entries but the model expects " +
                              std::to_string(model.vocab_size));

    // An empty wordlist is allowed here: every integrity is 0 and the run still completes.
    IntegrityLexicon lexicon;
    try {
        lexicon = load_wordlist(config.lexicon_path);
    } catch (const ValidationError&) {
        log << "warning: lexicon " << config.lexicon_path.string() << " is empty; all integrities are 0\n";
    }

    const TopicStats stats = compute_topic_stats(model, lexicon, vocab);
    const auto ranking = rank_corpus(model, stats, config.score);

    write_ranking_csv(ranking, artifact(config, artifacts::ranking));
    write_topic_stats_csv(stats, artifact(config, artifacts::topics));
    write_score_plot_csv(ranking, artifact(config, artifacts::score_plot));

    ScoreSummary summary;
    summary.num_docs = ranking.size();
    for (const auto& r : ranking) summary.interesting += r.interesting ? 1 : 0;
    log << "lexicon " << lexicon.size() << " words; " << summary.interesting << " of " << summary.num_docs
        << " documents score above " << config.score.threshold << "\n";
    return summary;
}

SentimentSummary run_sentiment(const PipelineConfig& config, std::ostream& log) {
    require_file(config.sentiment_lexicon_path, "sentiment lexicon");
    const Corpus corpus = read_corpus(artifact(config, artifacts::corpus), artifact(config, artifacts::vocab));
    const SentimentLoadResult loaded = load_sentiment_lexicon(config.sentiment_lexicon_path);

    SentimentSummary summary;
    std::vector<SentimentRow> rows;
    rows.reserve(corpus.documents.size());
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const auto tokens = corpus.document_tokens(d);
        SentimentRow row;
        row.doc_id = corpus.documents[d].id;
        row.timestamp = corpus.documents[d].timestamp;
        row.polarity = polarity(tokens, loaded.lexicon);
        row.label = classify(row.polarity);
        switch (row.label) {
        case SentimentLabel::positive: ++summary.positive; break;
        case SentimentLabel::negative: ++summary.negative; break;
        case SentimentLabel::neutral: ++summary.neutral; break;
        }
        rows.push_back(std::move(row));
    }

    write_sentiment_csv(rows, artifact(config, artifacts::sentiment));
    write_polarity_series_csv(rows, true, artifact(config, artifacts::positive_series));
    write_polarity_series_csv(rows, false, artifact(config, artifacts::negative_series));
    log << "sentiment lexicon " << loaded.lexicon.size() << " entries (" << loaded.duplicates
        << " duplicates overridden); positive " << summary.positive << ", negative " << summary.negative
        << ", neutral " << summary.neutral << "\n";
    return summary;
}

void run_pipeline(const PipelineConfig& config, std::ostream& log) {
    // Validate everything up front so a bad flag fails before any work is done.
    config.preprocess.validate();
    config.lda.validate();
    config.score.validate();
    require_file(config.input_path, "input");
    require_file(config.lexicon_path, "lexicon");
    require_file(config.sentiment_lexicon_path, "sentiment lexicon");
    if (!config.preprocess.stopword_path.empty()) require_file(config.preprocess.stopword_path, "stopword file");

    const auto pre = run_preprocess(config, log);
    run_train(config, log);
    const auto score = run_score(config, log);
    const auto senti = run_sentiment(config, log);

    json manifest;
    manifest["format"] = "tweetrank-run-manifest";
    manifest["version"] = 1;
    manifest["config"] = config_to_json(config);
    manifest["seed"] = config.lda.seed;

    json inputs = json::object();
    inputs["input"] = sha256_file(config.input_path);
    inputs["lexicon"] = sha256_file(config.lexicon_path);
    inputs["sentiment_lexicon"] = sha256_file(config.sentiment_lexicon_path);
    if (!config.preprocess.stopword_path.empty()) inputs["stopwords"] = sha256_file(config.preprocess.stopword_path);
    manifest["inputs"] = inputs;

    json outputs = json::object();
    for (const char* name : {artifacts::corpus, artifacts::vocab, artifacts::model, artifacts::ranking,
                             artifacts::topics, artifacts::score_plot, artifacts::sentiment,
                             artifacts::positive_series, artifacts::negative_series}) {
        outputs[name] = sha256_file(artifact(config, name));
    }
    manifest["outputs"] = outputs;
    manifest["counts"] = {
        {"loaded", pre.loaded},
        {"skipped", pre.skipped},
        {"filtered_hashtag", pre.filtered_hashtag},
        {"dropped_non_english", pre.corpus.dropped_non_english},
        {"dropped_short", pre.corpus.dropped_short},
        {"kept", pre.corpus.kept},
        {"vocab_size", pre.vocab_size},
        {"interesting", score.interesting},
        {"positive", senti.positive},
        {"negative", senti.negative},
        {"neutral", senti.neutral},
    };

    const fs::path path = artifact(config, artifacts::manifest);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << manifest.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
    log << "wrote " << path.string() << "\n";
}

PipelineConfig config_from_manifest(const fs::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot read " + manifest_path.string());
    json m = json::parse(in, nullptr, false);
    if (m.is_discarded() || !m.contains("config")) throw ValidationError("not a run manifest: " + manifest_path.string());

    PipelineConfig c;
    try {
        const json& j = m.at("config");
        c.input_path = j.at("input").get<std::string>();
        c.hashtags = j.at("hashtags").get<std::vector<std::string>>();
        const json& p = j.at("preprocess");
        c.preprocess.stopword_path = p.at("stopwords").get<std::string>();
        c.preprocess.min_tokens = p.at("min_tokens").get<std::size_t>();
        c.preprocess.min_ascii_ratio = p.at("min_ascii_ratio").get<double>();
        c.preprocess.keep_hashtag_tokens = p.at("keep_hashtag_tokens").get<bool>();
        c.preprocess.lowercase = p.at("lowercase").get<bool>();
        const json& l = j.at("lda");
        c.lda.k = l.at("k").get<std::size_t>();
        c.lda.alpha = l.at("alpha").get<double>();
        c.lda.beta = l.at("beta").get<double>();
        c.lda.sweeps = l.at("sweeps").get<std::size_t>();
        c.lda.seed = l.at("seed").get<std::uint64_t>();
        c.score.threshold = j.at("score").at("threshold").get<double>();
        c.lexicon_path = j.at("lexicon").get<std::string>();
        c.sentiment_lexicon_path = j.at("sentiment_lexicon").get<std::string>();
    } catch (const json::exception& e) {
        throw ValidationError("malformed manifest config: " + std::string(e.what()));
    }
    return c;
}

} // namespace tweetrank
