#pragma once

#include "tweetrank/corpus.hpp"
#include "tweetrank/lda.hpp"
#include "tweetrank/scoring.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace tweetrank {

// Artifact file names inside the output directory.
namespace artifacts {
inline constexpr const char* corpus = "corpus.tsv";
inline constexpr const char* vocab = "vocab.txt";
inline constexpr const char* model = "model.bin";
inline constexpr const char* ranking = "ranking.csv";
inline constexpr const char* topics = "topics.csv";
inline constexpr const char* score_plot = "score_plot.csv";
inline constexpr const char* sentiment = "sentiment.csv";
inline constexpr const char* positive_series = "positive_series.csv";
inline constexpr const char* negative_series = "negative_series.csv";
inline constexpr const char* manifest = "manifest.json";
} // namespace artifacts

struct PipelineConfig {
    std::filesystem::path input_path;
    std::vector<std::string> hashtags; // empty keeps every tweet
    PreprocessConfig preprocess;
    LdaConfig lda;
    ScoreConfig score;
    std::filesystem::path lexicon_path;
    std::filesystem::path sentiment_lexicon_path;
    std::filesystem::path output_dir = ".";
};

struct PreprocessSummary {
    std::size_t loaded = 0;
    std::size_t skipped = 0;           // malformed JSONL lines
    std::size_t filtered_hashtag = 0;  // removed by the hashtag filter
    CorpusStats corpus;
    std::size_t vocab_size = 0;
};

struct TrainSummary {
    double log_likelihood = 0.0;
    double elapsed_seconds = 0.0;
    std::size_t num_docs = 0;
    std::size_t num_tokens = 0;
};

struct ScoreSummary {
    std::size_t num_docs = 0;
    std::size_t interesting = 0;
};

struct SentimentSummary {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t neutral = 0;
};

// Each stage reads and writes the fixed artifact names in config.output_dir and
// reports progress to `log`. Errors surface as IoError / ValidationError / ParseError.
PreprocessSummary run_preprocess(const PipelineConfig& config, std::ostream& log);
TrainSummary run_train(const PipelineConfig& config, std::ostream& log);
ScoreSummary run_score(const PipelineConfig& config, std::ostream& log);
SentimentSummary run_sentiment(const PipelineConfig& config, std::ostream& log);

// All four stages in order, then manifest.json: the config echo, the seed,
// and SHA-256 digests of every input and produced file. The manifest holds
// no timings or absolute output locations, so identical runs produce identical bytes.
void run_pipeline(const PipelineConfig& config, std::ostream& log);

// Rebuilds a PipelineConfig from the "config" section of a manifest (output_dir is left default).
PipelineConfig config_from_manifest(const std::filesystem::path& manifest_path);

std::string sha256_file(const std::filesystem::path& path);

} // namespace tweetrank
