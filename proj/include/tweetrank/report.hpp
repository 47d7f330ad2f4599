#pragma once

#include "tweetrank/corpus.hpp"
#include "tweetrank/scoring.hpp"
#include "tweetrank/sentiment.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tweetrank {

// All CSVs: header row, ',' delimiter, '.' decimal point, LF line endings,
// reals with 6 decimal places.

// Fixed six-decimal rendering; "-0.000000" is printed as "0.000000".
std::string format_real(double value);

// RFC 4180 quoting when the field contains ',', '"', CR or LF.
std::string csv_field(std::string_view field);

struct SentimentRow {
    std::string doc_id;
    Polarity polarity;
    SentimentLabel label = SentimentLabel::neutral;
    std::optional<std::int64_t> timestamp;
};

// rank,doc_id,score,interesting
void write_ranking_csv(const std::vector<ScoredTweet>& ranking, const std::filesystem::path& path);

// topic,integrity,entropy,integrity_norm,entropy_norm,weight
void write_topic_stats_csv(const TopicStats& stats, const std::filesystem::path& path);

// doc_index,score in corpus order.
void write_score_plot_csv(const std::vector<ScoredTweet>& ranking, const std::filesystem::path& path);

// doc_id,positive,negative,signed,label
void write_sentiment_csv(const std::vector<SentimentRow>& rows, const std::filesystem::path& path);

// doc_index,<column>[,timestamp]; the timestamp column appears only when some row has one.
void write_polarity_series_csv(const std::vector<SentimentRow>& rows, bool positive,
                               const std::filesystem::path& path);

} // namespace tweetrank
