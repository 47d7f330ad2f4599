#include "tweetrank/report.hpp"

#include "tweetrank/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace tweetrank {

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    std::string s(buf);
    if (s == "-0.000000") s.erase(0, 1);
    return s;
}

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_ranking_csv(const std::vector<ScoredTweet>& ranking, const std::filesystem::path& path) {
    auto out = open_csv(path);
    out << "rank,doc_id,score,interesting\n";
    for (const auto& r : ranking) {
        out << r.rank << ',' << csv_field(r.doc_id) << ',' << format_real(r.score) << ','
            << (r.interesting ? "true" : "false") << '\n';
    }
    finish(out, path);
}

void write_topic_stats_csv(const TopicStats& stats, const std::filesystem::path& path) {
    auto out = open_csv(path);
    out << "topic,integrity,entropy,integrity_norm,entropy_norm,weight\n";
    for (std::size_t t = 0; t < stats.num_topics(); ++t) {
        out << t << ',' << format_real(stats.integrity[t]) << ',' << format_real(stats.entropy[t]) << ','
            << format_real(stats.integrity_norm[t]) << ',' << format_real(stats.entropy_norm[t]) << ','
            << format_real(stats.weight[t]) << '\n';
    }
    finish(out, path);
}

void write_score_plot_csv(const std::vector<ScoredTweet>& ranking, const std::filesystem::path& path) {
    std::vector<const ScoredTweet*> by_index;
    by_index.reserve(ranking.size());
    for (const auto& r : ranking) by_index.push_back(&r);
    std::sort(by_index.begin(), by_index.end(),
              [](const ScoredTweet* a, const ScoredTweet* b) { return a->doc_index < b->doc_index; });

    auto out = open_csv(path);
    out << "doc_index,score\n";
    for (const auto* r : by_index) out << r->doc_index << ',' << format_real(r->score) << '\n';
    finish(out, path);
}

void write_sentiment_csv(const std::vector<SentimentRow>& rows, const std::filesystem::path& path) {
    auto out = open_csv(path);
    out << "doc_id,positive,negative,signed,label\n";
    for (const auto& row : rows) {
        out << csv_field(row.doc_id) << ',' << format_real(row.polarity.positive) << ','
            << format_real(row.polarity.negative) << ',' << format_real(row.polarity.signed_score()) << ','
            << to_string(row.label) << '\n';
    }
    finish(out, path);
}

void write_polarity_series_csv(const std::vector<SentimentRow>& rows, bool positive,
                               const std::filesystem::path& path) {
    const bool with_time =
        std::any_of(rows.begin(), rows.end(), [](const SentimentRow& r) { return r.timestamp.has_value(); });
    auto out = open_csv(path);
    out << "doc_index," << (positive ? "positive" : "negative") << (with_time ? ",timestamp" : "") << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& p = rows[i].polarity;
        out << i << ',' << format_real(positive ? p.positive : p.negative);
        if (with_time) {
            out << ',';
            if (rows[i].timestamp) out << *rows[i].timestamp;
        }
        out << '\n';
    }
    finish(out, path);
}

} // namespace tweetrank
