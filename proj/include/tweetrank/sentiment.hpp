#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

namespace tweetrank {

struct SentimentWeights {
    double positive = 0.0;
    double negative = 0.0;
};

// Lowercase word -> non-negative (positive, negative) evidence weights.
class SentimentLexicon {
public:
    // Throws ValidationError on a negative or non-finite weight, or on (0, 0).
    void add(std::string_view word, SentimentWeights weights);
    const SentimentWeights* find(std::string_view word) const;

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    // Swaps every entry's positive and negative weight.
    SentimentLexicon flipped() const;

private:
    std::unordered_map<std::string, SentimentWeights> entries_;
};

struct SentimentLoadResult {
    SentimentLexicon lexicon;
    std::size_t duplicates = 0; // later lines override earlier ones
};

// Lines "word<TAB>pos<TAB>neg"; blank lines ignored.
// Throws ParseError (with line number) on malformed lines, ValidationError on bad weights.
SentimentLoadResult load_sentiment_lexicon(const std::filesystem::path& path);
SentimentLoadResult parse_sentiment_lexicon(std::istream& in);

struct Polarity {
    double positive = 0.5;
    double negative = 0.5;

    double signed_score() const noexcept { return positive - negative; }
};

enum class SentimentLabel { positive, negative, neutral };

std::string_view to_string(SentimentLabel label) noexcept;

// Add-one smoothed share of positive evidence:
//   pos = 1 + sum pos_w, neg = 1 + sum neg_w, positive = pos / (pos + neg).
Polarity polarity(std::span<const std::string> tokens, const SentimentLexicon& lexicon);

// Neutral when the two components agree within 1e-9.
SentimentLabel classify(const Polarity& p) noexcept;

} // namespace tweetrank
