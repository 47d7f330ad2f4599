#pragma once

#include "tweetrank/corpus.hpp"
#include "tweetrank/lda.hpp"
#include "tweetrank/lexicon.hpp"

#include <span>
#include <string>
#include <vector>

namespace tweetrank {

struct NormalizationParams {
    double mu = 0.0;
    double sigma = 0.0; // population standard deviation; 0 for constant input
};

struct Normalized {
    std::vector<double> values;
    NormalizationParams params;
};

struct TopicStats {
    std::vector<double> integrity;       // I(t), in [0, 1]
    std::vector<double> entropy;         // S(t), in [0, ln D]
    std::vector<double> integrity_norm;
    std::vector<double> entropy_norm;
    std::vector<double> weight;          // integrity_norm - entropy_norm
    NormalizationParams integrity_params;
    NormalizationParams entropy_params;

    std::size_t num_topics() const noexcept { return weight.size(); }
};

struct ScoreConfig {
    double threshold = 1.0; // a document is interesting iff score > threshold

    void validate() const;
};

struct ScoredTweet {
    std::string doc_id;
    std::size_t doc_index = 0; // position in the corpus
    double score = 0.0;
    bool interesting = false;
    std::size_t rank = 0;      // 1-based
};

// Expected lexicon membership of a topic's words: sum_w phi_row[w] * L(w).
// phi_row is indexed by vocabulary id and must have vocab.size() entries.
double integrity(std::span<const double> phi_row, const IntegrityLexicon& lexicon, const Vocabulary& vocab);

// -sum_d p ln p over a distribution on documents, with 0 ln 0 = 0.
// Throws ValidationError on a negative entry.
double spatial_entropy(std::span<const double> p_column);

// (x - mu) / sigma with the population standard deviation. When sigma is zero
// (relative to the scale of x) the result is all zeros and sigma is recorded as 0.
Normalized z_normalize(std::span<const double> x);

TopicStats topic_weights(std::span<const double> integrity, std::span<const double> entropy);

// Integrity of every phi row and spatial entropy of every p(d|t) row, then weights.
TopicStats compute_topic_stats(const TopicModel& model, const IntegrityLexicon& lexicon, const Vocabulary& vocab);

// sum_k weights[k] * theta_row[k].
double score_document(std::span<const double> theta_row, std::span<const double> weights);

// Scores every document, sorted by descending score, ties by ascending doc_id.
std::vector<ScoredTweet> rank_corpus(const TopicModel& model, const TopicStats& stats, const ScoreConfig& config);

} // namespace tweetrank
