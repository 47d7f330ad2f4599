#include "tweetrank/scoring.hpp"

#include "tweetrank/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tweetrank {

void ScoreConfig::validate() const {
    if (!std::isfinite(threshold)) throw ValidationError("score threshold must be finite");
}

double integrity(std::span<const double> phi_row, const IntegrityLexicon& lexicon, const Vocabulary& vocab) {
    if (phi_row.size() != vocab.size())
        throw ValidationError("phi row has " + std::to_string(phi_row.size()) + " entries but the vocabulary has " +
                              std::to_string(vocab.size()));
    double total = 0.0;
    for (std::size_t w = 0; w < phi_row.size(); ++w) {
        if (lexicon.membership(vocab.token(static_cast<TokenId>(w)))) total += phi_row[w];
    }
    return total;
}

double spatial_entropy(std::span<const double> p_column) {
    double h = 0.0;
    for (double p : p_column) {
        if (p < 0.0 || std::isnan(p)) throw ValidationError("probability entries must be non-negative");
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

Normalized z_normalize(std::span<const double> x) {
    Normalized out;
    out.values.assign(x.size(), 0.0);
    if (x.empty()) return out;

    const auto n = static_cast<double>(x.size());
    double sum = 0.0;
    double scale = 1.0;
    for (double v : x) {
        sum += v;
        scale = std::max(scale, std::abs(v));
    }
    const double mu = sum / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mu) * (v - mu);
    double sigma = std::sqrt(ss / n);

    out.params.mu = mu;
    // Rounding in the mean leaves a residual ~1e-16 spread on constant input.
    if (sigma <= 1e-12 * scale) {
        out.params.sigma = 0.0;
        return out;
    }
    out.params.sigma = sigma;
    for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = (x[i] - mu) / sigma;
    return out;
}

TopicStats topic_weights(std::span<const double> integrity, std::span<const double> entropy) {
    if (integrity.size() != entropy.size())
        throw ValidationError("integrity and entropy vectors differ in length");
    TopicStats stats;
    stats.integrity.assign(integrity.begin(), integrity.end());
    stats.entropy.assign(entropy.begin(), entropy.end());

    auto i_norm = z_normalize(integrity);
    auto s_norm = z_normalize(entropy);
    stats.integrity_norm = std::move(i_norm.values);
    stats.entropy_norm = std::move(s_norm.values);
    stats.integrity_params = i_norm.params;
    stats.entropy_params = s_norm.params;

    stats.weight.resize(integrity.size());
    for (std::size_t t = 0; t < integrity.size(); ++t)
        stats.weight[t] = stats.integrity_norm[t] - stats.entropy_norm[t];
    return stats;
}

TopicStats compute_topic_stats(const TopicModel& model, const IntegrityLexicon& lexicon, const Vocabulary& vocab) {
    const std::size_t K = model.num_topics();
    const DocGivenTopic p = doc_given_topic(model);
    std::vector<double> integ(K);
    std::vector<double> ent(K);
    for (std::size_t t = 0; t < K; ++t) {
        integ[t] = integrity(model.phi.row(t), lexicon, vocab);
        ent[t] = spatial_entropy(p.p.row(t));
    }
    return topic_weights(integ, ent);
}

double score_document(std::span<const double> theta_row, std::span<const double> weights) {
    if (theta_row.size() != weights.size()) throw ValidationError("theta row and weights differ in length");
    double score = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) score += weights[k] * theta_row[k];
    return score;
}

std::vector<ScoredTweet> rank_corpus(const TopicModel& model, const TopicStats& stats, const ScoreConfig& config) {
    config.validate();
    std::vector<ScoredTweet> scored;
    scored.reserve(model.num_docs());
    for (std::size_t d = 0; d < model.num_docs(); ++d) {
        const double s = score_document(model.theta.row(d), stats.weight);
        scored.push_back({model.doc_ids.at(d), d, s, s > config.threshold, 0});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredTweet& a, const ScoredTweet& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });
    for (std::size_t i = 0; i < scored.size(); ++i) scored[i].rank = i + 1;
    return scored;
}

} // namespace tweetrank
