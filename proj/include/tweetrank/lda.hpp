#pragma once

#include "tweetrank/corpus.hpp"
#include "tweetrank/matrix.hpp"
#include "tweetrank/random.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tweetrank {

struct LdaConfig {
    std::size_t k = 15;
    double alpha = 0.01;
    double beta = 0.01;
    std::size_t sweeps = 1000;
    std::uint64_t seed = 0;

    // Throws ValidationError unless k >= 1, alpha > 0, beta > 0, sweeps >= 1.
    void validate() const;

    bool operator==(const LdaConfig&) const = default;
};

// Collapsed Gibbs sampler state. Token i of document d lives at
// assignments[doc_offsets[d] + i].
struct GibbsState {
    std::size_t num_topics = 0;
    std::size_t vocab_size = 0;
    std::vector<std::size_t> doc_offsets;      // D + 1 entries
    std::vector<std::uint32_t> assignments;    // N topic ids
    std::vector<std::uint32_t> doc_topic;      // D x K, tokens of d assigned to k
    std::vector<std::uint32_t> word_topic;     // V x K, word-major for the sampling loop
    std::vector<std::uint32_t> topic_totals;   // K
    Xoshiro256 rng;

    std::size_t num_docs() const noexcept { return doc_offsets.empty() ? 0 : doc_offsets.size() - 1; }
    std::size_t num_tokens() const noexcept { return assignments.size(); }

    std::uint32_t n_dk(std::size_t d, std::size_t k) const { return doc_topic[d * num_topics + k]; }
    std::uint32_t n_kw(std::size_t k, std::size_t w) const { return word_topic[w * num_topics + k]; }

    bool operator==(const GibbsState&) const = default;
};

// Recounts every matrix from the assignments and compares; true when the
// state is internally consistent with `docs`.
bool counts_consistent(const GibbsState& state, std::span<const Document> docs);

struct TopicModel {
    Matrix phi;    // K x V, p(w | t)
    Matrix theta;  // D x K, p(t | d)
    LdaConfig config;
    std::size_t vocab_size = 0;
    std::vector<std::string> doc_ids;

    std::size_t num_topics() const noexcept { return phi.rows(); }
    std::size_t num_docs() const noexcept { return theta.rows(); }

    bool operator==(const TopicModel&) const = default;
};

// K x D, row t is p(d | t) under a uniform document prior.
struct DocGivenTopic {
    Matrix p;
};

// Assigns every token a uniformly random topic from the seeded generator.
// Throws ValidationError on an empty corpus, an empty document, or a token id >= vocab_size.
GibbsState init_state(std::span<const Document> docs, std::size_t vocab_size, const LdaConfig& config);

// Resamples every token once, documents in order and tokens in order, from
//   p(z = k | rest) ∝ (n_dk + alpha) (n_kw + beta) / (n_k + V beta)
// with the token's own count removed.
void gibbs_sweep(GibbsState& state, std::span<const Document> docs, const LdaConfig& config);

// Point estimates from a state:
//   phi[k][w]   = (n_kw + beta)  / (n_k + V beta)
//   theta[d][k] = (n_dk + alpha) / (len_d + K alpha)
TopicModel estimate_model(const GibbsState& state, std::span<const Document> docs, const LdaConfig& config);

using SweepObserver = std::function<void(std::size_t sweep, const GibbsState&)>;

// init_state, then config.sweeps sweeps; `observer` (optional) sees the state after each sweep.
TopicModel train(std::span<const Document> docs, std::size_t vocab_size, const LdaConfig& config,
                 const SweepObserver& observer = {});

DocGivenTopic doc_given_topic(const TopicModel& model);

// log p(w, z | alpha, beta) of the collapsed model.
double log_likelihood(const GibbsState& state, const LdaConfig& config);

} // namespace tweetrank
