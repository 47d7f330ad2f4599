#include "tweetrank/lda.hpp"

#include "tweetrank/errors.hpp"

#include <cmath>

namespace tweetrank {

void LdaConfig::validate() const {
    if (k < 1) throw ValidationError("topic count k must be at least 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be positive");
    if (sweeps < 1) throw ValidationError("sweeps must be at least 1");
}

GibbsState init_state(std::span<const Document> docs, std::size_t vocab_size, const LdaConfig& config) {
    config.validate();
    if (docs.empty()) throw ValidationError("cannot train on an empty corpus");

    GibbsState state;
    state.num_topics = config.k;
    state.vocab_size = vocab_size;
    state.rng.reseed(config.seed);
    state.doc_offsets.reserve(docs.size() + 1);
    state.doc_offsets.push_back(0);
    for (const auto& doc : docs) {
        if (doc.tokens.empty()) throw ValidationError("document \"" + doc.id + "\" has no tokens");
        state.doc_offsets.push_back(state.doc_offsets.back() + doc.tokens.size());
    }

    const std::size_t K = config.k;
    state.assignments.resize(state.doc_offsets.back());
    state.doc_topic.assign(docs.size() * K, 0);
    state.word_topic.assign(vocab_size * K, 0);
    state.topic_totals.assign(K, 0);

    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto& tokens = docs[d].tokens;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const std::size_t w = tokens[i];
            if (w >= vocab_size)
                throw ValidationError("token id " + std::to_string(w) + " outside vocabulary of size " +
                                      std::to_string(vocab_size));
            auto k = static_cast<std::uint32_t>(state.rng.below(K));
            state.assignments[state.doc_offsets[d] + i] = k;
            ++state.doc_topic[d * K + k];
            ++state.word_topic[w * K + k];
            ++state.topic_totals[k];
        }
    }
    return state;
}

void gibbs_sweep(GibbsState& state, std::span<const Document> docs, const LdaConfig& config) {
    const std::size_t K = state.num_topics;
    const double alpha = config.alpha;
    const double beta = config.beta;
    const double vbeta = static_cast<double>(state.vocab_size) * beta;
    std::vector<double> cumulative(K);

    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto& tokens = docs[d].tokens;
        std::uint32_t* dk = state.doc_topic.data() + d * K;
        std::uint32_t* z = state.assignments.data() + state.doc_offsets[d];
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            std::uint32_t* wk = state.word_topic.data() + std::size_t{tokens[i]} * K;
            const std::uint32_t old = z[i];
            --dk[old];
            --wk[old];
            --state.topic_totals[old];

            double total = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                total += (dk[k] + alpha) * (wk[k] + beta) / (state.topic_totals[k] + vbeta);
                cumulative[k] = total;
            }
            // The draw is taken even when K == 1 so the stream advances identically for every K.
            const double u = state.rng.uniform() * total;
            std::size_t chosen = 0;
            while (chosen + 1 < K && cumulative[chosen] <= u) ++chosen;

            const auto k = static_cast<std::uint32_t>(chosen);
            z[i] = k;
            ++dk[k];
            ++wk[k];
            ++state.topic_totals[k];
        }
    }
}

bool counts_consistent(const GibbsState& state, std::span<const Document> docs) {
    const std::size_t K = state.num_topics;
    if (state.num_docs() != docs.size()) return false;
    std::vector<std::uint32_t> dk(docs.size() * K, 0);
    std::vector<std::uint32_t> wk(state.vocab_size * K, 0);
    std::vector<std::uint32_t> totals(K, 0);
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (state.doc_offsets[d + 1] - state.doc_offsets[d] != docs[d].tokens.size()) return false;
        for (std::size_t i = 0; i < docs[d].tokens.size(); ++i) {
            const std::uint32_t k = state.assignments[state.doc_offsets[d] + i];
            if (k >= K) return false;
            ++dk[d * K + k];
            ++wk[std::size_t{docs[d].tokens[i]} * K + k];
            ++totals[k];
        }
    }
    return dk == state.doc_topic && wk == state.word_topic && totals == state.topic_totals;
}

TopicModel estimate_model(const GibbsState& state, std::span<const Document> docs, const LdaConfig& config) {
    const std::size_t K = state.num_topics;
    const std::size_t V = state.vocab_size;
    const std::size_t D = docs.size();

    TopicModel model;
    model.config = config;
    model.vocab_size = V;
    model.phi = Matrix(K, V);
    model.theta = Matrix(D, K);

    const double vbeta = static_cast<double>(V) * config.beta;
    for (std::size_t k = 0; k < K; ++k) {
        const double denom = state.topic_totals[k] + vbeta;
        for (std::size_t w = 0; w < V; ++w) model.phi(k, w) = (state.n_kw(k, w) + config.beta) / denom;
    }

    const double kalpha = static_cast<double>(K) * config.alpha;
    model.doc_ids.reserve(D);
    for (std::size_t d = 0; d < D; ++d) {
        model.doc_ids.push_back(docs[d].id);
        const double denom = static_cast<double>(docs[d].tokens.size()) + kalpha;
        for (std::size_t k = 0; k < K; ++k) model.theta(d, k) = (state.n_dk(d, k) + config.alpha) / denom;
    }
    return model;
}

TopicModel train(std::span<const Document> docs, std::size_t vocab_size, const LdaConfig& config,
                 const SweepObserver& observer) {
    GibbsState state = init_state(docs, vocab_size, config);
    for (std::size_t s = 1; s <= config.sweeps; ++s) {
        gibbs_sweep(state, docs, config);
        if (observer) observer(s, state);
    }
    return estimate_model(state, docs, config);
}

DocGivenTopic doc_given_topic(const TopicModel& model) {
    const std::size_t K = model.theta.cols();
    const std::size_t D = model.num_docs();
    DocGivenTopic out{Matrix(K, D)};
    for (std::size_t t = 0; t < K; ++t) {
        double column_sum = 0.0;
        for (std::size_t d = 0; d < D; ++d) column_sum += model.theta(d, t);
        for (std::size_t d = 0; d < D; ++d) out.p(t, d) = model.theta(d, t) / column_sum;
    }
    return out;
}

double log_likelihood(const GibbsState& state, const LdaConfig& config) {
    const std::size_t K = state.num_topics;
    const std::size_t V = state.vocab_size;
    const std::size_t D = state.num_docs();
    const double alpha = config.alpha;
    const double beta = config.beta;
    const auto Kd = static_cast<double>(K);
    const auto Vd = static_cast<double>(V);

    // log p(w | z): one Dirichlet-multinomial per topic. Zero counts contribute
    // lgamma(beta) - lgamma(beta) = 0 and are skipped.
    double ll = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t w = 0; w < V; ++w) {
            const std::uint32_t n = state.n_kw(k, w);
            if (n) ll += std::lgamma(n + beta) - std::lgamma(beta);
        }
        ll += std::lgamma(Vd * beta) - std::lgamma(state.topic_totals[k] + Vd * beta);
    }

    // log p(z): one Dirichlet-multinomial per document.
    for (std::size_t d = 0; d < D; ++d) {
        const double len = static_cast<double>(state.doc_offsets[d + 1] - state.doc_offsets[d]);
        for (std::size_t k = 0; k < K; ++k) {
            const std::uint32_t n = state.n_dk(d, k);
            if (n) ll += std::lgamma(n + alpha) - std::lgamma(alpha);
        }
        ll += std::lgamma(Kd * alpha) - std::lgamma(len + Kd * alpha);
    }
    return ll;
}

} // namespace tweetrank
