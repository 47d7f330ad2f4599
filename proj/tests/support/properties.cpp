#include "properties.hpp"

#include "generators.hpp"
#include "oracle.hpp"

#include "tweetrank/corpus.hpp"
#include "tweetrank/errors.hpp"
#include "tweetrank/lda.hpp"
#include "tweetrank/lexicon.hpp"
#include "tweetrank/scoring.hpp"
#include "tweetrank/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

namespace testsupport {

namespace {

using namespace tweetrank;

// Collects failures; the first message is kept for reporting.
class Checker {
public:
    explicit Checker(PropertyResult& r) : r_(r) {}

    void next_case() { ++r_.cases; failed_this_case_ = false; }

    void expect(bool cond, const std::string& what) {
        if (cond) return;
        if (!failed_this_case_) ++r_.failures;
        failed_this_case_ = true;
        if (r_.first_failure.empty()) r_.first_failure = "case " + std::to_string(r_.cases) + ": " + what;
    }

    void near(double a, double b, double tol, const std::string& what) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << " (" << a << " vs " << b << ")";
        expect(std::fabs(a - b) <= tol, msg.str());
    }

private:
    PropertyResult& r_;
    bool failed_this_case_ = false;
};

template <typename Body>
Property make(std::string module, std::string name, Body body) {
    return Property{module, name, [body](std::uint64_t seed, std::size_t cases) {
                        PropertyResult r;
                        Checker check(r);
                        Rng rng(seed);
                        for (std::size_t i = 0; i < cases; ++i) {
                            check.next_case();
                            body(rng, check);
                        }
                        return r;
                    }};
}

PreprocessConfig lenient_config(Rng& rng) {
    PreprocessConfig c;
    c.min_tokens = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    c.min_ascii_ratio = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    c.keep_hashtag_tokens = std::bernoulli_distribution(0.5)(rng);
    return c;
}

// build_corpus without the empty-corpus exception.
std::optional<Corpus> try_build(const std::vector<RawTweet>& tweets, const PreprocessConfig& c,
                                const StopwordSet& stop) {
    try {
        return build_corpus(tweets, c, stop);
    } catch (const EmptyCorpusError&) {
        return std::nullopt;
    }
}

SentimentLexicon random_sentiment_lexicon(Rng& rng, const std::vector<std::string>& pool) {
    SentimentLexicon lex;
    std::uniform_real_distribution<double> weight(0.0, 3.0);
    std::bernoulli_distribution pick(0.5), zero(0.3);
    for (const auto& w : pool) {
        if (!pick(rng)) continue;
        double p = zero(rng) ? 0.0 : weight(rng);
        double n = zero(rng) ? 0.0 : weight(rng);
        if (p == 0.0 && n == 0.0) p = 1.0;
        lex.add(w, {p, n});
    }
    return lex;
}

std::vector<std::string> random_token_list(Rng& rng, const std::vector<std::string>& pool, std::size_t max_len) {
    std::vector<std::string> out(std::uniform_int_distribution<std::size_t>(0, max_len)(rng));
    for (auto& t : out) t = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    return out;
}

const std::vector<std::string> kSentimentPool = {"good", "bad", "great", "awful", "win", "lose", "happy",
                                                 "sad", "cricket", "match", "neutral", "okay"};

std::vector<Property> build() {
    std::vector<Property> ps;

    // ---- corpus ----
    ps.push_back(make("corpus", "build_corpus is deterministic", [](Rng& rng, Checker& check) {
        auto tweets = random_tweets(rng, 12);
        auto cfg = lenient_config(rng);
        StopwordSet stop = {"cricket", "final"};
        auto a = try_build(tweets, cfg, stop);
        auto b = try_build(tweets, cfg, stop);
        check.expect(a.has_value() == b.has_value(), "one run threw, the other did not");
        if (a && b) {
            check.expect(a->documents == b->documents, "documents differ between runs");
            check.expect(a->vocab == b->vocab, "vocabularies differ between runs");
        }
    }));

    ps.push_back(make("corpus", "vocabulary tokens match [a-z0-9']{2,}", [](Rng& rng, Checker& check) {
        static const std::regex token_class("[a-z0-9']{2,}");
        auto tweets = random_tweets(rng, 12);
        auto corpus = try_build(tweets, lenient_config(rng), {});
        if (!corpus) return;
        for (const auto& tok : corpus->vocab.tokens())
            check.expect(std::regex_match(tok, token_class), "token \"" + tok + "\" outside the class");
    }));

    ps.push_back(make("corpus", "documents keep source order", [](Rng& rng, Checker& check) {
        auto tweets = random_tweets(rng, 15);
        auto corpus = try_build(tweets, lenient_config(rng), {});
        if (!corpus) return;
        std::size_t cursor = 0;
        for (const auto& doc : corpus->documents) {
            while (cursor < tweets.size() && tweets[cursor].id != doc.id) ++cursor;
            check.expect(cursor < tweets.size(), "document " + doc.id + " out of source order");
            ++cursor;
        }
    }));

    ps.push_back(make("corpus", "vocabulary is a dense bijection", [](Rng& rng, Checker& check) {
        auto tweets = random_tweets(rng, 12);
        auto cfg = lenient_config(rng);
        auto corpus = try_build(tweets, cfg, {});
        if (!corpus) return;
        const auto& v = corpus->vocab;
        for (std::size_t id = 0; id < v.size(); ++id) {
            auto back = v.find(v.token(static_cast<TokenId>(id)));
            check.expect(back && *back == id, "id_to_token / token_to_id disagree");
        }
        for (const auto& doc : corpus->documents) {
            check.expect(doc.tokens.size() >= cfg.min_tokens, "document shorter than min_tokens");
            for (auto t : doc.tokens) check.expect(t < v.size(), "token id outside vocabulary");
        }
    }));

    ps.push_back(make("corpus", "hashtag filter is monotone, empty set is identity", [](Rng& rng, Checker& check) {
        auto tweets = random_tweets(rng, 15);
        static const std::vector<std::string> tags = {"iccwc", "cwc15", "nba", "other"};
        TagSet set;
        for (const auto& t : tags)
            if (std::bernoulli_distribution(0.4)(rng)) set.insert(t);
        auto out = filter_by_hashtags(tweets, set);
        check.expect(out.size() <= tweets.size(), "filter grew the list");
        check.expect(filter_by_hashtags(tweets, {}) == tweets, "empty tag set changed the list");
        for (const auto& t : set.empty() ? std::vector<RawTweet>{} : out) {
            bool hit = std::any_of(t.hashtags.begin(), t.hashtags.end(), [&](auto& h) { return set.count(h); });
            check.expect(hit, "kept tweet without a matching tag");
        }
    }));

    // ---- lexicon ----
    ps.push_back(make("lexicon", "membership is 0/1 and case-insensitive", [](Rng& rng, Checker& check) {
        static const std::vector<std::string> pool = {"Cat", "dog", "BIRD", "fish", "Cricket", "x"};
        std::unordered_set<std::string> words;
        for (const auto& w : pool)
            if (std::bernoulli_distribution(0.5)(rng)) words.insert(w);
        IntegrityLexicon lex(words);
        for (const auto& w : pool) {
            std::string upper = w, lower = w;
            for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            int m = lex.membership(w);
            check.expect(m == 0 || m == 1, "membership outside {0,1}");
            check.expect(m == lex.membership(upper) && m == lex.membership(lower), "case changes membership");
            check.expect(m == (words.count(w) ? 1 : 0), "membership disagrees with source set");
        }
    }));

    // ---- lda ----
    ps.push_back(make("lda", "counts conserved after every sweep", [](Rng& rng, Checker& check) {
        const std::size_t V = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        auto docs = random_documents(rng, std::uniform_int_distribution<std::size_t>(1, 8)(rng), V, 10);
        LdaConfig cfg;
        cfg.k = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        cfg.alpha = std::uniform_real_distribution<double>(0.01, 2.0)(rng);
        cfg.beta = std::uniform_real_distribution<double>(0.01, 2.0)(rng);
        cfg.seed = rng();
        auto state = init_state(docs, V, cfg);
        std::size_t N = 0;
        for (const auto& d : docs) N += d.tokens.size();
        for (int s = 0; s < 4; ++s) {
            gibbs_sweep(state, docs, cfg);
            check.expect(counts_consistent(state, docs), "count matrices disagree with assignments");
            std::size_t total = std::accumulate(state.topic_totals.begin(), state.topic_totals.end(), std::size_t{0});
            check.expect(total == N, "sum of topic totals != N");
        }
    }));

    ps.push_back(make("lda", "phi, theta and p(d|t) rows sum to 1", [](Rng& rng, Checker& check) {
        const std::size_t V = std::uniform_int_distribution<std::size_t>(1, 15)(rng);
        auto docs = random_documents(rng, std::uniform_int_distribution<std::size_t>(1, 10)(rng), V, 12);
        LdaConfig cfg;
        cfg.k = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        cfg.sweeps = 3;
        cfg.seed = rng();
        auto model = train(docs, V, cfg);
        auto rows_ok = [&](const Matrix& m, const char* what) {
            for (std::size_t r = 0; r < m.rows(); ++r) {
                double s = 0;
                for (double x : m.row(r)) {
                    s += x;
                    check.expect(x >= 0.0, std::string(what) + " has a negative entry");
                }
                check.near(s, 1.0, 1e-9, std::string(what) + " row sum");
            }
        };
        rows_ok(model.phi, "phi");
        rows_ok(model.theta, "theta");
        rows_ok(doc_given_topic(model).p, "p(d|t)");
    }));

    ps.push_back(make("lda", "seeded training is bit-for-bit reproducible", [](Rng& rng, Checker& check) {
        const std::size_t V = std::uniform_int_distribution<std::size_t>(1, 15)(rng);
        auto docs = random_documents(rng, std::uniform_int_distribution<std::size_t>(1, 8)(rng), V, 10);
        LdaConfig cfg;
        cfg.k = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
        cfg.sweeps = 5;
        cfg.seed = rng();
        check.expect(train(docs, V, cfg) == train(docs, V, cfg), "two runs with one seed differ");
    }));

    // ---- scoring ----
    ps.push_back(make("scoring", "integrity lies in [0, 1]", [](Rng& rng, Checker& check) {
        auto inst = random_scoring_instance(rng);
        for (std::size_t t = 0; t < inst.model.num_topics(); ++t) {
            double i = integrity(inst.model.phi.row(t), inst.lexicon, inst.vocab);
            check.expect(i >= -1e-12 && i <= 1.0 + 1e-12, "integrity out of [0,1]");
        }
    }));

    ps.push_back(make("scoring", "entropy lies in [0, ln D], tight at the extremes", [](Rng& rng, Checker& check) {
        const std::size_t D = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
        auto p = random_simplex(D, rng, true);
        double h = spatial_entropy(p);
        check.expect(h >= 0.0 && h <= std::log(static_cast<double>(D)) + 1e-12, "entropy out of [0, ln D]");
        std::vector<double> uniform(D, 1.0 / static_cast<double>(D));
        check.near(spatial_entropy(uniform), std::log(static_cast<double>(D)), 1e-12, "uniform entropy");
        std::vector<double> point(D, 0.0);
        point[std::uniform_int_distribution<std::size_t>(0, D - 1)(rng)] = 1.0;
        check.expect(spatial_entropy(point) == 0.0, "degenerate entropy not 0");
    }));

    ps.push_back(make("scoring", "enlarging the lexicon never lowers integrity", [](Rng& rng, Checker& check) {
        auto inst = random_scoring_instance(rng);
        std::unordered_set<std::string> bigger(inst.lexicon_words.begin(), inst.lexicon_words.end());
        for (const auto& tok : inst.vocab.tokens())
            if (std::bernoulli_distribution(0.3)(rng)) bigger.insert(tok);
        bigger.insert("unrelated");
        IntegrityLexicon larger(bigger);
        for (std::size_t t = 0; t < inst.model.num_topics(); ++t) {
            check.expect(integrity(inst.model.phi.row(t), larger, inst.vocab) >=
                             integrity(inst.model.phi.row(t), inst.lexicon, inst.vocab),
                         "integrity decreased");
        }
    }));

    ps.push_back(make("scoring", "z-normalized output has mean 0 and std 1", [](Rng& rng, Checker& check) {
        const std::size_t K = std::uniform_int_distribution<std::size_t>(2, 20)(rng);
        std::vector<double> x(K);
        std::uniform_real_distribution<double> val(-10.0, 10.0);
        for (auto& v : x) v = val(rng);
        auto z = z_normalize(x);
        double mean = std::accumulate(z.values.begin(), z.values.end(), 0.0) / static_cast<double>(K);
        double var = 0;
        for (double v : z.values) var += (v - mean) * (v - mean);
        check.near(mean, 0.0, 1e-9, "normalized mean");
        check.near(std::sqrt(var / static_cast<double>(K)), 1.0, 1e-9, "normalized std");
        check.expect(z.params.sigma > 0.0, "sigma not recorded");
        std::vector<double> constant(K, val(rng));
        auto zc = z_normalize(constant);
        check.expect(zc.params.sigma == 0.0, "constant input sigma not 0");
        for (double v : zc.values) check.expect(v == 0.0, "constant input not mapped to zeros");
    }));

    ps.push_back(make("scoring", "weight equals integrity_norm - entropy_norm exactly", [](Rng& rng, Checker& check) {
        auto inst = random_scoring_instance(rng);
        auto stats = compute_topic_stats(inst.model, inst.lexicon, inst.vocab);
        for (std::size_t t = 0; t < stats.num_topics(); ++t)
            check.expect(stats.weight[t] == stats.integrity_norm[t] - stats.entropy_norm[t], "weight identity");
    }));

    ps.push_back(make("scoring", "constant integrity shift leaves weights and ranking unchanged",
                      [](Rng& rng, Checker& check) {
        auto inst = random_scoring_instance(rng);
        auto base = compute_topic_stats(inst.model, inst.lexicon, inst.vocab);
        const double c = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
        std::vector<double> shifted = base.integrity;
        for (auto& v : shifted) v += c;
        auto moved = topic_weights(shifted, base.entropy);
        for (std::size_t t = 0; t < base.num_topics(); ++t) {
            check.near(moved.integrity_norm[t], base.integrity_norm[t], 1e-9, "integrity_norm after shift");
            check.near(moved.weight[t], base.weight[t], 1e-9, "weight after shift");
        }
        ScoreConfig sc;
        auto r0 = rank_corpus(inst.model, base, sc);
        auto r1 = rank_corpus(inst.model, moved, sc);
        std::map<std::string, double> s0;
        for (const auto& r : r0) s0[r.doc_id] = r.score;
        for (std::size_t i = 0; i < r1.size(); ++i) {
            check.near(r1[i].score, s0[r1[i].doc_id], 1e-9, "score after shift");
            // Order may differ only among documents tied within 1e-9.
            if (i + 1 < r1.size())
                check.expect(s0[r1[i].doc_id] >= s0[r1[i + 1].doc_id] - 1e-9, "ranking changed after shift");
            check.expect(r0[i].doc_id == r1[i].doc_id || std::fabs(r0[i].score - r1[i].score) <= 1e-9,
                         "ranking changed after shift");
        }
    }));

    ps.push_back(make("scoring", "library matches independent oracle", [](Rng& rng, Checker& check) {
        auto inst = random_scoring_instance(rng);
        auto expect = oracle::evaluate(inst.phi, inst.theta, inst.in_lexicon);
        auto stats = compute_topic_stats(inst.model, inst.lexicon, inst.vocab);
        for (std::size_t t = 0; t < stats.num_topics(); ++t) {
            check.near(stats.integrity[t], expect.integrity[t], 1e-9, "integrity");
            check.near(stats.entropy[t], expect.entropy[t], 1e-9, "entropy");
            check.near(stats.integrity_norm[t], expect.integrity_norm[t], 1e-9, "integrity_norm");
            check.near(stats.entropy_norm[t], expect.entropy_norm[t], 1e-9, "entropy_norm");
            check.near(stats.weight[t], expect.weight[t], 1e-9, "weight");
        }
        for (std::size_t d = 0; d < inst.theta.size(); ++d)
            check.near(score_document(inst.model.theta.row(d), stats.weight), expect.scores[d], 1e-9, "score");
    }));

    ps.push_back(make("scoring", "scores equal theta * W and stay within [min W, max W]",
                      [](Rng& rng, Checker& check) {
        auto inst = random_scoring_instance(rng);
        auto stats = compute_topic_stats(inst.model, inst.lexicon, inst.vocab);
        auto ranking = rank_corpus(inst.model, stats, ScoreConfig{});
        const double lo = *std::min_element(stats.weight.begin(), stats.weight.end());
        const double hi = *std::max_element(stats.weight.begin(), stats.weight.end());
        for (const auto& r : ranking) {
            double product = 0;
            for (std::size_t k = 0; k < stats.num_topics(); ++k)
                product += inst.model.theta(r.doc_index, k) * stats.weight[k];
            check.near(r.score, product, 1e-9, "theta * W");
            check.expect(r.score >= lo - 1e-12 && r.score <= hi + 1e-12, "score outside [min W, max W]");
        }
    }));

    ps.push_back(make("scoring", "ranks are a descending permutation with strict threshold",
                      [](Rng& rng, Checker& check) {
        auto inst = random_scoring_instance(rng);
        auto stats = compute_topic_stats(inst.model, inst.lexicon, inst.vocab);
        ScoreConfig sc;
        sc.threshold = std::uniform_real_distribution<double>(-1.5, 1.5)(rng);
        auto ranking = rank_corpus(inst.model, stats, sc);
        check.expect(ranking.size() == inst.model.num_docs(), "ranking size");
        for (std::size_t i = 0; i < ranking.size(); ++i) {
            check.expect(ranking[i].rank == i + 1, "ranks not 1..D");
            check.expect(ranking[i].interesting == (ranking[i].score > sc.threshold), "interesting flag");
            if (i + 1 < ranking.size()) {
                const auto& a = ranking[i];
                const auto& b = ranking[i + 1];
                check.expect(a.score > b.score || (a.score == b.score && a.doc_id < b.doc_id), "order");
            }
        }
    }));

    // ---- sentiment ----
    ps.push_back(make("sentiment", "positive + negative = 1", [](Rng& rng, Checker& check) {
        auto lex = random_sentiment_lexicon(rng, kSentimentPool);
        auto p = polarity(random_token_list(rng, kSentimentPool, 20), lex);
        check.near(p.positive + p.negative, 1.0, 1e-9, "polarity sum");
        check.expect(p.positive >= 0 && p.positive <= 1 && p.negative >= 0 && p.negative <= 1, "range");
    }));

    ps.push_back(make("sentiment", "swapping lexicon weights swaps the polarity", [](Rng& rng, Checker& check) {
        auto lex = random_sentiment_lexicon(rng, kSentimentPool);
        auto tokens = random_token_list(rng, kSentimentPool, 20);
        auto p = polarity(tokens, lex);
        auto q = polarity(tokens, lex.flipped());
        check.expect(p.positive == q.negative && p.negative == q.positive, "flip is not exact");
    }));

    ps.push_back(make("sentiment", "token order does not matter", [](Rng& rng, Checker& check) {
        auto lex = random_sentiment_lexicon(rng, kSentimentPool);
        auto tokens = random_token_list(rng, kSentimentPool, 20);
        auto shuffled = tokens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto p = polarity(tokens, lex);
        auto q = polarity(shuffled, lex);
        check.expect(p.positive == q.positive && p.negative == q.negative, "permutation changed polarity");
    }));

    ps.push_back(make("sentiment", "a purely positive token never lowers positivity", [](Rng& rng, Checker& check) {
        auto lex = random_sentiment_lexicon(rng, kSentimentPool);
        lex.add("joy", {std::uniform_real_distribution<double>(0.01, 3.0)(rng), 0.0});
        auto tokens = random_token_list(rng, kSentimentPool, 20);
        auto before = polarity(tokens, lex);
        tokens.push_back("joy");
        auto after = polarity(tokens, lex);
        check.expect(after.positive >= before.positive, "positive component decreased");
    }));

    return ps;
}

} // namespace

const std::vector<Property>& all_properties() {
    static const std::vector<Property> props = build();
    return props;
}

} // namespace testsupport
