#include "tweetrank/sentiment.hpp"

#include "tweetrank/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <vector>

namespace tweetrank {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool parse_double(std::string_view s, double& out) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

} // namespace

void SentimentLexicon::add(std::string_view word, SentimentWeights weights) {
    if (word.empty()) throw ValidationError("empty sentiment word");
    if (!std::isfinite(weights.positive) || !std::isfinite(weights.negative) || weights.positive < 0.0 ||
        weights.negative < 0.0)
        throw ValidationError("sentiment weights must be finite and non-negative");
    if (weights.positive == 0.0 && weights.negative == 0.0)
        throw ValidationError("sentiment entry \"" + std::string(word) + "\" carries no evidence");
    entries_[lowercase(word)] = weights;
}

const SentimentWeights* SentimentLexicon::find(std::string_view word) const {
    auto it = entries_.find(std::string(word));
    if (it == entries_.end()) it = entries_.find(lowercase(word));
    return it == entries_.end() ? nullptr : &it->second;
}

SentimentLexicon SentimentLexicon::flipped() const {
    SentimentLexicon out;
    for (const auto& [word, w] : entries_) out.entries_.emplace(word, SentimentWeights{w.negative, w.positive});
    return out;
}

SentimentLoadResult parse_sentiment_lexicon(std::istream& in) {
    SentimentLoadResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        std::vector<std::string_view> fields;
        std::string_view rest = line;
        for (;;) {
            auto tab = rest.find('\t');
            fields.push_back(rest.substr(0, tab));
            if (tab == std::string_view::npos) break;
            rest.remove_prefix(tab + 1);
        }
        SentimentWeights w;
        if (fields.size() != 3 || fields[0].empty() || !parse_double(fields[1], w.positive) ||
            !parse_double(fields[2], w.negative))
            throw ParseError("expected \"word<TAB>pos<TAB>neg\"", line_no);
        try {
            if (result.lexicon.find(lowercase(fields[0]))) ++result.duplicates;
            result.lexicon.add(fields[0], w);
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return result;
}

SentimentLoadResult load_sentiment_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read sentiment lexicon " + path.string());
    return parse_sentiment_lexicon(in);
}

std::string_view to_string(SentimentLabel label) noexcept {
    switch (label) {
    case SentimentLabel::positive: return "positive";
    case SentimentLabel::negative: return "negative";
    case SentimentLabel::neutral: return "neutral";
    }
    return "neutral";
}

Polarity polarity(std::span<const std::string> tokens, const SentimentLexicon& lexicon) {
    // Summing in sorted order makes the result independent of token order bit for bit.
    std::vector<double> pos_w;
    std::vector<double> neg_w;
    for (const auto& tok : tokens) {
        if (const auto* w = lexicon.find(tok)) {
            pos_w.push_back(w->positive);
            neg_w.push_back(w->negative);
        }
    }
    std::sort(pos_w.begin(), pos_w.end());
    std::sort(neg_w.begin(), neg_w.end());
    const double pos = std::accumulate(pos_w.begin(), pos_w.end(), 1.0);
    const double neg = std::accumulate(neg_w.begin(), neg_w.end(), 1.0);

    Polarity p;
    p.positive = pos / (pos + neg);
    p.negative = neg / (pos + neg);
    return p;
}

SentimentLabel classify(const Polarity& p) noexcept {
    if (std::abs(p.positive - p.negative) <= 1e-9) return SentimentLabel::neutral;
    return p.positive > p.negative ? SentimentLabel::positive : SentimentLabel::negative;
}

} // namespace tweetrank
