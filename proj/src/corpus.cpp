#include "tweetrank/corpus.hpp"

#include "tweetrank/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

#include "json.hpp"

namespace tweetrank {

namespace {

using json = nlohmann::json;

bool starts_with_ci(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
    }
    return true;
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool has_space(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

// Returns nullopt when the record is malformed.
std::optional<RawTweet> parse_record(const std::string& line) {
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) return std::nullopt;

    RawTweet tweet;
    auto id = rec.find("id");
    if (id == rec.end()) return std::nullopt;
    if (id->is_string()) {
        tweet.id = id->get<std::string>();
    } else if (id->is_number_integer()) {
        tweet.id = id->dump();
    } else {
        return std::nullopt;
    }
    // ids are written into tab-separated artifacts
    if (tweet.id.empty() || tweet.id.find_first_of("\t\r\n") != std::string::npos) return std::nullopt;

    auto text = rec.find("text");
    if (text == rec.end() || !text->is_string()) return std::nullopt;
    tweet.text = text->get<std::string>();

    auto tags = rec.find("hashtags");
    if (tags != rec.end() && !tags->is_null()) {
        if (!tags->is_array()) return std::nullopt;
        for (const auto& tag : *tags) {
            if (!tag.is_string()) return std::nullopt;
            std::string_view raw = tag.get_ref<const std::string&>();
            if (!raw.empty() && raw.front() == '#') raw.remove_prefix(1);
            if (raw.empty() || has_space(raw) || raw.find('#') != std::string_view::npos) return std::nullopt;
            std::string norm = to_lower(raw);
            if (std::find(tweet.hashtags.begin(), tweet.hashtags.end(), norm) == tweet.hashtags.end())
                tweet.hashtags.push_back(std::move(norm));
        }
    } else {
        tweet.hashtags = extract_hashtags(tweet.text);
    }

    auto ts = rec.find("timestamp");
    if (ts != rec.end() && !ts->is_null()) {
        if (!ts->is_number_integer()) return std::nullopt;
        tweet.timestamp = ts->get<std::int64_t>();
    }
    return tweet;
}

} // namespace

TokenId Vocabulary::intern(std::string_view token) {
    std::string key(token);
    auto it = token_to_id_.find(key);
    if (it != token_to_id_.end()) return it->second;
    auto id = static_cast<TokenId>(id_to_token_.size());
    token_to_id_.emplace(key, id);
    id_to_token_.push_back(std::move(key));
    return id;
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
    auto it = token_to_id_.find(std::string(token));
    if (it == token_to_id_.end()) return std::nullopt;
    return it->second;
}

void PreprocessConfig::validate() const {
    if (min_tokens < 1) throw ValidationError("min_tokens must be at least 1");
    if (!(min_ascii_ratio >= 0.0 && min_ascii_ratio <= 1.0))
        throw ValidationError("min_ascii_ratio must lie in [0, 1]");
}

LoadResult parse_jsonl(std::istream& in) {
    LoadResult result;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto tweet = parse_record(line);
        if (!tweet) {
            ++result.skipped;
            continue;
        }
        if (!seen.insert(tweet->id).second)
            throw ValidationError("duplicate tweet id \"" + tweet->id + "\" on line " + std::to_string(line_no));
        result.tweets.push_back(std::move(*tweet));
    }
    return result;
}

LoadResult load_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    return parse_jsonl(in);
}

std::vector<std::string> extract_hashtags(std::string_view text) {
    std::vector<std::string> tags;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '#') continue;
        std::size_t j = i + 1;
        while (j < text.size() && is_word_char(text[j])) ++j;
        if (j == i + 1) continue;
        std::string tag = to_lower(text.substr(i + 1, j - i - 1));
        if (std::find(tags.begin(), tags.end(), tag) == tags.end()) tags.push_back(std::move(tag));
        i = j - 1;
    }
    return tags;
}

std::vector<RawTweet> filter_by_hashtags(const std::vector<RawTweet>& tweets, const TagSet& tags) {
    if (tags.empty()) return tweets;
    std::vector<RawTweet> out;
    for (const auto& tweet : tweets) {
        bool hit = std::any_of(tweet.hashtags.begin(), tweet.hashtags.end(),
                               [&](const std::string& h) { return tags.count(h) > 0; });
        if (hit) out.push_back(tweet);
    }
    return out;
}

std::vector<std::string> clean_text(std::string_view text, const PreprocessConfig& config) {
    std::string work = config.lowercase ? to_lower(text) : std::string(text);

    std::string kept;
    kept.reserve(work.size());
    for (std::string_view tok : split_ws(work)) {
        if (starts_with_ci(tok, "http://") || starts_with_ci(tok, "https://") || starts_with_ci(tok, "www."))
            continue;
        if (tok.front() == '@') continue;
        if (tok.front() == '#') {
            if (!config.keep_hashtag_tokens) continue;
            tok.remove_prefix(1);
        }
        kept.append(tok);
        kept.push_back(' ');
    }

    for (char& c : kept) {
        auto u = static_cast<unsigned char>(c);
        bool ok = (u >= 'a' && u <= 'z') || (u >= '0' && u <= '9') || u == '\'' ||
                  (!config.lowercase && u >= 'A' && u <= 'Z');
        if (!ok) c = ' ';
    }

    std::vector<std::string> tokens;
    for (std::string_view tok : split_ws(kept)) {
        if (tok.size() >= 2) tokens.emplace_back(tok);
    }
    return tokens;
}

double ascii_ratio(std::string_view text) {
    std::size_t chars = 0;
    std::size_t ascii = 0;
    for (char c : text) {
        auto u = static_cast<unsigned char>(c);
        if ((u & 0xC0) == 0x80) continue; // UTF-8 continuation byte
        ++chars;
        if (u < 0x80) ++ascii;
    }
    return chars == 0 ? 0.0 : static_cast<double>(ascii) / static_cast<double>(chars);
}

bool is_english(std::string_view text, const PreprocessConfig& config) {
    if (text.empty()) return false;
    return ascii_ratio(text) >= config.min_ascii_ratio;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const StopwordSet& stopwords) {
    if (stopwords.empty()) return tokens;
    std::erase_if(tokens, [&](const std::string& t) { return stopwords.count(t) > 0; });
    return tokens;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read stopword file " + path.string());
    StopwordSet words;
    std::string line;
    while (std::getline(in, line)) {
        auto word = trim(line);
        if (word.empty() || word.front() == '#') continue;
        words.insert(to_lower(word));
    }
    return words;
}

std::size_t Corpus::total_tokens() const noexcept {
    std::size_t n = 0;
    for (const auto& doc : documents) n += doc.tokens.size();
    return n;
}

std::vector<std::string> Corpus::document_tokens(std::size_t index) const {
    std::vector<std::string> out;
    for (TokenId id : documents.at(index).tokens) out.push_back(vocab.token(id));
    return out;
}

Corpus build_corpus(const std::vector<RawTweet>& tweets, const PreprocessConfig& config,
                    const StopwordSet& stopwords) {
    config.validate();
    Corpus corpus;
    corpus.stats.input = tweets.size();
    for (const auto& tweet : tweets) {
        if (!is_english(tweet.text, config)) {
            ++corpus.stats.dropped_non_english;
            continue;
        }
        auto tokens = remove_stopwords(clean_text(tweet.text, config), stopwords);
        if (tokens.size() < config.min_tokens) {
            ++corpus.stats.dropped_short;
            continue;
        }
        Document doc{tweet.id, {}, tweet.timestamp};
        doc.tokens.reserve(tokens.size());
        for (const auto& tok : tokens) doc.tokens.push_back(corpus.vocab.intern(tok));
        corpus.documents.push_back(std::move(doc));
    }
    corpus.stats.kept = corpus.documents.size();
    if (corpus.documents.empty()) throw EmptyCorpusError();
    return corpus;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& corpus_path,
                  const std::filesystem::path& vocab_path) {
    std::ofstream docs(corpus_path, std::ios::binary);
    if (!docs) throw IoError("cannot write " + corpus_path.string());
    for (const auto& doc : corpus.documents) {
        docs << doc.id << '\t';
        if (doc.timestamp) docs << *doc.timestamp; else docs << '-';
        docs << '\t';
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            if (i) docs << ' ';
            docs << doc.tokens[i];
        }
        docs << '\n';
    }
    if (!docs) throw IoError("write failed: " + corpus_path.string());

    std::ofstream vocab(vocab_path, std::ios::binary);
    if (!vocab) throw IoError("cannot write " + vocab_path.string());
    for (const auto& tok : corpus.vocab.tokens()) vocab << tok << '\n';
    if (!vocab) throw IoError("write failed: " + vocab_path.string());
}

Vocabulary read_vocabulary(const std::filesystem::path& vocab_path) {
    Vocabulary vocab;
    std::ifstream in(vocab_path);
    if (!in) throw IoError("cannot read " + vocab_path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) throw ParseError("empty vocabulary entry in " + vocab_path.string(), line_no);
        if (vocab.intern(line) != line_no - 1) throw ParseError("duplicate vocabulary entry \"" + line + "\"", line_no);
    }
    return vocab;
}

Corpus read_corpus(const std::filesystem::path& corpus_path, const std::filesystem::path& vocab_path) {
    Corpus corpus;
    corpus.vocab = read_vocabulary(vocab_path);
    std::string line;
    std::size_t line_no = 0;

    std::ifstream docs(corpus_path);
    if (!docs) throw IoError("cannot read " + corpus_path.string());
    std::unordered_set<std::string> seen;
    while (std::getline(docs, line)) {
        ++line_no;
        auto tab1 = line.find('\t');
        auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos) throw ParseError("expected 3 tab-separated fields", line_no);

        Document doc;
        doc.id = line.substr(0, tab1);
        if (doc.id.empty() || !seen.insert(doc.id).second)
            throw ParseError("missing or duplicate document id", line_no);
        std::string_view ts = std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1);
        if (ts != "-") {
            std::int64_t value = 0;
            auto [p, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), value);
            if (ec != std::errc() || p != ts.data() + ts.size()) throw ParseError("bad timestamp", line_no);
            doc.timestamp = value;
        }
        for (std::string_view tok : split_ws(std::string_view(line).substr(tab2 + 1))) {
            TokenId id = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
            if (ec != std::errc() || p != tok.data() + tok.size() || id >= corpus.vocab.size())
                throw ParseError("bad token id \"" + std::string(tok) + "\"", line_no);
            doc.tokens.push_back(id);
        }
        if (doc.tokens.empty()) throw ParseError("document has no tokens", line_no);
        corpus.documents.push_back(std::move(doc));
    }
    if (corpus.documents.empty()) throw EmptyCorpusError();
    corpus.stats.input = corpus.stats.kept = corpus.documents.size();
    return corpus;
}

} // namespace tweetrank
