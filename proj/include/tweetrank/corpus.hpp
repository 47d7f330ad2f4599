#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tweetrank {

using TokenId = std::uint32_t;
using StopwordSet = std::unordered_set<std::string>;
using TagSet = std::unordered_set<std::string>;

struct RawTweet {
    std::string id;
    std::string text;
    std::vector<std::string> hashtags; // lowercase, no '#'
    std::optional<std::int64_t> timestamp;

    bool operator==(const RawTweet&) const = default;
};

struct Document {
    std::string id;
    std::vector<TokenId> tokens;
    std::optional<std::int64_t> timestamp;

    bool operator==(const Document&) const = default;
};

// Dense bijection between token strings and ids 0..V-1, ids assigned in
// first-appearance order.
class Vocabulary {
public:
    // Returns the id of `token`, inserting it at the end if unseen.
    TokenId intern(std::string_view token);
    std::optional<TokenId> find(std::string_view token) const;

    const std::string& token(TokenId id) const { return id_to_token_.at(id); }
    const std::vector<std::string>& tokens() const noexcept { return id_to_token_; }
    std::size_t size() const noexcept { return id_to_token_.size(); }

    bool operator==(const Vocabulary& other) const { return id_to_token_ == other.id_to_token_; }

private:
    std::unordered_map<std::string, TokenId> token_to_id_;
    std::vector<std::string> id_to_token_;
};

struct PreprocessConfig {
    std::filesystem::path stopword_path; // empty = no stopwords
    std::size_t min_tokens = 3;
    double min_ascii_ratio = 0.9;
    bool keep_hashtag_tokens = true;
    bool lowercase = true;

    // Throws ValidationError on min_tokens == 0 or a ratio outside [0, 1].
    void validate() const;
};

struct LoadResult {
    std::vector<RawTweet> tweets;
    std::size_t skipped = 0; // malformed lines
};

// Reads line-delimited JSON records {id, text, hashtags?, timestamp?}.
// Malformed lines are skipped and counted; a duplicate id throws ValidationError,
// an unreadable file throws IoError.
LoadResult load_jsonl(const std::filesystem::path& path);
LoadResult parse_jsonl(std::istream& in);

// "#word" patterns in `text`, lowercased, first-appearance order, no duplicates.
std::vector<std::string> extract_hashtags(std::string_view text);

// Keeps tweets with at least one hashtag in `tags`. An empty tag set keeps everything.
std::vector<RawTweet> filter_by_hashtags(const std::vector<RawTweet>& tweets, const TagSet& tags);

/// Tokenizes tweet text with a fixed pipeline:
///   1. lowercase (if configured)
///   2. drop URL tokens (http://, https://, www.)
///   3. drop @-mentions
///   4. strip the leading '#' of hashtags, or drop them when !keep_hashtag_tokens
///   5. replace everything outside [a-z0-9'] with spaces
///   6. split on whitespace
///   7. drop tokens shorter than two characters
std::vector<std::string> clean_text(std::string_view text, const PreprocessConfig& config);

// Fraction of code points in `text` that are ASCII, compared against
// config.min_ascii_ratio. Empty text is never English.
double ascii_ratio(std::string_view text);
bool is_english(std::string_view text, const PreprocessConfig& config);

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const StopwordSet& stopwords);

// One word per line, '#' comment lines and blank lines ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

struct CorpusStats {
    std::size_t input = 0;
    std::size_t dropped_non_english = 0;
    std::size_t dropped_short = 0;
    std::size_t kept = 0;
};

struct Corpus {
    std::vector<Document> documents;
    Vocabulary vocab;
    CorpusStats stats;

    std::size_t total_tokens() const noexcept;
    std::vector<std::string> document_tokens(std::size_t index) const;
};

// Throws EmptyCorpusError when every tweet is dropped.
Corpus build_corpus(const std::vector<RawTweet>& tweets, const PreprocessConfig& config,
                    const StopwordSet& stopwords);

// Corpus file: one document per line, "id<TAB>timestamp-or-'-'<TAB>space separated ids".
// Vocabulary file: one token per line, line number = id.
void write_corpus(const Corpus& corpus, const std::filesystem::path& corpus_path,
                  const std::filesystem::path& vocab_path);
Vocabulary read_vocabulary(const std::filesystem::path& vocab_path);
Corpus read_corpus(const std::filesystem::path& corpus_path, const std::filesystem::path& vocab_path);

} // namespace tweetrank
