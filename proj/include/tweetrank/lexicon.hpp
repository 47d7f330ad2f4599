#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>

namespace tweetrank {

// Word-membership set behind topic integrity. Immutable after construction.
class IntegrityLexicon {
public:
    IntegrityLexicon() = default;
    explicit IntegrityLexicon(std::unordered_set<std::string> words);

    // 1 if lowercase(word) is in the lexicon, else 0.
    int membership(std::string_view word) const;
    bool contains(std::string_view word) const { return membership(word) == 1; }

    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }

private:
    std::unordered_set<std::string> words_;
};

// One word per line; entries are lowercased and deduplicated, blank lines ignored.
// Throws IoError if unreadable, ValidationError if no words remain.
IntegrityLexicon load_wordlist(const std::filesystem::path& path);

} // namespace tweetrank
