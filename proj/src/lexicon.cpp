#include "tweetrank/lexicon.hpp"

#include "tweetrank/errors.hpp"

#include <cctype>
#include <fstream>

namespace tweetrank {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

IntegrityLexicon::IntegrityLexicon(std::unordered_set<std::string> words) {
    for (const auto& w : words) {
        if (!w.empty()) words_.insert(lowercase(w));
    }
}

int IntegrityLexicon::membership(std::string_view word) const {
    return words_.count(lowercase(word)) ? 1 : 0;
}

IntegrityLexicon load_wordlist(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read wordlist " + path.string());
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view w = line;
        while (!w.empty() && std::isspace(static_cast<unsigned char>(w.front()))) w.remove_prefix(1);
        while (!w.empty() && std::isspace(static_cast<unsigned char>(w.back()))) w.remove_suffix(1);
        if (!w.empty()) words.insert(lowercase(w));
    }
    if (words.empty()) throw ValidationError("wordlist " + path.string() + " contains no words");
    return IntegrityLexicon(std::move(words));
}

} // namespace tweetrank
