#pragma once

#include <stdexcept>
#include <string>

namespace tweetrank {

// Unreadable or unwritable file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input parsed but violates a data contract (duplicate ids, negative weights, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structurally malformed input file; the message carries the line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Every tweet was filtered out during preprocessing.
class EmptyCorpusError : public ValidationError {
public:
    EmptyCorpusError() : ValidationError("empty corpus") {}
};

} // namespace tweetrank
