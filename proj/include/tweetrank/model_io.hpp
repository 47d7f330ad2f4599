#pragma once

#include "tweetrank/lda.hpp"

#include <filesystem>
#include <iosfwd>

namespace tweetrank {

/// Binary topic-model file, all integers and doubles little-endian:
///
///   magic        8 bytes  "TWRKLDA\0"
///   version      u32      (1)
///   k            u64
///   alpha, beta  f64, f64
///   sweeps       u64
///   seed         u64
///   vocab_size   u64
///   num_docs     u64
///   doc ids      num_docs x (u32 byte length, bytes)
///   phi          k x vocab_size f64, row-major
///   theta        num_docs x k f64, row-major
///
/// Doubles are stored as their IEEE-754 bit patterns, so a round trip is exact.
inline constexpr std::uint32_t kModelFormatVersion = 1;

void write_model(const TopicModel& model, std::ostream& out);
TopicModel read_model(std::istream& in);

void save_model(const TopicModel& model, const std::filesystem::path& path);
TopicModel load_model(const std::filesystem::path& path);

} // namespace tweetrank
