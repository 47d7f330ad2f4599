#include "tweetrank/model_io.hpp"

#include "tweetrank/errors.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace tweetrank {

namespace {

constexpr std::array<char, 8> kMagic = {'T', 'W', 'R', 'K', 'L', 'D', 'A', '\0'};

// Guards against absurd allocations when reading a corrupt header.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 34;

template <typename T>
void put_le(std::ostream& out, T value) {
    std::array<char, sizeof(T)> bytes{};
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double value) { put_le(out, std::bit_cast<std::uint64_t>(value)); }

template <typename T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!in) throw ValidationError("truncated model file");
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
    return value;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

} // namespace

void write_model(const TopicModel& model, std::ostream& out) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kModelFormatVersion);
    put_le<std::uint64_t>(out, model.config.k);
    put_f64(out, model.config.alpha);
    put_f64(out, model.config.beta);
    put_le<std::uint64_t>(out, model.config.sweeps);
    put_le<std::uint64_t>(out, model.config.seed);
    put_le<std::uint64_t>(out, model.vocab_size);
    put_le<std::uint64_t>(out, model.doc_ids.size());
    for (const auto& id : model.doc_ids) {
        put_le<std::uint32_t>(out, static_cast<std::uint32_t>(id.size()));
        out.write(id.data(), static_cast<std::streamsize>(id.size()));
    }
    for (double v : model.phi.data()) put_f64(out, v);
    for (double v : model.theta.data()) put_f64(out, v);
}

TopicModel read_model(std::istream& in) {
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw ValidationError("not a topic model file (bad magic)");
    const auto version = get_le<std::uint32_t>(in);
    if (version != kModelFormatVersion)
        throw ValidationError("unsupported model format version " + std::to_string(version));

    TopicModel model;
    model.config.k = get_le<std::uint64_t>(in);
    model.config.alpha = get_f64(in);
    model.config.beta = get_f64(in);
    model.config.sweeps = get_le<std::uint64_t>(in);
    model.config.seed = get_le<std::uint64_t>(in);
    model.config.validate();
    model.vocab_size = get_le<std::uint64_t>(in);
    const auto num_docs = get_le<std::uint64_t>(in);
    const std::uint64_t K = model.config.k;
    if (model.vocab_size == 0 || num_docs == 0 || K * model.vocab_size > kMaxElements ||
        K * num_docs > kMaxElements)
        throw ValidationError("model dimensions out of range");

    model.doc_ids.reserve(num_docs);
    for (std::uint64_t d = 0; d < num_docs; ++d) {
        const auto len = get_le<std::uint32_t>(in);
        std::string id(len, '\0');
        in.read(id.data(), len);
        if (!in) throw ValidationError("truncated model file");
        model.doc_ids.push_back(std::move(id));
    }
    model.phi = Matrix(K, model.vocab_size);
    for (double& v : model.phi.data()) v = get_f64(in);
    model.theta = Matrix(num_docs, K);
    for (double& v : model.theta.data()) v = get_f64(in);
    if (in.peek() != std::char_traits<char>::eof()) throw ValidationError("trailing bytes after model payload");
    return model;
}

void save_model(const TopicModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    write_model(model, out);
    if (!out) throw IoError("write failed: " + path.string());
}

TopicModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    return read_model(in);
}

} // namespace tweetrank
