#include "embedgraph/embeddings.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>

namespace embedgraph {

EmbeddingStore::EmbeddingStore(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) {
        throw DimensionMismatch("store dimension must be at least 1");
    }
}

EmbeddingVector EmbeddingStore::lookup(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) {
        throw UnknownToken(token);
    }
    auto row = raw(it->second);
    return EmbeddingVector(std::vector<double>(row.begin(), row.end()));
}

void EmbeddingStore::insert(std::string token, std::span<const float> components) {
    if (components.size() != dim_) {
        throw DimensionMismatch(dim_, components.size());
    }
    if (index_.contains(token)) {
        throw DuplicateToken(token);
    }
    bool all_zero = true;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (!std::isfinite(components[i])) {
            throw NonFiniteComponent(i);
        }
        if (components[i] != 0.0f) {
            all_zero = false;
        }
    }
    if (all_zero) {
        throw ZeroVector();
    }
    index_.emplace(token, tokens_.size());
    tokens_.push_back(std::move(token));
    data_.insert(data_.end(), components.begin(), components.end());
}

std::span<const float> EmbeddingStore::raw(std::size_t index) const {
    return std::span<const float>(data_).subspan(index * dim_, dim_);
}

namespace {

bool is_zero_row(std::span<const float> row) {
    return std::all_of(row.begin(), row.end(), [](float c) { return c == 0.0f; });
}

// "<count> <dim>", tolerating a trailing \r.
std::pair<std::size_t, std::size_t> parse_header(const std::string& line) {
    std::string_view s(line);
    if (!s.empty() && s.back() == '\r') {
        s.remove_suffix(1);
    }
    auto fail = [&]() -> std::pair<std::size_t, std::size_t> {
        throw MalformedHeader("expected header '<count> <dim>', got '" + line + "'");
    };
    std::size_t count = 0;
    std::size_t dim = 0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto r1 = std::from_chars(begin, end, count);
    if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ' ') {
        return fail();
    }
    auto r2 = std::from_chars(r1.ptr + 1, end, dim);
    if (r2.ec != std::errc{} || r2.ptr != end) {
        return fail();
    }
    if (dim == 0) {
        throw MalformedHeader("header declares dimension 0");
    }
    return {count, dim};
}

WordVectorLoadResult load_text(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw MalformedHeader("empty input");
    }
    auto [count, dim] = parse_header(line);

    EmbeddingStore store(dim);
    std::size_t skipped = 0;
    std::vector<float> row(dim);
    for (std::size_t rec = 0; rec < count; ++rec) {
        if (!std::getline(in, line)) {
            throw TruncatedRecord("expected " + std::to_string(count) + " records, got " +
                                  std::to_string(rec));
        }
        std::string_view s(line);
        if (!s.empty() && s.back() == '\r') {
            s.remove_suffix(1);
        }
        auto space = s.find(' ');
        if (space == std::string_view::npos || space == 0) {
            throw TruncatedRecord("record " + std::to_string(rec) +
                                  ": expected '<token> <floats...>'");
        }
        std::string token(s.substr(0, space));
        const char* p = s.data() + space;
        const char* end = s.data() + s.size();
        std::size_t got = 0;
        while (p != end && got < dim) {
            if (*p != ' ') {
                throw TruncatedRecord("record " + std::to_string(rec) + " ('" + token +
                                      "'): malformed value");
            }
            ++p;
            float value = 0.0f;
            auto r = std::from_chars(p, end, value);
            if (r.ec != std::errc{}) {
                throw TruncatedRecord("record " + std::to_string(rec) + " ('" + token +
                                      "'): malformed value");
            }
            row[got++] = value;
            p = r.ptr;
        }
        if (got < dim) {
            throw TruncatedRecord("record " + std::to_string(rec) + " ('" + token +
                                  "'): has " + std::to_string(got) +
                                  " values, header declares " + std::to_string(dim));
        }
        if (p != end) {
            throw DimensionMismatch("record " + std::to_string(rec) + " ('" + token +
                                    "'): more values than the declared dimension " +
                                    std::to_string(dim));
        }
        if (is_zero_row(row)) {
            ++skipped;
            continue;
        }
        store.insert(std::move(token), row);
    }
    return {std::move(store), skipped};
}

float float_from_le(const unsigned char* b) {
    std::uint32_t u = static_cast<std::uint32_t>(b[0]) |
                      (static_cast<std::uint32_t>(b[1]) << 8) |
                      (static_cast<std::uint32_t>(b[2]) << 16) |
                      (static_cast<std::uint32_t>(b[3]) << 24);
    return std::bit_cast<float>(u);
}

void float_to_le(float f, unsigned char* b) {
    std::uint32_t u = std::bit_cast<std::uint32_t>(f);
    b[0] = static_cast<unsigned char>(u & 0xff);
    b[1] = static_cast<unsigned char>((u >> 8) & 0xff);
    b[2] = static_cast<unsigned char>((u >> 16) & 0xff);
    b[3] = static_cast<unsigned char>((u >> 24) & 0xff);
}

constexpr std::size_t kMaxTokenBytes = 10000;

WordVectorLoadResult load_binary(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw MalformedHeader("empty input");
    }
    auto [count, dim] = parse_header(line);

    EmbeddingStore store(dim);
    std::size_t skipped = 0;
    std::vector<unsigned char> bytes(dim * 4);
    std::vector<float> row(dim);
    for (std::size_t rec = 0; rec < count; ++rec) {
        std::string token;
        int c;
        // Some writers put a newline between records; it is not part of the token.
        while ((c = in.get()) != std::char_traits<char>::eof()) {
            if (c == ' ') {
                break;
            }
            if (c == '\n' || c == '\r') {
                continue;
            }
            token.push_back(static_cast<char>(c));
            if (token.size() > kMaxTokenBytes) {
                throw TruncatedRecord("record " + std::to_string(rec) +
                                      ": unterminated token");
            }
        }
        if (c == std::char_traits<char>::eof() || token.empty()) {
            throw TruncatedRecord("expected " + std::to_string(count) + " records, got " +
                                  std::to_string(rec));
        }
        in.read(reinterpret_cast<char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
        if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
            throw TruncatedRecord("record " + std::to_string(rec) + " ('" + token +
                                  "'): vector data cut short");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            row[i] = float_from_le(&bytes[i * 4]);
        }
        if (is_zero_row(row)) {
            ++skipped;
            continue;
        }
        store.insert(std::move(token), row);
    }
    return {std::move(store), skipped};
}

}  // namespace

WordVectorLoadResult load_word_vectors(std::istream& in, WordVectorFormat format) {
    return format == WordVectorFormat::text ? load_text(in) : load_binary(in);
}

void write_word_vectors(const EmbeddingStore& store, std::ostream& out,
                        WordVectorFormat format) {
    out << store.size() << ' ' << store.dim() << '\n';
    if (format == WordVectorFormat::text) {
        char buf[64];
        for (std::size_t i = 0; i < store.size(); ++i) {
            out << store.tokens()[i];
            for (float c : store.raw(i)) {
                auto r = std::to_chars(buf, buf + sizeof(buf), c);
                out << ' ';
                out.write(buf, r.ptr - buf);
            }
            out << '\n';
        }
    } else {
        std::vector<unsigned char> bytes(store.dim() * 4);
        for (std::size_t i = 0; i < store.size(); ++i) {
            const auto& token = store.tokens()[i];
            out.write(token.data(), static_cast<std::streamsize>(token.size()));
            out.put(' ');
            auto row = store.raw(i);
            for (std::size_t j = 0; j < row.size(); ++j) {
                float_to_le(row[j], &bytes[j * 4]);
            }
            out.write(reinterpret_cast<const char*>(bytes.data()),
                      static_cast<std::streamsize>(bytes.size()));
        }
    }
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(a.dim(), b.dim());
    }
    double dot = 0.0;
    double norm2_a = 0.0;
    double norm2_b = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        dot += a[i] * b[i];
        norm2_a += a[i] * a[i];
        norm2_b += b[i] * b[i];
    }
    // sqrt(n2a * n2b) keeps cosine(x, x) == 1 exact: for identical inputs the
    // quotient is s / sqrt(s * s) = 1 in IEEE round-to-nearest.
    return std::clamp(dot / std::sqrt(norm2_a * norm2_b), -1.0, 1.0);
}

}  // namespace embedgraph
