#pragma once

// Pretrained word-vector models: loading, token lookup, and the cosine
// primitive used by every other module.
//
// Two on-disk formats are supported.
//
//   text:    first line "<count> <dim>", then one line per token:
//            the token followed by <dim> decimal floats, space-separated.
//   binary:  same header line, then per token: the token's bytes, a single
//            0x20, and <dim> little-endian IEEE-754 single-precision floats
//            with no separator.
//
// Vectors are stored in single precision (what the binary format carries);
// lookups widen to double exactly, and all similarity math accumulates in
// double precision.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "embedgraph/core.hpp"

namespace embedgraph {

enum class WordVectorFormat { text, binary };

// token -> d-dimensional vector table. Immutable in normal use (built once by
// the loader); concurrent lookups are safe after that.
class EmbeddingStore {
  public:
    explicit EmbeddingStore(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return tokens_.size(); }
    bool contains(const std::string& token) const { return index_.contains(token); }

    // The stored vector, widened to double. Throws UnknownToken.
    EmbeddingVector lookup(const std::string& token) const;

    // Tokens are matched case-sensitively, no normalization. Throws
    // DuplicateToken, DimensionMismatch, ZeroVector, NonFiniteComponent.
    void insert(std::string token, std::span<const float> components);

    // Insertion (= model file) order.
    const std::vector<std::string>& tokens() const { return tokens_; }
    std::span<const float> raw(std::size_t index) const;

    bool operator==(const EmbeddingStore& other) const {
        return dim_ == other.dim_ && tokens_ == other.tokens_ && data_ == other.data_;
    }

  private:
    std::size_t dim_;
    std::vector<std::string> tokens_;
    std::vector<float> data_;  // tokens_.size() * dim_, row-major
    std::unordered_map<std::string, std::size_t> index_;
};

struct WordVectorLoadResult {
    EmbeddingStore store;
    std::size_t skipped_zero_vectors = 0;
};

// Reads a model file. Zero-norm rows are skipped and counted rather than
// rejected. Throws MalformedHeader, TruncatedRecord, DimensionMismatch,
// DuplicateToken.
WordVectorLoadResult load_word_vectors(std::istream& in, WordVectorFormat format);

// Writes a store back out; text output uses shortest round-trip float
// formatting, so load(write(store)) == store.
void write_word_vectors(const EmbeddingStore& store, std::ostream& out,
                        WordVectorFormat format);

// cos(a, b) = dot(a, b) / (|a|·|b|), clamped to [-1, 1] to absorb
// floating-point overshoot. cosine(x, x) == 1.0 exactly.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace embedgraph
