#pragma once

#include <stdexcept>
#include <string>

namespace embedgraph {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Graph construction.
struct DuplicateVertex : Error {
    explicit DuplicateVertex(const std::string& name)
        : Error("duplicate vertex: '" + name + "'") {}
};

struct DuplicateEdge : Error {
    DuplicateEdge(const std::string& source, const std::string& target)
        : Error("duplicate edge: '" + source + "' -> '" + target + "'") {}
};

struct UnknownEndpoint : Error {
    UnknownEndpoint(const std::string& source, const std::string& target,
                    const std::string& missing)
        : Error("edge '" + source + "' -> '" + target + "' references unknown vertex '" +
                missing + "'") {}
};

struct DimensionMismatch : Error {
    using Error::Error;
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)) {}
};

struct ZeroVector : Error {
    ZeroVector() : Error("zero vector: cosine similarity is undefined on it") {}
    using Error::Error;
};

struct NonFiniteComponent : Error {
    explicit NonFiniteComponent(std::size_t index)
        : Error("non-finite vector component at index " + std::to_string(index)) {}
    using Error::Error;
};

// Word-vector model loading.
struct MalformedHeader : Error {
    using Error::Error;
};

struct TruncatedRecord : Error {
    using Error::Error;
};

struct DuplicateToken : Error {
    explicit DuplicateToken(const std::string& token)
        : Error("duplicate token: '" + token + "'"), token_(token) {}
    const std::string& token() const { return token_; }

  private:
    std::string token_;
};

struct UnknownToken : Error {
    explicit UnknownToken(const std::string& token)
        : Error("unknown token: '" + token + "' is not in the model's vocabulary"),
          token_(token) {}
    const std::string& token() const { return token_; }

  private:
    std::string token_;
};

// Metrics.
struct UnknownVertex : Error {
    explicit UnknownVertex(const std::string& name)
        : Error("unknown vertex: '" + name + "'") {}
};

struct NoPath : Error {
    NoPath(const std::string& from, const std::string& to)
        : Error("no path from '" + from + "' to '" + to + "'") {}
    using Error::Error;
};

struct NoCorrespondingEdges : Error {
    NoCorrespondingEdges()
        : Error("graphs have no corresponding edges; similarity is undefined") {}
};

// Storage.
struct TooLargeForDense : Error {
    TooLargeForDense(std::size_t vertices, std::size_t cap)
        : Error("graph with " + std::to_string(vertices) +
                " vertices exceeds the dense representation cap of " + std::to_string(cap)) {}
};

struct SchemaError : Error {
    using Error::Error;
};

struct MissingLabel : Error {
    MissingLabel(const std::string& source, const std::string& target)
        : Error("no token label for edge '" + source + "' -> '" + target + "'") {}
};

}  // namespace embedgraph
