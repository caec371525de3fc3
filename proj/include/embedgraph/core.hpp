#pragma once

// Domain types for the three graph kinds:
//
//   EmbeddedGraph  - directed graph whose edges carry d-dimensional embedding
//                    vectors (one vector per edge)
//   WeightedGraph  - same topology with a scalar weight per edge
//   EdgeGraph      - bare topology
//
// All three are immutable after construction and validated on construction;
// they are safe to share and read concurrently. Vertices and edges iterate in
// deterministic sorted order (by name, by (source, target)).

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "embedgraph/errors.hpp"

namespace embedgraph {

// A vertex is identified by a non-empty text token, unique within its graph.
using VertexId = std::string;

// Ordered endpoint pair. A graph holds at most one edge per pair; self-loops
// are allowed.
struct EdgeKey {
    VertexId source;
    VertexId target;

    auto operator<=>(const EdgeKey&) const = default;
};

// Dense real vector labeling an edge (or acting as a translation target).
// Construction rejects empty, non-finite, and zero-norm vectors, so every
// downstream cosine is well defined.
class EmbeddingVector {
  public:
    explicit EmbeddingVector(std::vector<double> components);

    std::size_t dim() const { return components_.size(); }
    const std::vector<double>& components() const { return components_; }
    double operator[](std::size_t i) const { return components_[i]; }

    auto begin() const { return components_.begin(); }
    auto end() const { return components_.end(); }

    bool operator==(const EmbeddingVector&) const = default;

  private:
    std::vector<double> components_;
};

// Inner product, accumulated in double precision. Throws DimensionMismatch.
double dot(const EmbeddingVector& a, const EmbeddingVector& b);

// Euclidean norm.
double norm(const EmbeddingVector& a);

class EmbeddedGraph {
  public:
    // Builds a validated graph. dim is inferred from the first edge vector;
    // a graph without edges needs dim supplied explicitly. When both are
    // present they must agree.
    //
    // Throws DuplicateVertex, DuplicateEdge, UnknownEndpoint,
    // DimensionMismatch (also for a missing explicit dim on an edgeless
    // graph); ZeroVector and NonFiniteComponent surface from the vectors
    // themselves.
    EmbeddedGraph(std::vector<VertexId> vertices,
                  std::vector<std::pair<EdgeKey, EmbeddingVector>> edges,
                  std::optional<std::size_t> dim = std::nullopt);

    const std::set<VertexId>& vertices() const { return vertices_; }
    const std::map<EdgeKey, EmbeddingVector>& edges() const { return edges_; }
    std::size_t dim() const { return dim_; }
    bool has_vertex(const VertexId& v) const { return vertices_.contains(v); }

    bool operator==(const EmbeddedGraph&) const = default;

  private:
    std::set<VertexId> vertices_;
    std::map<EdgeKey, EmbeddingVector> edges_;
    std::size_t dim_ = 0;
};

class WeightedGraph {
  public:
    // Throws DuplicateVertex, DuplicateEdge, UnknownEndpoint, and
    // NonFiniteComponent for a non-finite weight.
    WeightedGraph(std::vector<VertexId> vertices,
                  std::vector<std::pair<EdgeKey, double>> edges);

    const std::set<VertexId>& vertices() const { return vertices_; }
    const std::map<EdgeKey, double>& edges() const { return edges_; }
    bool has_vertex(const VertexId& v) const { return vertices_.contains(v); }

    bool operator==(const WeightedGraph&) const = default;

  private:
    std::set<VertexId> vertices_;
    std::map<EdgeKey, double> edges_;
};

class EdgeGraph {
  public:
    EdgeGraph(std::vector<VertexId> vertices, std::vector<EdgeKey> edges);

    const std::set<VertexId>& vertices() const { return vertices_; }
    const std::set<EdgeKey>& edges() const { return edges_; }
    bool has_vertex(const VertexId& v) const { return vertices_.contains(v); }

    bool operator==(const EdgeGraph&) const = default;

  private:
    std::set<VertexId> vertices_;
    std::set<EdgeKey> edges_;
};

struct GraphStats {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::size_t dim = 0;

    bool operator==(const GraphStats&) const = default;
};

GraphStats graph_stats(const EmbeddedGraph& g);

}  // namespace embedgraph
