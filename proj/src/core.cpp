#include "embedgraph/core.hpp"

#include <cmath>

namespace embedgraph {

namespace {

std::set<VertexId> validated_vertex_set(std::vector<VertexId> vertices) {
    std::set<VertexId> out;
    for (auto& v : vertices) {
        if (v.empty()) {
            throw Error("vertex name must be non-empty");
        }
        if (out.contains(v)) {
            throw DuplicateVertex(v);
        }
        out.insert(std::move(v));
    }
    return out;
}

void check_endpoints(const std::set<VertexId>& vertices, const EdgeKey& key) {
    if (!vertices.contains(key.source)) {
        throw UnknownEndpoint(key.source, key.target, key.source);
    }
    if (!vertices.contains(key.target)) {
        throw UnknownEndpoint(key.source, key.target, key.target);
    }
}

}  // namespace

EmbeddingVector::EmbeddingVector(std::vector<double> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw DimensionMismatch("embedding vector must have at least one component");
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (!std::isfinite(components_[i])) {
            throw NonFiniteComponent(i);
        }
        norm2 += components_[i] * components_[i];
    }
    if (!std::isfinite(norm2)) {
        throw NonFiniteComponent("squared norm overflows double precision");
    }
    if (norm2 == 0.0) {
        throw ZeroVector();
    }
}

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(a.dim(), b.dim());
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

double norm(const EmbeddingVector& a) {
    double sum = 0.0;
    for (double c : a) {
        sum += c * c;
    }
    return std::sqrt(sum);
}

EmbeddedGraph::EmbeddedGraph(std::vector<VertexId> vertices,
                             std::vector<std::pair<EdgeKey, EmbeddingVector>> edges,
                             std::optional<std::size_t> dim)
    : vertices_(validated_vertex_set(std::move(vertices))) {
    if (edges.empty() && !dim) {
        throw DimensionMismatch(
            "a graph without edges needs an explicit dimension (none to infer from)");
    }
    dim_ = dim ? *dim : edges.front().second.dim();
    if (dim_ == 0) {
        throw DimensionMismatch("dimension must be at least 1");
    }
    for (auto& [key, vec] : edges) {
        check_endpoints(vertices_, key);
        if (vec.dim() != dim_) {
            throw DimensionMismatch(dim_, vec.dim());
        }
        if (edges_.contains(key)) {
            throw DuplicateEdge(key.source, key.target);
        }
        edges_.emplace(std::move(key), std::move(vec));
    }
}

WeightedGraph::WeightedGraph(std::vector<VertexId> vertices,
                             std::vector<std::pair<EdgeKey, double>> edges)
    : vertices_(validated_vertex_set(std::move(vertices))) {
    for (auto& [key, weight] : edges) {
        check_endpoints(vertices_, key);
        if (!std::isfinite(weight)) {
            throw NonFiniteComponent("edge weight for '" + key.source + "' -> '" +
                                     key.target + "' is not finite");
        }
        if (edges_.contains(key)) {
            throw DuplicateEdge(key.source, key.target);
        }
        edges_.emplace(std::move(key), weight);
    }
}

EdgeGraph::EdgeGraph(std::vector<VertexId> vertices, std::vector<EdgeKey> edges)
    : vertices_(validated_vertex_set(std::move(vertices))) {
    for (auto& key : edges) {
        check_endpoints(vertices_, key);
        if (edges_.contains(key)) {
            throw DuplicateEdge(key.source, key.target);
        }
        edges_.insert(std::move(key));
    }
}

GraphStats graph_stats(const EmbeddedGraph& g) {
    return {g.vertices().size(), g.edges().size(), g.dim()};
}

}  // namespace embedgraph
