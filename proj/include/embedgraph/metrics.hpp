#pragma once

// Target-conditioned distances and graph similarity.
//
// Every edge gets a length of 1 - cos(X(e), target), which is nonnegative,
// so shortest routes are found with a label-setting search. Graph similarity
// averages the cosine between embedding vectors of corresponding edges.

#include <set>
#include <span>
#include <vector>

#include "embedgraph/core.hpp"

namespace embedgraph {

// 1 - cos(x, target), in [0, 2]; 0 exactly for identical vectors.
double edge_distance(const EmbeddingVector& x, const EmbeddingVector& target);

enum class Direction {
    directed,    // edges traversed source -> target only
    undirected,  // every edge traversable both ways with the same vector
};

struct PathResult {
    double total_distance = 0.0;
    // Edges in traversal order: each edge's target is the next edge's source.
    // Under Direction::undirected an entry may be the reverse orientation of
    // the stored edge it crosses. Empty when from == to.
    std::vector<EdgeKey> path;

    bool operator==(const PathResult&) const = default;
};

// Minimum total edge distance over all routes from `from` to `to`, and the
// minimizing route. Ties break toward fewer edges, then lexicographically
// smaller edge sequence. Throws UnknownVertex and NoPath.
PathResult path_distance(const EmbeddedGraph& g, const VertexId& from, const VertexId& to,
                         const EmbeddingVector& target,
                         Direction direction = Direction::directed);

// Total edge distance along one explicit route (consecutive vertices). Each
// hop must cross an existing edge; under Direction::undirected either
// orientation works and the cheaper one counts when both exist. Throws
// UnknownVertex and NoPath (for a missing hop).
double route_distance(const EmbeddedGraph& g, std::span<const VertexId> route,
                      const EmbeddingVector& target,
                      Direction direction = Direction::directed);

// Edges matched by (source, target) vertex names across two graphs, plus the
// leftovers on each side.
struct CorrespondenceReport {
    std::set<EdgeKey> matched;
    std::set<EdgeKey> only_in_first;
    std::set<EdgeKey> only_in_second;

    bool operator==(const CorrespondenceReport&) const = default;
};

CorrespondenceReport edge_correspondence(const EmbeddedGraph& a, const EmbeddedGraph& b);

// Mean cosine between the embedding vectors of corresponding edges, in
// [-1, 1]. Unmatched edges are excluded, not penalized. Throws
// DimensionMismatch and NoCorrespondingEdges.
double graph_similarity(const EmbeddedGraph& a, const EmbeddedGraph& b);

}  // namespace embedgraph
