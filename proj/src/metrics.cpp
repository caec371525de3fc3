#include "embedgraph/metrics.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "embedgraph/embeddings.hpp"

namespace embedgraph {

double edge_distance(const EmbeddingVector& x, const EmbeddingVector& target) {
    return 1.0 - cosine(x, target);
}

namespace {

struct Transition {
    VertexId to;
    double dist;
    EdgeKey key;  // traversal orientation
};

using AdjacencyIndex = std::unordered_map<VertexId, std::vector<Transition>>;

AdjacencyIndex build_adjacency(const EmbeddedGraph& g, const EmbeddingVector& target,
                               Direction direction) {
    AdjacencyIndex adj;
    for (const auto& [key, vec] : g.edges()) {
        double d = edge_distance(vec, target);
        adj[key.source].push_back({key.target, d, key});
        if (direction == Direction::undirected && key.source != key.target) {
            adj[key.target].push_back({key.source, d, EdgeKey{key.target, key.source}});
        }
    }
    return adj;
}

// Search label, totally ordered by (distance, edge count, edge sequence).
// Extending a label along an edge always yields a strictly greater one, so
// the first label popped for a vertex is its optimum and the documented
// tie-breaking falls out of the order itself.
struct Label {
    double dist = 0.0;
    std::size_t hops = 0;
    std::vector<EdgeKey> path;
};

bool label_less(const Label& a, const Label& b) {
    if (a.dist != b.dist) {
        return a.dist < b.dist;
    }
    if (a.hops != b.hops) {
        return a.hops < b.hops;
    }
    return a.path < b.path;
}

struct QueueEntry {
    Label label;
    VertexId vertex;
};

struct QueueOrder {
    // priority_queue keeps the largest on top; invert for a min-queue.
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (label_less(a.label, b.label)) {
            return false;
        }
        if (label_less(b.label, a.label)) {
            return true;
        }
        return a.vertex > b.vertex;
    }
};

}  // namespace

PathResult path_distance(const EmbeddedGraph& g, const VertexId& from, const VertexId& to,
                         const EmbeddingVector& target, Direction direction) {
    if (!g.has_vertex(from)) {
        throw UnknownVertex(from);
    }
    if (!g.has_vertex(to)) {
        throw UnknownVertex(to);
    }
    if (target.dim() != g.dim()) {
        throw DimensionMismatch(g.dim(), target.dim());
    }
    if (from == to) {
        return PathResult{0.0, {}};
    }

    AdjacencyIndex adj = build_adjacency(g, target, direction);
    std::unordered_map<VertexId, Label> best;
    std::unordered_set<VertexId> settled;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue;
    queue.push({Label{}, from});

    while (!queue.empty()) {
        QueueEntry entry = queue.top();
        queue.pop();
        if (!settled.insert(entry.vertex).second) {
            continue;
        }
        if (entry.vertex == to) {
            return PathResult{entry.label.dist, std::move(entry.label.path)};
        }
        auto it = adj.find(entry.vertex);
        if (it == adj.end()) {
            continue;
        }
        for (const Transition& t : it->second) {
            if (settled.contains(t.to)) {
                continue;
            }
            Label cand{entry.label.dist + t.dist, entry.label.hops + 1, entry.label.path};
            cand.path.push_back(t.key);
            auto [slot, inserted] = best.try_emplace(t.to);
            if (inserted || label_less(cand, slot->second)) {
                slot->second = cand;
                queue.push({std::move(cand), t.to});
            }
        }
    }
    throw NoPath(from, to);
}

double route_distance(const EmbeddedGraph& g, std::span<const VertexId> route,
                      const EmbeddingVector& target, Direction direction) {
    if (route.empty()) {
        throw Error("route needs at least one vertex");
    }
    if (target.dim() != g.dim()) {
        throw DimensionMismatch(g.dim(), target.dim());
    }
    for (const VertexId& v : route) {
        if (!g.has_vertex(v)) {
            throw UnknownVertex(v);
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
        auto forward = g.edges().find(EdgeKey{route[i], route[i + 1]});
        auto backward = direction == Direction::undirected
                            ? g.edges().find(EdgeKey{route[i + 1], route[i]})
                            : g.edges().end();
        if (forward == g.edges().end() && backward == g.edges().end()) {
            throw NoPath("route has no edge between '" + route[i] + "' and '" +
                         route[i + 1] + "'");
        }
        double d = std::numeric_limits<double>::infinity();
        if (forward != g.edges().end()) {
            d = edge_distance(forward->second, target);
        }
        if (backward != g.edges().end()) {
            d = std::min(d, edge_distance(backward->second, target));
        }
        total += d;
    }
    return total;
}

CorrespondenceReport edge_correspondence(const EmbeddedGraph& a, const EmbeddedGraph& b) {
    CorrespondenceReport report;
    for (const auto& [key, vec] : a.edges()) {
        if (b.edges().contains(key)) {
            report.matched.insert(key);
        } else {
            report.only_in_first.insert(key);
        }
    }
    for (const auto& [key, vec] : b.edges()) {
        if (!a.edges().contains(key)) {
            report.only_in_second.insert(key);
        }
    }
    return report;
}

double graph_similarity(const EmbeddedGraph& a, const EmbeddedGraph& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(a.dim(), b.dim());
    }
    CorrespondenceReport report = edge_correspondence(a, b);
    if (report.matched.empty()) {
        throw NoCorrespondingEdges();
    }
    double sum = 0.0;
    for (const EdgeKey& key : report.matched) {
        sum += cosine(a.edges().at(key), b.edges().at(key));
    }
    return sum / static_cast<double>(report.matched.size());
}

}  // namespace embedgraph
