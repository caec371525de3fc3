#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "embedgraph/core.hpp"
#include "embedgraph/errors.hpp"

namespace embedgraph {

// Physical representations of an embedded-graph. Each is a plain value that
// to_representation/from_representation map losslessly to and from
// EmbeddedGraph; none of them is the working in-memory form.

enum class RepKind { adjacency, edge_list, vle };

// Dense N x N layout. Presence checks are O(1) index arithmetic, but space is
// O(N^2 * d) no matter how few edges exist, so conversion refuses graphs past
// a configurable vertex cap.
struct AdjacencyMatrixRep {
    std::vector<VertexId> vertex_order;  // sorted
    std::size_t dim = 0;
    std::vector<std::uint8_t> presence;  // n*n, row-major
    std::vector<double> vectors;         // n*n*dim, row-major; meaningful only where present

    bool has_edge(std::size_t i, std::size_t j) const {
        return presence[i * vertex_order.size() + j] != 0;
    }
    std::span<const double> vector_at(std::size_t i, std::size_t j) const {
        return {vectors.data() + (i * vertex_order.size() + j) * dim, dim};
    }
    std::size_t estimated_bytes() const;

    bool operator==(const AdjacencyMatrixRep&) const = default;
};

struct EdgeListRow {
    VertexId source;
    VertexId target;
    EmbeddingVector vector;

    bool operator==(const EdgeListRow&) const = default;
};

struct EdgeListRep {
    std::size_t dim = 0;
    std::vector<EdgeListRow> rows;            // sorted by (source, target)
    std::vector<VertexId> isolated_vertices;  // sorted

    std::size_t estimated_bytes() const;

    bool operator==(const EdgeListRep&) const = default;
};

struct VleRow {
    VertexId source;
    VertexId target;
    std::size_t vector_id;  // index into vector_table

    bool operator==(const VleRow&) const = default;
};

// Edge rows share vectors through a table deduplicated by exact bit pattern.
// The table cannot be edited per edge, it is a storage encoding only; loading
// always materializes a vector per edge.
struct VectorLabeledEdgeListRep {
    std::size_t dim = 0;
    std::vector<VleRow> rows;                  // sorted by (source, target)
    std::vector<EmbeddingVector> vector_table; // first-use order, no bitwise duplicates
    std::vector<VertexId> isolated_vertices;   // sorted

    std::size_t estimated_bytes() const;

    bool operator==(const VectorLabeledEdgeListRep&) const = default;
};

using GraphRepresentation =
    std::variant<AdjacencyMatrixRep, EdgeListRep, VectorLabeledEdgeListRep>;

inline constexpr std::size_t kDefaultDenseCap = 4096;

// Throws TooLargeForDense when kind is adjacency and the graph has more than
// dense_cap vertices.
GraphRepresentation to_representation(const EmbeddedGraph& g, RepKind kind,
                                      std::size_t dense_cap = kDefaultDenseCap);

// Inverse of to_representation; validates like the EmbeddedGraph constructor.
// A vector_id outside the table throws SchemaError.
EmbeddedGraph from_representation(const AdjacencyMatrixRep& rep);
EmbeddedGraph from_representation(const EdgeListRep& rep);
EmbeddedGraph from_representation(const VectorLabeledEdgeListRep& rep);
EmbeddedGraph from_representation(const GraphRepresentation& rep);

// JSON interchange. One top-level object per document:
//
//   embedded (inline):  {"dim": d, "vertices": [...], "edges":
//                        [{"source": s, "target": t, "vector": [...]}, ...]}
//   embedded (vle):     {"dim": d, "vertices": [...], "vectors": [[...], ...],
//                        "edges": [{"source": s, "target": t, "vector_id": i}, ...]}
//   weighted:           {"vertices": [...], "edges":
//                        [{"source": s, "target": t, "weight": w}, ...]}
//   edge-graph:         {"vertices": [...], "edges":
//                        [{"source": s, "target": t}, ...]}
//
// Readers reject unknown fields and report problems as SchemaError with a
// JSON-path diagnostic (parse failures keep nlohmann's line/column text).
// Writers emit two-space indentation, alphabetically ordered keys, shortest
// round-trip float formatting, and a trailing newline, so write-then-read is
// identity and equal graphs serialize byte-identically.

enum class GraphJsonKind { edge_list, vle };

EmbeddedGraph read_graph_json(std::istream& in);
void write_graph_json(const EmbeddedGraph& g, std::ostream& out,
                      GraphJsonKind kind = GraphJsonKind::edge_list);

WeightedGraph read_weighted_graph_json(std::istream& in);
void write_weighted_graph_json(const WeightedGraph& g, std::ostream& out);

EdgeGraph read_edge_graph_json(std::istream& in);
void write_edge_graph_json(const EdgeGraph& g, std::ostream& out);

// Reads any of the four document shapes, inferring which from the fields.
using AnyGraph = std::variant<EmbeddedGraph, WeightedGraph, EdgeGraph>;
AnyGraph read_any_graph_json(std::istream& in);

// DOT export. Deterministic: vertices and edges in sorted order, identifiers
// always quoted. Label modes: none works for every graph kind; weight only
// for weighted graphs; token needs a caller-supplied edge-to-token map and
// throws MissingLabel for an unmapped edge.

enum class DotLabelMode { none, weight, token };
using EdgeTokenMap = std::map<EdgeKey, std::string>;

std::string export_dot(const EdgeGraph& g, DotLabelMode mode = DotLabelMode::none,
                       const EdgeTokenMap* tokens = nullptr);
std::string export_dot(const WeightedGraph& g, DotLabelMode mode = DotLabelMode::none,
                       const EdgeTokenMap* tokens = nullptr);
std::string export_dot(const EmbeddedGraph& g, DotLabelMode mode = DotLabelMode::none,
                       const EdgeTokenMap* tokens = nullptr);

}  // namespace embedgraph
