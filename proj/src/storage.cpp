#include "embedgraph/storage.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>
#include <unordered_map>
#include <utility>

#include <json.hpp>

namespace embedgraph {

namespace {

std::size_t total_name_bytes(const std::vector<VertexId>& names) {
    std::size_t sum = 0;
    for (const VertexId& name : names) {
        sum += name.size();
    }
    return sum;
}

}  // namespace

std::size_t AdjacencyMatrixRep::estimated_bytes() const {
    std::size_t n = vertex_order.size();
    return total_name_bytes(vertex_order) + n * n * (1 + 8 * dim);
}

std::size_t EdgeListRep::estimated_bytes() const {
    std::size_t sum = total_name_bytes(isolated_vertices);
    for (const EdgeListRow& row : rows) {
        sum += row.source.size() + row.target.size() + 8 * dim;
    }
    return sum;
}

std::size_t VectorLabeledEdgeListRep::estimated_bytes() const {
    std::size_t sum = total_name_bytes(isolated_vertices) + 8 * dim * vector_table.size();
    for (const VleRow& row : rows) {
        sum += row.source.size() + row.target.size() + 8;
    }
    return sum;
}

namespace {

std::vector<VertexId> sorted_vertices(const EmbeddedGraph& g) {
    return {g.vertices().begin(), g.vertices().end()};
}

std::vector<VertexId> isolated_of(const EmbeddedGraph& g) {
    std::set<VertexId> touched;
    for (const auto& [key, vec] : g.edges()) {
        touched.insert(key.source);
        touched.insert(key.target);
    }
    std::vector<VertexId> out;
    for (const VertexId& v : g.vertices()) {
        if (!touched.contains(v)) {
            out.push_back(v);
        }
    }
    return out;
}

AdjacencyMatrixRep to_adjacency(const EmbeddedGraph& g, std::size_t dense_cap) {
    std::size_t n = g.vertices().size();
    if (n > dense_cap) {
        throw TooLargeForDense(n, dense_cap);
    }
    AdjacencyMatrixRep rep;
    rep.vertex_order = sorted_vertices(g);
    rep.dim = g.dim();
    rep.presence.assign(n * n, 0);
    rep.vectors.assign(n * n * rep.dim, 0.0);

    std::unordered_map<VertexId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        index.emplace(rep.vertex_order[i], i);
    }
    for (const auto& [key, vec] : g.edges()) {
        std::size_t cell = index.at(key.source) * n + index.at(key.target);
        rep.presence[cell] = 1;
        std::copy(vec.begin(), vec.end(), rep.vectors.begin() + cell * rep.dim);
    }
    return rep;
}

EdgeListRep to_edge_list(const EmbeddedGraph& g) {
    EdgeListRep rep;
    rep.dim = g.dim();
    rep.isolated_vertices = isolated_of(g);
    for (const auto& [key, vec] : g.edges()) {
        rep.rows.push_back({key.source, key.target, vec});
    }
    return rep;
}

VectorLabeledEdgeListRep to_vle(const EmbeddedGraph& g) {
    VectorLabeledEdgeListRep rep;
    rep.dim = g.dim();
    rep.isolated_vertices = isolated_of(g);
    std::map<std::vector<std::uint64_t>, std::size_t> seen;
    for (const auto& [key, vec] : g.edges()) {
        std::vector<std::uint64_t> bits;
        bits.reserve(vec.dim());
        for (double c : vec) {
            bits.push_back(std::bit_cast<std::uint64_t>(c));
        }
        auto [slot, inserted] = seen.try_emplace(std::move(bits), rep.vector_table.size());
        if (inserted) {
            rep.vector_table.push_back(vec);
        }
        rep.rows.push_back({key.source, key.target, slot->second});
    }
    return rep;
}

}  // namespace

GraphRepresentation to_representation(const EmbeddedGraph& g, RepKind kind,
                                      std::size_t dense_cap) {
    switch (kind) {
        case RepKind::adjacency:
            return to_adjacency(g, dense_cap);
        case RepKind::edge_list:
            return to_edge_list(g);
        case RepKind::vle:
            return to_vle(g);
    }
    throw Error("unknown representation kind");
}

EmbeddedGraph from_representation(const AdjacencyMatrixRep& rep) {
    std::size_t n = rep.vertex_order.size();
    std::vector<std::pair<EdgeKey, EmbeddingVector>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!rep.has_edge(i, j)) {
                continue;
            }
            auto span = rep.vector_at(i, j);
            edges.emplace_back(EdgeKey{rep.vertex_order[i], rep.vertex_order[j]},
                               EmbeddingVector(std::vector<double>(span.begin(), span.end())));
        }
    }
    return EmbeddedGraph(rep.vertex_order, std::move(edges), rep.dim);
}

EmbeddedGraph from_representation(const EdgeListRep& rep) {
    std::set<VertexId> names(rep.isolated_vertices.begin(), rep.isolated_vertices.end());
    std::vector<std::pair<EdgeKey, EmbeddingVector>> edges;
    for (const EdgeListRow& row : rep.rows) {
        names.insert(row.source);
        names.insert(row.target);
        edges.emplace_back(EdgeKey{row.source, row.target}, row.vector);
    }
    return EmbeddedGraph(std::vector<VertexId>(names.begin(), names.end()), std::move(edges),
                         rep.dim);
}

EmbeddedGraph from_representation(const VectorLabeledEdgeListRep& rep) {
    std::set<VertexId> names(rep.isolated_vertices.begin(), rep.isolated_vertices.end());
    std::vector<std::pair<EdgeKey, EmbeddingVector>> edges;
    for (const VleRow& row : rep.rows) {
        if (row.vector_id >= rep.vector_table.size()) {
            throw SchemaError("edge '" + row.source + "' -> '" + row.target + "': vector_id " +
                              std::to_string(row.vector_id) +
                              " is out of range (vector table has " +
                              std::to_string(rep.vector_table.size()) + " entries)");
        }
        names.insert(row.source);
        names.insert(row.target);
        edges.emplace_back(EdgeKey{row.source, row.target}, rep.vector_table[row.vector_id]);
    }
    return EmbeddedGraph(std::vector<VertexId>(names.begin(), names.end()), std::move(edges),
                         rep.dim);
}

EmbeddedGraph from_representation(const GraphRepresentation& rep) {
    return std::visit([](const auto& r) { return from_representation(r); }, rep);
}

// JSON interchange.

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
    throw SchemaError(path + ": " + what);
}

json parse_document(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        schema_fail("$", "top-level value must be an object");
    }
    return doc;
}

void check_fields(const json& obj, const std::string& path,
                  std::initializer_list<std::string_view> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            schema_fail(path, "unexpected field '" + it.key() + "'");
        }
    }
}

const json& require(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        schema_fail(path, std::string("missing field '") + key + "'");
    }
    return *it;
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) {
        schema_fail(path, "must be a string");
    }
    return j.get<std::string>();
}

std::size_t as_positive_int(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) {
        schema_fail(path, "must be a positive integer");
    }
    return j.get<std::size_t>();
}

std::size_t as_index(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) {
        schema_fail(path, "must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        schema_fail(path, "must be a number");
    }
    return j.get<double>();
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) {
        schema_fail(path, "must be an array");
    }
    return j;
}

const json& as_object(const json& j, const std::string& path) {
    if (!j.is_object()) {
        schema_fail(path, "must be an object");
    }
    return j;
}

std::string indexed(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

std::vector<double> read_components(const json& j, const std::string& path, std::size_t dim) {
    as_array(j, path);
    if (j.size() != dim) {
        schema_fail(path, "expected " + std::to_string(dim) + " components, got " +
                              std::to_string(j.size()));
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], indexed(path, i)));
    }
    return out;
}

std::vector<VertexId> read_vertex_names(const json& doc) {
    const json& arr = as_array(require(doc, "$", "vertices"), "$.vertices");
    std::vector<VertexId> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(as_string(arr[i], indexed("$.vertices", i)));
    }
    return out;
}

EmbeddedGraph embedded_from_json(const json& doc) {
    bool vle = doc.contains("vectors");
    if (vle) {
        check_fields(doc, "$", {"dim", "edges", "vectors", "vertices"});
    } else {
        check_fields(doc, "$", {"dim", "edges", "vertices"});
    }
    std::size_t dim = as_positive_int(require(doc, "$", "dim"), "$.dim");
    std::vector<VertexId> vertices = read_vertex_names(doc);

    std::vector<EmbeddingVector> table;
    if (vle) {
        const json& arr = as_array(doc.at("vectors"), "$.vectors");
        table.reserve(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) {
            table.emplace_back(read_components(arr[i], indexed("$.vectors", i), dim));
        }
    }

    const json& arr = as_array(require(doc, "$", "edges"), "$.edges");
    std::vector<std::pair<EdgeKey, EmbeddingVector>> edges;
    edges.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string path = indexed("$.edges", i);
        const json& e = as_object(arr[i], path);
        if (vle) {
            check_fields(e, path, {"source", "target", "vector_id"});
        } else {
            check_fields(e, path, {"source", "target", "vector"});
        }
        EdgeKey key{as_string(require(e, path, "source"), path + ".source"),
                    as_string(require(e, path, "target"), path + ".target")};
        if (vle) {
            std::size_t id = as_index(require(e, path, "vector_id"), path + ".vector_id");
            if (id >= table.size()) {
                schema_fail(path + ".vector_id",
                            std::to_string(id) + " is out of range (vector table has " +
                                std::to_string(table.size()) + " entries)");
            }
            edges.emplace_back(std::move(key), table[id]);
        } else {
            edges.emplace_back(std::move(key),
                               EmbeddingVector(read_components(require(e, path, "vector"),
                                                               path + ".vector", dim)));
        }
    }
    return EmbeddedGraph(std::move(vertices), std::move(edges), dim);
}

WeightedGraph weighted_from_json(const json& doc) {
    check_fields(doc, "$", {"edges", "vertices"});
    std::vector<VertexId> vertices = read_vertex_names(doc);
    const json& arr = as_array(require(doc, "$", "edges"), "$.edges");
    std::vector<std::pair<EdgeKey, double>> edges;
    edges.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string path = indexed("$.edges", i);
        const json& e = as_object(arr[i], path);
        check_fields(e, path, {"source", "target", "weight"});
        edges.emplace_back(EdgeKey{as_string(require(e, path, "source"), path + ".source"),
                                   as_string(require(e, path, "target"), path + ".target")},
                           as_number(require(e, path, "weight"), path + ".weight"));
    }
    return WeightedGraph(std::move(vertices), std::move(edges));
}

EdgeGraph edge_graph_from_json(const json& doc) {
    check_fields(doc, "$", {"edges", "vertices"});
    std::vector<VertexId> vertices = read_vertex_names(doc);
    const json& arr = as_array(require(doc, "$", "edges"), "$.edges");
    std::vector<EdgeKey> edges;
    edges.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string path = indexed("$.edges", i);
        const json& e = as_object(arr[i], path);
        check_fields(e, path, {"source", "target"});
        edges.push_back(EdgeKey{as_string(require(e, path, "source"), path + ".source"),
                                as_string(require(e, path, "target"), path + ".target")});
    }
    return EdgeGraph(std::move(vertices), std::move(edges));
}

json vector_to_json(const EmbeddingVector& v) {
    json arr = json::array();
    for (double c : v) {
        arr.push_back(c);
    }
    return arr;
}

void dump_document(const json& doc, std::ostream& out) {
    out << doc.dump(2) << '\n';
}

}  // namespace

EmbeddedGraph read_graph_json(std::istream& in) {
    return embedded_from_json(parse_document(in));
}

void write_graph_json(const EmbeddedGraph& g, std::ostream& out, GraphJsonKind kind) {
    json doc;
    doc["dim"] = g.dim();
    doc["vertices"] = json::array();
    for (const VertexId& v : g.vertices()) {
        doc["vertices"].push_back(v);
    }
    doc["edges"] = json::array();
    if (kind == GraphJsonKind::edge_list) {
        for (const auto& [key, vec] : g.edges()) {
            json e;
            e["source"] = key.source;
            e["target"] = key.target;
            e["vector"] = vector_to_json(vec);
            doc["edges"].push_back(std::move(e));
        }
    } else {
        auto rep = to_vle(g);
        doc["vectors"] = json::array();
        for (const EmbeddingVector& v : rep.vector_table) {
            doc["vectors"].push_back(vector_to_json(v));
        }
        for (const VleRow& row : rep.rows) {
            json e;
            e["source"] = row.source;
            e["target"] = row.target;
            e["vector_id"] = row.vector_id;
            doc["edges"].push_back(std::move(e));
        }
    }
    dump_document(doc, out);
}

WeightedGraph read_weighted_graph_json(std::istream& in) {
    return weighted_from_json(parse_document(in));
}

void write_weighted_graph_json(const WeightedGraph& g, std::ostream& out) {
    json doc;
    doc["vertices"] = json::array();
    for (const VertexId& v : g.vertices()) {
        doc["vertices"].push_back(v);
    }
    doc["edges"] = json::array();
    for (const auto& [key, weight] : g.edges()) {
        json e;
        e["source"] = key.source;
        e["target"] = key.target;
        e["weight"] = weight;
        doc["edges"].push_back(std::move(e));
    }
    dump_document(doc, out);
}

EdgeGraph read_edge_graph_json(std::istream& in) {
    return edge_graph_from_json(parse_document(in));
}

void write_edge_graph_json(const EdgeGraph& g, std::ostream& out) {
    json doc;
    doc["vertices"] = json::array();
    for (const VertexId& v : g.vertices()) {
        doc["vertices"].push_back(v);
    }
    doc["edges"] = json::array();
    for (const EdgeKey& key : g.edges()) {
        json e;
        e["source"] = key.source;
        e["target"] = key.target;
        doc["edges"].push_back(std::move(e));
    }
    dump_document(doc, out);
}

AnyGraph read_any_graph_json(std::istream& in) {
    json doc = parse_document(in);
    if (doc.contains("vectors") || doc.contains("dim")) {
        return embedded_from_json(doc);
    }
    const json& arr = as_array(require(doc, "$", "edges"), "$.edges");
    if (!arr.empty()) {
        const json& first = as_object(arr[0], "$.edges[0]");
        if (first.contains("vector") || first.contains("vector_id")) {
            return embedded_from_json(doc);  // fails with the missing-dim diagnostic
        }
        if (first.contains("weight")) {
            return weighted_from_json(doc);
        }
    }
    return edge_graph_from_json(doc);
}

// DOT export.

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string format_weight(double w) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", w);
    return buf;
}

std::string token_label(const EdgeTokenMap* tokens, const EdgeKey& key) {
    if (tokens == nullptr) {
        throw Error("label mode 'token' needs an edge token map");
    }
    auto it = tokens->find(key);
    if (it == tokens->end()) {
        throw MissingLabel(key.source, key.target);
    }
    return it->second;
}

std::string render_dot(const std::set<VertexId>& vertices,
                       const std::vector<std::pair<EdgeKey, std::string>>& edges,
                       bool labeled) {
    std::string out = "digraph {\n";
    for (const VertexId& v : vertices) {
        out += "  " + dot_quote(v) + ";\n";
    }
    for (const auto& [key, label] : edges) {
        out += "  " + dot_quote(key.source) + " -> " + dot_quote(key.target);
        if (labeled) {
            out += " [label=" + dot_quote(label) + "]";
        }
        out += ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace

std::string export_dot(const EdgeGraph& g, DotLabelMode mode, const EdgeTokenMap* tokens) {
    if (mode == DotLabelMode::weight) {
        throw Error("label mode 'weight' needs a weighted graph");
    }
    std::vector<std::pair<EdgeKey, std::string>> edges;
    for (const EdgeKey& key : g.edges()) {
        edges.emplace_back(key, mode == DotLabelMode::token ? token_label(tokens, key) : "");
    }
    return render_dot(g.vertices(), edges, mode != DotLabelMode::none);
}

std::string export_dot(const WeightedGraph& g, DotLabelMode mode, const EdgeTokenMap* tokens) {
    std::vector<std::pair<EdgeKey, std::string>> edges;
    for (const auto& [key, weight] : g.edges()) {
        std::string label;
        if (mode == DotLabelMode::weight) {
            label = format_weight(weight);
        } else if (mode == DotLabelMode::token) {
            label = token_label(tokens, key);
        }
        edges.emplace_back(key, std::move(label));
    }
    return render_dot(g.vertices(), edges, mode != DotLabelMode::none);
}

std::string export_dot(const EmbeddedGraph& g, DotLabelMode mode, const EdgeTokenMap* tokens) {
    if (mode == DotLabelMode::weight) {
        throw Error("label mode 'weight' needs a weighted graph");
    }
    std::vector<std::pair<EdgeKey, std::string>> edges;
    for (const auto& [key, vec] : g.edges()) {
        edges.emplace_back(key, mode == DotLabelMode::token ? token_label(tokens, key) : "");
    }
    return render_dot(g.vertices(), edges, mode != DotLabelMode::none);
}

}  // namespace embedgraph
