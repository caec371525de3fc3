#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "embedgraph/errors.hpp"
#include "embedgraph/storage.hpp"
#include "embedgraph/translate.hpp"
#include "test_util.hpp"

using namespace embedgraph;

namespace {

EmbeddedGraph parse_embedded(const std::string& s) {
    std::istringstream in(s);
    return read_graph_json(in);
}

std::string dump_embedded(const EmbeddedGraph& g,
                          GraphJsonKind kind = GraphJsonKind::edge_list) {
    std::ostringstream out;
    write_graph_json(g, out, kind);
    return out.str();
}

template <typename Fn>
std::string schema_message(Fn&& fn) {
    try {
        fn();
    } catch (const SchemaError& e) {
        return e.what();
    }
    return "";
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++count;
    }
    return count;
}

const EmbeddingVector kUnit2({1.0, 0.0});

}  // namespace

TEST_CASE("edge list representation of a minimal graph") {
    EmbeddedGraph g({"a", "b"}, {{{"a", "b"}, kUnit2}});
    auto rep = std::get<EdgeListRep>(to_representation(g, RepKind::edge_list));
    CHECK(rep.dim == 2);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].source == "a");
    CHECK(rep.rows[0].target == "b");
    CHECK(rep.rows[0].vector == kUnit2);
    CHECK(rep.isolated_vertices.empty());
    CHECK(from_representation(rep) == g);
}

TEST_CASE("isolated vertices are carried explicitly") {
    EmbeddedGraph g({"a", "b", "x", "y"}, {{{"a", "b"}, kUnit2}});
    auto rep = std::get<EdgeListRep>(to_representation(g, RepKind::edge_list));
    CHECK(rep.isolated_vertices == std::vector<VertexId>{"x", "y"});
    CHECK(from_representation(rep) == g);
}

TEST_CASE("vle deduplicates bitwise-identical vectors only") {
    SUBCASE("shared vector stored once") {
        EmbeddedGraph g({"a", "b", "c"}, {{{"a", "b"}, kUnit2}, {{"b", "c"}, kUnit2}});
        auto rep = std::get<VectorLabeledEdgeListRep>(to_representation(g, RepKind::vle));
        REQUIRE(rep.rows.size() == 2);
        CHECK(rep.vector_table.size() == 1);
        CHECK(rep.rows[0].vector_id == 0);
        CHECK(rep.rows[1].vector_id == 0);
        CHECK(from_representation(rep) == g);
    }
    SUBCASE("a last-bit difference is preserved") {
        double nudged = std::nextafter(1.0, 2.0);
        EmbeddedGraph g({"a", "b", "c"}, {{{"a", "b"}, kUnit2},
                                          {{"b", "c"}, EmbeddingVector({nudged, 0.0})}});
        auto rep = std::get<VectorLabeledEdgeListRep>(to_representation(g, RepKind::vle));
        CHECK(rep.vector_table.size() == 2);
        CHECK(from_representation(rep) == g);
    }
    SUBCASE("table length equals edge count iff vectors are pairwise distinct") {
        EmbeddedGraph distinct({"a", "b", "c"},
                               {{{"a", "b"}, kUnit2}, {{"b", "c"}, EmbeddingVector({0.0, 1.0})}});
        auto rep = std::get<VectorLabeledEdgeListRep>(to_representation(distinct, RepKind::vle));
        CHECK(rep.vector_table.size() == rep.rows.size());
    }
}

TEST_CASE("vle vector ids must index the table") {
    VectorLabeledEdgeListRep rep;
    rep.dim = 2;
    rep.vector_table.push_back(kUnit2);
    rep.rows.push_back({"a", "b", 1});
    CHECK_THROWS_AS(from_representation(rep), SchemaError);
}

TEST_CASE("representations validate like graph construction") {
    EdgeListRep rep;
    rep.dim = 2;
    rep.rows.push_back({"a", "b", kUnit2});
    rep.rows.push_back({"a", "b", kUnit2});
    CHECK_THROWS_AS(from_representation(rep), DuplicateEdge);
}

TEST_CASE("adjacency representation basics") {
    EmbeddedGraph g = testutil::load_fixture_graph("relations_graph.json");
    auto rep = std::get<AdjacencyMatrixRep>(to_representation(g, RepKind::adjacency));
    CHECK(rep.vertex_order.size() == 14);
    CHECK(rep.presence.size() == 14 * 14);

    std::size_t present = 0;
    for (std::size_t i = 0; i < rep.vertex_order.size(); ++i) {
        for (std::size_t j = 0; j < rep.vertex_order.size(); ++j) {
            present += rep.has_edge(i, j) ? 1 : 0;
        }
    }
    CHECK(present == 13);
    CHECK(from_representation(rep) == g);

    // vector_at hands back the stored components where an edge exists
    std::size_t me = 0;
    std::size_t mother = 0;
    for (std::size_t i = 0; i < rep.vertex_order.size(); ++i) {
        if (rep.vertex_order[i] == "me") {
            me = i;
        }
        if (rep.vertex_order[i] == "mother") {
            mother = i;
        }
    }
    REQUIRE(rep.has_edge(me, mother));
    auto span = rep.vector_at(me, mother);
    CHECK(std::vector<double>(span.begin(), span.end()) ==
          g.edges().at({"me", "mother"}).components());
}

TEST_CASE("adjacency conversion refuses graphs past the vertex cap") {
    std::mt19937 rng(6601);
    EmbeddedGraph g = testutil::random_graph_fixed_dim(rng, 6, 10, 3);
    std::size_t n = g.vertices().size();
    CHECK_THROWS_AS(to_representation(g, RepKind::adjacency, n - 1), TooLargeForDense);
    CHECK_NOTHROW(to_representation(g, RepKind::adjacency, n));
}

TEST_CASE("round-trips hold on random graphs for every kind and for JSON") {
    std::mt19937 rng(6602);
    for (int i = 0; i < 40; ++i) {
        EmbeddedGraph g = testutil::random_graph(rng, 12, 30, 8);
        for (RepKind kind : {RepKind::adjacency, RepKind::edge_list, RepKind::vle}) {
            CHECK(from_representation(to_representation(g, kind)) == g);
        }
        for (GraphJsonKind kind : {GraphJsonKind::edge_list, GraphJsonKind::vle}) {
            CHECK(parse_embedded(dump_embedded(g, kind)) == g);
        }
    }
}

TEST_CASE("empty graphs round-trip with their dimension") {
    EmbeddedGraph no_vertices({}, {}, 5);
    EmbeddedGraph vertex_only({"a", "b"}, {}, 5);
    for (const EmbeddedGraph& g : {no_vertices, vertex_only}) {
        for (RepKind kind : {RepKind::adjacency, RepKind::edge_list, RepKind::vle}) {
            EmbeddedGraph back = from_representation(to_representation(g, kind));
            CHECK(back == g);
            CHECK(back.dim() == 5);
        }
        CHECK(parse_embedded(dump_embedded(g)) == g);
        CHECK(parse_embedded(dump_embedded(g, GraphJsonKind::vle)) == g);
    }
}

TEST_CASE("estimated bytes follow the documented growth claims") {
    auto chain = [](std::size_t vertices) {
        std::vector<VertexId> names;
        for (std::size_t i = 0; i < vertices; ++i) {
            names.push_back("v" + std::to_string(10 + i));  // uniform 3-char names
        }
        std::vector<std::pair<EdgeKey, EmbeddingVector>> edges;
        for (std::size_t i = 0; i + 1 < vertices; ++i) {
            edges.emplace_back(EdgeKey{names[i], names[i + 1]},
                               EmbeddingVector({1.0, 2.0, 3.0, 4.0}));
        }
        return EmbeddedGraph(names, std::move(edges));
    };
    auto sparse = [](std::size_t vertices) {
        std::vector<VertexId> names;
        for (std::size_t i = 0; i < vertices; ++i) {
            names.push_back("v" + std::to_string(100 + i));
        }
        std::vector<std::pair<EdgeKey, EmbeddingVector>> edges;
        for (std::size_t i = 0; i < 5; ++i) {
            edges.emplace_back(EdgeKey{names[i], names[i + 1]},
                               EmbeddingVector({1.0, 2.0, 3.0, 4.0}));
        }
        return EmbeddedGraph(names, std::move(edges));
    };

    SUBCASE("adjacency grows quadratically with vertices at fixed edges") {
        auto small = std::get<AdjacencyMatrixRep>(to_representation(sparse(40),
                                                                    RepKind::adjacency));
        auto large = std::get<AdjacencyMatrixRep>(to_representation(sparse(80),
                                                                    RepKind::adjacency));
        double ratio = static_cast<double>(large.estimated_bytes()) /
                       static_cast<double>(small.estimated_bytes());
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }
    SUBCASE("edge list grows linearly with edges") {
        auto small = std::get<EdgeListRep>(to_representation(chain(20), RepKind::edge_list));
        auto large = std::get<EdgeListRep>(to_representation(chain(40), RepKind::edge_list));
        double edge_ratio = static_cast<double>(large.rows.size()) /
                            static_cast<double>(small.rows.size());
        double byte_ratio = static_cast<double>(large.estimated_bytes()) /
                            static_cast<double>(small.estimated_bytes());
        CHECK(std::abs(byte_ratio - edge_ratio) < 0.2);
    }
    SUBCASE("shared vectors make vle smaller than the inline edge list") {
        EmbeddedGraph g = chain(30);
        auto inline_rep = std::get<EdgeListRep>(to_representation(g, RepKind::edge_list));
        auto vle_rep = std::get<VectorLabeledEdgeListRep>(to_representation(g, RepKind::vle));
        CHECK(vle_rep.vector_table.size() == 1);
        CHECK(vle_rep.estimated_bytes() < inline_rep.estimated_bytes());
    }
}

TEST_CASE("json reader accepts the documented shapes") {
    SUBCASE("inline edge vectors") {
        EmbeddedGraph g = parse_embedded(R"({
            "dim": 2,
            "vertices": ["a", "b"],
            "edges": [{"source": "a", "target": "b", "vector": [1.0, 0.0]}]
        })");
        CHECK(g.dim() == 2);
        CHECK(g.edges().at({"a", "b"}) == kUnit2);
    }
    SUBCASE("shared vector table") {
        EmbeddedGraph g = parse_embedded(R"({
            "dim": 2,
            "vertices": ["a", "b", "c"],
            "vectors": [[1.0, 0.0]],
            "edges": [
                {"source": "a", "target": "b", "vector_id": 0},
                {"source": "b", "target": "c", "vector_id": 0}
            ]
        })");
        CHECK(g.edges().size() == 2);
        CHECK(g.edges().at({"b", "c"}) == kUnit2);
    }
    SUBCASE("empty graph with explicit dim") {
        EmbeddedGraph g = parse_embedded(R"({"dim": 4, "vertices": [], "edges": []})");
        CHECK(g.dim() == 4);
        CHECK(g.vertices().empty());
    }
}

TEST_CASE("json reader diagnoses schema violations with field paths") {
    auto msg_of = [](const std::string& doc) {
        return schema_message([&] { parse_embedded(doc); });
    };

    SUBCASE("missing dim") {
        std::string msg = msg_of(R"({"vertices": [], "edges": []})");
        CHECK(msg.find("dim") != std::string::npos);
    }
    SUBCASE("dim must be a positive integer") {
        CHECK(msg_of(R"({"dim": 0, "vertices": [], "edges": []})").find("$.dim") !=
              std::string::npos);
        CHECK_THROWS_AS(parse_embedded(R"({"dim": -3, "vertices": [], "edges": []})"),
                        SchemaError);
        CHECK_THROWS_AS(parse_embedded(R"({"dim": 2.5, "vertices": [], "edges": []})"),
                        SchemaError);
        CHECK_THROWS_AS(parse_embedded(R"({"dim": "2", "vertices": [], "edges": []})"),
                        SchemaError);
    }
    SUBCASE("unknown fields are rejected") {
        std::string msg = msg_of(R"({"dim": 2, "vertices": [], "edges": [], "extra": 1})");
        CHECK(msg.find("extra") != std::string::npos);
    }
    SUBCASE("vertices must be strings") {
        std::string msg =
            msg_of(R"({"dim": 2, "vertices": ["a", 3], "edges": []})");
        CHECK(msg.find("$.vertices[1]") != std::string::npos);
    }
    SUBCASE("edge rows must be objects with the right fields") {
        CHECK(msg_of(R"({"dim": 2, "vertices": ["a"], "edges": [7]})").find("$.edges[0]") !=
              std::string::npos);
        std::string msg = msg_of(
            R"({"dim": 2, "vertices": ["a"],
                "edges": [{"source": "a", "target": "a", "weight": 1.0}]})");
        CHECK(msg.find("weight") != std::string::npos);
        CHECK(msg_of(R"({"dim": 2, "vertices": ["a"],
                         "edges": [{"source": "a", "vector": [1.0, 0.0]}]})")
                  .find("target") != std::string::npos);
    }
    SUBCASE("vector length must match dim") {
        std::string msg = msg_of(
            R"({"dim": 3, "vertices": ["a"],
                "edges": [{"source": "a", "target": "a", "vector": [1.0, 0.0]}]})");
        CHECK(msg.find("$.edges[0].vector") != std::string::npos);
        CHECK(msg.find("3") != std::string::npos);
    }
    SUBCASE("vector components must be numbers") {
        std::string msg = msg_of(
            R"({"dim": 2, "vertices": ["a"],
                "edges": [{"source": "a", "target": "a", "vector": [1.0, "x"]}]})");
        CHECK(msg.find("$.edges[0].vector[1]") != std::string::npos);
    }
    SUBCASE("vector ids must be in range") {
        std::string msg = msg_of(
            R"({"dim": 2, "vertices": ["a"], "vectors": [[1.0, 0.0]],
                "edges": [{"source": "a", "target": "a", "vector_id": 3}]})");
        CHECK(msg.find("$.edges[0].vector_id") != std::string::npos);
        CHECK_THROWS_AS(
            parse_embedded(R"({"dim": 2, "vertices": ["a"], "vectors": [[1.0, 0.0]],
                               "edges": [{"source": "a", "target": "a", "vector_id": -1}]})"),
            SchemaError);
    }
    SUBCASE("top level must be an object") {
        CHECK_THROWS_AS(parse_embedded("[1, 2]"), SchemaError);
    }
    SUBCASE("parse failures keep line and column information") {
        std::string msg = msg_of("{\n  \"dim\": 2,\n  nope\n}");
        CHECK(msg.find("line") != std::string::npos);
    }
}

TEST_CASE("weighted and edge-graph json round-trips") {
    WeightedGraph w({"a", "b", "lonely"}, {{{"a", "b"}, 0.61}, {{"b", "a"}, -0.25}});
    std::ostringstream out;
    write_weighted_graph_json(w, out);
    std::istringstream in(out.str());
    CHECK(read_weighted_graph_json(in) == w);

    EdgeGraph e({"a", "b", "lonely"}, {{"a", "b"}});
    std::ostringstream out2;
    write_edge_graph_json(e, out2);
    std::istringstream in2(out2.str());
    CHECK(read_edge_graph_json(in2) == e);
}

TEST_CASE("weighted reader rejects other document kinds") {
    auto read_weighted = [](const std::string& s) {
        std::istringstream in(s);
        return read_weighted_graph_json(in);
    };
    CHECK_THROWS_AS(
        read_weighted(R"({"dim": 2, "vertices": ["a"],
                          "edges": [{"source": "a", "target": "a", "vector": [1.0, 0.0]}]})"),
        SchemaError);
    CHECK_THROWS_AS(
        read_weighted(R"({"vertices": ["a"], "edges": [{"source": "a", "target": "a"}]})"),
        SchemaError);
}

TEST_CASE("read_any infers the document kind") {
    auto any_of = [](const std::string& s) {
        std::istringstream in(s);
        return read_any_graph_json(in);
    };
    CHECK(std::holds_alternative<EmbeddedGraph>(any_of(
        R"({"dim": 2, "vertices": ["a"],
            "edges": [{"source": "a", "target": "a", "vector": [1.0, 0.0]}]})")));
    CHECK(std::holds_alternative<EmbeddedGraph>(any_of(
        R"({"dim": 2, "vertices": ["a"], "vectors": [[1.0, 0.0]],
            "edges": [{"source": "a", "target": "a", "vector_id": 0}]})")));
    CHECK(std::holds_alternative<WeightedGraph>(any_of(
        R"({"vertices": ["a"], "edges": [{"source": "a", "target": "a", "weight": 0.5}]})")));
    CHECK(std::holds_alternative<EdgeGraph>(any_of(
        R"({"vertices": ["a"], "edges": [{"source": "a", "target": "a"}]})")));
    CHECK(std::holds_alternative<EmbeddedGraph>(
        any_of(R"({"dim": 3, "vertices": [], "edges": []})")));
    CHECK(std::holds_alternative<EdgeGraph>(any_of(R"({"vertices": ["a"], "edges": []})")));

    // A vector-labeled document without dim is diagnosed, not misread.
    std::string msg = schema_message([&] {
        any_of(R"({"vertices": ["a"],
                   "edges": [{"source": "a", "target": "a", "vector": [1.0, 0.0]}]})");
    });
    CHECK(msg.find("dim") != std::string::npos);
}

TEST_CASE("json output is deterministic and canonical") {
    std::mt19937 rng(6603);
    EmbeddedGraph g = testutil::random_graph(rng, 10, 20, 4);
    std::string first = dump_embedded(g);
    std::string second = dump_embedded(g);
    CHECK(first == second);
    CHECK(dump_embedded(parse_embedded(first)) == first);
    CHECK(first.back() == '\n');
}

TEST_CASE("trust fixture document parses to the documented shape") {
    EmbeddedGraph g = testutil::load_fixture_graph("trust_graph.json");
    CHECK(g.vertices() == std::set<VertexId>{"a", "b", "c", "d"});
    CHECK(g.edges().size() == 4);
    for (const auto& [key, unused] : testutil::kTrustDistances) {
        CHECK(g.edges().contains(key));
    }
}

TEST_CASE("dot export renders sorted, quoted, deterministic output") {
    WeightedGraph w({"b", "a"}, {{{"a", "b"}, 0.61}});

    SUBCASE("weight labels") {
        std::string dot = export_dot(w, DotLabelMode::weight);
        CHECK(dot == "digraph {\n  \"a\";\n  \"b\";\n  \"a\" -> \"b\" [label=\"0.61\"];\n}\n");
        CHECK(export_dot(w, DotLabelMode::weight) == dot);
    }
    SUBCASE("no labels") {
        std::string dot = export_dot(w);
        CHECK(dot.find("label") == std::string::npos);
        CHECK(dot.find("\"a\" -> \"b\";") != std::string::npos);
    }
    SUBCASE("isolated vertices render as standalone nodes") {
        EdgeGraph e({"a", "b", "lonely"}, {{"a", "b"}});
        std::string dot = export_dot(e);
        CHECK(dot.find("\"lonely\";") != std::string::npos);
    }
    SUBCASE("quotes and backslashes in names are escaped") {
        EdgeGraph e({"a\"b", "c\\d"}, {{"a\"b", "c\\d"}});
        std::string dot = export_dot(e);
        CHECK(dot.find("\"a\\\"b\" -> \"c\\\\d\";") != std::string::npos);
    }
}

TEST_CASE("dot label modes and their failure cases") {
    EmbeddedGraph g({"a", "b"}, {{{"a", "b"}, kUnit2}});
    EdgeGraph e({"a", "b"}, {{"a", "b"}});

    SUBCASE("token labels need a complete map") {
        EdgeTokenMap tokens{{{"a", "b"}, "mother"}};
        std::string dot = export_dot(g, DotLabelMode::token, &tokens);
        CHECK(dot.find("[label=\"mother\"]") != std::string::npos);
        CHECK(export_dot(e, DotLabelMode::token, &tokens).find("mother") !=
              std::string::npos);

        EdgeTokenMap empty;
        CHECK_THROWS_AS(export_dot(g, DotLabelMode::token, &empty), MissingLabel);
        CHECK_THROWS_AS(export_dot(g, DotLabelMode::token, nullptr), Error);
    }
    SUBCASE("weight labels need weights") {
        CHECK_THROWS_AS(export_dot(g, DotLabelMode::weight), Error);
        CHECK_THROWS_AS(export_dot(e, DotLabelMode::weight), Error);
    }
}

TEST_CASE("thresholded family graph exports with all kept edges") {
    std::vector<std::pair<EdgeKey, double>> edges;
    std::vector<VertexId> vertices{"me"};
    for (const auto& row : testutil::kRelationRows) {
        vertices.push_back(row.token);
        edges.emplace_back(EdgeKey{"me", row.token}, row.weights[0]);
    }
    WeightedGraph family(vertices, edges);
    EdgeGraph kept = threshold(family, testutil::kTargetCutoffs[0]);
    std::string dot = export_dot(kept);
    CHECK(count_occurrences(dot, " -> ") == testutil::kKeptSets[0].size());
    CHECK(count_occurrences(dot, "\"me\" -> \"mother\";") == 1);
    // every vertex still appears even when its edge was dropped
    CHECK(dot.find("\"computer\";") != std::string::npos);
}
