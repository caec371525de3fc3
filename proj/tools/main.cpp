// Command-line front end: composes the library's pipeline (translate,
// threshold, distances, similarity, conversions, export) over JSON graph
// files. Paths accept "-" for stdin/stdout. Exit codes: 0 ok, 1 I/O or
// schema, 2 unknown token, 3 no path, 4 no corresponding edges, 64 usage.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "embedgraph/core.hpp"
#include "embedgraph/embeddings.hpp"
#include "embedgraph/errors.hpp"
#include "embedgraph/metrics.hpp"
#include "embedgraph/storage.hpp"
#include "embedgraph/translate.hpp"

namespace {

using namespace embedgraph;

class InputFile {
  public:
    explicit InputFile(const std::string& path, bool binary = false) {
        if (path == "-") {
            in_ = &std::cin;
            return;
        }
        file_.open(path, binary ? std::ios::in | std::ios::binary : std::ios::in);
        if (!file_) {
            throw Error("cannot open file: " + path);
        }
        in_ = &file_;
    }

    std::istream& stream() { return *in_; }

  private:
    std::ifstream file_;
    std::istream* in_ = nullptr;
};

class OutputFile {
  public:
    explicit OutputFile(const std::string& path) {
        if (path == "-") {
            out_ = &std::cout;
            return;
        }
        file_.open(path);
        if (!file_) {
            throw Error("cannot open output file: " + path);
        }
        out_ = &file_;
    }

    std::ostream& stream() { return *out_; }

  private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

struct ModelOptions {
    std::string path;
    std::string format = "auto";
};

struct TargetOptions {
    std::string token;
    std::string file;
};

WordVectorFormat resolve_model_format(const ModelOptions& opts) {
    if (opts.format == "text") {
        return WordVectorFormat::text;
    }
    if (opts.format == "binary") {
        return WordVectorFormat::binary;
    }
    return opts.path.ends_with(".bin") ? WordVectorFormat::binary : WordVectorFormat::text;
}

EmbeddingVector target_from_file(const std::string& path) {
    InputFile in(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in.stream());
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty()) {
        throw SchemaError("target file must hold a non-empty JSON array of numbers");
    }
    std::vector<double> components;
    components.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_number()) {
            throw SchemaError("$[" + std::to_string(i) + "]: must be a number");
        }
        components.push_back(doc[i].get<double>());
    }
    return EmbeddingVector(std::move(components));
}

EmbeddingVector resolve_target(const TargetOptions& target, const ModelOptions& model) {
    if (!target.file.empty()) {
        return target_from_file(target.file);
    }
    if (target.token.empty()) {
        throw Error("no translation target: pass --target TOKEN or --target-file FILE");
    }
    if (model.path.empty()) {
        throw Error("no word-vector model resolved: pass --model or set EMBEDGRAPH_MODEL");
    }
    WordVectorFormat format = resolve_model_format(model);
    InputFile in(model.path, format == WordVectorFormat::binary);
    WordVectorLoadResult loaded = load_word_vectors(in.stream(), format);
    return loaded.store.lookup(target.token);
}

// Adds the reverse of every edge that lacks one, reusing the forward vector.
// Existing reverse edges keep their own vectors; self-loops are left alone.
EmbeddedGraph symmetrize_edges(const EmbeddedGraph& g) {
    std::vector<VertexId> vertices(g.vertices().begin(), g.vertices().end());
    std::vector<std::pair<EdgeKey, EmbeddingVector>> edges(g.edges().begin(), g.edges().end());
    for (const auto& [key, vec] : g.edges()) {
        EdgeKey reversed{key.target, key.source};
        if (key.source != key.target && !g.edges().contains(reversed)) {
            edges.emplace_back(reversed, vec);
        }
    }
    return EmbeddedGraph(vertices, std::move(edges), g.dim());
}

EmbeddedGraph load_embedded(const std::string& path, bool symmetrize = false) {
    InputFile in(path);
    EmbeddedGraph g = read_graph_json(in.stream());
    return symmetrize ? symmetrize_edges(g) : g;
}

EdgeTokenMap load_token_map(const std::string& path) {
    InputFile in(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in.stream());
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw SchemaError("token map must be a JSON array of {source, target, token} objects");
    }
    EdgeTokenMap map;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        std::string path_i = "$[" + std::to_string(i) + "]";
        const nlohmann::json& row = doc[i];
        if (!row.is_object() || !row.contains("source") || !row.contains("target") ||
            !row.contains("token") || row.size() != 3) {
            throw SchemaError(path_i + ": must be an object with source, target, token");
        }
        for (const char* key : {"source", "target", "token"}) {
            if (!row.at(key).is_string()) {
                throw SchemaError(path_i + "." + key + ": must be a string");
            }
        }
        map[EdgeKey{row.at("source").get<std::string>(), row.at("target").get<std::string>()}] =
            row.at("token").get<std::string>();
    }
    return map;
}

DotLabelMode parse_label_mode(const std::string& labels) {
    if (labels == "weight") {
        return DotLabelMode::weight;
    }
    if (labels == "token") {
        return DotLabelMode::token;
    }
    return DotLabelMode::none;
}

void run_stats(const std::string& graph_path, const std::string& out_path) {
    InputFile in(graph_path);
    AnyGraph any = read_any_graph_json(in.stream());
    OutputFile out(out_path);
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            out.stream() << "vertices=" << g.vertices().size() << " edges=" << g.edges().size();
            if constexpr (std::is_same_v<G, EmbeddedGraph>) {
                out.stream() << " dim=" << g.dim();
            }
            out.stream() << "\n";
        },
        any);
}

void run_translate(const std::string& graph_path, bool symmetrize,
                   const TargetOptions& target, const ModelOptions& model,
                   const std::string& metric, const std::string& out_path) {
    EmbeddedGraph g = load_embedded(graph_path, symmetrize);
    TranslationSpec spec{resolve_target(target, model),
                         metric == "dot" ? TranslationMetric::inner_product
                                         : TranslationMetric::cosine};
    WeightedGraph weighted = translate(g, spec);
    OutputFile out(out_path);
    write_weighted_graph_json(weighted, out.stream());
}

void run_threshold(const std::string& graph_path, double cutoff, const std::string& out_path) {
    InputFile in(graph_path);
    WeightedGraph weighted = read_weighted_graph_json(in.stream());
    EdgeGraph kept = threshold(weighted, cutoff);
    OutputFile out(out_path);
    write_edge_graph_json(kept, out.stream());
}

void run_translate_threshold(const std::string& graph_path, bool symmetrize,
                             const TargetOptions& target, const ModelOptions& model,
                             const std::string& metric, double cutoff,
                             const std::string& out_path) {
    EmbeddedGraph g = load_embedded(graph_path, symmetrize);
    TranslationSpec spec{resolve_target(target, model),
                         metric == "dot" ? TranslationMetric::inner_product
                                         : TranslationMetric::cosine};
    EdgeGraph kept = translate_and_threshold(g, spec, cutoff);
    OutputFile out(out_path);
    write_edge_graph_json(kept, out.stream());
}

void run_distance(const std::string& graph_path, bool symmetrize, const std::string& from,
                  const std::string& to, const TargetOptions& target, const ModelOptions& model,
                  const std::string& direction, const std::string& out_path) {
    EmbeddedGraph g = load_embedded(graph_path, symmetrize);
    EmbeddingVector target_vec = resolve_target(target, model);
    Direction dir =
        direction == "undirected" ? Direction::undirected : Direction::directed;
    PathResult result = path_distance(g, from, to, target_vec, dir);

    OutputFile out(out_path);
    out.stream() << format_fixed(result.total_distance, 4) << "\n";
    std::string line = from;
    for (const EdgeKey& key : result.path) {
        line += " -> " + key.target;
    }
    out.stream() << line << "\n";
}

void run_similarity(const std::string& first_path, const std::string& second_path,
                    bool symmetrize, const std::string& out_path) {
    EmbeddedGraph first = load_embedded(first_path, symmetrize);
    EmbeddedGraph second = load_embedded(second_path, symmetrize);
    double value = graph_similarity(first, second);
    CorrespondenceReport report = edge_correspondence(first, second);
    OutputFile out(out_path);
    out.stream() << format_fixed(value, 2) << "\n";
    out.stream() << "matched=" << report.matched.size()
                 << " only_first=" << report.only_in_first.size()
                 << " only_second=" << report.only_in_second.size() << "\n";
}

void run_convert(const std::string& graph_path, bool symmetrize, const std::string& to,
                 std::size_t dense_cap, const std::string& out_path) {
    EmbeddedGraph g = load_embedded(graph_path, symmetrize);
    OutputFile out(out_path);
    if (to == "vle") {
        write_graph_json(g, out.stream(), GraphJsonKind::vle);
        return;
    }
    if (to == "adjacency") {
        // The dense form has no file format; converting to it validates the
        // cap and round-trips through the matrix before writing inline JSON.
        EmbeddedGraph back = from_representation(to_representation(g, RepKind::adjacency,
                                                                   dense_cap));
        write_graph_json(back, out.stream(), GraphJsonKind::edge_list);
        return;
    }
    write_graph_json(g, out.stream(), GraphJsonKind::edge_list);
}

void write_tsv(const AnyGraph& any, std::ostream& out) {
    if (const auto* g = std::get_if<EmbeddedGraph>(&any)) {
        for (const auto& [key, vec] : g->edges()) {
            std::string joined;
            for (double c : vec) {
                if (!joined.empty()) {
                    joined += ',';
                }
                joined += format_double(c);
            }
            out << key.source << "\t" << key.target << "\t" << joined << "\n";
        }
    } else if (const auto* g = std::get_if<WeightedGraph>(&any)) {
        for (const auto& [key, weight] : g->edges()) {
            out << key.source << "\t" << key.target << "\t" << format_double(weight) << "\n";
        }
    } else {
        for (const EdgeKey& key : std::get<EdgeGraph>(any).edges()) {
            out << key.source << "\t" << key.target << "\n";
        }
    }
}

void run_export(const std::string& graph_path, const std::string& format,
                const std::string& labels, const std::string& token_map_path,
                const std::string& out_path) {
    InputFile in(graph_path);
    AnyGraph any = read_any_graph_json(in.stream());
    OutputFile out(out_path);

    if (format == "tsv") {
        write_tsv(any, out.stream());
        return;
    }
    if (format == "json") {
        if (const auto* g = std::get_if<EmbeddedGraph>(&any)) {
            write_graph_json(*g, out.stream(), GraphJsonKind::edge_list);
        } else if (const auto* g = std::get_if<WeightedGraph>(&any)) {
            write_weighted_graph_json(*g, out.stream());
        } else {
            write_edge_graph_json(std::get<EdgeGraph>(any), out.stream());
        }
        return;
    }

    DotLabelMode mode = parse_label_mode(labels);
    EdgeTokenMap tokens;
    const EdgeTokenMap* tokens_ptr = nullptr;
    if (mode == DotLabelMode::token) {
        if (token_map_path.empty()) {
            throw Error("--labels token needs --token-map FILE");
        }
        tokens = load_token_map(token_map_path);
        tokens_ptr = &tokens;
    }
    std::visit([&](const auto& g) { out.stream() << export_dot(g, mode, tokens_ptr); }, any);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"embedded-graph toolkit: translation, distances, similarity, storage"};
    app.require_subcommand(1);

    std::string graph_path;
    std::string out_path = "-";
    ModelOptions model;
    TargetOptions target;
    std::string metric = "cosine";
    double cutoff = 0.0;
    std::string from;
    std::string to;
    std::string direction = "directed";
    std::string first_path;
    std::string second_path;
    std::string convert_to;
    std::size_t dense_cap = kDefaultDenseCap;
    std::string export_format = "dot";
    std::string labels = "none";
    std::string token_map_path;
    bool symmetrize = false;

    auto add_graph = [&](CLI::App* cmd) {
        cmd->add_option("--graph", graph_path, "graph JSON file ('-' for stdin)")->required();
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output file ('-' for stdout)");
    };
    auto add_model = [&](CLI::App* cmd) {
        cmd->add_option("--model", model.path, "word-vector model file")
            ->envname("EMBEDGRAPH_MODEL");
        cmd->add_option("--model-format", model.format, "model file format")
            ->check(CLI::IsMember({"auto", "text", "binary"}));
    };
    auto add_target = [&](CLI::App* cmd) {
        auto* token_opt =
            cmd->add_option("--target", target.token, "target token, resolved via the model");
        cmd->add_option("--target-file", target.file,
                        "JSON array of numbers to use as the target vector")
            ->excludes(token_opt);
    };
    auto add_metric = [&](CLI::App* cmd) {
        cmd->add_option("--metric", metric, "edge scoring metric")
            ->check(CLI::IsMember({"cosine", "dot"}));
    };
    auto add_symmetrize = [&](CLI::App* cmd) {
        cmd->add_flag("--symmetrize", symmetrize,
                      "add missing reverse edges (same vector) after loading");
    };

    CLI::App* stats = app.add_subcommand("stats", "print vertex/edge counts for a graph");
    add_graph(stats);
    add_out(stats);

    CLI::App* translate_cmd =
        app.add_subcommand("translate", "score each edge against a target vector");
    add_graph(translate_cmd);
    add_target(translate_cmd);
    add_model(translate_cmd);
    add_metric(translate_cmd);
    add_symmetrize(translate_cmd);
    add_out(translate_cmd);

    CLI::App* threshold_cmd =
        app.add_subcommand("threshold", "keep edges whose weight strictly exceeds a cutoff");
    add_graph(threshold_cmd);
    threshold_cmd->add_option("--cutoff", cutoff, "strict lower bound on kept weights")
        ->required();
    add_out(threshold_cmd);

    CLI::App* pipeline_cmd = app.add_subcommand(
        "translate-threshold", "translate and threshold in one step");
    add_graph(pipeline_cmd);
    add_target(pipeline_cmd);
    add_model(pipeline_cmd);
    add_metric(pipeline_cmd);
    pipeline_cmd->add_option("--cutoff", cutoff, "strict lower bound on kept weights")
        ->required();
    add_symmetrize(pipeline_cmd);
    add_out(pipeline_cmd);

    CLI::App* distance_cmd = app.add_subcommand(
        "distance", "shortest target-conditioned path between two vertices");
    add_graph(distance_cmd);
    distance_cmd->add_option("--from", from, "start vertex")->required();
    distance_cmd->add_option("--to", to, "end vertex")->required();
    add_target(distance_cmd);
    add_model(distance_cmd);
    distance_cmd->add_option("--direction", direction, "edge traversal rule")
        ->check(CLI::IsMember({"directed", "undirected"}));
    add_symmetrize(distance_cmd);
    add_out(distance_cmd);

    CLI::App* similarity_cmd =
        app.add_subcommand("similarity", "mean cosine over corresponding edges of two graphs");
    similarity_cmd->add_option("first", first_path, "first graph JSON file")->required();
    similarity_cmd->add_option("second", second_path, "second graph JSON file")->required();
    add_symmetrize(similarity_cmd);
    add_out(similarity_cmd);

    CLI::App* convert_cmd =
        app.add_subcommand("convert", "rewrite a graph in another storage representation");
    add_graph(convert_cmd);
    convert_cmd->add_option("--to", convert_to, "target representation")
        ->check(CLI::IsMember({"edge-list", "vle", "adjacency"}))
        ->required();
    convert_cmd->add_option("--dense-cap", dense_cap,
                            "vertex cap for the adjacency representation");
    add_symmetrize(convert_cmd);
    add_out(convert_cmd);

    CLI::App* export_cmd = app.add_subcommand("export", "render a graph as DOT, TSV, or JSON");
    add_graph(export_cmd);
    export_cmd->add_option("--format", export_format, "output format")
        ->check(CLI::IsMember({"dot", "tsv", "json"}));
    export_cmd->add_option("--labels", labels, "DOT edge label source")
        ->check(CLI::IsMember({"none", "weight", "token"}));
    export_cmd->add_option("--token-map", token_map_path,
                           "JSON array of {source, target, token} rows");
    add_out(export_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (stats->parsed()) {
            run_stats(graph_path, out_path);
        } else if (translate_cmd->parsed()) {
            run_translate(graph_path, symmetrize, target, model, metric, out_path);
        } else if (threshold_cmd->parsed()) {
            run_threshold(graph_path, cutoff, out_path);
        } else if (pipeline_cmd->parsed()) {
            run_translate_threshold(graph_path, symmetrize, target, model, metric, cutoff, out_path);
        } else if (distance_cmd->parsed()) {
            run_distance(graph_path, symmetrize, from, to, target, model, direction,
                         out_path);
        } else if (similarity_cmd->parsed()) {
            run_similarity(first_path, second_path, symmetrize, out_path);
        } else if (convert_cmd->parsed()) {
            run_convert(graph_path, symmetrize, convert_to, dense_cap, out_path);
        } else if (export_cmd->parsed()) {
            run_export(graph_path, export_format, labels, token_map_path, out_path);
        }
        return 0;
    } catch (const UnknownToken& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NoPath& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoCorrespondingEdges& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
