#include "embedgraph/translate.hpp"

#include <cmath>

#include "embedgraph/embeddings.hpp"

namespace embedgraph {

WeightedGraph translate(const EmbeddedGraph& g, const TranslationSpec& spec) {
    if (spec.target.dim() != g.dim()) {
        throw DimensionMismatch(g.dim(), spec.target.dim());
    }
    std::vector<std::pair<EdgeKey, double>> weighted;
    weighted.reserve(g.edges().size());
    for (const auto& [key, vec] : g.edges()) {
        double w = spec.metric == TranslationMetric::cosine ? cosine(vec, spec.target)
                                                            : dot(vec, spec.target);
        weighted.emplace_back(key, w);
    }
    return WeightedGraph(
        std::vector<VertexId>(g.vertices().begin(), g.vertices().end()),
        std::move(weighted));
}

EdgeGraph threshold(const WeightedGraph& w, double cutoff) {
    if (std::isnan(cutoff)) {
        throw Error("threshold cutoff must not be NaN");
    }
    std::vector<EdgeKey> kept;
    for (const auto& [key, weight] : w.edges()) {
        if (weight > cutoff) {
            kept.push_back(key);
        }
    }
    return EdgeGraph(std::vector<VertexId>(w.vertices().begin(), w.vertices().end()),
                     std::move(kept));
}

EdgeGraph translate_and_threshold(const EmbeddedGraph& g, const TranslationSpec& spec,
                                  double cutoff) {
    return threshold(translate(g, spec), cutoff);
}

}  // namespace embedgraph
