#pragma once

// The downward translation pipeline: embedded-graph -> weighted-graph
// (scoring every edge vector against a target vector) and weighted-graph ->
// edge-graph (threshold calculation). There is no upward direction.

#include "embedgraph/core.hpp"

namespace embedgraph {

enum class TranslationMetric {
    cosine,         // cos(X(e), target)
    inner_product,  // X(e) . target
};

// The target vector parameterizing a translation, e.g. the embedding of
// 'family' when a graph is analyzed from the family point of view.
struct TranslationSpec {
    EmbeddingVector target;
    TranslationMetric metric = TranslationMetric::cosine;
};

// Scores every edge against the target; topology (including isolated
// vertices) is preserved unchanged. Throws DimensionMismatch when the target
// dimension differs from the graph's.
WeightedGraph translate(const EmbeddedGraph& g, const TranslationSpec& spec);

// Keeps an edge iff its weight is strictly greater than cutoff; ties drop.
// All vertices survive, including ones this isolates.
EdgeGraph threshold(const WeightedGraph& w, double cutoff);

// Exactly threshold(translate(g, spec), cutoff).
EdgeGraph translate_and_threshold(const EmbeddedGraph& g, const TranslationSpec& spec,
                                  double cutoff);

}  // namespace embedgraph
