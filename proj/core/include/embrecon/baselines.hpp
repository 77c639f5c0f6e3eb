#pragma once

#include "embrecon/embedding.hpp"
#include "embrecon/graph.hpp"

namespace embrecon {

// Keeps exactly floor(k n / 2) unordered pairs of largest cosine similarity;
// ties broken lexicographically. Deterministic; scale-invariant per row.
Graph direct_recovery(const EmbeddingMatrix& h, double k);

// Per-node k nearest neighbors by cosine distance, union-symmetrized; if the
// union exceeds floor(k n / 2) edges, the lowest-similarity edges are
// trimmed to that size. Ties lexicographic.
Graph knn_graph(const EmbeddingMatrix& h, int k);

}  // namespace embrecon
