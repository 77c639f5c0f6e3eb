#pragma once

#include <Eigen/Core>
#include <string>

namespace embrecon {

// Node embedding matrix: one row per node. `normalized` records whether
// rows were scaled to unit L2 norm.
struct EmbeddingMatrix {
  Eigen::MatrixXd rows;
  bool normalized = false;

  int node_count() const { return static_cast<int>(rows.rows()); }
  int dim() const { return static_cast<int>(rows.cols()); }
};

// Scales each row to unit L2 norm and sets the flag. A zero row is a
// validation error naming the node.
EmbeddingMatrix row_normalize(const EmbeddingMatrix& h);

enum class EmbeddingFormat { Binary, Text };

// Binary layout: magic "NEMB", u32 version = 1, u64 n, u64 d,
// u32 flags (bit 0 = row-normalized), then n*d little-endian float64
// row-major. Text layout: first line "n d", then one line of d values per
// node printed with 17 significant digits.
void save_embeddings(const EmbeddingMatrix& h, const std::string& path,
                     EmbeddingFormat format);
// Detects the format from the leading bytes.
EmbeddingMatrix load_embeddings(const std::string& path);

}  // namespace embrecon
