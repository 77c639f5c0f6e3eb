#include "embrecon/embedding.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace embrecon {

namespace {

constexpr char kMagic[4] = {'N', 'E', 'M', 'B'};
constexpr std::uint32_t kVersion = 1;

static_assert(sizeof(double) == 8, "float64 storage assumed");

template <typename T>
void write_le(std::ostream& out, T value) {
  // little-endian host assumed (x86/aarch64); bytes written as stored
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("embedding file: truncated");
  return value;
}

}  // namespace

EmbeddingMatrix row_normalize(const EmbeddingMatrix& h) {
  EmbeddingMatrix out;
  out.rows = h.rows;
  for (int v = 0; v < h.node_count(); ++v) {
    const double norm = out.rows.row(v).norm();
    if (norm == 0.0) {
      throw std::invalid_argument("row_normalize: zero embedding row at node " +
                                  std::to_string(v));
    }
    out.rows.row(v) /= norm;
  }
  out.normalized = true;
  return out;
}

void save_embeddings(const EmbeddingMatrix& h, const std::string& path,
                     EmbeddingFormat format) {
  if (format == EmbeddingFormat::Binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out.write(kMagic, 4);
    write_le<std::uint32_t>(out, kVersion);
    write_le<std::uint64_t>(out, static_cast<std::uint64_t>(h.node_count()));
    write_le<std::uint64_t>(out, static_cast<std::uint64_t>(h.dim()));
    write_le<std::uint32_t>(out, h.normalized ? 1u : 0u);
    for (int v = 0; v < h.node_count(); ++v) {
      for (int j = 0; j < h.dim(); ++j) {
        write_le<double>(out, h.rows(v, j));
      }
    }
    if (!out) throw std::runtime_error("embedding write failed: " + path);
  } else {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out << h.node_count() << ' ' << h.dim() << '\n';
    out.precision(17);
    for (int v = 0; v < h.node_count(); ++v) {
      for (int j = 0; j < h.dim(); ++j) {
        if (j) out << ' ';
        out << h.rows(v, j);
      }
      out << '\n';
    }
    if (!out) throw std::runtime_error("embedding write failed: " + path);
  }
}

EmbeddingMatrix load_embeddings(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw std::invalid_argument("cannot open embeddings: " + path);
  char head[4] = {0, 0, 0, 0};
  probe.read(head, 4);
  const bool binary = probe.gcount() == 4 && std::memcmp(head, kMagic, 4) == 0;
  probe.close();

  EmbeddingMatrix h;
  if (binary) {
    std::ifstream in(path, std::ios::binary);
    in.seekg(4);
    const auto version = read_le<std::uint32_t>(in);
    if (version != kVersion) {
      throw std::runtime_error("embedding file: unsupported version " +
                               std::to_string(version));
    }
    const auto n = read_le<std::uint64_t>(in);
    const auto d = read_le<std::uint64_t>(in);
    const auto flags = read_le<std::uint32_t>(in);
    if (n == 0 || d == 0 || n > (1ULL << 32) || d > (1ULL << 24)) {
      throw std::runtime_error("embedding file: implausible shape");
    }
    h.rows.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::uint64_t v = 0; v < n; ++v) {
      for (std::uint64_t j = 0; j < d; ++j) {
        h.rows(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(j)) =
            read_le<double>(in);
      }
    }
    h.normalized = (flags & 1u) != 0;
  } else {
    std::ifstream in(path);
    long long n, d;
    if (!(in >> n >> d) || n <= 0 || d <= 0) {
      throw std::runtime_error("embedding file: bad text header");
    }
    h.rows.resize(n, d);
    for (long long v = 0; v < n; ++v) {
      for (long long j = 0; j < d; ++j) {
        if (!(in >> h.rows(v, j))) {
          throw std::runtime_error("embedding file: truncated at row " +
                                   std::to_string(v));
        }
      }
    }
    h.normalized = false;
  }
  if (!h.rows.allFinite()) throw std::runtime_error("embedding file: non-finite entry");
  return h;
}

}  // namespace embrecon
