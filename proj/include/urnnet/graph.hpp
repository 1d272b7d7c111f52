#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace urnnet {

// Unordered agent pair, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Dense row-major integer matrix; only used for adjacency/Laplacian views.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

  std::int64_t& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  std::int64_t operator()(int i, int j) const {
    return data[static_cast<std::size_t>(i) * cols + j];
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

// Immutable undirected connected simple graph on agents 0..n-1.
//
// Neighbor lists are kept in CSR form for the simulation hot loop and a dense
// 0/1 adjacency matrix is kept for structural queries; both are built from
// the same normalized edge list.
class Graph {
 public:
  // Throws InvalidSize (n < 2), InvalidEdge (out of range, self-loop,
  // duplicate) or ConnectivityError.
  static Graph from_edge_list(int n, std::span<const Edge> edges);

  int size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  int degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  int min_degree() const noexcept { return min_degree_; }
  int max_degree() const noexcept { return max_degree_; }
  std::int64_t degree_sum() const noexcept { return 2 * static_cast<std::int64_t>(edges_.size()); }
  bool is_regular() const noexcept { return min_degree_ == max_degree_; }

  std::span<const int> neighbors(int i) const {
    const auto b = offsets_[static_cast<std::size_t>(i)];
    const auto e = offsets_[static_cast<std::size_t>(i) + 1];
    return {targets_.data() + b, targets_.data() + e};
  }

  bool adjacent(int i, int j) const { return adjacency_(i, j) != 0; }
  const IntMatrix& adjacency() const noexcept { return adjacency_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Graph() = default;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
  std::vector<std::size_t> offsets_;
  std::vector<int> targets_;
  IntMatrix adjacency_;
  int min_degree_ = 0;
  int max_degree_ = 0;
};

Graph make_star(int n);
Graph make_complete(int n);
// Circulant k-regular graph: i ~ i±1, ..., i±k/2 (mod n). Requires k even,
// 2 <= k < n.
Graph make_circulant_regular(int n, int k);
Graph make_path(int n);

// L = D - A.
IntMatrix laplacian(const Graph& g);

bool is_connected(int n, std::span<const Edge> edges);

// Edge-list text format: "n m" on the first line, then m lines "u v"
// (0-based). Throws InvalidInput on malformed text.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

// Graph mini-language used by the CLI and sweep configs:
//   star:N | complete:N | kreg:N:K | path:N | file:PATH
Graph parse_graph_spec(const std::string& spec);

}  // namespace urnnet
