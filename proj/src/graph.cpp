#include "urnnet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "urnnet/errors.hpp"

namespace urnnet {

namespace {

void require_size(int n, int minimum = 2) {
  if (n < minimum) {
    throw InvalidSize("graph needs at least " + std::to_string(minimum) + " agents, got " +
                      std::to_string(n));
  }
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    auto& p = parent[static_cast<std::size_t>(x)];
    p = parent[static_cast<std::size_t>(p)];
    x = p;
  }
  return x;
}

int parse_int(std::string_view text, const std::string& context) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidParameter("bad integer '" + std::string(text) + "' in " + context);
  }
  return value;
}

}  // namespace

bool is_connected(int n, std::span<const Edge> edges) {
  if (n <= 0) return false;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  int components = n;
  for (const auto& e : edges) {
    const int a = find_root(parent, e.u);
    const int b = find_root(parent, e.v);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  return components == 1;
}

Graph Graph::from_edge_list(int n, std::span<const Edge> edges) {
  require_size(n);
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw InvalidEdge("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                        ") has an endpoint outside [0," + std::to_string(n) + ")");
    }
    if (e.u == e.v) {
      throw InvalidEdge("self-loop at agent " + std::to_string(e.u));
    }
    normalized.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(normalized.begin(), normalized.end());
  if (auto dup = std::adjacent_find(normalized.begin(), normalized.end()); dup != normalized.end()) {
    throw InvalidEdge("duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) +
                      ")");
  }
  if (!is_connected(n, normalized)) {
    throw ConnectivityError("graph on " + std::to_string(n) + " agents is not connected");
  }

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(normalized);
  g.degrees_.assign(static_cast<std::size_t>(n), 0);
  g.adjacency_ = IntMatrix(n, n);
  for (const auto& e : g.edges_) {
    ++g.degrees_[static_cast<std::size_t>(e.u)];
    ++g.degrees_[static_cast<std::size_t>(e.v)];
    g.adjacency_(e.u, e.v) = 1;
    g.adjacency_(e.v, e.u) = 1;
  }

  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) {
    g.offsets_[static_cast<std::size_t>(i) + 1] =
        g.offsets_[static_cast<std::size_t>(i)] + static_cast<std::size_t>(g.degrees_[static_cast<std::size_t>(i)]);
  }
  g.targets_.resize(g.offsets_.back());
  // Row-wise scan of the dense matrix gives sorted neighbor lists.
  for (int i = 0; i < n; ++i) {
    auto pos = g.offsets_[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      if (g.adjacency_(i, j) != 0) g.targets_[pos++] = j;
    }
  }

  const auto [lo, hi] = std::minmax_element(g.degrees_.begin(), g.degrees_.end());
  g.min_degree_ = *lo;
  g.max_degree_ = *hi;
  return g;
}

Graph make_star(int n) {
  require_size(n);
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.push_back({0, i});
  return Graph::from_edge_list(n, edges);
}

Graph make_complete(int n) {
  require_size(n);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph::from_edge_list(n, edges);
}

Graph make_circulant_regular(int n, int k) {
  require_size(n, 3);
  if (k % 2 != 0 || k < 2 || k >= n) {
    throw InvalidParameter("circulant regular graph needs an even degree k with 2 <= k < n, got n=" +
                           std::to_string(n) + " k=" + std::to_string(k));
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int offset = 1; offset <= k / 2; ++offset) {
      const int j = (i + offset) % n;
      edges.push_back({std::min(i, j), std::max(i, j)});
    }
  }
  return Graph::from_edge_list(n, edges);
}

Graph make_path(int n) {
  require_size(n);
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph::from_edge_list(n, edges);
}

IntMatrix laplacian(const Graph& g) {
  const int n = g.size();
  IntMatrix lap(n, n);
  for (int i = 0; i < n; ++i) {
    lap(i, i) = g.degree(i);
    for (int j : g.neighbors(i)) lap(i, j) = -1;
  }
  return lap;
}

Graph read_edge_list(std::istream& in) {
  long long n = 0;
  long long m = 0;
  if (!(in >> n >> m) || n < 0 || m < 0) {
    throw InvalidInput("edge list: expected header 'n m'");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    long long u = 0;
    long long v = 0;
    if (!(in >> u >> v)) {
      throw InvalidInput("edge list: expected " + std::to_string(m) + " edges, read " +
                         std::to_string(k));
    }
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  return Graph::from_edge_list(static_cast<int>(n), edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph parse_graph_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw InvalidParameter("graph spec '" + spec + "' must look like kind:params");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "file") {
    std::ifstream in(rest);
    if (!in) throw InvalidParameter("cannot open graph file '" + rest + "'");
    return read_edge_list(in);
  }

  std::vector<int> params;
  std::string_view view(rest);
  while (true) {
    const auto next = view.find(':');
    params.push_back(parse_int(view.substr(0, next), "graph spec '" + spec + "'"));
    if (next == std::string_view::npos) break;
    view.remove_prefix(next + 1);
  }

  auto expect = [&](std::size_t count) {
    if (params.size() != count) {
      throw InvalidParameter("graph spec '" + spec + "': " + kind + " takes " +
                             std::to_string(count) + " parameter(s)");
    }
  };
  if (kind == "star") {
    expect(1);
    return make_star(params[0]);
  }
  if (kind == "complete") {
    expect(1);
    return make_complete(params[0]);
  }
  if (kind == "path") {
    expect(1);
    return make_path(params[0]);
  }
  if (kind == "kreg") {
    expect(2);
    return make_circulant_regular(params[0], params[1]);
  }
  throw InvalidParameter("unknown graph kind '" + kind + "' (star, complete, kreg, path, file)");
}

}  // namespace urnnet
