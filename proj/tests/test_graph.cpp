#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "urnnet/errors.hpp"
#include "urnnet/graph.hpp"
#include "urnnet/rng.hpp"

using namespace urnnet;

namespace {

void check_structure(const Graph& g) {
  const int n = g.size();
  for (int i = 0; i < n; ++i) {
    CHECK(g.adjacency()(i, i) == 0);
    std::int64_t row = 0;
    for (int j = 0; j < n; ++j) {
      CHECK(g.adjacency()(i, j) == g.adjacency()(j, i));
      row += g.adjacency()(i, j);
    }
    CHECK(row == g.degree(i));
    // Neighbor lists agree with the dense matrix.
    CHECK(static_cast<int>(g.neighbors(i).size()) == g.degree(i));
    for (int j : g.neighbors(i)) CHECK(g.adjacent(i, j));
  }
  CHECK(is_connected(n, g.edges()));
}

void check_laplacian_kernel(const Graph& g) {
  const auto lap = laplacian(g);
  for (int i = 0; i < g.size(); ++i) {
    std::int64_t row = 0;
    for (int j = 0; j < g.size(); ++j) {
      row += lap(i, j);
      CHECK(lap(i, j) == lap(j, i));
    }
    CHECK(row == 0);
  }
}

}  // namespace

TEST_CASE("star graph") {
  const auto g = make_star(3);
  CHECK(g.degrees() == std::vector<int>{2, 1, 1});
  const auto big = make_star(100);
  CHECK(big.degree(0) == 99);
  for (int i = 1; i < 100; ++i) CHECK(big.degree(i) == 1);
  check_structure(big);
  CHECK_THROWS_AS(make_star(1), InvalidSize);
}

TEST_CASE("complete graph") {
  const auto k3 = make_complete(3);
  CHECK(k3 == make_circulant_regular(3, 2));
  CHECK(k3.degrees() == std::vector<int>{2, 2, 2});
  CHECK(make_complete(100).edge_count() == 4950);
  const auto k2 = make_complete(2);
  CHECK(k2.edge_count() == 1);
  CHECK_THROWS_AS(make_complete(0), InvalidSize);
}

TEST_CASE("circulant regular graph") {
  const auto g = make_circulant_regular(100, 10);
  CHECK(g.edge_count() == 500);
  for (int d : g.degrees()) CHECK(d == 10);
  CHECK(g.is_regular());
  check_structure(g);

  const auto cycle = make_circulant_regular(5, 2);
  const std::vector<Edge> cycle_edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  CHECK(cycle == Graph::from_edge_list(5, cycle_edges));

  CHECK_THROWS_AS(make_circulant_regular(4, 3), InvalidParameter);
  CHECK_THROWS_AS(make_circulant_regular(6, 6), InvalidParameter);
  CHECK_THROWS_AS(make_circulant_regular(6, 0), InvalidParameter);
}

TEST_CASE("path graph") {
  CHECK(make_path(5).degrees() == std::vector<int>{1, 2, 2, 2, 1});
  CHECK(make_path(2).edge_count() == 1);
  const auto p3 = make_path(3);
  CHECK(p3.degrees() == std::vector<int>{1, 2, 1});
  CHECK(p3.min_degree() == 1);
  CHECK(p3.max_degree() == 2);
}

TEST_CASE("edge list construction") {
  const std::vector<Edge> line{{0, 1}, {2, 1}};
  CHECK(Graph::from_edge_list(3, line) == make_path(3));

  const std::vector<Edge> split{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(Graph::from_edge_list(4, split), ConnectivityError);

  const std::vector<Edge> loop{{0, 0}};
  CHECK_THROWS_AS(Graph::from_edge_list(3, loop), InvalidEdge);

  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(Graph::from_edge_list(2, dup), InvalidEdge);

  const std::vector<Edge> outside{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edge_list(3, outside), InvalidEdge);
}

TEST_CASE("laplacian") {
  const auto lap = laplacian(make_path(3));
  IntMatrix expected(3, 3);
  expected.data = {1, -1, 0, -1, 2, -1, 0, -1, 1};
  CHECK(lap == expected);

  check_laplacian_kernel(make_complete(5));
  const auto star = laplacian(make_star(3));
  for (int i = 0; i < 3; ++i) CHECK(star(i, 0) + star(i, 1) + star(i, 2) == 0);
}

TEST_CASE("constructor invariants on random connected graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(15));
    // Random spanning tree plus extra edges keeps the graph connected.
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) edges.push_back({static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(v))), v});
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        const bool in_tree = std::find(edges.begin(), edges.end(), Edge{u, v}) != edges.end();
        if (!in_tree && rng.uniform01() < 0.2) edges.push_back({u, v});
      }
    }
    const auto g = Graph::from_edge_list(n, edges);
    check_structure(g);
    check_laplacian_kernel(g);
  }
}

TEST_CASE("edge list text format") {
  std::istringstream in("3 2\n0 1\n1 2\n");
  CHECK(read_edge_list(in) == make_path(3));

  std::ostringstream out;
  write_edge_list(out, make_star(4));
  std::istringstream back(out.str());
  CHECK(read_edge_list(back) == make_star(4));

  std::istringstream truncated("3 2\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(truncated), InvalidInput);
}

TEST_CASE("graph spec mini-language") {
  CHECK(parse_graph_spec("star:5") == make_star(5));
  CHECK(parse_graph_spec("complete:4") == make_complete(4));
  CHECK(parse_graph_spec("kreg:10:4") == make_circulant_regular(10, 4));
  CHECK(parse_graph_spec("path:3") == make_path(3));
  CHECK_THROWS_AS(parse_graph_spec("ring:5"), InvalidParameter);
  CHECK_THROWS_AS(parse_graph_spec("kreg:10"), InvalidParameter);
  CHECK_THROWS_AS(parse_graph_spec("star:x"), InvalidParameter);
  CHECK_THROWS_AS(parse_graph_spec("star"), InvalidParameter);
  CHECK_THROWS_AS(parse_graph_spec("file:/nonexistent/graph.txt"), InvalidParameter);
}
