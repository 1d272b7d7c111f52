#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "urnnet/errors.hpp"
#include "urnnet/graph.hpp"
#include "urnnet/meanfield_ode.hpp"
#include "urnnet/rng.hpp"

using namespace urnnet;

namespace {

Graph random_connected(Rng& rng, int n, double extra) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(v))), v});
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (std::find(edges.begin(), edges.end(), Edge{u, v}) == edges.end() && rng.uniform01() < extra) {
        edges.push_back({u, v});
      }
    }
  }
  return Graph::from_edge_list(n, edges);
}

std::vector<double> random_point(Rng& rng, int n) {
  std::vector<double> z(static_cast<std::size_t>(n));
  for (auto& v : z) v = rng.uniform01();
  return z;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("fbar on consensus vectors is zero") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_connected(rng, 3 + static_cast<int>(rng.uniform_below(8)), 0.3);
    const double c = rng.uniform01();
    const std::vector<double> z(static_cast<std::size_t>(g.size()), c);
    CHECK(sup_norm(fbar(g, z)) < 1e-14);
  }
}

TEST_CASE("fbar hand-evaluated on the three-urn line") {
  const auto f = fbar(make_path(3), std::vector<double>{1.0, 0.0, 0.0});
  CHECK(f[0] == -1.0);
  CHECK(f[1] == 0.5);
  CHECK(f[2] == 0.0);
  CHECK_THROWS_AS(fbar(make_path(3), std::vector<double>{1.0, 0.0}), InvalidParameter);
}

TEST_CASE("fbar is the negated Laplacian flow on regular graphs") {
  const auto g = make_circulant_regular(9, 4);
  Rng rng(2);
  const auto z = random_point(rng, 9);
  const auto f = fbar(g, z);
  const auto lap = laplacian(g);
  for (int i = 0; i < 9; ++i) {
    double lz = 0.0;
    for (int j = 0; j < 9; ++j) lz += static_cast<double>(lap(i, j)) * z[static_cast<std::size_t>(j)];
    CHECK(f[static_cast<std::size_t>(i)] == doctest::Approx(-lz).epsilon(1e-14));
  }
}

TEST_CASE("prefactor applied to only the neighbor sum breaks the consensus equilibrium") {
  // Alternative reading: (d/d_i) sum z_j - d_i z_i.
  const auto g = make_star(5);
  const std::vector<double> z(5, 0.4);
  const double d = g.min_degree();
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    double acc = 0.0;
    for (int j : g.neighbors(i)) acc += z[static_cast<std::size_t>(j)];
    worst = std::max(worst, std::abs(d / g.degree(i) * acc - g.degree(i) * z[static_cast<std::size_t>(i)]));
  }
  CHECK(worst > 1.0);
  CHECK(sup_norm(fbar(g, z)) == 0.0);
}

TEST_CASE("non-consensus points are not equilibria") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_connected(rng, 2 + static_cast<int>(rng.uniform_below(10)), 0.25);
    auto z = random_point(rng, g.size());
    z[0] = std::min(1.0, z[1] + 0.1);
    CHECK(sup_norm(fbar(g, z)) > 0.0);
  }
}

TEST_CASE("ftime") {
  const auto star = make_star(6);
  Rng rng(4);
  const auto z = random_point(rng, 6);

  const auto at0 = ftime(star, z, 0);
  for (int i = 0; i < 6; ++i) {
    double acc = 0.0;
    for (int j : star.neighbors(i)) acc += z[static_cast<std::size_t>(j)];
    CHECK(at0[static_cast<std::size_t>(i)] == doctest::Approx(acc - star.degree(i) * z[static_cast<std::size_t>(i)]));
  }

  const auto limit = fbar(star, z);
  const auto far = ftime(star, z, 1'000'000'000);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(far[static_cast<std::size_t>(i)] - limit[static_cast<std::size_t>(i)]) < 1e-6);

  const auto reg = make_circulant_regular(8, 2);
  const auto zr = random_point(rng, 8);
  for (std::int64_t t : {0, 1, 10, 1000}) CHECK(ftime(reg, zr, t) == fbar(reg, zr));

  // Sup distance to the limit field shrinks as t grows.
  double previous = 1e300;
  for (std::int64_t t : {1, 10, 100, 1000, 10000, 100000}) {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto zz = random_point(rng, 6);
      const auto a = ftime(star, zz, t);
      const auto b = fbar(star, zz);
      for (int i = 0; i < 6; ++i) worst = std::max(worst, std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]));
    }
    CHECK(worst < previous);
    previous = worst;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("gamma weights") {
  CHECK(gamma_weight(0, make_path(3)) == 0.5);
  CHECK(gamma_weight(4, make_circulant_regular(6, 2)) == doctest::Approx(1.0 / 11.0));
  // Partial sums grow like log(T) / d while the squares stay bounded.
  const auto g = make_circulant_regular(6, 2);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t t = 0; t < 1'000'000; ++t) {
    const double w = gamma_weight(t, g);
    sum += w;
    sum_sq += w * w;
  }
  CHECK(sum == doctest::Approx(std::log(1e6) / 2.0).epsilon(0.1));
  CHECK(sum_sq < 0.5);
}

TEST_CASE("integration converges to the degree-weighted consensus") {
  const auto line = make_path(3);
  const std::vector<double> z0{1.0, 0.0, 0.0};
  CHECK(predicted_consensus(line, z0) == 0.25);
  const auto traj = integrate(line, z0, default_step_size(line), 50.0, 100);
  CHECK(traj.times.back() == doctest::Approx(50.0));
  for (double v : traj.states.back()) CHECK(std::abs(v - 0.25) < 1e-6);
  for (const auto& z : traj.states) CHECK(std::abs(degree_weighted_sum(line, z) - 1.0) < 1e-8 * 4);
}

TEST_CASE("consensus starts stay put") {
  const auto g = make_star(7);
  const std::vector<double> z0(7, 0.3);
  const auto traj = integrate(g, z0, 0.01, 5.0, 10);
  for (const auto& z : traj.states) {
    for (double v : z) CHECK(v == doctest::Approx(0.3).epsilon(1e-15));
  }
  CHECK(predicted_consensus(g, z0) == doctest::Approx(0.3));
}

TEST_CASE("trajectories conserve the weighted sum and contract") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_connected(rng, 3 + static_cast<int>(rng.uniform_below(8)), 0.3);
    const auto z0 = random_point(rng, g.size());
    const auto traj = integrate(g, z0, 0.05 / g.max_degree(), 20.0, 1);
    const double initial = degree_weighted_sum(g, z0);
    double previous_spread = 2.0;
    for (const auto& z : traj.states) {
      CHECK(std::abs(degree_weighted_sum(g, z) - initial) <= 1e-8 * static_cast<double>(g.degree_sum()));
      const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
      CHECK(*hi - *lo <= previous_spread + 1e-12);
      previous_spread = *hi - *lo;
    }
  }
}

TEST_CASE("integration errors") {
  const auto g = make_path(3);
  const std::vector<double> z0{1.0, 0.0, 0.0};
  CHECK_THROWS_AS(integrate(g, z0, 0.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(integrate(g, std::vector<double>{1.5, 0.0, 0.0}, 0.01, 1.0), InvalidParameter);
  // RK4 on this field is unstable far beyond h * 2d; the excursion out of
  // [0,1] is reported rather than clipped.
  CHECK_THROWS_AS(integrate(g, z0, 10.0, 100.0), IntegrationDiverged);
}

TEST_CASE("ode csv") {
  const auto traj = integrate(make_path(3), std::vector<double>{1.0, 0.0, 0.0}, 0.5, 1.0);
  std::ostringstream out;
  write_ode_csv(out, traj);
  const auto text = out.str();
  CHECK(text.rfind("t,z_0,z_1,z_2\n0,1,0,0\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
