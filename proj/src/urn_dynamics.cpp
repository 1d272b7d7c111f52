#include "urnnet/urn_dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <ostream>
#include <sstream>

#include "urnnet/csv.hpp"
#include "urnnet/errors.hpp"

namespace urnnet {

UrnState init_signals(const Graph& g, double alpha, Rng& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidParameter("alpha must lie in [0,1], got " + format_real(alpha));
  }
  const auto n = static_cast<std::size_t>(g.size());
  UrnState state;
  state.black.assign(n, 0);
  state.white.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform01() < alpha) {
      state.white[i] = 1;
    } else {
      state.black[i] = 1;
    }
  }
  return state;
}

UrnState init_fixed(const Graph& g, std::span<const Color> colors) {
  if (colors.size() != static_cast<std::size_t>(g.size())) {
    throw InvalidParameter("initial colors: expected " + std::to_string(g.size()) +
                           " entries, got " + std::to_string(colors.size()));
  }
  UrnState state;
  state.black.reserve(colors.size());
  state.white.reserve(colors.size());
  for (Color c : colors) {
    state.black.push_back(c == Color::black ? 1 : 0);
    state.white.push_back(c == Color::white ? 1 : 0);
  }
  return state;
}

std::vector<Color> parse_colors(const std::string& text) {
  std::vector<Color> colors;
  std::istringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::string t;
    for (char ch : token) {
      if (!std::isspace(static_cast<unsigned char>(ch))) {
        t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
      }
    }
    if (t == "W" || t == "0") {
      colors.push_back(Color::white);
    } else if (t == "B" || t == "1") {
      colors.push_back(Color::black);
    } else {
      throw InvalidParameter("bad color '" + token + "' (expected W or B)");
    }
  }
  if (colors.empty()) throw InvalidParameter("empty color list");
  return colors;
}

void validate(const UrnState& state, const Graph& g) {
  const auto n = static_cast<std::size_t>(g.size());
  if (state.black.size() != n || state.white.size() != n) {
    throw InvalidInput("urn state has " + std::to_string(state.black.size()) + " agents, graph has " +
                       std::to_string(n));
  }
  if (state.t < 0) throw InvalidInput("urn state has negative time");
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t expected = 1 + static_cast<std::int64_t>(g.degree(static_cast<int>(i))) * state.t;
    if (state.black[i] < 0 || state.white[i] < 0 || state.black[i] + state.white[i] != expected) {
      throw InvalidInput("urn " + std::to_string(i) + " holds " + std::to_string(state.black[i]) +
                         " black + " + std::to_string(state.white[i]) + " white balls, expected total " +
                         std::to_string(expected) + " at t=" + std::to_string(state.t));
    }
  }
}

void apply_draws(UrnState& state, const Graph& g, std::span<const std::uint8_t> draws) {
  const int n = g.size();
  if (g.min_degree() == n - 1) {
    // Complete graph: every agent sees all draws but its own.
    std::int64_t total = 0;
    for (auto x : draws) total += x;
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const std::int64_t seen = total - draws[k];
      state.black[k] += seen;
      state.white[k] += (n - 1) - seen;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      std::int64_t seen = 0;
      for (int j : g.neighbors(i)) seen += draws[static_cast<std::size_t>(j)];
      const auto k = static_cast<std::size_t>(i);
      state.black[k] += seen;
      state.white[k] += g.degree(i) - seen;
    }
  }
  ++state.t;
}

void step(UrnState& state, const Graph& g, Rng& rng, DrawVector& draws) {
  const auto n = static_cast<std::size_t>(g.size());
  draws.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = static_cast<std::uint64_t>(state.black[i]);
    const auto s = b + static_cast<std::uint64_t>(state.white[i]);
    assert(static_cast<std::int64_t>(s) == 1 + g.degree(static_cast<int>(i)) * state.t);
    draws[i] = rng.uniform_below(s) < b ? 1 : 0;
  }
  apply_draws(state, g, draws);
}

DrawVector step(UrnState& state, const Graph& g, Rng& rng) {
  DrawVector draws;
  step(state, g, rng, draws);
  return draws;
}

std::vector<double> proportions(const UrnState& state) {
  std::vector<double> z(state.black.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = static_cast<double>(state.black[i]) /
           static_cast<double>(state.black[i] + state.white[i]);
  }
  return z;
}

double spread(const UrnState& state) {
  const auto z = proportions(state);
  const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
  return *hi - *lo;
}

double degree_weighted_mean(const UrnState& state, const Graph& g) {
  const auto z = proportions(state);
  double acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) acc += g.degree(static_cast<int>(i)) * z[i];
  return acc / static_cast<double>(g.degree_sum());
}

void write_trajectory_header(std::ostream& out) { out << "t,agent,black,total,z\n"; }

void write_trajectory_rows(std::ostream& out, const UrnState& state) {
  for (int i = 0; i < state.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const auto total = state.total(i);
    out << state.t << ',' << i << ',' << state.black[k] << ',' << total << ','
        << format_real(static_cast<double>(state.black[k]) / static_cast<double>(total)) << '\n';
  }
}

}  // namespace urnnet
