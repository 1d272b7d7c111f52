#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "urnnet/graph.hpp"
#include "urnnet/rng.hpp"

namespace urnnet {

// White encodes the true state, black the wrong one.
enum class Color : std::uint8_t { white = 0, black = 1 };

// Realized draws of one step, 1 = black.
using DrawVector = std::vector<std::uint8_t>;

// Exact ball counts of every urn after t steps. The total S_i = 1 + d_i*t is
// implied by the graph and never stored.
struct UrnState {
  std::int64_t t = 0;
  std::vector<std::int64_t> black;
  std::vector<std::int64_t> white;

  int size() const noexcept { return static_cast<int>(black.size()); }
  std::int64_t total(int i) const {
    return black[static_cast<std::size_t>(i)] + white[static_cast<std::size_t>(i)];
  }

  friend bool operator==(const UrnState&, const UrnState&) = default;
};

// Every agent independently receives the true-state signal (one white ball)
// with probability alpha, otherwise one black ball. Consumes one uniform01()
// per agent in index order.
UrnState init_signals(const Graph& g, double alpha, Rng& rng);
UrnState init_fixed(const Graph& g, std::span<const Color> colors);

// Parses "W,B,W" (case-insensitive, also accepts 0/1 with 1 = black).
std::vector<Color> parse_colors(const std::string& text);

// Throws InvalidInput unless B_i + W_i = 1 + d_i*t and counts are
// non-negative for every agent.
void validate(const UrnState& state, const Graph& g);

// One synchronous step. Each agent draws black with probability B_i/S_i,
// using one uniform_below(S_i) in agent-index order, then all urns are
// reinforced with their neighbors' draws.
void step(UrnState& state, const Graph& g, Rng& rng, DrawVector& draws);
DrawVector step(UrnState& state, const Graph& g, Rng& rng);

// Reinforcement with a given draw vector; shared by step() and the exact
// oracle.
void apply_draws(UrnState& state, const Graph& g, std::span<const std::uint8_t> draws);

std::vector<double> proportions(const UrnState& state);
double spread(const UrnState& state);
double degree_weighted_mean(const UrnState& state, const Graph& g);

// Trajectory CSV: t,agent,black,total,z.
void write_trajectory_header(std::ostream& out);
void write_trajectory_rows(std::ostream& out, const UrnState& state);

}  // namespace urnnet
