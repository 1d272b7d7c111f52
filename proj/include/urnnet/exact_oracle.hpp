#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "urnnet/graph.hpp"
#include "urnnet/urn_dynamics.hpp"

namespace urnnet {

// Arbitrary-precision rational; GMP keeps it canonical (gcd 1, den > 0).
using Rational = mpq_class;

// Per-agent (black, white) counts.
using Composition = std::vector<std::pair<std::int64_t, std::int64_t>>;

// Brute force is refused beyond n * depth > kEnumerationBound.
inline constexpr int kEnumerationBound = 24;

Composition composition_of(const UrnState& state);
UrnState state_of(const Composition& composition, std::int64_t t);

// Exact probability of a draw vector given the state.
Rational draw_probability(const UrnState& state, const DrawVector& draws);

// One realized sequence of draw vectors, its probability and the resulting
// composition. Zero-probability paths are omitted.
struct DrawPath {
  std::vector<DrawVector> draws;
  Rational probability;
  Composition composition;
};

struct OutcomeDistribution {
  std::int64_t t = 0;
  std::map<Composition, Rational> outcomes;

  Rational total() const;
  Rational probability(const Composition& c) const;
  std::size_t size() const noexcept { return outcomes.size(); }

  friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;
};

// Per-draw-path view, enumerating all 2^(n*depth) draw sequences.
std::vector<DrawPath> enumerate_paths(const Graph& g, const UrnState& init, int depth);

// Merged view: compositions after `depth` further steps with their exact
// probabilities. Identical compositions are merged after every step.
OutcomeDistribution enumerate(const Graph& g, const UrnState& init, int depth);

// Pushes an existing distribution `depth` further steps.
OutcomeDistribution extend(const Graph& g, const OutcomeDistribution& dist, int depth);

// E[B_i^{t+1} - B_i^t | state] computed from the one-step enumeration.
std::vector<Rational> one_step_expectation(const Graph& g, const UrnState& init);

// Always "num/den", including integers ("1/1").
std::string to_fraction_string(const Rational& q);

// [{"composition": [[B,W],...], "prob": "num/den"}, ...] in composition order.
void write_distribution_json(std::ostream& out, const OutcomeDistribution& dist);
void write_paths_json(std::ostream& out, const std::vector<DrawPath>& paths);

}  // namespace urnnet
