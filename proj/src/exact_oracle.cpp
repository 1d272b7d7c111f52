#include "urnnet/exact_oracle.hpp"

#include <ostream>

#include <json.hpp>

#include "urnnet/errors.hpp"

namespace urnnet {

namespace {

void check_guard(int n, int depth) {
  if (depth < 0) throw InvalidParameter("enumeration depth must be >= 0");
  if (static_cast<long long>(n) * depth > kEnumerationBound) {
    throw GuardExceeded("enumeration refused: n*depth = " + std::to_string(n) + "*" +
                        std::to_string(depth) + " exceeds the bound " +
                        std::to_string(kEnumerationBound) + " (2^" +
                        std::to_string(kEnumerationBound) + " draw paths)");
  }
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  Rational q(static_cast<long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

DrawVector draws_from_mask(std::uint64_t mask, int n) {
  DrawVector x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
  return x;
}

void expand_paths(const Graph& g, const UrnState& state, int remaining, DrawPath& prefix,
                  std::vector<DrawPath>& out) {
  if (remaining == 0) {
    out.push_back({prefix.draws, prefix.probability, composition_of(state)});
    return;
  }
  const int n = g.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto draws = draws_from_mask(mask, n);
    const Rational p = draw_probability(state, draws);
    if (p == 0) continue;
    UrnState next = state;
    apply_draws(next, g, draws);
    const Rational saved = prefix.probability;
    prefix.probability *= p;
    prefix.draws.push_back(std::move(draws));
    expand_paths(g, next, remaining - 1, prefix, out);
    prefix.draws.pop_back();
    prefix.probability = saved;
  }
}

}  // namespace

Composition composition_of(const UrnState& state) {
  Composition c(state.black.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = {state.black[i], state.white[i]};
  return c;
}

UrnState state_of(const Composition& composition, std::int64_t t) {
  UrnState s;
  s.t = t;
  for (const auto& [b, w] : composition) {
    s.black.push_back(b);
    s.white.push_back(w);
  }
  return s;
}

Rational draw_probability(const UrnState& state, const DrawVector& draws) {
  Rational p = 1;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const auto total = state.black[i] + state.white[i];
    const auto favourable = draws[i] != 0 ? state.black[i] : state.white[i];
    if (favourable == 0) return Rational(0);
    p *= make_rational(favourable, total);
  }
  return p;
}

Rational OutcomeDistribution::total() const {
  Rational sum = 0;
  for (const auto& [c, p] : outcomes) sum += p;
  return sum;
}

Rational OutcomeDistribution::probability(const Composition& c) const {
  const auto it = outcomes.find(c);
  return it == outcomes.end() ? Rational(0) : it->second;
}

std::vector<DrawPath> enumerate_paths(const Graph& g, const UrnState& init, int depth) {
  check_guard(g.size(), depth);
  validate(init, g);
  std::vector<DrawPath> out;
  DrawPath prefix{{}, Rational(1), {}};
  expand_paths(g, init, depth, prefix, out);
  return out;
}

OutcomeDistribution extend(const Graph& g, const OutcomeDistribution& dist, int depth) {
  check_guard(g.size(), depth);
  const int n = g.size();
  OutcomeDistribution current = dist;
  for (int s = 0; s < depth; ++s) {
    OutcomeDistribution next;
    next.t = current.t + 1;
    for (const auto& [comp, weight] : current.outcomes) {
      const UrnState state = state_of(comp, current.t);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const auto draws = draws_from_mask(mask, n);
        const Rational p = draw_probability(state, draws);
        if (p == 0) continue;
        UrnState after = state;
        apply_draws(after, g, draws);
        next.outcomes[composition_of(after)] += weight * p;
      }
    }
    current = std::move(next);
  }
  return current;
}

OutcomeDistribution enumerate(const Graph& g, const UrnState& init, int depth) {
  check_guard(g.size(), depth);
  validate(init, g);
  OutcomeDistribution start;
  start.t = init.t;
  start.outcomes[composition_of(init)] = 1;
  return extend(g, start, depth);
}

std::vector<Rational> one_step_expectation(const Graph& g, const UrnState& init) {
  const auto dist = enumerate(g, init, 1);
  std::vector<Rational> expectation(static_cast<std::size_t>(g.size()), Rational(0));
  for (const auto& [comp, p] : dist.outcomes) {
    for (std::size_t i = 0; i < comp.size(); ++i) {
      expectation[i] += p * Rational(static_cast<long>(comp[i].first - init.black[i]));
    }
  }
  return expectation;
}

std::string to_fraction_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

nlohmann::json composition_json(const Composition& c) {
  auto arr = nlohmann::json::array();
  for (const auto& [b, w] : c) arr.push_back({b, w});
  return arr;
}

}  // namespace

void write_distribution_json(std::ostream& out, const OutcomeDistribution& dist) {
  auto doc = nlohmann::json::array();
  for (const auto& [comp, p] : dist.outcomes) {
    doc.push_back({{"composition", composition_json(comp)}, {"prob", to_fraction_string(p)}});
  }
  out << doc.dump(2) << '\n';
}

void write_paths_json(std::ostream& out, const std::vector<DrawPath>& paths) {
  auto doc = nlohmann::json::array();
  for (const auto& path : paths) {
    auto draws = nlohmann::json::array();
    for (const auto& x : path.draws) {
      std::string s;
      for (auto bit : x) s.push_back(bit != 0 ? 'B' : 'W');
      draws.push_back(s);
    }
    doc.push_back({{"draws", draws},
                   {"composition", composition_json(path.composition)},
                   {"prob", to_fraction_string(path.probability)}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace urnnet
