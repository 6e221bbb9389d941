#pragma once

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "selfdist/term.hpp"

namespace selfdist {

inline void PrintTo(const Term &t, std::ostream *os) {
  *os << (t.size() <= 64 ? to_infix(t) : "<term of " + std::to_string(t.size()) + " leaves>");
}

} // namespace selfdist

namespace selfdist::testing {

/// Every one-variable term with exactly `n` leaves.
inline std::vector<Term> shapes(int n) {
  static std::vector<std::vector<Term>> cache{{}, {Term::var(1)}};
  while (static_cast<int>(cache.size()) <= n) {
    int m = static_cast<int>(cache.size());
    std::vector<Term> level;
    for (int k = 1; k < m; ++k)
      for (auto &l : cache[k])
        for (auto &r : cache[m - k])
          level.push_back(Term::fwd(l, r));
    cache.push_back(std::move(level));
  }
  return cache[n];
}

inline std::vector<Term> shapes_up_to(int n) {
  std::vector<Term> out;
  for (int k = 1; k <= n; ++k)
    for (auto &t : shapes(k))
      out.push_back(t);
  return out;
}

/// Random FWD-only term with the given leaf count over x1..x_vars.
inline Term random_term(std::mt19937 &rng, int size, int vars) {
  if (size == 1)
    return Term::var(std::uniform_int_distribution<int>(1, vars)(rng));
  int k = std::uniform_int_distribution<int>(1, size - 1)(rng);
  return Term::fwd(random_term(rng, k, vars), random_term(rng, size - k, vars));
}

/// Random term that may also use the backward operation.
inline Term random_mixed_term(std::mt19937 &rng, int size, int vars) {
  if (size == 1)
    return Term::var(std::uniform_int_distribution<int>(1, vars)(rng));
  int k = std::uniform_int_distribution<int>(1, size - 1)(rng);
  Op op = std::bernoulli_distribution(0.5)(rng) ? Op::Fwd : Op::Bwd;
  return Term::node(op, random_mixed_term(rng, k, vars),
                    random_mixed_term(rng, size - k, vars));
}

inline Term T(const char *text) { return parse_term(text); }

} // namespace selfdist::testing
