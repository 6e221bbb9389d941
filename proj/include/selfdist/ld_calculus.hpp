#pragma once

#include <cstdint>
#include <span>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "selfdist/term.hpp"

namespace selfdist {

enum class Direction { Expand, Contract };

/// One letter LD_α^{±1} of a word in the positional LD operators.
struct LDLetter {
  Address at;
  int exponent = 1; // +1 expands, -1 contracts

  friend bool operator==(const LDLetter &, const LDLetter &) = default;
};

/// Applied left to right.
using LDGeneratorWord = std::vector<LDLetter>;

std::string to_string(const LDGeneratorWord &w);
/// Parses `e 11 1 e 1^-1`-style text: whitespace separated addresses with an
/// optional `^-1` suffix.
LDGeneratorWord parse_generator_word(std::string_view text);

/// T1*(T2*T3) <-> (T1*T2)*(T1*T3) at address `alpha`.
Term apply_ld(const Term &t, const Address &alpha, Direction direction);
bool can_expand(const Term &t, const Address &alpha);
/// Addresses where an expansion applies, in left-right-root order.
std::vector<Address> expansion_points(const Term &t);

Term expand_seq(const Term &t, std::span<const Address> steps);
Term apply_generator_word(const Term &t, const LDGeneratorWord &w);

/// S ⊗ T: S*x at each leaf x of T.
Term otimes(const Term &s, const Term &t);
/// The derived term ∂T. Shared subterms are processed once, so iterated
/// derivation of right powers stays cheap even when the leaf count explodes.
Term derive(const Term &t);
/// ∂^p T.
Term derive_power(const Term &t, int p);
/// An explicit expansion sequence s with expand_seq(t, s) == derive(t).
std::vector<Address> derive_path(const Term &t);

struct SearchBudget {
  /// Upper bound on the number of distinct terms generated.
  std::uint64_t max_terms = 200000;
  std::stop_token stop;
};

struct ExpansionPair {
  std::vector<Address> left;
  std::vector<Address> right;
};

/// Breadth-first search for s, s' with expand_seq(t, s) == expand_seq(u, s'),
/// pairs ordered by total length. Throws BudgetExceeded or Cancelled.
ExpansionPair common_expansion(const Term &t, const Term &u,
                               const SearchBudget &budget = {});

} // namespace selfdist
