#pragma once

#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "selfdist/ld_calculus.hpp"
#include "selfdist/term.hpp"

namespace selfdist {

// Polish algorithm ------------------------------------------------------------

/// First clash between two Polish words where one side holds a variable and
/// the other the operator. `p` is the length of the common prefix; `side` is
/// 1 when the first term holds the variable, 2 otherwise.
struct Disc {
  std::size_t p = 0;
  int side = 1;

  friend bool operator==(const Disc &, const Disc &) = default;
};

std::optional<Disc> disc(const Term &t, const Term &u);

/// For α = β 1 0^p 1^r (p >= 1): (β, β0, ..., β0^{p-1}).
std::vector<Address> sol(const Address &alpha);

enum class PolishVerdict { Equivalent, NotEquivalent, CapExceeded };
const char *to_string(PolishVerdict v);

struct PolishStep {
  Disc disc;
  Address at; // address of the p-th letter on the expanded side
  std::vector<Address> expansion;
  /// Both Polish words before the step, `||` after the common prefix.
  std::string left_before;
  std::string right_before;
};

struct PolishOutcome {
  PolishVerdict verdict = PolishVerdict::CapExceeded;
  std::size_t steps = 0;
  std::vector<PolishStep> trace; // filled when requested
  Term left = Term::var(1);
  Term right = Term::var(1);
};

/// Polish words of both terms with `||` marking the longest common prefix.
std::pair<std::string, std::string> polish_snapshot(const Term &t,
                                                    const Term &u);

PolishOutcome wp_polish(const Term &t, const Term &u,
                        std::size_t step_cap = 100000, bool trace = false);

// Syntactic solver -------------------------------------------------------------

struct SyntacticOptions {
  std::uint64_t max_terms = 400000;
  /// Polish steps spent building a first candidate pair before the
  /// exhaustive enumeration starts; 0 skips it.
  std::size_t guide_steps = 10000;
  std::stop_token stop;
};

/// Search over pairs of expansion sequences. Returns true on a
/// common expansion, false as soon as the one-variable projections of two
/// expansions coincide while the terms differ, or one projection is a proper
/// iterated left subterm of the other. Throws BudgetExceeded.
bool wp_ld_syntactic(const Term &t, const Term &u,
                     const SyntacticOptions &options = {});

// Descents and normal forms -------------------------------------------------

/// Leaf α dominates leaf β when β lies strictly left of the subtree rooted at
/// α's prefix through its last 0.
bool dominates(const Address &alpha, const Address &beta);

using Descent = std::vector<Address>;
std::string to_string(const Descent &d);

/// All descents of t in lexicographic order. They are in increasing
/// bijection with the leaves of derive(t).
std::vector<Descent> descents(const Term &t);

/// Digits for right powers x^[i] (bracketed when i > 9), `∘` for the
/// operation, in Polish order: (x*x)*x is `21∘`.
std::string to_abridged(const Term &t);
Term parse_abridged(std::string_view text);

struct NormalFormOptions {
  int max_degree = 4;
  /// Largest n tried for x^[n]; 0 means 2*size(t) + 2.
  int max_n = 0;
  /// Largest derived level whose leaves may be tabulated.
  std::uint64_t max_level_leaves = std::uint64_t{1} << 23;
  std::stop_token stop;
};

struct NormalFormResult {
  Term term = Term::var(1);
  int degree = 0;
  int n = 1;
};

NormalFormResult normal_form_ex(const Term &t,
                                const NormalFormOptions &options = {});
Term normal_form(const Term &t, const NormalFormOptions &options = {});
bool wp_ld_normalform(const Term &t, const Term &u,
                      const NormalFormOptions &options = {});

struct NormalTerm {
  int degree = 0;
  Term term = Term::var(1);
};

/// Normal terms among the proper cuts of ∂^p x^[n], p <= max_degree, each at
/// its minimal degree, in increasing order within a degree.
std::vector<NormalTerm> enumerate_normal(int n, int max_degree,
                                         std::uint64_t max_leaves = 1000000);

} // namespace selfdist
