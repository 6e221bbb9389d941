#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfdist/term.hpp"

namespace selfdist {

/// Operation table on {1..n}; at(a, b) = a∘b.
class ShelfTable {
public:
  ShelfTable() = default;
  /// Every entry starts at 1.
  explicit ShelfTable(int n);
  /// Row-major rows, each of length n. Throws InvalidParams on bad shape or
  /// out-of-range entries.
  static ShelfTable from_rows(const std::vector<std::vector<int>> &rows);

  int size() const { return n_; }
  int at(int a, int b) const {
    return cells_[static_cast<std::size_t>((a - 1) * n_ + (b - 1))];
  }
  void set(int a, int b, int v) {
    cells_[static_cast<std::size_t>((a - 1) * n_ + (b - 1))] =
        static_cast<std::uint16_t>(v);
  }
  std::vector<int> row(int a) const;

  friend bool operator==(const ShelfTable &, const ShelfTable &) = default;

private:
  int n_ = 0;
  std::vector<std::uint16_t> cells_;
};

enum class Law { LD, RD, Idempotent, LeftBijective, RightBijective };

std::string to_string(Law law);
/// Accepts ld, rd, idem, idempotent, left-bij, right-bij.
Law parse_law(std::string_view name);

struct LawReport {
  std::string law;
  bool holds = true;
  /// Values assigned to the variables x1, x2, ... of the failing instance.
  std::optional<std::vector<int>> counterexample;
};

/// Exhaustive; the counterexample is the first failing tuple in
/// lexicographic order. For the bijectivity laws the tuple is (a, b, b')
/// with a∘b = a∘b' (left) or b∘a = b'∘a (right), b < b'.
LawReport check_law(const ShelfTable &s, Law law);

inline constexpr int kLaverCap = 13;

/// The unique operation on {1..n} with a∘1 = a+1 (n∘1 = 1) and
/// a∘(b∘1) = (a∘b)∘(a∘1). Built row by row from n down to 1.
ShelfTable laver_like_table(int n);
/// A_k on 2^k elements. Throws CapExceeded when k > cap.
ShelfTable laver_table(int k, int cap = kLaverCap);

enum class Side { Right, Left };

struct ExampleParams {
  /// trivial: the map f as values f(1..n).
  std::vector<int> f;
  /// cyclic: n; boolean: number of atoms; alexander: modulus; conj/core:
  /// degree d of Sym(d) or n of Z/n.
  int n = 0;
  /// alexander: multiplier t.
  int t = 0;
  /// conj/core: "sym" or "z".
  std::string group = "sym";
  /// conj: Right gives b^{-1} a b, Left gives a b a^{-1}.
  Side side = Side::Right;
  /// alexander: demand an invertible t.
  bool rack = false;
};

/// Kinds: trivial, cyclic, boolean, alexander, conj, core. Group elements
/// are numbered in lexicographic order (permutations of 0..d-1, or 0..n-1).
/// Throws InvalidParams for unknown kinds, bad parameters or groups of
/// order above 120.
ShelfTable make_example(std::string_view kind, const ExampleParams &params);

/// Evaluates a FWD-only term; variable i takes values[i-1].
int eval_in_table(const ShelfTable &s, const Term &t,
                  const std::vector<int> &values);

/// mode all: every assignment of the variables up to the larger max_var.
/// With an assignment, only that instance is checked; missing variables
/// throw UnboundVariable.
LawReport check_equation(const ShelfTable &s, const Term &lhs, const Term &rhs,
                         const std::optional<std::map<int, int>> &assignment =
                             std::nullopt);

/// succ[a] lists every b with a∘x = b for some x (including b = a).
std::vector<std::vector<int>> division_digraph(const ShelfTable &s);
bool is_acyclic(const ShelfTable &s);

/// Trichotomy of iterated left division on a monogenerated table. Throws
/// NotMonogenerated when {g} does not generate. The counterexample is an
/// incomparable pair.
LawReport check_comparison(const ShelfTable &s, int g);

/// Four-element left spindle violating the left conjugacy law.
ShelfTable counterexample_spindle();

/// First line n, then n rows of n integers.
ShelfTable read_table(std::istream &in);
void write_table(std::ostream &out, const ShelfTable &s);

} // namespace selfdist
