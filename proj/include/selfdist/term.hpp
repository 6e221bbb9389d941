#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace selfdist {

/// The two shelf operations: FWD is written `*` (◁), BWD is written `/` (◁̄).
enum class Op : std::uint8_t { Fwd, Bwd };

/// Position of a subterm: a word over {0, 1}, 0 = left, 1 = right.
/// The empty address is the root and is spelled `e` in text.
class Address {
public:
  Address() = default;
  explicit Address(std::string bits);

  /// Accepts `e` (or the empty string) for the root, otherwise a 0/1 string.
  static Address parse(std::string_view text);
  static Address ones(std::size_t count);
  static Address zeros(std::size_t count);

  const std::string &bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  char operator[](std::size_t i) const { return bits_[i]; }

  Address child(int bit) const;
  Address operator+(const Address &suffix) const;
  Address prefix(std::size_t length) const;
  bool starts_with(const Address &prefix) const;
  bool contains_zero() const;

  std::string to_string() const;

  friend bool operator==(const Address &, const Address &) = default;
  friend std::strong_ordering operator<=>(const Address &a,
                                          const Address &b) {
    return a.bits_.compare(b.bits_) <=> 0;
  }

private:
  std::string bits_;
};

std::vector<Address> parse_address_list(std::string_view text);
std::string to_string(std::span<const Address> addresses);

/// Immutable binary term. Copies share structure; equality is structural.
class Term {
public:
  static Term var(int index);
  static Term node(Op op, Term left, Term right);
  static Term fwd(Term left, Term right) {
    return node(Op::Fwd, std::move(left), std::move(right));
  }
  static Term bwd(Term left, Term right) {
    return node(Op::Bwd, std::move(left), std::move(right));
  }

  bool is_leaf() const;
  /// Variable index of a leaf (1-based).
  int var() const;
  Op op() const;
  const Term &left() const;
  const Term &right() const;

  /// Number of leaves, saturating at UINT64_MAX.
  std::uint64_t size() const;
  std::size_t hash() const;
  bool has_bwd() const;
  int min_var() const;
  int max_var() const;
  bool is_one_variable() const { return min_var() == max_var(); }

  /// Identity of the shared node; equal ids imply equal terms.
  const void *id() const { return node_.get(); }

  friend bool operator==(const Term &a, const Term &b);

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  explicit Term(std::nullptr_t) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Op op = Op::Fwd;
  int var = 0; // > 0 for leaves
  Term left{nullptr};
  Term right{nullptr};
  std::uint64_t size = 1;
  std::size_t hash = 0;
  int min_var = 0;
  int max_var = 0;
  bool has_bwd = false;
};

inline bool Term::is_leaf() const { return node_->var > 0; }
inline int Term::var() const { return node_->var; }
inline Op Term::op() const { return node_->op; }
inline const Term &Term::left() const { return node_->left; }
inline const Term &Term::right() const { return node_->right; }
inline std::uint64_t Term::size() const { return node_->size; }
inline std::size_t Term::hash() const { return node_->hash; }
inline bool Term::has_bwd() const { return node_->has_bwd; }
inline int Term::min_var() const { return node_->min_var; }
inline int Term::max_var() const { return node_->max_var; }

struct TermHash {
  std::size_t operator()(const Term &t) const { return t.hash(); }
};

enum class Dialect { Infix, Polish };

/// One letter of a Polish word: a variable index > 0, or the operator.
struct PolishLetter {
  static constexpr int kOp = 0;
  int value = kOp;

  bool is_op() const { return value == kOp; }
  friend bool operator==(PolishLetter, PolishLetter) = default;
};

using PolishWord = std::vector<PolishLetter>;

Term parse_term(std::string_view text, Dialect dialect = Dialect::Infix);

/// Fully parenthesized infix form, e.g. `x1*(x2*x3)`.
std::string to_infix(const Term &t);
/// Space separated Polish tokens, `.` for the operator.
std::string to_polish_string(const Term &t);
std::string to_string(const PolishWord &w);

/// Left-right-root enumeration. Requires a FWD-only term.
PolishWord polish(const Term &t);
bool is_polish(std::span<const PolishLetter> w);
Term term_from_polish(std::span<const PolishLetter> w);

Term subterm(const Term &t, const Address &alpha);
bool in_skeleton(const Term &t, const Address &alpha);
/// All addresses of `t`, in left-right-root order.
std::vector<Address> skeleton(const Term &t);
/// Leaf addresses, left to right.
std::vector<Address> leaves(const Term &t);
/// Address of the p-th letter (1-based) of polish(t).
Address addr_of_letter(std::size_t p, const Term &t);
/// 1-based Polish position of the node at `alpha`.
std::size_t letter_of_address(const Term &t, const Address &alpha);

/// Cut at a leaf: the Polish prefix ending at that leaf, padded with
/// operators.
Term cut(const Term &t, const Address &leaf);
/// The same cut built as T/α0 ◁ (T/α1 ◁ ... T/αm) from the 0/1 structure of
/// the leaf address.
Term cut_by_decomposition(const Term &t, const Address &leaf);

/// Left subterm iterated `r` times; `r` must not exceed the left height.
Term left_subterm_iterate(const Term &t, std::size_t r);
std::size_t left_height(const Term &t);
std::size_t right_height(const Term &t);
/// True iff `t` equals LS^r(`u`) for some r >= 1.
bool iter_left_divides(const Term &t, const Term &u);

/// Relabels every leaf to x1.
Term project_one_var(const Term &t);
/// x^[n]: x, x*x, x*(x*x), ...
Term right_power(int n, int var = 1);
/// x_[n]: x, x*x, (x*x)*x, ...
Term left_power(int n, int var = 1);

void require_fwd_only(const Term &t);
void require_one_variable(const Term &t);

} // namespace selfdist
