#include "selfdist/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <unordered_set>
#include <utility>

#include "selfdist/error.hpp"

namespace selfdist {

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

// Address ------------------------------------------------------------------

Address::Address(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1')
      throw InvalidArgument("address must consist of 0 and 1, got '" + bits_ +
                            "'");
  }
}

Address Address::parse(std::string_view text) {
  if (text == "e" || text == "E" || text.empty())
    return Address{};
  return Address(std::string(text));
}

Address Address::ones(std::size_t count) {
  return Address(std::string(count, '1'));
}

Address Address::zeros(std::size_t count) {
  return Address(std::string(count, '0'));
}

Address Address::child(int bit) const {
  Address a = *this;
  a.bits_.push_back(bit == 0 ? '0' : '1');
  return a;
}

Address Address::operator+(const Address &suffix) const {
  Address a = *this;
  a.bits_ += suffix.bits_;
  return a;
}

Address Address::prefix(std::size_t length) const {
  Address a;
  a.bits_ = bits_.substr(0, length);
  return a;
}

bool Address::starts_with(const Address &p) const {
  return bits_.compare(0, p.bits_.size(), p.bits_) == 0;
}

bool Address::contains_zero() const {
  return bits_.find('0') != std::string::npos;
}

std::string Address::to_string() const { return bits_.empty() ? "e" : bits_; }

std::vector<Address> parse_address_list(std::string_view text) {
  std::vector<Address> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos)
      comma = text.size();
    auto item = text.substr(start, comma - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
      item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
      item.remove_suffix(1);
    if (item.empty()) {
      if (text.empty())
        break;
      throw InvalidArgument("empty address in list; spell the root as 'e'");
    }
    out.push_back(Address::parse(item));
    start = comma + 1;
  }
  return out;
}

std::string to_string(std::span<const Address> addresses) {
  std::string out = "(";
  for (std::size_t i = 0; i < addresses.size(); ++i) {
    if (i)
      out += ",";
    out += addresses[i].to_string();
  }
  return out + ")";
}

// Term ----------------------------------------------------------------------

Term Term::var(int index) {
  if (index < 1)
    throw InvalidArgument("variable index must be positive");
  auto n = std::make_shared<Node>();
  n->var = index;
  n->hash = mix(0x51ed27, static_cast<std::size_t>(index));
  n->min_var = n->max_var = index;
  return Term(std::shared_ptr<const Node>(std::move(n)));
}

Term Term::node(Op op, Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->size = saturating_add(left.size(), right.size());
  n->hash = mix(mix(op == Op::Fwd ? 0x3c6ef372 : 0xa54ff53a, left.hash()),
                right.hash());
  n->min_var = std::min(left.min_var(), right.min_var());
  n->max_var = std::max(left.max_var(), right.max_var());
  n->has_bwd = op == Op::Bwd || left.has_bwd() || right.has_bwd();
  n->left = std::move(left);
  n->right = std::move(right);
  return Term(std::shared_ptr<const Node>(std::move(n)));
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<const void *, const void *> &p) const {
    return mix(std::hash<const void *>{}(p.first),
               std::hash<const void *>{}(p.second));
  }
};

using EqualMemo =
    std::unordered_set<std::pair<const void *, const void *>, PairHash>;

bool equal_rec(const Term &a, const Term &b, EqualMemo *memo) {
  if (a.id() == b.id())
    return true;
  if (a.hash() != b.hash() || a.size() != b.size())
    return false;
  if (a.is_leaf() || b.is_leaf())
    return a.is_leaf() && b.is_leaf() && a.var() == b.var();
  if (a.op() != b.op())
    return false;
  // Shared subterms would make the plain recursion exponential on large DAGs.
  if (memo && memo->contains({a.id(), b.id()}))
    return true;
  bool eq = equal_rec(a.left(), b.left(), memo) &&
            equal_rec(a.right(), b.right(), memo);
  if (eq && memo)
    memo->insert({a.id(), b.id()});
  return eq;
}

} // namespace

bool operator==(const Term &a, const Term &b) {
  if (a.size() < (1u << 12))
    return equal_rec(a, b, nullptr);
  EqualMemo memo;
  return equal_rec(a, b, &memo);
}

// Parsing -------------------------------------------------------------------

namespace {

class InfixParser {
public:
  explicit InfixParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')')
        throw ParseError("unbalanced parenthesis", pos_);
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return t;
  }

private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  // expr := primary (('*' | '/') primary)*, left associative
  Term parse_expr() {
    Term t = parse_primary();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size())
        return t;
      char c = text_[pos_];
      if (c != '*' && c != '/')
        return t;
      ++pos_;
      Term rhs = parse_primary();
      t = Term::node(c == '*' ? Op::Fwd : Op::Bwd, std::move(t), std::move(rhs));
    }
  }

  Term parse_primary() {
    skip_space();
    if (pos_ >= text_.size())
      throw ParseError("unexpected end of input, expected a term", pos_);
    char c = text_[pos_];
    if (c == '(') {
      std::size_t open = pos_++;
      Term t = parse_expr();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("unbalanced parenthesis opened", open);
      ++pos_;
      return t;
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      std::size_t start = pos_++;
      if (c != 'x')
        return Term::var(c == 'y' ? 2 : 3);
      std::size_t digits = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (digits == pos_)
        return Term::var(1);
      long index = std::stol(std::string(text_.substr(digits, pos_ - digits)));
      if (index < 1 || index > std::numeric_limits<int>::max())
        throw ParseError("variable index out of range", start);
      return Term::var(static_cast<int>(index));
    }
    if (c == ')')
      throw ParseError("unbalanced parenthesis", pos_);
    throw ParseError(std::string("unexpected '") + c + "', expected a term",
                     pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Term parse_polish(std::string_view text) {
  std::vector<Term> stack;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    std::size_t start = pos;
    while (pos < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    std::string_view token = text.substr(start, pos - start);
    if (token == "." || token == "*") {
      if (stack.size() < 2)
        throw ParseError("invalid Polish word: operator without two operands",
                         start);
      Term r = std::move(stack.back());
      stack.pop_back();
      Term l = std::move(stack.back());
      stack.pop_back();
      stack.push_back(Term::fwd(std::move(l), std::move(r)));
      continue;
    }
    try {
      stack.push_back(InfixParser(token).parse());
    } catch (const ParseError &) {
      throw ParseError("invalid Polish token '" + std::string(token) + "'",
                       start);
    }
    if (!stack.back().is_leaf())
      throw ParseError("Polish tokens must be variables or '.'", start);
  }
  if (stack.size() != 1)
    throw ParseError("invalid Polish word: " + std::to_string(stack.size()) +
                         " terms left on the stack",
                     text.size());
  return stack.front();
}

} // namespace

Term parse_term(std::string_view text, Dialect dialect) {
  if (dialect == Dialect::Polish)
    return parse_polish(text);
  return InfixParser(text).parse();
}

// Printing ------------------------------------------------------------------

namespace {

void write_infix(const Term &t, std::string &out, bool top) {
  if (t.is_leaf()) {
    out += 'x';
    out += std::to_string(t.var());
    return;
  }
  if (!top)
    out += '(';
  write_infix(t.left(), out, false);
  out += t.op() == Op::Fwd ? '*' : '/';
  write_infix(t.right(), out, false);
  if (!top)
    out += ')';
}

void write_polish(const Term &t, PolishWord &out) {
  if (t.is_leaf()) {
    out.push_back({t.var()});
    return;
  }
  write_polish(t.left(), out);
  write_polish(t.right(), out);
  out.push_back({PolishLetter::kOp});
}

} // namespace

std::string to_infix(const Term &t) {
  std::string out;
  write_infix(t, out, true);
  return out;
}

std::string to_string(const PolishWord &w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += ' ';
    out += w[i].is_op() ? "." : "x" + std::to_string(w[i].value);
  }
  return out;
}

std::string to_polish_string(const Term &t) { return to_string(polish(t)); }

PolishWord polish(const Term &t) {
  require_fwd_only(t);
  PolishWord out;
  out.reserve(static_cast<std::size_t>(2 * t.size() - 1));
  write_polish(t, out);
  return out;
}

bool is_polish(std::span<const PolishLetter> w) {
  long balance = 0; // variables minus operators
  for (std::size_t i = 0; i < w.size(); ++i) {
    balance += w[i].is_op() ? -1 : 1;
    if (balance <= 0)
      return false;
  }
  return balance == 1;
}

Term term_from_polish(std::span<const PolishLetter> w) {
  std::vector<Term> stack;
  for (auto letter : w) {
    if (letter.is_op()) {
      if (stack.size() < 2)
        throw InvalidArgument("not a Polish word");
      Term r = std::move(stack.back());
      stack.pop_back();
      Term l = std::move(stack.back());
      stack.pop_back();
      stack.push_back(Term::fwd(std::move(l), std::move(r)));
    } else {
      stack.push_back(Term::var(letter.value));
    }
  }
  if (stack.size() != 1)
    throw InvalidArgument("not a Polish word");
  return stack.front();
}

// Addresses -----------------------------------------------------------------

Term subterm(const Term &t, const Address &alpha) {
  const Term *cur = &t;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (cur->is_leaf())
      throw AddressOutOfSkeleton("address " + alpha.to_string() +
                                 " is outside the skeleton of " + to_infix(t));
    cur = alpha[i] == '0' ? &cur->left() : &cur->right();
  }
  return *cur;
}

bool in_skeleton(const Term &t, const Address &alpha) {
  const Term *cur = &t;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (cur->is_leaf())
      return false;
    cur = alpha[i] == '0' ? &cur->left() : &cur->right();
  }
  return true;
}

namespace {

void collect(const Term &t, std::string &path, std::vector<Address> &out,
             bool leaves_only) {
  if (!t.is_leaf()) {
    path.push_back('0');
    collect(t.left(), path, out, leaves_only);
    path.back() = '1';
    collect(t.right(), path, out, leaves_only);
    path.pop_back();
    if (leaves_only)
      return;
  }
  out.push_back(Address(path));
}

} // namespace

std::vector<Address> skeleton(const Term &t) {
  std::vector<Address> out;
  std::string path;
  collect(t, path, out, false);
  return out;
}

std::vector<Address> leaves(const Term &t) {
  std::vector<Address> out;
  std::string path;
  collect(t, path, out, true);
  return out;
}

Address addr_of_letter(std::size_t p, const Term &t) {
  const std::uint64_t total = 2 * t.size() - 1;
  if (p < 1 || p > total)
    throw IndexOutOfRange("letter index " + std::to_string(p) +
                          " outside 1.." + std::to_string(total));
  // The subterm at the current node spans 2*size-1 letters; descend by
  // comparing the remaining index against the left block.
  std::string path;
  const Term *cur = &t;
  std::uint64_t index = p; // 1-based inside *cur
  for (;;) {
    std::uint64_t span = 2 * cur->size() - 1;
    if (index == span)
      return Address(path);
    std::uint64_t left_span = 2 * cur->left().size() - 1;
    if (index <= left_span) {
      path.push_back('0');
      cur = &cur->left();
    } else {
      path.push_back('1');
      index -= left_span;
      cur = &cur->right();
    }
  }
}

std::size_t letter_of_address(const Term &t, const Address &alpha) {
  const Term *cur = &t;
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (cur->is_leaf())
      throw AddressOutOfSkeleton("address " + alpha.to_string() +
                                 " is outside the skeleton");
    if (alpha[i] == '0') {
      cur = &cur->left();
    } else {
      offset += 2 * cur->left().size() - 1;
      cur = &cur->right();
    }
  }
  return static_cast<std::size_t>(offset + 2 * cur->size() - 1);
}

// Cuts ----------------------------------------------------------------------

Term cut(const Term &t, const Address &leaf) {
  if (!in_skeleton(t, leaf))
    throw AddressOutOfSkeleton("address " + leaf.to_string() +
                               " is outside the skeleton");
  if (!subterm(t, leaf).is_leaf())
    throw NotALeaf("address " + leaf.to_string() + " is not a leaf");
  PolishWord w = polish(t);
  std::size_t p = letter_of_address(t, leaf);
  w.resize(p);
  long vars = 0;
  long ops = 0;
  for (auto letter : w)
    (letter.is_op() ? ops : vars) += 1;
  w.insert(w.end(), static_cast<std::size_t>(vars - ops - 1),
           PolishLetter{PolishLetter::kOp});
  return term_from_polish(w);
}

Term cut_by_decomposition(const Term &t, const Address &leaf) {
  if (!in_skeleton(t, leaf))
    throw AddressOutOfSkeleton("address " + leaf.to_string() +
                               " is outside the skeleton");
  if (!subterm(t, leaf).is_leaf())
    throw NotALeaf("address " + leaf.to_string() + " is not a leaf");
  // Every '1' in the leaf address contributes the left sibling of the node
  // it enters; the leaf itself closes the right comb.
  std::vector<Term> factors;
  const Term *cur = &t;
  for (std::size_t i = 0; i < leaf.size(); ++i) {
    if (leaf[i] == '1') {
      factors.push_back(cur->left());
      cur = &cur->right();
    } else {
      cur = &cur->left();
    }
  }
  Term result = *cur;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    result = Term::fwd(*it, result);
  return result;
}

Term left_subterm_iterate(const Term &t, std::size_t r) {
  const Term *cur = &t;
  for (std::size_t i = 0; i < r; ++i) {
    if (cur->is_leaf())
      throw AddressOutOfSkeleton("left subterm iterate beyond left height");
    cur = &cur->left();
  }
  return *cur;
}

std::size_t left_height(const Term &t) {
  std::size_t h = 0;
  for (const Term *cur = &t; !cur->is_leaf(); cur = &cur->left())
    ++h;
  return h;
}

std::size_t right_height(const Term &t) {
  std::size_t h = 0;
  for (const Term *cur = &t; !cur->is_leaf(); cur = &cur->right())
    ++h;
  return h;
}

bool iter_left_divides(const Term &t, const Term &u) {
  if (t.size() >= u.size())
    return false;
  for (const Term *cur = &u; !cur->is_leaf();) {
    cur = &cur->left();
    if (cur->size() < t.size())
      return false;
    if (*cur == t)
      return true;
  }
  return false;
}

Term project_one_var(const Term &t) {
  require_fwd_only(t);
  if (t.is_leaf())
    return t.var() == 1 ? t : Term::var(1);
  if (t.is_one_variable() && t.min_var() == 1)
    return t;
  return Term::fwd(project_one_var(t.left()), project_one_var(t.right()));
}

Term right_power(int n, int var) {
  if (n < 1)
    throw InvalidArgument("power exponent must be at least 1");
  Term x = Term::var(var);
  Term result = x;
  for (int i = 1; i < n; ++i)
    result = Term::fwd(x, result);
  return result;
}

Term left_power(int n, int var) {
  if (n < 1)
    throw InvalidArgument("power exponent must be at least 1");
  Term x = Term::var(var);
  Term result = x;
  for (int i = 1; i < n; ++i)
    result = Term::fwd(result, x);
  return result;
}

void require_fwd_only(const Term &t) {
  if (t.has_bwd())
    throw BwdNotSupported("term contains the backward operation '/': " +
                          to_infix(t));
}

void require_one_variable(const Term &t) {
  if (!t.is_one_variable())
    throw MultiVariable("expected a one-variable term, got " + to_infix(t));
}

} // namespace selfdist
