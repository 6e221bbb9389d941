#include "selfdist/ld_calculus.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "selfdist/error.hpp"

namespace selfdist {

std::string to_string(const LDGeneratorWord &w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += ' ';
    out += "LD_" + w[i].at.to_string();
    if (w[i].exponent < 0)
      out += "^-1";
  }
  return out;
}

LDGeneratorWord parse_generator_word(std::string_view text) {
  LDGeneratorWord w;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    int exponent = 1;
    if (token.size() > 3 && token.ends_with("^-1")) {
      exponent = -1;
      token.resize(token.size() - 3);
    }
    if (token.starts_with("LD_"))
      token = token.substr(3);
    w.push_back({Address::parse(token), exponent});
  }
  return w;
}

namespace {

Term rewrite_at(const Term &t, const Address &alpha, std::size_t depth,
                const std::function<Term(const Term &)> &fn) {
  if (depth == alpha.size())
    return fn(t);
  if (t.is_leaf())
    throw AddressOutOfSkeleton("address " + alpha.to_string() +
                               " is outside the skeleton");
  if (alpha[depth] == '0')
    return Term::node(t.op(), rewrite_at(t.left(), alpha, depth + 1, fn),
                      t.right());
  return Term::node(t.op(), t.left(),
                    rewrite_at(t.right(), alpha, depth + 1, fn));
}

bool expandable(const Term &t) {
  return !t.is_leaf() && t.op() == Op::Fwd && !t.right().is_leaf() &&
         t.right().op() == Op::Fwd;
}

bool contractible(const Term &t) {
  return !t.is_leaf() && t.op() == Op::Fwd && !t.left().is_leaf() &&
         t.left().op() == Op::Fwd && !t.right().is_leaf() &&
         t.right().op() == Op::Fwd && t.left().left() == t.right().left();
}

const char *direction_name(Direction d) {
  return d == Direction::Expand ? "expand" : "contract";
}

} // namespace

Term apply_ld(const Term &t, const Address &alpha, Direction direction) {
  auto fail = [&]() -> Term {
    throw NotApplicable("LD_" + alpha.to_string() + " (" +
                            direction_name(direction) +
                            ") does not apply to " + to_infix(t),
                        0);
  };
  if (!in_skeleton(t, alpha))
    return fail();
  return rewrite_at(t, alpha, 0, [&](const Term &s) -> Term {
    if (direction == Direction::Expand) {
      if (!expandable(s))
        return fail();
      const Term &t1 = s.left();
      return Term::fwd(Term::fwd(t1, s.right().left()),
                       Term::fwd(t1, s.right().right()));
    }
    if (!contractible(s))
      return fail();
    return Term::fwd(s.left().left(),
                     Term::fwd(s.left().right(), s.right().right()));
  });
}

bool can_expand(const Term &t, const Address &alpha) {
  return in_skeleton(t, alpha) && expandable(subterm(t, alpha));
}

std::vector<Address> expansion_points(const Term &t) {
  std::vector<Address> out;
  for (auto &a : skeleton(t))
    if (expandable(subterm(t, a)))
      out.push_back(a);
  return out;
}

Term expand_seq(const Term &t, std::span<const Address> steps) {
  Term cur = t;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      cur = apply_ld(cur, steps[i], Direction::Expand);
    } catch (const NotApplicable &e) {
      throw NotApplicable(e.what(), i);
    }
  }
  return cur;
}

Term apply_generator_word(const Term &t, const LDGeneratorWord &w) {
  Term cur = t;
  for (std::size_t i = 0; i < w.size(); ++i) {
    try {
      cur = apply_ld(cur, w[i].at,
                     w[i].exponent > 0 ? Direction::Expand
                                       : Direction::Contract);
    } catch (const NotApplicable &e) {
      throw NotApplicable(e.what(), i);
    }
  }
  return cur;
}

// Derivation ----------------------------------------------------------------

namespace {

// Keyed on node identity; the stored keys keep the nodes alive.
struct Memo {
  std::unordered_map<const void *, std::pair<Term, Term>> entries;

  const Term *find(const Term &key) const {
    auto it = entries.find(key.id());
    return it == entries.end() ? nullptr : &it->second.second;
  }
  void put(const Term &key, const Term &value) {
    entries.emplace(key.id(), std::make_pair(key, value));
  }
};

Term otimes_memo(const Term &s, const Term &t, Memo &memo) {
  if (t.is_leaf())
    return Term::fwd(s, t);
  if (auto *hit = memo.find(t))
    return *hit;
  Term r = Term::fwd(otimes_memo(s, t.left(), memo),
                     otimes_memo(s, t.right(), memo));
  memo.put(t, r);
  return r;
}

Term derive_memo(const Term &t, Memo &memo) {
  if (t.is_leaf())
    return t;
  if (auto *hit = memo.find(t))
    return *hit;
  Term left = derive_memo(t.left(), memo);
  Term right = derive_memo(t.right(), memo);
  Memo local;
  Term r = otimes_memo(left, right, local);
  memo.put(t, r);
  return r;
}

} // namespace

Term otimes(const Term &s, const Term &t) {
  require_fwd_only(s);
  require_fwd_only(t);
  Memo memo;
  return otimes_memo(s, t, memo);
}

Term derive(const Term &t) {
  require_fwd_only(t);
  Memo memo;
  return derive_memo(t, memo);
}

Term derive_power(const Term &t, int p) {
  if (p < 0)
    throw InvalidArgument("derivation exponent must be non-negative");
  Term cur = t;
  for (int i = 0; i < p; ++i)
    cur = derive(cur);
  return cur;
}

namespace {

// Expands s*u into s⊗u: distribute at the root, then recurse into both
// halves. Only the shape of u matters.
void distribute_path(const Term &u, std::string &at, std::vector<Address> &out) {
  if (u.is_leaf())
    return;
  out.emplace_back(at);
  at.push_back('0');
  distribute_path(u.left(), at, out);
  at.back() = '1';
  distribute_path(u.right(), at, out);
  at.pop_back();
}

void derive_path_rec(const Term &t, std::string &at, std::vector<Address> &out,
                     Memo &memo) {
  if (t.is_leaf())
    return;
  at.push_back('0');
  derive_path_rec(t.left(), at, out, memo);
  at.back() = '1';
  derive_path_rec(t.right(), at, out, memo);
  at.pop_back();
  distribute_path(derive_memo(t.right(), memo), at, out);
}

} // namespace

std::vector<Address> derive_path(const Term &t) {
  require_fwd_only(t);
  std::vector<Address> out;
  std::string at;
  Memo memo;
  derive_path_rec(t, at, out, memo);
  return out;
}

// Common expansion ----------------------------------------------------------

namespace {

struct Reached {
  Term term;
  std::size_t parent; // index into the same side's node list
  Address step;
  std::size_t depth;
};

class ExpansionFrontier {
public:
  explicit ExpansionFrontier(const Term &root) {
    nodes_.push_back({root, npos, Address{}, 0});
    index_.emplace(root, 0);
    levels_.push_back({0});
  }

  std::size_t depth() const { return levels_.size() - 1; }
  const std::vector<std::size_t> &level(std::size_t d) const {
    return levels_[d];
  }
  const Term &term(std::size_t i) const { return nodes_[i].term; }
  std::size_t depth_of(std::size_t i) const { return nodes_[i].depth; }
  std::size_t size() const { return nodes_.size(); }

  const std::size_t *find(const Term &t) const {
    auto it = index_.find(t);
    return it == index_.end() ? nullptr : &it->second;
  }

  /// Minimal-length expansion sequences, children in address order.
  void grow(const SearchBudget &budget, std::uint64_t &generated) {
    std::vector<std::size_t> next;
    for (std::size_t parent : levels_.back()) {
      Term t = nodes_[parent].term;
      auto points = expansion_points(t);
      std::sort(points.begin(), points.end());
      for (auto &a : points) {
        if (budget.stop.stop_requested())
          throw Cancelled();
        Term child = apply_ld(t, a, Direction::Expand);
        if (index_.contains(child))
          continue;
        if (++generated > budget.max_terms)
          throw BudgetExceeded("common expansion search exceeded " +
                               std::to_string(budget.max_terms) + " terms");
        index_.emplace(child, nodes_.size());
        next.push_back(nodes_.size());
        nodes_.push_back({child, parent, a, levels_.size()});
      }
    }
    levels_.push_back(std::move(next));
  }

  bool exhausted() const { return levels_.back().empty(); }

  std::vector<Address> path(std::size_t i) const {
    std::vector<Address> out;
    for (; nodes_[i].parent != npos; i = nodes_[i].parent)
      out.push_back(nodes_[i].step);
    std::reverse(out.begin(), out.end());
    return out;
  }

private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<Reached> nodes_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
  std::vector<std::vector<std::size_t>> levels_;
};

} // namespace

ExpansionPair common_expansion(const Term &t, const Term &u,
                               const SearchBudget &budget) {
  require_fwd_only(t);
  require_fwd_only(u);
  ExpansionFrontier a(t), b(u);
  std::uint64_t generated = 2;
  for (std::size_t total = 0;; ++total) {
    // Make sure every split (i, total - i) is available.
    while (a.depth() < total && !a.exhausted())
      a.grow(budget, generated);
    while (b.depth() < total && !b.exhausted())
      b.grow(budget, generated);
    for (std::size_t i = 0; i <= total; ++i) {
      std::size_t j = total - i;
      if (i > a.depth() || j > b.depth())
        continue;
      for (std::size_t node : a.level(i)) {
        const std::size_t *hit = b.find(a.term(node));
        if (hit && b.depth_of(*hit) == j)
          return {a.path(node), b.path(*hit)};
      }
    }
    // Both sides saturated (every term reached and all splits tried).
    if (a.exhausted() && b.exhausted() && total >= a.depth() + b.depth())
      throw BudgetExceeded("no common expansion: both expansion sets are "
                           "finite and disjoint");
  }
}

} // namespace selfdist
