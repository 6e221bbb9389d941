#include "selfdist/ld_word_problem.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "selfdist/braid.hpp"
#include "selfdist/error.hpp"

namespace selfdist {

// Polish algorithm ------------------------------------------------------------

namespace {

std::size_t common_prefix(const PolishWord &a, const PolishWord &b) {
  std::size_t p = 0;
  while (p < a.size() && p < b.size() && a[p] == b[p])
    ++p;
  return p;
}

std::string snapshot(const PolishWord &w, std::size_t marker) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i == marker)
      out += out.empty() ? "||" : " ||";
    if (!out.empty())
      out += ' ';
    out += w[i].is_op() ? "." : "x" + std::to_string(w[i].value);
  }
  if (marker >= w.size())
    out += " ||";
  return out;
}

} // namespace

std::optional<Disc> disc(const Term &t, const Term &u) {
  PolishWord a = polish(t);
  PolishWord b = polish(u);
  std::size_t p = common_prefix(a, b);
  if (p == a.size() || p == b.size())
    return std::nullopt;
  if (!a[p].is_op() && b[p].is_op())
    return Disc{p, 1};
  if (a[p].is_op() && !b[p].is_op())
    return Disc{p, 2};
  return std::nullopt;
}

std::vector<Address> sol(const Address &alpha) {
  const std::string &bits = alpha.bits();
  std::size_t end = bits.size();
  while (end > 0 && bits[end - 1] == '1')
    --end;
  std::size_t zeros_end = end;
  while (end > 0 && bits[end - 1] == '0')
    --end;
  std::size_t p = zeros_end - end;
  if (p == 0 || end == 0)
    throw NoFactor10("SOL is undefined on " + alpha.to_string() +
                     ": no factor 10");
  Address beta = alpha.prefix(end - 1);
  std::vector<Address> out;
  for (std::size_t k = 0; k < p; ++k)
    out.push_back(beta + Address::zeros(k));
  return out;
}

const char *to_string(PolishVerdict v) {
  switch (v) {
  case PolishVerdict::Equivalent:
    return "equivalent";
  case PolishVerdict::NotEquivalent:
    return "not equivalent";
  case PolishVerdict::CapExceeded:
    return "cap exceeded";
  }
  return "?";
}

std::pair<std::string, std::string> polish_snapshot(const Term &t,
                                                    const Term &u) {
  PolishWord a = polish(t);
  PolishWord b = polish(u);
  std::size_t p = common_prefix(a, b);
  return {snapshot(a, p), snapshot(b, p)};
}

namespace {

// Runs the Polish algorithm, optionally keeping the expansion sequence
// applied to each side.
PolishOutcome run_polish(const Term &t, const Term &u, std::size_t step_cap,
                         bool trace, std::vector<Address> *left_seq,
                         std::vector<Address> *right_seq) {
  PolishOutcome out;
  out.left = t;
  out.right = u;
  for (;;) {
    auto d = disc(out.left, out.right);
    if (!d)
      break;
    if (out.steps == step_cap) {
      out.verdict = PolishVerdict::CapExceeded;
      return out;
    }
    Term &side = d->side == 1 ? out.left : out.right;
    PolishStep step;
    step.disc = *d;
    step.at = addr_of_letter(d->p, side);
    try {
      step.expansion = sol(step.at);
    } catch (const NoFactor10 &) {
      throw InternalError("Polish algorithm: SOL undefined at " +
                          step.at.to_string());
    }
    if (trace)
      std::tie(step.left_before, step.right_before) =
          polish_snapshot(out.left, out.right);
    side = expand_seq(side, step.expansion);
    if (auto *seq = d->side == 1 ? left_seq : right_seq)
      seq->insert(seq->end(), step.expansion.begin(), step.expansion.end());
    if (trace)
      out.trace.push_back(std::move(step));
    ++out.steps;
  }
  // Remaining cases: equal words, one word a prefix of the other (an
  // iterated left subterm), or a clash between two distinct variables.
  out.verdict = out.left == out.right ? PolishVerdict::Equivalent
                                      : PolishVerdict::NotEquivalent;
  return out;
}

} // namespace

PolishOutcome wp_polish(const Term &t, const Term &u, std::size_t step_cap,
                        bool trace) {
  require_fwd_only(t);
  require_fwd_only(u);
  return run_polish(t, u, step_cap, trace, nullptr, nullptr);
}

// Syntactic solver -------------------------------------------------------------

namespace {

class ProjectedFrontier {
public:
  explicit ProjectedFrontier(const Term &root) { add(root, 0); }

  std::size_t depth() const { return levels_.size() - 1; }
  bool exhausted() const { return levels_.back().empty(); }
  const std::vector<std::size_t> &level(std::size_t d) const {
    return levels_[d];
  }
  const Term &term(std::size_t i) const { return nodes_[i].term; }
  const Term &projection(std::size_t i) const { return nodes_[i].projection; }

  bool has_term_at(const Term &t, std::size_t depth) const {
    auto it = by_term_.find(t);
    return it != by_term_.end() && nodes_[it->second].depth == depth;
  }

  bool has_projection_at(const Term &p, std::size_t depth) const {
    auto it = by_projection_.find(p);
    if (it == by_projection_.end())
      return false;
    for (std::size_t i : it->second)
      if (nodes_[i].depth == depth)
        return true;
    return false;
  }

  void grow(const SyntacticOptions &options, std::uint64_t &generated) {
    levels_.emplace_back();
    const auto &parents = levels_[levels_.size() - 2];
    for (std::size_t k = 0; k < parents.size(); ++k) {
      Term t = nodes_[parents[k]].term;
      auto points = expansion_points(t);
      std::sort(points.begin(), points.end());
      for (auto &a : points) {
        if (options.stop.stop_requested())
          throw Cancelled();
        Term child = apply_ld(t, a, Direction::Expand);
        if (by_term_.contains(child))
          continue;
        if (++generated > options.max_terms)
          throw BudgetExceeded("syntactic search exceeded " +
                               std::to_string(options.max_terms) + " terms");
        add(child, levels_.size() - 1);
      }
    }
  }

private:
  struct Node {
    Term term;
    Term projection;
    std::size_t depth;
  };

  void add(const Term &t, std::size_t depth) {
    if (levels_.size() <= depth)
      levels_.resize(depth + 1);
    std::size_t index = nodes_.size();
    Term proj = project_one_var(t);
    nodes_.push_back({t, proj, depth});
    by_term_.emplace(t, index);
    by_projection_[proj].push_back(index);
    levels_[depth].push_back(index);
  }

  std::vector<Node> nodes_;
  std::unordered_map<Term, std::size_t, TermHash> by_term_;
  std::unordered_map<Term, std::vector<std::size_t>, TermHash> by_projection_;
  std::vector<std::vector<std::size_t>> levels_;
};

// True when a proper iterated left subterm of `p` is the projection of a node
// of `other` at `depth`.
bool left_divisor_in(const Term &p, const ProjectedFrontier &other,
                     std::size_t depth) {
  for (const Term *cur = &p; !cur->is_leaf();) {
    cur = &cur->left();
    if (other.has_projection_at(*cur, depth))
      return true;
  }
  return false;
}

} // namespace

namespace {

bool proper_left_iterate(const Term &p, const Term &q) {
  for (const Term *cur = &q; !cur->is_leaf();) {
    cur = &cur->left();
    if (*cur == p)
      return true;
  }
  return false;
}

// One candidate pair of expansion sequences, read off the Polish algorithm
// run on the projections and lifted to the terms themselves (expansions only
// depend on the skeleton). Empty when the candidate meets no stopping rule.
std::optional<bool> guided_candidate(const Term &t, const Term &u,
                                     std::size_t cap) {
  std::vector<Address> left_seq, right_seq;
  auto out = run_polish(project_one_var(t), project_one_var(u), cap, false,
                        &left_seq, &right_seq);
  if (out.verdict == PolishVerdict::CapExceeded)
    return std::nullopt;
  Term t1 = expand_seq(t, left_seq);
  Term u1 = expand_seq(u, right_seq);
  if (t1 == u1)
    return true;
  const Term &p = out.left;
  const Term &q = out.right;
  if (p == q || proper_left_iterate(p, q) || proper_left_iterate(q, p))
    return false;
  return std::nullopt;
}

} // namespace

bool wp_ld_syntactic(const Term &t, const Term &u,
                     const SyntacticOptions &options) {
  require_fwd_only(t);
  require_fwd_only(u);
  if (options.guide_steps > 0)
    if (auto verdict = guided_candidate(t, u, options.guide_steps))
      return *verdict;
  ProjectedFrontier a(t), b(u);
  std::uint64_t generated = 2;
  for (std::size_t total = 0;; ++total) {
    while (a.depth() < total && !a.exhausted())
      a.grow(options, generated);
    while (b.depth() < total && !b.exhausted())
      b.grow(options, generated);
    for (std::size_t i = 0; i <= total; ++i) {
      std::size_t j = total - i;
      if (i > a.depth() || j > b.depth())
        continue;
      for (std::size_t node : a.level(i)) {
        if (b.has_term_at(a.term(node), j))
          return true;
      }
      for (std::size_t node : a.level(i)) {
        const Term &p = a.projection(node);
        if (b.has_projection_at(p, j) || left_divisor_in(p, b, j))
          return false;
      }
      for (std::size_t node : b.level(j))
        if (left_divisor_in(b.projection(node), a, i))
          return false;
    }
    if (a.exhausted() && b.exhausted() && total >= a.depth() + b.depth())
      throw BudgetExceeded("syntactic search saturated without a verdict");
  }
}

// Descents --------------------------------------------------------------------

bool dominates(const Address &alpha, const Address &beta) {
  const std::string &a = alpha.bits();
  const std::string &b = beta.bits();
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i])
    ++i;
  if (i == a.size() || i == b.size())
    return false;
  return a[i] == '1' && b[i] == '0' &&
         a.find('0', i + 1) != std::string::npos;
}

std::string to_string(const Descent &d) {
  return to_string(std::span<const Address>(d));
}

namespace {

// For each leaf, the first leaf index of the subtree at its prefix through
// its last 0 (0 when the address has no 0). Leaves before that index are
// exactly the leaves it dominates.
void collect_bounds(const Term &t, std::uint64_t last_zero,
                    std::vector<std::uint64_t> &out) {
  if (t.is_leaf()) {
    out.push_back(last_zero);
    return;
  }
  std::uint64_t start = out.size();
  collect_bounds(t.left(), start, out);
  collect_bounds(t.right(), last_zero, out);
}

void list_descents(const std::vector<std::uint64_t> &bounds,
                   std::uint64_t limit, std::vector<std::uint64_t> &prefix,
                   std::vector<std::vector<std::uint64_t>> &out) {
  for (std::uint64_t k = 0; k < limit; ++k) {
    prefix.push_back(k);
    out.push_back(prefix);
    list_descents(bounds, bounds[k], prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

} // namespace

std::vector<Descent> descents(const Term &t) {
  auto addresses = leaves(t);
  std::vector<std::uint64_t> bounds;
  collect_bounds(t, 0, bounds);
  std::vector<std::vector<std::uint64_t>> indices;
  std::vector<std::uint64_t> prefix;
  list_descents(bounds, bounds.size(), prefix, indices);
  std::vector<Descent> out;
  out.reserve(indices.size());
  for (auto &seq : indices) {
    Descent d;
    for (auto k : seq)
      d.push_back(addresses[k]);
    out.push_back(std::move(d));
  }
  return out;
}

// Abridged notation -------------------------------------------------------------

namespace {

int right_power_exponent(const Term &t) {
  if (t.has_bwd() || !t.is_one_variable())
    return 0;
  int n = 1;
  for (const Term *cur = &t; !cur->is_leaf(); cur = &cur->right()) {
    if (!cur->left().is_leaf())
      return 0;
    ++n;
  }
  return n;
}

void write_abridged(const Term &t, std::string &out) {
  if (int n = right_power_exponent(t)) {
    out += n <= 9 ? std::to_string(n) : "[" + std::to_string(n) + "]";
    return;
  }
  write_abridged(t.left(), out);
  write_abridged(t.right(), out);
  out += "∘";
}

} // namespace

std::string to_abridged(const Term &t) {
  require_fwd_only(t);
  require_one_variable(t);
  std::string out;
  write_abridged(t, out);
  return out;
}

Term parse_abridged(std::string_view text) {
  std::vector<Term> stack;
  const std::string_view circ = "∘";
  std::size_t i = 0;
  auto combine = [&](std::size_t pos) {
    if (stack.size() < 2)
      throw ParseError("operator without two operands", pos);
    Term r = stack.back();
    stack.pop_back();
    Term l = stack.back();
    stack.pop_back();
    stack.push_back(Term::fwd(l, r));
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ') {
      ++i;
    } else if (c >= '1' && c <= '9') {
      stack.push_back(right_power(c - '0'));
      ++i;
    } else if (c == '[') {
      std::size_t close = text.find(']', i);
      if (close == std::string_view::npos)
        throw ParseError("unterminated '['", i);
      int n = std::stoi(std::string(text.substr(i + 1, close - i - 1)));
      if (n < 1)
        throw ParseError("power must be positive", i);
      stack.push_back(right_power(n));
      i = close + 1;
    } else if (c == 'o' || c == '.') {
      combine(i++);
    } else if (text.substr(i, circ.size()) == circ) {
      combine(i);
      i += circ.size();
    } else {
      throw ParseError(std::string("unexpected '") + c + "'", i);
    }
  }
  if (stack.size() != 1)
    throw ParseError("abridged word does not denote one term", text.size());
  return stack.front();
}

// Normal forms ------------------------------------------------------------------

namespace {

/// Leaves of ∂^q x^[n] for q = 0, 1, ... with LD-canonical representatives
/// of their cuts. Leaf k of ∂^{q+1} x^[n] corresponds to the k-th descent
/// (α1, ..., αm) of ∂^q x^[n], and its cut is represented by
/// R(α1) * (R(α2) * ... R(αm)).
class DerivedLadder {
public:
  DerivedLadder(int n, std::uint64_t max_tabulated)
      : n_(n), max_tabulated_(max_tabulated) {}

  int n() const { return n_; }

  /// Number of leaves of ∂^q x^[n], saturating.
  std::uint64_t leaves(int q) {
    if (q == 0)
      return static_cast<std::uint64_t>(n_);
    if (!tabulate(q - 1))
      return std::numeric_limits<std::uint64_t>::max();
    return levels_[static_cast<std::size_t>(q - 1)].prefix.back();
  }

  bool tabulate(int q) {
    while (static_cast<int>(levels_.size()) <= q) {
      // The descent count of a level is the leaf count of the next one, so
      // oversized levels are rejected before they are built.
      if (!levels_.empty() && levels_.back().prefix.back() > max_tabulated_)
        return false;
      Term term = levels_.empty() ? right_power(n_) : derive(last_term_);
      Level l;
      l.bounds.reserve(static_cast<std::size_t>(term.size()));
      collect_bounds(term, 0, l.bounds);
      l.prefix.resize(l.bounds.size() + 1, 0);
      for (std::size_t k = 0; k < l.bounds.size(); ++k) {
        std::uint64_t count = saturating_add(1, l.prefix[l.bounds[k]]);
        l.prefix[k + 1] = saturating_add(l.prefix[k], count);
      }
      last_term_ = term;
      levels_.push_back(std::move(l));
    }
    return true;
  }

  std::uint64_t bound(int q, std::uint64_t k) const {
    return levels_[static_cast<std::size_t>(q)].bounds[k];
  }

  /// Leaf indices of the i-th descent of ∂^q x^[n]; level q tabulated.
  std::vector<std::uint64_t> descent_at(int q, std::uint64_t i) {
    const auto &prefix = levels_[static_cast<std::size_t>(q)].prefix;
    std::vector<std::uint64_t> out;
    for (;;) {
      auto it = std::upper_bound(prefix.begin(), prefix.end(), i);
      std::uint64_t k = static_cast<std::uint64_t>(it - prefix.begin()) - 1;
      out.push_back(k);
      std::uint64_t r = i - prefix[k];
      if (r == 0)
        return out;
      i = r - 1;
    }
  }

  /// Representative of the cut of ∂^q x^[n] at leaf k.
  const Term &rep(int q, std::uint64_t k) {
    auto &memo = memo_for(q);
    if (auto it = memo.find(k); it != memo.end())
      return it->second.term;
    Term t = Term::var(1);
    if (q == 0) {
      t = right_power(static_cast<int>(k) + 1);
    } else {
      auto seq = descent_at(q - 1, k);
      t = rep(q - 1, seq.back());
      for (auto j = seq.size() - 1; j-- > 0;)
        t = Term::fwd(rep(q - 1, seq[j]), t);
    }
    return memo.emplace(k, Entry{t, std::nullopt}).first->second.term;
  }

  const BraidWord &rep_braid(int q, std::uint64_t k) {
    rep(q, k);
    auto &entry = memo_for(q).at(k);
    if (!entry.braid)
      entry.braid = eval_term(entry.term);
    return *entry.braid;
  }

private:
  struct Level {
    std::vector<std::uint64_t> bounds;
    std::vector<std::uint64_t> prefix;
  };
  struct Entry {
    Term term;
    std::optional<BraidWord> braid;
  };

  std::unordered_map<std::uint64_t, Entry> &memo_for(int q) {
    if (static_cast<int>(reps_.size()) <= q)
      reps_.resize(static_cast<std::size_t>(q) + 1);
    return reps_[static_cast<std::size_t>(q)];
  }

  int n_;
  std::uint64_t max_tabulated_;
  Term last_term_ = Term::var(1);
  std::vector<Level> levels_;
  std::vector<std::unordered_map<std::uint64_t, Entry>> reps_;
};

enum class Probe { Found, Absent, TooLarge };

/// Locates target among the cuts of ∂^p x^[n]. Cuts increase along the
/// leaves, and left multiplication preserves the order, so each factor of
/// the descent is found by binary search.
Probe probe(DerivedLadder &ladder, int p, const BraidWord &target,
            const std::stop_token &stop, Term &found) {
  int level = p - 1;
  std::vector<std::uint64_t> chosen;
  std::vector<const BraidWord *> factors;
  auto compare_at = [&](std::uint64_t k) {
    if (stop.stop_requested())
      throw Cancelled();
    BraidWord b = level < 0 ? eval_term(right_power(static_cast<int>(k) + 1))
                            : ladder.rep_braid(level, k);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
      b = braid_shelf_op(**it, b);
    return compare_braids(b, target);
  };
  std::uint64_t limit;
  if (level < 0) {
    limit = static_cast<std::uint64_t>(ladder.n());
  } else {
    if (!ladder.tabulate(level))
      return Probe::TooLarge;
    limit = ladder.leaves(level);
  }
  for (;;) {
    // Largest k < limit whose product does not exceed the target.
    std::uint64_t lo = 0, hi = limit;
    Ordering at_lo = Ordering::Greater;
    while (lo < hi) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      Ordering o = compare_at(mid);
      if (o == Ordering::Greater) {
        hi = mid;
      } else {
        lo = mid + 1;
        at_lo = o;
      }
    }
    if (lo == 0)
      return Probe::Absent;
    std::uint64_t k = lo - 1;
    chosen.push_back(k);
    if (at_lo == Ordering::Equal) {
      auto factor = [&](std::uint64_t j) {
        return level < 0 ? right_power(static_cast<int>(j) + 1)
                         : ladder.rep(level, j);
      };
      Term t = factor(chosen.back());
      for (auto j = chosen.size() - 1; j-- > 0;)
        t = Term::fwd(factor(chosen[j]), t);
      found = t;
      return Probe::Found;
    }
    if (level < 0)
      return Probe::Absent;
    factors.push_back(&ladder.rep_braid(level, k));
    limit = ladder.bound(level, k);
    if (limit == 0)
      return Probe::Absent;
  }
}

} // namespace

NormalFormResult normal_form_ex(const Term &t,
                                const NormalFormOptions &options) {
  require_fwd_only(t);
  require_one_variable(t);
  Term x = project_one_var(t);
  BraidWord target = eval_term(x);
  int low = std::max<int>(1, static_cast<int>(right_height(x)));
  int high = options.max_n > 0
                 ? options.max_n
                 : static_cast<int>(std::min<std::uint64_t>(
                       2 * x.size() + 2, 1 << 20));
  std::vector<DerivedLadder> ladders;
  for (int n = low; n <= high; ++n)
    ladders.emplace_back(n, options.max_level_leaves);
  bool truncated = false;
  for (int p = 0; p <= options.max_degree; ++p) {
    for (auto &ladder : ladders) {
      Term found = x;
      Probe r = probe(ladder, p, target, options.stop, found);
      if (r == Probe::Found)
        return {found, p, ladder.n()};
      truncated |= r == Probe::TooLarge;
    }
  }
  throw BudgetExceeded(
      "normal form not found for degree <= " +
      std::to_string(options.max_degree) + " and n in [" +
      std::to_string(low) + ", " + std::to_string(high) + "]" +
      (truncated ? " (some derived levels were too large to tabulate)" : ""));
}

Term normal_form(const Term &t, const NormalFormOptions &options) {
  return normal_form_ex(t, options).term;
}

bool wp_ld_normalform(const Term &t, const Term &u,
                      const NormalFormOptions &options) {
  return normal_form(t, options) == normal_form(u, options);
}

std::vector<NormalTerm> enumerate_normal(int n, int max_degree,
                                         std::uint64_t max_leaves) {
  if (n < 2)
    throw InvalidArgument("enumerate_normal needs n >= 2");
  if (max_degree < 0)
    throw InvalidArgument("degree must be non-negative");
  std::vector<NormalTerm> out;
  for (int k = 1; k < n; ++k)
    out.push_back({0, right_power(k)});
  DerivedLadder ladder(n, max_leaves);
  for (int p = 1; p <= max_degree; ++p) {
    if (!ladder.tabulate(p - 1) || ladder.leaves(p) > max_leaves)
      throw BudgetExceeded("∂^" + std::to_string(p) + " x^[" +
                           std::to_string(n) + "] has too many leaves");
    // Single-factor descents repeat cuts of lower degree; longer ones are
    // new and pairwise distinct since cuts strictly increase along leaves.
    for (std::uint64_t k = 0; k < ladder.leaves(p); ++k) {
      if (ladder.descent_at(p - 1, k).size() >= 2)
        out.push_back({p, ladder.rep(p, k)});
    }
  }
  return out;
}

} // namespace selfdist
