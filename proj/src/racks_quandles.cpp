#include "selfdist/racks_quandles.hpp"

#include <cstdlib>
#include <unordered_map>

#include "selfdist/error.hpp"

namespace selfdist {

std::string to_string(const RackElement &e) {
  return "(x" + std::to_string(e.base) + ", " + free_to_string(e.tail) + ")";
}

std::string to_string(const QuandleElement &e) {
  return free_to_string(e.word);
}

RackElement rack_op(const RackElement &a, const RackElement &b, Op op) {
  int y = op == Op::Fwd ? b.base : -b.base;
  FreeWord tail = free_concat(a.tail, free_inverse(b.tail));
  tail = free_concat(tail, {y});
  return {a.base, free_concat(tail, b.tail)};
}

QuandleElement quandle_op(const QuandleElement &a, const QuandleElement &b,
                          Op op) {
  const FreeWord &w = b.word;
  if (op == Op::Fwd)
    return {free_concat(free_concat(free_inverse(w), a.word), w)};
  return {free_concat(free_concat(w, a.word), free_inverse(w))};
}

namespace {

template <class Value, class Leaf, class Combine>
Value eval_rec(const Term &t, std::unordered_map<const void *, Value> &memo,
               const Leaf &leaf, const Combine &combine) {
  if (t.is_leaf())
    return leaf(t.var());
  if (auto it = memo.find(t.id()); it != memo.end())
    return it->second;
  Value v = combine(eval_rec(t.left(), memo, leaf, combine),
                    eval_rec(t.right(), memo, leaf, combine), t.op());
  memo.emplace(t.id(), v);
  return v;
}

// Splits a reduced conjugate c^{-1} x c of a generator into (x, c).
RackElement split_conjugate(const FreeWord &w) {
  if (w.size() % 2 == 0)
    throw InternalError("quandle value is not a conjugate of a generator");
  std::size_t m = w.size() / 2;
  RackElement out{w[m], FreeWord(w.begin() + static_cast<std::ptrdiff_t>(m) + 1,
                                 w.end())};
  if (out.base <= 0)
    throw InternalError("quandle value is not a conjugate of a generator");
  return out;
}

Term comb(const RackElement &e) {
  Term t = Term::var(e.base);
  for (int letter : e.tail)
    t = Term::node(letter > 0 ? Op::Fwd : Op::Bwd, t, Term::var(std::abs(letter)));
  return t;
}

} // namespace

RackElement eval_rack(const Term &t) {
  std::unordered_map<const void *, RackElement> memo;
  return eval_rec<RackElement>(
      t, memo, [](int v) { return RackElement{v, {}}; },
      [](const RackElement &a, const RackElement &b, Op op) {
        return rack_op(a, b, op);
      });
}

QuandleElement eval_quandle(const Term &t) {
  std::unordered_map<const void *, QuandleElement> memo;
  return eval_rec<QuandleElement>(
      t, memo, [](int v) { return QuandleElement{{v}}; },
      [](const QuandleElement &a, const QuandleElement &b, Op op) {
        return quandle_op(a, b, op);
      });
}

bool wp_rack(const Term &t, const Term &u) {
  return eval_rack(t) == eval_rack(u);
}

bool wp_quandle(const Term &t, const Term &u) {
  return eval_quandle(t) == eval_quandle(u);
}

Term rack_normal_term(const Term &t) { return comb(eval_rack(t)); }

Term quandle_normal_term(const Term &t) {
  return comb(split_conjugate(eval_quandle(t).word));
}

bool wp_spindle_one_var(const Term &t, const Term &u) {
  require_fwd_only(t);
  require_fwd_only(u);
  if (!t.is_one_variable() || !u.is_one_variable() ||
      t.min_var() != u.min_var())
    throw MultiVariable("the spindle word problem is only settled for one "
                        "variable: " +
                        to_infix(t) + " vs " + to_infix(u));
  return true;
}

} // namespace selfdist
