#pragma once

#include <string>

#include "selfdist/braid.hpp"
#include "selfdist/term.hpp"

namespace selfdist {

/// An element (x, a) of the half-conjugacy rack on the free group: base
/// generator x and a reduced tail a.
struct RackElement {
  int base = 1;
  FreeWord tail;

  friend bool operator==(const RackElement &, const RackElement &) = default;
};

/// A conjugate c^{-1} x c of a generator, kept as a reduced word.
struct QuandleElement {
  FreeWord word;

  friend bool operator==(const QuandleElement &, const QuandleElement &) =
      default;
};

std::string to_string(const RackElement &e);
std::string to_string(const QuandleElement &e);

/// Fwd: (x, a) * (y, b) = (x, a b^{-1} y b).
/// Bwd: (z, c) / (y, b) = (z, c b^{-1} y^{-1} b).
RackElement rack_op(const RackElement &a, const RackElement &b, Op op);
/// Fwd: b^{-1} a b. Bwd: b a b^{-1}.
QuandleElement quandle_op(const QuandleElement &a, const QuandleElement &b,
                          Op op);

RackElement eval_rack(const Term &t);
QuandleElement eval_quandle(const Term &t);

bool wp_rack(const Term &t, const Term &u);
bool wp_quandle(const Term &t, const Term &u);

/// Left comb (..(x op1 x1) ..) opn xn read off the reduced tail: a letter
/// x_i^{+1} becomes `* x_i`, x_i^{-1} becomes `/ x_i`.
Term rack_normal_term(const Term &t);
/// Same shape from the quandle evaluation c^{-1} x c; c never starts with
/// x^{±1}.
Term quandle_normal_term(const Term &t);

/// One-variable terms are all equal in a left spindle. Throws MultiVariable
/// when more than one variable occurs.
bool wp_spindle_one_var(const Term &t, const Term &u);

} // namespace selfdist
