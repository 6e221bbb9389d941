#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "selfdist/ld_calculus.hpp"
#include "selfdist/term.hpp"

namespace selfdist {

/// +i is σ_i, -i is σ_i^{-1}.
using BraidWord = std::vector<int>;
/// +i is x_i, -i is x_i^{-1}.
using FreeWord = std::vector<int>;

FreeWord free_reduce(const FreeWord &w);
/// u·v, freely reduced (both inputs assumed reduced).
FreeWord free_concat(const FreeWord &u, const FreeWord &v);
FreeWord free_inverse(const FreeWord &w);

BraidWord shift(const BraidWord &w, int by = 1);
BraidWord invert(const BraidWord &w);
BraidWord concat(const BraidWord &a, const BraidWord &b);

/// "1 3 -2"; the empty word is "e".
std::string braid_to_string(const BraidWord &w);
BraidWord parse_braid_word(std::string_view text);
/// "x1 x2 x1^-1"; the empty word is "e".
std::string free_to_string(const FreeWord &w);

/// Image lengths can grow exponentially with the braid length.
inline constexpr std::size_t kMaxImageLetters = std::size_t{1} << 26;

/// Artin images of x_1..x_count under w. Letters are substituted left to
/// right: x ↦ ρ(w_n)(…ρ(w_1)(x)). Throws BudgetExceeded when the images
/// together exceed `max_letters`.
std::vector<FreeWord> artin_images(const BraidWord &w, int count,
                                   std::size_t max_letters = kMaxImageLetters);
FreeWord artin_act(const BraidWord &w, int generator);
int max_index(const BraidWord &w);

/// Dehornoy's handle reduction. The result is empty for the trivial braid;
/// otherwise its least index occurs with one sign only.
BraidWord handle_reduce(const BraidWord &w, std::size_t max_steps = 10000000);

/// The three tests below use the Artin action and switch to handle reduction
/// when the images get long.
bool is_trivial_braid(const BraidWord &w);
bool braid_equiv(const BraidWord &a, const BraidWord &b);
bool is_sigma1_positive_form(const BraidWord &w);
/// Reduced image of x1 ends with x1^{-1}.
bool larue_positive(const BraidWord &w);

/// a ◁ b = a sh(b) σ1 sh(a)^{-1}, unreduced.
BraidWord braid_shelf_op(const BraidWord &a, const BraidWord &b);

/// Braid of a one-variable term: EVAL(x) = ε, EVAL(T0*T1) = EVAL(T0) ◁ EVAL(T1).
BraidWord eval_term(const Term &t);
bool wp_ld_semantic(const Term &t, const Term &u);

enum class Ordering { Less, Equal, Greater };
const char *to_string(Ordering o);
/// Less: t is an iterated left divisor of u up to LD-equivalence.
Ordering compare_ld(const Term &t, const Term &u);
/// Same test given the two braids directly.
Ordering compare_braids(const BraidWord &a, const BraidWord &b);

/// χ(x) = 1, χ(T0*T1) = χ(T0) sh1(χ(T1)) LD_ε sh1(χ(T0))^{-1}.
LDGeneratorWord blueprint(const Term &t);
LDGeneratorWord invert(const LDGeneratorWord &w);
/// Drops letters whose address contains 0 and sends LD_{1^i} to σ_{i+1}.
BraidWord blueprint_braid_projection(const LDGeneratorWord &w);

} // namespace selfdist
