#include "selfdist/braid.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "selfdist/error.hpp"

namespace selfdist {

FreeWord free_reduce(const FreeWord &w) {
  FreeWord out;
  out.reserve(w.size());
  for (int letter : w) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

FreeWord free_concat(const FreeWord &u, const FreeWord &v) {
  std::size_t k = 0;
  while (k < u.size() && k < v.size() && u[u.size() - 1 - k] == -v[k])
    ++k;
  FreeWord out(u.begin(), u.end() - static_cast<std::ptrdiff_t>(k));
  out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  return out;
}

FreeWord free_inverse(const FreeWord &w) {
  FreeWord out(w.rbegin(), w.rend());
  for (int &letter : out)
    letter = -letter;
  return out;
}

BraidWord shift(const BraidWord &w, int by) {
  BraidWord out = w;
  for (int &letter : out)
    letter += letter > 0 ? by : -by;
  return out;
}

BraidWord invert(const BraidWord &w) { return free_inverse(w); }

BraidWord concat(const BraidWord &a, const BraidWord &b) {
  BraidWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string braid_to_string(const BraidWord &w) {
  if (w.empty())
    return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += ' ';
    out += std::to_string(w[i]);
  }
  return out;
}

BraidWord parse_braid_word(std::string_view text) {
  BraidWord w;
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
    std::string token(text.substr(start, pos - start));
    if (token == "e")
      continue;
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != token.size() || value == 0)
      throw ParseError("invalid braid letter '" + token + "'", start);
    w.push_back(value);
  }
  return w;
}

std::string free_to_string(const FreeWord &w) {
  if (w.empty())
    return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += ' ';
    out += "x" + std::to_string(std::abs(w[i]));
    if (w[i] < 0)
      out += "^-1";
  }
  return out;
}

int max_index(const BraidWord &w) {
  int m = 0;
  for (int letter : w)
    m = std::max(m, std::abs(letter));
  return m;
}

std::vector<FreeWord> artin_images(const BraidWord &word, int count,
                                   std::size_t max_letters) {
  // The images form φ = ρ(w_n)∘…∘ρ(w_1). Building it as φ := φ∘ρ(s) over
  // the letters taken right to left only touches two images per letter.
  BraidWord w = free_reduce(word);
  count = std::max(count, max_index(w) + 1);
  std::vector<FreeWord> phi(static_cast<std::size_t>(count) + 1);
  for (int i = 1; i <= count; ++i)
    phi[static_cast<std::size_t>(i)] = {i};
  std::size_t total = static_cast<std::size_t>(count);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    auto i = static_cast<std::size_t>(std::abs(*it));
    FreeWord a = phi[i];
    FreeWord b = phi[i + 1];
    total -= a.size() + b.size();
    if (*it > 0) {
      // x_i ↦ x_i x_{i+1} x_i^{-1}, x_{i+1} ↦ x_i
      phi[i] = free_concat(free_concat(a, b), free_inverse(a));
      phi[i + 1] = std::move(a);
    } else {
      // x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}^{-1} x_i x_{i+1}
      phi[i + 1] = free_concat(free_concat(free_inverse(b), a), b);
      phi[i] = std::move(b);
    }
    total += phi[i].size() + phi[i + 1].size();
    if (total > max_letters)
      throw BudgetExceeded("Artin images exceed " +
                           std::to_string(max_letters) + " letters");
  }
  phi.erase(phi.begin());
  phi.resize(static_cast<std::size_t>(count));
  return phi;
}

FreeWord artin_act(const BraidWord &w, int generator) {
  if (generator < 1)
    throw InvalidArgument("generator index must be positive");
  return artin_images(w, generator)[static_cast<std::size_t>(generator - 1)];
}

BraidWord handle_reduce(const BraidWord &word, std::size_t max_steps) {
  BraidWord w = word;
  std::size_t steps = 0;
  std::size_t r = 1;
  while (r < w.size()) {
    // The handle ending at r closest to its right end contains no other
    // handle, hence may be reduced.
    int i = std::abs(w[r]);
    std::size_t l = r;
    bool found = false;
    while (l-- > 0) {
      int j = std::abs(w[l]);
      if (j < i)
        break;
      if (j == i) {
        found = w[l] == -w[r];
        break;
      }
    }
    if (!found) {
      ++r;
      continue;
    }
    if (++steps > max_steps)
      throw BudgetExceeded("handle reduction exceeded " +
                           std::to_string(max_steps) + " steps");
    int e = w[l] > 0 ? 1 : -1;
    BraidWord middle;
    for (std::size_t k = l + 1; k < r; ++k) {
      if (std::abs(w[k]) == i + 1) {
        int d = w[k] > 0 ? 1 : -1;
        middle.insert(middle.end(), {-e * (i + 1), d * i, e * (i + 1)});
      } else {
        middle.push_back(w[k]);
      }
    }
    auto first = w.begin() + static_cast<std::ptrdiff_t>(l);
    w.erase(first, w.begin() + static_cast<std::ptrdiff_t>(r) + 1);
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(l), middle.begin(),
             middle.end());
    // Handles ending before l are untouched.
    r = std::max<std::size_t>(l, 1);
  }
  return w;
}

namespace {

constexpr std::size_t kArtinFastPath = std::size_t{1} << 20;

// 0 for the trivial braid, +1 for σ1-positive, -1 otherwise.
int classify(const BraidWord &w) {
  try {
    auto images = artin_images(w, max_index(w) + 1, kArtinFastPath);
    bool trivial = true;
    for (std::size_t i = 0; i < images.size() && trivial; ++i)
      trivial = images[i] == FreeWord{static_cast<int>(i) + 1};
    if (trivial)
      return 0;
    const FreeWord &x1 = images.front();
    return !x1.empty() && x1.back() == -1 ? 1 : -1;
  } catch (const BudgetExceeded &) {
  }
  BraidWord r = handle_reduce(w);
  if (r.empty())
    return 0;
  for (int letter : r)
    if (letter == 1)
      return 1;
  return -1;
}

} // namespace

bool is_trivial_braid(const BraidWord &w) { return classify(w) == 0; }

bool braid_equiv(const BraidWord &a, const BraidWord &b) {
  return is_trivial_braid(concat(invert(a), b));
}

bool is_sigma1_positive_form(const BraidWord &w) {
  bool has_positive = false;
  for (int letter : w) {
    if (letter == -1)
      return false;
    has_positive |= letter == 1;
  }
  return has_positive;
}

bool larue_positive(const BraidWord &w) { return classify(w) == 1; }

BraidWord braid_shelf_op(const BraidWord &a, const BraidWord &b) {
  BraidWord out = a;
  BraidWord sb = shift(b);
  out.insert(out.end(), sb.begin(), sb.end());
  out.push_back(1);
  BraidWord sa = invert(shift(a));
  out.insert(out.end(), sa.begin(), sa.end());
  return out;
}

namespace {

BraidWord eval_rec(const Term &t,
                   std::unordered_map<const void *, BraidWord> &memo) {
  if (t.is_leaf())
    return {};
  if (auto it = memo.find(t.id()); it != memo.end())
    return it->second;
  BraidWord r = braid_shelf_op(eval_rec(t.left(), memo),
                               eval_rec(t.right(), memo));
  memo.emplace(t.id(), r);
  return r;
}

} // namespace

BraidWord eval_term(const Term &t) {
  require_fwd_only(t);
  require_one_variable(t);
  std::unordered_map<const void *, BraidWord> memo;
  return eval_rec(t, memo);
}

namespace {

void require_same_variable(const Term &t, const Term &u) {
  if (t.min_var() != u.min_var())
    throw MultiVariable("terms use different variables: " + to_infix(t) +
                        " vs " + to_infix(u));
}

} // namespace

bool wp_ld_semantic(const Term &t, const Term &u) {
  BraidWord a = eval_term(t), b = eval_term(u);
  require_same_variable(t, u);
  return braid_equiv(a, b);
}

const char *to_string(Ordering o) {
  switch (o) {
  case Ordering::Less:
    return "less";
  case Ordering::Equal:
    return "equal";
  case Ordering::Greater:
    return "greater";
  }
  return "?";
}

Ordering compare_braids(const BraidWord &a, const BraidWord &b) {
  switch (classify(concat(invert(a), b))) {
  case 0:
    return Ordering::Equal;
  case 1:
    return Ordering::Less;
  default:
    return Ordering::Greater;
  }
}

Ordering compare_ld(const Term &t, const Term &u) {
  BraidWord a = eval_term(t), b = eval_term(u);
  require_same_variable(t, u);
  return compare_braids(a, b);
}

LDGeneratorWord invert(const LDGeneratorWord &w) {
  LDGeneratorWord out(w.rbegin(), w.rend());
  for (auto &letter : out)
    letter.exponent = -letter.exponent;
  return out;
}

namespace {

LDGeneratorWord shift1(const LDGeneratorWord &w) {
  LDGeneratorWord out = w;
  for (auto &letter : out)
    letter.at = Address("1") + letter.at;
  return out;
}

} // namespace

LDGeneratorWord blueprint(const Term &t) {
  require_fwd_only(t);
  require_one_variable(t);
  if (t.is_leaf())
    return {};
  LDGeneratorWord left = blueprint(t.left());
  LDGeneratorWord out = left;
  LDGeneratorWord right = shift1(blueprint(t.right()));
  out.insert(out.end(), right.begin(), right.end());
  out.push_back({Address{}, 1});
  LDGeneratorWord back = invert(shift1(left));
  out.insert(out.end(), back.begin(), back.end());
  return out;
}

BraidWord blueprint_braid_projection(const LDGeneratorWord &w) {
  BraidWord out;
  for (auto &letter : w) {
    if (letter.at.contains_zero())
      continue;
    int index = static_cast<int>(letter.at.size()) + 1;
    out.push_back(letter.exponent > 0 ? index : -index);
  }
  return out;
}

} // namespace selfdist
