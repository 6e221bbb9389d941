#include "selfdist/finite_shelves.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>

#include "selfdist/error.hpp"

namespace selfdist {

ShelfTable::ShelfTable(int n)
    : n_(n), cells_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 1) {
  if (n < 1 || n > 65535)
    throw InvalidParams("table size must lie in 1..65535, got " +
                        std::to_string(n));
}

ShelfTable ShelfTable::from_rows(const std::vector<std::vector<int>> &rows) {
  int n = static_cast<int>(rows.size());
  ShelfTable s(n);
  for (int a = 1; a <= n; ++a) {
    const auto &r = rows[static_cast<std::size_t>(a - 1)];
    if (static_cast<int>(r.size()) != n)
      throw InvalidParams("row " + std::to_string(a) + " has " +
                          std::to_string(r.size()) + " entries, expected " +
                          std::to_string(n));
    for (int b = 1; b <= n; ++b) {
      int v = r[static_cast<std::size_t>(b - 1)];
      if (v < 1 || v > n)
        throw InvalidParams("entry (" + std::to_string(a) + "," +
                            std::to_string(b) + ") = " + std::to_string(v) +
                            " is outside 1.." + std::to_string(n));
      s.set(a, b, v);
    }
  }
  return s;
}

std::vector<int> ShelfTable::row(int a) const {
  std::vector<int> r(static_cast<std::size_t>(n_));
  for (int b = 1; b <= n_; ++b)
    r[static_cast<std::size_t>(b - 1)] = at(a, b);
  return r;
}

std::string to_string(Law law) {
  switch (law) {
  case Law::LD:
    return "ld";
  case Law::RD:
    return "rd";
  case Law::Idempotent:
    return "idempotent";
  case Law::LeftBijective:
    return "left-bij";
  case Law::RightBijective:
    return "right-bij";
  }
  return "?";
}

Law parse_law(std::string_view name) {
  if (name == "ld")
    return Law::LD;
  if (name == "rd")
    return Law::RD;
  if (name == "idem" || name == "idempotent")
    return Law::Idempotent;
  if (name == "left-bij")
    return Law::LeftBijective;
  if (name == "right-bij")
    return Law::RightBijective;
  throw InvalidParams("unknown law '" + std::string(name) + "'");
}

namespace {

LawReport fail(Law law, std::vector<int> tuple) {
  return {to_string(law), false, std::move(tuple)};
}

std::optional<std::vector<int>> find_collision(const ShelfTable &s,
                                               bool left) {
  int n = s.size();
  std::vector<int> seen(static_cast<std::size_t>(n) + 1);
  for (int a = 1; a <= n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 1; b <= n; ++b) {
      int v = left ? s.at(a, b) : s.at(b, a);
      int &first = seen[static_cast<std::size_t>(v)];
      if (first != 0)
        return std::vector<int>{a, first, b};
      first = b;
    }
  }
  return std::nullopt;
}

} // namespace

LawReport check_law(const ShelfTable &s, Law law) {
  int n = s.size();
  switch (law) {
  case Law::LD:
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y)
        for (int z = 1; z <= n; ++z)
          if (s.at(x, s.at(y, z)) != s.at(s.at(x, y), s.at(x, z)))
            return fail(law, {x, y, z});
    break;
  case Law::RD:
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y)
        for (int z = 1; z <= n; ++z)
          if (s.at(s.at(x, y), z) != s.at(s.at(x, z), s.at(y, z)))
            return fail(law, {x, y, z});
    break;
  case Law::Idempotent:
    for (int x = 1; x <= n; ++x)
      if (s.at(x, x) != x)
        return fail(law, {x});
    break;
  case Law::LeftBijective:
  case Law::RightBijective:
    if (auto c = find_collision(s, law == Law::LeftBijective))
      return fail(law, *c);
    break;
  }
  return {to_string(law), true, std::nullopt};
}

ShelfTable laver_like_table(int n) {
  ShelfTable s(n);
  for (int b = 1; b <= n; ++b)
    s.set(n, b, b);
  for (int a = n - 1; a >= 1; --a) {
    s.set(a, 1, a + 1);
    for (int b = 1; b < n; ++b) {
      int c = s.at(a, b);
      if (c <= a)
        throw InternalError("Laver recurrence reached row " +
                            std::to_string(c) + " from row " +
                            std::to_string(a));
      s.set(a, b + 1, s.at(c, a + 1));
    }
  }
  // x∘(y∘1) = (x∘y)∘(x∘1) wherever y∘1 = y + 1.
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y < n; ++y)
      if (s.at(x, y + 1) != s.at(s.at(x, y), s.at(x, 1)))
        throw InternalError("Laver recurrence violated at (" +
                            std::to_string(x) + "," + std::to_string(y) + ")");
  return s;
}

ShelfTable laver_table(int k, int cap) {
  if (k < 0)
    throw InvalidParams("laver_table: k must be non-negative");
  if (k > cap)
    throw CapExceeded("laver_table: k = " + std::to_string(k) +
                      " is above the cap " + std::to_string(cap));
  int n = 1 << k;
  ShelfTable s = laver_like_table(n);
  for (int x = 1; x <= n; ++x) {
    if (s.at(x, s.at(n, 1)) != s.at(s.at(x, n), s.at(x, 1)))
      throw InternalError("A_" + std::to_string(k) +
                          " violates the defining law at y = 2^k");
    for (int b = 1; b <= n; ++b)
      if (x < n && s.at(x, b) <= x)
        throw InternalError("A_" + std::to_string(k) + " row " +
                            std::to_string(x) + " is not increasing");
  }
  return s;
}

namespace {

using Perm = std::vector<int>;

// Group on {0..order-1} given by its multiplication and inverse tables.
struct FiniteGroup {
  int order = 0;
  std::vector<int> mul;
  std::vector<int> inv;

  int m(int a, int b) const {
    return mul[static_cast<std::size_t>(a * order + b)];
  }
  int i(int a) const { return inv[static_cast<std::size_t>(a)]; }
};

FiniteGroup make_group(const ExampleParams &p) {
  FiniteGroup g;
  if (p.group == "z") {
    if (p.n < 1 || p.n > 120)
      throw InvalidParams("Z/n needs 1 <= n <= 120");
    g.order = p.n;
    g.mul.resize(static_cast<std::size_t>(p.n * p.n));
    g.inv.resize(static_cast<std::size_t>(p.n));
    for (int a = 0; a < p.n; ++a) {
      g.inv[static_cast<std::size_t>(a)] = (p.n - a) % p.n;
      for (int b = 0; b < p.n; ++b)
        g.mul[static_cast<std::size_t>(a * p.n + b)] = (a + b) % p.n;
    }
    return g;
  }
  if (p.group != "sym")
    throw InvalidParams("unknown group '" + p.group + "'");
  if (p.n < 1 || p.n > 5)
    throw InvalidParams("Sym(d) needs 1 <= d <= 5");
  std::vector<Perm> elems;
  Perm q(static_cast<std::size_t>(p.n));
  std::iota(q.begin(), q.end(), 0);
  do
    elems.push_back(q);
  while (std::next_permutation(q.begin(), q.end()));
  std::map<Perm, int> index;
  for (std::size_t k = 0; k < elems.size(); ++k)
    index[elems[k]] = static_cast<int>(k);
  g.order = static_cast<int>(elems.size());
  g.mul.resize(elems.size() * elems.size());
  g.inv.resize(elems.size());
  for (std::size_t a = 0; a < elems.size(); ++a) {
    Perm r(q.size());
    for (std::size_t k = 0; k < q.size(); ++k)
      r[static_cast<std::size_t>(elems[a][k])] = static_cast<int>(k);
    g.inv[a] = index.at(r);
    for (std::size_t b = 0; b < elems.size(); ++b) {
      // (ab)(k) = a(b(k))
      for (std::size_t k = 0; k < q.size(); ++k)
        r[k] = elems[a][static_cast<std::size_t>(elems[b][k])];
      g.mul[a * elems.size() + b] = index.at(r);
    }
  }
  return g;
}

} // namespace

ShelfTable make_example(std::string_view kind, const ExampleParams &p) {
  if (kind == "trivial") {
    int n = static_cast<int>(p.f.size());
    if (n == 0)
      throw InvalidParams("trivial shelf needs a non-empty map f");
    ShelfTable s(n);
    for (int a = 1; a <= n; ++a) {
      int v = p.f[static_cast<std::size_t>(a - 1)];
      if (v < 1 || v > n)
        throw InvalidParams("trivial shelf: f(" + std::to_string(a) +
                            ") is outside 1.." + std::to_string(n));
      for (int b = 1; b <= n; ++b)
        s.set(a, b, v);
    }
    return s;
  }
  if (kind == "cyclic") {
    if (p.n < 1)
      throw InvalidParams("cyclic rack needs n >= 1");
    ShelfTable s(p.n);
    for (int a = 1; a <= p.n; ++a)
      for (int b = 1; b <= p.n; ++b)
        s.set(a, b, a % p.n + 1);
    return s;
  }
  if (kind == "boolean") {
    if (p.n < 0 || p.n > 12)
      throw InvalidParams("boolean shelf needs 0 <= atoms <= 12");
    int n = 1 << p.n, full = n - 1;
    ShelfTable s(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        s.set(a + 1, b + 1, (a | (~b & full)) + 1);
    return s;
  }
  if (kind == "alexander") {
    if (p.n < 1 || p.n > 65535)
      throw InvalidParams("alexander spindle needs modulus 1..65535");
    long m = p.n, t = ((p.t % m) + m) % m;
    if (p.rack && std::gcd(t, m) != 1)
      throw InvalidParams("alexander rack needs t invertible mod " +
                          std::to_string(m));
    ShelfTable s(p.n);
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b)
        s.set(static_cast<int>(a + 1), static_cast<int>(b + 1),
              static_cast<int>((t * a + (1 - t + m) * b) % m + 1));
    return s;
  }
  if (kind == "conj" || kind == "core") {
    FiniteGroup g = make_group(p);
    ShelfTable s(g.order);
    for (int a = 0; a < g.order; ++a)
      for (int b = 0; b < g.order; ++b) {
        int v;
        if (kind == "core")
          v = g.m(g.m(b, g.i(a)), b);
        else if (p.side == Side::Right)
          v = g.m(g.m(g.i(b), a), b);
        else
          v = g.m(g.m(a, b), g.i(a));
        s.set(a + 1, b + 1, v + 1);
      }
    return s;
  }
  throw InvalidParams("unknown example kind '" + std::string(kind) + "'");
}

int eval_in_table(const ShelfTable &s, const Term &t,
                  const std::vector<int> &values) {
  if (t.is_leaf()) {
    auto v = static_cast<std::size_t>(t.var());
    if (v > values.size())
      throw UnboundVariable("variable x" + std::to_string(v) +
                            " has no value");
    return values[v - 1];
  }
  if (t.op() != Op::Fwd)
    throw BwdNotSupported("tables carry a single operation");
  return s.at(eval_in_table(s, t.left(), values),
              eval_in_table(s, t.right(), values));
}

LawReport check_equation(const ShelfTable &s, const Term &lhs, const Term &rhs,
                         const std::optional<std::map<int, int>> &assignment) {
  require_fwd_only(lhs);
  require_fwd_only(rhs);
  std::string name = to_infix(lhs) + " = " + to_infix(rhs);
  int vars = std::max(lhs.max_var(), rhs.max_var());
  int n = s.size();
  if (assignment) {
    std::vector<int> values(static_cast<std::size_t>(vars));
    for (int v = 1; v <= vars; ++v) {
      auto it = assignment->find(v);
      if (it == assignment->end())
        throw UnboundVariable("variable x" + std::to_string(v) +
                              " is not assigned");
      if (it->second < 1 || it->second > n)
        throw InvalidParams("value of x" + std::to_string(v) +
                            " is outside 1.." + std::to_string(n));
      values[static_cast<std::size_t>(v - 1)] = it->second;
    }
    if (eval_in_table(s, lhs, values) != eval_in_table(s, rhs, values))
      return {name, false, values};
    return {name, true, std::nullopt};
  }
  std::vector<int> values(static_cast<std::size_t>(vars), 1);
  while (true) {
    if (eval_in_table(s, lhs, values) != eval_in_table(s, rhs, values))
      return {name, false, values};
    int k = vars - 1;
    while (k >= 0 && values[static_cast<std::size_t>(k)] == n)
      values[static_cast<std::size_t>(k--)] = 1;
    if (k < 0)
      break;
    ++values[static_cast<std::size_t>(k)];
  }
  return {name, true, std::nullopt};
}

std::vector<std::vector<int>> division_digraph(const ShelfTable &s) {
  int n = s.size();
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n) + 1);
  for (int a = 1; a <= n; ++a) {
    auto &out = succ[static_cast<std::size_t>(a)];
    out = s.row(a);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return succ;
}

bool is_acyclic(const ShelfTable &s) {
  auto succ = division_digraph(s);
  std::size_t n = static_cast<std::size_t>(s.size());
  std::vector<int> indeg(n + 1, 0);
  for (std::size_t a = 1; a <= n; ++a)
    for (int b : succ[a])
      ++indeg[static_cast<std::size_t>(b)];
  std::vector<std::size_t> ready;
  for (std::size_t a = 1; a <= n; ++a)
    if (indeg[a] == 0)
      ready.push_back(a);
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t a = ready.back();
    ready.pop_back();
    ++removed;
    for (int b : succ[a])
      if (--indeg[static_cast<std::size_t>(b)] == 0)
        ready.push_back(static_cast<std::size_t>(b));
  }
  return removed == n;
}

LawReport check_comparison(const ShelfTable &s, int g) {
  int n = s.size();
  if (g < 1 || g > n)
    throw InvalidParams("generator is outside the table");
  std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> members{g};
  in[static_cast<std::size_t>(g)] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = 0; j < members.size(); ++j) {
        int v = s.at(members[i], members[j]);
        if (!in[static_cast<std::size_t>(v)]) {
          in[static_cast<std::size_t>(v)] = 1;
          members.push_back(v);
          grew = true;
        }
      }
  }
  if (static_cast<int>(members.size()) != n)
    throw NotMonogenerated("element " + std::to_string(g) + " generates " +
                           std::to_string(members.size()) + " of " +
                           std::to_string(n) + " elements");
  auto succ = division_digraph(s);
  // reach[a][b]: b is reached from a by one or more division steps.
  std::vector<std::vector<char>> reach(static_cast<std::size_t>(n) + 1);
  for (int a = 1; a <= n; ++a) {
    auto &r = reach[static_cast<std::size_t>(a)];
    r.assign(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> stack = succ[static_cast<std::size_t>(a)];
    for (int b : stack)
      r[static_cast<std::size_t>(b)] = 1;
    while (!stack.empty()) {
      int b = stack.back();
      stack.pop_back();
      for (int c : succ[static_cast<std::size_t>(b)])
        if (!r[static_cast<std::size_t>(c)]) {
          r[static_cast<std::size_t>(c)] = 1;
          stack.push_back(c);
        }
    }
  }
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (!reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] &&
          !reach[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])
        return {"comparison", false, std::vector<int>{a, b}};
  return {"comparison", true, std::nullopt};
}

ShelfTable counterexample_spindle() {
  return ShelfTable::from_rows(
      {{1, 2, 3, 4}, {1, 2, 1, 2}, {3, 4, 3, 4}, {1, 2, 3, 4}});
}

ShelfTable read_table(std::istream &in) {
  int n = 0;
  if (!(in >> n) || n < 1)
    throw InvalidParams("table file must start with a positive size");
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (auto &r : rows) {
    r.resize(static_cast<std::size_t>(n));
    for (auto &v : r)
      if (!(in >> v))
        throw InvalidParams("table file ends before " + std::to_string(n) +
                            "x" + std::to_string(n) + " entries");
  }
  int extra;
  if (in >> extra)
    throw InvalidParams("table file has trailing entries");
  return ShelfTable::from_rows(rows);
}

void write_table(std::ostream &out, const ShelfTable &s) {
  out << s.size() << '\n';
  for (int a = 1; a <= s.size(); ++a) {
    for (int b = 1; b <= s.size(); ++b)
      out << (b > 1 ? " " : "") << s.at(a, b);
    out << '\n';
  }
}

} // namespace selfdist
