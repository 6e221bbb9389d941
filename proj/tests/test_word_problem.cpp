#include <gtest/gtest.h>

#include <random>

#include "selfdist/braid.hpp"
#include "selfdist/error.hpp"
#include "selfdist/ld_word_problem.hpp"
#include "support.hpp"

using namespace selfdist;
using selfdist::testing::random_term;
using selfdist::testing::shapes_up_to;
using selfdist::testing::T;

namespace {

Address A(const char *text) { return Address::parse(text); }

std::vector<std::string> spelled(const std::vector<Descent> &ds) {
  std::vector<std::string> out;
  for (auto &d : ds)
    out.push_back(to_string(d));
  return out;
}

// Descents straight from the definition: every chain of leaves, each
// dominating the next, by brute force over all sequences.
std::size_t brute_descent_count(const Term &t) {
  auto ls = leaves(t);
  std::size_t count = 0;
  std::vector<std::vector<std::size_t>> chains;
  for (std::size_t i = 0; i < ls.size(); ++i)
    chains.push_back({i});
  while (!chains.empty()) {
    count += chains.size();
    std::vector<std::vector<std::size_t>> next;
    for (auto &c : chains)
      for (std::size_t j = 0; j < ls.size(); ++j)
        if (dominates(ls[c.back()], ls[j])) {
          next.push_back(c);
          next.back().push_back(j);
        }
    chains = std::move(next);
  }
  return count;
}

Term random_expansion(std::mt19937 &rng, Term t, int steps) {
  for (int k = 0; k < steps; ++k) {
    auto points = expansion_points(t);
    if (points.empty())
      break;
    t = apply_ld(t, points[rng() % points.size()], Direction::Expand);
  }
  return t;
}

} // namespace

TEST(Disc, Examples) {
  Term t = T("(x1*x2)*(x1*(x3*x4))");
  Term u = T("x1*((x2*x3)*(x2*x4))");
  EXPECT_EQ(disc(t, u), (Disc{2, 2}));
  EXPECT_EQ(disc(u, t), (Disc{2, 1}));
  EXPECT_FALSE(disc(t, t));
  EXPECT_FALSE(disc(T("x1*x2"), T("x1*x3")));
  EXPECT_FALSE(disc(T("x"), T("x*x")));
}

TEST(Sol, Examples) {
  EXPECT_EQ(sol(A("100")), (std::vector<Address>{A("e"), A("0")}));
  EXPECT_EQ(sol(A("110")), (std::vector<Address>{A("1")}));
  EXPECT_EQ(sol(A("10")), (std::vector<Address>{A("e")}));
  EXPECT_EQ(sol(A("0101001")), (std::vector<Address>{A("010"), A("0100")}));
  EXPECT_THROW(sol(A("111")), NoFactor10);
  EXPECT_THROW(sol(A("000")), NoFactor10);
}

TEST(Polish, WorkedExampleTrace) {
  Term t = T("(x1*x2)*(x1*(x3*x4))");
  Term u = T("x1*((x2*x3)*(x2*x4))");
  PolishOutcome out = wp_polish(t, u, 100000, true);
  EXPECT_EQ(out.verdict, PolishVerdict::Equivalent);
  ASSERT_EQ(out.steps, 4u);
  ASSERT_EQ(out.trace.size(), 4u);
  std::vector<Disc> discs{{2, 2}, {5, 1}, {6, 1}, {9, 2}};
  std::vector<const char *> at{"100", "110", "10", "110"};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(out.trace[i].disc, discs[i]) << i;
    EXPECT_EQ(out.trace[i].at, A(at[i])) << i;
  }
  EXPECT_EQ(out.trace[0].expansion, (std::vector<Address>{A("e"), A("0")}));
  EXPECT_EQ(out.trace[0].left_before, "x1 x2 || . x1 x3 x4 . . .");
  EXPECT_EQ(out.trace[0].right_before, "x1 x2 || x3 . x2 x4 . . .");
  EXPECT_EQ(out.trace[3].left_before,
            "x1 x2 . x1 x3 . . x1 x2 || . x1 x4 . . .");
  EXPECT_EQ(out.left, out.right);
  EXPECT_EQ(to_polish_string(out.left),
            "x1 x2 . x1 x3 . . x1 x2 . x1 x4 . . .");
}

TEST(Polish, NegativeCases) {
  EXPECT_EQ(wp_polish(T("x"), T("x*x")).verdict, PolishVerdict::NotEquivalent);
  EXPECT_EQ(wp_polish(T("x1*x1"), T("x1*x2")).verdict,
            PolishVerdict::NotEquivalent);
  EXPECT_EQ(to_string(PolishVerdict::CapExceeded), std::string("cap exceeded"));
}

TEST(Polish, CapExceeded) {
  Term t = T("(x1*x2)*(x1*(x3*x4))");
  Term u = T("x1*((x2*x3)*(x2*x4))");
  auto out = wp_polish(t, u, 2);
  EXPECT_EQ(out.verdict, PolishVerdict::CapExceeded);
  EXPECT_EQ(out.steps, 2u);
}

// Replaying the recorded expansions reproduces the final terms, and every
// step strictly lengthens the common prefix.
TEST(Polish, TraceReplayAndProgress) {
  std::mt19937 rng(37);
  int equivalent = 0;
  for (int k = 0; k < 300; ++k) {
    Term t = random_term(rng, 2 + k % 5, 1 + k % 3);
    Term u = k % 2 ? random_expansion(rng, t, 1 + k % 4)
                   : random_term(rng, 2 + k % 5, 1 + k % 3);
    auto out = wp_polish(t, u, 100000, true);
    ASSERT_NE(out.verdict, PolishVerdict::CapExceeded);
    Term l = t, r = u;
    std::size_t last_prefix = 0;
    bool first = true;
    for (auto &step : out.trace) {
      EXPECT_TRUE(first || step.disc.p > last_prefix);
      first = false;
      last_prefix = step.disc.p;
      Term &side = step.disc.side == 1 ? l : r;
      side = expand_seq(side, step.expansion);
    }
    EXPECT_EQ(l, out.left);
    EXPECT_EQ(r, out.right);
    if (out.verdict == PolishVerdict::Equivalent) {
      EXPECT_EQ(l, r);
      ++equivalent;
    }
  }
  EXPECT_GT(equivalent, 100);
}

TEST(Syntactic, Examples) {
  EXPECT_TRUE(wp_ld_syntactic(T("(x*x)*(x*(x*x))"), T("x*((x*x)*(x*x))")));
  EXPECT_FALSE(wp_ld_syntactic(T("x1"), T("x2")));
  EXPECT_FALSE(wp_ld_syntactic(T("x*x"), T("x*(x*x)")));
  EXPECT_TRUE(wp_ld_syntactic(T("(x1*x2)*(x1*(x3*x4))"),
                              T("x1*((x2*x3)*(x2*x4))")));
}

// The exhaustive enumeration on its own, without the Polish-built candidate.
TEST(Syntactic, PureDovetailAgreesOnSmallPairs) {
  SyntacticOptions options;
  options.guide_steps = 0;
  auto all = shapes_up_to(4);
  for (auto &t : all)
    for (auto &u : all)
      EXPECT_EQ(wp_ld_syntactic(t, u, options), wp_ld_semantic(t, u))
          << to_infix(t) << " vs " << to_infix(u);
}

TEST(Syntactic, PureDovetailMultiVariable) {
  SyntacticOptions options;
  options.guide_steps = 0;
  EXPECT_FALSE(wp_ld_syntactic(T("x1*x1"), T("x1*x2"), options));
  EXPECT_TRUE(wp_ld_syntactic(T("x1*(x2*x3)"), T("(x1*x2)*(x1*x3)"), options));
}

TEST(Syntactic, MultiVariableAgreesWithPolish) {
  std::mt19937 rng(41);
  int equivalent = 0;
  for (int k = 0; k < 500; ++k) {
    Term t = random_term(rng, 1 + k % 6, 2 + k % 3);
    Term u = k % 2 ? random_expansion(rng, t, 1 + k % 3)
                   : random_term(rng, 1 + k % 6, 2 + k % 3);
    auto polish = wp_polish(t, u);
    if (polish.verdict == PolishVerdict::CapExceeded)
      continue;
    bool syntactic = wp_ld_syntactic(t, u);
    EXPECT_EQ(syntactic, polish.verdict == PolishVerdict::Equivalent)
        << to_infix(t) << " vs " << to_infix(u);
    equivalent += syntactic;
  }
  EXPECT_GT(equivalent, 200);
}

TEST(Descents, Dominance) {
  // x^[3]: leaves 0, 10, 11.
  EXPECT_TRUE(dominates(A("10"), A("0")));
  EXPECT_FALSE(dominates(A("0"), A("10")));
  EXPECT_FALSE(dominates(A("11"), A("0")));
  EXPECT_FALSE(dominates(A("11"), A("10")));
}

TEST(Descents, Examples) {
  auto d3 = spelled(descents(right_power(3)));
  EXPECT_EQ(d3, (std::vector<std::string>{"(0)", "(10)", "(10,0)", "(11)"}));
  auto dd3 = spelled(descents(derive(right_power(3))));
  EXPECT_EQ(dd3, (std::vector<std::string>{"(00)", "(01)", "(10)", "(10,00)",
                                           "(10,01)", "(11)"}));
  EXPECT_EQ(spelled(descents(T("x"))), (std::vector<std::string>{"(e)"}));
}

TEST(Descents, CountMatchesDerivedLeaves) {
  for (auto &t : shapes_up_to(7)) {
    auto ds = descents(t);
    EXPECT_EQ(ds.size(), derive(t).size()) << to_infix(t);
    if (t.size() <= 5)
      EXPECT_EQ(ds.size(), brute_descent_count(t)) << to_infix(t);
  }
}

TEST(Descents, SortedAndChained) {
  for (auto &t : shapes_up_to(6)) {
    auto ds = descents(t);
    for (std::size_t i = 0; i + 1 < ds.size(); ++i)
      EXPECT_LT(ds[i], ds[i + 1]);
    for (auto &d : ds)
      for (std::size_t i = 0; i + 1 < d.size(); ++i)
        EXPECT_TRUE(dominates(d[i], d[i + 1]));
  }
}

TEST(Abridged, RoundTrip) {
  EXPECT_EQ(to_abridged(T("(x*x)*x")), "21∘");
  EXPECT_EQ(to_abridged(right_power(4)), "4");
  EXPECT_EQ(to_abridged(right_power(12)), "[12]");
  EXPECT_EQ(parse_abridged("21∘1∘"), T("((x*x)*x)*x"));
  EXPECT_EQ(parse_abridged("21o2o"), parse_abridged("21∘2∘"));
  for (auto &t : shapes_up_to(7))
    EXPECT_EQ(parse_abridged(to_abridged(t)), t);
  EXPECT_THROW(parse_abridged("2∘"), ParseError);
}

TEST(NormalForm, Examples) {
  EXPECT_EQ(normal_form(T("(x*x)*(x*(x*x))")), right_power(4));
  EXPECT_EQ(normal_form(T("x*((x*x)*(x*x))")), right_power(4));
  EXPECT_EQ(normal_form(T("x")), T("x"));
  EXPECT_TRUE(wp_ld_normalform(T("(x*x)*(x*(x*x))"), T("x*((x*x)*(x*x))")));
  EXPECT_FALSE(wp_ld_normalform(T("x"), T("x*x")));
}

TEST(NormalForm, EquivalentAndCanonical) {
  for (auto &t : shapes_up_to(5)) {
    auto nf = normal_form_ex(t);
    EXPECT_TRUE(wp_ld_semantic(nf.term, t)) << to_infix(t);
    // A normal form is its own normal form.
    EXPECT_EQ(normal_form(nf.term), nf.term) << to_infix(t);
  }
}

TEST(NormalForm, InvariantUnderExpansion) {
  std::mt19937 rng(43);
  for (int k = 0; k < 200; ++k) {
    Term t = random_term(rng, 2 + k % 4, 1);
    Term u = random_expansion(rng, t, 1 + k % 3);
    EXPECT_EQ(normal_form(t), normal_form(u)) << to_infix(t);
  }
}

TEST(EnumerateNormal, ThreeStrands) {
  auto all = enumerate_normal(3, 3);
  std::vector<std::vector<std::string>> by_degree(4);
  for (auto &nt : all)
    by_degree[static_cast<std::size_t>(nt.degree)].push_back(
        to_abridged(nt.term));
  EXPECT_EQ(by_degree[1], (std::vector<std::string>{"21∘"}));
  EXPECT_EQ(by_degree[2], (std::vector<std::string>{"21∘1∘", "21∘2∘"}));
  EXPECT_EQ(by_degree[3],
            (std::vector<std::string>{"21∘1∘1∘", "21∘1∘2∘", "21∘1∘21∘∘",
                                      "21∘2∘1∘", "21∘2∘2∘", "21∘2∘21∘∘"}));
}

TEST(EnumerateNormal, PairwiseInequivalent) {
  for (int n = 2; n <= 3; ++n) {
    auto all = enumerate_normal(n, 3);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        EXPECT_FALSE(wp_ld_semantic(all[i].term, all[j].term))
            << to_abridged(all[i].term) << " " << to_abridged(all[j].term);
  }
}

TEST(EnumerateNormal, NormalFormsAreFixed) {
  for (auto &nt : enumerate_normal(3, 3)) {
    auto nf = normal_form_ex(nt.term);
    EXPECT_EQ(nf.term, nt.term) << to_abridged(nt.term);
    EXPECT_EQ(nf.degree, nt.degree) << to_abridged(nt.term);
  }
}

TEST(Solvers, AgreeOnAllSmallPairs) {
  auto all = shapes_up_to(5);
  std::vector<Term> nf;
  for (auto &t : all)
    nf.push_back(normal_form(t));
  int equivalent = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      const Term &t = all[i];
      const Term &u = all[j];
      bool semantic = wp_ld_semantic(t, u);
      auto polish = wp_polish(t, u);
      ASSERT_NE(polish.verdict, PolishVerdict::CapExceeded);
      EXPECT_EQ(polish.verdict == PolishVerdict::Equivalent, semantic);
      EXPECT_EQ(wp_ld_syntactic(t, u), semantic);
      EXPECT_EQ(nf[i] == nf[j], semantic);
      equivalent += semantic;
    }
  }
  EXPECT_GT(equivalent, 23);
}
