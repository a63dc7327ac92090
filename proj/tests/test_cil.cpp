#include <gtest/gtest.h>

#include "cil/cil.hpp"
#include "cil/syntax.hpp"
#include "support/generators.hpp"

using namespace cil;

namespace {

Signature mary_sig() {
  Signature sig;
  sig.declare("K", 2);
  sig.declare("L", 2);
  sig.declare("M", -1);
  return sig;
}

}  // namespace

TEST(Signature, Distinguished) {
  Signature sig;
  EXPECT_EQ(sig.sort_of("Eq_I"), 2);
  EXPECT_EQ(sig.sort_of("Eq_N"), 2);
  EXPECT_EQ(sig.sort_of("Truth"), 0);
  sig.declare("K", 2);
  sig.declare("K", 2);
  EXPECT_THROW(sig.declare("K", 1), SortError);
  EXPECT_THROW(sig.declare("Eq_I", 3), SortError);
  EXPECT_THROW(sig.declare("Z", -2), SortError);
}

TEST(Sort, MaryTerm) {
  auto sig = mary_sig();
  auto t = parse_cil_term("comb[0](link[{1,2}](comb[*,1](K, link[{1,2}](L))), M)", sig);
  EXPECT_EQ(t->sort, 0);
  EXPECT_EQ(sort_of(t, sig), 0);
}

TEST(Sort, Examples) {
  Signature sig;
  sig.declare("T", 2);
  sig.declare("U", 3);
  EXPECT_EQ(sort_of(per(Permutation({1, 0}), prim("T", sig)), sig), 2);
  EXPECT_EQ(sort_of(ex({false, false, true}, prim("U", sig)), sig), 2);
  EXPECT_EQ(sort_of(dum(DumSeq({1, 0, 2}), prim("T", sig)), sig), 5);
  EXPECT_EQ(sort_of(link(Partition::from_blocks(3, {{0, 2}, {1}}), prim("U", sig)), sig), 2);
}

TEST(Sort, Errors) {
  Signature sig;
  sig.declare("T", 2);
  sig.declare("c", -1);
  auto T = prim("T", sig);
  EXPECT_THROW(prim("Nope", sig), SortError);
  EXPECT_THROW(per(Permutation::identity(2), T), SortError);
  EXPECT_THROW(link(Partition::discrete(2), T), SortError);
  EXPECT_THROW(per(Permutation({1, 2, 0}), T), SortError);
  EXPECT_THROW(neg(prim("c", sig)), SortError);
  EXPECT_THROW(neg(pseudo("X")), SortError);
  EXPECT_THROW(conj(T, prim("Truth", sig)), SortError);
  EXPECT_THROW(comb(CombSeq({1, 0}), T, {prim("c", sig), prim("c", sig)}), SortError);
  EXPECT_THROW(comb(CombSeq({0}), T, {prim("c", sig)}), SortError);
  EXPECT_THROW(comb(CombSeq({3, kStar}), T, {T}), SortError);
  EXPECT_NO_THROW(comb(CombSeq({0, kStar}), T, {pseudo("X")}));
  EXPECT_THROW(comb(CombSeq({1, kStar}), T, {pseudo("X")}), SortError);
  // Sorts stored on nodes are checked against the signature.
  Signature other;
  other.declare("T", 3);
  EXPECT_THROW(sort_of(T, other), SortError);
}

TEST(ApplicationSequence, Examples) {
  Signature sig;
  sig.declare("K", 2);
  sig.declare("A", 1);
  sig.declare("P", 2);
  auto a = application_sequence(comb(CombSeq({kStar, 1}), prim("K", sig), {prim("A", sig)}));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_TRUE(a[0].star);
  EXPECT_FALSE(a[1].star);
  EXPECT_EQ(a[1].used, 1);
  EXPECT_EQ(a[1].residual, 0);

  auto b = application_sequence(comb(CombSeq({0, 0}), prim("P", sig), {pseudo("X"), pseudo("Y")}));
  EXPECT_EQ(b[0].arg, 0u);
  EXPECT_EQ(b[1].arg, 1u);
  EXPECT_EQ(b[0].used + b[0].residual + b[1].used + b[1].residual, 0);

  Signature f;
  f.declare("M", 5);
  f.declare("L", 2);
  f.declare("Q", -1);
  f.declare("P", 2);
  auto c = application_sequence(
      comb(CombSeq({kStar, 2, kStar, 0, 2}), prim("M", f), {prim("L", f), prim("Q", f), prim("P", f)}));
  EXPECT_TRUE(c[0].star && c[2].star);
  EXPECT_EQ(c[1].used, 2);
  EXPECT_EQ(c[1].residual, 0);
  EXPECT_EQ(c[3].used, 0);
  EXPECT_EQ(c[4].arg, 2u);
  EXPECT_EQ(c[4].used, 2);
  EXPECT_THROW(application_sequence(prim("M", f)), SortError);
}

TEST(ApplicationSequence, WireAccounting) {
  auto sig = gen::test_signature();
  gen::TermGen tg(sig);
  gen::Rng rng(7);
  int combs = 0;
  for (int i = 0; i < 400; ++i) {
    auto t = tg.any(rng, 3);
    if (kind(t) != Kind::Comb) continue;
    ++combs;
    int wires = 0;
    for (const auto& e : application_sequence(t)) wires += e.star ? 1 : e.used;
    EXPECT_EQ(wires, t->sort);
  }
  EXPECT_GT(combs, 20);
}

TEST(CilParse, RoundTrip) {
  auto sig = gen::test_signature();
  gen::TermGen tg(sig, {.max_sort = 3, .pseudo_vars = true});
  gen::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    auto t = tg.any(rng, 4);
    auto text = to_string(t);
    auto u = parse_cil_term(text, sig);
    EXPECT_TRUE(equal(t, u)) << text;
  }
}

TEST(CilParse, Errors) {
  auto sig = mary_sig();
  EXPECT_THROW(parse_cil_term("comb[](K)", sig), ParseError);
  EXPECT_THROW(parse_cil_term("Nope", sig), ParseError);
  EXPECT_THROW(parse_cil_term("per[1,1](K)", sig), ParseError);
  EXPECT_THROW(parse_cil_term("link[{1},{2}](K)", sig), SortError);
  EXPECT_THROW(parse_cil_term("not(M)", sig), SortError);
  EXPECT_THROW(parse_cil_term("K K", sig), ParseError);
}

TEST(CilParse, Program) {
  auto prog = parse_cil_program(
      "# Mary\nprim K, L : 2.\nprim M : -1.\nlet mary = comb[0](link[{1,2}](comb[*,1](K, link[{1,2}](L))), M).\n"
      "not(Truth)");
  EXPECT_EQ(prog.sig.sort_of("M"), -1);
  ASSERT_EQ(prog.terms.size(), 2u);
  EXPECT_EQ(prog.terms[0].first, "mary");
  EXPECT_EQ(prog.terms[1].first, "");
  EXPECT_EQ(to_string(prog.terms[1].second), "not(Truth)");
  EXPECT_THROW(parse_cil_program("prim K : 2. prim K : 1."), SortError);
}

TEST(Paths, ReplaceAndLookup) {
  auto sig = mary_sig();
  auto t = parse_cil_term("comb[0](link[{1,2}](comb[*,1](K, link[{1,2}](L))), M)", sig);
  EXPECT_EQ(to_string(subterm_at(t, {0, 0, 1})), "link[{1,2}](L)");
  auto u = replace_at(t, {0, 0, 1}, parse_cil_term("link[{1,2}](K)", sig));
  EXPECT_EQ(to_string(u), "comb[0](link[{1,2}](comb[*,1](K, link[{1,2}](K))), M)");
  EXPECT_EQ(size(t), 7u);
}
