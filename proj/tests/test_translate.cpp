#include <gtest/gtest.h>

#include "cil/syntax.hpp"
#include "cil/translate.hpp"
#include "support/generators.hpp"

using namespace cil;

namespace {

Signature sig_of(const std::string& decls) { return parse_cil_program(decls).sig; }

TermPtr C(const std::string& s, const Signature& sig) { return parse_cil_term(s, sig); }
bl::TermPtr B(const std::string& s, const Signature& sig) { return parse_bl_term(s, sig.constants()); }

}  // namespace

TEST(JTranslate, Examples) {
  auto sig = sig_of("prim K, L : 2. prim M : -1. prim P : 2. prim Q : 1. prim U : 1.");
  auto mary = C("comb[0](link[{1,2}](comb[*,1](K, link[{1,2}](L))), M)", sig);
  EXPECT_TRUE(bl::alpha_eq(j_translate(mary, sig), B("[K(M, [L(M, M)])]", sig)))
      << bl::to_string(j_translate(mary, sig));
  EXPECT_TRUE(bl::alpha_eq(j_translate(C("U", sig), sig), B("[U(x1)]_{x1}", sig)));
  auto px = C("comb[0,0](P, ?X, comb[0](Q, ?X))", sig);
  EXPECT_TRUE(bl::alpha_eq(j_translate(px, sig), B("[P(X, [Q(X)])]", sig)));
  EXPECT_TRUE(bl::structurally_equal(j_translate(C("M", sig), sig), bl::constant("M")));
  EXPECT_TRUE(bl::alpha_eq(j_translate(C("Truth", sig), sig), B("[Truth()]", sig)));
}

TEST(Bealer, Examples) {
  auto sig = sig_of("prim K, L : 2. prim M : -1. prim P : 2. prim Q : 1.");
  EXPECT_EQ(to_string(bealer_decompose(B("[Q(x1)]_{x1}", sig), sig)), "Q");
  EXPECT_EQ(to_string(bealer_decompose(B("[P(x, [Q(x)])]_x", sig), sig)), "link[{1,2}](comb[*,1](P, Q))");
  auto mary = B("[K(M, [L(M, M)])]", sig);
  auto d = bealer_decompose(mary, sig);
  EXPECT_EQ(to_string(d), "comb[0,0](K, M, comb[0,0](L, M, M))");
  EXPECT_TRUE(bl::alpha_eq(j_translate(d, sig), mary));
  auto m2 = C("comb[0](link[{1,2}](comb[*,1](K, link[{1,2}](L))), M)", sig);
  EXPECT_TRUE(equal(canonical_form(m2, sig), d));
}

TEST(Bealer, LogicalStructure) {
  auto sig = sig_of("prim P : 1. prim Q : 2. prim R : 1.");
  auto t = B("[~P(x) & ex y. Q(x, y)]_x", sig);
  auto d = bealer_decompose(t, sig);
  EXPECT_EQ(to_string(d), "and(not(P), ex[0,1](Q))");
  auto u = B("[all y. R(y)]", sig);
  EXPECT_EQ(to_string(bealer_decompose(u, sig)), "not(ex[1](not(R)))");
  auto v = B("[P(x)]_{x y}", sig);
  EXPECT_EQ(to_string(bealer_decompose(v, sig)), "dum[0,1](P)");
  auto w = B("[Q(y, x)]_{x y}", sig);
  EXPECT_EQ(to_string(bealer_decompose(w, sig)), "per[2,1](Q)");
}

TEST(Bealer, Errors) {
  auto sig = sig_of("prim P : 1.");
  EXPECT_THROW(bealer_decompose(B("[P(x)]", sig), sig), SortError);
  EXPECT_THROW(bealer_decompose(B("[Z(x)]_x", sig), sig), SortError);
  EXPECT_THROW(bealer_decompose(B("[P(x, x)]_x", sig), sig), SortError);
  EXPECT_NO_THROW(bealer_decompose(B("[P(x)]", sig), sig, {{"x", "X"}}));
}

TEST(Bealer, RoundTripRandomAbstracts) {
  auto sig = gen::test_signature();
  gen::AbstractGen ag(sig);
  gen::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    auto t = ag.closed(rng, 3);
    auto d = bealer_decompose(t, sig);
    auto back = j_translate(d, sig);
    ASSERT_TRUE(bl::alpha_eq(back, t)) << bl::to_string(t) << "\n -> " << to_string(d) << "\n -> "
                                       << bl::to_string(back);
  }
}

TEST(Bealer, DeterministicOnAlphaVariants) {
  auto sig = sig_of("prim Q : 2. prim P : 1.");
  auto a = bealer_decompose(B("[ex z. Q(x, z) & P([P(x)])]_x", sig), sig);
  auto b = bealer_decompose(B("[ex w. Q(y, w) & P([P(y)])]_y", sig), sig);
  EXPECT_TRUE(equal(a, b));
}

TEST(Oracle, Examples) {
  auto sig = sig_of("prim B : 2. prim A : 1. prim P : 1. prim M, N : -1.");
  EXPECT_TRUE(oracle_sense_equiv(C("comb[1](link[{1,2}](B), A)", sig),
                                 C("link[{1,2}](comb[1,1](B, A, A))", sig), sig));
  auto t = C("comb[1](link[{1,2}](B), A)", sig);
  EXPECT_TRUE(oracle_sense_equiv(t, t, sig));
  EXPECT_FALSE(oracle_sense_equiv(C("comb[0](P, M)", sig), C("comb[0](P, N)", sig), sig));
  auto v = oracle_check(C("P", sig), C("B", sig), sig);
  EXPECT_FALSE(v.equivalent);
  EXPECT_NE(v.diagnostic.find("sorts differ"), std::string::npos);
}

TEST(PseudoBind, Examples) {
  auto sig = sig_of("prim P : 2. prim Q : 1. prim U : 1. prim R : 1.");
  auto t = C("comb[0,0](P, ?X, comb[0](Q, ?X))", sig);
  EXPECT_EQ(to_string(pseudo_bind(t, "X", sig)), "link[{1,2}](comb[*,1](P, Q))");
  EXPECT_EQ(to_string(pseudo_bind(C("comb[0](U, ?X)", sig), "X", sig)), "U");
  EXPECT_EQ(to_string(pseudo_bind(C("comb[0](U, ?Y)", sig), "X", sig)), "dum[1](comb[0](U, ?Y))");
  auto r = pseudo_bind(C("not(comb[0](U, ?Y))", sig), "X", sig);
  EXPECT_EQ(r->sort, 1);
  EXPECT_TRUE(oracle_sense_equiv(comb(CombSeq({0}), r, {pseudo("X")}), C("not(comb[0](U, ?Y))", sig), sig));
}

TEST(PseudoBind, LemmaOnRandomTerms) {
  auto sig = gen::test_signature();
  gen::TermGen tg(sig, {.max_sort = 3, .pseudo_vars = true});
  gen::Rng rng(5);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 150; ++i) {
    auto t = tg.any(rng, 3);
    if (!pseudo_vars(t).count("X")) continue;
    ++checked;
    auto tx = pseudo_bind(t, "X", sig);
    std::vector<int> s(tx->sort, kStar);
    s.back() = 0;
    auto back = comb(CombSeq(s), tx, {pseudo("X")});
    ASSERT_TRUE(oracle_sense_equiv(back, t, sig)) << to_string(t) << " -> " << to_string(tx);
  }
  EXPECT_GE(checked, 100);
}
