#include <gtest/gtest.h>

#include "cil/model.hpp"
#include "cil/rewrite.hpp"
#include "cil/syntax.hpp"
#include "cil/translate.hpp"
#include "support/generators.hpp"

using namespace cil;
using namespace cil::model;

namespace {

Signature sig_of(const std::string& decls) { return parse_cil_program(decls).sig; }

ModelConfig small_config(std::size_t extensions) {
  ModelConfig cfg;
  cfg.sig = sig_of("prim a, b : -1. prim P : 1. prim R : 2.");
  cfg.carrier.depth = 1;
  auto c = cfg.sig.constants();
  auto a = bl::constant("a"), b = bl::constant("b");
  auto pa = parse_bl_term("[P(a)]", c);
  for (std::size_t i = 0; i < extensions; ++i) {
    Extension h;
    h.name = "H" + std::to_string(i + 1);
    if (i % 2 == 0) h.add("P", {a});
    if (i >= 1) h.add("P", {b});
    h.add("R", {a, b});
    if (i == 2) h.add("R", {b, b});
    h.add("R", {pa, a});
    cfg.extensions.push_back(h);
  }
  cfg.actual = "H1";
  return cfg;
}

bl::FormulaPtr F(const Model& m, const std::string& s) { return parse_bl_formula(s, m.config().sig.constants()); }

}  // namespace

TEST(Carrier, Enumeration) {
  auto cfg = small_config(1);
  auto c = Carrier::enumerate(cfg.sig, cfg.carrier);
  EXPECT_FALSE(c.truncated());
  EXPECT_EQ(c.of_sort(-1).size(), 2u);
  EXPECT_TRUE(c.contains(parse_bl_term("[R(x, a)]_x", cfg.sig.constants())));
  EXPECT_TRUE(c.contains(parse_bl_term("[R(y, z)]_{y z}", cfg.sig.constants())));
  EXPECT_FALSE(c.contains(parse_bl_term("[R(z, y)]_{y z}", cfg.sig.constants())));
  EXPECT_TRUE(c.contains(parse_bl_term("[Truth]", cfg.sig.constants())));
  for (const auto& e : c.elements()) EXPECT_EQ(c.find(e.key), &e);
  cfg.carrier.depth = 2;
  cfg.carrier.max_elements = 30;
  auto c2 = Carrier::enumerate(cfg.sig, cfg.carrier);
  EXPECT_TRUE(c2.truncated());
  EXPECT_EQ(c2.size(), 30u);
}

TEST(Model, ForcedRelations) {
  Model m(small_config(2));
  EXPECT_TRUE(m.satisfies(F(m, "a =i a")));
  EXPECT_FALSE(m.satisfies(F(m, "a =i b")));
  EXPECT_TRUE(m.satisfies(F(m, "[Truth] =n [Truth]")));
  EXPECT_TRUE(m.satisfies(F(m, "Truth")));
  EXPECT_FALSE(m.satisfies(F(m, "[Truth] =n [~Truth]")));
  EXPECT_TRUE(m.satisfies(F(m, "[P(x)]_x =i [P(y)]_y")));
}

TEST(Model, Extensions) {
  Model m(small_config(2));
  auto c = m.config().sig.constants();
  auto p = parse_bl_term("[P(x)]_x", c);
  EXPECT_TRUE(m.eval_extension(0, p, {bl::constant("a")}));
  EXPECT_FALSE(m.eval_extension(0, p, {bl::constant("b")}));
  EXPECT_TRUE(m.eval_extension(1, p, {bl::constant("b")}));
  auto np = parse_bl_term("[~P(x)]_x", c);
  EXPECT_FALSE(m.eval_extension(0, np, {bl::constant("a")}));
  auto swapped = parse_bl_term("[R(y, x)]_{x y}", c);
  EXPECT_TRUE(m.eval_extension(0, swapped, {bl::constant("b"), bl::constant("a")}));
  EXPECT_FALSE(m.eval_extension(0, swapped, {bl::constant("a"), bl::constant("b")}));
  EXPECT_THROW(m.eval_extension(0, p, {}), ModelError);
  EXPECT_THROW(m.eval_extension(0, p, {parse_bl_term("[P([P(a)])]", c)}), ModelError);
  EXPECT_TRUE(m.satisfies(F(m, "R([P(a)], a)")));
  EXPECT_TRUE(m.satisfies(F(m, "ex y. R(y, a)")));
  EXPECT_FALSE(m.satisfies(F(m, "all y. R(y, a)")));
}

TEST(Model, SingleExtensionN) {
  Model m(small_config(1));
  auto c = m.config().sig.constants();
  // With one extension, ~n is agreement in that extension.
  auto pa = make_element(parse_bl_term("[P(a)]", c));
  auto rab = make_element(parse_bl_term("[R(a, b)]", c));
  auto t = make_element(parse_bl_term("[Truth]", c));
  EXPECT_TRUE(m.eq_n(pa, rab));
  EXPECT_TRUE(m.eq_n(pa, t));
  Model m2(small_config(2));
  // P(a) fails in H2, so it is no longer necessary.
  EXPECT_FALSE(m2.eq_n(pa, t));
  EXPECT_TRUE(m2.eq_n(rab, t));
}

TEST(Model, ConfigErrors) {
  auto cfg = small_config(1);
  cfg.actual = "nowhere";
  EXPECT_THROW(Model{cfg}, ModelError);
  cfg = small_config(1);
  cfg.extensions[0].add("Eq_I", {bl::constant("a"), bl::constant("b")});
  EXPECT_THROW(Model{cfg}, ModelError);
  cfg = small_config(1);
  cfg.interpretation["P"] = parse_bl_term("[R(x, y)]_{x y}", cfg.sig.constants());
  EXPECT_THROW(Model{cfg}, ModelError);
  cfg = small_config(1);
  Model m(cfg);
  EXPECT_THROW(m.satisfies(F(m, "P(z)")), ModelError);
}

TEST(Model, CilSatisfaction) {
  Model m(small_config(1));
  auto sig = m.config().sig;
  EXPECT_TRUE(m.satisfies(parse_cil_term("comb[0](P, a)", sig)));
  EXPECT_FALSE(m.satisfies(parse_cil_term("comb[0](P, b)", sig)));
  EXPECT_TRUE(m.satisfies(parse_cil_term("ex[1](comb[*,0](R, b))", sig)));
  auto cfg = small_config(1);
  cfg.assignment["X"] = bl::constant("a");
  Model mx(cfg);
  EXPECT_TRUE(mx.satisfies(parse_cil_term("comb[0](P, ?X)", sig)));
}

TEST(Model, EvaluatorsAgree) {
  for (std::size_t k : {1u, 2u, 3u}) {
    Model m(small_config(k));
    const auto& D = m.domain();
    for (const auto& d : m.carrier().elements()) {
      if (d.sort < 0) continue;
      std::vector<std::size_t> idx(static_cast<std::size_t>(d.sort), 0);
      for (;;) {
        std::vector<Element> t;
        for (auto i : idx) t.push_back(D[i]);
        for (std::size_t h = 0; h < m.extension_count(); ++h)
          ASSERT_EQ(m.holds(h, d, t), m.holds(h, d, t, Evaluator::Saturation)) << d.key;
        std::size_t j = idx.size();
        while (j > 0 && ++idx[j - 1] == D.size()) idx[--j] = 0;
        if (j == 0) break;
      }
    }
  }
}

// Sense-equivalent terms denote the same element, hence agree everywhere.
TEST(Model, SenseRuleSoundness) {
  auto cfg = small_config(2);
  cfg.sig = gen::test_signature();
  cfg.carrier.predicates = {"P", "R"};
  cfg.carrier.max_elements = 24;
  cfg.extensions[0].facts.clear();
  cfg.extensions[0].add("P", {bl::constant("c")});
  cfg.extensions[1].facts.clear();
  cfg.extensions[1].add("R", {bl::constant("c"), bl::constant("d")});
  Model m(cfg);
  gen::TermGen tg(cfg.sig, {.max_sort = 1});
  gen::Rng rng(41);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 60; ++i) {
    auto t = tg.any(rng, 3);
    if (t->sort != 0 || has_pseudo(t)) continue;
    auto n = normalize(t);
    ASSERT_TRUE(oracle_sense_equiv(t, n, cfg.sig));
    ++checked;
    for (std::size_t h = 0; h < m.extension_count(); ++h)
      ASSERT_EQ(m.holds(h, make_element(m.interpret(t)), {}), m.holds(h, make_element(m.interpret(n)), {}))
          << to_string(t);
  }
  EXPECT_GE(checked, 30);
}

TEST(Conditions, Pass) {
  for (std::size_t k : {1u, 2u, 3u}) {
    Model m(small_config(k));
    auto r = check_model_conditions(m);
    EXPECT_TRUE(r.ok()) << r.to_text();
  }
}

TEST(Harness, AllSuites) {
  for (std::size_t k : {1u, 2u, 3u}) {
    Model m(small_config(k));
    for (auto s : all_suites()) {
      auto r = validity_harness(m, s, {.max_instances = 60, .seed = 3});
      EXPECT_TRUE(r.ok()) << "|K| = " << k << "\n" << r.to_text();
    }
  }
}

TEST(Harness, DepthTwo) {
  auto cfg = small_config(2);
  cfg.carrier.depth = 2;
  cfg.carrier.max_elements = 28;
  Model m(cfg);
  EXPECT_TRUE(m.carrier().truncated());
  EXPECT_TRUE(check_model_conditions(m).ok());
  for (auto s : all_suites()) {
    auto r = validity_harness(m, s, {.max_instances = 40, .seed = 5});
    EXPECT_TRUE(r.ok()) << r.to_text();
  }
}

TEST(Harness, SuiteNames) {
  for (auto s : all_suites()) EXPECT_EQ(suite_from_string(to_string(s)), s);
  EXPECT_THROW(suite_from_string("k4"), ModelError);
}
