#include <gtest/gtest.h>

#include "cil/demo.hpp"
#include "cil/syntax.hpp"

using namespace cil;

namespace {

const demo::Corpus& corpus() {
  static const demo::Corpus c = demo::load_corpus(CIL_DEMO_DIR);
  return c;
}

const demo::Inference& inference(const std::string& name) {
  for (const auto& i : corpus().inferences)
    if (i.name == name) return i;
  throw std::runtime_error("no inference " + name);
}

}  // namespace

TEST(Corpus, EveryInferenceBehavesAsExpected) {
  model::Model m(corpus().model);
  ASSERT_EQ(corpus().inferences.size(), 5u);
  for (const auto& inf : corpus().inferences) {
    auto o = demo::evaluate(inf, m);
    EXPECT_TRUE(o.as_expected) << o.to_text();
    for (const auto& p : o.premises) EXPECT_TRUE(p.agree) << p.formula;
  }
}

TEST(Corpus, BelievesNecessaryTrueOnThreeElements) {
  const auto& inf = inference("believes-necessary-true");
  auto s = demo::random_sweep(inf, corpus(), 300, 17);
  EXPECT_EQ(s.carrier_size, 3u);
  EXPECT_EQ(s.trials, 300u);
  EXPECT_GT(s.premise_models, 10u);
  EXPECT_EQ(s.counterexamples, 0u);
}

TEST(Corpus, ValidInferencesHaveNoRandomCounterexamples) {
  for (const auto& inf : corpus().inferences) {
    if (inf.expect != demo::Inference::Expect::Valid) continue;
    auto s = demo::random_sweep(inf, corpus(), 150, 3);
    EXPECT_GT(s.premise_models, 0u) << inf.name;
    EXPECT_EQ(s.counterexamples, 0u) << inf.name;
  }
}

TEST(Corpus, SubstitutionFailureIsSatisfiable) {
  const auto& inf = inference("material-equivalence-substitution");
  model::Model m(corpus().model);
  auto o = demo::evaluate(inf, m);
  EXPECT_TRUE(o.premises[0].holds && o.premises[1].holds);
  EXPECT_FALSE(o.conclusion.holds);
  auto c = corpus().sig.constants();
  EXPECT_FALSE(m.satisfies(parse_bl_formula("[all y. R(y)] =i [all y. W(y)]", c)));
  EXPECT_TRUE(m.satisfies(parse_bl_formula("[all y. R(y)] =n [all y. W(y)]", c)));
  auto s = demo::random_sweep(inf, corpus(), 100, 9);
  EXPECT_GT(s.counterexamples, 0u);
}

TEST(Corpus, NecessaryEqualityIsNotLeibnizForBelief) {
  model::ModelConfig cfg;
  cfg.sig = parse_cil_program("prim a : -1. prim P, Q : 1. prim R : 2.").sig;
  auto c = cfg.sig.constants();
  model::Extension h;
  h.name = "H";
  h.add("P", {bl::constant("a")});
  h.add("Q", {bl::constant("a")});
  h.add("R", {bl::constant("a"), parse_bl_term("[P(a)]", c)});
  cfg.extensions.push_back(h);
  cfg.actual = "H";
  model::Model m(cfg);
  EXPECT_TRUE(m.satisfies(parse_bl_formula("[P(a)] =n [Q(a)] & R(a, [P(a)]) & ~R(a, [Q(a)])", c)));
  EXPECT_FALSE(m.satisfies(parse_bl_formula("[P(a)] =i [Q(a)]", c)));
}

TEST(Corpus, SchemaErrors) {
  auto model = io::to_json(corpus().model);
  EXPECT_THROW(demo::corpus_from_json(io::Json::parse(R"({"schema":"x"})"), model), io::SchemaError);
  try {
    demo::corpus_from_json(io::Json::parse(R"({"schema":"cil-demo/1","inferences":[{"name":"n","premises":[]}]})"),
                           model);
    FAIL();
  } catch (const io::SchemaError& e) {
    EXPECT_EQ(e.path(), "/inferences/0");
  }
}
