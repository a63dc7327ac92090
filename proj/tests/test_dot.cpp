#include <gtest/gtest.h>

#include <algorithm>

#include "cil/dot.hpp"
#include "cil/syntax.hpp"
#include "support/generators.hpp"

using namespace cil;

namespace {

Signature sig_of(const std::string& decls) { return parse_cil_program(decls).sig; }

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

std::size_t with_kind(const ConceptGraph& g, GraphVertex::Kind k) {
  return static_cast<std::size_t>(
      std::count_if(g.vertices.begin(), g.vertices.end(), [&](const GraphVertex& v) { return v.kind == k; }));
}

}  // namespace

TEST(ConceptGraph, PrimitiveHasOneAnchorPerPlace) {
  auto sig = sig_of("prim P : 2.");
  auto g = concept_graph(parse_cil_term("P", sig));
  ASSERT_EQ(g.vertices.size(), 1u);
  EXPECT_EQ(g.vertices[0].label, "P");
  EXPECT_EQ(g.wires, (std::vector<std::vector<std::size_t>>{{0}, {0}}));
  auto dot = to_dot(g);
  EXPECT_EQ(count(dot, "style=invis]"), 3u);  // two anchors and one ordering edge
  EXPECT_NE(dot.find("{ rank=sink; a0; a1; }"), std::string::npos);
}

TEST(ConceptGraph, LinkFusesAnchors) {
  auto sig = sig_of("prim L : 2.");
  auto g = concept_graph(parse_cil_term("link[{1,2}](L)", sig));
  ASSERT_EQ(g.open_edge_count(), 1u);
  EXPECT_EQ(g.wires[0], (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(count(to_dot(g), "-> a0 [arrowhead=none]"), 2u);
}

TEST(ConceptGraph, MaryForms) {
  auto sig = sig_of("prim K, L : 2. prim M : -1.");
  for (const char* text : {"comb[0](link[{1,2}](comb[*,1](K, link[{1,2}](L))), M)",
                           "comb[0,0](K, M, comb[0,0](L, M, M))"}) {
    auto g = concept_graph(parse_cil_term(text, sig));
    EXPECT_EQ(g.open_edge_count(), 0u) << text;
    EXPECT_EQ(g.vertices[g.root].label, "K") << text;
    EXPECT_EQ(g.vertices[g.root].kind, GraphVertex::Kind::Root);
    auto m = std::count_if(g.vertices.begin(), g.vertices.end(), [](const GraphVertex& v) { return v.label == "M"; });
    EXPECT_EQ(m, 1) << text;
    std::size_t into_m = 0;
    for (const auto& [a, b] : g.edges)
      if (g.vertices[b].label == "M") ++into_m;
    EXPECT_EQ(into_m, 3u) << text;  // K once, L twice
  }
}

TEST(ConceptGraph, OperatorShapes) {
  auto sig = sig_of("prim P : 2. prim Q : 1. prim R : 3.");
  auto folded = concept_graph(parse_cil_term("comb[*,1](P, R)", sig));
  EXPECT_EQ(with_kind(folded, GraphVertex::Kind::Folded), 2u);
  EXPECT_EQ(folded.open_edge_count(), 2u);

  auto d = concept_graph(parse_cil_term("dum[0,1](Q)", sig));
  EXPECT_EQ(d.open_edge_count(), 2u);
  EXPECT_EQ(with_kind(d, GraphVertex::Kind::Loose), 1u);
  EXPECT_EQ(d.vertices[d.wires[1][0]].kind, GraphVertex::Kind::Loose);

  auto p = concept_graph(parse_cil_term("per[2,1](comb[*,1](P, Q))", sig));
  EXPECT_EQ(p.vertices[p.wires[0][0]].label, "Q");
  EXPECT_EQ(p.vertices[p.wires[1][0]].label, "P");

  auto n = concept_graph(parse_cil_term("not(P)", sig));
  EXPECT_EQ(n.vertices[n.root].label, "¬");
  EXPECT_EQ(with_kind(n, GraphVertex::Kind::Bar), 2u);

  auto c = concept_graph(parse_cil_term("and(P, per[2,1](P))", sig));
  EXPECT_EQ(c.vertices[c.root].label, "&");
  EXPECT_EQ(c.wires[0].size(), 2u);

  auto e = concept_graph(parse_cil_term("ex[1,0](P)", sig));
  EXPECT_EQ(e.open_edge_count(), 1u);
  EXPECT_EQ(with_kind(e, GraphVertex::Kind::Exists), 1u);
}

TEST(ConceptGraph, OpenEdgesEqualSortAndOutputIsStable) {
  auto sig = gen::test_signature();
  gen::GenOptions opt;
  opt.pseudo_vars = true;
  gen::TermGen g(sig, opt);
  gen::Rng rng(11);
  for (int i = 0; i < 400; ++i) {
    auto t = g.any(rng, 4);
    auto graph = concept_graph(t);
    if (t->sort >= 0) {
      ASSERT_EQ(graph.open_edge_count(), static_cast<std::size_t>(t->sort)) << to_string(t);
    }
    auto again = parse_cil_term(to_string(t), sig);
    ASSERT_EQ(dot_export(t), dot_export(again)) << to_string(t);
  }
}
