#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cil/cli.hpp"
#include "cil/json_io.hpp"
#include "cil/syntax.hpp"
#include "support/generators.hpp"

using namespace cil;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kMarySig = "prim K, L : 2. prim M : -1.";
const std::string kMary = "comb[0](link[{1,2}](comb[*,1](K, link[{1,2}](L))), M)";

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, SortOfMary) {
  auto r = run({"sort", kMarySig, kMary});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0\n");
}

TEST(Cli, ParseErrorsExitTwoWithPosition) {
  auto r = run({"parse", "prim K : 2.", "comb[](K)"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("<arg2>:1:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("empty comb-sequence"), std::string::npos) << r.err;

  auto file = temp_file("bad.cil", "prim K : 2.\n\nlink[{1,2}](K).\ncomb[*,1](K, Z).\n");
  r = run({"parse", "-f", file});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.cil:4:"), std::string::npos) << r.err;

  r = run({"sort", "prim K : 2.", "link[{1,2},{3}](K)"});
  EXPECT_EQ(r.code, 2) << r.out;
  r = run({"parse", "prim K : 2. prim K : 1."});
  EXPECT_EQ(r.code, 2);
  r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, EquivExitCodes) {
  auto r = run({"equiv", "--validate", "prim B : 2. prim A : 1.", "comb[1](link[{1,2}](B), A)",
                "link[{1,2}](comb[1,1](B, A, A))"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 11), "equivalent\n");
  r = run({"equiv", "prim R, W : 1. prim M : -1.", "comb[0](R, M)", "comb[0](W, M)"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.substr(0, 15), "not equivalent\n");
  r = run({"equiv", "prim R : 1.", "R"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, NormalizeTraceAndFuel) {
  auto r = run({"normalize", "--trace", "prim B : 2. prim A : 1.", "comb[1](link[{1,2}](B), A)"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("R22 at "), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("  = link[{1,2}](comb[1,1](B, A, A))"), std::string::npos) << r.out;
  r = run({"--fuel", "0", "normalize", "prim B : 2. prim A : 1.", "comb[1](link[{1,2}](B), A)"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("fuel"), std::string::npos);
  r = run({"normalize", "--format", "json", "prim B : 2. prim A : 1.", "comb[1](link[{1,2}](B), A)"});
  auto j = io::parse_json(r.out);
  EXPECT_EQ(j[0]["normal"], "link[{1,2}](comb[1,1](B, A, A))");
}

TEST(Cli, TranslationsRoundTrip) {
  auto r = run({"to-bl", kMarySig, kMary});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "[K(M, [L(M, M)])]\n");
  r = run({"from-bl", "prim K, L : 2. prim M : -1.", "[K(M, [L(M, M)])]"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto back = r.out.substr(0, r.out.size() - 1);
  r = run({"equiv", kMarySig, kMary, back});
  EXPECT_EQ(r.code, 0) << back;

  r = run({"--format", "json", "from-bl", "prim K, L : 2. prim M : -1.", "[K(M, [L(M, M)])]"});
  auto doc = temp_file("mary.json", r.out);
  r = run({"sort", "-f", doc});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0\n");

  r = run({"decompose", kMarySig, kMary});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("T1: [K(M, [L(M, M)])]\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("  K : 2\n"), std::string::npos) << r.out;
}

TEST(Cli, GraphIsDeterministic) {
  auto a = run({"graph", "--dot", kMarySig, kMary});
  auto b = run({"graph", "--dot", kMarySig, kMary});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("digraph \"T1\" {", 0), 0u) << a.out;
  auto j = io::parse_json(run({"--format", "json", "graph", kMarySig, kMary}).out);
  EXPECT_EQ(j[0]["open"].size(), 0u);
}

TEST(Cli, ModelCommands) {
  std::string cfg = CIL_DEMO_DIR "/prelude-model.json";
  auto r = run({"model", "check", "--config", cfg});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  r = run({"model", "valid", "--config", cfg, "--suite", "s5", "--suite", "eq", "--max-instances", "40"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  r = run({"--format", "json", "model", "valid", "--config", cfg, "--suite", "fol", "--max-instances", "20"});
  EXPECT_EQ(io::parse_json(r.out)["ok"], true);
  r = run({"model", "valid", "--config", cfg, "--suite", "nope"});
  EXPECT_EQ(r.code, 2);
  auto bad = temp_file("bad-model.json", R"({"schema":"cil-model/1","signature":{"a":-1},"extensions":[{"name":"H","facts":{"P":[["a"]]}}]})");
  r = run({"model", "check", "--config", bad});
  EXPECT_EQ(r.code, 2);
  auto broken = temp_file("broken.json", "{\"schema\": ");
  r = run({"model", "check", "--config", broken});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("malformed JSON"), std::string::npos);
}

TEST(Cli, Demo) {
  auto r = run({"demo", "--trials", "60"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("demo: all as expected"), std::string::npos);
  auto j = io::parse_json(run({"--format", "json", "demo", "--trials", "20"}).out);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["inferences"].size(), 5u);
  r = run({"demo", "--dir", ::testing::TempDir() + "no-such-dir"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, PrintParseRoundTrip) {
  auto sig = gen::test_signature();
  gen::GenOptions opt;
  opt.pseudo_vars = true;
  gen::TermGen g(sig, opt);
  gen::Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    auto t = g.any(rng, 4);
    auto text = to_string(t);
    auto back = parse_cil_term(text, sig);
    ASSERT_TRUE(equal(t, back)) << text;
    ASSERT_EQ(to_string(back), text);
  }
}
