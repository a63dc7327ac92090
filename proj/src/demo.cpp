#include "cil/demo.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "cil/syntax.hpp"
#include "cil/translate.hpp"

namespace cil::demo {

namespace {

io::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::SchemaError("", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return io::parse_json(ss.str());
}

std::vector<std::string> strings(const io::Json& j, const std::string& path) {
  std::vector<std::string> out;
  if (!j.is_array()) throw io::SchemaError(path, "expected an array of strings");
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw io::SchemaError(path + "/" + std::to_string(i), "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::string string_at(const io::Json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_string()) throw io::SchemaError(path, std::string("missing string '") + key + "'");
  return j[key].get<std::string>();
}

Verdict judge(const std::string& text, const model::Model& m) {
  const auto& sig = m.config().sig;
  auto phi = parse_bl_formula(text, sig.constants());
  PseudoVarMap inverse;
  for (const auto& v : bl::free_vars(phi)) inverse.emplace(v, v);
  auto sense = bealer_decompose(bl::abstract(phi), sig, inverse);
  if (sort_of(sense, sig) != 0) throw SortError("sense of '" + text + "' is not of sort 0");
  Verdict v;
  v.formula = text;
  v.cil = to_string(sense);
  v.holds = m.satisfies(phi, model::Evaluator::Decomposition);
  v.agree = v.holds == m.satisfies(phi, model::Evaluator::Saturation) && v.holds == m.satisfies(sense);
  return v;
}

}  // namespace

Corpus corpus_from_json(const io::Json& j, const io::Json& model) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != kCorpusSchema)
    throw io::SchemaError("/schema", std::string("expected ") + kCorpusSchema);
  Corpus c;
  c.model = io::model_config_from_json(model);
  c.sig = j.contains("signature") ? io::signature_from_json(j["signature"], "/signature") : c.model.sig;
  if (!(c.sig == c.model.sig)) throw io::SchemaError("/signature", "differs from the model signature");
  if (j.contains("inferences")) {
    const auto& a = j["inferences"];
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto p = "/inferences/" + std::to_string(i);
      Inference inf;
      inf.name = string_at(a[i], "name", p);
      if (a[i].contains("text")) inf.text = string_at(a[i], "text", p);
      inf.premises = strings(a[i].value("premises", io::Json::array()), p + "/premises");
      inf.conclusion = string_at(a[i], "conclusion", p);
      auto e = a[i].value("expect", std::string("valid"));
      if (e == "valid")
        inf.expect = Inference::Expect::Valid;
      else if (e == "countermodel")
        inf.expect = Inference::Expect::Countermodel;
      else
        throw io::SchemaError(p + "/expect", "expected \"valid\" or \"countermodel\"");
      if (a[i].contains("extra")) inf.extra = strings(a[i]["extra"], p + "/extra");
      c.inferences.push_back(std::move(inf));
    }
  }
  if (j.contains("senses")) {
    const auto& s = j["senses"];
    c.cil_sig = io::signature_from_json(s.value("signature", io::Json::object()), "/senses/signature");
    const auto& a = s.value("pairs", io::Json::array());
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto p = "/senses/pairs/" + std::to_string(i);
      Equivalence e;
      e.a = string_at(a[i], "a", p);
      e.b = string_at(a[i], "b", p);
      e.expect = a[i].value("equivalent", true);
      c.equivalences.push_back(std::move(e));
    }
  }
  return c;
}

Corpus load_corpus(const std::string& dir) {
  auto j = read_json(dir + "/prelude.json");
  auto model_file = j.value("model", std::string("prelude-model.json"));
  return corpus_from_json(j, read_json(dir + "/" + model_file));
}

Outcome evaluate(const Inference& inf, const model::Model& m) {
  Outcome o;
  o.name = inf.name;
  bool premises = true, agree = true;
  for (const auto& p : inf.premises) {
    o.premises.push_back(judge(p, m));
    premises = premises && o.premises.back().holds;
    agree = agree && o.premises.back().agree;
  }
  o.conclusion = judge(inf.conclusion, m);
  agree = agree && o.conclusion.agree;
  bool want = inf.expect == Inference::Expect::Valid;
  o.as_expected = agree && premises && o.conclusion.holds == want;
  return o;
}

std::string Outcome::to_text() const {
  std::ostringstream s;
  s << (as_expected ? "ok    " : "FAIL  ") << name << "\n";
  auto line = [&](const char* tag, const Verdict& v) {
    s << "  " << tag << (v.holds ? " [true]  " : " [false] ") << v.formula << "\n"
      << "        sense " << v.cil << (v.agree ? "" : "   (evaluators disagree)") << "\n";
  };
  for (const auto& p : premises) line("premise   ", p);
  line("conclusion", conclusion);
  return s.str();
}

Sweep random_sweep(const Inference& inf, const Corpus& c, std::size_t trials, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(0.5);
  auto consts = c.sig.constants();
  model::ModelConfig base;
  base.sig = c.sig;
  base.carrier.depth = 0;
  for (const auto& e : inf.extra) base.carrier.extra.push_back(parse_bl_term(e, consts));
  base.assignment = c.model.assignment;
  base.range = c.model.range;
  base.actual = "H";
  auto carrier = model::Carrier::enumerate(base.sig, base.carrier);

  std::vector<bl::FormulaPtr> premises;
  for (const auto& p : inf.premises) premises.push_back(parse_bl_formula(p, consts));
  auto conclusion = parse_bl_formula(inf.conclusion, consts);

  Sweep s;
  s.carrier_size = carrier.size();
  for (std::size_t t = 0; t < trials; ++t) {
    auto cfg = base;
    model::Extension h;
    h.name = "H";
    for (const auto& [p, arity] : c.sig.primitives()) {
      if (arity < 0 || p == bl::kEqI || p == bl::kEqN || p == bl::kTruth) continue;
      std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
      for (;;) {
        if (coin(rng)) {
          std::vector<bl::TermPtr> tuple;
          for (auto i : idx) tuple.push_back(carrier.elements()[i].term);
          h.add(p, tuple);
        }
        std::size_t k = idx.size();
        while (k > 0 && ++idx[k - 1] == carrier.size()) idx[--k] = 0;
        if (k == 0) break;
      }
    }
    cfg.extensions.push_back(std::move(h));
    model::Model m(std::move(cfg));
    ++s.trials;
    bool hold = true;
    for (const auto& p : premises) hold = hold && m.satisfies(p);
    if (!hold) continue;
    ++s.premise_models;
    if (!m.satisfies(conclusion)) ++s.counterexamples;
  }
  return s;
}

}  // namespace cil::demo
