#include "cil/json_io.hpp"

#include "cil/syntax.hpp"

namespace cil::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

long long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<long long>();
}

std::size_t natural(const Json& j, const std::string& path) {
  auto v = integer(j, path);
  if (v < 0) throw SchemaError(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void check_schema(const Json& j, const char* want) {
  const auto& s = field(j, "schema", "");
  if (str(s, "/schema") != want) throw SchemaError("/schema", "unsupported schema '" + s.get<std::string>() + "', expected " + want);
}

const char* const kCilKeys[] = {"prim", "pseudo", "comb", "link", "per", "dum", "not", "and", "ex"};

const char* cil_tag(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected a term object");
  const char* found = nullptr;
  for (const char* k : kCilKeys)
    if (j.contains(k)) {
      if (found) throw SchemaError(path, std::string("ambiguous term: both '") + found + "' and '" + k + "'");
      found = k;
    }
  if (!found) throw SchemaError(path, "unknown term node");
  return found;
}

template <class F>
auto guarded(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------- CIL

Json to_json(const TermPtr& t) {
  Json j = Json::object();
  switch (kind(t)) {
    case Kind::Prim:
      j["prim"] = as<Prim>(t).name;
      break;
    case Kind::PseudoVar:
      j["pseudo"] = as<PseudoVar>(t).name;
      break;
    case Kind::Comb: {
      const auto& n = as<Comb>(t);
      Json seq = Json::array();
      for (int e : n.seq.entries()) seq.push_back(e == kStar ? Json("*") : Json(e));
      j["comb"] = seq;
      j["head"] = to_json(n.head);
      Json args = Json::array();
      for (const auto& a : n.args) args.push_back(to_json(a));
      j["args"] = args;
      break;
    }
    case Kind::Link: {
      const auto& n = as<Link>(t);
      Json blocks = Json::array();
      for (const auto& b : n.seq.blocks()) {
        Json bj = Json::array();
        for (auto e : b) bj.push_back(e + 1);
        blocks.push_back(bj);
      }
      j["link"] = blocks;
      j["body"] = to_json(n.body);
      break;
    }
    case Kind::Per: {
      const auto& n = as<Per>(t);
      Json im = Json::array();
      for (auto v : n.seq.images()) im.push_back(v + 1);
      j["per"] = im;
      j["body"] = to_json(n.body);
      break;
    }
    case Kind::Dum:
      j["dum"] = as<Dum>(t).seq.entries();
      j["body"] = to_json(as<Dum>(t).body);
      break;
    case Kind::Neg:
      j["not"] = to_json(as<Neg>(t).body);
      break;
    case Kind::Conj:
      j["and"] = Json::array({to_json(as<Conj>(t).left), to_json(as<Conj>(t).right)});
      break;
    case Kind::Ex: {
      Json m = Json::array();
      for (bool b : as<Ex>(t).seq) m.push_back(b ? 1 : 0);
      j["ex"] = m;
      j["body"] = to_json(as<Ex>(t).body);
      break;
    }
  }
  return j;
}

TermPtr term_from_json(const Json& j, const Signature& sig, const std::string& path) {
  std::string tag = cil_tag(j, path);
  auto body = [&] { return term_from_json(field(j, "body", path), sig, at(path, "body")); };
  if (tag == "prim") {
    auto name = str(j["prim"], at(path, "prim"));
    return guarded(path, [&] { return prim(name, sig); });
  }
  if (tag == "pseudo") return pseudo(str(j["pseudo"], at(path, "pseudo")));
  if (tag == "comb") {
    std::vector<int> entries;
    const auto& s = array(j["comb"], at(path, "comb"));
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].is_string() && s[i].get<std::string>() == "*")
        entries.push_back(kStar);
      else
        entries.push_back(static_cast<int>(natural(s[i], at(at(path, "comb"), i))));
    }
    auto head = term_from_json(field(j, "head", path), sig, at(path, "head"));
    std::vector<TermPtr> args;
    const auto& a = array(field(j, "args", path), at(path, "args"));
    for (std::size_t i = 0; i < a.size(); ++i) args.push_back(term_from_json(a[i], sig, at(at(path, "args"), i)));
    return guarded(path, [&] { return comb(CombSeq(entries), head, args); });
  }
  if (tag == "link") {
    std::vector<std::vector<std::size_t>> blocks;
    std::size_t n = 0;
    const auto& s = array(j["link"], at(path, "link"));
    for (std::size_t b = 0; b < s.size(); ++b) {
      auto bp = at(at(path, "link"), b);
      auto& blk = blocks.emplace_back();
      for (std::size_t i = 0; i < array(s[b], bp).size(); ++i) {
        auto v = natural(s[b][i], at(bp, i));
        if (v == 0) throw SchemaError(at(bp, i), "positions are 1-based");
        blk.push_back(v - 1);
        n = std::max(n, v);
      }
    }
    auto b = body();
    return guarded(path, [&] { return link(Partition::from_blocks(n, blocks), b); });
  }
  if (tag == "per") {
    std::vector<std::size_t> im;
    const auto& s = array(j["per"], at(path, "per"));
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto v = natural(s[i], at(at(path, "per"), i));
      if (v == 0) throw SchemaError(at(at(path, "per"), i), "positions are 1-based");
      im.push_back(v - 1);
    }
    auto b = body();
    return guarded(path, [&] { return per(Permutation(im), b); });
  }
  if (tag == "dum") {
    std::vector<unsigned> e;
    const auto& s = array(j["dum"], at(path, "dum"));
    for (std::size_t i = 0; i < s.size(); ++i)
      e.push_back(static_cast<unsigned>(natural(s[i], at(at(path, "dum"), i))));
    auto b = body();
    return guarded(path, [&] { return dum(DumSeq(e), b); });
  }
  if (tag == "not") return neg(term_from_json(j["not"], sig, at(path, "not")));
  if (tag == "and") {
    const auto& s = array(j["and"], at(path, "and"));
    if (s.size() != 2) throw SchemaError(at(path, "and"), "expected two conjuncts");
    auto l = term_from_json(s[0], sig, at(at(path, "and"), 0));
    auto r = term_from_json(s[1], sig, at(at(path, "and"), 1));
    return guarded(path, [&] { return conj(l, r); });
  }
  std::vector<bool> mask;
  const auto& s = array(j["ex"], at(path, "ex"));
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto v = natural(s[i], at(at(path, "ex"), i));
    if (v > 1) throw SchemaError(at(at(path, "ex"), i), "expected 0 or 1");
    mask.push_back(v == 1);
  }
  auto b = body();
  return guarded(path, [&] { return ex(mask, b); });
}

Json to_json(const Signature& sig) {
  Signature builtin;
  Json j = Json::object();
  for (const auto& [n, s] : sig.primitives())
    if (!builtin.contains(n)) j[n] = s;
  return j;
}

Signature signature_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object of name: sort");
  Signature sig;
  for (const auto& [n, s] : j.items()) {
    auto v = integer(s, at(path, n));
    guarded(at(path, n), [&] {
      sig.declare(n, static_cast<int>(v));
      return 0;
    });
  }
  return sig;
}

Json to_json(const CilProgram& p) {
  Json terms = Json::array();
  for (const auto& [name, t] : p.terms) terms.push_back(Json{{"name", name}, {"term", to_json(t)}});
  return Json{{"schema", kTermSchema}, {"signature", to_json(p.sig)}, {"terms", terms}};
}

CilProgram program_from_json(const Json& j) {
  check_schema(j, kTermSchema);
  CilProgram p;
  p.sig = signature_from_json(field(j, "signature", ""), "/signature");
  const auto& ts = array(field(j, "terms", ""), "/terms");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    auto ip = at("/terms", i);
    std::string name;
    if (ts[i].is_object() && ts[i].contains("name")) name = str(ts[i]["name"], at(ip, "name"));
    p.terms.emplace_back(name, term_from_json(field(ts[i], "term", ip), p.sig, at(ip, "term")));
  }
  return p;
}

// ----------------------------------------------------------------------- BL

Json to_json(const bl::TermPtr& t) {
  return std::visit(
      [](const auto& n) -> Json {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, bl::Var>)
          return Json{{"var", n.name}};
        else if constexpr (std::is_same_v<N, bl::Const>)
          return Json{{"const", n.name}};
        else
          return Json{{"abstract", to_json(n.scope)}, {"vseq", n.vseq}};
      },
      t->node);
}

Json to_json(const bl::FormulaPtr& f) {
  return std::visit(
      [](const auto& n) -> Json {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, bl::Pred>) {
          Json args = Json::array();
          for (const auto& a : n.args) args.push_back(to_json(a));
          return Json{{"pred", n.name}, {"args", args}};
        } else if constexpr (std::is_same_v<N, bl::Not>) {
          return Json{{"not", to_json(n.body)}};
        } else if constexpr (std::is_same_v<N, bl::And>) {
          return Json{{"and", Json::array({to_json(n.left), to_json(n.right)})}};
        } else if constexpr (std::is_same_v<N, bl::Exists>) {
          return Json{{"exists", n.var}, {"body", to_json(n.body)}};
        } else {
          return Json{{"forall", n.var}, {"body", to_json(n.body)}};
        }
      },
      f->node);
}

bl::TermPtr bl_term_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected a term object");
  if (j.contains("var")) return bl::var(str(j["var"], at(path, "var")));
  if (j.contains("const")) return bl::constant(str(j["const"], at(path, "const")));
  if (j.contains("abstract")) {
    auto scope = bl_formula_from_json(j["abstract"], at(path, "abstract"));
    std::vector<std::string> vs;
    if (j.contains("vseq")) {
      const auto& a = array(j["vseq"], at(path, "vseq"));
      for (std::size_t i = 0; i < a.size(); ++i) vs.push_back(str(a[i], at(at(path, "vseq"), i)));
    }
    return guarded(path, [&] { return bl::abstract(scope, vs); });
  }
  throw SchemaError(path, "unknown term node");
}

bl::FormulaPtr bl_formula_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected a formula object");
  if (j.contains("pred")) {
    auto name = str(j["pred"], at(path, "pred"));
    std::vector<bl::TermPtr> args;
    if (j.contains("args")) {
      const auto& a = array(j["args"], at(path, "args"));
      for (std::size_t i = 0; i < a.size(); ++i) args.push_back(bl_term_from_json(a[i], at(at(path, "args"), i)));
    }
    return bl::pred(name, args);
  }
  if (j.contains("not")) return bl::neg(bl_formula_from_json(j["not"], at(path, "not")));
  if (j.contains("and")) {
    const auto& a = array(j["and"], at(path, "and"));
    if (a.size() != 2) throw SchemaError(at(path, "and"), "expected two conjuncts");
    return bl::conj(bl_formula_from_json(a[0], at(at(path, "and"), 0)),
                    bl_formula_from_json(a[1], at(at(path, "and"), 1)));
  }
  for (const char* q : {"exists", "forall"}) {
    if (!j.contains(q)) continue;
    auto v = str(j[q], at(path, q));
    auto body = bl_formula_from_json(field(j, "body", path), at(path, "body"));
    return std::string(q) == "exists" ? bl::exists(v, body) : bl::forall(v, body);
  }
  throw SchemaError(path, "unknown formula node");
}

// -------------------------------------------------------------------- model

namespace {

bl::TermPtr surface_term(const Json& j, const std::set<std::string>& consts, const std::vector<bl::TermPtr>& table,
                         const std::string& path) {
  if (j.is_number_integer()) {
    auto i = natural(j, path);
    if (i >= table.size()) throw SchemaError(path, "term id " + std::to_string(i) + " out of range");
    return table[i];
  }
  auto s = str(j, path);
  return guarded(path, [&] { return parse_bl_term(s, consts); });
}

}  // namespace

Json to_json(const model::ModelConfig& cfg) {
  Json carrier{{"depth", cfg.carrier.depth},
               {"max_sort", cfg.carrier.max_sort},
               {"max_elements", cfg.carrier.max_elements}};
  if (!cfg.carrier.predicates.empty()) carrier["predicates"] = cfg.carrier.predicates;
  if (!cfg.carrier.extra.empty()) {
    Json ex = Json::array();
    for (const auto& t : cfg.carrier.extra) ex.push_back(bl::to_string(t));
    carrier["extra"] = ex;
  }
  Json exts = Json::array();
  for (const auto& h : cfg.extensions) {
    Json facts = Json::object();
    for (const auto& [p, tuples] : h.facts) {
      Json ts = Json::array();
      for (const auto& tup : tuples) {
        Json tj = Json::array();
        for (const auto& x : tup) tj.push_back(bl::to_string(x));
        ts.push_back(tj);
      }
      facts[p] = ts;
    }
    exts.push_back(Json{{"name", h.name}, {"facts", facts}});
  }
  Json j{{"schema", kModelSchema},
         {"signature", to_json(cfg.sig)},
         {"carrier", carrier},
         {"extensions", exts},
         {"actual", cfg.actual}};
  if (!cfg.interpretation.empty()) {
    Json m = Json::object();
    for (const auto& [p, t] : cfg.interpretation) m[p] = bl::to_string(t);
    j["interpretation"] = m;
  }
  if (!cfg.assignment.empty()) {
    Json m = Json::object();
    for (const auto& [v, t] : cfg.assignment) m[v] = bl::to_string(t);
    j["assignment"] = m;
  }
  j["range"] = cfg.range == model::QuantifierRange::All ? "all" : "individuals";
  return j;
}

model::ModelConfig model_config_from_json(const Json& j) {
  check_schema(j, kModelSchema);
  model::ModelConfig cfg;
  cfg.sig = signature_from_json(field(j, "signature", ""), "/signature");
  auto consts = cfg.sig.constants();

  std::vector<bl::TermPtr> table;
  if (j.contains("terms")) {
    const auto& a = array(j["terms"], "/terms");
    for (std::size_t i = 0; i < a.size(); ++i) table.push_back(surface_term(a[i], consts, table, at("/terms", i)));
  }

  if (j.contains("carrier")) {
    const auto& c = j["carrier"];
    if (!c.is_object()) throw SchemaError("/carrier", "expected an object");
    if (c.contains("depth")) cfg.carrier.depth = natural(c["depth"], "/carrier/depth");
    if (c.contains("max_sort")) cfg.carrier.max_sort = static_cast<int>(natural(c["max_sort"], "/carrier/max_sort"));
    if (c.contains("max_elements"))
      cfg.carrier.max_elements = natural(c["max_elements"], "/carrier/max_elements");
    if (c.contains("predicates")) {
      const auto& a = array(c["predicates"], "/carrier/predicates");
      for (std::size_t i = 0; i < a.size(); ++i) cfg.carrier.predicates.push_back(str(a[i], at("/carrier/predicates", i)));
    }
    if (c.contains("extra")) {
      const auto& a = array(c["extra"], "/carrier/extra");
      for (std::size_t i = 0; i < a.size(); ++i)
        cfg.carrier.extra.push_back(surface_term(a[i], consts, table, at("/carrier/extra", i)));
    }
  }

  const auto& exts = array(field(j, "extensions", ""), "/extensions");
  for (std::size_t i = 0; i < exts.size(); ++i) {
    auto ip = at("/extensions", i);
    model::Extension h;
    h.name = str(field(exts[i], "name", ip), at(ip, "name"));
    if (exts[i].contains("facts")) {
      const auto& facts = exts[i]["facts"];
      auto fp = at(ip, "facts");
      if (!facts.is_object()) throw SchemaError(fp, "expected an object of predicate: tuples");
      for (const auto& [p, tuples] : facts.items()) {
        auto pp = at(fp, p);
        auto& list = h.facts[p];
        for (std::size_t k = 0; k < array(tuples, pp).size(); ++k) {
          auto tp = at(pp, k);
          std::vector<bl::TermPtr> tup;
          for (std::size_t m = 0; m < array(tuples[k], tp).size(); ++m)
            tup.push_back(surface_term(tuples[k][m], consts, table, at(tp, m)));
          list.push_back(std::move(tup));
        }
      }
    }
    cfg.extensions.push_back(std::move(h));
  }
  if (j.contains("actual"))
    cfg.actual = str(j["actual"], "/actual");
  else if (!cfg.extensions.empty())
    cfg.actual = cfg.extensions.front().name;

  for (const char* key : {"interpretation", "assignment"}) {
    if (!j.contains(key)) continue;
    std::string kp = std::string("/") + key;
    if (!j[key].is_object()) throw SchemaError(kp, "expected an object");
    for (const auto& [n, t] : j[key].items()) {
      auto term = surface_term(t, consts, table, at(kp, n));
      if (std::string(key) == "interpretation")
        cfg.interpretation[n] = term;
      else
        cfg.assignment[n] = term;
    }
  }
  if (j.contains("range")) {
    auto r = str(j["range"], "/range");
    if (r == "all")
      cfg.range = model::QuantifierRange::All;
    else if (r == "individuals")
      cfg.range = model::QuantifierRange::Individuals;
    else
      throw SchemaError("/range", "expected \"all\" or \"individuals\"");
  }
  return cfg;
}

Json to_json(const model::Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj{{"name", c.name}, {"instances", c.instances}, {"failures", c.failures}, {"pass", c.pass()}};
    if (!c.witness.empty()) cj["witness"] = c.witness;
    checks.push_back(cj);
  }
  return Json{{"title", r.title}, {"ok", r.ok()}, {"checks", checks}};
}

}  // namespace cil::io
