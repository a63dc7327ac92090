#include "cil/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cil/demo.hpp"
#include "cil/dot.hpp"
#include "cil/json_io.hpp"
#include "cil/model.hpp"
#include "cil/rewrite.hpp"
#include "cil/syntax.hpp"
#include "cil/translate.hpp"

#ifndef CIL_DEMO_DIR
#define CIL_DEMO_DIR "demo"
#endif

namespace cil::cli {

namespace {

using io::Json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t fuel = 100000;
  unsigned seed = 1;
  std::string format = "text";
  std::vector<std::string> files;
  std::vector<std::string> texts;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// "name:line:col: message" for a parse error at `offset` of `text`.
std::string located(const std::string& name, const std::string& text, const ParseError& e) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(e.offset(), text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::string msg = e.what();
  auto cut = msg.rfind(" at offset ");
  if (cut != std::string::npos) msg.erase(cut);
  return name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
}

std::string terminated(std::string s) {
  auto last = s.find_last_not_of(" \t\r\n");
  if (last != std::string::npos && s[last] != '.' && s[last] != ';') s += ".";
  return s;
}

CilProgram load_cil(const Options& o) {
  CilProgram prog;
  auto add_text = [&](const std::string& name, const std::string& text) {
    try {
      auto p = parse_cil_program(text, prog.sig);
      prog.sig = p.sig;
      for (auto& t : p.terms) prog.terms.push_back(std::move(t));
    } catch (const ParseError& e) {
      throw InputError(located(name, text, e));
    } catch (const SortError& e) {
      throw InputError(name + ": " + e.what());
    }
  };
  for (const auto& f : o.files) {
    if (ends_with(f, ".json")) {
      auto p = io::program_from_json(io::parse_json(read_file(f)));
      for (const auto& [n, s] : p.sig.primitives()) prog.sig.declare(n, s);
      for (auto& t : p.terms) prog.terms.push_back(std::move(t));
    } else {
      add_text(f, read_file(f));
    }
  }
  for (std::size_t i = 0; i < o.texts.size(); ++i) add_text("<arg" + std::to_string(i + 1) + ">", terminated(o.texts[i]));
  if (prog.terms.empty()) throw InputError("no terms given");
  return prog;
}

BlProgram load_bl(const Options& o) {
  BlProgram prog;
  auto add_text = [&](const std::string& name, const std::string& text) {
    try {
      auto p = parse_bl_program(text, prog.sig);
      prog.sig = p.sig;
      for (auto& t : p.terms) prog.terms.push_back(std::move(t));
    } catch (const ParseError& e) {
      throw InputError(located(name, text, e));
    } catch (const SortError& e) {
      throw InputError(name + ": " + e.what());
    }
  };
  for (const auto& f : o.files) add_text(f, read_file(f));
  for (std::size_t i = 0; i < o.texts.size(); ++i) add_text("<arg" + std::to_string(i + 1) + ">", o.texts[i]);
  if (prog.terms.empty()) throw InputError("no terms given");
  return prog;
}

std::string label(const std::string& name, std::size_t i) { return name.empty() ? "T" + std::to_string(i + 1) : name; }

std::string node_label(const TermPtr& t) {
  switch (kind(t)) {
    case Kind::Prim:
      return as<Prim>(t).name;
    case Kind::PseudoVar:
      return as<PseudoVar>(t).name;
    case Kind::Comb:
      return "comb" + to_string(as<Comb>(t).seq);
    case Kind::Link:
      return "link" + to_string(as<Link>(t).seq);
    case Kind::Per:
      return "per" + to_string(as<Per>(t).seq);
    case Kind::Dum:
      return "dum" + to_string(as<Dum>(t).seq);
    case Kind::Neg:
      return "not";
    case Kind::Conj:
      return "and";
    case Kind::Ex:
      return "ex" + to_string(as<Ex>(t).seq);
  }
  return "?";
}

void dump(const TermPtr& t, std::size_t depth, std::ostream& o) {
  o << std::string(2 * depth, ' ') << node_label(t) << " : ";
  if (t->sort == kNoSort)
    o << "-";
  else
    o << t->sort;
  o << "\n";
  for (const auto& c : children(t)) dump(c, depth + 1, o);
}

PseudoVarMap identity_map(const std::set<std::string>& vars) {
  PseudoVarMap m;
  for (const auto& v : vars) m.emplace(v, v);
  return m;
}

// ------------------------------------------------------------- subcommands

int cmd_parse(const Options& o, std::ostream& out) {
  auto p = load_cil(o);
  if (o.format == "json") {
    out << io::to_json(p).dump(2) << "\n";
    return kOk;
  }
  for (const auto& [n, t] : p.terms) out << (n.empty() ? "" : "let " + n + " = ") << to_string(t) << ".\n";
  return kOk;
}

int cmd_sort(const Options& o, std::ostream& out) {
  auto p = load_cil(o);
  Json arr = Json::array();
  for (const auto& [n, t] : p.terms) {
    int s = sort_of(t, p.sig);
    if (o.format == "json")
      arr.push_back(Json{{"name", n}, {"term", to_string(t)}, {"sort", s}});
    else
      out << (n.empty() ? "" : n + " : ") << s << "\n";
  }
  if (o.format == "json") out << arr.dump(2) << "\n";
  return kOk;
}

int cmd_normalize(const Options& o, bool trace, std::ostream& out) {
  auto p = load_cil(o);
  Json arr = Json::array();
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const auto& [n, t] = p.terms[i];
    Json steps = Json::array();
    std::size_t count = 0;
    NormalizeOptions nopt;
    nopt.fuel = o.fuel;
    nopt.steps = &count;
    if (trace)
      nopt.on_step = [&](const Step& s) {
        if (o.format == "json")
          steps.push_back(Json{{"rule", to_string(s.rule)},
                               {"path", to_string(s.path)},
                               {"before", to_string(s.before)},
                               {"after", to_string(s.after)}});
        else
          out << "  " << to_string(s.rule) << " at " << to_string(s.path) << ": " << to_string(s.before) << " => "
              << to_string(s.after) << "\n";
      };
    if (trace && o.format != "json") out << label(n, i) << ":\n";
    auto nf = normalize(t, nopt);
    if (o.format == "json") {
      Json e{{"name", n}, {"input", to_string(t)}, {"normal", to_string(nf)}, {"steps", count}};
      if (trace) e["trace"] = steps;
      arr.push_back(e);
    } else {
      out << (trace ? "  = " : (n.empty() ? "" : n + " = ")) << to_string(nf) << "\n";
    }
  }
  if (o.format == "json") out << arr.dump(2) << "\n";
  return kOk;
}

int cmd_equiv(const Options& o, bool validate, std::ostream& out) {
  auto p = load_cil(o);
  if (p.terms.size() != 2) throw InputError("equiv needs exactly two terms, got " + std::to_string(p.terms.size()));
  const auto& a = p.terms[0].second;
  const auto& b = p.terms[1].second;
  NormalizeOptions nopt;
  nopt.fuel = o.fuel;
  auto na = normalize(a, nopt);
  auto nb = normalize(b, nopt);
  bool eq = equal(na, nb);
  if (validate) sense_equiv(a, b, p.sig, true);
  if (o.format == "json") {
    out << Json{{"equivalent", eq},
                {"a", to_string(a)},
                {"b", to_string(b)},
                {"normal_a", to_string(na)},
                {"normal_b", to_string(nb)}}
               .dump(2)
        << "\n";
  } else {
    out << (eq ? "equivalent" : "not equivalent") << "\n";
    out << "  " << to_string(na) << "\n  " << to_string(nb) << "\n";
  }
  return eq ? kOk : kNegative;
}

int cmd_to_bl(const Options& o, std::ostream& out) {
  auto p = load_cil(o);
  Json arr = Json::array();
  for (const auto& [n, t] : p.terms) {
    auto b = j_translate(t, p.sig);
    if (o.format == "json")
      arr.push_back(Json{{"name", n}, {"text", bl::to_string(b)}, {"term", io::to_json(b)}});
    else
      out << (n.empty() ? "" : n + " = ") << bl::to_string(b) << "\n";
  }
  if (o.format == "json") out << arr.dump(2) << "\n";
  return kOk;
}

int cmd_from_bl(const Options& o, std::ostream& out) {
  auto p = load_bl(o);
  CilProgram result;
  result.sig = p.sig;
  for (const auto& t : p.terms) {
    if (!bl::is_abstract(t)) throw InputError("from-bl needs abstracts, got " + bl::to_string(t));
    result.terms.emplace_back("", bealer_decompose(t, p.sig, identity_map(bl::free_vars(t))));
  }
  if (o.format == "json")
    out << io::to_json(result).dump(2) << "\n";
  else
    for (const auto& [n, t] : result.terms) out << to_string(t) << "\n";
  return kOk;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  auto p = load_cil(o);
  Json arr = Json::array();
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const auto& [n, t] = p.terms[i];
    auto b = j_translate(t, p.sig);
    auto c = bealer_decompose(b, p.sig, identity_map(pseudo_vars(t)));
    if (o.format == "json") {
      arr.push_back(Json{{"name", n}, {"bl", bl::to_string(b)}, {"canonical", to_string(c)}, {"tree", io::to_json(c)}});
    } else {
      out << label(n, i) << ": " << bl::to_string(b) << "\n" << tree_dump(c);
    }
  }
  if (o.format == "json") out << arr.dump(2) << "\n";
  return kOk;
}

int cmd_graph(const Options& o, std::ostream& out) {
  auto p = load_cil(o);
  Json arr = Json::array();
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const auto& [n, t] = p.terms[i];
    auto g = concept_graph(t);
    if (o.format == "json") {
      Json vs = Json::array();
      for (const auto& v : g.vertices) {
        static const char* kinds[] = {"root", "internal", "folded", "exists", "bar", "loose", "variable"};
        vs.push_back(Json{{"kind", kinds[static_cast<int>(v.kind)]}, {"label", v.label}});
      }
      Json es = Json::array();
      for (const auto& [a, b] : g.edges) es.push_back(Json::array({a, b}));
      arr.push_back(Json{{"name", label(n, i)}, {"root", g.root}, {"vertices", vs}, {"edges", es}, {"open", g.wires}});
    } else {
      out << to_dot(g, label(n, i));
    }
  }
  if (o.format == "json") out << arr.dump(2) << "\n";
  return kOk;
}

model::ModelConfig load_config(const std::string& path) {
  return io::model_config_from_json(io::parse_json(read_file(path)));
}

int cmd_model(const Options& o, bool valid, const std::string& config, const std::vector<std::string>& suites,
              std::size_t max_instances, std::ostream& out) {
  model::Model m(load_config(config));
  std::vector<model::Report> reports;
  if (valid) {
    model::HarnessOptions h;
    h.seed = o.seed;
    h.max_instances = max_instances;
    std::vector<model::Suite> which;
    for (const auto& s : suites) which.push_back(model::suite_from_string(s));
    if (which.empty()) which = model::all_suites();
    for (auto s : which) reports.push_back(model::validity_harness(m, s, h));
  } else {
    reports.push_back(model::check_model_conditions(m));
  }
  bool ok = std::all_of(reports.begin(), reports.end(), [](const model::Report& r) { return r.ok(); });
  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(io::to_json(r));
    out << Json{{"carrier", m.carrier().size()}, {"truncated", m.carrier().truncated()}, {"ok", ok}, {"reports", arr}}
               .dump(2)
        << "\n";
  } else {
    out << "carrier: " << m.carrier().size() << " elements" << (m.carrier().truncated() ? " (truncated)" : "")
        << ", " << m.extension_count() << " extension(s)\n";
    for (const auto& r : reports) out << r.to_text();
  }
  return ok ? kOk : kNegative;
}

int cmd_demo(const Options& o, const std::string& dir, std::size_t trials, std::ostream& out) {
  auto corpus = demo::load_corpus(dir);
  model::Model m(corpus.model);
  bool ok = true;
  Json infs = Json::array();
  if (o.format != "json")
    out << "Inferences, evaluated in " << dir << " (" << m.carrier().size() << " carrier elements)\n\n";
  for (std::size_t i = 0; i < corpus.inferences.size(); ++i) {
    const auto& inf = corpus.inferences[i];
    auto r = demo::evaluate(inf, m);
    auto sw = demo::random_sweep(inf, corpus, trials, o.seed + static_cast<unsigned>(i));
    bool valid = inf.expect == demo::Inference::Expect::Valid;
    bool sweep_ok = !valid || (sw.premise_models > 0 && sw.counterexamples == 0);
    ok = ok && r.as_expected && sweep_ok;
    if (o.format == "json") {
      infs.push_back(Json{{"name", inf.name},
                          {"expect", valid ? "valid" : "countermodel"},
                          {"as_expected", r.as_expected && sweep_ok},
                          {"conclusion_holds", r.conclusion.holds},
                          {"sweep", Json{{"trials", sw.trials},
                                         {"carrier", sw.carrier_size},
                                         {"premise_models", sw.premise_models},
                                         {"counterexamples", sw.counterexamples}}}});
      continue;
    }
    if (!inf.text.empty()) out << "# " << inf.text << "\n";
    out << r.to_text();
    out << "  random: " << sw.trials << " models over " << sw.carrier_size << " elements, premises held in "
        << sw.premise_models << ", counterexamples " << sw.counterexamples << (sweep_ok ? "" : "   FAIL") << "\n\n";
  }
  Json pairs = Json::array();
  if (!corpus.equivalences.empty() && o.format != "json") out << "Senses\n";
  for (const auto& e : corpus.equivalences) {
    auto a = parse_cil_term(e.a, corpus.cil_sig);
    auto b = parse_cil_term(e.b, corpus.cil_sig);
    bool eq = sense_equiv(a, b, corpus.cil_sig, true);
    bool good = eq == e.expect;
    ok = ok && good;
    if (o.format == "json")
      pairs.push_back(Json{{"a", e.a}, {"b", e.b}, {"equivalent", eq}, {"as_expected", good}});
    else
      out << (good ? "ok    " : "FAIL  ") << e.a << (eq ? "  ~  " : "  !~  ") << e.b << "\n";
  }
  if (o.format == "json")
    out << Json{{"ok", ok}, {"inferences", infs}, {"senses", pairs}}.dump(2) << "\n";
  else
    out << "\n" << (ok ? "demo: all as expected" : "demo: FAILED") << "\n";
  return ok ? kOk : kNegative;
}

}  // namespace

std::string tree_dump(const TermPtr& t) {
  std::ostringstream o;
  dump(t, 0, o);
  return o.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Terms, senses and models of concept intensional logic", "cil"};
  app.require_subcommand(1, 1);
  Options o;
  // Accepted before or after the subcommand name.
  auto globals = [&](CLI::App* a) {
    a->add_option("--fuel", o.fuel, "Rewrite step limit")->capture_default_str();
    a->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    a->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();
    return a;
  };
  globals(&app);

  std::vector<CLI::App*> term_commands;
  auto inputs = [&](CLI::App* sub) {
    globals(sub);
    sub->add_option("-f,--file", o.files, "Input file (.cil, .bl or .json)")->check(CLI::ExistingFile);
    // Bare arguments are program text; they are taken verbatim, since a
    // BL abstract such as [P(x)] would otherwise be read as a list.
    sub->allow_extras();
    sub->footer("Further arguments are declarations and terms, read in order after the files.");
    term_commands.push_back(sub);
    return sub;
  };
  auto parse = inputs(app.add_subcommand("parse", "Parse and print terms"));
  auto sort = inputs(app.add_subcommand("sort", "Print the sort of each term"));
  auto norm = inputs(app.add_subcommand("normalize", "Rewrite to canonical form"));
  bool trace = false;
  norm->add_flag("--trace", trace, "Print each rewrite step");
  auto equiv = inputs(app.add_subcommand("equiv", "Sense equivalence of two terms"));
  bool validate = false;
  equiv->add_flag("--validate", validate, "Cross-check with the translation oracle");
  auto to_bl = inputs(app.add_subcommand("to-bl", "Translate terms to BL abstracts"));
  auto from_bl = inputs(app.add_subcommand("from-bl", "Decompose BL abstracts into terms"));
  auto decompose = inputs(app.add_subcommand("decompose", "Dump the decomposition tree of each term"));
  auto graph = inputs(app.add_subcommand("graph", "Concept-graph of each term"));
  bool dot_flag = false;
  graph->add_flag("--dot", dot_flag, "Graphviz output (the default)");

  auto model = app.add_subcommand("model", "Term-model checks");
  globals(model);
  model->require_subcommand(1, 1);
  std::string config;
  std::vector<std::string> suites;
  std::size_t max_instances = 150;
  auto check = model->add_subcommand("check", "Model conditions");
  auto valid = model->add_subcommand("valid", "Validity harness");
  for (auto* s : {check, valid}) {
    globals(s);
    s->add_option("--config", config, "Model configuration (JSON)")->required()->check(CLI::ExistingFile);
  }
  valid->add_option("--suite", suites, "fol, eq, nec, s5, subst or lemmas; all by default");
  valid->add_option("--max-instances", max_instances, "Instances per scheme")->capture_default_str();

  auto demo_cmd = app.add_subcommand("demo", "Run the bundled inference corpus");
  globals(demo_cmd);
  std::string demo_dir = CIL_DEMO_DIR;
  std::size_t trials = 200;
  demo_cmd->add_option("--dir", demo_dir, "Corpus directory")->capture_default_str();
  demo_cmd->add_option("--trials", trials, "Random models per inference")->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  for (auto* sub : term_commands)
    if (sub->parsed()) o.texts = sub->remaining();

  try {
    if (*parse) return cmd_parse(o, out);
    if (*sort) return cmd_sort(o, out);
    if (*norm) return cmd_normalize(o, trace, out);
    if (*equiv) return cmd_equiv(o, validate, out);
    if (*to_bl) return cmd_to_bl(o, out);
    if (*from_bl) return cmd_from_bl(o, out);
    if (*decompose) return cmd_decompose(o, out);
    if (*graph) return cmd_graph(o, out);
    if (*check || *valid) return cmd_model(o, valid->parsed(), config, suites, max_instances, out);
    if (*demo_cmd) return cmd_demo(o, demo_dir, trials, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SortError& e) {
    err << "sort error: " << e.what() << "\n";
    return kInputError;
  } catch (const SeqError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const io::SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kInputError;
  } catch (const model::ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return kInputError;
  } catch (const bl::BlError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const RewriteError& e) {
    err << "rewrite: " << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace cil::cli
