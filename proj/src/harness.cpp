#include <functional>
#include <random>
#include <sstream>

#include "cil/model.hpp"
#include "cil/translate.hpp"

namespace cil::model {

namespace {

using bl::FormulaPtr;

// One scheme being checked; instance() records the outcome of one instance.
struct Scheme {
  Check c;
  explicit Scheme(std::string name) { c.name = std::move(name); }
  void instance(bool ok, const std::function<std::string()>& witness) {
    ++c.instances;
    if (ok) return;
    if (c.failures++ == 0) c.witness = witness();
  }
};

class Pools {
 public:
  Pools(const Model& m, const HarnessOptions& opt) : m_(m), rng_(opt.seed), max_(opt.max_instances) {
    truth_ = bl::abstract(bl::pred(bl::kTruth));
    for (const auto& e : m.carrier().elements()) {
      if (e.sort == 0) sentences_.push_back(bl::as_abstract(e.term).scope);
      if (e.sort == 1) open1_.push_back(open(e.term, {"u"}));
      if (e.sort == 2) open2_.push_back(open(e.term, {"u", "w"}));
    }
    sentences_.push_back(bl::pred(bl::kTruth));
    auto u = bl::var("u"), w = bl::var("w");
    open1_.push_back(bl::eq_n(u, truth_));
    open2_.push_back(bl::eq_n(u, w));
    open2_.push_back(bl::eq_i(u, w));
    // Compound formulas over the atomic ones.
    auto atoms = sentences_;
    auto o1 = open1_, o2 = open2_;
    auto at = [](const std::vector<FormulaPtr>& v, std::size_t i) { return v[i % v.size()]; };
    for (std::size_t i = 0; i < 3; ++i) {
      sentences_.push_back(bl::neg(at(atoms, i)));
      sentences_.push_back(bl::conj(at(atoms, i), at(atoms, i + 1)));
      sentences_.push_back(bl::exists("u", at(o1, i)));
      sentences_.push_back(bl::forall("u", at(o1, i + 1)));
      sentences_.push_back(box(at(atoms, i + 2)));
      open1_.push_back(bl::neg(at(o1, i)));
      open1_.push_back(bl::conj(at(o1, i), at(atoms, i)));
      open1_.push_back(bl::exists("w", at(o2, i)));
      open1_.push_back(box(at(o1, i + 1)));
      open2_.push_back(bl::conj(at(o1, i), inst(at(o1, i + 1), "u", w)));
      open2_.push_back(bl::neg(at(o2, i)));
    }
  }

  static FormulaPtr open(const bl::TermPtr& abs, const std::vector<std::string>& names) {
    auto fr = bl::FreshSupply::above(abs);
    return bl::as_abstract(bl::rename_vseq(abs, names, fr)).scope;
  }

  // All index combinations when there are few, otherwise a random sample.
  std::vector<std::vector<std::size_t>> combos(const std::vector<std::size_t>& sizes) {
    std::vector<std::vector<std::size_t>> out;
    std::size_t total = 1;
    for (auto s : sizes) {
      if (s == 0) return out;
      total = total > max_ ? total : total * s;
    }
    if (total <= max_) {
      std::vector<std::size_t> idx(sizes.size(), 0);
      for (;;) {
        out.push_back(idx);
        std::size_t k = idx.size();
        while (k > 0 && ++idx[k - 1] == sizes[k - 1]) idx[--k] = 0;
        if (k == 0) break;
      }
      return out;
    }
    for (std::size_t n = 0; n < max_; ++n) {
      std::vector<std::size_t> idx;
      for (auto s : sizes) idx.push_back(std::uniform_int_distribution<std::size_t>(0, s - 1)(rng_));
      out.push_back(idx);
    }
    return out;
  }

  FormulaPtr box(const FormulaPtr& f) const { return bl::eq_n(bl::abstract(f), truth_); }
  FormulaPtr dia(const FormulaPtr& f) const { return bl::neg(box(bl::neg(f))); }
  static FormulaPtr inst(const FormulaPtr& f, const std::string& v, const bl::TermPtr& t) {
    bl::FreshSupply fr;
    fr.reserve(f);
    fr.reserve(t);
    return bl::substitute(f, {{v, t}}, fr);
  }
  // True in every extension.
  bool valid(const FormulaPtr& f) const {
    for (std::size_t h = 0; h < m_.extension_count(); ++h)
      if (!m_.satisfies_in(h, f)) return false;
    return true;
  }

  const Model& m_;
  std::mt19937 rng_;
  std::size_t max_;
  bl::TermPtr truth_;
  std::vector<FormulaPtr> sentences_, open1_, open2_;
};

std::string str(const FormulaPtr& f) { return bl::to_string(f); }

std::vector<Check> fol_suite(Pools& p) {
  std::vector<Check> out;
  const auto& S = p.sentences_;
  const auto& D = p.m_.domain();
  {
    Scheme a1("A1 phi -> (psi -> phi)"), a2("A2 distribution of ->"), a3("A3 contraposition");
    for (const auto& i : p.combos({S.size(), S.size(), S.size()})) {
      const auto &f = S[i[0]], &g = S[i[1]], &h = S[i[2]];
      auto x1 = bl::implies(f, bl::implies(g, f));
      auto x2 = bl::implies(bl::implies(f, bl::implies(g, h)), bl::implies(bl::implies(f, g), bl::implies(f, h)));
      auto x3 = bl::implies(bl::implies(bl::neg(f), bl::neg(g)), bl::implies(g, f));
      a1.instance(p.valid(x1), [&] { return str(x1); });
      a2.instance(p.valid(x2), [&] { return str(x2); });
      a3.instance(p.valid(x3), [&] { return str(x3); });
    }
    out.push_back(a1.c);
    out.push_back(a2.c);
    out.push_back(a3.c);
  }
  {
    Scheme mp("modus ponens");
    for (const auto& i : p.combos({S.size(), S.size()})) {
      auto f = S[i[0]], g = S[i[1]];
      bool prem = p.m_.satisfies(f) && p.m_.satisfies(bl::implies(f, g));
      mp.instance(!prem || p.m_.satisfies(g), [&] { return str(f) + " ; " + str(bl::implies(f, g)); });
    }
    out.push_back(mp.c);
  }
  const auto& O = p.open1_;
  {
    Scheme q1("all x. phi(x) -> phi(t)");
    for (const auto& i : p.combos({O.size(), D.size()})) {
      auto f = bl::implies(bl::forall("u", O[i[0]]), Pools::inst(O[i[0]], "u", D[i[1]].term));
      q1.instance(p.valid(f), [&] { return str(f); });
    }
    out.push_back(q1.c);
  }
  {
    Scheme q2("all x. (phi -> psi(x)) -> (phi -> all x. psi(x))");
    for (const auto& i : p.combos({S.size(), O.size()})) {
      const auto &f = S[i[0]], &g = O[i[1]];
      auto x = bl::implies(bl::forall("u", bl::implies(f, g)), bl::implies(f, bl::forall("u", g)));
      q2.instance(p.valid(x), [&] { return str(x); });
    }
    out.push_back(q2.c);
  }
  {
    Scheme gen("generalisation");
    for (const auto& i : p.combos({O.size()})) {
      const auto& f = O[i[0]];
      bool all = true;
      for (const auto& d : D) all = all && p.m_.satisfies_under(f, {{"u", d.term}});
      gen.instance(!all || p.m_.satisfies(bl::forall("u", f)), [&] { return str(f); });
    }
    out.push_back(gen.c);
  }
  return out;
}

std::vector<Check> eq_suite(Pools& p) {
  std::vector<Check> out;
  const auto& D = p.m_.domain();
  const auto& O = p.open1_;
  {
    Scheme refl("x =i x");
    for (const auto& d : D) {
      auto f = bl::eq_i(d.term, d.term);
      refl.instance(p.valid(f), [&] { return str(f); });
    }
    out.push_back(refl.c);
  }
  {
    Scheme leib("Leibniz for =i");
    for (const auto& i : p.combos({D.size(), D.size(), O.size()})) {
      for (auto y : {i[1], i[0]}) {
        const auto &a = D[i[0]].term, &b = D[y].term;
        auto f = bl::implies(bl::eq_i(a, b), bl::implies(Pools::inst(O[i[2]], "u", a), Pools::inst(O[i[2]], "u", b)));
        leib.instance(p.valid(f), [&] { return str(f); });
      }
    }
    out.push_back(leib.c);
  }
  {
    Scheme r("=n reflexive"), s("=n symmetric"), t("=n transitive"), in("x =i y -> x =n y");
    for (const auto& i : p.combos({D.size(), D.size(), D.size()})) {
      const auto &a = D[i[0]].term, &b = D[i[1]].term, &c = D[i[2]].term;
      auto fr = bl::eq_n(a, a);
      auto fs = bl::implies(bl::eq_n(a, b), bl::eq_n(b, a));
      auto ft = bl::implies(bl::conj(bl::eq_n(a, b), bl::eq_n(b, c)), bl::eq_n(a, c));
      auto fi = bl::implies(bl::eq_i(a, b), bl::eq_n(a, b));
      r.instance(p.valid(fr), [&] { return str(fr); });
      s.instance(p.valid(fs), [&] { return str(fs); });
      t.instance(p.valid(ft), [&] { return str(ft); });
      in.instance(p.valid(fi), [&] { return str(fi); });
    }
    out.push_back(r.c);
    out.push_back(s.c);
    out.push_back(t.c);
    out.push_back(in.c);
  }
  {
    Scheme ar("t =/=n s for different arities");
    const auto& E = p.m_.carrier().elements();
    for (const auto& i : p.combos({E.size(), E.size()})) {
      if (E[i[0]].sort == E[i[1]].sort) continue;
      auto f = bl::neg(bl::eq_n(E[i[0]].term, E[i[1]].term));
      ar.instance(p.valid(f), [&] { return str(f); });
    }
    out.push_back(ar.c);
  }
  {
    Scheme tt("all x y. [x =i x] =n [y =i y]");
    auto f = bl::forall("u", bl::forall("w", bl::eq_n(bl::abstract(bl::eq_i(bl::var("u"), bl::var("u"))),
                                                      bl::abstract(bl::eq_i(bl::var("w"), bl::var("w"))))));
    tt.instance(p.valid(f), [&] { return str(f); });
    out.push_back(tt.c);
  }
  return out;
}

std::vector<Check> nec_suite(Pools& p) {
  std::vector<Check> out;
  const auto& S = p.sentences_;
  const auto& O = p.open1_;
  const auto& O2 = p.open2_;
  {
    Scheme r4("rule 4: [phi]_x =n [psi]_x <-> box all x. phi <-> psi");
    for (const auto& i : p.combos({O.size(), O.size()})) {
      const auto &f = O[i[0]], &g = O[i[1]];
      auto x = bl::iff(bl::eq_n(bl::abstract(f, {"u"}), bl::abstract(g, {"u"})),
                       p.box(bl::forall("u", bl::iff(f, g))));
      r4.instance(p.valid(x), [&] { return str(x); });
    }
    for (const auto& f : O) {
      auto x = bl::iff(bl::eq_n(bl::abstract(f, {"u"}), bl::abstract(f, {"u"})),
                       p.box(bl::forall("u", bl::iff(f, f))));
      r4.instance(p.valid(x), [&] { return str(x); });
    }
    out.push_back(r4.c);
  }
  {
    Scheme r4c("[phi] =n [psi] <-> box (phi <-> psi)");
    for (const auto& i : p.combos({S.size(), S.size()})) {
      const auto &f = S[i[0]], &g = S[i[1]];
      auto x = bl::iff(bl::eq_n(bl::abstract(f), bl::abstract(g)), p.box(bl::iff(f, g)));
      r4c.instance(p.valid(x), [&] { return str(x); });
    }
    out.push_back(r4c.c);
  }
  {
    Scheme r4v("all v. [phi]_x =n [psi]_x <-> [phi]_xv =n [psi]_xv");
    for (const auto& i : p.combos({O2.size(), O2.size()})) {
      const auto &f = O2[i[0]], &g = O2[i[1]];
      auto x = bl::iff(bl::forall("w", bl::eq_n(bl::abstract(f, {"u"}), bl::abstract(g, {"u"}))),
                       bl::eq_n(bl::abstract(f, {"u", "w"}), bl::abstract(g, {"u", "w"})));
      r4v.instance(p.valid(x), [&] { return str(x); });
    }
    out.push_back(r4v.c);
  }
  {
    Scheme tf("T not ~n F");
    auto x = bl::neg(bl::eq_n(p.truth_, bl::abstract(bl::neg(bl::pred(bl::kTruth)))));
    tf.instance(p.valid(x), [&] { return str(x); });
    out.push_back(tf.c);
  }
  return out;
}

std::vector<Check> s5_suite(Pools& p) {
  std::vector<Check> out;
  const auto& S = p.sentences_;
  const auto& D = p.m_.domain();
  Scheme k("K"), t("T"), four("4"), five("5"), b("B"), nec("necessitation"), sem("box is truth in every extension");
  for (const auto& i : p.combos({S.size(), S.size()})) {
    const auto &f = S[i[0]], &g = S[i[1]];
    auto xk = bl::implies(p.box(bl::implies(f, g)), bl::implies(p.box(f), p.box(g)));
    k.instance(p.valid(xk), [&] { return str(xk); });
  }
  for (const auto& f : S) {
    auto xt = bl::implies(p.box(f), f);
    auto x4 = bl::implies(p.box(f), p.box(p.box(f)));
    auto x5 = bl::implies(p.dia(f), p.box(p.dia(f)));
    auto xb = bl::implies(f, p.box(p.dia(f)));
    t.instance(p.valid(xt), [&] { return str(xt); });
    four.instance(p.valid(x4), [&] { return str(x4); });
    five.instance(p.valid(x5), [&] { return str(x5); });
    b.instance(p.valid(xb), [&] { return str(xb); });
    bool everywhere = p.valid(f);
    nec.instance(!everywhere || p.valid(p.box(f)), [&] { return str(f); });
    sem.instance(p.m_.satisfies(p.box(f)) == everywhere, [&] { return str(f); });
  }
  for (auto* s : {&k, &t, &four, &five, &b, &nec, &sem}) out.push_back(s->c);
  Scheme rep("x =/=n y -> box x =/=n y");
  for (const auto& i : p.combos({D.size(), D.size()})) {
    auto ne = bl::neg(bl::eq_n(D[i[0]].term, D[i[1]].term));
    auto x = bl::implies(ne, p.box(ne));
    rep.instance(p.valid(x), [&] { return str(x); });
  }
  out.push_back(rep.c);
  return out;
}

void predicates_in(const FormulaPtr& f, std::set<std::string>& out);
void predicates_in(const bl::TermPtr& t, std::set<std::string>& out) {
  if (bl::is_abstract(t)) predicates_in(bl::as_abstract(t).scope, out);
}
void predicates_in(const FormulaPtr& f, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, bl::Pred>) {
          out.insert(n.name);
          for (const auto& a : n.args) predicates_in(a, out);
        } else if constexpr (std::is_same_v<N, bl::And>) {
          predicates_in(n.left, out);
          predicates_in(n.right, out);
        } else {
          predicates_in(n.body, out);
        }
      },
      f->node);
}

std::vector<Check> subst_suite(Pools& p, const HarnessOptions& opt) {
  const auto& cfg = p.m_.config();
  Scheme r9("rule 9 reinterpretation"), r9t("rule 9 truth transfer");
  std::vector<FormulaPtr> contexts;
  for (const auto& f : p.open1_) contexts.push_back(f);
  auto v = bl::var("u");
  contexts.push_back(bl::eq_n(v, p.truth_));
  contexts.push_back(bl::neg(bl::eq_i(v, p.truth_)));
  contexts.push_back(bl::exists("y", bl::eq_n(v, bl::var("y"))));
  for (const auto& d : p.m_.domain()) {
    if (contexts.size() > 24) break;
    contexts.push_back(bl::eq_n(v, d.term));
  }
  std::size_t budget = opt.max_instances;
  for (const auto& [name, sort] : cfg.sig.primitives()) {
    if (sort < 0 || name == bl::kEqI || name == bl::kEqN || name == bl::kTruth) continue;
    std::vector<std::string> xs;
    std::vector<bl::TermPtr> xv;
    for (int i = 0; i < sort; ++i) {
      xs.push_back("x" + std::to_string(i + 1));
      xv.push_back(bl::var(xs.back()));
    }
    auto elementary = bl::abstract(bl::pred(name, xv), xs);
    for (const auto& e : p.m_.carrier().of_sort(sort)) {
      std::set<std::string> used;
      predicates_in(e.term, used);
      if (used.count(name)) continue;
      auto cfg2 = cfg;
      cfg2.interpretation[name] = e.term;
      Model m2(cfg2);
      for (const auto& phi : contexts) {
        if (budget == 0) break;
        std::set<std::string> in_phi;
        predicates_in(phi, in_phi);
        if (in_phi.count(name)) continue;
        --budget;
        auto with_p = Pools::inst(phi, "u", elementary);
        auto with_psi = Pools::inst(phi, "u", e.term);
        auto lhs = m2.interpret(with_p);
        auto rhs = p.m_.interpret(with_psi);
        r9.instance(bl::alpha_eq(lhs, rhs), [&] { return str(with_p) + " vs " + str(with_psi); });
        bool same = true;
        for (std::size_t h = 0; h < p.m_.extension_count(); ++h)
          same = same && m2.satisfies_in(h, with_p) == p.m_.satisfies_in(h, with_psi);
        r9t.instance(same, [&] { return str(with_p) + " vs " + str(with_psi); });
      }
    }
  }
  return {r9.c, r9t.c};
}

std::vector<Check> lemmas_suite(Pools& p) {
  std::vector<Check> out;
  const auto& m = p.m_;
  const auto& D = m.domain();
  const auto& O = p.open1_;
  const auto& S = p.sentences_;
  {
    Scheme qs("ex x. phi(x) iff some reassignment satisfies phi(x)"), qa("all x. phi(x) iff every reassignment does");
    for (const auto& f : O) {
      bool some = false, every = true;
      for (const auto& d : D) {
        bool s = m.satisfies_under(f, {{"u", d.term}});
        some = some || s;
        every = every && s;
      }
      qs.instance(m.satisfies(bl::exists("u", f)) == some, [&] { return str(f); });
      qa.instance(m.satisfies(bl::forall("u", f)) == every, [&] { return str(f); });
    }
    out.push_back(qs.c);
    out.push_back(qa.c);
  }
  {
    Scheme sl("substitution lemma");
    for (const auto& i : p.combos({p.open2_.size(), D.size()})) {
      const auto& f = p.open2_[i[0]];
      const auto& t = D[i[1]];
      auto shifted = m.interpret(bl::abstract(f, {"w"}), [&] {
        auto a = m.config().assignment;
        a["u"] = t.term;
        return a;
      }());
      auto direct = m.interpret(bl::abstract(Pools::inst(f, "u", t.term), {"w"}));
      bool ok = bl::alpha_eq(shifted, direct);
      auto es = make_element(shifted), ed = make_element(direct);
      for (std::size_t h = 0; h < m.extension_count() && ok; ++h)
        for (const auto& d : D) ok = ok && m.holds(h, es, {d}) == m.holds(h, ed, {d});
      sl.instance(ok, [&] { return str(f) + " with u := " + bl::to_string(t.term); });
    }
    out.push_back(sl.c);
  }
  {
    Scheme at("H M[P(t)] iff (M t) in H I[P(x)]");
    for (const auto& [name, sort] : m.config().sig.primitives()) {
      if (sort < 0 || sort > 2) continue;
      std::vector<std::string> xs;
      std::vector<bl::TermPtr> xv;
      for (int i = 0; i < sort; ++i) {
        xs.push_back("x" + std::to_string(i + 1));
        xv.push_back(bl::var(xs.back()));
      }
      auto it = m.config().interpretation.find(name);
      auto ip = make_element(it != m.config().interpretation.end() ? it->second : bl::abstract(bl::pred(name, xv), xs));
      std::vector<std::size_t> sizes(static_cast<std::size_t>(sort), D.size());
      for (const auto& i : p.combos(sizes)) {
        std::vector<bl::TermPtr> args;
        std::vector<Element> tuple;
        for (auto k : i) {
          args.push_back(D[k].term);
          tuple.push_back(D[k]);
        }
        auto f = bl::pred(name, args);
        bool ok = true;
        for (std::size_t h = 0; h < m.extension_count(); ++h) ok = ok && m.satisfies_in(h, f) == m.holds(h, ip, tuple);
        at.instance(ok, [&] { return str(f); });
      }
    }
    out.push_back(at.c);
  }
  {
    Scheme hi("H_i derived from H_0"), ev("decomposition and saturation evaluators agree");
    const auto& E = m.carrier().elements();
    for (const auto& i : p.combos({E.size(), D.size(), D.size()})) {
      const auto& d = E[i[0]];
      if (d.sort < 0 || d.sort > 2) continue;
      std::vector<Element> t;
      std::vector<bl::TermPtr> terms;
      for (int k = 0; k < d.sort; ++k) {
        t.push_back(D[i[1 + k]]);
        terms.push_back(D[i[1 + k]].term);
      }
      auto sat = make_element(saturate(d.term, terms));
      bool ok_h = true, ok_e = true;
      for (std::size_t h = 0; h < m.extension_count(); ++h) {
        bool direct = m.holds(h, d, t);
        ok_h = ok_h && direct == m.holds(h, sat, {});
        ok_e = ok_e && direct == m.holds(h, d, t, Evaluator::Saturation);
      }
      hi.instance(ok_h, [&] { return bl::to_string(sat.term); });
      ev.instance(ok_e, [&] { return bl::to_string(sat.term); });
    }
    out.push_back(hi.c);
    out.push_back(ev.c);
  }
  {
    Scheme ib("[phi]_x =i [psi]_x -> all x. phi <-> psi");
    for (const auto& i : p.combos({O.size(), O.size()})) {
      for (bool variant : {false, true}) {
        const auto& f = O[i[0]];
        auto g = variant ? Pools::inst(f, "u", bl::var("w")) : O[i[1]];
        auto gv = variant ? std::vector<std::string>{"w"} : std::vector<std::string>{"u"};
        auto x = bl::implies(bl::eq_i(bl::abstract(f, {"u"}), bl::abstract(g, gv)),
                             bl::forall("u", bl::iff(f, variant ? f : g)));
        ib.instance(p.valid(x), [&] { return str(x); });
      }
    }
    out.push_back(ib.c);
  }
  {
    Scheme me("valid phi <-> psi gives [phi] =n [psi]");
    for (const auto& i : p.combos({S.size(), S.size()})) {
      const auto &f = S[i[0]], &g = S[i[1]];
      bool eq = p.valid(bl::iff(f, g));
      me.instance(!eq || m.satisfies(bl::eq_n(bl::abstract(f), bl::abstract(g))), [&] { return str(f) + " , " + str(g); });
    }
    out.push_back(me.c);
  }
  return out;
}

}  // namespace

bool Report::ok() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << title << "\n";
  for (const auto& c : checks) {
    os << "  [" << (c.pass() ? "PASS" : "FAIL") << "] " << c.name << " (" << c.instances << " instances";
    if (c.failures) os << ", " << c.failures << " failures";
    os << ")\n";
    if (!c.witness.empty()) os << "         witness: " << c.witness << "\n";
  }
  return os.str();
}

Report check_model_conditions(const Model& m) {
  Report r;
  r.title = "model conditions (carrier " + std::to_string(m.carrier().size()) + " elements" +
            (m.carrier().truncated() ? ", truncated" : "") + ", " + std::to_string(m.extension_count()) +
            " extensions)";
  const auto& E = m.carrier().elements();
  HarnessOptions opt;
  opt.max_instances = 400;
  Pools p(m, opt);

  Scheme n("(N) d ~n d' iff all H. Hd = Hd'"), refl("=n reflexive"), sym("=n symmetric"), tr("=n transitive"),
      eqi("eq_I forced"), truth("Truth holds in every extension"), tf("T not ~n F"),
      s_inj("(S) decomposition injective"), s_fin("(S) decomposition well-founded");
  std::vector<bl::TermPtr> xv{bl::var("x1"), bl::var("x2")};
  auto eqi_el = make_element(bl::abstract(bl::pred(bl::kEqI, xv), {"x1", "x2"}));
  for (const auto& i : p.combos({E.size(), E.size()})) {
    const auto &a = E[i[0]], &b = E[i[1]];
    bool computed = m.satisfies(bl::eq_n(a.term, b.term));
    bool agree = a.sort == b.sort && (a.sort >= 0 || a.key == b.key);
    if (agree && a.sort >= 0) {
      std::vector<std::size_t> sizes(static_cast<std::size_t>(a.sort), m.domain().size());
      for (std::size_t h = 0; h < m.extension_count() && agree; ++h) {
        std::vector<std::size_t> idx(sizes.size(), 0);
        for (;;) {
          std::vector<Element> t;
          for (auto k : idx) t.push_back(m.domain()[k]);
          if (m.holds(h, a, t, Evaluator::Saturation) != m.holds(h, b, t, Evaluator::Saturation)) {
            agree = false;
            break;
          }
          std::size_t k = idx.size();
          while (k > 0 && ++idx[k - 1] == sizes[k - 1]) idx[--k] = 0;
          if (k == 0) break;
        }
      }
    }
    n.instance(computed == agree, [&] { return bl::to_string(a.term) + " , " + bl::to_string(b.term); });
    sym.instance(computed == m.eq_n(b, a), [&] { return bl::to_string(a.term) + " , " + bl::to_string(b.term); });
    for (std::size_t h = 0; h < m.extension_count(); ++h)
      eqi.instance(m.holds(h, eqi_el, {a, b}) == (a.key == b.key),
                   [&] { return bl::to_string(a.term) + " , " + bl::to_string(b.term); });
  }
  for (const auto& a : E) refl.instance(m.eq_n(a, a), [&] { return bl::to_string(a.term); });
  for (const auto& i : p.combos({E.size(), E.size(), E.size()})) {
    const auto &a = E[i[0]], &b = E[i[1]], &c = E[i[2]];
    tr.instance(!(m.eq_n(a, b) && m.eq_n(b, c)) || m.eq_n(a, c), [&] { return bl::to_string(b.term); });
  }
  auto t_el = make_element(p.truth_);
  for (std::size_t h = 0; h < m.extension_count(); ++h)
    truth.instance(m.holds(h, t_el, {}), [&] { return m.config().extensions[h].name; });
  tf.instance(!m.eq_n(t_el, make_element(bl::abstract(bl::neg(bl::pred(bl::kTruth))))), [] { return "T ~n F"; });

  std::map<std::string, std::string> seen;
  for (const auto& e : E) {
    if (e.sort < 0) continue;
    auto d = m.decomposition(e);
    auto text = to_string(d);
    auto [it, fresh] = seen.emplace(text, e.key);
    s_inj.instance(fresh || it->second == e.key, [&] { return text; });
    bool back = bl::alpha_eq(j_translate(d, m.config().sig), e.term);
    s_fin.instance(back && depth(d) <= 4 * (bl::depth(e.term) + 2) + 8, [&] { return bl::to_string(e.term); });
  }
  for (auto* s : {&n, &refl, &sym, &tr, &eqi, &truth, &tf, &s_inj, &s_fin}) r.checks.push_back(s->c);
  return r;
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> s{Suite::Fol, Suite::Eq, Suite::Nec, Suite::S5, Suite::Subst, Suite::Lemmas};
  return s;
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Fol: return "fol";
    case Suite::Eq: return "eq";
    case Suite::Nec: return "nec";
    case Suite::S5: return "s5";
    case Suite::Subst: return "subst";
    case Suite::Lemmas: return "lemmas";
  }
  return "?";
}

Suite suite_from_string(const std::string& s) {
  for (auto x : all_suites())
    if (to_string(x) == s) return x;
  throw ModelError("unknown suite '" + s + "' (fol, eq, nec, s5, subst, lemmas)");
}

Report validity_harness(const Model& m, Suite s, const HarnessOptions& opt) {
  Pools p(m, opt);
  Report r;
  r.title = "suite " + to_string(s);
  switch (s) {
    case Suite::Fol: r.checks = fol_suite(p); break;
    case Suite::Eq: r.checks = eq_suite(p); break;
    case Suite::Nec: r.checks = nec_suite(p); break;
    case Suite::S5: r.checks = s5_suite(p); break;
    case Suite::Subst: r.checks = subst_suite(p, opt); break;
    case Suite::Lemmas: r.checks = lemmas_suite(p); break;
  }
  return r;
}

}  // namespace cil::model
