#include "cil/bl.hpp"

#include <algorithm>
#include <sstream>

namespace cil::bl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

FormulaPtr mk(Pred p) { return std::make_shared<const Formula>(Formula{std::move(p)}); }
FormulaPtr mk(Not p) { return std::make_shared<const Formula>(Formula{std::move(p)}); }
FormulaPtr mk(And p) { return std::make_shared<const Formula>(Formula{std::move(p)}); }
FormulaPtr mk(Exists p) { return std::make_shared<const Formula>(Formula{std::move(p)}); }
FormulaPtr mk(Forall p) { return std::make_shared<const Formula>(Formula{std::move(p)}); }

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

std::size_t index_of(const std::vector<std::string>& xs, const std::string& x) {
  auto it = std::find(xs.begin(), xs.end(), x);
  return it == xs.end() ? xs.size() : static_cast<std::size_t>(it - xs.begin());
}

bool contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace

// ----------------------------------------------------------------- builders

TermPtr var(std::string name) {
  if (name.empty()) throw BlError("empty variable name");
  return std::make_shared<const Term>(Term{Var{std::move(name)}});
}
TermPtr constant(std::string name) {
  if (name.empty()) throw BlError("empty constant name");
  return std::make_shared<const Term>(Term{Const{std::move(name)}});
}
TermPtr abstract(FormulaPtr scope, std::vector<std::string> vseq) {
  if (!scope) throw BlError("abstract without scope");
  std::set<std::string> seen;
  for (const auto& v : vseq)
    if (!seen.insert(v).second) throw BlError("repeated variable " + v + " in v-sequence");
  return std::make_shared<const Term>(Term{Abstract{std::move(scope), std::move(vseq)}});
}
FormulaPtr pred(std::string name, std::vector<TermPtr> args) {
  for (const auto& a : args)
    if (!a) throw BlError("null argument to " + name);
  return mk(Pred{std::move(name), std::move(args)});
}
FormulaPtr eq_i(TermPtr a, TermPtr b) { return pred(kEqI, {std::move(a), std::move(b)}); }
FormulaPtr eq_n(TermPtr a, TermPtr b) { return pred(kEqN, {std::move(a), std::move(b)}); }
FormulaPtr neg(FormulaPtr f) { return mk(Not{std::move(f)}); }
FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return mk(And{std::move(a), std::move(b)}); }
FormulaPtr exists(std::string v, FormulaPtr f) { return mk(Exists{std::move(v), std::move(f)}); }
FormulaPtr forall(std::string v, FormulaPtr f) { return mk(Forall{std::move(v), std::move(f)}); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return neg(conj(std::move(a), neg(std::move(b)))); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return conj(implies(a, b), implies(b, a)); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return neg(conj(neg(std::move(a)), neg(std::move(b)))); }

const Abstract& as_abstract(const TermPtr& t) {
  if (auto* a = std::get_if<Abstract>(&t->node)) return *a;
  throw BlError("expected an abstract, got " + to_string(t));
}
bool is_abstract(const TermPtr& t) { return std::holds_alternative<Abstract>(t->node); }

// -------------------------------------------------------------- variables

namespace {

void collect(const FormulaPtr& f, std::set<std::string>& bound_ctx, VarSets& out);

void collect(const TermPtr& t, std::set<std::string>& ctx, VarSets& out) {
  std::visit(overloaded{
                 [&](const Var& v) {
                   if (!ctx.count(v.name)) out.free.insert(v.name);
                 },
                 [&](const Const&) {},
                 [&](const Abstract& a) {
                   std::vector<std::string> added;
                   for (const auto& v : a.vseq) {
                     out.bound.insert(v);
                     if (ctx.insert(v).second) added.push_back(v);
                   }
                   collect(a.scope, ctx, out);
                   for (const auto& v : added) ctx.erase(v);
                 },
             },
             t->node);
}

void collect(const FormulaPtr& f, std::set<std::string>& ctx, VarSets& out) {
  std::visit(overloaded{
                 [&](const Pred& p) {
                   for (const auto& a : p.args) collect(a, ctx, out);
                 },
                 [&](const Not& n) { collect(n.body, ctx, out); },
                 [&](const And& a) {
                   collect(a.left, ctx, out);
                   collect(a.right, ctx, out);
                 },
                 [&](const Exists& q) {
                   out.bound.insert(q.var);
                   bool added = ctx.insert(q.var).second;
                   collect(q.body, ctx, out);
                   if (added) ctx.erase(q.var);
                 },
                 [&](const Forall& q) {
                   out.bound.insert(q.var);
                   bool added = ctx.insert(q.var).second;
                   collect(q.body, ctx, out);
                   if (added) ctx.erase(q.var);
                 },
             },
             f->node);
}

void ordered_free(const FormulaPtr& f, std::vector<std::string>& ctx, std::vector<std::string>& out);

void ordered_free(const TermPtr& t, std::vector<std::string>& ctx, std::vector<std::string>& out) {
  std::visit(overloaded{
                 [&](const Var& v) {
                   if (!contains(ctx, v.name) && !contains(out, v.name)) out.push_back(v.name);
                 },
                 [&](const Const&) {},
                 [&](const Abstract& a) {
                   ctx.insert(ctx.end(), a.vseq.begin(), a.vseq.end());
                   ordered_free(a.scope, ctx, out);
                   ctx.resize(ctx.size() - a.vseq.size());
                 },
             },
             t->node);
}

void ordered_free(const FormulaPtr& f, std::vector<std::string>& ctx, std::vector<std::string>& out) {
  std::visit(overloaded{
                 [&](const Pred& p) {
                   for (const auto& a : p.args) ordered_free(a, ctx, out);
                 },
                 [&](const Not& n) { ordered_free(n.body, ctx, out); },
                 [&](const And& a) {
                   ordered_free(a.left, ctx, out);
                   ordered_free(a.right, ctx, out);
                 },
                 [&](const Exists& q) {
                   ctx.push_back(q.var);
                   ordered_free(q.body, ctx, out);
                   ctx.pop_back();
                 },
                 [&](const Forall& q) {
                   ctx.push_back(q.var);
                   ordered_free(q.body, ctx, out);
                   ctx.pop_back();
                 },
             },
             f->node);
}

void all_names(const FormulaPtr& f, std::set<std::string>& out);
void all_names(const TermPtr& t, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const Var& v) { out.insert(v.name); },
                 [&](const Const&) {},
                 [&](const Abstract& a) {
                   out.insert(a.vseq.begin(), a.vseq.end());
                   all_names(a.scope, out);
                 },
             },
             t->node);
}
void all_names(const FormulaPtr& f, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const Pred& p) {
                   for (const auto& a : p.args) all_names(a, out);
                 },
                 [&](const Not& n) { all_names(n.body, out); },
                 [&](const And& a) {
                   all_names(a.left, out);
                   all_names(a.right, out);
                 },
                 [&](const Exists& q) {
                   out.insert(q.var);
                   all_names(q.body, out);
                 },
                 [&](const Forall& q) {
                   out.insert(q.var);
                   all_names(q.body, out);
                 },
             },
             f->node);
}

}  // namespace

VarSets analyze_vars(const TermPtr& t) {
  VarSets out;
  std::set<std::string> ctx;
  collect(t, ctx, out);
  return out;
}
VarSets analyze_vars(const FormulaPtr& f) {
  VarSets out;
  std::set<std::string> ctx;
  collect(f, ctx, out);
  return out;
}
std::set<std::string> free_vars(const TermPtr& t) { return analyze_vars(t).free; }
std::set<std::string> free_vars(const FormulaPtr& f) { return analyze_vars(f).free; }
std::vector<std::string> free_vars_ordered(const TermPtr& t) {
  std::vector<std::string> ctx, out;
  ordered_free(t, ctx, out);
  return out;
}
std::vector<std::string> free_vars_ordered(const FormulaPtr& f) {
  std::vector<std::string> ctx, out;
  ordered_free(f, ctx, out);
  return out;
}
std::set<std::string> all_var_names(const TermPtr& t) {
  std::set<std::string> out;
  all_names(t, out);
  return out;
}
std::set<std::string> all_var_names(const FormulaPtr& f) {
  std::set<std::string> out;
  all_names(f, out);
  return out;
}

bool is_generated_name(const std::string& n) {
  if (n.size() < 2 || n[0] != 'v') return false;
  return std::all_of(n.begin() + 1, n.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool var_less(const std::string& a, const std::string& b) {
  bool ga = is_generated_name(a), gb = is_generated_name(b);
  if (ga != gb) return gb;
  if (ga) {
    auto na = std::stoull(a.substr(1)), nb = std::stoull(b.substr(1));
    if (na != nb) return na < nb;
  }
  return a < b;
}

void FreshSupply::reserve(const std::string& name) {
  if (!is_generated_name(name)) return;
  std::size_t k = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    k = k * 10 + static_cast<std::size_t>(name[i] - '0');
    if (k > (std::size_t{1} << 40)) throw BlError("variable index too large: " + name);
  }
  next_ = std::max(next_, k + 1);
}
void FreshSupply::reserve(const TermPtr& t) {
  for (const auto& n : all_var_names(t)) reserve(n);
}
void FreshSupply::reserve(const FormulaPtr& f) {
  for (const auto& n : all_var_names(f)) reserve(n);
}
std::string FreshSupply::next() { return "v" + std::to_string(next_++); }

// ----------------------------------------------------------- substitution

namespace {

std::set<std::string> image_free(const Substitution& sub) {
  std::set<std::string> out;
  for (const auto& [k, v] : sub) {
    auto fv = free_vars(v);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

/// Drops shadowed keys and keys not free in the body.
Substitution relevant(const Substitution& sub, const std::set<std::string>& fv,
                      const std::vector<std::string>& binders) {
  Substitution out;
  for (const auto& [k, v] : sub)
    if (fv.count(k) && !contains(binders, k)) out.emplace(k, v);
  return out;
}

}  // namespace

TermPtr substitute(const TermPtr& t, const Substitution& sub, FreshSupply& fresh) {
  if (sub.empty()) return t;
  return std::visit(overloaded{
                        [&](const Var& v) -> TermPtr {
                          auto it = sub.find(v.name);
                          return it == sub.end() ? t : it->second;
                        },
                        [&](const Const&) -> TermPtr { return t; },
                        [&](const Abstract& a) -> TermPtr {
                          Substitution inner = relevant(sub, free_vars(a.scope), a.vseq);
                          if (inner.empty()) return t;
                          auto clash = image_free(inner);
                          std::vector<std::string> vseq = a.vseq;
                          for (auto& x : vseq) {
                            if (clash.count(x)) {
                              std::string y = fresh.next();
                              inner[x] = var(y);
                              x = y;
                            }
                          }
                          return abstract(substitute(a.scope, inner, fresh), std::move(vseq));
                        },
                    },
                    t->node);
}

namespace {

template <class Q>
FormulaPtr subst_quant(const Q& q, const FormulaPtr& self, const Substitution& sub, FreshSupply& fresh) {
  Substitution inner = relevant(sub, free_vars(q.body), {q.var});
  if (inner.empty()) return self;
  std::string v = q.var;
  if (image_free(inner).count(v)) {
    v = fresh.next();
    inner[q.var] = var(v);
  }
  return mk(Q{v, substitute(q.body, inner, fresh)});
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const Substitution& sub, FreshSupply& fresh) {
  if (sub.empty()) return f;
  return std::visit(overloaded{
                        [&](const Pred& p) -> FormulaPtr {
                          std::vector<TermPtr> args;
                          args.reserve(p.args.size());
                          for (const auto& a : p.args) args.push_back(substitute(a, sub, fresh));
                          return mk(Pred{p.name, std::move(args)});
                        },
                        [&](const Not& n) -> FormulaPtr { return neg(substitute(n.body, sub, fresh)); },
                        [&](const And& a) -> FormulaPtr {
                          return conj(substitute(a.left, sub, fresh), substitute(a.right, sub, fresh));
                        },
                        [&](const Exists& q) -> FormulaPtr { return subst_quant(q, f, sub, fresh); },
                        [&](const Forall& q) -> FormulaPtr { return subst_quant(q, f, sub, fresh); },
                    },
                    f->node);
}

TermPtr rename_vseq(const TermPtr& abs, const std::vector<std::string>& names, FreshSupply& fresh) {
  const auto& a = as_abstract(abs);
  if (names.size() != a.vseq.size()) throw BlError("rename_vseq: length mismatch");
  auto fv = free_vars(abs);
  Substitution sub;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (fv.count(names[i])) throw BlError("rename_vseq: " + names[i] + " is free in " + to_string(abs));
    if (names[i] != a.vseq[i]) sub.emplace(a.vseq[i], var(names[i]));
  }
  return abstract(substitute(a.scope, sub, fresh), names);
}

namespace {

TermPtr subst_preds(const TermPtr& t, const std::map<std::string, TermPtr>& by, FreshSupply& fresh);

FormulaPtr subst_preds(const FormulaPtr& f, const std::map<std::string, TermPtr>& by, FreshSupply& fresh) {
  return std::visit(
      overloaded{
          [&](const Pred& p) -> FormulaPtr {
            std::vector<TermPtr> args;
            for (const auto& a : p.args) args.push_back(subst_preds(a, by, fresh));
            auto it = by.find(p.name);
            if (it == by.end()) return mk(Pred{p.name, std::move(args)});
            const auto& abs = as_abstract(it->second);
            if (abs.vseq.size() != args.size())
              throw BlError("predicate " + p.name + " replaced by abstract of wrong arity");
            Substitution sub;
            for (std::size_t i = 0; i < args.size(); ++i) sub.emplace(abs.vseq[i], args[i]);
            return substitute(abs.scope, sub, fresh);
          },
          [&](const Not& n) -> FormulaPtr { return neg(subst_preds(n.body, by, fresh)); },
          [&](const And& a) -> FormulaPtr {
            return conj(subst_preds(a.left, by, fresh), subst_preds(a.right, by, fresh));
          },
          [&](const Exists& q) -> FormulaPtr { return exists(q.var, subst_preds(q.body, by, fresh)); },
          [&](const Forall& q) -> FormulaPtr { return forall(q.var, subst_preds(q.body, by, fresh)); },
      },
      f->node);
}

TermPtr subst_preds(const TermPtr& t, const std::map<std::string, TermPtr>& by, FreshSupply& fresh) {
  if (auto* a = std::get_if<Abstract>(&t->node)) return abstract(subst_preds(a->scope, by, fresh), a->vseq);
  return t;
}

}  // namespace

FormulaPtr substitute_predicates(const FormulaPtr& f, const std::map<std::string, TermPtr>& by,
                                 FreshSupply& fresh) {
  for (const auto& [name, abs] : by)
    if (!free_vars(abs).empty()) throw BlError("predicate substitution with open abstract for " + name);
  return subst_preds(f, by, fresh);
}

// ------------------------------------------------------------------- alpha

namespace {

struct KeyCtx {
  std::vector<std::pair<std::string, std::size_t>> env;
  std::size_t counter = 0;

  std::string lookup(const std::string& n) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == n) return "#" + std::to_string(it->second);
    return n;
  }
};

void key(const FormulaPtr& f, KeyCtx& c, std::string& out);

void key(const TermPtr& t, KeyCtx& c, std::string& out) {
  std::visit(overloaded{
                 [&](const Var& v) { out += c.lookup(v.name); },
                 [&](const Const& k) { out += "'" + k.name; },
                 [&](const Abstract& a) {
                   out += "[";
                   std::vector<std::string> ids;
                   for (const auto& v : a.vseq) {
                     ids.push_back(std::to_string(c.counter));
                     c.env.emplace_back(v, c.counter++);
                   }
                   key(a.scope, c, out);
                   c.env.resize(c.env.size() - a.vseq.size());
                   out += "]_" + join(ids, ",");
                 },
             },
             t->node);
}

void key_exists(const std::string& v, const FormulaPtr& body, KeyCtx& c, std::string& out) {
  if (!free_vars(body).count(v)) {
    key(body, c, out);
    return;
  }
  std::size_t id = c.counter++;
  out += "(E" + std::to_string(id) + ".";
  c.env.emplace_back(v, id);
  key(body, c, out);
  c.env.pop_back();
  out += ")";
}

void key(const FormulaPtr& f, KeyCtx& c, std::string& out) {
  std::visit(overloaded{
                 [&](const Pred& p) {
                   out += p.name + "(";
                   for (std::size_t i = 0; i < p.args.size(); ++i) {
                     if (i) out += ",";
                     key(p.args[i], c, out);
                   }
                   out += ")";
                 },
                 [&](const Not& n) {
                   out += "~";
                   key(n.body, c, out);
                 },
                 [&](const And& a) {
                   out += "(";
                   key(a.left, c, out);
                   out += "&";
                   key(a.right, c, out);
                   out += ")";
                 },
                 [&](const Exists& q) { key_exists(q.var, q.body, c, out); },
                 [&](const Forall& q) {
                   out += "~";
                   key_exists(q.var, neg(q.body), c, out);
                 },
             },
             f->node);
}

}  // namespace

std::string alpha_key(const TermPtr& t) {
  KeyCtx c;
  std::string out;
  key(t, c, out);
  return out;
}
std::string alpha_key(const FormulaPtr& f) {
  KeyCtx c;
  std::string out;
  key(f, c, out);
  return out;
}
bool alpha_eq(const TermPtr& a, const TermPtr& b) { return alpha_key(a) == alpha_key(b); }
bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b) { return alpha_key(a) == alpha_key(b); }

std::size_t depth(const TermPtr& t) {
  if (auto* a = std::get_if<Abstract>(&t->node)) return 1 + depth(a->scope);
  return 0;
}
std::size_t depth(const FormulaPtr& f) {
  return std::visit(overloaded{
                        [](const Pred& p) {
                          std::size_t d = 0;
                          for (const auto& a : p.args) d = std::max(d, depth(a));
                          return d;
                        },
                        [](const Not& n) { return depth(n.body); },
                        [](const And& a) { return std::max(depth(a.left), depth(a.right)); },
                        [](const Exists& q) { return depth(q.body); },
                        [](const Forall& q) { return depth(q.body); },
                    },
                    f->node);
}

// ----------------------------------------------------------------- printing

namespace {

// Precedence: quantifiers 0, conjunction 1, negation and atoms 2.
int level(const FormulaPtr& f) {
  return std::visit(overloaded{
                        [](const Pred&) { return 2; },
                        [](const Not&) { return 2; },
                        [](const And&) { return 1; },
                        [](const Exists&) { return 0; },
                        [](const Forall&) { return 0; },
                    },
                    f->node);
}

std::string print(const FormulaPtr& f, int ctx);

std::string print(const TermPtr& t) {
  return std::visit(overloaded{
                        [](const Var& v) { return v.name; },
                        [](const Const& k) { return k.name; },
                        [](const Abstract& a) {
                          std::string s = "[" + print(a.scope, 0) + "]";
                          if (!a.vseq.empty()) s += "_{" + join(a.vseq, " ") + "}";
                          return s;
                        },
                    },
                    t->node);
}

std::string print_raw(const FormulaPtr& f) {
  return std::visit(overloaded{
                        [](const Pred& p) {
                          if ((p.name == kEqI || p.name == kEqN) && p.args.size() == 2)
                            return print(p.args[0]) + (p.name == kEqI ? " =i " : " =n ") + print(p.args[1]);
                          std::vector<std::string> as;
                          for (const auto& a : p.args) as.push_back(print(a));
                          return p.name + "(" + join(as, ", ") + ")";
                        },
                        [](const Not& n) { return "~" + print(n.body, 2); },
                        [](const And& a) { return print(a.left, 1) + " & " + print(a.right, 2); },
                        [](const Exists& q) { return "ex " + q.var + ". " + print(q.body, 0); },
                        [](const Forall& q) { return "all " + q.var + ". " + print(q.body, 0); },
                    },
                    f->node);
}

std::string print(const FormulaPtr& f, int ctx) {
  std::string s = print_raw(f);
  bool eq = false;
  if (auto* p = std::get_if<Pred>(&f->node))
    eq = (p->name == kEqI || p->name == kEqN) && p->args.size() == 2;
  if (level(f) < ctx || (eq && ctx == 2)) return "(" + s + ")";
  return s;
}

}  // namespace

std::string to_string(const TermPtr& t) { return print(t); }
std::string to_string(const FormulaPtr& f) { return print(f, 0); }

bool structurally_equal(const TermPtr& a, const TermPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  return std::visit(overloaded{
                        [&](const Var& v) { return v.name == std::get<Var>(b->node).name; },
                        [&](const Const& k) { return k.name == std::get<Const>(b->node).name; },
                        [&](const Abstract& x) {
                          const auto& y = std::get<Abstract>(b->node);
                          return x.vseq == y.vseq && structurally_equal(x.scope, y.scope);
                        },
                    },
                    a->node);
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  return std::visit(overloaded{
                        [&](const Pred& p) {
                          const auto& q = std::get<Pred>(b->node);
                          if (p.name != q.name || p.args.size() != q.args.size()) return false;
                          for (std::size_t i = 0; i < p.args.size(); ++i)
                            if (!structurally_equal(p.args[i], q.args[i])) return false;
                          return true;
                        },
                        [&](const Not& n) { return structurally_equal(n.body, std::get<Not>(b->node).body); },
                        [&](const And& x) {
                          const auto& y = std::get<And>(b->node);
                          return structurally_equal(x.left, y.left) && structurally_equal(x.right, y.right);
                        },
                        [&](const Exists& x) {
                          const auto& y = std::get<Exists>(b->node);
                          return x.var == y.var && structurally_equal(x.body, y.body);
                        },
                        [&](const Forall& x) {
                          const auto& y = std::get<Forall>(b->node);
                          return x.var == y.var && structurally_equal(x.body, y.body);
                        },
                    },
                    a->node);
}

// ----------------------------------------------- metasyntactic operations

TermPtr apply_log_not(const TermPtr& t) {
  const auto& a = as_abstract(t);
  return abstract(neg(a.scope), a.vseq);
}

TermPtr apply_log_and(const TermPtr& x, const TermPtr& y, FreshSupply& fresh) {
  const auto& a = as_abstract(x);
  const auto& b = as_abstract(y);
  if (a.vseq.size() != b.vseq.size())
    throw BlError("LOG&: arities " + std::to_string(a.vseq.size()) + " and " +
                  std::to_string(b.vseq.size()) + " differ");
  std::vector<std::string> tmp;
  for (std::size_t i = 0; i < b.vseq.size(); ++i) tmp.push_back(fresh.next());
  auto y2 = rename_vseq(y, tmp, fresh);
  const auto& b2 = as_abstract(y2);
  auto fy = free_vars(y);
  for (const auto& v : a.vseq)
    if (fy.count(v)) throw BlError("LOG&: " + v + " is free in " + to_string(y));
  Substitution sub;
  for (std::size_t i = 0; i < tmp.size(); ++i) sub.emplace(tmp[i], var(a.vseq[i]));
  return abstract(conj(a.scope, substitute(b2.scope, sub, fresh)), a.vseq);
}

TermPtr apply_log_exists(const std::vector<bool>& s, const TermPtr& t) {
  const auto& a = as_abstract(t);
  if (s.size() != a.vseq.size())
    throw BlError("LOG-ex: sequence length " + std::to_string(s.size()) + " does not match arity " +
                  std::to_string(a.vseq.size()));
  FormulaPtr f = a.scope;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!s[i]) rest.push_back(a.vseq[i]);
  for (std::size_t i = s.size(); i-- > 0;)
    if (s[i]) f = exists(a.vseq[i], f);
  return abstract(f, std::move(rest));
}

TermPtr apply_dum(const DumSeq& s, const TermPtr& t, FreshSupply& fresh) {
  const auto& a = as_abstract(t);
  if (s.input_arity() != a.vseq.size())
    throw BlError("DUM: sequence " + to_string(s) + " needs arity " + std::to_string(s.input_arity()) +
                  ", abstract has " + std::to_string(a.vseq.size()));
  std::vector<std::string> out;
  std::size_t k = 0;
  for (bool orig : s.mask()) out.push_back(orig ? a.vseq[k++] : fresh.next());
  return abstract(a.scope, std::move(out));
}

TermPtr apply_per(const Permutation& p, const TermPtr& t) {
  const auto& a = as_abstract(t);
  if (p.size() != a.vseq.size()) throw BlError("PER: size mismatch");
  return abstract(a.scope, p.apply_to(a.vseq));
}

TermPtr apply_link(const Partition& s, const TermPtr& t, FreshSupply& fresh) {
  const auto& a = as_abstract(t);
  if (s.ground_size() != a.vseq.size())
    throw BlError("LINK: partition on " + std::to_string(s.ground_size()) + " elements, abstract has arity " +
                  std::to_string(a.vseq.size()));
  Substitution sub;
  std::vector<std::string> out;
  for (const auto& b : s.blocks()) {
    const auto& keep = a.vseq[b.front()];
    out.push_back(keep);
    for (std::size_t i = 1; i < b.size(); ++i) sub.emplace(a.vseq[b[i]], var(keep));
  }
  return abstract(substitute(a.scope, sub, fresh), std::move(out));
}

TermPtr apply_comb(const CombSeq& s, const TermPtr& head, const std::vector<TermPtr>& args, FreshSupply& fresh) {
  const auto& h = as_abstract(head);
  if (h.vseq.size() != s.size())
    throw BlError("COMB: sequence " + to_string(s) + " on head of arity " + std::to_string(h.vseq.size()));
  if (args.size() != s.size() - s.star_count())
    throw BlError("COMB: expected " + std::to_string(s.size() - s.star_count()) + " arguments, got " +
                  std::to_string(args.size()));
  std::vector<std::string> w;
  for (std::size_t i = 0; i < s.size(); ++i) w.push_back(fresh.next());
  auto head2 = rename_vseq(head, w, fresh);
  const auto& h2 = as_abstract(head2);
  Substitution sub;
  std::vector<std::string> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.is_star(i)) {
      out.push_back(w[i]);
      continue;
    }
    const auto& arg = args[k++];
    auto c = static_cast<std::size_t>(s[i]);
    if (!is_abstract(arg)) {
      if (c != 0) throw BlError("COMB: entry " + std::to_string(c) + " needs an abstract, got " + to_string(arg));
      sub.emplace(w[i], arg);
      continue;
    }
    if (c == 0) {
      sub.emplace(w[i], arg);
      continue;
    }
    const auto& aa = as_abstract(arg);
    if (aa.vseq.size() < c)
      throw BlError("COMB: entry " + std::to_string(c) + " exceeds arity of " + to_string(arg));
    std::vector<std::string> names;
    for (std::size_t j = 0; j < aa.vseq.size(); ++j) names.push_back(fresh.next());
    auto arg2 = rename_vseq(arg, names, fresh);
    const auto& ar = as_abstract(arg2);
    std::size_t keep = names.size() - c;
    sub.emplace(w[i], abstract(ar.scope, std::vector<std::string>(names.begin(), names.begin() + keep)));
    out.insert(out.end(), names.begin() + keep, names.end());
  }
  return abstract(substitute(h2.scope, sub, fresh), std::move(out));
}

// ---------------------------------------------------------- classification

namespace {

const Pred* atomic_pred(const Abstract& a) { return std::get_if<Pred>(&a.scope->node); }

std::vector<std::string> exported(const TermPtr& arg, const std::vector<std::string>& vseq) {
  std::vector<std::string> out;
  if (auto* v = std::get_if<Var>(&arg->node)) {
    if (contains(vseq, v->name)) out.push_back(v->name);
  } else if (is_abstract(arg)) {
    for (const auto& x : free_vars_ordered(arg))
      if (contains(vseq, x)) out.push_back(x);
  }
  return out;
}

}  // namespace

FSequence f_sequence(const TermPtr& t) {
  const auto& a = as_abstract(t);
  FSequence r;
  auto fv = free_vars(a.scope);
  r.cls.non_redundant = std::all_of(a.vseq.begin(), a.vseq.end(), [&](const auto& v) { return fv.count(v) > 0; });
  const Pred* p = atomic_pred(a);
  if (!p) return r;
  r.cls.atomic = true;
  std::vector<std::string> cat;
  std::map<std::string, int> owners;
  for (const auto& arg : p->args) {
    auto e = exported(arg, a.vseq);
    for (const auto& v : e) owners[v]++;
    cat.insert(cat.end(), e.begin(), e.end());
    r.entries.push_back(std::move(e));
  }
  r.cls.unlinked = std::all_of(owners.begin(), owners.end(), [](const auto& kv) { return kv.second == 1; });
  r.cls.ordered = r.cls.non_redundant && cat == a.vseq;
  bool elem = p->args.size() == a.vseq.size();
  for (std::size_t i = 0; elem && i < p->args.size(); ++i) {
    auto* v = std::get_if<Var>(&p->args[i]->node);
    elem = v && v->name == a.vseq[i];
  }
  r.cls.elementary = elem;
  if (r.cls.non_redundant) {
    std::vector<std::string> firsts;
    for (const auto& v : cat)
      if (!contains(firsts, v)) firsts.push_back(v);
    std::vector<std::size_t> img;
    for (const auto& v : firsts) img.push_back(index_of(a.vseq, v));
    r.assoc_perm = Permutation(std::move(img));
  }
  return r;
}

AbstractClass classify(const TermPtr& t) { return f_sequence(t).cls; }

// ---------------------------------------------------------------- log tree

TermPtr LogTree::rebuild(FreshSupply& fresh) const {
  switch (kind) {
    case Kind::Leaf:
      return leaf;
    case Kind::Not:
      return apply_log_not(children.at(0).rebuild(fresh));
    case Kind::And:
      return apply_log_and(children.at(0).rebuild(fresh), children.at(1).rebuild(fresh), fresh);
    case Kind::Exists:
      return apply_log_exists(ex, children.at(0).rebuild(fresh));
  }
  throw BlError("bad log tree");
}

namespace {

LogTree decompose(const FormulaPtr& f, const std::vector<std::string>& vseq, FreshSupply& fresh) {
  LogTree node;
  if (std::holds_alternative<Pred>(f->node)) {
    node.kind = LogTree::Kind::Leaf;
    node.leaf = abstract(f, vseq);
    return node;
  }
  if (auto* n = std::get_if<Not>(&f->node)) {
    node.kind = LogTree::Kind::Not;
    node.children.push_back(decompose(n->body, vseq, fresh));
    return node;
  }
  if (auto* a = std::get_if<And>(&f->node)) {
    node.kind = LogTree::Kind::And;
    node.children.push_back(decompose(a->left, vseq, fresh));
    node.children.push_back(decompose(a->right, vseq, fresh));
    return node;
  }
  if (auto* q = std::get_if<Forall>(&f->node)) {
    node.kind = LogTree::Kind::Not;
    node.children.push_back(decompose(exists(q->var, neg(q->body)), vseq, fresh));
    return node;
  }
  // Maximal chain of existentials.
  std::vector<std::string> ext = vseq;
  std::vector<std::string> quantified;
  FormulaPtr body = f;
  while (auto* q = std::get_if<Exists>(&body->node)) {
    FormulaPtr inner = q->body;
    if (free_vars(inner).count(q->var)) {
      std::string v = q->var;
      if (contains(ext, v)) {
        v = fresh.next();
        Substitution sub{{q->var, var(v)}};
        inner = substitute(inner, sub, fresh);
      }
      ext.push_back(v);
      quantified.push_back(v);
    }
    body = inner;
  }
  if (quantified.empty()) return decompose(body, vseq, fresh);
  node.kind = LogTree::Kind::Exists;
  node.ex.assign(vseq.size(), false);
  node.ex.resize(ext.size(), true);
  node.children.push_back(decompose(body, ext, fresh));
  return node;
}

}  // namespace

LogTree logical_tree_decompose(const TermPtr& t, FreshSupply& fresh) {
  const auto& a = as_abstract(t);
  fresh.reserve(t);
  return decompose(a.scope, a.vseq, fresh);
}

// --------------------------------------------------------------- modifiers

TermPtr Modifiers::rebuild(FreshSupply& fresh) const {
  TermPtr t = core;
  if (link) t = apply_link(*link, t, fresh);
  if (per) t = apply_per(*per, t);
  if (dum) t = apply_dum(*dum, t, fresh);
  return t;
}

Modifiers extract_modifiers(const TermPtr& t, FreshSupply& fresh, BlockOrder order) {
  const auto& a = as_abstract(t);
  const Pred* p = atomic_pred(a);
  if (!p) throw BlError("extract_modifiers: not atomic: " + to_string(t));
  fresh.reserve(t);
  Modifiers m;

  auto fv = free_vars(a.scope);
  std::vector<bool> mask;
  std::vector<std::string> used;
  for (const auto& v : a.vseq) {
    mask.push_back(fv.count(v) > 0);
    if (mask.back()) used.push_back(v);
  }
  if (used.size() != a.vseq.size()) m.dum = DumSeq::from_mask(mask);

  struct Wire {
    std::string var;
    std::string name;
  };
  std::vector<Wire> wires;
  std::vector<TermPtr> args;
  std::set<std::string> seen;
  for (const auto& arg : p->args) {
    auto block = exported(arg, used);
    if (order == BlockOrder::VseqOrder)
      std::sort(block.begin(), block.end(),
                [&](const auto& x, const auto& y) { return index_of(used, x) < index_of(used, y); });
    Substitution ren;
    for (const auto& v : block) {
      std::string name = v;
      if (!seen.insert(v).second) {
        name = fresh.next();
        ren.emplace(v, var(name));
      }
      wires.push_back({v, name});
    }
    args.push_back(substitute(arg, ren, fresh));
  }

  std::vector<std::string> core_vseq;
  std::vector<std::size_t> labels;
  std::vector<std::string> class_order;
  for (const auto& w : wires) {
    core_vseq.push_back(w.name);
    auto idx = index_of(class_order, w.var);
    if (idx == class_order.size()) class_order.push_back(w.var);
    labels.push_back(idx);
  }
  Partition link = Partition::from_labels(labels);
  if (!link.is_trivial()) m.link = link;
  std::vector<std::size_t> img;
  for (const auto& v : class_order) img.push_back(index_of(used, v));
  Permutation per(std::move(img));
  if (!per.is_identity()) m.per = per;
  m.core = abstract(pred(p->name, std::move(args)), std::move(core_vseq));
  return m;
}

// -------------------------------------------------------------------- comb

TermPtr CombExtraction::rebuild(FreshSupply& fresh) const { return apply_comb(seq, head, args, fresh); }

CombExtraction extract_comb(const TermPtr& t, FreshSupply& fresh) {
  const auto& a = as_abstract(t);
  const Pred* p = atomic_pred(a);
  if (!p) throw BlError("extract_comb: not atomic: " + to_string(t));
  auto fs = f_sequence(t);
  if (!fs.cls.non_redundant) throw BlError("extract_comb: redundant: " + to_string(t));
  if (!fs.cls.unlinked) throw BlError("extract_comb: linked: " + to_string(t));
  if (fs.cls.elementary) throw BlError("extract_comb: elementary: " + to_string(t));
  fresh.reserve(t);

  std::vector<int> entries;
  std::vector<TermPtr> args;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < p->args.size(); ++i) {
    const auto& arg = p->args[i];
    const auto& block = fs.entries[i];
    if (pos + block.size() > a.vseq.size()) throw BlError("extract_comb: not block-contiguous: " + to_string(t));
    std::vector<std::string> seg(a.vseq.begin() + pos, a.vseq.begin() + pos + block.size());
    if (std::set<std::string>(seg.begin(), seg.end()) != std::set<std::string>(block.begin(), block.end()))
      throw BlError("extract_comb: not block-contiguous: " + to_string(t));
    pos += block.size();
    if (auto* v = std::get_if<Var>(&arg->node); v && !block.empty()) {
      entries.push_back(kStar);
      continue;
    }
    entries.push_back(static_cast<int>(block.size()));
    if (block.empty()) {
      args.push_back(arg);
    } else {
      const auto& aa = as_abstract(arg);
      std::vector<std::string> vs = aa.vseq;
      vs.insert(vs.end(), seg.begin(), seg.end());
      args.push_back(abstract(aa.scope, std::move(vs)));
    }
  }
  std::vector<std::string> xs;
  std::vector<TermPtr> xv;
  for (std::size_t i = 0; i < p->args.size(); ++i) {
    xs.push_back(fresh.next());
    xv.push_back(var(xs.back()));
  }
  return CombExtraction{CombSeq(std::move(entries)), abstract(pred(p->name, std::move(xv)), std::move(xs)),
                        std::move(args)};
}

}  // namespace cil::bl
