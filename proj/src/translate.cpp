#include "cil/translate.hpp"

namespace cil {

namespace {

std::string pv_name(const std::string& x, const PseudoVarMap& pvmap) {
  auto it = pvmap.find(x);
  return it == pvmap.end() ? x : it->second;
}

bl::TermPtr translate(const TermPtr& t, const PseudoVarMap& pvmap, bl::FreshSupply& fresh) {
  switch (kind(t)) {
    case Kind::Prim: {
      const auto& name = as<Prim>(t).name;
      if (t->sort < 0) return bl::constant(name);
      std::vector<std::string> xs;
      std::vector<bl::TermPtr> args;
      for (int i = 0; i < t->sort; ++i) {
        xs.push_back(fresh.next());
        args.push_back(bl::var(xs.back()));
      }
      return bl::abstract(bl::pred(name, std::move(args)), std::move(xs));
    }
    case Kind::PseudoVar:
      return bl::var(pv_name(as<PseudoVar>(t).name, pvmap));
    case Kind::Comb: {
      const auto& c = as<Comb>(t);
      std::vector<bl::TermPtr> args;
      for (const auto& a : c.args) args.push_back(translate(a, pvmap, fresh));
      return bl::apply_comb(c.seq, translate(c.head, pvmap, fresh), args, fresh);
    }
    case Kind::Link:
      return bl::apply_link(as<Link>(t).seq, translate(as<Link>(t).body, pvmap, fresh), fresh);
    case Kind::Per:
      return bl::apply_per(as<Per>(t).seq, translate(as<Per>(t).body, pvmap, fresh));
    case Kind::Dum:
      return bl::apply_dum(as<Dum>(t).seq, translate(as<Dum>(t).body, pvmap, fresh), fresh);
    case Kind::Neg:
      return bl::apply_log_not(translate(as<Neg>(t).body, pvmap, fresh));
    case Kind::Conj: {
      auto a = translate(as<Conj>(t).left, pvmap, fresh);
      auto b = translate(as<Conj>(t).right, pvmap, fresh);
      return bl::apply_log_and(a, b, fresh);
    }
    case Kind::Ex:
      return bl::apply_log_exists(as<Ex>(t).seq, translate(as<Ex>(t).body, pvmap, fresh));
  }
  throw SortError("unknown term kind");
}

class Decomposer {
 public:
  Decomposer(const Signature& sig, const PseudoVarMap& inv, bl::FreshSupply& fresh)
      : sig_(sig), inv_(inv), fresh_(fresh) {}

  TermPtr abstract(const bl::TermPtr& t) {
    auto tree = bl::logical_tree_decompose(t, fresh_);
    return node(tree);
  }

 private:
  TermPtr node(const bl::LogTree& n) {
    switch (n.kind) {
      case bl::LogTree::Kind::Leaf:
        return leaf(n.leaf);
      case bl::LogTree::Kind::Not:
        return neg(node(n.children.at(0)));
      case bl::LogTree::Kind::And:
        return conj(node(n.children.at(0)), node(n.children.at(1)));
      case bl::LogTree::Kind::Exists:
        return ex(n.ex, node(n.children.at(0)));
    }
    throw SortError("bad log tree");
  }

  TermPtr predicate(const std::string& name, std::size_t arity) {
    auto s = sig_.sort_of(name);
    if (!s) throw SortError("undeclared predicate " + name);
    if (*s != static_cast<int>(arity))
      throw SortError("predicate " + name + " applied to " + std::to_string(arity) + " arguments, declared sort " +
                      std::to_string(*s));
    return prim(name, *s);
  }

  TermPtr argument(const bl::TermPtr& a) {
    if (auto* c = std::get_if<bl::Const>(&a->node)) {
      auto s = sig_.sort_of(c->name);
      if (!s) throw SortError("undeclared constant " + c->name);
      if (*s != -1) throw SortError(c->name + " used as a constant but declared with sort " + std::to_string(*s));
      return prim(c->name, -1);
    }
    if (auto* v = std::get_if<bl::Var>(&a->node)) {
      auto it = inv_.find(v->name);
      if (it == inv_.end()) throw SortError("free variable " + v->name + " has no pseudo-variable");
      return pseudo(it->second);
    }
    return abstract(a);
  }

  TermPtr leaf(const bl::TermPtr& t) {
    auto m = bl::extract_modifiers(t, fresh_, bl::BlockOrder::VseqOrder);
    const auto& core = bl::as_abstract(m.core);
    const auto& p = std::get<bl::Pred>(core.scope->node);
    TermPtr out;
    if (bl::classify(m.core).elementary) {
      out = predicate(p.name, p.args.size());
    } else {
      auto e = bl::extract_comb(m.core, fresh_);
      std::vector<TermPtr> args;
      for (const auto& a : e.args) args.push_back(argument(a));
      out = comb(e.seq, predicate(p.name, p.args.size()), std::move(args));
    }
    if (m.link) out = link(*m.link, out);
    if (m.per) out = per(*m.per, out);
    if (m.dum) out = dum(*m.dum, out);
    return out;
  }

  const Signature& sig_;
  const PseudoVarMap& inv_;
  bl::FreshSupply& fresh_;
};

}  // namespace

bl::TermPtr j_translate(const TermPtr& t, const Signature& sig, const PseudoVarMap& pvmap, bl::FreshSupply& fresh) {
  sort_of(t, sig);
  for (const auto& x : pseudo_vars(t)) fresh.reserve(pv_name(x, pvmap));
  return translate(t, pvmap, fresh);
}

bl::TermPtr j_translate(const TermPtr& t, const Signature& sig, const PseudoVarMap& pvmap) {
  bl::FreshSupply fresh;
  return j_translate(t, sig, pvmap, fresh);
}

TermPtr bealer_decompose(const bl::TermPtr& t, const Signature& sig, const PseudoVarMap& inverse_pvmap) {
  for (const auto& v : bl::free_vars(t))
    if (!inverse_pvmap.count(v)) throw SortError("bealer_decompose: free variable " + v + " in " + bl::to_string(t));
  if (!bl::is_abstract(t)) throw SortError("bealer_decompose: not an abstract: " + bl::to_string(t));
  bl::FreshSupply fresh;
  fresh.reserve(t);
  Decomposer d(sig, inverse_pvmap, fresh);
  return d.abstract(t);
}

OracleVerdict oracle_check(const TermPtr& a, const TermPtr& b, const Signature& sig, const PseudoVarMap& pvmap) {
  int sa = sort_of(a, sig), sb = sort_of(b, sig);
  if (sa != sb) return {false, "sorts differ: " + std::to_string(sa) + " vs " + std::to_string(sb)};
  auto ja = j_translate(a, sig, pvmap);
  auto jb = j_translate(b, sig, pvmap);
  if (bl::alpha_eq(ja, jb)) return {true, ""};
  return {false, "J-images differ: " + bl::to_string(ja) + " vs " + bl::to_string(jb)};
}

bool oracle_sense_equiv(const TermPtr& a, const TermPtr& b, const Signature& sig, const PseudoVarMap& pvmap) {
  return oracle_check(a, b, sig, pvmap).equivalent;
}

TermPtr pseudo_bind(const TermPtr& t, const std::string& x, const Signature& sig) {
  if (sort_of(t, sig) < 0) throw SortError("pseudo_bind: term " + to_string(t) + " has no sort");
  auto j = j_translate(t, sig);
  const auto& a = bl::as_abstract(j);
  auto vs = a.vseq;
  vs.push_back(x);
  PseudoVarMap inv;
  for (const auto& y : pseudo_vars(t))
    if (y != x) inv.emplace(y, y);
  return bealer_decompose(bl::abstract(a.scope, std::move(vs)), sig, inv);
}

TermPtr canonical_form(const TermPtr& t, const Signature& sig) {
  if (sort_of(t, sig) < 0) return t;
  PseudoVarMap inv;
  for (const auto& y : pseudo_vars(t)) inv.emplace(y, y);
  return bealer_decompose(j_translate(t, sig), sig, inv);
}

}  // namespace cil
