#include "cil/cil.hpp"

#include <algorithm>

namespace cil {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class N>
TermPtr mk(N n, int sort) {
  return std::make_shared<const Term>(Term{std::move(n), sort});
}

void need_operand(const TermPtr& t, const char* op) {
  if (!t) throw SortError(std::string(op) + ": missing operand");
  if (t->sort < 0)
    throw SortError(std::string(op) + ": operand " + to_string(t) +
                    (t->sort == kNoSort ? " is a pseudo-variable" : " has sort -1"));
}

}  // namespace

Signature::Signature() {
  prims_["Eq_I"] = 2;
  prims_["Eq_N"] = 2;
  prims_["Truth"] = 0;
}

void Signature::declare(const std::string& name, int sort) {
  if (name.empty()) throw SortError("empty primitive name");
  if (sort < -1) throw SortError("primitive " + name + " declared with sort " + std::to_string(sort));
  auto it = prims_.find(name);
  if (it != prims_.end() && it->second != sort)
    throw SortError("primitive " + name + " redeclared with sort " + std::to_string(sort) + " (was " +
                    std::to_string(it->second) + ")");
  prims_[name] = sort;
}

std::optional<int> Signature::sort_of(const std::string& name) const {
  auto it = prims_.find(name);
  if (it == prims_.end()) return std::nullopt;
  return it->second;
}

std::set<std::string> Signature::constants() const {
  std::set<std::string> out;
  for (const auto& [n, s] : prims_)
    if (s == -1) out.insert(n);
  return out;
}

TermPtr prim(const std::string& name, int sort) {
  if (name.empty()) throw SortError("empty primitive name");
  if (sort < -1) throw SortError("primitive " + name + " with sort " + std::to_string(sort));
  return mk(Prim{name}, sort);
}

TermPtr prim(const std::string& name, const Signature& sig) {
  auto s = sig.sort_of(name);
  if (!s) throw SortError("undeclared primitive " + name);
  return prim(name, *s);
}

TermPtr pseudo(const std::string& name) {
  if (name.empty()) throw SortError("empty pseudo-variable name");
  return mk(PseudoVar{name}, kNoSort);
}

TermPtr comb(const CombSeq& s, TermPtr head, std::vector<TermPtr> args) {
  need_operand(head, "comb");
  if (static_cast<std::size_t>(head->sort) != s.size())
    throw SortError("comb" + to_string(s) + ": head " + to_string(head) + " has sort " +
                    std::to_string(head->sort) + ", needs " + std::to_string(s.size()));
  if (args.size() != s.size() - s.star_count())
    throw SortError("comb" + to_string(s) + ": expected " + std::to_string(s.size() - s.star_count()) +
                    " arguments, got " + std::to_string(args.size()));
  std::size_t k = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.is_star(i)) continue;
    const auto& a = args[k++];
    if (!a) throw SortError("comb: missing argument");
    int c = s[i];
    if (a->sort < 0) {
      if (c != 0)
        throw SortError("comb" + to_string(s) + ": argument " + to_string(a) + " needs entry 0, got " +
                        std::to_string(c));
    } else if (a->sort < c) {
      throw SortError("comb" + to_string(s) + ": argument " + to_string(a) + " of sort " +
                      std::to_string(a->sort) + " cannot export " + std::to_string(c) + " wires");
    }
  }
  int sort = s.sigma();
  return mk(Comb{s, std::move(head), std::move(args)}, sort);
}

TermPtr link(const Partition& s, TermPtr body) {
  need_operand(body, "link");
  if (s.is_trivial()) throw SortError("link: trivial partition " + to_string(s));
  if (static_cast<std::size_t>(body->sort) != s.ground_size())
    throw SortError("link" + to_string(s) + ": operand has sort " + std::to_string(body->sort));
  int sort = static_cast<int>(s.block_count());
  return mk(Link{s, std::move(body)}, sort);
}

TermPtr per(const Permutation& p, TermPtr body) {
  need_operand(body, "per");
  if (p.is_identity()) throw SortError("per: identity permutation " + to_string(p));
  if (static_cast<std::size_t>(body->sort) != p.size())
    throw SortError("per" + to_string(p) + ": operand has sort " + std::to_string(body->sort));
  int sort = body->sort;
  return mk(Per{p, std::move(body)}, sort);
}

TermPtr dum(const DumSeq& s, TermPtr body) {
  need_operand(body, "dum");
  if (static_cast<std::size_t>(body->sort) != s.input_arity())
    throw SortError("dum" + to_string(s) + ": operand has sort " + std::to_string(body->sort));
  if (s.is_trivial()) throw SortError("dum" + to_string(s) + ": trivial dum-sequence");
  int sort = static_cast<int>(s.output_arity());
  return mk(Dum{s, std::move(body)}, sort);
}

TermPtr neg(TermPtr body) {
  need_operand(body, "not");
  int sort = body->sort;
  return mk(Neg{std::move(body)}, sort);
}

TermPtr conj(TermPtr a, TermPtr b) {
  need_operand(a, "and");
  need_operand(b, "and");
  if (a->sort != b->sort)
    throw SortError("and: operand sorts " + std::to_string(a->sort) + " and " + std::to_string(b->sort) +
                    " differ");
  int sort = a->sort;
  return mk(Conj{std::move(a), std::move(b)}, sort);
}

TermPtr ex(std::vector<bool> s, TermPtr body) {
  need_operand(body, "ex");
  if (s.size() != static_cast<std::size_t>(body->sort))
    throw SortError("ex" + to_string(s) + ": operand has sort " + std::to_string(body->sort));
  if (std::find(s.begin(), s.end(), true) == s.end()) throw SortError("ex" + to_string(s) + ": quantifies nothing");
  int sort = static_cast<int>(std::count(s.begin(), s.end(), false));
  return mk(Ex{std::move(s), std::move(body)}, sort);
}

int sort_of(const TermPtr& t, const Signature& sig) {
  return std::visit(overloaded{
                        [&](const Prim& p) {
                          auto s = sig.sort_of(p.name);
                          if (!s) throw SortError("undeclared primitive " + p.name);
                          if (*s != t->sort)
                            throw SortError("primitive " + p.name + " used with sort " + std::to_string(t->sort) +
                                            ", declared " + std::to_string(*s));
                          return *s;
                        },
                        [&](const PseudoVar&) { return kNoSort; },
                        [&](const Comb& c) {
                          sort_of(c.head, sig);
                          for (const auto& a : c.args) sort_of(a, sig);
                          return comb(c.seq, c.head, c.args)->sort;
                        },
                        [&](const Link& l) {
                          sort_of(l.body, sig);
                          return link(l.seq, l.body)->sort;
                        },
                        [&](const Per& p) {
                          sort_of(p.body, sig);
                          return per(p.seq, p.body)->sort;
                        },
                        [&](const Dum& d) {
                          sort_of(d.body, sig);
                          return dum(d.seq, d.body)->sort;
                        },
                        [&](const Neg& n) {
                          sort_of(n.body, sig);
                          return neg(n.body)->sort;
                        },
                        [&](const Conj& c) {
                          sort_of(c.left, sig);
                          sort_of(c.right, sig);
                          return conj(c.left, c.right)->sort;
                        },
                        [&](const Ex& e) {
                          sort_of(e.body, sig);
                          return ex(e.seq, e.body)->sort;
                        },
                    },
                    t->node);
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index() || a->sort != b->sort) return false;
  return std::visit(overloaded{
                        [&](const Prim& p) { return p.name == as<Prim>(b).name; },
                        [&](const PseudoVar& p) { return p.name == as<PseudoVar>(b).name; },
                        [&](const Comb& c) {
                          const auto& d = as<Comb>(b);
                          if (!(c.seq == d.seq) || !equal(c.head, d.head)) return false;
                          for (std::size_t i = 0; i < c.args.size(); ++i)
                            if (!equal(c.args[i], d.args[i])) return false;
                          return true;
                        },
                        [&](const Link& l) { return l.seq == as<Link>(b).seq && equal(l.body, as<Link>(b).body); },
                        [&](const Per& p) { return p.seq == as<Per>(b).seq && equal(p.body, as<Per>(b).body); },
                        [&](const Dum& d) { return d.seq == as<Dum>(b).seq && equal(d.body, as<Dum>(b).body); },
                        [&](const Neg& n) { return equal(n.body, as<Neg>(b).body); },
                        [&](const Conj& c) {
                          return equal(c.left, as<Conj>(b).left) && equal(c.right, as<Conj>(b).right);
                        },
                        [&](const Ex& e) { return e.seq == as<Ex>(b).seq && equal(e.body, as<Ex>(b).body); },
                    },
                    a->node);
}

std::vector<TermPtr> children(const TermPtr& t) {
  return std::visit(overloaded{
                        [](const Prim&) { return std::vector<TermPtr>{}; },
                        [](const PseudoVar&) { return std::vector<TermPtr>{}; },
                        [](const Comb& c) {
                          std::vector<TermPtr> out{c.head};
                          out.insert(out.end(), c.args.begin(), c.args.end());
                          return out;
                        },
                        [](const Link& l) { return std::vector<TermPtr>{l.body}; },
                        [](const Per& p) { return std::vector<TermPtr>{p.body}; },
                        [](const Dum& d) { return std::vector<TermPtr>{d.body}; },
                        [](const Neg& n) { return std::vector<TermPtr>{n.body}; },
                        [](const Conj& c) { return std::vector<TermPtr>{c.left, c.right}; },
                        [](const Ex& e) { return std::vector<TermPtr>{e.body}; },
                    },
                    t->node);
}

TermPtr with_children(const TermPtr& t, const std::vector<TermPtr>& k) {
  return std::visit(overloaded{
                        [&](const Prim&) { return t; },
                        [&](const PseudoVar&) { return t; },
                        [&](const Comb& c) {
                          return comb(c.seq, k.at(0), std::vector<TermPtr>(k.begin() + 1, k.end()));
                        },
                        [&](const Link& l) { return link(l.seq, k.at(0)); },
                        [&](const Per& p) { return per(p.seq, k.at(0)); },
                        [&](const Dum& d) { return dum(d.seq, k.at(0)); },
                        [&](const Neg&) { return neg(k.at(0)); },
                        [&](const Conj&) { return conj(k.at(0), k.at(1)); },
                        [&](const Ex& e) { return ex(e.seq, k.at(0)); },
                    },
                    t->node);
}

std::size_t size(const TermPtr& t) {
  std::size_t n = 1;
  for (const auto& c : children(t)) n += size(c);
  return n;
}

std::size_t depth(const TermPtr& t) {
  std::size_t d = 0;
  for (const auto& c : children(t)) d = std::max(d, depth(c));
  return d + 1;
}

namespace {
void collect(const TermPtr& t, std::set<std::string>& pv, std::set<std::string>& pr) {
  if (auto* p = get<PseudoVar>(t)) pv.insert(p->name);
  if (auto* p = get<Prim>(t)) pr.insert(p->name);
  for (const auto& c : children(t)) collect(c, pv, pr);
}
}  // namespace

std::set<std::string> pseudo_vars(const TermPtr& t) {
  std::set<std::string> pv, pr;
  collect(t, pv, pr);
  return pv;
}
std::set<std::string> primitive_names(const TermPtr& t) {
  std::set<std::string> pv, pr;
  collect(t, pv, pr);
  return pr;
}
bool has_pseudo(const TermPtr& t) { return !pseudo_vars(t).empty(); }

std::vector<AppEntry> application_sequence(const TermPtr& t) {
  auto* c = get<Comb>(t);
  if (!c) throw SortError("application_sequence: not a comb node: " + to_string(t));
  std::vector<AppEntry> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < c->seq.size(); ++i) {
    AppEntry e;
    if (c->seq.is_star(i)) {
      e.star = true;
    } else {
      e.arg = k;
      e.used = c->seq[i];
      int s = c->args[k]->sort;
      e.residual = s >= 0 ? s - e.used : 0;
      ++k;
    }
    out.push_back(e);
  }
  return out;
}

namespace {

std::string link_param(const Partition& s) {
  auto txt = to_string(s);
  return txt.substr(1, txt.size() - 2);
}

}  // namespace

std::string to_string(const TermPtr& t) {
  return std::visit(overloaded{
                        [](const Prim& p) { return p.name; },
                        [](const PseudoVar& p) { return "?" + p.name; },
                        [](const Comb& c) {
                          std::string s = "comb" + to_string(c.seq) + "(" + to_string(c.head);
                          for (const auto& a : c.args) s += ", " + to_string(a);
                          return s + ")";
                        },
                        [](const Link& l) { return "link[" + link_param(l.seq) + "](" + to_string(l.body) + ")"; },
                        [](const Per& p) { return "per" + to_string(p.seq) + "(" + to_string(p.body) + ")"; },
                        [](const Dum& d) { return "dum" + to_string(d.seq) + "(" + to_string(d.body) + ")"; },
                        [](const Neg& n) { return "not(" + to_string(n.body) + ")"; },
                        [](const Conj& c) { return "and(" + to_string(c.left) + ", " + to_string(c.right) + ")"; },
                        [](const Ex& e) { return "ex" + to_string(e.seq) + "(" + to_string(e.body) + ")"; },
                    },
                    t->node);
}

std::string to_string(const Signature& sig) {
  std::string out;
  for (const auto& [n, s] : sig.primitives()) out += "prim " + n + " : " + std::to_string(s) + ".\n";
  return out;
}

TermPtr subterm_at(const TermPtr& t, const Path& p) {
  TermPtr cur = t;
  for (auto i : p) {
    auto k = children(cur);
    if (i >= k.size()) throw SortError("path " + to_string(p) + " leaves the term");
    cur = k[i];
  }
  return cur;
}

namespace {
TermPtr replace_rec(const TermPtr& t, const Path& p, std::size_t at, const TermPtr& r) {
  if (at == p.size()) return r;
  auto k = children(t);
  if (p[at] >= k.size()) throw SortError("path " + to_string(p) + " leaves the term");
  k[p[at]] = replace_rec(k[p[at]], p, at + 1, r);
  return with_children(t, k);
}
}  // namespace

TermPtr replace_at(const TermPtr& t, const Path& p, TermPtr replacement) {
  return replace_rec(t, p, 0, replacement);
}

std::string to_string(const Path& p) {
  std::string s = "/";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += "/";
    s += std::to_string(p[i]);
  }
  return s;
}

}  // namespace cil
