#include "cil/model.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <unordered_map>

#include "cil/translate.hpp"

namespace cil::model {

namespace {

bool distinguished(const std::string& p) { return p == bl::kEqI || p == bl::kEqN || p == bl::kTruth; }

bl::FreshSupply fresh_for(const bl::TermPtr& d, const std::vector<bl::TermPtr>& tuple) {
  bl::FreshSupply f;
  f.reserve(d);
  for (const auto& t : tuple) f.reserve(t);
  return f;
}

std::string join_keys(const std::vector<Element>& t) {
  std::string s;
  for (const auto& e : t) {
    s += e.key;
    s += '\x1f';
  }
  return s;
}

std::vector<std::string> keys_of(const std::vector<Element>& t) {
  std::vector<std::string> k;
  for (const auto& e : t) k.push_back(e.key);
  return k;
}

}  // namespace

Element make_element(const bl::TermPtr& t) {
  auto fv = bl::free_vars(t);
  if (!fv.empty()) throw ModelError("not a closed term: " + bl::to_string(t));
  int sort = bl::is_abstract(t) ? static_cast<int>(bl::as_abstract(t).vseq.size()) : -1;
  return Element{t, bl::alpha_key(t), sort};
}

bl::TermPtr saturate_tail(const bl::TermPtr& d, const std::vector<bl::TermPtr>& tuple) {
  const auto& a = bl::as_abstract(d);
  if (tuple.size() > a.vseq.size())
    throw ModelError("tuple of length " + std::to_string(tuple.size()) + " for " + bl::to_string(d));
  std::size_t keep = a.vseq.size() - tuple.size();
  bl::Substitution sub;
  for (std::size_t i = 0; i < tuple.size(); ++i) sub.emplace(a.vseq[keep + i], tuple[i]);
  auto fresh = fresh_for(d, tuple);
  return bl::abstract(bl::substitute(a.scope, sub, fresh),
                      std::vector<std::string>(a.vseq.begin(), a.vseq.begin() + keep));
}

bl::TermPtr saturate(const bl::TermPtr& d, const std::vector<bl::TermPtr>& tuple) {
  if (bl::as_abstract(d).vseq.size() != tuple.size())
    throw ModelError("arity mismatch: " + bl::to_string(d) + " applied to " + std::to_string(tuple.size()) +
                     " elements");
  return saturate_tail(d, tuple);
}

// ------------------------------------------------------------------ carrier

Carrier Carrier::enumerate(const Signature& sig, const CarrierSpec& spec) {
  Carrier c;
  c.depth_ = spec.depth;
  auto push = [&](const bl::TermPtr& t) {
    auto e = make_element(t);
    if (c.index_.count(e.key)) return;
    c.index_.emplace(e.key, c.elems_.size());
    c.elems_.push_back(std::move(e));
  };
  for (const auto& k : sig.constants()) push(bl::constant(k));
  for (const auto& t : spec.extra) push(t);

  std::vector<std::pair<std::string, int>> preds;
  if (spec.predicates.empty()) {
    for (const auto& [n, s] : sig.primitives())
      if (s >= 0 && n != bl::kEqI && n != bl::kEqN) preds.emplace_back(n, s);
  } else {
    for (const auto& n : spec.predicates) {
      auto s = sig.sort_of(n);
      if (!s || *s < 0) throw ModelError("carrier predicate '" + n + "' is not a declared relation");
      preds.emplace_back(n, *s);
    }
  }

  // level[i]: enumeration level of elems_[i]; constants and extras count as 0.
  std::vector<std::size_t> level(c.elems_.size(), 0);
  auto full = [&] { return c.elems_.size() >= spec.max_elements; };
  for (std::size_t lv = 1; lv <= spec.depth && !c.truncated_; ++lv) {
    std::vector<std::size_t> lower;
    for (std::size_t i = 0; i < c.elems_.size(); ++i)
      if (level[i] < lv && (lv == 1 || level[i] > 0 || c.elems_[i].sort == -1)) lower.push_back(i);
    for (const auto& [name, arity] : preds) {
      for (int n = 0; n <= std::min(spec.max_sort, arity) && !c.truncated_; ++n) {
        std::vector<std::string> vs;
        for (int i = 0; i < n; ++i) vs.push_back("x" + std::to_string(i + 1));
        // candidate j < n is variable j, j >= n is lower[j - n]
        std::size_t ncand = static_cast<std::size_t>(n) + lower.size();
        if (ncand == 0 && arity > 0) continue;
        std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
        for (;;) {
          int next_var = 0;
          bool ok = true, has_top = lv == 1;
          std::vector<bl::TermPtr> args;
          for (auto j : pick) {
            if (j < static_cast<std::size_t>(n)) {
              if (static_cast<int>(j) > next_var) {
                ok = false;
                break;
              }
              if (static_cast<int>(j) == next_var) ++next_var;
              args.push_back(bl::var(vs[j]));
            } else {
              auto idx = lower[j - n];
              if (level[idx] + 1 == lv) has_top = true;
              args.push_back(c.elems_[idx].term);
            }
          }
          if (ok && next_var == n && has_top) {
            if (full()) {
              c.truncated_ = true;
              break;
            }
            auto before = c.elems_.size();
            push(bl::abstract(bl::pred(name, args), vs));
            if (c.elems_.size() > before) level.push_back(lv);
          }
          std::size_t k = pick.size();
          while (k > 0 && ++pick[k - 1] == ncand) pick[--k] = 0;
          if (k == 0) break;
        }
      }
    }
  }
  return c;
}

const Element* Carrier::find(const std::string& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &elems_[it->second];
}

bool Carrier::contains(const bl::TermPtr& t) const {
  if (!bl::free_vars(t).empty()) return false;
  return find(bl::alpha_key(t)) != nullptr;
}

std::vector<Element> Carrier::of_sort(int n) const {
  std::vector<Element> out;
  for (const auto& e : elems_)
    if (e.sort == n) out.push_back(e);
  return out;
}

// -------------------------------------------------------------------- model

struct Model::Ctx {
  Evaluator ev;
  std::set<std::pair<std::string, std::string>> active;  // eq_N pairs in progress
};

struct Model::Cache {
  std::mutex mu;
  std::unordered_map<std::string, bool> holds;
  std::unordered_map<std::string, bool> eqn;
  std::unordered_map<std::string, TermPtr> decomp;
  std::unordered_map<const Term*, Element> args;
};

Model::Model(ModelConfig cfg) : cfg_(std::move(cfg)), cache_(std::make_unique<Cache>()) {
  carrier_ = Carrier::enumerate(cfg_.sig, cfg_.carrier);
  for (const auto& e : carrier_.elements())
    if (cfg_.range == QuantifierRange::All || e.sort == -1) domain_.push_back(e);
  if (domain_.empty()) throw ModelError("empty quantifier domain");
  if (cfg_.extensions.empty()) throw ModelError("no extensions");
  std::set<std::string> names;
  bool found = false;
  for (std::size_t i = 0; i < cfg_.extensions.size(); ++i) {
    const auto& h = cfg_.extensions[i];
    if (!names.insert(h.name).second) throw ModelError("duplicate extension name '" + h.name + "'");
    if (h.name == cfg_.actual) {
      actual_ = i;
      found = true;
    }
    auto& keys = facts_.emplace_back();
    for (const auto& [p, tuples] : h.facts) {
      auto s = cfg_.sig.sort_of(p);
      if (!s) throw ModelError("extension " + h.name + ": undeclared predicate '" + p + "'");
      if (*s < 0 || distinguished(p))
        throw ModelError("extension " + h.name + ": '" + p + "' cannot be given facts");
      auto& rel = keys[p];
      for (const auto& t : tuples) {
        if (t.size() != static_cast<std::size_t>(*s))
          throw ModelError("extension " + h.name + ": " + p + " needs " + std::to_string(*s) + "-tuples");
        std::vector<std::string> k;
        for (const auto& x : t) {
          auto e = make_element(x);
          if (!carrier_.find(e.key))
            throw ModelError("extension " + h.name + ": element outside carrier: " + bl::to_string(x));
          k.push_back(e.key);
        }
        rel.insert(std::move(k));
      }
    }
  }
  if (!found) throw ModelError("actual extension '" + cfg_.actual + "' is not among the extensions");
  for (const auto& [p, t] : cfg_.interpretation) {
    auto s = cfg_.sig.sort_of(p);
    if (!s) throw ModelError("interpretation of undeclared primitive '" + p + "'");
    if (distinguished(p)) throw ModelError("'" + p + "' has a fixed interpretation");
    auto e = make_element(t);
    if (e.sort != *s)
      throw ModelError("interpretation of " + p + " has sort " + std::to_string(e.sort) + ", expected " +
                       std::to_string(*s));
    if (*s == -1 && !(std::holds_alternative<bl::Const>(t->node) && std::get<bl::Const>(t->node).name == p))
      throw ModelError("constants denote themselves in a term model: " + p);
  }
  for (const auto& [v, t] : cfg_.assignment) make_element(t);
}

Model::~Model() = default;

TermPtr Model::decomposition(const Element& d) const {
  {
    std::lock_guard<std::mutex> g(cache_->mu);
    auto it = cache_->decomp.find(d.key);
    if (it != cache_->decomp.end()) return it->second;
  }
  TermPtr t;
  try {
    t = bealer_decompose(d.term, cfg_.sig);
  } catch (const std::exception& e) {
    throw ModelError("cannot decompose " + bl::to_string(d.term) + ": " + e.what());
  }
  std::lock_guard<std::mutex> g(cache_->mu);
  return cache_->decomp.emplace(d.key, t).first->second;
}

Element Model::arg_element(const TermPtr& arg) const {
  {
    std::lock_guard<std::mutex> g(cache_->mu);
    auto it = cache_->args.find(arg.get());
    if (it != cache_->args.end()) return it->second;
  }
  auto e = make_element(j_translate(arg, cfg_.sig));
  std::lock_guard<std::mutex> g(cache_->mu);
  return cache_->args.emplace(arg.get(), e).first->second;
}

bool Model::for_tuples(std::size_t n, const std::function<bool(const std::vector<Element>&)>& f) const {
  std::vector<std::size_t> idx(n, 0);
  std::vector<Element> t(n, domain_.front());
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) t[i] = domain_[idx[i]];
    if (!f(t)) return false;
    std::size_t k = n;
    while (k > 0 && ++idx[k - 1] == domain_.size()) idx[--k] = 0;
    if (k == 0) return true;
  }
}

bool Model::eval_extension(std::size_t h, const bl::TermPtr& d, const std::vector<bl::TermPtr>& tuple,
                           Evaluator ev) const {
  std::vector<Element> t;
  for (const auto& x : tuple) {
    auto e = make_element(x);
    if (!carrier_.find(e.key)) throw ModelError("element outside carrier: " + bl::to_string(x));
    t.push_back(std::move(e));
  }
  return holds(h, make_element(d), t, ev);
}

bool Model::holds(std::size_t h, const Element& d, const std::vector<Element>& tuple, Evaluator ev) const {
  Ctx c{ev, {}};
  return eval_element(h, d, tuple, ev, c);
}

bool Model::eval_element(std::size_t h, const Element& d, const std::vector<Element>& t, Evaluator ev,
                         Ctx& c) const {
  if (h >= cfg_.extensions.size()) throw ModelError("no extension #" + std::to_string(h));
  if (d.sort < 0) throw ModelError("individual " + d.key + " has no relational extension");
  if (t.size() != static_cast<std::size_t>(d.sort))
    throw ModelError("arity mismatch: sort " + std::to_string(d.sort) + " element applied to " +
                     std::to_string(t.size()) + " elements");
  std::string key = (ev == Evaluator::Decomposition ? "D" : "S") + std::to_string(h) + "|" + d.key + "|" +
                    join_keys(t);
  {
    std::lock_guard<std::mutex> g(cache_->mu);
    auto it = cache_->holds.find(key);
    if (it != cache_->holds.end()) return it->second;
  }
  bool r;
  if (ev == Evaluator::Decomposition) {
    r = eval_cil(h, decomposition(d), t, c);
  } else {
    std::vector<bl::TermPtr> terms;
    for (const auto& e : t) terms.push_back(e.term);
    r = eval_formula(h, bl::as_abstract(saturate(d.term, terms)).scope, c);
  }
  std::lock_guard<std::mutex> g(cache_->mu);
  cache_->holds.emplace(key, r);
  return r;
}

bool Model::atom(std::size_t h, const std::string& pred, const std::vector<Element>& args, Evaluator ev,
                 Ctx& c) const {
  if (pred == bl::kEqI) return args.at(0).key == args.at(1).key;
  if (pred == bl::kEqN) return eq_n(args.at(0), args.at(1), ev, c);
  if (pred == bl::kTruth) return true;
  const auto& facts = facts_[h];
  auto it = facts.find(pred);
  return it != facts.end() && it->second.count(keys_of(args)) > 0;
}

bool Model::exists_fill(std::size_t h, const TermPtr& body, const std::vector<bool>& mask,
                        std::vector<Element>& slots, std::size_t from, Ctx& c) const {
  while (from < mask.size() && !mask[from]) ++from;
  if (from == mask.size()) return eval_cil(h, body, slots, c);
  for (const auto& e : domain_) {
    slots[from] = e;
    if (exists_fill(h, body, mask, slots, from + 1, c)) return true;
  }
  return false;
}

bool Model::eval_cil(std::size_t h, const TermPtr& t, const std::vector<Element>& tuple, Ctx& c) const {
  switch (kind(t)) {
    case Kind::Prim:
      return atom(h, as<Prim>(t).name, tuple, c.ev, c);
    case Kind::PseudoVar:
      throw ModelError("pseudo-variable in a closed decomposition");
    case Kind::Neg:
      return !eval_cil(h, as<Neg>(t).body, tuple, c);
    case Kind::Conj: {
      const auto& n = as<Conj>(t);
      return eval_cil(h, n.left, tuple, c) && eval_cil(h, n.right, tuple, c);
    }
    case Kind::Ex: {
      const auto& n = as<Ex>(t);
      std::vector<Element> slots(n.seq.size(), domain_.front());
      std::size_t k = 0;
      for (std::size_t i = 0; i < n.seq.size(); ++i)
        if (!n.seq[i]) slots[i] = tuple.at(k++);
      return exists_fill(h, n.body, n.seq, slots, 0, c);
    }
    case Kind::Dum: {
      const auto& n = as<Dum>(t);
      auto mask = n.seq.mask();
      std::vector<Element> body;
      for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) body.push_back(tuple.at(i));
      return eval_cil(h, n.body, body, c);
    }
    case Kind::Per: {
      const auto& n = as<Per>(t);
      std::vector<Element> body;
      for (std::size_t i = 0; i < n.seq.size(); ++i) body.push_back(tuple.at(n.seq(i)));
      return eval_cil(h, n.body, body, c);
    }
    case Kind::Link: {
      const auto& n = as<Link>(t);
      return eval_cil(h, n.body, sharp(tuple, n.seq), c);
    }
    case Kind::Comb: {
      const auto& n = as<Comb>(t);
      std::vector<Element> head;
      std::size_t pos = 0;
      for (std::size_t i = 0; i < n.seq.size(); ++i) {
        auto w = static_cast<std::size_t>(n.seq.width(i));
        if (n.seq.is_star(i)) {
          head.push_back(tuple.at(pos++));
          continue;
        }
        auto a = arg_element(n.args[n.seq.arg_index(i)]);
        if (w == 0) {
          head.push_back(std::move(a));
          continue;
        }
        std::vector<bl::TermPtr> ys;
        for (std::size_t j = 0; j < w; ++j) ys.push_back(tuple.at(pos++).term);
        head.push_back(make_element(saturate_tail(a.term, ys)));
      }
      return eval_cil(h, n.head, head, c);
    }
  }
  return false;
}

bool Model::eval_formula(std::size_t h, const bl::FormulaPtr& f, Ctx& c) const {
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, bl::Pred>) {
          std::vector<Element> args;
          for (const auto& a : n.args) args.push_back(make_element(a));
          return atom(h, n.name, args, c.ev, c);
        } else if constexpr (std::is_same_v<N, bl::Not>) {
          return !eval_formula(h, n.body, c);
        } else if constexpr (std::is_same_v<N, bl::And>) {
          return eval_formula(h, n.left, c) && eval_formula(h, n.right, c);
        } else {
          bool want = std::is_same_v<N, bl::Exists>;
          for (const auto& e : domain_) {
            bl::FreshSupply fr;
            fr.reserve(n.body);
            auto body = bl::substitute(n.body, {{n.var, e.term}}, fr);
            if (eval_formula(h, body, c) == want) return want;
          }
          return !want;
        }
      },
      f->node);
}

bool Model::eq_n(const Element& a, const Element& b, Evaluator ev) const {
  Ctx c{ev, {}};
  return eq_n(a, b, ev, c);
}

bool Model::eq_n(const Element& a, const Element& b, Evaluator ev, Ctx& c) const {
  if (a.key == b.key) return true;
  if (a.sort != b.sort || a.sort < 0) return false;
  auto pair = std::minmax(a.key, b.key);
  std::string key = (ev == Evaluator::Decomposition ? "D" : "S") + pair.first + "\x1e" + pair.second;
  {
    std::lock_guard<std::mutex> g(cache_->mu);
    auto it = cache_->eqn.find(key);
    if (it != cache_->eqn.end()) return it->second;
  }
  auto active = std::make_pair(pair.first, pair.second);
  if (!c.active.insert(active).second)
    throw ModelError("circular =_N evaluation between " + bl::to_string(a.term) + " and " + bl::to_string(b.term));
  bool r = true;
  for (std::size_t h = 0; h < cfg_.extensions.size() && r; ++h)
    r = for_tuples(static_cast<std::size_t>(a.sort), [&](const std::vector<Element>& t) {
      return eval_element(h, a, t, ev, c) == eval_element(h, b, t, ev, c);
    });
  c.active.erase(active);
  std::lock_guard<std::mutex> g(cache_->mu);
  cache_->eqn.emplace(key, r);
  return r;
}

// ------------------------------------------------------------ interpretation

namespace {

std::map<std::string, bl::TermPtr> predicate_map(const ModelConfig& cfg) {
  std::map<std::string, bl::TermPtr> by;
  for (const auto& [p, t] : cfg.interpretation)
    if (bl::is_abstract(t)) by.emplace(p, t);
  return by;
}

}  // namespace

bl::TermPtr Model::interpret(const bl::FormulaPtr& phi) const { return interpret(bl::abstract(phi)); }

bl::TermPtr Model::interpret(const bl::TermPtr& t) const { return interpret(t, cfg_.assignment); }

bl::TermPtr Model::interpret(const bl::TermPtr& t, const Assignment& a) const {
  bl::FreshSupply fr;
  fr.reserve(t);
  for (const auto& [v, e] : a) {
    fr.reserve(v);
    fr.reserve(e);
  }
  auto by = predicate_map(cfg_);
  for (const auto& [p, e] : by) fr.reserve(e);
  auto wrapped = bl::pred("_", {t});
  if (!by.empty()) wrapped = bl::substitute_predicates(wrapped, by, fr);
  bl::Substitution sub;
  for (const auto& v : bl::free_vars(wrapped)) {
    auto it = a.find(v);
    if (it == a.end()) throw ModelError("unassigned variable '" + v + "'");
    sub.emplace(v, it->second);
  }
  wrapped = bl::substitute(wrapped, sub, fr);
  return std::get<bl::Pred>(wrapped->node).args.front();
}

bl::TermPtr Model::interpret(const TermPtr& t) const {
  bl::TermPtr b;
  try {
    b = j_translate(t, cfg_.sig);
  } catch (const std::exception& e) {
    throw ModelError(std::string("symbol not interpreted: ") + e.what());
  }
  return interpret(b);
}

bool Model::satisfies_in(std::size_t h, const bl::FormulaPtr& phi, Evaluator ev) const {
  auto d = make_element(interpret(phi));
  return holds(h, d, {}, ev);
}

bool Model::satisfies(const bl::FormulaPtr& phi, Evaluator ev) const { return satisfies_in(actual_, phi, ev); }

bool Model::satisfies_under(const bl::FormulaPtr& phi, const Assignment& changes, Evaluator ev) const {
  auto a = cfg_.assignment;
  for (const auto& [v, t] : changes) a[v] = t;
  return holds(actual_, make_element(interpret(bl::abstract(phi), a)), {}, ev);
}

bool Model::satisfies(const TermPtr& t, Evaluator ev) const {
  if (t->sort != 0) throw ModelError("satisfaction needs a sort-0 term, got sort " + std::to_string(t->sort));
  return holds(actual_, make_element(interpret(t)), {}, ev);
}

}  // namespace cil::model
