#pragma once

// Random well-sorted CIL terms and random closed BL abstracts for property
// tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cil/bl.hpp"
#include "cil/cil.hpp"

namespace cil::gen {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct GenOptions {
  std::size_t max_sort = 3;
  bool pseudo_vars = false;
  std::vector<std::string> pseudo_names = {"X", "Y"};
};

/// Default test signature.
inline Signature test_signature() {
  Signature sig;
  sig.declare("P", 1);
  sig.declare("Q", 1);
  sig.declare("R", 2);
  sig.declare("S", 2);
  sig.declare("T3", 3);
  sig.declare("p", 0);
  sig.declare("c", -1);
  sig.declare("d", -1);
  return sig;
}

class TermGen {
 public:
  TermGen(const Signature& sig, GenOptions opt = {}) : sig_(sig), opt_(std::move(opt)) {
    for (const auto& [n, s] : sig.primitives()) {
      if (s < 0)
        consts_.push_back(n);
      else
        by_sort_[std::min<std::size_t>(s, 7)].push_back(n);
    }
  }

  TermPtr any(Rng& rng, std::size_t depth) {
    for (int tries = 0; tries < 50; ++tries) {
      auto t = attempt(rng, depth);
      if (t && t->sort >= 0 && static_cast<std::size_t>(t->sort) <= opt_.max_sort) return t;
    }
    return leaf(rng, 0);
  }

  TermPtr sorted(Rng& rng, std::size_t sort, std::size_t depth) {
    for (int tries = 0; tries < 60; ++tries) {
      auto t = attempt(rng, depth);
      if (t && t->sort == static_cast<int>(sort)) return t;
    }
    return leaf(rng, sort);
  }

  /// A primitive of the given sort, or dum over Truth when none exists.
  TermPtr leaf(Rng& rng, std::size_t sort) {
    auto it = by_sort_.find(sort);
    if (it != by_sort_.end() && !it->second.empty()) return prim(it->second[pick(rng, it->second.size())], sig_);
    return dum(DumSeq({static_cast<unsigned>(sort)}), prim("Truth", sig_));
  }

 private:
  TermPtr attempt(Rng& rng, std::size_t depth) {
    if (depth == 0) return leaf(rng, pick(rng, opt_.max_sort + 1));
    switch (pick(rng, 9)) {
      case 0:
        return leaf(rng, pick(rng, opt_.max_sort + 1));
      case 1:
      case 2:
        return make_comb(rng, depth);
      case 3: {
        auto b = any(rng, depth - 1);
        if (b->sort < 2) return nullptr;
        auto p = random_partition(rng, b->sort);
        return p.is_trivial() ? nullptr : link(p, b);
      }
      case 4: {
        auto b = any(rng, depth - 1);
        if (b->sort < 2) return nullptr;
        std::vector<std::size_t> v(b->sort);
        std::iota(v.begin(), v.end(), 0);
        std::shuffle(v.begin(), v.end(), rng);
        Permutation p(v);
        return p.is_identity() ? nullptr : per(p, b);
      }
      case 5: {
        auto b = any(rng, depth - 1);
        std::vector<unsigned> e(b->sort + 1, 0);
        e[pick(rng, e.size())] = 1;
        if (coin(rng, 0.2)) e[pick(rng, e.size())] += 1;
        return dum(DumSeq(e), b);
      }
      case 6:
        return neg(any(rng, depth - 1));
      case 7: {
        auto a = any(rng, depth - 1);
        return conj(a, sorted(rng, a->sort, depth - 1));
      }
      default: {
        auto b = any(rng, depth - 1);
        if (b->sort < 1) return nullptr;
        std::vector<bool> m(b->sort);
        bool anyq = false;
        for (std::size_t i = 0; i < m.size(); ++i) anyq = anyq || (m[i] = coin(rng, 0.4));
        if (!anyq) m[pick(rng, m.size())] = true;
        return ex(m, b);
      }
    }
  }

  TermPtr make_comb(Rng& rng, std::size_t depth) {
    auto head = any(rng, depth - 1);
    if (head->sort < 1) return nullptr;
    std::vector<int> s;
    std::vector<TermPtr> args;
    for (int i = 0; i < head->sort; ++i) {
      if (coin(rng, 0.35)) {
        s.push_back(kStar);
        continue;
      }
      auto r = pick(rng, 10);
      if (r == 0 && !consts_.empty()) {
        s.push_back(0);
        args.push_back(prim(consts_[pick(rng, consts_.size())], sig_));
      } else if (r == 1 && opt_.pseudo_vars) {
        s.push_back(0);
        args.push_back(pseudo(opt_.pseudo_names[pick(rng, opt_.pseudo_names.size())]));
      } else {
        auto a = any(rng, depth - 1);
        s.push_back(static_cast<int>(pick(rng, a->sort + 1)));
        args.push_back(a);
      }
    }
    if (std::all_of(s.begin(), s.end(), [](int e) { return e == kStar; })) return nullptr;
    CombSeq cs(s);
    if (cs.sigma() > static_cast<int>(opt_.max_sort) + 1) return nullptr;
    return comb(cs, head, std::move(args));
  }

  static Partition random_partition(Rng& rng, std::size_t n) {
    std::vector<std::size_t> labels(n);
    for (auto& l : labels) l = pick(rng, std::max<std::size_t>(1, n - 1));
    return Partition::from_labels(labels);
  }

  const Signature& sig_;
  GenOptions opt_;
  std::map<std::size_t, std::vector<std::string>> by_sort_;
  std::vector<std::string> consts_;
};

/// Random closed BL abstracts over a signature.
class AbstractGen {
 public:
  explicit AbstractGen(const Signature& sig) : sig_(sig) {
    for (const auto& [n, s] : sig.primitives()) {
      if (s < 0)
        consts_.push_back(n);
      else
        preds_.push_back({n, s});
    }
  }

  bl::TermPtr closed(Rng& rng, std::size_t depth) {
    counter_ = 0;
    std::vector<std::string> scope;
    return abstract(rng, depth, scope);
  }

 private:
  std::string fresh() { return "x" + std::to_string(counter_++); }

  bl::TermPtr abstract(Rng& rng, std::size_t depth, std::vector<std::string>& scope) {
    std::size_t n = pick(rng, 3);
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(fresh());
    auto saved = scope.size();
    scope.insert(scope.end(), vs.begin(), vs.end());
    auto f = formula(rng, depth, scope);
    scope.resize(saved);
    return bl::abstract(f, vs);
  }

  bl::FormulaPtr formula(Rng& rng, std::size_t depth, std::vector<std::string>& scope) {
    if (depth > 0) {
      switch (pick(rng, 7)) {
        case 0:
          return bl::neg(formula(rng, depth - 1, scope));
        case 1:
          return bl::conj(formula(rng, depth - 1, scope), formula(rng, depth - 1, scope));
        case 2: {
          auto v = fresh();
          scope.push_back(v);
          auto body = formula(rng, depth - 1, scope);
          scope.pop_back();
          return coin(rng) ? bl::exists(v, body) : bl::forall(v, body);
        }
        default:
          break;
      }
    }
    const auto& [name, arity] = preds_[pick(rng, preds_.size())];
    std::vector<bl::TermPtr> args;
    for (int i = 0; i < arity; ++i) args.push_back(term(rng, depth, scope));
    return bl::pred(name, std::move(args));
  }

  bl::TermPtr term(Rng& rng, std::size_t depth, std::vector<std::string>& scope) {
    auto r = pick(rng, 10);
    if (r < 5 && !scope.empty()) return bl::var(scope[pick(rng, scope.size())]);
    if (r < 7 && !consts_.empty()) return bl::constant(consts_[pick(rng, consts_.size())]);
    if (depth > 0) return abstract(rng, depth - 1, scope);
    if (!scope.empty()) return bl::var(scope[pick(rng, scope.size())]);
    return bl::constant(consts_.empty() ? "c" : consts_[0]);
  }

  const Signature& sig_;
  std::vector<std::string> consts_;
  std::vector<std::pair<std::string, int>> preds_;
  std::size_t counter_ = 0;
};

}  // namespace cil::gen
