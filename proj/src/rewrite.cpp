#include "cil/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "cil/translate.hpp"

namespace cil {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// ------------------------------------------------------------ elision

TermPtr mk_per(const Permutation& p, TermPtr t) { return p.is_identity() ? t : per(p, std::move(t)); }
TermPtr mk_link(const Partition& s, TermPtr t) { return s.is_trivial() ? t : link(s, std::move(t)); }
TermPtr mk_dum(const std::vector<bool>& original, TermPtr t) {
  auto d = DumSeq::from_mask(original);
  return d.is_trivial() ? t : dum(d, std::move(t));
}
TermPtr mk_ex(std::vector<bool> m, TermPtr t) {
  if (std::find(m.begin(), m.end(), true) == m.end()) return t;
  return ex(std::move(m), std::move(t));
}
TermPtr mk_comb(std::vector<int> s, TermPtr head, std::vector<TermPtr> args) {
  if (std::all_of(s.begin(), s.end(), [](int e) { return e == kStar; })) return head;
  return comb(CombSeq(std::move(s)), std::move(head), std::move(args));
}

/// per(link(core)) realizing the surjection f from the wires of core onto
/// [0, m).
TermPtr modify(const std::vector<std::size_t>& f, TermPtr core) {
  auto s = Partition::from_labels(f);
  std::vector<std::size_t> img;
  for (const auto& b : s.blocks()) img.push_back(f[b.front()]);
  return mk_per(Permutation(std::move(img)), mk_link(s, std::move(core)));
}

bool sorted_mask(const std::vector<bool>& m) { return std::is_sorted(m.begin(), m.end()); }

// ------------------------------------------------------------ comb groups

struct Group {
  bool star = false;
  std::size_t pos = 0;
  std::size_t arg = kNone;
  int width = 0;
  int folded = 0;
  std::size_t first = 0;
};

std::vector<Group> groups(const Comb& c) {
  std::vector<Group> out;
  std::size_t first = 0, k = 0;
  for (std::size_t h = 0; h < c.seq.size(); ++h) {
    Group g;
    g.pos = h;
    g.first = first;
    g.star = c.seq.is_star(h);
    if (g.star) {
      g.width = 1;
    } else {
      g.arg = k++;
      g.width = c.seq[h];
      g.folded = std::max(0, c.args[g.arg]->sort - g.width);
    }
    first += g.width;
    out.push_back(g);
  }
  return out;
}

// ------------------------------------------------------------ rules

using Result = std::optional<TermPtr>;

Result r1(const TermPtr& t) {
  auto* e = get<Ex>(t);
  if (!e) return {};
  auto* in = get<Ex>(e->body);
  if (!in) return {};
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < in->seq.size(); ++i)
    if (!in->seq[i]) rest.push_back(i);
  auto merged = in->seq;
  std::size_t max_outer = 0;
  for (std::size_t j = 0; j < rest.size(); ++j)
    if (e->seq[j]) {
      merged[rest[j]] = true;
      max_outer = std::max(max_outer, rest[j]);
    }
  auto first_inner = std::find(in->seq.begin(), in->seq.end(), true) - in->seq.begin();
  if (max_outer > static_cast<std::size_t>(first_inner)) return {};
  return ex(std::move(merged), in->body);
}

Result r2(const TermPtr& t) {
  auto* d = get<Dum>(t);
  if (!d) return {};
  auto* in = get<Dum>(d->body);
  if (!in) return {};
  return dum(compose(d->seq, in->seq), in->body);
}

Result r3(const TermPtr& t) {
  auto* p = get<Per>(t);
  if (!p) return {};
  auto* in = get<Per>(p->body);
  if (!in) return {};
  return mk_per(compose(p->seq, in->seq), in->body);
}

Result r4(const TermPtr& t) {
  auto* l = get<Link>(t);
  if (!l) return {};
  auto* in = get<Link>(l->body);
  if (!in) return {};
  return link(compose(l->seq, in->seq), in->body);
}

Result r5(const TermPtr& t) {
  auto* p = get<Per>(t);
  if (!p) return {};
  auto* n = get<Neg>(p->body);
  if (!n) return {};
  return neg(per(p->seq, n->body));
}

Result r6(const TermPtr& t) {
  auto* d = get<Dum>(t);
  if (!d) return {};
  auto* n = get<Neg>(d->body);
  if (!n) return {};
  return neg(dum(d->seq, n->body));
}

Result r7(const TermPtr& t) {
  auto* l = get<Link>(t);
  if (!l) return {};
  auto* n = get<Neg>(l->body);
  if (!n) return {};
  return neg(link(l->seq, n->body));
}

Result r8(const TermPtr& t) {
  auto* c = get<Comb>(t);
  if (!c) return {};
  auto* n = get<Neg>(c->head);
  if (!n) return {};
  return neg(comb(c->seq, n->body, c->args));
}

Result r9(const TermPtr& t) {
  auto* p = get<Per>(t);
  if (!p) return {};
  auto* e = get<Ex>(p->body);
  if (!e) return {};
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < e->seq.size(); ++i)
    if (!e->seq[i]) rest.push_back(i);
  std::vector<std::size_t> img(e->seq.size());
  std::iota(img.begin(), img.end(), 0);
  for (std::size_t j = 0; j < rest.size(); ++j) img[rest[j]] = rest[p->seq(j)];
  return ex(e->seq, per(Permutation(std::move(img)), e->body));
}

Result r10(const TermPtr& t) {
  auto* d = get<Dum>(t);
  if (!d) return {};
  auto* e = get<Ex>(d->body);
  if (!e) return {};
  std::vector<bool> dmask, emask;
  std::size_t ti = 0;
  for (bool o : d->seq.mask()) {
    if (o) {
      while (e->seq[ti]) {
        dmask.push_back(true);
        emask.push_back(true);
        ++ti;
      }
      dmask.push_back(true);
      emask.push_back(false);
      ++ti;
    } else {
      dmask.push_back(false);
      emask.push_back(false);
    }
  }
  for (; ti < e->seq.size(); ++ti) {
    dmask.push_back(true);
    emask.push_back(true);
  }
  return ex(std::move(emask), mk_dum(dmask, e->body));
}

Result r11(const TermPtr& t) {
  auto* l = get<Link>(t);
  if (!l) return {};
  auto* e = get<Ex>(l->body);
  if (!e) return {};
  std::vector<std::size_t> labels;
  std::size_t j = 0, fresh = l->seq.block_count();
  for (bool q : e->seq) labels.push_back(q ? fresh++ : l->seq.block_of(j++));
  auto s = Partition::from_labels(labels);
  std::vector<bool> m;
  for (const auto& b : s.blocks()) m.push_back(e->seq[b.front()]);
  return ex(std::move(m), link(s, e->body));
}

Result r12(const TermPtr& t) {
  auto* c = get<Comb>(t);
  if (!c) return {};
  auto* e = get<Ex>(c->head);
  if (!e) return {};
  std::vector<int> s;
  std::vector<bool> m;
  std::size_t j = 0;
  for (bool q : e->seq) {
    if (q) {
      s.push_back(kStar);
      m.push_back(true);
    } else {
      s.push_back(c->seq[j]);
      m.insert(m.end(), c->seq.width(j), false);
      ++j;
    }
  }
  return ex(std::move(m), comb(CombSeq(std::move(s)), e->body, c->args));
}

Result r13(const TermPtr& t) {
  auto* p = get<Per>(t);
  if (!p) return {};
  auto* a = get<Conj>(p->body);
  if (!a) return {};
  return conj(per(p->seq, a->left), per(p->seq, a->right));
}

Result r14(const TermPtr& t) {
  auto* l = get<Link>(t);
  if (!l) return {};
  auto* a = get<Conj>(l->body);
  if (!a) return {};
  return conj(link(l->seq, a->left), link(l->seq, a->right));
}

Result r15(const TermPtr& t) {
  auto* d = get<Dum>(t);
  if (!d) return {};
  auto* a = get<Conj>(d->body);
  if (!a) return {};
  return conj(dum(d->seq, a->left), dum(d->seq, a->right));
}

Result r16(const TermPtr& t) {
  auto* c = get<Comb>(t);
  if (!c) return {};
  auto* a = get<Conj>(c->head);
  if (!a) return {};
  return conj(comb(c->seq, a->left, c->args), comb(c->seq, a->right, c->args));
}

Result r17(const TermPtr& t) {
  auto* p = get<Per>(t);
  if (!p) return {};
  auto* d = get<Dum>(p->body);
  if (!d) return {};
  auto orig = d->seq.original_positions();
  std::vector<bool> mask(p->seq.size(), false);
  for (auto o : orig) mask[p->seq(o)] = true;
  std::vector<std::size_t> rank(p->seq.size(), 0);
  for (std::size_t i = 0, r = 0; i < mask.size(); ++i)
    if (mask[i]) rank[i] = r++;
  std::vector<std::size_t> img;
  for (auto o : orig) img.push_back(rank[p->seq(o)]);
  return mk_dum(mask, mk_per(Permutation(std::move(img)), d->body));
}

Result r18(const TermPtr& t) {
  auto* l = get<Link>(t);
  if (!l) return {};
  auto* d = get<Dum>(l->body);
  if (!d) return {};
  const auto& s = l->seq;
  auto orig = d->seq.original_positions();
  std::vector<bool> mask(s.block_count(), false);
  for (auto o : orig) mask[s.block_of(o)] = true;
  std::vector<std::size_t> rank(s.block_count(), 0);
  for (std::size_t b = 0, r = 0; b < mask.size(); ++b)
    if (mask[b]) rank[b] = r++;
  std::vector<std::size_t> f;
  for (auto o : orig) f.push_back(rank[s.block_of(o)]);
  return mk_dum(mask, modify(f, d->body));
}

Result r19(const TermPtr& t) {
  auto* c = get<Comb>(t);
  if (!c) return {};
  auto* d = get<Dum>(c->head);
  if (!d) return {};
  auto mask = d->seq.mask();
  std::vector<int> s;
  std::vector<TermPtr> args;
  std::vector<bool> out;
  for (const auto& g : groups(*c)) {
    if (mask[g.pos]) {
      s.push_back(c->seq[g.pos]);
      if (!g.star) args.push_back(c->args[g.arg]);
    }
    out.insert(out.end(), g.width, mask[g.pos]);
  }
  return mk_dum(out, mk_comb(std::move(s), d->body, std::move(args)));
}

Result r20(const TermPtr& t) {
  auto* l = get<Link>(t);
  if (!l) return {};
  auto* p = get<Per>(l->body);
  if (!p) return {};
  std::vector<std::size_t> f;
  for (std::size_t i = 0; i < p->seq.size(); ++i) f.push_back(l->seq.block_of(p->seq(i)));
  return modify(f, p->body);
}

Result r20inv(const TermPtr& t) {
  auto* p = get<Per>(t);
  if (!p) return {};
  auto* l = get<Link>(p->body);
  if (!l) return {};
  std::size_t n = l->seq.ground_size();
  std::vector<std::size_t> f(n), order(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = p->seq(l->seq.block_of(i));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return f[a] < f[b]; });
  std::vector<std::size_t> img(n), labels(n);
  for (std::size_t r = 0; r < n; ++r) {
    img[order[r]] = r;
    labels[r] = f[order[r]];
  }
  return mk_link(Partition::from_labels(labels), mk_per(Permutation(std::move(img)), l->body));
}

Result r21(const TermPtr& t) {
  auto* c = get<Comb>(t);
  if (!c) return {};
  auto* p = get<Per>(c->head);
  if (!p) return {};
  auto gs = groups(*c);
  std::vector<int> s;
  std::vector<TermPtr> args;
  std::vector<std::size_t> img;
  for (std::size_t i = 0; i < p->seq.size(); ++i) {
    const auto& g = gs[p->seq(i)];
    s.push_back(c->seq[g.pos]);
    if (!g.star) args.push_back(c->args[g.arg]);
    for (int r = 0; r < g.width; ++r) img.push_back(g.first + r);
  }
  return mk_per(Permutation(std::move(img)), comb(CombSeq(std::move(s)), p->body, std::move(args)));
}

Result r22(const TermPtr& t) {
  auto* c = get<Comb>(t);
  if (!c) return {};
  auto* l = get<Link>(c->head);
  if (!l) return {};
  auto gs = groups(*c);
  std::vector<int> s;
  std::vector<TermPtr> args;
  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < l->seq.ground_size(); ++i) {
    const auto& g = gs[l->seq.block_of(i)];
    s.push_back(c->seq[g.pos]);
    if (!g.star) args.push_back(c->args[g.arg]);
    for (int r = 0; r < g.width; ++r) labels.push_back(g.first + r);
  }
  return mk_link(Partition::from_labels(labels), comb(CombSeq(std::move(s)), l->body, std::move(args)));
}

Result r23(const TermPtr& t) {
  auto* outer = get<Comb>(t);
  if (!outer) return {};
  auto* inner = get<Comb>(outer->head);
  if (!inner) return {};
  auto og = groups(*outer);  // one group per wire of the inner comb
  std::vector<int> s;
  std::vector<TermPtr> args;
  for (const auto& g : groups(*inner)) {
    if (g.star) {
      const auto& w = og[g.first];
      s.push_back(outer->seq[w.pos]);
      if (!w.star) args.push_back(outer->args[w.arg]);
      continue;
    }
    const auto& b = inner->args[g.arg];
    bool plain = true;
    for (int r = 0; r < g.width; ++r) plain = plain && og[g.first + r].star;
    if (plain) {
      s.push_back(g.width);
      args.push_back(b);
      continue;
    }
    std::vector<int> u(g.folded, kStar);
    std::vector<TermPtr> cs;
    int wires = 0;
    for (int r = 0; r < g.width; ++r) {
      const auto& w = og[g.first + r];
      u.push_back(outer->seq[w.pos]);
      wires += w.width;
      if (!w.star) cs.push_back(outer->args[w.arg]);
    }
    s.push_back(wires);
    args.push_back(comb(CombSeq(std::move(u)), b, std::move(cs)));
  }
  return comb(CombSeq(std::move(s)), inner->head, std::move(args));
}

Result rexsort(const TermPtr& t) {
  auto* e = get<Ex>(t);
  if (!e || sorted_mask(e->seq)) return {};
  std::size_t k = std::count(e->seq.begin(), e->seq.end(), false);
  std::vector<std::size_t> img;
  std::size_t a = 0, b = k;
  for (bool q : e->seq) img.push_back(q ? b++ : a++);
  auto m = e->seq;
  std::sort(m.begin(), m.end());
  return ex(std::move(m), per(Permutation(std::move(img)), e->body));
}

Result rff(const TermPtr& t) {
  const Permutation* p = nullptr;
  const Partition* s = nullptr;
  TermPtr body = t;
  if (auto* pp = get<Per>(t)) {
    p = &pp->seq;
    body = pp->body;
    if (auto* ll = get<Link>(body)) {
      s = &ll->seq;
      body = ll->body;
    }
  } else if (auto* ll = get<Link>(t)) {
    s = &ll->seq;
    body = ll->body;
  }
  auto* c = get<Comb>(body);
  if (!c || (!p && !s)) return {};
  std::vector<std::size_t> f(body->sort);
  for (std::size_t w = 0; w < f.size(); ++w) {
    std::size_t x = s ? s->block_of(w) : w;
    f[w] = p ? (*p)(x) : x;
  }
  auto gs = groups(*c);
  auto increasing = [&](const Group& g) {
    for (int r = 1; r < g.width; ++r)
      if (f[g.first + r - 1] >= f[g.first + r]) return false;
    return true;
  };
  if (std::all_of(gs.begin(), gs.end(), increasing)) return {};

  std::vector<int> seq;
  std::vector<TermPtr> args;
  std::vector<std::size_t> nf;
  for (const auto& g : gs) {
    if (g.star) {
      seq.push_back(kStar);
      nf.push_back(f[g.first]);
      continue;
    }
    const auto& a = c->args[g.arg];
    std::vector<std::size_t> vals(f.begin() + g.first, f.begin() + g.first + g.width);
    if (increasing(g)) {
      seq.push_back(g.width);
      args.push_back(a);
      nf.insert(nf.end(), vals.begin(), vals.end());
      continue;
    }
    auto d = vals;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    auto rank = [&](std::size_t v) { return static_cast<std::size_t>(std::lower_bound(d.begin(), d.end(), v) - d.begin()); };
    std::size_t folded = g.folded;
    std::vector<std::size_t> labels;
    for (std::size_t i = 0; i < folded; ++i) labels.push_back(i);
    for (auto v : vals) labels.push_back(folded + rank(v));
    auto u = Partition::from_labels(labels);
    std::vector<std::size_t> img;
    for (const auto& b : u.blocks()) img.push_back(b.front() < folded ? b.front() : folded + rank(vals[b.front() - folded]));
    args.push_back(mk_per(Permutation(std::move(img)), mk_link(u, a)));
    seq.push_back(static_cast<int>(d.size()));
    nf.insert(nf.end(), d.begin(), d.end());
  }
  return modify(nf, comb(CombSeq(std::move(seq)), c->head, std::move(args)));
}

Result rdumout(const TermPtr& t) {
  auto* c = get<Comb>(t);
  if (!c) return {};
  auto gs = groups(*c);
  std::vector<std::vector<bool>> used(gs.size());
  bool any = false;
  for (const auto& g : gs) {
    if (g.star || g.width == 0) continue;
    auto u = used_wires(c->args[g.arg]);
    for (int r = 0; r < g.width; ++r) any = any || !u[g.folded + r];
    used[g.pos] = std::move(u);
  }
  if (!any) return {};
  std::vector<int> seq;
  std::vector<TermPtr> args;
  std::vector<bool> out;
  for (const auto& g : gs) {
    if (g.star) {
      seq.push_back(kStar);
      out.push_back(true);
      continue;
    }
    const auto& a = c->args[g.arg];
    if (g.width == 0) {
      seq.push_back(0);
      args.push_back(a);
      continue;
    }
    const auto& u = used[g.pos];
    std::vector<bool> drop(a->sort, false);
    int kept = 0;
    for (int r = 0; r < g.width; ++r) {
      bool live = u[g.folded + r];
      drop[g.folded + r] = !live;
      out.push_back(live);
      kept += live;
    }
    seq.push_back(kept);
    args.push_back(drop_wires(a, drop));
  }
  return mk_dum(out, comb(CombSeq(std::move(seq)), c->head, std::move(args)));
}

Result rdumcap(const TermPtr& t) {
  auto* e = get<Ex>(t);
  if (!e) return {};
  auto u = used_wires(e->body);
  std::vector<bool> drop(u.size(), false), m;
  bool any = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    drop[i] = e->seq[i] && !u[i];
    any = any || drop[i];
    if (!drop[i]) m.push_back(e->seq[i]);
  }
  if (!any) return {};
  return mk_ex(std::move(m), drop_wires(e->body, drop));
}

struct RuleEntry {
  RuleId id;
  const char* name;
  Result (*fn)(const TermPtr&);
};

const std::vector<RuleEntry>& rule_table() {
  static const std::vector<RuleEntry> table = {
      {RuleId::R1, "R1", r1},           {RuleId::R2, "R2", r2},           {RuleId::R3, "R3", r3},
      {RuleId::R4, "R4", r4},           {RuleId::R5, "R5", r5},           {RuleId::R6, "R6", r6},
      {RuleId::R7, "R7", r7},           {RuleId::R8, "R8", r8},           {RuleId::R9, "R9", r9},
      {RuleId::R10, "R10", r10},        {RuleId::R11, "R11", r11},        {RuleId::R12, "R12", r12},
      {RuleId::R13, "R13", r13},        {RuleId::R14, "R14", r14},        {RuleId::R15, "R15", r15},
      {RuleId::R16, "R16", r16},        {RuleId::R17, "R17", r17},        {RuleId::R18, "R18", r18},
      {RuleId::R19, "R19", r19},        {RuleId::R20, "R20", r20},        {RuleId::R21, "R21", r21},
      {RuleId::R20inv, "R20inv", r20inv}, {RuleId::R22, "R22", r22},      {RuleId::R23, "R23", r23},
      {RuleId::REXSORT, "REXSORT", rexsort}, {RuleId::RFF, "RFF", rff},   {RuleId::RDUMOUT, "RDUMOUT", rdumout},
      {RuleId::RDUMCAP, "RDUMCAP", rdumcap},
  };
  return table;
}

// A link directly under a per is part of that per's modification, so RFF
// is matched at the per node only.
bool blocked(RuleId id, const TermPtr& t, bool under_per) {
  return id == RuleId::RFF && under_per && kind(t) == Kind::Link;
}

std::vector<Redex> redexes_at(const TermPtr& t, bool include_inverse, bool under_per, bool first_only) {
  std::vector<Redex> out;
  for (const auto& e : rule_table()) {
    if (e.id == RuleId::R20inv && !include_inverse) continue;
    if (blocked(e.id, t, under_per)) continue;
    if (auto r = e.fn(t)) {
      out.push_back(Redex{e.id, {}, t, *r});
      if (first_only) break;
    }
  }
  return out;
}

void collect(const TermPtr& t, Path& path, bool under_per, const RedexOptions& opt, std::vector<Redex>& out) {
  auto kids = children(t);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    path.push_back(i);
    collect(kids[i], path, kind(t) == Kind::Per, opt, out);
    path.pop_back();
  }
  for (auto r : redexes_at(t, opt.include_inverse, under_per, false)) {
    r.path = path;
    out.push_back(std::move(r));
  }
}

class Normalizer {
 public:
  explicit Normalizer(const NormalizeOptions& opt) : opt_(opt) {}

  TermPtr run(const TermPtr& t, Path& path, bool under_per) {
    TermPtr cur = t;
    for (;;) {
      auto kids = children(cur);
      bool changed = false;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        path.push_back(i);
        auto k = run(kids[i], path, kind(cur) == Kind::Per);
        path.pop_back();
        if (k != kids[i]) {
          kids[i] = std::move(k);
          changed = true;
        }
      }
      if (changed) cur = with_children(cur, kids);
      auto rs = redexes_at(cur, false, under_per, true);
      if (rs.empty()) return cur;
      record(rs.front(), path);
      cur = rs.front().after;
    }
  }

  std::size_t steps() const { return steps_; }

 private:
  void record(const Redex& r, const Path& path) {
    ++steps_;
    Step st{r.rule, path, r.before, r.after};
    recent_.push_back(to_string(r.rule) + " at " + to_string(path) + ": " + to_string(r.before) + " => " +
                      to_string(r.after));
    if (recent_.size() > 8) recent_.pop_front();
    if (opt_.on_step) opt_.on_step(st);
    if (steps_ > opt_.fuel) {
      std::ostringstream msg;
      msg << "normalize: fuel of " << opt_.fuel << " steps exhausted; last steps:";
      for (const auto& l : recent_) msg << "\n  " << l;
      throw RewriteError(msg.str());
    }
  }

  const NormalizeOptions& opt_;
  std::size_t steps_ = 0;
  std::deque<std::string> recent_;
};

// ------------------------------------------------------------ canonical check

bool canonical(const TermPtr& t);

bool fixed_free(const std::optional<Permutation>& p, const std::optional<Partition>& s, const Comb& c) {
  auto gs = groups(c);
  auto f = [&](std::size_t w) {
    std::size_t x = s ? s->block_of(w) : w;
    return p ? (*p)(x) : x;
  };
  for (const auto& g : gs)
    for (int r = 1; r < g.width; ++r)
      if (f(g.first + r - 1) >= f(g.first + r)) return false;
  return true;
}

bool canonical_leaf(const TermPtr& t) {
  TermPtr cur = t;
  if (auto* d = get<Dum>(cur)) cur = d->body;
  std::optional<Permutation> p;
  std::optional<Partition> s;
  if (auto* pp = get<Per>(cur)) {
    p = pp->seq;
    cur = pp->body;
  }
  if (auto* ll = get<Link>(cur)) {
    s = ll->seq;
    cur = ll->body;
  }
  if (kind(cur) == Kind::Prim) return true;
  auto* c = get<Comb>(cur);
  if (!c || kind(c->head) != Kind::Prim) return false;
  for (const auto& g : groups(*c)) {
    if (g.star) continue;
    const auto& a = c->args[g.arg];
    if (a->sort < 0) {
      if (kind(a) != Kind::Prim && kind(a) != Kind::PseudoVar) return false;
      continue;
    }
    if (!canonical(a)) return false;
    auto u = used_wires(a);
    for (int r = 0; r < g.width; ++r)
      if (!u[g.folded + r]) return false;
  }
  return fixed_free(p, s, *c);
}

bool canonical(const TermPtr& t) {
  switch (kind(t)) {
    case Kind::Prim:
    case Kind::PseudoVar:
      return true;
    case Kind::Neg:
      return canonical(as<Neg>(t).body);
    case Kind::Conj:
      return canonical(as<Conj>(t).left) && canonical(as<Conj>(t).right);
    case Kind::Ex: {
      const auto& e = as<Ex>(t);
      if (!sorted_mask(e.seq) || kind(e.body) == Kind::Ex) return false;
      auto u = used_wires(e.body);
      for (std::size_t i = 0; i < u.size(); ++i)
        if (e.seq[i] && !u[i]) return false;
      return canonical(e.body);
    }
    default:
      return canonical_leaf(t);
  }
}

}  // namespace

const std::vector<RuleId>& all_rules() {
  static const std::vector<RuleId> ids = [] {
    std::vector<RuleId> v;
    for (const auto& e : rule_table()) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string to_string(RuleId r) {
  for (const auto& e : rule_table())
    if (e.id == r) return e.name;
  return "?";
}

std::optional<RuleId> rule_from_string(std::string_view s) {
  for (const auto& e : rule_table())
    if (s == e.name) return e.id;
  return std::nullopt;
}

std::vector<Redex> root_redexes(const TermPtr& t, const RedexOptions& opt) {
  return redexes_at(t, opt.include_inverse, false, false);
}

std::vector<Redex> applicable_redexes(const TermPtr& t, const RedexOptions& opt) {
  std::vector<Redex> out;
  Path path;
  collect(t, path, false, opt, out);
  return out;
}

TermPtr apply_rule(const TermPtr& t, const Redex& r) {
  TermPtr sub;
  try {
    sub = subterm_at(t, r.path);
  } catch (const std::exception&) {
    throw RewriteError("stale redex: no subterm at " + to_string(r.path));
  }
  if (!equal(sub, r.before)) throw RewriteError("stale redex " + to_string(r.rule) + " at " + to_string(r.path));
  return replace_at(t, r.path, r.after);
}

TermPtr normalize(const TermPtr& t, const NormalizeOptions& opt) {
  Normalizer n(opt);
  Path path;
  auto out = n.run(t, path, false);
  if (opt.steps) *opt.steps = n.steps();
  return out;
}

bool is_canonical(const TermPtr& t) { return canonical(t); }

bool sense_equiv(const TermPtr& a, const TermPtr& b, const Signature& sig, bool validate) {
  bool same_sort = sort_of(a, sig) == sort_of(b, sig);
  bool r = same_sort && equal(normalize(a), normalize(b));
  if (validate) {
    bool o = oracle_sense_equiv(a, b, sig);
    if (o != r)
      throw RewriteError("sense_equiv: rewriting says " + std::string(r ? "equivalent" : "distinct") +
                         " but the oracle disagrees for " + to_string(a) + " and " + to_string(b));
  }
  return r;
}

std::vector<bool> used_wires(const TermPtr& t) {
  if (t->sort < 0) return {};
  switch (kind(t)) {
    case Kind::Prim:
      return std::vector<bool>(t->sort, true);
    case Kind::PseudoVar:
      return {};
    case Kind::Dum: {
      const auto& d = as<Dum>(t);
      auto in = used_wires(d.body);
      std::vector<bool> out;
      std::size_t k = 0;
      for (bool o : d.seq.mask()) out.push_back(o && in[k++]);
      return out;
    }
    case Kind::Neg:
      return used_wires(as<Neg>(t).body);
    case Kind::Conj: {
      auto a = used_wires(as<Conj>(t).left);
      auto b = used_wires(as<Conj>(t).right);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
      return a;
    }
    case Kind::Ex: {
      const auto& e = as<Ex>(t);
      auto in = used_wires(e.body);
      std::vector<bool> out;
      for (std::size_t i = 0; i < in.size(); ++i)
        if (!e.seq[i]) out.push_back(in[i]);
      return out;
    }
    case Kind::Per: {
      const auto& p = as<Per>(t);
      auto in = used_wires(p.body);
      std::vector<bool> out(in.size());
      for (std::size_t i = 0; i < in.size(); ++i) out[p.seq(i)] = in[i];
      return out;
    }
    case Kind::Link: {
      const auto& l = as<Link>(t);
      auto in = used_wires(l.body);
      std::vector<bool> out(l.seq.block_count(), false);
      for (std::size_t i = 0; i < in.size(); ++i)
        if (in[i]) out[l.seq.block_of(i)] = true;
      return out;
    }
    case Kind::Comb: {
      const auto& c = as<Comb>(t);
      auto uh = used_wires(c.head);
      std::vector<bool> out;
      for (const auto& g : groups(c)) {
        if (g.star) {
          out.push_back(uh[g.pos]);
          continue;
        }
        if (g.width == 0) continue;
        auto ua = used_wires(c.args[g.arg]);
        for (int r = 0; r < g.width; ++r) out.push_back(uh[g.pos] && ua[g.folded + r]);
      }
      return out;
    }
  }
  return {};
}

TermPtr drop_wires(const TermPtr& t, const std::vector<bool>& drop) {
  if (t->sort < 0 || drop.size() != static_cast<std::size_t>(t->sort))
    throw RewriteError("drop_wires: mask of length " + std::to_string(drop.size()) + " for " + to_string(t));
  if (std::find(drop.begin(), drop.end(), true) == drop.end()) return t;
  switch (kind(t)) {
    case Kind::Prim:
    case Kind::PseudoVar:
      break;
    case Kind::Dum: {
      const auto& d = as<Dum>(t);
      auto mask = d.seq.mask();
      std::vector<bool> inner, keep;
      for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) inner.push_back(drop[i]);
        if (!drop[i]) keep.push_back(mask[i]);
      }
      return mk_dum(keep, drop_wires(d.body, inner));
    }
    case Kind::Neg:
      return neg(drop_wires(as<Neg>(t).body, drop));
    case Kind::Conj:
      return conj(drop_wires(as<Conj>(t).left, drop), drop_wires(as<Conj>(t).right, drop));
    case Kind::Ex: {
      const auto& e = as<Ex>(t);
      std::vector<bool> inner, m;
      std::size_t j = 0;
      for (bool q : e.seq) {
        bool dr = !q && drop[j++];
        inner.push_back(dr);
        if (!dr) m.push_back(q);
      }
      return mk_ex(std::move(m), drop_wires(e.body, inner));
    }
    case Kind::Per: {
      const auto& p = as<Per>(t);
      std::vector<std::size_t> rank(drop.size(), 0);
      for (std::size_t i = 0, r = 0; i < drop.size(); ++i)
        if (!drop[i]) rank[i] = r++;
      std::vector<bool> inner;
      std::vector<std::size_t> img;
      for (std::size_t i = 0; i < p.seq.size(); ++i) {
        inner.push_back(drop[p.seq(i)]);
        if (!drop[p.seq(i)]) img.push_back(rank[p.seq(i)]);
      }
      return mk_per(Permutation(std::move(img)), drop_wires(p.body, inner));
    }
    case Kind::Link: {
      const auto& l = as<Link>(t);
      std::vector<bool> inner;
      std::vector<std::size_t> keep;
      for (std::size_t i = 0; i < l.seq.ground_size(); ++i) {
        inner.push_back(drop[l.seq.block_of(i)]);
        if (!inner.back()) keep.push_back(i);
      }
      return mk_link(l.seq.restrict_to(keep), drop_wires(l.body, inner));
    }
    case Kind::Comb: {
      const auto& c = as<Comb>(t);
      auto uh = used_wires(c.head);
      std::vector<bool> head_drop(c.seq.size(), false), out;
      std::vector<int> seq;
      std::vector<TermPtr> args;
      for (const auto& g : groups(c)) {
        if (g.star) {
          if (drop[g.first]) {
            head_drop[g.pos] = true;
          } else {
            seq.push_back(kStar);
            out.push_back(true);
          }
          continue;
        }
        const auto& a = c.args[g.arg];
        bool any = false;
        for (int r = 0; r < g.width; ++r) any = any || drop[g.first + r];
        if (!any) {
          seq.push_back(g.width);
          args.push_back(a);
          out.insert(out.end(), g.width, true);
        } else if (!uh[g.pos]) {
          head_drop[g.pos] = true;
          for (int r = 0; r < g.width; ++r)
            if (!drop[g.first + r]) out.push_back(false);
        } else {
          std::vector<bool> inner(a->sort, false);
          int kept = 0;
          for (int r = 0; r < g.width; ++r) {
            inner[g.folded + r] = drop[g.first + r];
            if (!drop[g.first + r]) {
              ++kept;
              out.push_back(true);
            }
          }
          seq.push_back(kept);
          args.push_back(drop_wires(a, inner));
        }
      }
      return mk_dum(out, mk_comb(std::move(seq), drop_wires(c.head, head_drop), std::move(args)));
    }
  }
  throw RewriteError("drop_wires: wire is used in " + to_string(t));
}

}  // namespace cil
