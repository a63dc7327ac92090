#include "cil/seqcomb.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace cil {

// ---------------------------------------------------------------- CombSeq

CombSeq::CombSeq(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw SeqError("comb-sequence must be non-empty");
  bool any = false;
  for (int e : entries_) {
    if (e < kStar) throw SeqError("comb-sequence entries must be * or natural numbers");
    if (e != kStar) any = true;
  }
  if (!any) throw SeqError("comb-sequence needs at least one entry that is not *");
}

int CombSeq::sigma() const {
  int total = 0;
  for (int e : entries_) total += (e == kStar) ? 1 : e;
  return total;
}

std::vector<int> CombSeq::stripped() const {
  std::vector<int> out;
  for (int e : entries_)
    if (e != kStar) out.push_back(e);
  return out;
}

std::size_t CombSeq::star_count() const {
  return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), kStar));
}

std::size_t CombSeq::arg_index(std::size_t i) const {
  if (is_star(i)) throw SeqError("arg_index: position is a star");
  std::size_t k = 0;
  for (std::size_t j = 0; j < i; ++j)
    if (!is_star(j)) ++k;
  return k;
}

int sigma_comb(const CombSeq& s) { return s.sigma(); }

StarStrip star_strip(const CombSeq& s) {
  StarStrip out;
  out.stripped = s.stripped();
  out.star_count = s.star_count();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.is_star(i)) out.star_positions.push_back(i + 1);
  return out;
}

// -------------------------------------------------------------- Partition

Partition Partition::discrete(std::size_t n) {
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(labels);
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  Partition p;
  p.block_of_.resize(labels.size());
  std::map<std::size_t, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = index.emplace(labels[i], p.blocks_.size());
    if (fresh) p.blocks_.emplace_back();
    p.blocks_[it->second].push_back(i);
    p.block_of_[i] = it->second;
  }
  return p;
}

Partition Partition::from_blocks(std::size_t n, std::vector<std::vector<std::size_t>> blocks) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> labels(n, kUnset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw SeqError("partition blocks must be non-empty");
    for (std::size_t e : blocks[b]) {
      if (e >= n) throw SeqError("partition element " + std::to_string(e + 1) + " exceeds ground size " + std::to_string(n));
      if (labels[e] != kUnset) throw SeqError("partition blocks must be disjoint (element " + std::to_string(e + 1) + ")");
      labels[e] = b;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (labels[i] == kUnset) throw SeqError("partition does not cover element " + std::to_string(i + 1));
  return from_labels(labels);
}

std::vector<std::size_t> Partition::natural() const {
  std::vector<std::size_t> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.front());
  return out;
}

Partition Partition::restrict_to(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> labels;
  labels.reserve(keep.size());
  for (std::size_t e : keep) labels.push_back(block_of_.at(e));
  return from_labels(labels);
}

std::vector<std::size_t> natural(const Partition& s) { return s.natural(); }

// ------------------------------------------------------------ Permutation

Permutation::Permutation(std::vector<std::size_t> images) : image_(std::move(images)) {
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t v : image_) {
    if (v >= image_.size() || seen[v]) throw SeqError("per-sequence is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> im(n);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

// ----------------------------------------------------------------- DumSeq

DumSeq::DumSeq(std::vector<unsigned> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw SeqError("dum-sequence must be non-empty");
}

DumSeq DumSeq::from_mask(const std::vector<bool>& original) {
  std::vector<unsigned> e(1, 0);
  for (bool o : original) {
    if (o)
      e.push_back(0);
    else
      ++e.back();
  }
  return DumSeq(std::move(e));
}

std::size_t DumSeq::inserted() const {
  return std::accumulate(entries_.begin(), entries_.end(), std::size_t{0});
}

std::vector<bool> DumSeq::mask() const {
  std::vector<bool> m;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    m.insert(m.end(), entries_[i], false);
    if (i + 1 < entries_.size()) m.push_back(true);
  }
  return m;
}

std::vector<std::size_t> DumSeq::original_positions() const {
  std::vector<std::size_t> out;
  auto m = mask();
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) out.push_back(i);
  return out;
}

// ------------------------------------------------------------ composition

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size())
    throw SeqError("per composition: sizes " + std::to_string(outer.size()) + " and " +
                   std::to_string(inner.size()) + " differ");
  std::vector<std::size_t> im(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) im[i] = outer(inner(i));
  return Permutation(std::move(im));
}

Partition compose(const Partition& outer, const Partition& inner) {
  if (outer.ground_size() != inner.block_count())
    throw SeqError("link composition: outer ground size " + std::to_string(outer.ground_size()) +
                   " does not match inner block count " + std::to_string(inner.block_count()));
  std::vector<std::size_t> labels(inner.ground_size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = outer.block_of(inner.block_of(i));
  return Partition::from_labels(labels);
}

DumSeq compose(const DumSeq& outer, const DumSeq& inner) {
  if (outer.input_arity() != inner.output_arity())
    throw SeqError("dum composition: outer has length " + std::to_string(outer.size()) +
                   ", expected " + std::to_string(inner.sigma() + 1));
  auto outer_pos = outer.original_positions();
  auto inner_pos = inner.original_positions();
  std::vector<bool> m(outer.output_arity(), false);
  for (std::size_t p : inner_pos) m[outer_pos[p]] = true;
  return DumSeq::from_mask(m);
}

// -------------------------------------------------------- fixed-set splits

bool in_fix(const Permutation& p, std::span<const std::size_t> subset) {
  std::vector<bool> in(p.size(), false);
  for (auto e : subset) {
    if (e >= p.size()) return false;
    in[e] = true;
  }
  for (auto e : subset)
    if (!in[p(e)]) return false;
  return true;
}

bool in_fix(const Partition& s, std::span<const std::size_t> subset) {
  std::vector<bool> in(s.ground_size(), false);
  for (auto e : subset) {
    if (e >= s.ground_size()) return false;
    in[e] = true;
  }
  for (auto e : subset)
    for (auto f : s.blocks()[s.block_of(e)])
      if (!in[f]) return false;
  return true;
}

PerSplit fix_and_split(const Permutation& p, std::span<const std::size_t> subset) {
  if (!in_fix(p, subset)) throw SeqError("subset is not closed under the permutation");
  std::vector<bool> in(p.size(), false);
  for (auto e : subset) in[e] = true;
  std::vector<std::size_t> p1(p.size()), p2(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p2[i] = in[i] ? p(i) : i;
    p1[i] = in[i] ? i : p(i);
  }
  return {Permutation(std::move(p1)), Permutation(std::move(p2))};
}

LinkSplit fix_and_split(const Partition& s, std::span<const std::size_t> subset) {
  if (!in_fix(s, subset)) throw SeqError("subset is not a union of blocks");
  const std::size_t n = s.ground_size();
  std::vector<bool> in(n, false);
  for (auto e : subset) in[e] = true;
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = in[i] ? s.block_of(i) : n + i;
  Partition inner = Partition::from_labels(labels);
  std::vector<std::size_t> outer_labels(inner.block_count());
  for (std::size_t b = 0; b < inner.block_count(); ++b) {
    std::size_t m = inner.blocks()[b].front();
    outer_labels[b] = in[m] ? n + b : s.block_of(m);
  }
  return {Partition::from_labels(outer_labels), inner};
}

LinkRelative partition_relative_decompose(const Partition& s, const Partition& P) {
  if (s.ground_size() != P.ground_size())
    throw SeqError("relative decomposition: partition ground sizes differ");
  const std::size_t n = s.ground_size();
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = s.block_of(i) * n + P.block_of(i);
  LinkRelative out;
  out.inner = Partition::from_labels(labels);
  std::vector<std::size_t> outer_labels(out.inner.block_count());
  for (std::size_t b = 0; b < outer_labels.size(); ++b)
    outer_labels[b] = s.block_of(out.inner.blocks()[b].front());
  out.outer = Partition::from_labels(outer_labels);
  for (std::size_t j = 0; j < P.block_count(); ++j) {
    const auto& elems = P.blocks()[j];
    std::vector<std::size_t> local(elems.size());
    for (std::size_t k = 0; k < elems.size(); ++k) local[k] = s.block_of(elems[k]);
    Partition part = Partition::from_labels(local);
    if (!part.is_trivial()) out.parts.push_back({j, std::move(part)});
  }
  return out;
}

PerRelative partition_relative_decompose(const Permutation& p, const Partition& P) {
  if (p.size() != P.ground_size())
    throw SeqError("relative decomposition: permutation and partition sizes differ");
  std::vector<std::size_t> outer(p.size());
  for (const auto& block : P.blocks()) {
    std::vector<std::size_t> images;
    for (auto e : block) images.push_back(p(e));
    std::sort(images.begin(), images.end());
    for (std::size_t k = 0; k < block.size(); ++k) outer[block[k]] = images[k];
  }
  PerRelative out;
  out.outer = Permutation(std::move(outer));
  out.inner = compose(out.outer.inverse(), p);
  for (std::size_t j = 0; j < P.block_count(); ++j) {
    const auto& elems = P.blocks()[j];
    std::vector<std::size_t> local(elems.size());
    for (std::size_t k = 0; k < elems.size(); ++k) {
      auto target = out.inner(elems[k]);
      local[k] = static_cast<std::size_t>(std::find(elems.begin(), elems.end(), target) - elems.begin());
    }
    Permutation lp(std::move(local));
    if (!lp.is_identity()) out.parts.push_back({j, std::move(lp)});
  }
  return out;
}

// ----------------------------------------------------------- text forms

std::string to_string(const CombSeq& s) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    if (s.is_star(i))
      os << '*';
    else
      os << s[i];
  }
  os << ']';
  return os.str();
}

std::string to_string(const Partition& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t b = 0; b < s.block_count(); ++b) {
    if (b) os << ',';
    os << '{';
    for (std::size_t k = 0; k < s.blocks()[b].size(); ++k) {
      if (k) os << ',';
      os << s.blocks()[b][k] + 1;
    }
    os << '}';
  }
  os << '}';
  return os.str();
}

std::string to_string(const Permutation& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ',';
    os << p(i) + 1;
  }
  os << ']';
  return os.str();
}

std::string to_string(const DumSeq& d) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) os << ',';
    os << d.entries()[i];
  }
  os << ']';
  return os.str();
}

std::string to_string(const std::vector<bool>& ex) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (i) os << ',';
    os << (ex[i] ? 1 : 0);
  }
  os << ']';
  return os.str();
}

}  // namespace cil
