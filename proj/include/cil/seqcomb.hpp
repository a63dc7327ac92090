#pragma once

// Parameter sequences of the structural operators: comb-, link-, per- and
// dum-sequences, together with their derived quantities and the
// composition / decomposition algebra used by the rewrite rules.
//
// Positions are 0-based in the C++ API.  The textual forms (printer, parser,
// JSON) are 1-based.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cil {

class SeqError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Marker used inside comb-sequences for the star entry.
inline constexpr int kStar = -1;

/// Finite sequence over {*} u N0 with at least one non-star entry.
class CombSeq {
 public:
  explicit CombSeq(std::vector<int> entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<int>& entries() const { return entries_; }
  int operator[](std::size_t i) const { return entries_[i]; }
  bool is_star(std::size_t i) const { return entries_[i] == kStar; }

  /// Sum of the non-star entries plus the number of stars.
  int sigma() const;
  /// The sequence with stars deleted.
  std::vector<int> stripped() const;
  std::size_t star_count() const;
  /// Number of wires contributed by head position i (1 for a star).
  int width(std::size_t i) const { return is_star(i) ? 1 : entries_[i]; }
  /// Index into the argument list for a non-star position.
  std::size_t arg_index(std::size_t i) const;

  bool operator==(const CombSeq&) const = default;

 private:
  std::vector<int> entries_;
};

struct StarStrip {
  std::vector<int> stripped;
  std::size_t star_count = 0;
  std::vector<std::size_t> star_positions;  // 1-based
};

int sigma_comb(const CombSeq& s);
StarStrip star_strip(const CombSeq& s);

/// A set partition of {0..n-1}.  Blocks are stored sorted by their minima,
/// elements ascending; equality is structural on that canonical form.
/// Trivial (all-singleton) partitions are representable; the link operator
/// rejects them at term construction.
class Partition {
 public:
  Partition() = default;
  static Partition discrete(std::size_t n);
  static Partition from_blocks(std::size_t n,
                               std::vector<std::vector<std::size_t>> blocks);
  /// Elements with equal labels share a block.
  static Partition from_labels(std::span<const std::size_t> labels);

  std::size_t ground_size() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  /// Index (in minima order) of the block containing element i.
  std::size_t block_of(std::size_t i) const { return block_of_[i]; }
  bool is_trivial() const { return blocks_.size() == block_of_.size(); }
  /// Increasing sequence of block minima.
  std::vector<std::size_t> natural() const;
  /// Partition restricted to the subset `keep` (renumbered in order).
  Partition restrict_to(std::span<const std::size_t> keep) const;

  bool operator==(const Partition& o) const { return blocks_ == o.blocks_ && ground_size() == o.ground_size(); }

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// The increasing sequence of block minima.
std::vector<std::size_t> natural(const Partition& s);

/// t # s: position i receives the entry of t indexed by the block of i.
template <class T>
std::vector<T> sharp(std::span<const T> t, const Partition& s) {
  if (t.size() != s.block_count())
    throw SeqError("sharp: sequence length " + std::to_string(t.size()) +
                   " does not match block count " + std::to_string(s.block_count()));
  std::vector<T> out;
  out.reserve(s.ground_size());
  for (std::size_t i = 0; i < s.ground_size(); ++i) out.push_back(t[s.block_of(i)]);
  return out;
}
template <class T>
std::vector<T> sharp(const std::vector<T>& t, const Partition& s) {
  return sharp(std::span<const T>(t), s);
}

/// Bijection on {0..n-1}; element i is sent to position image(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& images() const { return image_; }
  bool is_identity() const;
  Permutation inverse() const;

  /// result[p(i)] = seq[i].
  template <class T>
  std::vector<T> apply_to(std::span<const T> seq) const {
    if (seq.size() != image_.size()) throw SeqError("permutation size mismatch");
    std::vector<T> out(seq.begin(), seq.end());
    for (std::size_t i = 0; i < seq.size(); ++i) out[image_[i]] = seq[i];
    return out;
  }
  template <class T>
  std::vector<T> apply_to(const std::vector<T>& seq) const {
    return apply_to(std::span<const T>(seq));
  }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> image_;
};

/// Sequence of natural numbers of length m+1 acting on m wires: entry i
/// inserts that many redundant wires before wire i, the last entry appends.
class DumSeq {
 public:
  DumSeq() = default;
  explicit DumSeq(std::vector<unsigned> entries);
  /// Build from a mask over output positions (true = original wire).
  static DumSeq from_mask(const std::vector<bool>& original);

  std::size_t size() const { return entries_.size(); }
  const std::vector<unsigned>& entries() const { return entries_; }
  std::size_t input_arity() const { return entries_.size() - 1; }
  std::size_t inserted() const;
  std::size_t output_arity() const { return input_arity() + inserted(); }
  /// sum(entries) + |s| - 1, the output arity.
  std::size_t sigma() const { return output_arity(); }
  bool is_trivial() const { return inserted() == 0; }
  /// Mask over output positions, true where an input wire lands.
  std::vector<bool> mask() const;
  /// Output position of input wire i.
  std::vector<std::size_t> original_positions() const;

  bool operator==(const DumSeq&) const = default;

 private:
  std::vector<unsigned> entries_;
};

/// outer o inner as functions.
Permutation compose(const Permutation& outer, const Permutation& inner);
/// Inner merges first; its blocks (ordered by minima) are then merged by outer.
Partition compose(const Partition& outer, const Partition& inner);
/// Apply inner, then outer on the result (|outer| = inner.sigma() + 1).
DumSeq compose(const DumSeq& outer, const DumSeq& inner);

/// p = outer_part o inner_part where inner_part acts as p on A and fixes the
/// rest, outer_part fixes A.
struct PerSplit {
  Permutation outer_part;  // p1
  Permutation inner_part;  // p2
};
PerSplit fix_and_split(const Permutation& p, std::span<const std::size_t> subset);

/// s = outer_part o inner_part where inner_part is s restricted to A
/// (singletons elsewhere) and outer_part is discrete on A's classes.
struct LinkSplit {
  Partition outer_part;  // s1, on inner_part.block_count() elements
  Partition inner_part;  // s2, on s.ground_size() elements
};
LinkSplit fix_and_split(const Partition& s, std::span<const std::size_t> subset);

bool in_fix(const Permutation& p, std::span<const std::size_t> subset);
bool in_fix(const Partition& s, std::span<const std::size_t> subset);

/// Decomposition relative to an ordered partition P of the ground set.
struct LinkRelative {
  Partition outer;                 // s', merges only across distinct P blocks
  Partition inner;                 // product of the per-block parts
  struct Part {
    std::size_t block;             // index into P
    Partition local;               // partition of P_block's elements (local indices)
  };
  std::vector<Part> parts;         // nontrivial per-block parts only
};
LinkRelative partition_relative_decompose(const Partition& s, const Partition& P);

/// p = outer o inner: inner moves elements only within P blocks, outer maps
/// every block order-preservingly onto its image.
struct PerRelative {
  Permutation outer;
  Permutation inner;
  struct Part {
    std::size_t block;
    Permutation local;
  };
  std::vector<Part> parts;
};
PerRelative partition_relative_decompose(const Permutation& p, const Partition& P);

/// Consecutive split of s into pieces of the given lengths.
template <class T>
std::vector<std::vector<T>> splitting(std::span<const T> s, std::span<const std::size_t> lengths) {
  std::size_t total = 0;
  for (auto n : lengths) total += n;
  if (total != s.size())
    throw SeqError("splitting: lengths sum to " + std::to_string(total) + " but sequence has " +
                   std::to_string(s.size()) + " entries");
  std::vector<std::vector<T>> out;
  std::size_t pos = 0;
  for (auto n : lengths) {
    out.emplace_back(s.begin() + pos, s.begin() + pos + n);
    pos += n;
  }
  return out;
}
template <class T>
std::vector<std::vector<T>> splitting(const std::vector<T>& s, const std::vector<std::size_t>& lengths) {
  return splitting(std::span<const T>(s), std::span<const std::size_t>(lengths));
}

// Textual forms (1-based): comb "[*,1]", link "{{1,3},{2}}", per "[2,1]",
// dum "[0,1,0]".
std::string to_string(const CombSeq& s);
std::string to_string(const Partition& s);
std::string to_string(const Permutation& p);
std::string to_string(const DumSeq& d);
std::string to_string(const std::vector<bool>& ex);

}  // namespace cil
