#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "cil/seqcomb.hpp"

using namespace cil;
using Blocks = std::vector<std::vector<std::size_t>>;

namespace {

// All set partitions of {0..n-1} as label vectors (restricted growth strings).
std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  std::vector<std::size_t> labels(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max) {
    if (i == n) {
      out.push_back(Partition::from_labels(labels));
      return;
    }
    for (std::size_t l = 0; l <= max; ++l) {
      labels[i] = l;
      rec(i + 1, std::max(max, l + 1));
    }
  };
  if (n == 0) return {Partition::from_labels(labels)};
  labels[0] = 0;
  rec(1, 1);
  return out;
}

std::vector<Permutation> all_perms(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(CombSeq, SigmaExamples) {
  EXPECT_EQ(sigma_comb(CombSeq({kStar, 1})), 2);
  EXPECT_EQ(sigma_comb(CombSeq({0})), 0);
  EXPECT_EQ(sigma_comb(CombSeq({kStar, 2, kStar, 0, 2})), 6);
}

TEST(CombSeq, Invalid) {
  EXPECT_THROW(CombSeq({}), SeqError);
  EXPECT_THROW(CombSeq({kStar, kStar}), SeqError);
  EXPECT_THROW(CombSeq({-3}), SeqError);
}

TEST(CombSeq, StarStrip) {
  auto a = star_strip(CombSeq({kStar, 1}));
  EXPECT_EQ(a.stripped, std::vector<int>({1}));
  EXPECT_EQ(a.star_count, 1u);
  EXPECT_EQ(a.star_positions, std::vector<std::size_t>({1}));
  auto b = star_strip(CombSeq({0, 0}));
  EXPECT_EQ(b.stripped, std::vector<int>({0, 0}));
  EXPECT_EQ(b.star_count, 0u);
  EXPECT_TRUE(b.star_positions.empty());
  auto c = star_strip(CombSeq({kStar, 2, kStar, 0, 2}));
  EXPECT_EQ(c.stripped, std::vector<int>({2, 0, 2}));
  EXPECT_EQ(c.star_count, 2u);
  EXPECT_EQ(c.star_positions, std::vector<std::size_t>({1, 3}));
}

TEST(CombSeq, SigmaBoundedByStars) {
  for (int a = -1; a <= 2; ++a)
    for (int b = -1; b <= 2; ++b)
      for (int c = -1; c <= 2; ++c) {
        if (a < 0 && b < 0 && c < 0) continue;
        CombSeq s({a, b, c});
        bool zeros = std::all_of(s.entries().begin(), s.entries().end(), [](int e) { return e <= 0; });
        EXPECT_GE(s.sigma(), static_cast<int>(s.star_count()));
        EXPECT_EQ(s.sigma() == static_cast<int>(s.star_count()), zeros);
      }
}

TEST(Partition, Natural) {
  EXPECT_EQ(natural(Partition::from_blocks(3, {{0, 2}, {1}})), std::vector<std::size_t>({0, 1}));
  EXPECT_EQ(natural(Partition::from_blocks(2, {{0, 1}})), std::vector<std::size_t>({0}));
  EXPECT_EQ(natural(Partition::from_blocks(4, {{0, 2}, {1, 3}})), std::vector<std::size_t>({0, 1}));
}

TEST(Partition, Invalid) {
  EXPECT_THROW(Partition::from_blocks(3, {{0, 1}}), SeqError);
  EXPECT_THROW(Partition::from_blocks(2, {{0, 1}, {1}}), SeqError);
  EXPECT_THROW(Partition::from_blocks(2, {{0, 1}, {}}), SeqError);
}

TEST(Partition, CanonicalForm) {
  auto a = Partition::from_blocks(4, {{3, 1}, {2, 0}});
  EXPECT_EQ(a.blocks(), Blocks({{0, 2}, {1, 3}}));
  EXPECT_EQ(to_string(a), "{{1,3},{2,4}}");
}

TEST(Partition, NaturalProperties) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& p : all_partitions(n)) {
      auto m = natural(p);
      EXPECT_EQ(m.size(), p.block_count());
      EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
      EXPECT_EQ(std::adjacent_find(m.begin(), m.end()), m.end());
    }
}

TEST(Sharp, Examples) {
  std::vector<int> t = {1, kStar, 0};
  EXPECT_EQ(sharp(t, Partition::from_blocks(4, {{0, 2}, {1}, {3}})), std::vector<int>({1, kStar, 1, 0}));
  std::vector<char> a = {'a'};
  EXPECT_EQ(sharp(a, Partition::from_blocks(2, {{0, 1}})), std::vector<char>({'a', 'a'}));
  std::vector<char> ab = {'a', 'b'};
  EXPECT_EQ(sharp(ab, Partition::from_blocks(3, {{0}, {1, 2}})), std::vector<char>({'a', 'b', 'b'}));
  EXPECT_THROW(sharp(ab, Partition::from_blocks(2, {{0, 1}})), SeqError);
}

TEST(Sharp, LengthIsGroundSize) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& p : all_partitions(n)) {
      std::vector<std::size_t> idx(p.block_count());
      std::iota(idx.begin(), idx.end(), 0);
      auto s = sharp(idx, p);
      ASSERT_EQ(s.size(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(s[i], p.block_of(i));
    }
}

TEST(Permutation, Basics) {
  Permutation p({1, 0});
  EXPECT_TRUE(compose(p, p).is_identity());
  EXPECT_EQ(to_string(p), "[2,1]");
  EXPECT_THROW(Permutation({0, 0}), SeqError);
  EXPECT_THROW(compose(p, Permutation::identity(3)), SeqError);
  std::vector<char> v = {'x', 'y', 'z'};
  EXPECT_EQ(Permutation({1, 2, 0}).apply_to(v), std::vector<char>({'z', 'x', 'y'}));
}

TEST(Permutation, InverseComposition) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& p : all_perms(n)) {
      EXPECT_TRUE(compose(p, p.inverse()).is_identity());
      EXPECT_TRUE(compose(p.inverse(), p).is_identity());
    }
}

TEST(Permutation, ComposeMatchesSequentialApplication) {
  std::vector<int> v = {10, 20, 30, 40};
  for (const auto& p : all_perms(4))
    for (const auto& q : all_perms(4)) EXPECT_EQ(compose(p, q).apply_to(v), p.apply_to(q.apply_to(v)));
}

TEST(LinkCompose, Example) {
  auto inner = Partition::from_blocks(3, {{0, 2}, {1}});
  auto outer = Partition::from_blocks(2, {{0, 1}});
  EXPECT_EQ(compose(outer, inner), Partition::from_blocks(3, {{0, 1, 2}}));
  EXPECT_THROW(compose(Partition::from_blocks(3, {{0, 1}, {2}}), inner), SeqError);
}

TEST(LinkCompose, Associative) {
  for (const auto& a : all_partitions(4))
    for (const auto& b : all_partitions(a.block_count()))
      for (const auto& c : all_partitions(b.block_count()))
        EXPECT_EQ(compose(c, compose(b, a)), compose(compose(c, b), a));
}

TEST(DumSeq, Basics) {
  DumSeq d({0, 1, 0});
  EXPECT_EQ(d.input_arity(), 2u);
  EXPECT_EQ(d.output_arity(), 3u);
  EXPECT_EQ(d.sigma(), 3u);
  EXPECT_EQ(d.mask(), std::vector<bool>({true, false, true}));
  EXPECT_EQ(d.original_positions(), std::vector<std::size_t>({0, 2}));
  EXPECT_EQ(DumSeq::from_mask({true, false, true}), d);
  EXPECT_EQ(DumSeq::from_mask({false, false}), DumSeq({2}));
  EXPECT_THROW(DumSeq(std::vector<unsigned>{}), SeqError);
}

TEST(DumSeq, ComposeExample) {
  // The outer sequence acts on the 3 wires produced by (0,1,0), so it has
  // four entries.
  EXPECT_EQ(compose(DumSeq({1, 0, 0, 0}), DumSeq({0, 1, 0})), DumSeq({1, 1, 0}));
  EXPECT_THROW(compose(DumSeq({1, 0, 0, 0, 0}), DumSeq({0, 1, 0})), SeqError);
}

TEST(DumSeq, ComposeMatchesMasks) {
  std::vector<DumSeq> seqs;
  for (unsigned a = 0; a <= 2; ++a)
    for (unsigned b = 0; b <= 2; ++b) {
      seqs.push_back(DumSeq({a, b}));
      for (unsigned c = 0; c <= 1; ++c) seqs.push_back(DumSeq({a, b, c}));
    }
  for (const auto& inner : seqs)
    for (const auto& outer : seqs) {
      if (outer.input_arity() != inner.output_arity()) continue;
      auto c = compose(outer, inner);
      EXPECT_EQ(c.input_arity(), inner.input_arity());
      EXPECT_EQ(c.output_arity(), outer.output_arity());
      auto ip = inner.original_positions();
      auto op = outer.original_positions();
      std::vector<std::size_t> expect;
      for (auto i : ip) expect.push_back(op[i]);
      EXPECT_EQ(c.original_positions(), expect);
    }
}

TEST(FixSplit, PerExamples) {
  Permutation p({1, 0, 3, 2});
  std::vector<std::size_t> A = {0, 1};
  auto r = fix_and_split(p, A);
  EXPECT_EQ(r.inner_part, Permutation({1, 0, 2, 3}));
  EXPECT_EQ(r.outer_part, Permutation({0, 1, 3, 2}));
  EXPECT_EQ(compose(r.outer_part, r.inner_part), p);

  Permutation q({1, 0});
  auto e = fix_and_split(q, std::vector<std::size_t>{});
  EXPECT_TRUE(e.inner_part.is_identity());
  EXPECT_EQ(e.outer_part, q);

  EXPECT_THROW(fix_and_split(Permutation({1, 2, 0}), std::vector<std::size_t>{0, 1}), SeqError);
}

TEST(FixSplit, LinkExample) {
  auto s = Partition::from_blocks(3, {{0, 1}, {2}});
  auto r = fix_and_split(s, std::vector<std::size_t>{0, 1});
  EXPECT_EQ(r.inner_part, s);
  EXPECT_TRUE(r.outer_part.is_trivial());
  EXPECT_EQ(compose(r.outer_part, r.inner_part), s);
  EXPECT_THROW(fix_and_split(s, std::vector<std::size_t>{0}), SeqError);
}

TEST(FixSplit, PerExhaustiveUnique) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto perms = all_perms(n);
    for (const auto& p : perms)
      for (const auto& A : all_subsets(n)) {
        if (!in_fix(p, A)) {
          EXPECT_THROW(fix_and_split(p, A), SeqError);
          continue;
        }
        auto r = fix_and_split(p, A);
        EXPECT_EQ(compose(r.outer_part, r.inner_part), p);
        std::vector<bool> inA(n, false);
        for (auto a : A) inA[a] = true;
        // Uniqueness: only one pair satisfies the on/off conditions.
        if (n <= 4) {
          std::size_t found = 0;
          for (const auto& p2 : perms) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) ok = inA[i] ? p2(i) == p(i) : p2(i) == i;
            if (!ok) continue;
            for (const auto& p1 : perms) {
              bool ok1 = true;
              for (auto a : A) ok1 = ok1 && p1(a) == a;
              if (ok1 && compose(p1, p2) == p) ++found;
            }
          }
          EXPECT_EQ(found, 1u);
        }
      }
  }
}

TEST(FixSplit, LinkExhaustiveUnique) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& s : all_partitions(n))
      for (const auto& A : all_subsets(n)) {
        if (!in_fix(s, A)) {
          EXPECT_THROW(fix_and_split(s, A), SeqError);
          continue;
        }
        auto r = fix_and_split(s, A);
        EXPECT_EQ(compose(r.outer_part, r.inner_part), s);
        std::vector<bool> inA(n, false);
        for (auto a : A) inA[a] = true;
        for (std::size_t i = 0; i < n; ++i)
          if (!inA[i]) EXPECT_EQ(r.inner_part.blocks()[r.inner_part.block_of(i)].size(), 1u);
        if (n <= 4) {
          std::size_t found = 0;
          for (const auto& s2 : all_partitions(n)) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i)
              for (std::size_t j = 0; j < n && ok; ++j) {
                bool same2 = s2.block_of(i) == s2.block_of(j);
                bool want = inA[i] && inA[j] ? s.block_of(i) == s.block_of(j) : i == j;
                ok = same2 == want;
              }
            if (!ok) continue;
            for (const auto& s1 : all_partitions(s2.block_count())) {
              bool ok1 = true;
              for (auto a : A)
                ok1 = ok1 && s1.blocks()[s1.block_of(s2.block_of(a))].size() == 1;
              if (ok1 && compose(s1, s2) == s) ++found;
            }
          }
          EXPECT_EQ(found, 1u);
        }
      }
}

TEST(RelativeDecompose, LinkExamples) {
  auto P = Partition::from_blocks(4, {{0, 1}, {2, 3}});
  auto r = partition_relative_decompose(Partition::from_blocks(4, {{0, 1}, {2, 3}}), P);
  EXPECT_TRUE(r.outer.is_trivial());
  ASSERT_EQ(r.parts.size(), 2u);
  EXPECT_EQ(r.parts[0].block, 0u);
  EXPECT_EQ(r.parts[0].local, Partition::from_blocks(2, {{0, 1}}));
  EXPECT_EQ(r.parts[1].block, 1u);

  auto Q = Partition::from_blocks(3, {{0, 1}, {2}});
  auto r2 = partition_relative_decompose(Partition::from_blocks(3, {{0, 2}, {1}}), Q);
  EXPECT_TRUE(r2.parts.empty());
  EXPECT_EQ(compose(r2.outer, r2.inner), Partition::from_blocks(3, {{0, 2}, {1}}));
}

TEST(RelativeDecompose, PerExample) {
  auto P = Partition::from_blocks(3, {{0, 1}, {2}});
  auto r = partition_relative_decompose(Permutation({1, 0, 2}), P);
  EXPECT_TRUE(r.outer.is_identity());
  ASSERT_EQ(r.parts.size(), 1u);
  EXPECT_EQ(r.parts[0].block, 0u);
  EXPECT_EQ(r.parts[0].local, Permutation({1, 0}));
}

TEST(RelativeDecompose, ExhaustiveRecomposition) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto parts = all_partitions(n);
    for (const auto& P : parts) {
      for (const auto& s : parts) {
        auto r = partition_relative_decompose(s, P);
        EXPECT_EQ(compose(r.outer, r.inner), s);
        // inner merges only inside P blocks; outer merges distinct P blocks.
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (r.inner.block_of(i) == r.inner.block_of(j)) EXPECT_EQ(P.block_of(i), P.block_of(j));
        for (const auto& b : r.outer.blocks()) {
          std::vector<std::size_t> pb;
          for (auto k : b) pb.push_back(P.block_of(r.inner.blocks()[k].front()));
          std::sort(pb.begin(), pb.end());
          EXPECT_EQ(std::adjacent_find(pb.begin(), pb.end()), pb.end());
        }
      }
      if (n <= 5)
        for (const auto& p : all_perms(n)) {
          auto r = partition_relative_decompose(p, P);
          EXPECT_EQ(compose(r.outer, r.inner), p);
          for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(P.block_of(r.inner(i)), P.block_of(i));
          for (const auto& b : P.blocks())
            for (std::size_t k = 1; k < b.size(); ++k) EXPECT_LT(r.outer(b[k - 1]), r.outer(b[k]));
        }
    }
  }
}

TEST(Splitting, Examples) {
  std::vector<char> abc = {'a', 'b', 'c'};
  auto r = splitting(abc, {1, 2});
  EXPECT_EQ(r, (std::vector<std::vector<char>>{{'a'}, {'b', 'c'}}));
  std::vector<char> ab = {'a', 'b'};
  EXPECT_EQ(splitting(ab, {0, 2}), (std::vector<std::vector<char>>{{}, {'a', 'b'}}));
  std::vector<char> abcd = {'a', 'b', 'c', 'd'};
  EXPECT_EQ(splitting(abcd, {2, 0, 2}), (std::vector<std::vector<char>>{{'a', 'b'}, {}, {'c', 'd'}}));
  EXPECT_THROW(splitting(abc, {1, 1}), SeqError);
}

TEST(Splitting, Concatenates) {
  std::vector<int> s = {1, 2, 3, 4, 5};
  for (std::size_t a = 0; a <= 5; ++a)
    for (std::size_t b = 0; a + b <= 5; ++b) {
      auto parts = splitting(s, {a, b, 5 - a - b});
      std::vector<int> cat;
      for (const auto& p : parts) cat.insert(cat.end(), p.begin(), p.end());
      EXPECT_EQ(cat, s);
    }
}

TEST(TextForms, OneBased) {
  EXPECT_EQ(to_string(CombSeq({kStar, 1})), "[*,1]");
  EXPECT_EQ(to_string(Partition::from_blocks(3, {{0, 2}, {1}})), "{{1,3},{2}}");
  EXPECT_EQ(to_string(Permutation({1, 0})), "[2,1]");
  EXPECT_EQ(to_string(DumSeq({0, 1, 0})), "[0,1,0]");
  EXPECT_EQ(to_string(std::vector<bool>{false, true}), "[0,1]");
}
