/// Tests for local trees over chosen node sets and the unrooted-lcp
/// structure answering pattern descents from arbitrary member nodes, at all
/// three sampling levels.

#include <gtest/gtest.h>

#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "wcidx/wcidx.hpp"

namespace wcidx {
namespace {

using testing::encode;
using testing::sym;

std::shared_ptr<const Subtree> universal_subtree(const TextIndex& idx, const SuffixTree& t) {
  std::vector<u32> all(t.node_count());
  std::iota(all.begin(), all.end(), 0);
  return std::make_shared<const Subtree>(Subtree::build(idx, t, all));
}

GroupLcp build_level(const TextIndex& idx, const SuffixTree& t,
                     std::shared_ptr<const Subtree> sub, SamplingLevel level) {
  GroupLcpParams p;  // c_d = c_h = micro_block = 2
  p.level = level;
  return GroupLcp::build(idx, t, std::move(sub), p);
}

TEST(SubtreeTest, UniversalBanana) {
  TextIndex idx = TextIndex::build("banana");
  SuffixTree t = SuffixTree::build(idx);
  auto sub = universal_subtree(idx, t);

  ASSERT_EQ(sub->size(), t.node_count());
  ASSERT_EQ(sub->leaf_count(), idx.n());
  for (u32 v = 0; v < sub->size(); ++v) {
    EXPECT_EQ(sub->global_of(v), v);
    EXPECT_EQ(sub->local_of(v), v);
    EXPECT_EQ(sub->sdepth(v), t.sdepth(v));
    EXPECT_EQ(sub->is_leaf(v), t.is_leaf(v));
    if (v != Subtree::root()) {
      EXPECT_EQ(sub->parent(v), t.parent(v));
    }
  }
  EXPECT_TRUE(sub->ranks_consecutive());
  EXPECT_EQ(sub->rank_base(), 0u);
  for (u32 slot = 0; slot < sub->leaf_count(); ++slot) {
    EXPECT_EQ(sub->leaf_rank(slot), slot);
    EXPECT_EQ(sub->leaf_node(slot), t.leaf_of_rank(slot));
  }
  EXPECT_EQ(sub->llo(2), 1u);
  EXPECT_EQ(sub->lhi(2), 4u);
  EXPECT_EQ(sub->rep_pos(idx, 8), idx.sa()[5]);
  EXPECT_EQ(sub->edge_len(4), 2u);
  EXPECT_EQ(sub->first_symbol(idx, 7), sym(idx, 'b'));
  EXPECT_EQ(sub->child_by_symbol(idx, 0, sym(idx, 'n')), 8u);
  EXPECT_EQ(sub->child_by_symbol(idx, 2, sym(idx, 'b')), kNone);
  EXPECT_EQ(sub->canon(0, 0), (LocalLoc{0, 0}));
  EXPECT_EQ(sub->canon(4, 2), (LocalLoc{4, 0}));
}

TEST(SubtreeTest, SparseMemberSet) {
  TextIndex idx = TextIndex::build("banana");
  SuffixTree t = SuffixTree::build(idx);
  // Root, the "a" branch node, and three leaves; local edges skip nodes.
  Subtree sub = Subtree::build(idx, t, {0, 2, 3, 5, 7});
  ASSERT_EQ(sub.size(), 5u);
  EXPECT_EQ(sub.global_of(1), 2u);
  EXPECT_EQ(sub.parent(1), 0u);
  // a$ and ana$ hang from local "a"; the ana$ edge skips global "ana".
  EXPECT_EQ(sub.parent(2), 1u);
  EXPECT_EQ(sub.parent(3), 1u);
  EXPECT_EQ(sub.edge_len(3), 3u);  // "na$" below string depth 1
  EXPECT_EQ(sub.local_of(4), kNone);
  EXPECT_EQ(sub.local_of(10), kNone);
  ASSERT_EQ(sub.leaf_count(), 3u);
  EXPECT_EQ(sub.leaf_rank(0), 1u);
  EXPECT_EQ(sub.leaf_rank(1), 2u);
  EXPECT_EQ(sub.leaf_rank(2), 4u);
  EXPECT_FALSE(sub.ranks_consecutive());

  auto [loc, m] = sub.naive_descend(idx, {0, 0}, encode(idx, "anan"));
  EXPECT_EQ(loc, (LocalLoc{3, 2}));  // two symbols down the skipping "na$" edge
  EXPECT_EQ(m, 3u);
}

TEST(GroupLcpTest, FrozenBananaAnswers) {
  TextIndex idx = TextIndex::build("banana");
  SuffixTree t = SuffixTree::build(idx);
  auto sub = universal_subtree(idx, t);
  GroupLcp g = build_level(idx, t, sub, SamplingLevel::full);

  auto q = [&](u32 u, const char* pat) {
    PatternHandle h = preprocess_pattern(idx, encode(idx, pat));
    return g.unrooted_lcp_small(u, h, 0);
  };
  EXPECT_EQ(q(0, "nab"), (GroupLcp::Answer{{8, 0}, 2}));
  EXPECT_EQ(q(0, "ana"), (GroupLcp::Answer{{4, 0}, 3}));
  EXPECT_EQ(q(0, "anan"), (GroupLcp::Answer{{6, 1}, 4}));
  EXPECT_EQ(q(2, "nan"), (GroupLcp::Answer{{6, 1}, 3}));
  EXPECT_EQ(q(0, "banana"), (GroupLcp::Answer{{7, 6}, 6}));
  EXPECT_EQ(q(8, "a"), (GroupLcp::Answer{{8, 0}, 0}));
  EXPECT_EQ(q(4, "na"), (GroupLcp::Answer{{6, 2}, 2}));

  PatternHandle empty = preprocess_pattern(idx, std::vector<Symbol>{});
  EXPECT_EQ(g.unrooted_lcp_small(3, empty, 0), (GroupLcp::Answer{{3, 0}, 0}));
}

TEST(GroupLcpTest, LocateAboveOnChains) {
  TextIndex idx = TextIndex::build("banana");
  SuffixTree t = SuffixTree::build(idx);
  auto sub = universal_subtree(idx, t);
  GroupLcp g = build_level(idx, t, sub, SamplingLevel::full);

  EXPECT_EQ(g.locate_above(6, 4), (LocalLoc{6, 1}));   // mid-edge into a chain head
  EXPECT_EQ(g.locate_above(6, 3), (LocalLoc{4, 0}));
  EXPECT_EQ(g.locate_above(10, 2), (LocalLoc{8, 0}));
  EXPECT_EQ(g.locate_above(10, 4), (LocalLoc{10, 2}));
  EXPECT_EQ(g.locate_above(5, 2), (LocalLoc{4, 1}));
  EXPECT_EQ(g.locate_above(7, 0), (LocalLoc{0, 0}));
}

TEST(GroupLcpTest, SetStructure) {
  TextIndex idx = TextIndex::build("banana");
  SuffixTree t = SuffixTree::build(idx);
  auto sub = universal_subtree(idx, t);
  for (auto level : {SamplingLevel::full, SamplingLevel::compact, SamplingLevel::sampled}) {
    GroupLcp g = build_level(idx, t, sub, level);
    EXPECT_EQ(g.set_elements_total(), 7u) << to_string(level);
    u64 f = sub->leaf_count();
    EXPECT_LE(g.set_elements_total(), f * (ceil_log2(f) + 1));
  }
}

TEST(GroupLcpTest, PredecessorsAndRanks) {
  TextIndex idx = TextIndex::build("banana");
  SuffixTree t = SuffixTree::build(idx);
  auto sub = universal_subtree(idx, t);
  GroupLcp g = build_level(idx, t, sub, SamplingLevel::full);

  // Off-path node 8 ("na") stores suffixes shifted to root depth: ranks {5, 6}.
  SetNeighbors nb = g.predecessor_in_set(8, 6);
  EXPECT_EQ(nb.le_rank, 6u);
  EXPECT_EQ(nb.le_pos, 2u);
  EXPECT_EQ(nb.ge_rank, 6u);
  nb = g.predecessor_in_set(8, 0);
  EXPECT_EQ(nb.le_rank, kNone);
  EXPECT_EQ(nb.ge_rank, 5u);
  EXPECT_EQ(nb.ge_pos, 4u);
  nb = g.predecessor_in_set(8, 7);
  EXPECT_EQ(nb.le_rank, 6u);
  EXPECT_EQ(nb.ge_rank, kNone);
  nb = g.predecessor_in_set(8, 5);
  EXPECT_EQ(nb.le_rank, 5u);
  EXPECT_EQ(nb.ge_rank, 5u);

  EXPECT_EQ(g.global_rank(8, 10), 5u);
  EXPECT_EQ(g.global_rank(0, 7), 4u);
}

TEST(GroupLcpTest, ThreeLevelsAgreeOnBanana) {
  TextIndex idx = TextIndex::build("banana");
  SuffixTree t = SuffixTree::build(idx);
  auto sub = universal_subtree(idx, t);
  GroupLcp full = build_level(idx, t, sub, SamplingLevel::full);
  GroupLcp compact = build_level(idx, t, sub, SamplingLevel::compact);
  GroupLcp sampled = build_level(idx, t, sub, SamplingLevel::sampled);

  const char* pats[] = {"a",    "b",    "n",     "an",    "na",    "ban",     "ana",
                        "nan",  "anan", "nana",  "banana", "banan", "aa",     "bb",
                        "nn",   "ab",   "ba",    "naan",  "anana", "bananaa", "nab"};
  for (const char* p : pats) {
    PatternHandle h = preprocess_pattern(idx, encode(idx, p));
    for (u32 u = 0; u < sub->size(); ++u) {
      for (u32 j = 0; j <= h.size(); ++j) {
        GroupLcp::Answer a = full.unrooted_lcp_small(u, h, j);
        ASSERT_EQ(compact.unrooted_lcp_small(u, h, j), a) << p << " u=" << u << " j=" << j;
        ASSERT_EQ(sampled.unrooted_lcp_small(u, h, j), a) << p << " u=" << u << " j=" << j;
        std::span<const Symbol> tail(h.pat.data() + j, h.size() - j);
        auto [nloc, nm] = sub->naive_descend(idx, {u, 0}, tail);
        ASSERT_EQ(a.loc, nloc) << p << " u=" << u << " j=" << j;
        ASSERT_EQ(a.matched, nm);
      }
    }
  }
}

TEST(GroupLcpTest, RandomTextsThreeLevels) {
  std::mt19937_64 rng(21);
  for (u32 trial = 0; trial < 30; ++trial) {
    u32 n_raw = 2 + static_cast<u32>(rng() % 48);
    u32 sigma = 1 + static_cast<u32>(rng() % 4);
    std::string text = random_text(rng, n_raw, sigma);
    TextIndex idx = TextIndex::build(text);
    SuffixTree t = SuffixTree::build(idx);
    auto sub = universal_subtree(idx, t);
    GroupLcp full = build_level(idx, t, sub, SamplingLevel::full);
    GroupLcp compact = build_level(idx, t, sub, SamplingLevel::compact);
    GroupLcp sampled = build_level(idx, t, sub, SamplingLevel::sampled);

    u64 f = sub->leaf_count();
    ASSERT_LE(full.set_elements_total(), f * (ceil_log2(f) + 1));

    for (u32 k = 0; k < 60; ++k) {
      // Mostly planted windows so descents go deep; some uniform noise.
      u32 plen = 1 + static_cast<u32>(rng() % 10);
      std::vector<Symbol> pat(plen);
      for (u32 i = 0; i < plen; ++i) {
        if (rng() % 5 != 0 && idx.n() > 1) {
          u32 start = static_cast<u32>(rng() % (idx.n() - 1));
          pat[i] = idx.text()[std::min<u32>(start + i, idx.n() - 2)];
        } else {
          pat[i] = 1 + static_cast<Symbol>(rng() % idx.sigma());
        }
      }
      PatternHandle h = preprocess_pattern(idx, pat);
      u32 u = static_cast<u32>(rng() % sub->size());
      u32 j = static_cast<u32>(rng() % (h.size() + 1));
      GroupLcp::Answer a = full.unrooted_lcp_small(u, h, j);
      ASSERT_EQ(compact.unrooted_lcp_small(u, h, j), a) << "text " << text;
      ASSERT_EQ(sampled.unrooted_lcp_small(u, h, j), a) << "text " << text;
      std::span<const Symbol> tail(h.pat.data() + j, h.size() - j);
      auto [nloc, nm] = sub->naive_descend(idx, {u, 0}, tail);
      ASSERT_EQ(a.loc, nloc) << "text " << text << " u=" << u;
      ASSERT_EQ(a.matched, nm);
    }
  }
}

}  // namespace
}  // namespace wcidx
