#pragma once
/// \file heavy_path.hpp
/// Heavy-path decomposition of the suffix tree, optionally restricted to a
/// connected member set. Each node's heavy child is the one with the most
/// member leaves below it (ties go to the first child, i.e. the smallest
/// branching symbol); maximal heavy chains let depth queries jump by whole
/// paths, crossing at most floor(log2(leaves)) + 1 chains.

#include <algorithm>
#include <span>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/suffix_tree.hpp"

namespace wcidx {

class HeavyPaths {
 public:
  /// Decomposes the subtree of `subtree_root` induced by `membership`
  /// (empty = every node). Every member except the root must have a member
  /// parent inside the subtree; anything else is a contract violation.
  static HeavyPaths build(const SuffixTree& t, u32 subtree_root = SuffixTree::root(),
                          std::span<const char> membership = {}) {
    HeavyPaths h;
    h.construct(t, subtree_root, membership);
    return h;
  }

  bool is_member(u32 v) const { return head_[v] != kNone; }
  u32 heavy_child(u32 v) const { return heavy_[v]; }
  u32 head(u32 v) const { return head_[v]; }
  /// Deepest node of v's chain (the chain leaf).
  u32 chain_leaf(u32 v) const {
    const auto& c = chains_[chain_id_[v]];
    return c.back();
  }
  u32 member_leaves(u32 v) const { return mcount_[v]; }
  u32 root_node() const { return root_; }

  bool on_same_chain(u32 a, u32 b) const { return chain_id_[a] == chain_id_[b]; }

  /// Number of distinct chains met walking from `v` up to `top` (inclusive);
  /// equals one more than the number of light edges crossed.
  u32 crossings(const SuffixTree& t, u32 top, u32 v) const {
    u32 k = 1;
    while (!on_same_chain(v, top)) {
      v = t.parent(head_[v]);
      ++k;
    }
    return k;
  }

  /// Member ancestor of v at string depth exactly d, or kNone if the path
  /// from the root to v has no member node of that depth.
  u32 ancestor_at_sdepth(const SuffixTree& t, u32 v, u32 d) const {
    while (t.sdepth(head_[v]) > d) v = t.parent(head_[v]);
    const auto& c = chains_[chain_id_[v]];
    auto it = std::lower_bound(c.begin(), c.end(), d,
                               [&](u32 x, u32 dd) { return t.sdepth(x) < dd; });
    if (it != c.end() && t.sdepth(*it) == d && *it <= v && t.in_subtree(*it, v)) return *it;
    return kNone;
  }

  /// Location at string depth d on the heavy chain through x, descending
  /// from x (requires sdepth(x) <= d <= sdepth(chain_leaf(x))).
  Location locate_on_path(const SuffixTree& t, u32 x, u32 d) const {
    const auto& c = chains_[chain_id_[x]];
    auto it = std::lower_bound(c.begin() + pos_in_chain_[x], c.end(), d,
                               [&](u32 y, u32 dd) { return t.sdepth(y) < dd; });
    check_contract(it != c.end(), "locate_on_path: depth beyond the chain leaf");
    u32 y = *it;
    if (t.sdepth(y) == d) return {y, 0};
    return {y, d - t.sdepth(t.parent(y))};
  }

  const std::vector<std::vector<u32>>& chains() const { return chains_; }
  u32 chain_id(u32 v) const { return chain_id_[v]; }

 private:
  u32 root_ = 0;
  std::vector<u32> heavy_, head_, mcount_, chain_id_, pos_in_chain_;
  std::vector<std::vector<u32>> chains_;

  void construct(const SuffixTree& t, u32 subtree_root, std::span<const char> membership) {
    const u32 cnt = t.node_count();
    root_ = subtree_root;
    auto member = [&](u32 v) {
      return membership.empty() ? t.in_subtree(subtree_root, v)
                                : (membership[v] != 0 && t.in_subtree(subtree_root, v));
    };
    check_contract(member(subtree_root), "heavy_path_decompose: root not a member");

    heavy_.assign(cnt, kNone);
    head_.assign(cnt, kNone);
    mcount_.assign(cnt, 0);
    chain_id_.assign(cnt, kNone);
    pos_in_chain_.assign(cnt, 0);

    // Descending id sweep = children before parents (ids are preorder).
    const u32 lim = t.subtree_end(subtree_root);
    for (u32 v = lim; v-- > subtree_root;) {
      if (!member(v)) continue;
      if (v != subtree_root)
        check_contract(member(t.parent(v)), "heavy_path_decompose: member set is disconnected");
      u32 best = kNone, total = 0;
      for (u32 c = t.first_child(v); c != kNone; c = t.next_sibling(c)) {
        if (!member(c)) continue;
        total += mcount_[c];
        if (best == kNone || mcount_[c] > mcount_[best]) best = c;
      }
      heavy_[v] = best;
      mcount_[v] = (best == kNone) ? 1 : total;
    }

    // Chains: a member starts one iff it is the root or a light child.
    for (u32 v = subtree_root; v < lim; ++v) {
      if (mcount_[v] == 0 && v != subtree_root) continue;
      if (!member(v)) continue;
      if (v != subtree_root && heavy_[t.parent(v)] == v) continue;
      u32 id = static_cast<u32>(chains_.size());
      chains_.emplace_back();
      for (u32 x = v; x != kNone; x = heavy_[x]) {
        head_[x] = v;
        chain_id_[x] = id;
        pos_in_chain_[x] = static_cast<u32>(chains_[id].size());
        chains_[id].push_back(x);
      }
    }
  }
};

inline HeavyPaths heavy_path_decompose(const SuffixTree& t, u32 subtree_root = SuffixTree::root(),
                                       std::span<const char> membership = {}) {
  return HeavyPaths::build(t, subtree_root, membership);
}

}  // namespace wcidx
