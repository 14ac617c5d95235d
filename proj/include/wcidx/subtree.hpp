#pragma once
/// \file subtree.hpp
/// A materialized local tree over a chosen set of suffix-tree nodes. The
/// local parent of a member is its nearest proper ancestor in the member
/// set, so edges may skip intermediate nodes of the full tree; each local
/// edge still carries a text label, read through a representative leaf.
///
/// Structural requirements checked at build time:
///   - members are given in ascending (= preorder) order, first one an
///     ancestor of all others;
///   - every local leaf is a leaf of the full tree (a true text suffix);
///   - the local children of a node descend through distinct child edges
///     of that node, so sibling edges start with distinct symbols and the
///     string depth of a branching local node equals the lcp of its
///     extreme leaf suffixes.

#include <algorithm>
#include <span>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/suffix_tree.hpp"

namespace wcidx {

/// Location within a Subtree: same shape as Location, but v names a local
/// node and off counts symbols down the (possibly skipping) local edge.
using LocalLoc = Location;

class Subtree {
 public:
  static Subtree build(const TextIndex& idx, const SuffixTree& t, std::vector<u32> members) {
    Subtree s;
    s.construct(idx, t, std::move(members));
    return s;
  }

  u32 size() const { return static_cast<u32>(global_.size()); }
  u32 leaf_count() const { return static_cast<u32>(leaf_rank_.size()); }
  static constexpr u32 root() { return 0; }

  u32 global_of(u32 v) const { return global_[v]; }
  /// Local id of a global node, or kNone if it is not a member.
  u32 local_of(u32 g) const {
    auto it = std::lower_bound(global_.begin(), global_.end(), g);
    if (it == global_.end() || *it != g) return kNone;
    return static_cast<u32>(it - global_.begin());
  }

  u32 parent(u32 v) const { return parent_[v]; }
  u32 first_child(u32 v) const { return head_[v]; }
  u32 next_sibling(u32 v) const { return sib_[v]; }
  u32 subtree_end(u32 v) const { return end_[v]; }
  u32 sdepth(u32 v) const { return gsdepth_[v]; }
  bool is_leaf(u32 v) const { return head_[v] == kNone; }
  u32 child_count(u32 v) const {
    u32 k = 0;
    for (u32 c = head_[v]; c != kNone; c = sib_[c]) ++k;
    return k;
  }

  /// Leaf-slot interval [llo, lhi) of local leaves below v.
  u32 llo(u32 v) const { return llo_[v]; }
  u32 lhi(u32 v) const { return lhi_[v]; }
  u32 leaf_slot(u32 v) const { return leaf_index_[v]; }
  u32 leaf_node(u32 slot) const { return leaf_local_[slot]; }
  /// Suffix-array rank of the slot-th leaf's full text suffix.
  u32 leaf_rank(u32 slot) const { return leaf_rank_[slot]; }
  bool ranks_consecutive() const { return ranks_consecutive_; }
  u32 rank_base() const { return leaf_rank_[0]; }

  /// Text position of the representative (leftmost) leaf suffix below v.
  u32 rep_pos(const TextIndex& idx, u32 v) const { return idx.sa()[leaf_rank_[llo_[v]]]; }
  u32 edge_pos(const TextIndex& idx, u32 v) const {
    return rep_pos(idx, v) + gsdepth_[parent_[v]];
  }
  u32 edge_len(u32 v) const { return gsdepth_[v] - gsdepth_[parent_[v]]; }
  Symbol first_symbol(const TextIndex& idx, u32 v) const {
    return idx.text()[edge_pos(idx, v)];
  }
  u32 child_by_symbol(const TextIndex& idx, u32 v, Symbol c) const {
    for (u32 w = head_[v]; w != kNone; w = sib_[w]) {
      Symbol s = first_symbol(idx, w);
      if (s == c) return w;
      if (s > c) return kNone;
    }
    return kNone;
  }

  u32 loc_depth(const LocalLoc& l) const {
    return l.off == 0 ? gsdepth_[l.v] : gsdepth_[parent_[l.v]] + l.off;
  }
  LocalLoc canon(u32 v, u32 off) const {
    if (off == 0) return {v, 0};  // legal for the local root, which has no edge
    return off == edge_len(v) ? LocalLoc{v, 0} : LocalLoc{v, off};
  }

  /// Reference descent inside the local tree: lowest local location below
  /// `from` whose label along local edges is a prefix of s.
  std::pair<LocalLoc, u32> naive_descend(const TextIndex& idx, LocalLoc from,
                                         std::span<const Symbol> s) const {
    u32 matched = 0;
    LocalLoc loc = from;
    while (matched < s.size()) {
      if (loc.off != 0) {
        u32 p = edge_pos(idx, loc.v) + loc.off;
        if (idx.text()[p] != s[matched]) break;
        ++matched;
        loc = canon(loc.v, loc.off + 1);
      } else {
        u32 c = child_by_symbol(idx, loc.v, s[matched]);
        if (c == kNone) break;
        ++matched;
        loc = canon(c, 1);
      }
    }
    return {loc, matched};
  }

 private:
  std::vector<u32> global_, parent_, head_, sib_, end_, gsdepth_;
  std::vector<u32> leaf_index_, leaf_local_, leaf_rank_, llo_, lhi_;
  bool ranks_consecutive_ = true;

  void construct(const TextIndex& idx, const SuffixTree& t, std::vector<u32> members) {
    check_contract(!members.empty(), "subtree: empty member set");
    for (size_t i = 1; i < members.size(); ++i)
      check_contract(members[i - 1] < members[i], "subtree: members not in preorder");
    const u32 k = static_cast<u32>(members.size());
    global_ = std::move(members);
    parent_.assign(k, kNone);
    head_.assign(k, kNone);
    sib_.assign(k, kNone);
    gsdepth_.resize(k);
    std::vector<u32> tail(k, kNone);

    std::vector<u32> stack;
    for (u32 i = 0; i < k; ++i) {
      gsdepth_[i] = t.sdepth(global_[i]);
      while (!stack.empty() && !t.in_subtree(global_[stack.back()], global_[i]))
        stack.pop_back();
      if (i == 0) {
        // root of the local tree
      } else {
        check_contract(!stack.empty(), "subtree: first member must contain all others");
        u32 p = stack.back();
        parent_[i] = p;
        if (head_[p] == kNone)
          head_[p] = i;
        else
          sib_[tail[p]] = i;
        tail[p] = i;
      }
      stack.push_back(i);
    }

    // Leaves and extents (descending sweep: local ids are preorder).
    leaf_index_.assign(k, kNone);
    llo_.assign(k, kNone);
    lhi_.assign(k, 0);
    end_.assign(k, 0);
    u32 nleaves = 0;
    for (u32 v = 0; v < k; ++v)
      if (head_[v] == kNone) ++nleaves;
    leaf_local_.resize(nleaves);
    leaf_rank_.resize(nleaves);
    u32 slot = 0;
    for (u32 v = 0; v < k; ++v) {
      if (head_[v] != kNone) continue;
      check_contract(t.is_leaf(global_[v]), "subtree: local leaf is not a text suffix");
      leaf_index_[v] = slot;
      leaf_local_[slot] = v;
      leaf_rank_[slot] = t.leaf_rank(global_[v]);
      ++slot;
    }
    for (u32 v = k; v-- > 0;) {
      end_[v] = v + 1;
      if (leaf_index_[v] != kNone) {
        llo_[v] = leaf_index_[v];
        lhi_[v] = leaf_index_[v] + 1;
      }
      u32 last = kNone;
      for (u32 c = head_[v]; c != kNone; c = sib_[c]) last = c;
      if (last != kNone) {
        end_[v] = end_[last];
        llo_[v] = llo_[head_[v]];
        lhi_[v] = lhi_[last];
      }
    }
    for (u32 s2 = 1; s2 < nleaves; ++s2) {
      check_contract(leaf_rank_[s2 - 1] < leaf_rank_[s2], "subtree: leaf ranks out of order");
      if (leaf_rank_[s2] != leaf_rank_[s2 - 1] + 1) ranks_consecutive_ = false;
    }

    // Sibling edges must start with distinct, increasing symbols.
    for (u32 v = 0; v < k; ++v) {
      Symbol prev = 0;
      bool first = true;
      for (u32 c = head_[v]; c != kNone; c = sib_[c]) {
        Symbol s = first_symbol(idx, c);
        check_contract(first || s > prev, "subtree: sibling edges do not branch at their parent");
        prev = s;
        first = false;
      }
    }
  }
};

/// Heavy-path decomposition of a Subtree: heavy child = most local leaves,
/// ties to the first (smallest-symbol) child.
class SubtreeHld {
 public:
  static SubtreeHld build(const Subtree& s) {
    SubtreeHld h;
    h.construct(s);
    return h;
  }

  u32 heavy_child(u32 v) const { return heavy_[v]; }
  u32 head(u32 v) const { return head_[v]; }
  u32 chain_leaf(u32 v) const { return chains_[chain_id_[v]].back(); }
  u32 chain_id(u32 v) const { return chain_id_[v]; }
  u32 pos_in_chain(u32 v) const { return pos_in_chain_[v]; }
  const std::vector<std::vector<u32>>& chains() const { return chains_; }

 private:
  std::vector<u32> heavy_, head_, chain_id_, pos_in_chain_;
  std::vector<std::vector<u32>> chains_;

  void construct(const Subtree& s) {
    const u32 k = s.size();
    heavy_.assign(k, kNone);
    head_.assign(k, kNone);
    chain_id_.assign(k, kNone);
    pos_in_chain_.assign(k, 0);
    for (u32 v = 0; v < k; ++v) {
      u32 best = kNone;
      for (u32 c = s.first_child(v); c != kNone; c = s.next_sibling(c)) {
        u32 cnt = s.lhi(c) - s.llo(c);
        if (best == kNone || cnt > s.lhi(best) - s.llo(best)) best = c;
      }
      heavy_[v] = best;
    }
    for (u32 v = 0; v < k; ++v) {
      if (v != 0 && heavy_[s.parent(v)] == v) continue;
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

}  // namespace wcidx
