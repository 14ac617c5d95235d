#pragma once
/// \file suffix_tree.hpp
/// Suffix tree built from the suffix array and lcp array by the classic
/// left-to-right stack sweep. Node ids are preorder numbers, so every
/// subtree is a contiguous id range and leaves appear in lexicographic
/// order. Edge labels are text ranges recovered through each node's
/// leftmost leaf.

#include <span>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/text_index.hpp"

namespace wcidx {

/// A point in the tree: (v, 0) is node v itself; (v, off) with
/// 0 < off < edge_len(v) lies on the edge into v, off symbols below the
/// parent. A fully traversed edge canonicalizes to (v, 0).
struct Location {
  u32 v = 0;
  u32 off = 0;
  bool operator==(const Location&) const = default;
};

class SuffixTree {
 public:
  static SuffixTree build(const TextIndex& idx) {
    SuffixTree t;
    t.construct(idx);
    return t;
  }

  u32 node_count() const { return static_cast<u32>(up_.size()); }
  u32 leaf_count() const { return n_; }
  static constexpr u32 root() { return 0; }

  u32 parent(u32 v) const { return up_[v]; }
  u32 sdepth(u32 v) const { return sdepth_[v]; }
  u32 first_child(u32 v) const { return head_[v]; }
  u32 next_sibling(u32 v) const { return sib_[v]; }
  bool is_leaf(u32 v) const { return head_[v] == kNone; }
  /// Leaf-rank interval [lo, hi) below v.
  u32 lo(u32 v) const { return lo_[v]; }
  u32 hi(u32 v) const { return hi_[v]; }
  u32 leaves_below(u32 v) const { return hi_[v] - lo_[v]; }
  /// One past the last id of v's subtree; ids are preorder, so w is in
  /// subtree(v) iff v <= w < subtree_end(v).
  u32 subtree_end(u32 v) const { return end_[v]; }
  bool in_subtree(u32 v, u32 w) const { return v <= w && w < end_[v]; }

  u32 leaf_of_rank(u32 t) const { return leaf_of_rank_[t]; }
  /// Suffix-array rank of a leaf, kNone for internal nodes.
  u32 leaf_rank(u32 v) const { return leaf_rank_[v]; }

  /// Start of v's edge label in the text (v != root).
  u32 edge_pos(const TextIndex& idx, u32 v) const {
    return idx.sa()[lo_[v]] + sdepth_[up_[v]];
  }
  u32 edge_len(u32 v) const { return sdepth_[v] - sdepth_[up_[v]]; }
  Symbol first_symbol(const TextIndex& idx, u32 v) const {
    return idx.text()[edge_pos(idx, v)];
  }

  /// Child of v whose edge starts with symbol c, or kNone. Children are in
  /// symbol order, so the scan stops early.
  u32 child_by_symbol(const TextIndex& idx, u32 v, Symbol c) const {
    for (u32 w = head_[v]; w != kNone; w = sib_[w]) {
      Symbol s = first_symbol(idx, w);
      if (s == c) return w;
      if (s > c) return kNone;
    }
    return kNone;
  }

  /// String depth of a location.
  u32 loc_depth(const Location& l) const {
    return l.off == 0 ? sdepth_[l.v] : sdepth_[up_[l.v]] + l.off;
  }

  /// Canonical location for "off symbols down the edge into v".
  Location canon(u32 v, u32 off) const {
    if (off == 0) return {v, 0};  // legal for the root, which has no edge
    return off == edge_len(v) ? Location{v, 0} : Location{v, off};
  }

  /// Lower node of the edge a location lies on (v for both (v,0) and mid-edge).
  u32 lower_node(const Location& l) const { return l.v; }

  /// Reference descent: the lowest location below `from` whose path label
  /// from `from` is a prefix of s, plus the number of symbols matched.
  /// The sequence may contain the terminator symbol.
  std::pair<Location, u32> naive_descend(const TextIndex& idx, Location from,
                                         std::span<const Symbol> s) const {
    u32 matched = 0;
    Location loc = from;
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

  /// Descends a known text range text[pos, pos+len) from `from`, comparing
  /// edge labels in O(1) each through lcp_suffixes. Returns the end location
  /// and how many of the len symbols matched.
  std::pair<Location, u32> descend_text(const TextIndex& idx, Location from, u32 pos, u32 len,
                                        QueryCounters* qc = nullptr) const {
    u32 matched = 0;
    Location loc = from;
    std::span<const u32> isa = idx.isa();
    while (matched < len) {
      u32 v, off;
      if (loc.off != 0) {
        v = loc.v;
        off = loc.off;
      } else {
        u32 c = child_by_symbol(idx, loc.v, idx.text()[pos + matched]);
        if (c == kNone) break;
        v = c;
        off = 0;
      }
      u32 epos = edge_pos(idx, v) + off;
      u32 avail = edge_len(v) - off;
      u32 want = std::min(avail, len - matched);
      u32 l = idx.lcp_suffixes(isa[epos], isa[pos + matched], qc);
      u32 took = std::min(l, want);
      matched += took;
      loc = canon(v, off + took);
      if (took < want) break;  // mismatch inside this edge
      if (took < avail) break;  // range exhausted mid-edge
    }
    return {loc, matched};
  }

 private:
  u32 n_ = 0;  // number of leaves == text length
  std::vector<u32> up_, sdepth_, head_, sib_, lo_, hi_, end_, leaf_rank_, leaf_of_rank_;

  void construct(const TextIndex& idx) {
    const u32 n = idx.n();
    n_ = n;
    std::span<const u32> sa = idx.sa();
    std::span<const u32> lcp = idx.lcp_array();

    // Build with temporary ids, children linked in creation order.
    std::vector<u32> up, sd, head, tail, sib;
    auto new_node = [&](u32 depth) {
      up.push_back(kNone);
      sd.push_back(depth);
      head.push_back(kNone);
      tail.push_back(kNone);
      sib.push_back(kNone);
      return static_cast<u32>(up.size() - 1);
    };
    auto attach = [&](u32 p, u32 c) {
      up[c] = p;
      if (head[p] == kNone)
        head[p] = c;
      else
        sib[tail[p]] = c;
      tail[p] = c;
    };

    std::vector<u32> leaf_tmp(n);
    std::vector<u32> stack;
    stack.push_back(new_node(0));  // root
    for (u32 i = 0; i < n; ++i) {
      u32 x = (i == 0) ? 0 : lcp[i];
      while (sd[stack.back()] > x) {
        u32 cur = stack.back();
        stack.pop_back();
        u32 nxt = stack.back();
        if (sd[nxt] >= x) {
          attach(nxt, cur);
        } else {
          u32 m = new_node(x);
          attach(m, cur);
          stack.push_back(m);
        }
      }
      u32 leaf = new_node(n - sa[i]);
      leaf_tmp[i] = leaf;
      stack.push_back(leaf);
    }
    while (stack.size() > 1) {
      u32 cur = stack.back();
      stack.pop_back();
      attach(stack.back(), cur);
    }

    // Renumber to preorder.
    const u32 cnt = static_cast<u32>(up.size());
    std::vector<u32> order(cnt, kNone);
    {
      u32 next = 0;
      std::vector<u32> dfs;
      dfs.push_back(0);
      while (!dfs.empty()) {
        u32 v = dfs.back();
        dfs.pop_back();
        order[v] = next++;
        // push children in reverse so the first child pops first
        std::vector<u32> cs;
        for (u32 c = head[v]; c != kNone; c = sib[c]) cs.push_back(c);
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) dfs.push_back(*it);
      }
    }
    up_.assign(cnt, kNone);
    sdepth_.assign(cnt, 0);
    head_.assign(cnt, kNone);
    sib_.assign(cnt, kNone);
    for (u32 v = 0; v < cnt; ++v) {
      u32 nv = order[v];
      sdepth_[nv] = sd[v];
      if (up[v] != kNone) up_[nv] = order[up[v]];
      if (head[v] != kNone) head_[nv] = order[head[v]];
      if (sib[v] != kNone) sib_[nv] = order[sib[v]];
    }
    leaf_rank_.assign(cnt, kNone);
    leaf_of_rank_.resize(n);
    for (u32 t = 0; t < n; ++t) {
      u32 nv = order[leaf_tmp[t]];
      leaf_of_rank_[t] = nv;
      leaf_rank_[nv] = t;
    }

    // Subtree extents: children have larger preorder ids than parents, so a
    // descending sweep completes children before their parent.
    lo_.assign(cnt, kNone);
    hi_.assign(cnt, 0);
    end_.assign(cnt, 0);
    for (u32 v = cnt; v-- > 0;) {
      end_[v] = v + 1;
      if (leaf_rank_[v] != kNone) {
        lo_[v] = leaf_rank_[v];
        hi_[v] = leaf_rank_[v] + 1;
      }
      u32 last = kNone;
      for (u32 c = head_[v]; c != kNone; c = sib_[c]) last = c;
      if (last != kNone) {
        end_[v] = end_[last];
        lo_[v] = lo_[head_[v]];
        hi_[v] = hi_[last];
      }
    }
  }
};

/// Convenience overload for descents starting at the root with symbol data.
inline std::pair<Location, u32> naive_descend(const SuffixTree& t, const TextIndex& idx,
                                              Location from, std::span<const Symbol> s) {
  return t.naive_descend(idx, from, s);
}

inline u32 string_depth(const SuffixTree& t, u32 v) { return t.sdepth(v); }

}  // namespace wcidx
