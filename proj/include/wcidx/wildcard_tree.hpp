#pragma once
/// Truncated tries that batch "one wildcard symbol, then a literal tail"
/// continuations below marked suffix-tree nodes.
///
/// For a marked internal node u, consider the marked leaves below u whose
/// connecting edge out of u's marked-subtree image hangs off the heavy
/// direction (heavy = the child image holding the most marked leaves).  Each
/// such leaf witnesses a string a.s occurring below u (a single branch symbol
/// followed by a tail).  The tails, with the branch symbol stripped, are
/// stored in a compacted trie per alphabet group; every trie node carries, per
/// branch symbol of its group, the text location reached by reading
/// str(u) . a . <node label> — present exactly when that string occurs.
///
/// A query walks the trie with the literal tail once and then answers, for
/// every branch symbol simultaneously, how far "wildcard + tail" matches below
/// u.  The heavy direction is answered by a single ordinary descent, so each
/// marked leaf is stored only where it hangs off a heavy edge; the number of
/// heavy-path switches on any root path bounds the copies per leaf.

#include <algorithm>
#include <utility>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/heavy_path.hpp"
#include "wcidx/partition.hpp"
#include "wcidx/pattern_handle.hpp"
#include "wcidx/suffix_tree.hpp"
#include "wcidx/text_index.hpp"
#include "wcidx/unrooted.hpp"

namespace wcidx {

/// One continuation reported by wildcard_lcp: matching the wildcard with
/// `symbol` and then the literal tail advances `matched` symbols in total
/// (the wildcard included), ending at `loc`.  `full` marks continuations that
/// consumed the whole tail.
struct WildcardHit {
  Symbol symbol = 0;
  Location loc{};
  u32 matched = 0;
  bool full = false;

  bool operator==(const WildcardHit&) const = default;
};

/// Location of the ancestor at string depth `d` on the root path of `v`.
/// Heavy-path head jumps plus one in-chain binary search.
inline Location locate_at_depth(const SuffixTree& t, const HeavyPaths& hp, u32 v, u32 d) {
  check_contract(d <= t.sdepth(v), "locate_at_depth: depth exceeds the node depth");
  for (;;) {
    u32 hd = hp.head(v);
    if (t.sdepth(hd) <= d) return hp.locate_on_path(t, hd, d);
    u32 p = t.parent(hd);
    if (t.sdepth(p) < d) return Location{hd, d - t.sdepth(p)};
    v = p;
  }
}

/// Pointer out of a trie node: reading str(owner) . symbol . <node label> in
/// the suffix tree ends at `loc`.  `group_ref` is the partition group owning
/// the lower endpoint of that location's edge.
struct WildcardPointer {
  Symbol symbol = 0;
  Location loc{};
  u32 group_ref = kNone;
};

/// Compacted trie over the stripped tails of one (marked node, alphabet
/// group) pair.  Node 0 is the root (empty label); ids are preorder, so
/// parents precede children.  `rep[v]` is the text position where some stored
/// tail passing through v starts: the label of v is text[rep[v] .. rep[v] +
/// depth[v]).
struct WildcardTrie {
  u32 owner = kNone;  ///< global id of the marked node the trie serves
  u32 agroup = 0;     ///< alphabet-group index of the branch symbols covered
  std::vector<u32> parent;
  std::vector<u32> head;  ///< first child (kNone for leaves)
  std::vector<u32> sib;   ///< next sibling (kNone at the end)
  std::vector<u32> depth;
  std::vector<u32> rep;
  std::vector<std::vector<WildcardPointer>> ptrs;  ///< per node, ascending symbol
  u32 entries = 0;  ///< stored tails (= leaves)

  u32 node_count() const { return static_cast<u32>(parent.size()); }
  bool is_leaf(u32 v) const { return head[v] == kNone; }

  Symbol first_symbol(const TextIndex& idx, u32 v) const {
    return idx.text()[rep[v] + depth[parent[v]]];
  }

  u32 child_by_symbol(const TextIndex& idx, u32 v, Symbol c) const {
    for (u32 w = head[v]; w != kNone; w = sib[w]) {
      Symbol s = first_symbol(idx, w);
      if (s == c) return w;
      if (s > c) break;
    }
    return kNone;
  }

  const WildcardPointer* pointer(u32 v, Symbol a) const {
    const auto& ps = ptrs[v];
    auto it = std::lower_bound(ps.begin(), ps.end(), a,
                               [](const WildcardPointer& p, Symbol s) { return p.symbol < s; });
    if (it != ps.end() && it->symbol == a) return &*it;
    return nullptr;
  }

  u32 pointer_count() const {
    u32 c = 0;
    for (const auto& ps : ptrs) c += static_cast<u32>(ps.size());
    return c;
  }
};

namespace detail {

/// Partition group owning the lower endpoint of `loc`'s edge.  Defined for
/// every location below the root (the root itself has no home group).
inline u32 home_group(const PartitionIndex& part, Location loc) {
  const auto& ms = part.membership(loc.v);
  check_contract(!ms.empty(), "home_group: location without a home group");
  return ms.front().group;
}

/// Build the trie for one (marked node, alphabet group) pair.  `tails` holds
/// the text positions of the stripped tails, sorted by suffix rank; `alo`/`ahi`
/// bound the branch symbols the pointer maps cover.
inline WildcardTrie build_trie(const TextIndex& idx, const SuffixTree& t,
                               const PartitionIndex& part, u32 owner, u32 agroup,
                               Symbol alo, Symbol ahi, const std::vector<u32>& tails) {
  check_contract(!tails.empty(), "build_trie: no tails to store");
  const u32 n = idx.n();
  std::span<const u32> isa = idx.isa();

  // Stack sweep over the sorted tails, identical in shape to the suffix-tree
  // construction: open nodes on the rightmost path, split on lcp drops.
  struct Tmp {
    u32 depth, parent, rep;
  };
  std::vector<Tmp> tn;
  tn.reserve(2 * tails.size());
  tn.push_back({0, kNone, tails[0]});
  tn.push_back({n - tails[0], 0, tails[0]});
  std::vector<u32> stk{0, 1};
  for (u32 i = 1; i < tails.size(); ++i) {
    u32 l = idx.lcp_suffixes(isa[tails[i - 1]], isa[tails[i]]);
    u32 last = kNone;
    while (tn[stk.back()].depth > l) {
      last = stk.back();
      stk.pop_back();
    }
    u32 par;
    if (tn[stk.back()].depth == l) {
      par = stk.back();
    } else {
      u32 nb = static_cast<u32>(tn.size());
      tn.push_back({l, stk.back(), tn[last].rep});
      tn[last].parent = nb;
      stk.push_back(nb);
      par = nb;
    }
    u32 lf = static_cast<u32>(tn.size());
    tn.push_back({n - tails[i], par, tails[i]});
    stk.push_back(lf);
  }

  // Children in creation order are in ascending symbol order; renumber to
  // preorder so parents precede children.
  std::vector<std::vector<u32>> kids(tn.size());
  for (u32 v = 1; v < tn.size(); ++v) kids[tn[v].parent].push_back(v);
  std::vector<u32> order;
  order.reserve(tn.size());
  std::vector<u32> dfs{0};
  while (!dfs.empty()) {
    u32 v = dfs.back();
    dfs.pop_back();
    order.push_back(v);
    for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) dfs.push_back(*it);
  }
  std::vector<u32> newid(tn.size());
  for (u32 i = 0; i < order.size(); ++i) newid[order[i]] = i;

  WildcardTrie tr;
  tr.owner = owner;
  tr.agroup = agroup;
  tr.entries = static_cast<u32>(tails.size());
  u32 nc = static_cast<u32>(tn.size());
  tr.parent.assign(nc, kNone);
  tr.head.assign(nc, kNone);
  tr.sib.assign(nc, kNone);
  tr.depth.assign(nc, 0);
  tr.rep.assign(nc, 0);
  tr.ptrs.assign(nc, {});
  for (u32 i = 0; i < nc; ++i) {
    u32 old = order[i];
    tr.depth[i] = tn[old].depth;
    tr.rep[i] = tn[old].rep;
    tr.parent[i] = old == 0 ? kNone : newid[tn[old].parent];
    u32 prev = kNone;
    for (u32 c : kids[old]) {
      u32 cn = newid[c];
      if (prev == kNone)
        tr.head[i] = cn;
      else
        tr.sib[prev] = cn;
      prev = cn;
    }
  }

  // Pointer maps, top-down: the root reads one branch symbol from the owner;
  // a child extends each surviving pointer of its parent by the label
  // segment, which descend_text verifies exactly.
  for (Symbol a = alo; a <= ahi; ++a) {
    u32 c = t.child_by_symbol(idx, owner, a);
    if (c == kNone) continue;
    Location loc = t.canon(c, 1);
    tr.ptrs[0].push_back({a, loc, home_group(part, loc)});
  }
  for (u32 v = 1; v < nc; ++v) {
    u32 p = tr.parent[v];
    u32 seg_pos = tr.rep[v] + tr.depth[p];
    u32 seg_len = tr.depth[v] - tr.depth[p];
    for (const WildcardPointer& pe : tr.ptrs[p]) {
      auto [loc, took] = t.descend_text(idx, pe.loc, seg_pos, seg_len, nullptr);
      if (took == seg_len) tr.ptrs[v].push_back({pe.symbol, loc, home_group(part, loc)});
    }
  }
  return tr;
}

}  // namespace detail

/// All wildcard tries of an index: per marked node, one trie per alphabet
/// group that has stored tails, plus the heavy branch symbol answered by a
/// plain descent instead of a trie.
class WildcardLayer {
 public:
  static WildcardLayer build(const TextIndex& idx, const SuffixTree& t, const HeavyPaths& hp,
                             const PartitionIndex& part, u32 lambda) {
    WildcardLayer l;
    l.construct(idx, t, hp, part, lambda);
    return l;
  }

  u32 lambda() const { return lambda_; }
  u32 agroup_count() const { return agroup_count_; }
  u32 agroup_of(Symbol a) const { return (a - 1u) / lambda_; }
  Symbol agroup_lo(u32 g) const { return static_cast<Symbol>(1 + g * lambda_); }
  Symbol agroup_hi(u32 g) const {
    u32 hi = g * lambda_ + lambda_;
    return static_cast<Symbol>(std::min<u32>(hi, sigma_));
  }

  /// Heavy branch symbol below a marked node (by marked ordinal); 0 when the
  /// node is a leaf or the heavy edge starts with the terminator.
  Symbol heavy_symbol(u32 ordinal) const { return heavy_symbol_[ordinal]; }

  /// Trie for (marked ordinal, alphabet group), or nullptr if no tails are
  /// stored there.
  const WildcardTrie* trie(u32 ordinal, u32 agroup) const {
    u32 ti = trie_of_[ordinal][agroup];
    return ti == kNone ? nullptr : &tries_[ti];
  }

  const std::vector<WildcardTrie>& tries() const { return tries_; }

  u32 total_entries() const {
    u32 c = 0;
    for (const auto& tr : tries_) c += tr.entries;
    return c;
  }
  u32 total_nodes() const {
    u32 c = 0;
    for (const auto& tr : tries_) c += tr.node_count();
    return c;
  }
  u32 total_pointers() const {
    u32 c = 0;
    for (const auto& tr : tries_) c += tr.pointer_count();
    return c;
  }

 private:
  u32 lambda_ = 0;
  u32 sigma_ = 0;
  u32 agroup_count_ = 0;
  std::vector<Symbol> heavy_symbol_;
  std::vector<std::vector<u32>> trie_of_;
  std::vector<WildcardTrie> tries_;

  void construct(const TextIndex& idx, const SuffixTree& t, const HeavyPaths& hp,
                 const PartitionIndex& part, u32 lambda) {
    check_usage(lambda >= 1, "wildcard layer: lambda must be at least 1");
    lambda_ = lambda;
    sigma_ = idx.sigma();
    agroup_count_ = (sigma_ + lambda - 1) / lambda;
    const Subtree& tm = part.tm();
    const auto& marked = part.marking().marked;
    heavy_symbol_.assign(marked.size(), 0);
    trie_of_.assign(marked.size(), std::vector<u32>(agroup_count_, kNone));

    for (u32 o = 0; o < marked.size(); ++o) {
      u32 u = marked[o];
      u32 m = part.marked_to_tm(u);
      if (tm.is_leaf(m)) continue;

      // Heavy child image: most marked leaves; ties prefer the child whose
      // subtree holds the global heavy-chain leaf of u, then the first child.
      u32 target = hp.chain_leaf(u);
      u32 heavy = kNone;
      u32 best_cnt = 0;
      bool best_has_target = false;
      for (u32 c = tm.first_child(m); c != kNone; c = tm.next_sibling(c)) {
        u32 cnt = tm.lhi(c) - tm.llo(c);
        bool has = t.in_subtree(tm.global_of(c), target);
        if (heavy == kNone || cnt > best_cnt || (cnt == best_cnt && has && !best_has_target)) {
          heavy = c;
          best_cnt = cnt;
          best_has_target = has;
        }
      }
      heavy_symbol_[o] = tm.first_symbol(idx, heavy);

      u32 du = t.sdepth(u);
      std::vector<std::vector<u32>> tails(agroup_count_);
      for (u32 c = tm.first_child(m); c != kNone; c = tm.next_sibling(c)) {
        if (c == heavy) continue;
        Symbol a = tm.first_symbol(idx, c);
        if (a == kSentinel) continue;
        u32 g = agroup_of(a);
        for (u32 slot = tm.llo(c); slot < tm.lhi(c); ++slot) {
          u32 pos = idx.sa()[tm.leaf_rank(slot)];
          u32 q = pos + du + 1;
          check_contract(q < idx.n(), "wildcard layer: stored tail would be empty");
          tails[g].push_back(q);
        }
      }
      std::span<const u32> isa = idx.isa();
      for (u32 g = 0; g < agroup_count_; ++g) {
        if (tails[g].empty()) continue;
        std::sort(tails[g].begin(), tails[g].end(),
                  [&](u32 x, u32 y) { return isa[x] < isa[y]; });
        trie_of_[o][g] = static_cast<u32>(tries_.size());
        tries_.push_back(
            detail::build_trie(idx, t, part, u, g, agroup_lo(g), agroup_hi(g), tails[g]));
      }
    }
  }
};

/// Batched continuation query below a marked node: for every branch symbol a
/// with a child below `u`, report how far a . tail matches (tail =
/// pat[j..]), except that symbols whose match dies immediately after the
/// branch are omitted when the tail is nonempty.  The result is sorted by
/// symbol.  Each continuation costs one trie walk shared across its alphabet
/// group; the heavy symbol and trie misses fall back to ordinary descents.
inline std::vector<WildcardHit> wildcard_lcp(const TextIndex& idx, const SuffixTree& t,
                                             const HeavyPaths& hp, const PartitionIndex& part,
                                             const WildcardLayer& layer, u32 u,
                                             const PatternHandle& h, u32 j,
                                             QueryCounters* qc = nullptr) {
  check_contract(part.is_marked(u), "wildcard_lcp: node is not marked");
  check_usage(j <= h.size(), "wildcard_lcp: pattern offset out of range");
  if (qc) ++qc->wildcard_lcp_calls;
  std::vector<WildcardHit> hits;
  if (t.is_leaf(u)) return hits;

  const u32 plen = h.size() - j;
  const u32 ordinal = part.rank1(u);
  const u32 du = t.sdepth(u);
  const Symbol astar = layer.heavy_symbol(ordinal);

  auto push_hit = [&](Symbol a, Location loc, u32 total) {
    if (plen != 0 && total < 2) return;  // died on the branch symbol
    hits.push_back({a, loc, total, total == 1 + plen});
  };

  // Heavy branch symbol: one ordinary descent below the child.
  if (astar != kSentinel) {
    u32 c = t.child_by_symbol(idx, u, astar);
    check_contract(c != kNone, "wildcard_lcp: heavy symbol without a child");
    auto [loc, m] = unrooted_lcp_full(idx, t, part, t.canon(c, 1), h, j, qc);
    push_hit(astar, loc, 1 + m);
  }

  for (u32 g = 0; g < layer.agroup_count(); ++g) {
    Symbol alo = layer.agroup_lo(g);
    Symbol ahi = layer.agroup_hi(g);
    const WildcardTrie* tr = layer.trie(ordinal, g);
    if (tr == nullptr) {
      // Nothing stored: every non-heavy branch is answered by a descent.
      for (Symbol a = alo; a <= ahi; ++a) {
        if (a == astar) continue;
        u32 c = t.child_by_symbol(idx, u, a);
        if (c == kNone) continue;
        auto [loc, m] = unrooted_lcp_full(idx, t, part, t.canon(c, 1), h, j, qc);
        push_hit(a, loc, 1 + m);
      }
      continue;
    }

    // One walk of the tail through the trie, shared by all branch symbols.
    std::vector<u32> path{0};
    u32 cur = 0;
    u32 d = 0;
    u32 midnode = kNone;  // set when the tail ends inside the edge to it
    while (d < plen) {
      u32 w = tr->child_by_symbol(idx, cur, h.pat[j + d]);
      if (w == kNone) break;
      u32 el = tr->depth[w] - d;
      u32 lps = lcp_pattern_suffix(idx, h, j + d, idx.isa_lookup(tr->rep[w] + d, qc), qc);
      u32 ext = std::min(lps, el);
      if (ext == el) {
        cur = w;
        path.push_back(w);
        d += el;
        continue;
      }
      d += ext;
      if (d == plen) midnode = w;  // tail exhausted mid-edge
      break;
    }
    bool tail_done = (d == plen);

    for (Symbol a = alo; a <= ahi; ++a) {
      if (a == astar) continue;
      if (tail_done && midnode == kNone) {
        // Tail ends exactly at a trie node: its pointer is the full answer.
        if (const WildcardPointer* pe = tr->pointer(cur, a)) {
          push_hit(a, pe->loc, 1 + plen);
          continue;
        }
      } else if (tail_done) {
        // Tail ends inside a trie edge: the lower node's pointer target lies
        // below the answer; read the ancestor at the right depth.
        if (const WildcardPointer* pe = tr->pointer(midnode, a)) {
          Location loc = locate_at_depth(t, hp, pe->loc.v, du + 1 + plen);
          push_hit(a, loc, 1 + plen);
          continue;
        }
      }
      // Continue by descent from the deepest matched-path node that still
      // has this branch (pointer presence only shrinks going down).
      bool resolved = false;
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        if (const WildcardPointer* pe = tr->pointer(*it, a)) {
          u32 pd = tr->depth[*it];
          auto [loc, m] = unrooted_lcp_full(idx, t, part, pe->loc, h, j + pd, qc);
          push_hit(a, loc, 1 + pd + m);
          resolved = true;
          break;
        }
      }
      (void)resolved;  // no pointer even at the root: no child with symbol a
    }
  }

  std::sort(hits.begin(), hits.end(),
            [](const WildcardHit& x, const WildcardHit& y) { return x.symbol < y.symbol; });
  if (qc) {
    for (const WildcardHit& hit : hits)
      if (hit.full && hit.loc.off == 0 && part.is_marked(hit.loc.v)) ++qc->finish_marked;
  }
  return hits;
}

}  // namespace wcidx
