#pragma once
/// \file partition.hpp
/// Marks every tau-th leaf plus the internal nodes above them, partitions
/// the suffix tree into small groups hanging from marked nodes, builds the
/// marked tree (the compacted trie over marked-leaf suffixes) with its
/// bitvector/ordinal maps, per-group unrooted-LCP structures, and the
/// first-symbol routers that send a query from a marked node into the
/// right group below it.
///
/// Group shapes. For a marked node u whose children segments contain
/// exactly one child with marked descendants each:
///   - if nothing below u is a marked internal node, the segment's whole
///     child subtrees form one group (the run holds one marked leaf);
///   - otherwise the segment's special child leads to a unique topmost
///     marked descendant v; the group is everything in the segment above
///     and beside v, closed off with u on top, split into a left and a
///     right half along the u..v path, each half completed with v's
///     nearest leaf on that side so its leaf ranks stay consecutive. The
///     edge from v down to that borrowed leaf skips v's real children —
///     answers landing inside it are clamped back to v by the caller.

#include <algorithm>
#include <memory>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/group_lcp.hpp"
#include "wcidx/subtree.hpp"
#include "wcidx/suffix_tree.hpp"

namespace wcidx {

struct Marking {
  u32 tau = 0;
  std::vector<char> node_marked;       // by node id (preorder)
  std::vector<char> marked_internal_below;  // proper descendants include a marked internal
  std::vector<u32> marked;             // marked node ids, ascending
  u32 marked_leaves = 0, marked_internals = 0;

  bool is_marked(u32 v) const { return node_marked[v] != 0; }
};

/// Marks every tau-th leaf (left to right, starting at the leftmost),
/// every internal node with at least two children holding marked
/// descendants, and the root.
inline Marking mark_nodes(const SuffixTree& t, u32 tau) {
  check_usage(tau >= 2, "tau must be at least 2");
  Marking mk;
  mk.tau = tau;
  const u32 cnt = t.node_count();
  mk.node_marked.assign(cnt, 0);
  mk.marked_internal_below.assign(cnt, 0);

  auto subtree_has_marked_leaf = [&](u32 v) {
    u32 first = ((t.lo(v) + tau - 1) / tau) * tau;
    return first < t.hi(v);
  };
  for (u32 v = cnt; v-- > 0;) {
    if (t.is_leaf(v)) {
      if (t.leaf_rank(v) % tau == 0) {
        mk.node_marked[v] = 1;
        ++mk.marked_leaves;
      }
      continue;
    }
    u32 with_marked = 0;
    for (u32 c = t.first_child(v); c != kNone; c = t.next_sibling(c)) {
      if (subtree_has_marked_leaf(c)) ++with_marked;
      if (mk.node_marked[c] != 0 && !t.is_leaf(c)) mk.marked_internal_below[v] = 1;
      if (mk.marked_internal_below[c] != 0) mk.marked_internal_below[v] = 1;
    }
    if (v == SuffixTree::root() || with_marked >= 2) {
      mk.node_marked[v] = 1;
      ++mk.marked_internals;
    }
  }
  check_contract(mk.marked_internals <= mk.marked_leaves,
                 "marking: internal marked nodes exceed marked leaves");
  for (u32 v = 0; v < cnt; ++v)
    if (mk.node_marked[v]) mk.marked.push_back(v);
  return mk;
}

/// One group, as plain member lists (global node ids, ascending).
struct GroupSpec {
  u32 root = kNone;      // the marked connector node u
  bool pair = false;
  u32 lower = kNone;     // v, the shared lower marked node (pairs only)
  u32 special = kNone;   // the segment child leading to v (pairs only)
  std::vector<u32> members_left;   // the only member list for non-pairs
  std::vector<u32> members_right;  // empty for non-pairs
  u32 boundary_left = kNone;       // borrowed leaf global ids (pairs only)
  u32 boundary_right = kNone;
};

inline std::vector<GroupSpec> build_groups(const SuffixTree& t, const Marking& mk) {
  std::vector<GroupSpec> out;
  const u32 tau = mk.tau;
  auto has_marked_leaf = [&](u32 v) {
    u32 first = ((t.lo(v) + tau - 1) / tau) * tau;
    return first < t.hi(v);
  };
  auto add_subtree = [&](std::vector<u32>& dst, u32 v) {
    for (u32 x = v; x < t.subtree_end(v); ++x) dst.push_back(x);
  };

  for (u32 u : mk.marked) {
    if (t.is_leaf(u)) continue;
    // Children segments: cut before every child that holds marked
    // descendants, except the first such child.
    std::vector<u32> kids;
    for (u32 c = t.first_child(u); c != kNone; c = t.next_sibling(c)) kids.push_back(c);
    std::vector<std::pair<u32, u32>> segments;  // [first, last] child indices
    {
      u32 seg_start = 0;
      bool seen = false;
      for (u32 i = 0; i < kids.size(); ++i) {
        if (!has_marked_leaf(kids[i])) continue;
        if (seen) {
          segments.emplace_back(seg_start, i - 1);
          seg_start = i;
        }
        seen = true;
      }
      check_contract(seen, "build_groups: marked node without marked descendants");
      segments.emplace_back(seg_start, static_cast<u32>(kids.size()) - 1);
    }

    const bool caseA = mk.marked_internal_below[u] == 0;
    for (auto [a, b] : segments) {
      GroupSpec g;
      g.root = u;
      if (caseA) {
        g.members_left.push_back(u);
        for (u32 i = a; i <= b; ++i) add_subtree(g.members_left, kids[i]);
        out.push_back(std::move(g));
        continue;
      }
      // Paired group: locate the special child and its topmost marked
      // descendant v (unique: two marked candidates would force an
      // intermediate marked node).
      u32 special = kNone;
      for (u32 i = a; i <= b; ++i)
        if (has_marked_leaf(kids[i])) special = kids[i];
      u32 v = special;
      while (!mk.is_marked(v)) {
        u32 nxt = kNone;
        for (u32 c = t.first_child(v); c != kNone; c = t.next_sibling(c)) {
          if (!has_marked_leaf(c)) continue;
          check_contract(nxt == kNone, "build_groups: unmarked node with two marked branches");
          nxt = c;
        }
        check_contract(nxt != kNone, "build_groups: lost the marked descendant");
        v = nxt;
      }
      g.pair = true;
      g.lower = v;
      g.special = special;

      std::vector<u32> path;  // special .. v inclusive
      for (u32 x = v;; x = t.parent(x)) {
        path.push_back(x);
        if (x == special) break;
      }
      std::reverse(path.begin(), path.end());

      auto build_half = [&](bool left_side) {
        std::vector<u32> m;
        m.push_back(u);
        for (u32 i = a; i <= b; ++i) {
          if (kids[i] == special) continue;
          bool is_left = kids[i] < special;
          if (is_left == left_side) add_subtree(m, kids[i]);
        }
        for (u32 pi = 0; pi < path.size(); ++pi) {
          u32 p = path[pi];
          m.push_back(p);
          if (p == v) break;
          u32 nxt = path[pi + 1];
          for (u32 c = t.first_child(p); c != kNone; c = t.next_sibling(c)) {
            if (c == nxt) continue;
            bool is_left = c < nxt;
            if (is_left == left_side) add_subtree(m, c);
          }
        }
        u32 boundary = kNone;
        if (!t.is_leaf(v)) {
          boundary = left_side ? t.leaf_of_rank(t.lo(v)) : t.leaf_of_rank(t.hi(v) - 1);
          m.push_back(boundary);
        }
        std::sort(m.begin(), m.end());
        check_contract(std::adjacent_find(m.begin(), m.end()) == m.end(),
                       "build_groups: duplicate member");
        return std::make_pair(std::move(m), boundary);
      };
      auto [ml, bl] = build_half(true);
      auto [mr, br] = build_half(false);
      g.members_left = std::move(ml);
      g.members_right = std::move(mr);
      g.boundary_left = bl;
      g.boundary_right = br;
      out.push_back(std::move(g));
    }
  }
  return out;
}

/// Where a node lives: its one home group, with the half for pairs
/// (0 = left/only, 1 = right, 2 = on the shared path, i.e. both).
struct MemberRef {
  u32 group = kNone;
  u8 half = 0;
};

class PartitionIndex {
 public:
  struct Group {
    GroupSpec spec;
    std::shared_ptr<const Subtree> sub_left, sub_right;
    GroupLcp lcp_left, lcp_right;
    u32 pseudo_left = kNone, pseudo_right = kNone;  // local ids of borrowed leaves
  };

  static PartitionIndex build(const TextIndex& idx, const SuffixTree& t, u32 tau,
                              GroupLcpParams lcp_params, TopologyCache* cache = nullptr) {
    PartitionIndex p;
    p.construct(idx, t, tau, lcp_params, cache);
    return p;
  }

  const Marking& marking() const { return marking_; }
  u32 tau() const { return marking_.tau; }
  const std::vector<Group>& groups() const { return groups_; }
  const Group& group(u32 gid) const { return groups_[gid]; }
  const std::vector<MemberRef>& membership(u32 node) const { return membership_[node]; }
  u32 max_group_nodes() const { return max_group_nodes_; }

  bool is_marked(u32 v) const { return marking_.is_marked(v); }
  /// Ones in B[0..i) — the number of marked nodes before preorder index i.
  u32 rank1(u32 i) const { return prefix_ones_[i]; }
  /// The marked tree's node for a marked suffix-tree node.
  u32 marked_to_tm(u32 u) const {
    check_contract(u < prefix_ones_.size() - 1 && is_marked(u), "marked_to_tm: node not marked");
    return a_m_[rank1(u)];
  }
  /// Back-pointer: the suffix-tree node behind a marked-tree node.
  u32 tm_to_marked(u32 tm_node) const { return tm_->global_of(tm_node); }
  const Subtree& tm() const { return *tm_; }
  const GroupLcp& tm_lcp() const { return *tm_lcp_; }

  GroupLcp::Answer unrooted_lcp_marked(u32 tm_node, const PatternHandle& h, u32 j,
                                       QueryCounters* qc = nullptr) const {
    if (qc) ++qc->tm_queries;
    return tm_lcp_->unrooted_lcp_small(tm_node, h, j, qc);
  }

  /// Group below marked node u whose first-symbol range contains c
  /// (predecessor semantics), or kNone when c precedes every group.
  u32 route_child(u32 u, Symbol c) const {
    check_contract(is_marked(u), "route_child: node not marked");
    const auto& r = routers_[rank1(u)];
    u32 lo = 0, hi = static_cast<u32>(r.size());
    while (lo < hi) {
      u32 mid = (lo + hi) / 2;
      if (r[mid].first <= c)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo == 0 ? kNone : r[lo - 1].second;
  }

 private:
  Marking marking_;
  std::vector<u32> prefix_ones_;
  std::vector<u32> a_m_;  // marked ordinal -> marked-tree node
  std::shared_ptr<const Subtree> tm_;
  std::unique_ptr<GroupLcp> tm_lcp_;
  std::vector<Group> groups_;
  std::vector<std::vector<MemberRef>> membership_;
  std::vector<std::vector<std::pair<Symbol, u32>>> routers_;  // by marked ordinal
  u32 max_group_nodes_ = 0;

  void construct(const TextIndex& idx, const SuffixTree& t, u32 tau, GroupLcpParams lcp_params,
                 TopologyCache* cache) {
    marking_ = mark_nodes(t, tau);
    const u32 cnt = t.node_count();
    prefix_ones_.assign(cnt + 1, 0);
    for (u32 v = 0; v < cnt; ++v)
      prefix_ones_[v + 1] = prefix_ones_[v] + (marking_.node_marked[v] ? 1 : 0);

    // Marked tree: local ids follow the marked ordinals, so the ordinal
    // map is the identity — kept materialized to honour its contract.
    tm_ = std::make_shared<const Subtree>(Subtree::build(idx, t, marking_.marked));
    a_m_.resize(marking_.marked.size());
    for (u32 i = 0; i < a_m_.size(); ++i) a_m_[i] = i;
    GroupLcpParams tm_params = lcp_params;
    tm_params.level = SamplingLevel::full;
    tm_params.require_consecutive = false;
    tm_params.max_leaves = 0;
    tm_lcp_ = std::make_unique<GroupLcp>(GroupLcp::build(idx, t, tm_, tm_params, cache));

    auto specs = build_groups(t, marking_);
    check_contract(specs.size() <= 2 * marking_.marked.size(),
                   "partition: more groups than twice the marked nodes");
    membership_.assign(cnt, {});
    routers_.assign(marking_.marked.size(), {});
    groups_.reserve(specs.size());

    GroupLcpParams gp = lcp_params;
    gp.require_consecutive = true;
    gp.max_leaves = 2 * tau + 2;
    for (auto& spec : specs) {
      u32 gid = static_cast<u32>(groups_.size());
      Group g;
      g.spec = spec;
      const u32 u = spec.root;

      auto register_members = [&](const std::vector<u32>& ms, u32 boundary, u8 half) {
        for (u32 v : ms) {
          if (v == u || v == boundary) continue;
          auto& list = membership_[v];
          if (half != 0 && !list.empty() && list.back().group == gid)
            list.back().half = 2;  // present in both halves
          else
            list.push_back({gid, half});
        }
      };
      max_group_nodes_ = std::max(
          max_group_nodes_,
          static_cast<u32>(std::max(spec.members_left.size(), spec.members_right.size())));
      check_contract(spec.members_left.size() <= 4 * static_cast<size_t>(tau) &&
                         spec.members_right.size() <= 4 * static_cast<size_t>(tau),
                     "partition: group exceeds the 4*tau node bound");

      g.sub_left = std::make_shared<const Subtree>(Subtree::build(idx, t, spec.members_left));
      register_members(spec.members_left, spec.boundary_left, 0);
      if (spec.boundary_left != kNone) g.pseudo_left = g.sub_left->local_of(spec.boundary_left);
      g.lcp_left = GroupLcp::build(idx, t, g.sub_left, gp, cache);
      if (spec.pair) {
        g.sub_right = std::make_shared<const Subtree>(Subtree::build(idx, t, spec.members_right));
        register_members(spec.members_right, spec.boundary_right, 1);
        if (spec.boundary_right != kNone)
          g.pseudo_right = g.sub_right->local_of(spec.boundary_right);
        g.lcp_right = GroupLcp::build(idx, t, g.sub_right, gp, cache);
      }

      // Router entry: first symbol of the edge from u to the group's
      // leftmost child.
      u32 leftmost_child = kNone;
      for (u32 v : spec.members_left) {
        if (v == u) continue;
        if (t.parent(v) == u) {
          leftmost_child = v;
          break;
        }
      }
      check_contract(leftmost_child != kNone, "partition: group without a child of its root");
      routers_[rank1(u)].emplace_back(t.first_symbol(idx, leftmost_child), gid);
      groups_.push_back(std::move(g));
    }
    for (auto& r : routers_) {
      std::sort(r.begin(), r.end());
      for (size_t i = 1; i < r.size(); ++i)
        check_contract(r[i - 1].first < r[i].first, "partition: router symbols collide");
    }

    // Every node except the root has exactly one home; the root only
    // connects groups from above.
    for (u32 v = 1; v < cnt; ++v)
      check_contract(membership_[v].size() == 1, "partition: node cover is not exactly one group");
    check_contract(membership_[SuffixTree::root()].empty(),
                   "partition: the root should have no home group");
  }
};

}  // namespace wcidx
