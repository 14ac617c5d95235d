#pragma once
/// \file unrooted.hpp
/// Unrooted LCP over the whole suffix tree: from any location, match a
/// pattern suffix downward and report where the walk ends plus how many
/// symbols it consumed — equivalent to a naive descent, but resolved
/// through the marked tree, the first-symbol routers, and the small
/// per-group structures.
///
/// The walk alternates two stages. Mid-edge, one pattern/suffix LCP
/// settles the rest of the edge. At a marked node, one marked-tree query
/// finds the deepest marked node whose path is fully matched, and one
/// routed group query finishes the job below it. At an unmarked node,
/// the node's home group (both halves when it sits on a shared path)
/// answers directly. A group answer that runs onto a borrowed-leaf edge
/// is clamped back to the group's lower marked node and the loop
/// continues from there, strictly deeper each round.

#include <utility>

#include "wcidx/common.hpp"
#include "wcidx/group_lcp.hpp"
#include "wcidx/partition.hpp"
#include "wcidx/pattern_handle.hpp"
#include "wcidx/suffix_tree.hpp"
#include "wcidx/text_index.hpp"

namespace wcidx {

namespace detail {

/// One group half, translated to a global location. Answers on the
/// borrowed-leaf edge clamp to the group's lower marked node; `matched`
/// is recomputed for the clamp from the entry depth.
inline std::pair<Location, u32> group_half_answer(const SuffixTree& t,
                                                 const PartitionIndex::Group& g, bool right,
                                                 u32 entry_global, const PatternHandle& h, u32 j,
                                                 QueryCounters* qc) {
  const Subtree& sub = right ? *g.sub_right : *g.sub_left;
  const GroupLcp& lcp = right ? g.lcp_right : g.lcp_left;
  const u32 pseudo = right ? g.pseudo_right : g.pseudo_left;
  u32 local = sub.local_of(entry_global);
  check_contract(local != kNone, "group_half_answer: entry node is not in the group");
  GroupLcp::Answer a = lcp.unrooted_lcp_small(local, h, j, qc);
  if (pseudo != kNone && a.loc.v == pseudo) {
    u32 lower = g.spec.lower;
    return {Location{lower, 0}, t.sdepth(lower) - t.sdepth(entry_global)};
  }
  return {Location{sub.global_of(a.loc.v), a.loc.off}, a.matched};
}

/// Queries the group from `entry_global`, both halves for shared-path
/// entries; the deeper answer wins, ties go left.
inline std::pair<Location, u32> group_answer(const SuffixTree& t, const PartitionIndex::Group& g,
                                             u8 half, u32 entry_global, const PatternHandle& h,
                                             u32 j, QueryCounters* qc) {
  if (half == 0 || !g.spec.pair) return group_half_answer(t, g, false, entry_global, h, j, qc);
  if (half == 1) return group_half_answer(t, g, true, entry_global, h, j, qc);
  auto left = group_half_answer(t, g, false, entry_global, h, j, qc);
  auto right = group_half_answer(t, g, true, entry_global, h, j, qc);
  return right.second > left.second ? right : left;
}

}  // namespace detail

/// Matches pat[j..] downward from `from`; returns the final location and
/// the number of symbols matched. Equivalent to naive_descend on the
/// pattern tail.
inline std::pair<Location, u32> unrooted_lcp_full(const TextIndex& idx, const SuffixTree& t,
                                                  const PartitionIndex& part, Location from,
                                                  const PatternHandle& h, u32 j,
                                                  QueryCounters* qc = nullptr) {
  check_contract(j <= h.size(), "unrooted_lcp_full: pattern offset out of range");
  Location loc = t.canon(from.v, from.off);
  u32 matched = 0;
  auto rem = [&] { return h.size() - (j + matched); };

  // Mid-edge entry: one LCP against the suffix under the edge settles
  // how far along the remaining label the pattern agrees.
  if (loc.off > 0 && rem() > 0) {
    u32 cap = t.edge_len(loc.v) - loc.off;
    u32 p = t.edge_pos(idx, loc.v) + loc.off;
    u32 l = lcp_pattern_suffix(idx, h, j, idx.isa_lookup(p, qc), qc);
    u32 take = std::min(l, cap);
    matched += take;
    loc.off += take;
    if (loc.off < t.edge_len(loc.v)) return {loc, matched};
    loc = Location{loc.v, 0};
  }

  while (true) {
    if (rem() == 0 || t.is_leaf(loc.v)) return {loc, matched};
    const u32 v = loc.v;
    std::pair<Location, u32> step;
    if (part.is_marked(v)) {
      // Hop down the marked tree to the deepest marked node whose whole
      // path from v is matched, then finish in the group the next
      // pattern symbol routes to.
      GroupLcp::Answer am = part.unrooted_lcp_marked(part.marked_to_tm(v), h, j + matched, qc);
      u32 up_tm = am.loc.off == 0 ? am.loc.v : part.tm().parent(am.loc.v);
      u32 uprime = part.tm_to_marked(up_tm);
      u32 adv = t.sdepth(uprime) - t.sdepth(v);
      matched += adv;
      loc = Location{uprime, 0};
      if (rem() == 0 || t.is_leaf(uprime)) return {loc, matched};
      u32 gid = part.route_child(uprime, h.pat[j + matched]);
      if (gid == kNone) return {loc, matched};
      const auto& g = part.group(gid);
      u8 half = g.spec.pair ? 2 : 0;  // the group root sits on both halves
      step = detail::group_answer(t, g, half, uprime, h, j + matched, qc);
      if (step.second == 0 && step.first == Location{uprime, 0}) return {loc, matched};
    } else {
      const auto& ms = part.membership(v);
      check_contract(ms.size() == 1, "unrooted_lcp_full: node without a home group");
      step = detail::group_answer(t, part.group(ms[0].group), ms[0].half, v, h, j + matched, qc);
      if (step.second == 0 && step.first == Location{v, 0}) return {Location{v, 0}, matched};
    }
    matched += step.second;
    loc = step.first;
    // Only a strictly deeper marked node keeps the walk going; every
    // other landing point is the final answer.
    if (!(loc.off == 0 && part.is_marked(loc.v) && step.second > 0)) return {loc, matched};
  }
}

}  // namespace wcidx
