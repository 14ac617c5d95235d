#pragma once
/// \file group_lcp.hpp
/// Unrooted LCP structure over a small local tree: answers "where would a
/// descent of P[j..] starting at node u end inside this subtree" with a
/// constant number of rank probes. Per off-path (light) child it keeps a
/// predecessor set over the global ranks of the child's leaf suffixes,
/// shifted to start at the parent's depth; per heavy chain it keeps the
/// node depths. Three storage levels answer identically:
///   full    - every depth and every set element stored;
///   compact - tree shape behind the topology codec, chain depths stored
///             only every micro_block-th chain position, the rest derived
///             from leaf suffixes on demand;
///   sampled - additionally only every c_D-th set element stored, the gap
///             searched with direct suffix comparisons recomputed from the
///             suffix array.

#include <algorithm>
#include <memory>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/pattern_handle.hpp"
#include "wcidx/subtree.hpp"
#include "wcidx/suffix_tree.hpp"
#include "wcidx/topology_codec.hpp"

namespace wcidx {

enum class SamplingLevel : u8 { full = 0, compact = 1, sampled = 2 };

inline const char* to_string(SamplingLevel l) {
  switch (l) {
    case SamplingLevel::full: return "full";
    case SamplingLevel::compact: return "compact";
    default: return "sampled";
  }
}

struct GroupLcpParams {
  SamplingLevel level = SamplingLevel::full;
  u32 c_d = 2;         // set-element sampling step
  u32 c_h = 2;         // chain-depth sampling step
  u32 micro_block = 2; // topology-codec block size (compact chain spacing)
  bool require_consecutive = true;
  u32 max_leaves = 0;  // 0 = unbounded
};

/// Defaults collapse to small constants at desk scale.
inline GroupLcpParams default_group_lcp_params(u64 n, SamplingLevel level) {
  GroupLcpParams p;
  p.level = level;
  u32 ll = static_cast<u32>(ceil_log2(std::max<u64>(2, ceil_log2(std::max<u64>(2, n)))));
  p.c_h = std::max<u32>(2, ll);
  p.c_d = std::max<u32>(2, ll * ll);
  p.micro_block = p.c_h;
  return p;
}

/// Neighbours of a query rank inside one off-path child's suffix set.
struct SetNeighbors {
  u32 le_rank = kNone, le_pos = kNone;  // largest element <= query, and its text position
  u32 ge_rank = kNone, ge_pos = kNone;  // smallest element >= query
};

class GroupLcp {
 public:
  struct Answer {
    LocalLoc loc;
    u32 matched = 0;
    bool operator==(const Answer&) const = default;
  };

  static GroupLcp build(const TextIndex& idx, const SuffixTree& t,
                        std::shared_ptr<const Subtree> sub, GroupLcpParams params,
                        TopologyCache* cache = nullptr) {
    GroupLcp g;
    g.construct(idx, t, std::move(sub), params, cache);
    return g;
  }

  const Subtree& subtree() const { return *sub_; }
  const GroupLcpParams& params() const { return params_; }
  u64 set_elements_total() const { return d_total_; }

  /// Rank of the leaf's suffix shifted to start at w's string depth.
  u32 global_rank(u32 w, u32 leaf, QueryCounters* qc = nullptr) const {
    check_contract(w < sub_->size() && leaf < sub_->size(), "global_rank: node out of range");
    check_contract(sub_->is_leaf(leaf), "global_rank: second argument must be a leaf");
    check_contract(w < leaf && leaf < sub_->subtree_end(w), "global_rank: leaf must descend from w");
    u32 dw = depth_of(w, qc);
    u32 slot = leaf_slot_of(leaf);
    u32 pos = pos_of_slot(slot, qc);
    check_contract(dw + 1 <= idx_->n() - pos, "global_rank: depth exceeds the leaf suffix");
    return idx_->isa_lookup(pos + dw, qc);
  }

  /// Both rank neighbours of query_rank in the set of child u_i. The
  /// sampled level refines between stored samples by direct comparisons.
  SetNeighbors predecessor_in_set(u32 u_i, u32 query_rank, QueryCounters* qc = nullptr) const {
    check_contract(u_i < sub_->size() && u_i != Subtree::root(),
                   "predecessor_in_set: not an off-path child");
    check_contract(light_slot_[u_i] != kNone, "predecessor_in_set: no set stored at this node");
    u32 parent_depth = depth_of(parent_of(u_i), qc);
    u32 b = first_at_least(u_i, parent_depth, query_rank, qc);
    u32 size = set_size(u_i);
    SetNeighbors out;
    if (b < size) {
      out.ge_pos = element_pos(u_i, b, qc);
      out.ge_rank = element_rank_at(u_i, parent_depth, b, qc);
      if (out.ge_rank == query_rank) {
        out.le_rank = out.ge_rank;
        out.le_pos = out.ge_pos;
        return out;
      }
    }
    if (b > 0) {
      out.le_pos = element_pos(u_i, b - 1, qc);
      out.le_rank = element_rank_at(u_i, parent_depth, b - 1, qc);
    }
    return out;
  }

  /// Descent of P[j..] from node u, restricted to this local tree: returns
  /// the lowest reachable local location and how many symbols matched.
  Answer unrooted_lcp_small(u32 u, const PatternHandle& h, u32 j, QueryCounters* qc = nullptr) const {
    check_contract(u < sub_->size(), "unrooted_lcp_small: node outside the subtree");
    check_contract(j <= h.size(), "unrooted_lcp_small: suffix index out of range");
    if (qc) ++qc->group_queries;
    const u32 rem = h.size() - j;
    if (rem == 0 || is_leaf(u)) return {{u, 0}, 0};

    // Probe: match P[j..] against the text below u along u's heavy chain.
    const u32 cid = chain_id_of(u);
    const u32 csz = chain_size(cid);
    const u32 pu = pos_in_chain_of(u);
    const u32 cl = chain_node(cid, csz - 1);
    const u32 du = depth_of(u, qc);
    const u32 pos_cl = pos_of_slot(leaf_slot_of(cl), qc);
    const u32 t = idx_->isa_lookup(pos_cl + du, qc);
    const u32 l0 = lcp_pattern_suffix(*idx_, h, j, t, qc);
    const u32 d_target = du + l0;

    u32 p = chain_first_at_depth(cid, pu, d_target, qc);
    u32 y = chain_node(cid, p);
    u32 dy = depth_of(y, qc);
    if (l0 == rem || dy > d_target) {
      // Pattern exhausted, or died inside a heavy edge.
      LocalLoc loc = dy == d_target
                         ? LocalLoc{y, 0}
                         : LocalLoc{y, d_target - depth_of(chain_node(cid, p - 1), qc)};
      return {loc, l0};
    }

    // At node x of depth d_target with pattern symbols left: the matching
    // child is off-path, since the pattern just diverged from the chain.
    const u32 x = y;
    if (is_leaf(x)) return {{x, 0}, l0};
    const Symbol c = h.pat[j + l0];
    const u32 uc = child_by_symbol_at(x, c, d_target, qc);
    if (uc == kNone) return {{x, 0}, l0};
    check_contract(light_slot_[uc] != kNone, "unrooted_lcp_small: diverging child is not off-path");

    const u32 r2 = h.r[j + l0];
    const u32 b = first_at_least(uc, d_target, r2, qc);
    const u32 size = set_size(uc);
    u32 wi, d1;
    if (b == 0) {
      wi = 0;
      d1 = lcp_pattern_suffix(*idx_, h, j + l0, element_rank_at(uc, d_target, 0, qc), qc);
    } else if (b == size) {
      wi = size - 1;
      d1 = lcp_pattern_suffix(*idx_, h, j + l0, element_rank_at(uc, d_target, size - 1, qc), qc);
    } else {
      u32 ll = lcp_pattern_suffix(*idx_, h, j + l0, element_rank_at(uc, d_target, b - 1, qc), qc);
      u32 lr = lcp_pattern_suffix(*idx_, h, j + l0, element_rank_at(uc, d_target, b, qc), qc);
      if (ll >= lr) {  // ties toward the larger LCP side, left on equality
        wi = b - 1;
        d1 = ll;
      } else {
        wi = b;
        d1 = lr;
      }
    }
    const u32 leafv = leaf_node_of(llo_of(uc) + wi);
    LocalLoc loc = locate_above(leafv, d_target + d1, qc);
    return {loc, l0 + d1};
  }

  /// Location at depth exactly `target` on the path from the root to z.
  LocalLoc locate_above(u32 z, u32 target, QueryCounters* qc = nullptr) const {
    while (true) {
      u32 hd = chain_head_node(chain_id_of(z));
      if (depth_of(hd, qc) <= target) break;
      u32 par = parent_of(hd);
      u32 dp = depth_of(par, qc);
      if (dp < target) return {hd, target - dp};  // mid-edge into the chain head
      z = par;
    }
    u32 cid = chain_id_of(z);
    u32 p = chain_first_at_depth(cid, 0, target, qc);
    u32 y = chain_node(cid, p);
    u32 dy = depth_of(y, qc);
    if (dy == target) return {y, 0};
    return {y, target - depth_of(chain_node(cid, p - 1), qc)};
  }

  /// String depth of a local node under the active level's access rules.
  u32 depth_of(u32 v, QueryCounters* qc = nullptr) const {
    if (params_.level == SamplingLevel::full) return sub_->sdepth(v);
    if (explicit_depth_[v] != kNone) return explicit_depth_[v];
    if (is_leaf(v)) {
      u32 pos = pos_of_slot(leaf_slot_of(v), qc);
      return idx_->n() - pos;
    }
    // Branching node: depth = lcp of its extreme leaf suffixes.
    u32 r1 = leaf_full_rank(llo_of(v));
    u32 r2 = leaf_full_rank(lhi_of(v) - 1);
    return idx_->lcp_suffixes(r1, r2, qc);
  }

 private:
  const TextIndex* idx_ = nullptr;
  std::shared_ptr<const Subtree> sub_;
  GroupLcpParams params_;
  SubtreeHld hld_;
  TopologyCode code_;
  std::shared_ptr<const DecodedTopology> topo_;
  std::vector<u32> light_slot_;       // node -> D-table slot, kNone if on-path
  std::vector<u32> d_off_;            // CSR offsets into d_ranks_ per slot
  std::vector<u32> d_ranks_;          // stored shifted ranks (all, or every c_d-th)
  std::vector<std::vector<u32>> chain_depths_;  // per chain: all (full) or sampled depths
  std::vector<u32> explicit_depth_;   // root + locally-unary nodes (compact/sampled)
  u64 d_total_ = 0;

  bool stores_all_ranks() const { return params_.level != SamplingLevel::sampled; }
  u32 depth_spacing() const {
    return params_.level == SamplingLevel::compact ? params_.micro_block : params_.c_h;
  }

  // --- structure access (shape comes from the codec off the full level) ---
  bool is_leaf(u32 v) const {
    return params_.level == SamplingLevel::full ? sub_->is_leaf(v) : topo_->is_leaf(v);
  }
  u32 parent_of(u32 v) const {
    return params_.level == SamplingLevel::full ? sub_->parent(v) : topo_->parent[v];
  }
  u32 llo_of(u32 v) const {
    return params_.level == SamplingLevel::full ? sub_->llo(v) : topo_->llo[v];
  }
  u32 lhi_of(u32 v) const {
    return params_.level == SamplingLevel::full ? sub_->lhi(v) : topo_->lhi[v];
  }
  u32 leaf_slot_of(u32 v) const {
    return params_.level == SamplingLevel::full ? sub_->leaf_slot(v) : topo_->leaf_index[v];
  }
  u32 leaf_node_of(u32 slot) const {
    return params_.level == SamplingLevel::full ? sub_->leaf_node(slot) : topo_->leaf_local[slot];
  }
  u32 chain_id_of(u32 v) const {
    return params_.level == SamplingLevel::full ? hld_.chain_id(v) : topo_->chain_id[v];
  }
  u32 pos_in_chain_of(u32 v) const {
    return params_.level == SamplingLevel::full ? hld_.pos_in_chain(v) : topo_->pos_in_chain[v];
  }
  u32 chain_size(u32 cid) const {
    return params_.level == SamplingLevel::full ? static_cast<u32>(hld_.chains()[cid].size())
                                                : static_cast<u32>(topo_->chains[cid].size());
  }
  u32 chain_node(u32 cid, u32 p) const {
    return params_.level == SamplingLevel::full ? hld_.chains()[cid][p] : topo_->chains[cid][p];
  }
  u32 chain_head_node(u32 cid) const { return chain_node(cid, 0); }
  u32 first_child_of(u32 v) const {
    return params_.level == SamplingLevel::full ? sub_->first_child(v) : topo_->head[v];
  }
  u32 next_sibling_of(u32 v) const {
    return params_.level == SamplingLevel::full ? sub_->next_sibling(v) : topo_->sib[v];
  }

  u32 set_size(u32 v) const { return lhi_of(v) - llo_of(v); }
  u32 leaf_full_rank(u32 slot) const {
    return sub_->ranks_consecutive() ? sub_->rank_base() + slot : sub_->leaf_rank(slot);
  }
  u32 pos_of_slot(u32 slot, QueryCounters* qc) const {
    return idx_->sa_lookup(leaf_full_rank(slot), qc);
  }
  u32 element_pos(u32 v, u32 i, QueryCounters* qc) const {
    return pos_of_slot(llo_of(v) + i, qc);
  }
  /// Shifted rank of element i of S(v): recomputed from the suffix array.
  u32 element_rank_recompute(u32 v, u32 parent_depth, u32 i, QueryCounters* qc) const {
    u32 pos = element_pos(v, i, qc);
    return idx_->isa_lookup(pos + parent_depth, qc);
  }
  u32 element_rank_at(u32 v, u32 parent_depth, u32 i, QueryCounters* qc) const {
    if (stores_all_ranks()) return d_ranks_[d_off_[light_slot_[v]] + i];
    return element_rank_recompute(v, parent_depth, i, qc);
  }

  /// Child of x whose edge (starting at depth d) begins with symbol c.
  u32 child_by_symbol_at(u32 x, Symbol c, u32 d, QueryCounters* qc) const {
    for (u32 w = first_child_of(x); w != kNone; w = next_sibling_of(w)) {
      u32 pos = element_pos(w, 0, qc);
      Symbol s = idx_->text()[pos + d];
      if (s == c) return w;
      if (s > c) return kNone;
    }
    return kNone;
  }

  /// First element index of S(v) with shifted rank >= query (0..size).
  u32 first_at_least(u32 v, u32 parent_depth, u32 query, QueryCounters* qc) const {
    const u32 size = set_size(v);
    u32 lo = 0, hi = size;  // search window [lo, hi)
    if (stores_all_ranks()) {
      const u32* base = d_ranks_.data() + d_off_[light_slot_[v]];
      while (lo < hi) {
        u32 mid = (lo + hi) / 2;
        if (qc) ++qc->pred_probes;
        if (base[mid] < query)
          lo = mid + 1;
        else
          hi = mid;
      }
      return lo;
    }
    // Sampled: locate the gap between stored samples, then compare suffixes
    // recomputed from the suffix array inside the gap.
    u32 direct = 0;
    if (size > params_.c_d) {
      const u32* samp = d_ranks_.data() + d_off_[light_slot_[v]];
      u32 nsamp = (size + params_.c_d - 1) / params_.c_d;  // indices 0, c_d, 2c_d, ...
      u32 a = 0, b2 = nsamp;
      while (a < b2) {
        u32 mid = (a + b2) / 2;
        if (qc) ++qc->pred_probes;
        if (samp[mid] < query)
          a = mid + 1;
        else
          b2 = mid;
      }
      // a = first sample index with value >= query.
      if (a == 0) return 0;
      lo = (a - 1) * params_.c_d + 1;
      hi = std::min(size, a * params_.c_d + 1);
      if (a < nsamp) hi = a * params_.c_d;  // that sample is known >= query
    }
    while (lo < hi) {
      u32 mid = (lo + hi) / 2;
      ++direct;
      if (qc) {
        ++qc->pred_probes;
        ++qc->direct_cmps;
      }
      if (element_rank_recompute(v, parent_depth, mid, qc) < query)
        lo = mid + 1;
      else
        hi = mid;
    }
    check_contract(direct <= params_.c_d * params_.c_d,
                   "predecessor refinement exceeded its comparison budget");
    return lo;
  }

  /// First chain position p in [from, end) whose node depth >= target.
  /// The caller guarantees such a position exists.
  u32 chain_first_at_depth(u32 cid, u32 from, u32 target, QueryCounters* qc) const {
    const u32 csz = chain_size(cid);
    u32 lo = from, hi = csz - 1;  // depths strictly increase; last is >= target
    if (params_.level == SamplingLevel::full) {
      const auto& ds = chain_depths_[cid];
      while (lo < hi) {
        u32 mid = (lo + hi) / 2;
        if (qc) ++qc->pred_probes;
        if (ds[mid] < target)
          lo = mid + 1;
        else
          hi = mid;
      }
      return lo;
    }
    const u32 s = depth_spacing();
    const auto& samp = chain_depths_[cid];  // depths at positions 0, s, 2s, ...
    const u32 nsamp = static_cast<u32>(samp.size());
    u32 a = (from + s - 1) / s;  // first sample index at or after `from`
    u32 b2 = nsamp;
    while (a < b2) {
      u32 mid = (a + b2) / 2;
      if (qc) ++qc->pred_probes;
      if (samp[mid] < target)
        a = mid + 1;
      else
        b2 = mid;
    }
    // a = first in-range sample index with depth >= target (nsamp if none).
    u32 wlo, whi;
    if (a >= nsamp) {
      wlo = nsamp == 0 ? from : std::max(from, (nsamp - 1) * s + 1);
      whi = csz - 1;  // answer exists in range by the caller's guarantee
    } else if (a * s <= from) {
      return from;  // the node at `from` itself already reaches the depth
    } else {
      wlo = std::max(from, (a - 1) * s + 1);
      whi = a * s;  // this sampled position is known to reach the depth
    }
    while (wlo < whi) {
      u32 mid = (wlo + whi) / 2;
      if (qc) ++qc->pred_probes;
      if (depth_of(chain_node(cid, mid), qc) < target)
        wlo = mid + 1;
      else
        whi = mid;
    }
    return wlo;
  }

  void construct(const TextIndex& idx, const SuffixTree& t, std::shared_ptr<const Subtree> sub,
                 GroupLcpParams params, TopologyCache* cache) {
    idx_ = &idx;
    sub_ = std::move(sub);
    params_ = params;
    const Subtree& s = *sub_;
    const u32 k = s.size();
    if (params_.require_consecutive)
      check_contract(s.ranks_consecutive(),
                     "build_group_lcp: leaves are not consecutive in suffix order");
    if (params_.max_leaves != 0)
      check_contract(s.leaf_count() <= params_.max_leaves,
                     "build_group_lcp: subtree exceeds the configured leaf bound");
    hld_ = SubtreeHld::build(s);

    if (params_.level != SamplingLevel::full) {
      std::vector<u32> members(k);
      for (u32 v = 0; v < k; ++v) members[v] = s.global_of(v);
      code_ = encode_group_topology(t, members, params_.micro_block);
      if (cache != nullptr) {
        topo_ = cache->decode(code_);
      } else {
        topo_ = std::make_shared<const DecodedTopology>(decode_topology(code_));
      }
      // The decoded shape must mirror the materialized subtree exactly.
      for (u32 v = 0; v < k; ++v) {
        check_contract(topo_->parent[v] == s.parent(v) && topo_->head[v] == s.first_child(v) &&
                           topo_->chain_id[v] == hld_.chain_id(v) &&
                           topo_->pos_in_chain[v] == hld_.pos_in_chain(v),
                       "build_group_lcp: decoded topology disagrees with the subtree");
      }
    }

    // Off-path suffix sets.
    light_slot_.assign(k, kNone);
    d_off_.clear();
    d_ranks_.clear();
    d_total_ = 0;
    u32 slot = 0;
    for (u32 v = 1; v < k; ++v) {
      if (hld_.heavy_child(s.parent(v)) == v) continue;
      light_slot_[v] = slot++;
      d_total_ += s.lhi(v) - s.llo(v);
    }
    const u64 f = s.leaf_count();
    check_contract(d_total_ <= f * (ceil_log2(std::max<u64>(1, f)) + 1),
                   "build_group_lcp: off-path set elements exceed the f log f bound");
    d_off_.assign(slot + 1, 0);
    for (u32 v = 1; v < k; ++v) {
      if (light_slot_[v] == kNone) continue;
      u32 size = s.lhi(v) - s.llo(v);
      u32 stored = stores_all_ranks()
                       ? size
                       : (size > params_.c_d ? (size + params_.c_d - 1) / params_.c_d : 0);
      d_off_[light_slot_[v] + 1] = stored;
    }
    for (u32 i = 1; i <= slot; ++i) d_off_[i] += d_off_[i - 1];
    d_ranks_.assign(d_off_[slot], 0);
    for (u32 v = 1; v < k; ++v) {
      if (light_slot_[v] == kNone) continue;
      u32 size = s.lhi(v) - s.llo(v);
      u32 dp = s.sdepth(s.parent(v));
      u32 prev = 0;
      bool first = true;
      u32 out = d_off_[light_slot_[v]];
      for (u32 i = 0; i < size; ++i) {
        u32 pos = idx.sa()[leaf_full_rank(s.llo(v) + i)];
        u32 r = idx.isa()[pos + dp];
        check_contract(first || r > prev, "build_group_lcp: set ranks not increasing");
        prev = r;
        first = false;
        if (stores_all_ranks())
          d_ranks_[out + i] = r;
        else if (size > params_.c_d && i % params_.c_d == 0)
          d_ranks_[out + i / params_.c_d] = r;
      }
    }

    // Chain depths: all of them at full, every spacing-th otherwise; plus
    // explicit entries for nodes whose depth is not derivable from leaves.
    chain_depths_.assign(hld_.chains().size(), {});
    for (u32 cid = 0; cid < hld_.chains().size(); ++cid) {
      const auto& ch = hld_.chains()[cid];
      if (params_.level == SamplingLevel::full) {
        chain_depths_[cid].reserve(ch.size());
        for (u32 v : ch) chain_depths_[cid].push_back(s.sdepth(v));
      } else {
        for (u32 p = 0; p < ch.size(); p += depth_spacing())
          chain_depths_[cid].push_back(s.sdepth(ch[p]));
      }
    }
    explicit_depth_.assign(k, kNone);
    if (params_.level != SamplingLevel::full) {
      explicit_depth_[Subtree::root()] = s.sdepth(Subtree::root());
      for (u32 v = 0; v < k; ++v)
        if (!s.is_leaf(v) && s.child_count(v) == 1) explicit_depth_[v] = s.sdepth(v);
    }
  }
};

/// Factory matching the build contract wording.
inline GroupLcp build_group_lcp(const TextIndex& idx, const SuffixTree& t,
                                std::shared_ptr<const Subtree> sub, GroupLcpParams params,
                                TopologyCache* cache = nullptr) {
  return GroupLcp::build(idx, t, std::move(sub), params, cache);
}

}  // namespace wcidx
