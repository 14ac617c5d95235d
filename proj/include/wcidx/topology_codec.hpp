#pragma once
/// \file topology_codec.hpp
/// Shape-only encoding of a local tree as a balanced-parenthesis bit
/// string, with explicit heavy-chain-leaf entries for every micro-block
/// boundary node. Heavy-path questions are answered from the bits through
/// a decoder whose results are memoized per distinct topology, so each
/// shape is analysed once per build no matter how many groups share it.

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/suffix_tree.hpp"

namespace wcidx {

struct TopologyCode {
  u32 node_count = 0;
  u32 micro_block = 1;
  std::vector<u64> bits;           // 2*node_count balanced parens, 1 = open
  std::vector<u32> boundary_leaf;  // chain leaf (local id) for ids 0, mb, 2mb, ...
  std::vector<u32> members;        // global node ids in local-id order

  bool bit(u32 i) const { return (bits[i >> 6] >> (i & 63)) & 1; }
  std::string key() const {
    std::string s;
    s.reserve(bits.size() * 8);
    for (u64 w : bits)
      for (int b = 0; b < 8; ++b) s.push_back(static_cast<char>((w >> (8 * b)) & 0xFF));
    s.push_back(static_cast<char>(node_count & 0xFF));
    s.push_back(static_cast<char>((node_count >> 8) & 0xFF));
    s.push_back(static_cast<char>((node_count >> 16) & 0xFF));
    return s;
  }
};

/// Pure-shape view of a local tree: everything derivable from the parens.
struct DecodedTopology {
  u32 k = 0;
  std::vector<u32> parent, head, sib, end, llo, lhi;
  std::vector<u32> leaf_index, leaf_local;           // node <-> leaf slot
  std::vector<u32> heavy, chain_head, chain_id, pos_in_chain;
  std::vector<std::vector<u32>> chains;

  bool is_leaf(u32 v) const { return head[v] == kNone; }
  u32 chain_leaf(u32 v) const { return chains[chain_id[v]].back(); }
  u32 leaves_below(u32 v) const { return lhi[v] - llo[v]; }
  u32 child_count(u32 v) const {
    u32 c = 0;
    for (u32 w = head[v]; w != kNone; w = sib[w]) ++c;
    return c;
  }
};

inline DecodedTopology decode_topology(const TopologyCode& code) {
  DecodedTopology d;
  const u32 k = code.node_count;
  d.k = k;
  d.parent.assign(k, kNone);
  d.head.assign(k, kNone);
  d.sib.assign(k, kNone);
  std::vector<u32> tail(k, kNone);
  std::vector<u32> stack;
  u32 next = 0;
  for (u32 i = 0; i < 2 * k; ++i) {
    if (code.bit(i)) {
      u32 v = next++;
      if (!stack.empty()) {
        u32 p = stack.back();
        d.parent[v] = p;
        if (d.head[p] == kNone)
          d.head[p] = v;
        else
          d.sib[tail[p]] = v;
        tail[p] = v;
      }
      stack.push_back(v);
    } else {
      check_contract(!stack.empty(), "topology decode: unbalanced bits");
      stack.pop_back();
    }
  }
  check_contract(next == k && stack.empty(), "topology decode: malformed bits");

  d.leaf_index.assign(k, kNone);
  u32 slot = 0;
  for (u32 v = 0; v < k; ++v)
    if (d.head[v] == kNone) d.leaf_index[v] = slot++;
  d.leaf_local.resize(slot);
  for (u32 v = 0; v < k; ++v)
    if (d.leaf_index[v] != kNone) d.leaf_local[d.leaf_index[v]] = v;

  d.llo.assign(k, kNone);
  d.lhi.assign(k, 0);
  d.end.assign(k, 0);
  for (u32 v = k; v-- > 0;) {
    d.end[v] = v + 1;
    if (d.leaf_index[v] != kNone) {
      d.llo[v] = d.leaf_index[v];
      d.lhi[v] = d.leaf_index[v] + 1;
    }
    u32 last = kNone;
    for (u32 c = d.head[v]; c != kNone; c = d.sib[c]) last = c;
    if (last != kNone) {
      d.end[v] = d.end[last];
      d.llo[v] = d.llo[d.head[v]];
      d.lhi[v] = d.lhi[last];
    }
  }

  d.heavy.assign(k, kNone);
  for (u32 v = 0; v < k; ++v) {
    u32 best = kNone;
    for (u32 c = d.head[v]; c != kNone; c = d.sib[c])
      if (best == kNone || d.leaves_below(c) > d.leaves_below(best)) best = c;
    d.heavy[v] = best;
  }
  d.chain_head.assign(k, kNone);
  d.chain_id.assign(k, kNone);
  d.pos_in_chain.assign(k, 0);
  for (u32 v = 0; v < k; ++v) {
    if (v != 0 && d.heavy[d.parent[v]] == v) continue;
    u32 id = static_cast<u32>(d.chains.size());
    d.chains.emplace_back();
    for (u32 x = v; x != kNone; x = d.heavy[x]) {
      d.chain_head[x] = v;
      d.chain_id[x] = id;
      d.pos_in_chain[x] = static_cast<u32>(d.chains[id].size());
      d.chains[id].push_back(x);
    }
  }
  return d;
}

/// Memoizes decoded topologies per distinct bit string.
class TopologyCache {
 public:
  std::shared_ptr<const DecodedTopology> decode(const TopologyCode& code) {
    std::string key = code.key();
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
    auto d = std::make_shared<DecodedTopology>(decode_topology(code));
    memo_.emplace(std::move(key), d);
    return d;
  }
  u64 hits() const { return hits_; }
  u64 misses() const { return misses_; }

 private:
  std::unordered_map<std::string, std::shared_ptr<const DecodedTopology>> memo_;
  u64 hits_ = 0, misses_ = 0;
};

/// Encodes the local tree over `members` (ascending preorder, first node an
/// ancestor of the rest). `max_nodes` of 0 means unbounded; otherwise a
/// larger group is a contract violation.
inline TopologyCode encode_group_topology(const SuffixTree& t, std::span<const u32> members,
                                          u32 micro_block, u32 max_nodes = 0) {
  check_contract(!members.empty(), "encode_group_topology: empty group");
  check_contract(micro_block >= 1, "encode_group_topology: micro_block must be positive");
  check_contract(max_nodes == 0 || members.size() <= max_nodes,
                 "encode_group_topology: group exceeds the configured size bound");
  const u32 k = static_cast<u32>(members.size());
  TopologyCode code;
  code.node_count = k;
  code.micro_block = micro_block;
  code.members.assign(members.begin(), members.end());

  // Local parents via the nearest-member-ancestor stack.
  std::vector<u32> parent(k, kNone), head(k, kNone), sib(k, kNone), tail(k, kNone);
  std::vector<u32> stack;
  for (u32 i = 0; i < k; ++i) {
    if (i > 0)
      check_contract(members[i - 1] < members[i], "encode_group_topology: members not in preorder");
    while (!stack.empty() && !t.in_subtree(members[stack.back()], members[i])) stack.pop_back();
    if (i > 0) {
      check_contract(!stack.empty(), "encode_group_topology: first member must contain the rest");
      u32 p = stack.back();
      parent[i] = p;
      if (head[p] == kNone)
        head[p] = i;
      else
        sib[tail[p]] = i;
      tail[p] = i;
    }
    stack.push_back(i);
  }

  code.bits.assign((2 * k + 63) / 64, 0);
  u32 bit = 0;
  auto emit = [&](bool open) {
    if (open) code.bits[bit >> 6] |= u64{1} << (bit & 63);
    ++bit;
  };
  // Iterative DFS in child order; second visit closes the paren.
  std::vector<std::pair<u32, bool>> dfs;
  dfs.emplace_back(0, false);
  while (!dfs.empty()) {
    auto [v, closing] = dfs.back();
    dfs.pop_back();
    if (closing) {
      emit(false);
      continue;
    }
    emit(true);
    dfs.emplace_back(v, true);
    std::vector<u32> cs;
    for (u32 c = head[v]; c != kNone; c = sib[c]) cs.push_back(c);
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) dfs.emplace_back(*it, false);
  }

  DecodedTopology d = decode_topology(code);
  for (u32 v = 0; v < k; v += micro_block) code.boundary_leaf.push_back(d.chain_leaf(v));
  return code;
}

/// Heavy-path answer for a member node, straight from the encoding: the
/// head of its chain and the chain's terminating leaf (global node ids).
/// Block-boundary nodes read their leaf from the explicit entries.
inline std::pair<u32, u32> heavy_info(const TopologyCode& code, TopologyCache& cache, u32 node) {
  auto it = std::lower_bound(code.members.begin(), code.members.end(), node);
  check_contract(it != code.members.end() && *it == node, "heavy_info: node is not in the group");
  u32 v = static_cast<u32>(it - code.members.begin());
  auto d = cache.decode(code);
  u32 leaf = (v % code.micro_block == 0) ? code.boundary_leaf[v / code.micro_block]
                                         : d->chain_leaf(v);
  return {code.members[d->chain_head[v]], code.members[leaf]};
}

}  // namespace wcidx
