#pragma once
/// Size accounting and counter reporting.  The space numbers are a stated
/// model over structure counts (bits per node/element by sampling level),
/// meant for comparing configurations, not a malloc audit.

#include <cstdio>
#include <string>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/group_lcp.hpp"
#include "wcidx/index.hpp"

namespace wcidx {

struct SpaceStats {
  u32 n = 0;
  u32 sigma = 0;
  u32 tau = 0;
  u32 lambda = 0;
  std::string level;
  u32 tree_nodes = 0;
  u32 marked_leaves = 0;
  u32 marked_internal = 0;
  u32 groups = 0;
  u32 max_group_nodes = 0;
  u32 tm_nodes = 0;
  u64 group_nodes_total = 0;
  u64 set_elements = 0;
  u32 tries = 0;
  u64 trie_nodes = 0;
  u64 trie_entries = 0;
  u64 trie_pointers = 0;
  u64 aux_bits_model = 0;

  double bits_per_symbol() const { return n == 0 ? 0.0 : static_cast<double>(aux_bits_model) / n; }

  std::vector<std::pair<std::string, std::string>> lines() const {
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&](const char* k, u64 v) { out.emplace_back(k, std::to_string(v)); };
    add("n", n);
    add("sigma", sigma);
    add("tau", tau);
    add("lambda", lambda);
    out.emplace_back("sampling", level);
    add("tree_nodes", tree_nodes);
    add("marked_leaves", marked_leaves);
    add("marked_internal", marked_internal);
    add("groups", groups);
    add("max_group_nodes", max_group_nodes);
    add("tm_nodes", tm_nodes);
    add("group_nodes_total", group_nodes_total);
    add("set_elements", set_elements);
    add("wildcard_tries", tries);
    add("wildcard_trie_nodes", trie_nodes);
    add("wildcard_trie_entries", trie_entries);
    add("wildcard_trie_pointers", trie_pointers);
    add("aux_bits_model", aux_bits_model);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", bits_per_symbol());
    out.emplace_back("aux_bits_per_symbol", buf);
    return out;
  }
};

/// Model: 4 bits per encoded topology node; 96 bits per fully materialised
/// node (parent, depth, leaf links); 32 bits per stored rank, sampled depth
/// or set element; 64 bits per trie node and 96 per pointer; 1 bit per
/// suffix-tree node for the marks; 48 bits per router entry.
inline SpaceStats space_stats(const WildcardIndex& ix) {
  SpaceStats s;
  s.n = ix.text.n();
  s.sigma = ix.text.sigma();
  s.tau = ix.params.tau;
  s.lambda = ix.params.lambda;
  s.level = to_string(ix.params.level);
  s.tree_nodes = ix.tree.node_count();
  const auto& mk = ix.partition.marking();
  s.marked_leaves = mk.marked_leaves;
  s.marked_internal = mk.marked_internals;
  s.groups = static_cast<u32>(ix.partition.groups().size());
  s.max_group_nodes = ix.partition.max_group_nodes();
  s.tm_nodes = ix.partition.tm().size();
  u64 bits = s.tree_nodes;  // mark bitvector
  bits += static_cast<u64>(s.marked_internal) * 48;  // routers (amortised)
  bits += static_cast<u64>(s.tm_nodes) * 96;         // marked tree, full level
  const GroupLcpParams gp = resolve_group_params(ix.params, s.n);
  auto structure_bits = [&](u32 nodes, u32 leaves, u64 elems) -> u64 {
    switch (gp.level) {
      case SamplingLevel::full:
        return static_cast<u64>(nodes) * 96 + static_cast<u64>(leaves) * 32 + elems * 32;
      case SamplingLevel::compact:
        return static_cast<u64>(nodes) * 4 + 64 +
               (static_cast<u64>(nodes) / gp.micro_block + 1) * 32 +
               static_cast<u64>(leaves) * 32 + elems * 32;
      case SamplingLevel::sampled:
        return static_cast<u64>(nodes) * 4 + 64 + (static_cast<u64>(nodes) / gp.c_h + 1) * 32 +
               static_cast<u64>(leaves) * 32 + (elems / gp.c_d + 1) * 32;
    }
    return 0;
  };
  for (const auto& g : ix.partition.groups()) {
    s.group_nodes_total += g.sub_left->size();
    s.set_elements += g.lcp_left.set_elements_total();
    bits += structure_bits(g.sub_left->size(), g.sub_left->leaf_count(),
                           g.lcp_left.set_elements_total());
    if (g.spec.pair) {
      s.group_nodes_total += g.sub_right->size();
      s.set_elements += g.lcp_right.set_elements_total();
      bits += structure_bits(g.sub_right->size(), g.sub_right->leaf_count(),
                             g.lcp_right.set_elements_total());
    }
  }
  s.tries = static_cast<u32>(ix.wildcards.tries().size());
  s.trie_nodes = ix.wildcards.total_nodes();
  s.trie_entries = ix.wildcards.total_entries();
  s.trie_pointers = ix.wildcards.total_pointers();
  bits += s.trie_nodes * 64 + s.trie_pointers * 96 + s.trie_entries * 32;
  s.aux_bits_model = bits;
  return s;
}

inline std::vector<std::pair<std::string, std::string>> counter_lines(const QueryCounters& c) {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&](const char* k, u64 v) { out.emplace_back(k, std::to_string(v)); };
  add("events", c.events);
  add("std_lcp_calls", c.std_lcp_calls);
  add("wildcard_lcp_calls", c.wildcard_lcp_calls);
  add("tm_queries", c.tm_queries);
  add("group_queries", c.group_queries);
  add("pred_probes", c.pred_probes);
  add("sa_accesses", c.sa_accesses);
  add("rmq_calls", c.rmq_calls);
  add("direct_cmps", c.direct_cmps);
  add("finish_marked", c.finish_marked);
  return out;
}

}  // namespace wcidx
