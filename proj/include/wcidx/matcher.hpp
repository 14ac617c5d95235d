#pragma once
/// Wildcard pattern matching over the index.
///
/// Both engines run the same frontier driver: a frontier item is a text
/// location plus the pattern progress (next literal piece, wildcards still to
/// consume before it).  Wildcards branch at nodes and slide one symbol along
/// edges; literals advance by unrooted LCP descents.  The engines differ only
/// in how a node-located wildcard branches: the baseline enumerates children,
/// the accelerated engine batches the wildcard and its following literal
/// through the wildcard tries at marked nodes (and falls back to enumeration
/// at unmarked ones).
///
/// `events` counts terminal outcomes: frontier classes that either die or
/// complete the pattern.  Distinct outcomes carry distinct assignments of the
/// wildcard symbols consumed so far and no outcome is an ancestor of another,
/// so the total never exceeds sigma^g for a pattern with g wildcards (and is
/// exactly 1 when g = 0).  Individual descent calls are tallied separately in
/// the other counter fields.

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
#include "wcidx/wildcard_pattern.hpp"
#include "wcidx/wildcard_tree.hpp"

namespace wcidx {

enum class Engine { baseline, accelerated };

struct MatchResult {
  std::vector<u32> positions;  ///< text positions of all occurrences, ascending
  std::vector<Location> loci;  ///< loci of the full matches, deepest node first
  QueryCounters counters;

  bool operator==(const MatchResult&) const = default;
};

/// Expand full-match loci into text positions: the leaves below each locus
/// are its occurrences.  Distinct loci of equal string depth cover disjoint
/// rank ranges, so duplicates are impossible.
inline std::vector<u32> report_occurrences(const TextIndex& idx, const SuffixTree& t,
                                           const std::vector<Location>& loci,
                                           QueryCounters* qc = nullptr) {
  std::vector<u32> out;
  for (const Location& loc : loci)
    for (u32 r = t.lo(loc.v); r < t.hi(loc.v); ++r) out.push_back(idx.sa_lookup(r, qc));
  std::sort(out.begin(), out.end());
  for (u32 i = 1; i < out.size(); ++i)
    check_contract(out[i - 1] != out[i], "report_occurrences: duplicate position");
  return out;
}

namespace detail {

struct Frontier {
  Location loc;
  u32 stage;  ///< index of the next literal piece
  u32 wc;     ///< wildcards still to consume before that piece
};

inline MatchResult match_driver(const TextIndex& idx, const SuffixTree& t, const HeavyPaths* hp,
                                const PartitionIndex& part, const WildcardLayer* layer,
                                const WildcardPattern& p, Engine engine) {
  MatchResult res;
  QueryCounters& qc = res.counters;
  if (p.unmatchable) return res;

  const u32 n = idx.n();
  if (p.length() == 0) {
    // By convention the empty pattern matches at every text position.
    res.loci.push_back(Location{SuffixTree::root(), 0});
    qc.events = 1;
    for (u32 i = 0; i + 1 < n; ++i) res.positions.push_back(i);
    return res;
  }

  const u32 stages = static_cast<u32>(p.literals.size());
  std::vector<PatternHandle> handles(stages);
  for (u32 i = 0; i < stages; ++i)
    handles[i] = preprocess_pattern(idx, std::span<const Symbol>(p.literals[i]));
  const u32 last = stages - 1;

  std::vector<Frontier> queue;
  Location start{SuffixTree::root(), 0};
  if (!p.literals[0].empty()) {
    auto [loc0, m0] = unrooted_lcp_full(idx, t, part, start, handles[0], 0, &qc);
    if (m0 < handles[0].size()) {
      ++qc.events;
      return res;
    }
    start = loc0;
  }
  if (last == 0) {
    ++qc.events;
    res.loci.push_back(start);
  } else {
    queue.push_back({start, 1, p.gaps[0]});
  }

  auto complete = [&](Location loc) {
    ++qc.events;
    res.loci.push_back(loc);
  };
  auto advance = [&](Location loc, u32 stage) {
    if (stage == last)
      complete(loc);
    else
      queue.push_back({loc, stage + 1, p.gaps[stage]});
  };

  while (!queue.empty()) {
    Frontier f = queue.back();
    queue.pop_back();
    if (f.wc > 0) {
      if (f.loc.off != 0) {
        // Mid-edge: the wildcard must take the one symbol the edge offers.
        Symbol s = idx.text()[t.edge_pos(idx, f.loc.v) + f.loc.off];
        if (s == kSentinel) {
          ++qc.events;
          continue;
        }
        queue.push_back({t.canon(f.loc.v, f.loc.off + 1), f.stage, f.wc - 1});
        continue;
      }
      u32 v = f.loc.v;
      if (t.is_leaf(v)) {
        ++qc.events;
        continue;
      }
      if (engine == Engine::accelerated && part.is_marked(v)) {
        // Batch the wildcard together with the literal that follows it (an
        // empty tail when more wildcards remain).
        bool joint = (f.wc == 1);
        static const PatternHandle kEmpty{};
        const PatternHandle& hh = joint ? handles[f.stage] : kEmpty;
        auto hits = wildcard_lcp(idx, t, *hp, part, *layer, v, hh, 0, &qc);
        u32 real_children = 0;
        for (u32 c = t.first_child(v); c != kNone; c = t.next_sibling(c))
          if (t.first_symbol(idx, c) != kSentinel) ++real_children;
        qc.events += real_children - static_cast<u32>(hits.size());
        for (const WildcardHit& hit : hits) {
          if (!joint) {
            queue.push_back({hit.loc, f.stage, f.wc - 1});
          } else if (hit.full) {
            advance(hit.loc, f.stage);
          } else {
            ++qc.events;
          }
        }
        continue;
      }
      for (u32 c = t.first_child(v); c != kNone; c = t.next_sibling(c)) {
        if (t.first_symbol(idx, c) == kSentinel) continue;
        queue.push_back({t.canon(c, 1), f.stage, f.wc - 1});
      }
      continue;
    }
    // Literal resumption.
    const PatternHandle& h = handles[f.stage];
    if (h.size() == 0) {
      complete(f.loc);
      continue;
    }
    auto [loc2, m] = unrooted_lcp_full(idx, t, part, f.loc, h, 0, &qc);
    if (m == h.size())
      advance(loc2, f.stage);
    else
      ++qc.events;
  }

  res.positions = report_occurrences(idx, t, res.loci, &qc);
  return res;
}

}  // namespace detail

inline MatchResult wildcard_match_baseline(const TextIndex& idx, const SuffixTree& t,
                                           const PartitionIndex& part, const WildcardPattern& p) {
  return detail::match_driver(idx, t, nullptr, part, nullptr, p, Engine::baseline);
}

inline MatchResult wildcard_match_accelerated(const TextIndex& idx, const SuffixTree& t,
                                              const HeavyPaths& hp, const PartitionIndex& part,
                                              const WildcardLayer& layer,
                                              const WildcardPattern& p) {
  return detail::match_driver(idx, t, &hp, part, &layer, p, Engine::accelerated);
}

}  // namespace wcidx
