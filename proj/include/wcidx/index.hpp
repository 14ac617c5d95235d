#pragma once
/// One-stop index bundle: text arrays, suffix tree, heavy paths, the marked
/// partition with its local LCP structures, and the wildcard tries.

#include <algorithm>
#include <memory>
#include <string>
#include <string_view>

#include "wcidx/common.hpp"
#include "wcidx/group_lcp.hpp"
#include "wcidx/heavy_path.hpp"
#include "wcidx/matcher.hpp"
#include "wcidx/partition.hpp"
#include "wcidx/suffix_tree.hpp"
#include "wcidx/text_index.hpp"
#include "wcidx/wildcard_tree.hpp"

namespace wcidx {

/// Marking spacing that keeps the auxiliary structures near-linear:
/// sigma * ceil(log2 n)^2, at least 2.
inline u32 default_tau(u32 n, u32 sigma) {
  u64 l = ceil_log2(std::max<u64>(2, n));
  u64 tau = static_cast<u64>(sigma) * l * l;
  return static_cast<u32>(std::max<u64>(2, std::min<u64>(tau, 0xFFFFFFFFull)));
}

/// Alphabet-group width: ceil(log2 log2 n), at least 2.
inline u32 default_lambda(u32 n) {
  u64 ll = ceil_log2(std::max<u64>(2, ceil_log2(std::max<u64>(2, n))));
  return static_cast<u32>(std::max<u64>(2, ll));
}

struct IndexParams {
  u32 tau = 0;     ///< marking spacing; 0 chooses the default for (n, sigma)
  u32 lambda = 0;  ///< alphabet-group width; 0 chooses the default for n
  SamplingLevel level = SamplingLevel::full;
  u32 c_d = 0;         ///< set-element sampling step; 0 = default
  u32 c_h = 0;         ///< chain-depth sampling step; 0 = default
  u32 micro_block = 0; ///< topology-codec block size; 0 = default
  u32 sa_step = 1;     ///< suffix-array sampling step
  std::string alphabet = "infer";  ///< "infer" or the explicit byte set

  bool operator==(const IndexParams&) const = default;
};

/// The bundle is address-pinned: the per-group structures keep pointers to
/// the sibling `text` member, so the aggregate lives behind a unique_ptr and
/// never moves once built.
struct WildcardIndex {
  IndexParams params;  ///< with tau/lambda/sampling knobs resolved
  TextIndex text;
  SuffixTree tree;
  HeavyPaths paths;
  PartitionIndex partition;
  WildcardLayer wildcards;

  WildcardIndex() = default;
  WildcardIndex(const WildcardIndex&) = delete;
  WildcardIndex& operator=(const WildcardIndex&) = delete;
};

inline GroupLcpParams resolve_group_params(const IndexParams& ps, u32 n) {
  GroupLcpParams gp = default_group_lcp_params(n, ps.level);
  if (ps.c_d != 0) gp.c_d = ps.c_d;
  if (ps.c_h != 0) gp.c_h = ps.c_h;
  if (ps.micro_block != 0) gp.micro_block = ps.micro_block;
  return gp;
}

inline std::unique_ptr<WildcardIndex> build_index(std::string_view raw, IndexParams ps = {}) {
  auto ixp = std::make_unique<WildcardIndex>();
  WildcardIndex& ix = *ixp;
  ix.text = TextIndex::build(raw, ps.alphabet, SaSampling{ps.sa_step});
  const u32 n = ix.text.n();
  if (ps.tau == 0) ps.tau = default_tau(n, ix.text.sigma());
  if (ps.lambda == 0) ps.lambda = default_lambda(n);
  GroupLcpParams gp = resolve_group_params(ps, n);
  ps.c_d = gp.c_d;
  ps.c_h = gp.c_h;
  ps.micro_block = gp.micro_block;
  ix.params = ps;
  ix.tree = SuffixTree::build(ix.text);
  ix.paths = HeavyPaths::build(ix.tree);
  ix.partition = PartitionIndex::build(ix.text, ix.tree, ps.tau, gp);
  ix.wildcards = WildcardLayer::build(ix.text, ix.tree, ix.paths, ix.partition, ps.lambda);
  return ixp;
}

inline MatchResult run_query(const WildcardIndex& ix, const WildcardPattern& p, Engine e) {
  if (e == Engine::baseline) return wildcard_match_baseline(ix.text, ix.tree, ix.partition, p);
  return wildcard_match_accelerated(ix.text, ix.tree, ix.paths, ix.partition, ix.wildcards, p);
}

inline MatchResult run_query(const WildcardIndex& ix, std::string_view pattern, Engine e) {
  return run_query(ix, parse_wildcard_pattern(pattern, ix.text.alphabet()), e);
}

}  // namespace wcidx
