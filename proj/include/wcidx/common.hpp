#pragma once
/// \file common.hpp
/// Shared primitives: integer aliases, the internal symbol type, error
/// hierarchy, and the per-query instrumentation counters that every query
/// path threads through explicitly (no shared mutable state).

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wcidx {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Internal text symbol. 0 is the terminator appended to every text; user
/// symbols are 1..sigma in byte order. kUnmatchable marks a pattern byte
/// outside the indexed alphabet: it compares unequal to every text symbol.
using Symbol = std::uint16_t;

inline constexpr u32 kNone = 0xFFFFFFFFu;
inline constexpr Symbol kSentinel = 0;
inline constexpr Symbol kUnmatchable = 0xFFFE;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user-facing parameters or malformed input data.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An API precondition was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Damaged or incompatible index file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An enumeration budget would be exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

inline void check_contract(bool cond, const char* msg) {
  if (!cond) throw ContractError(msg);
}

inline void check_usage(bool cond, const std::string& msg) {
  if (!cond) throw UsageError(msg);
}

/// Per-query accumulators. Exact and deterministic for a given index and
/// query; callers pass a pointer (may be null) so concurrent queries never
/// share counter state.
struct QueryCounters {
  /// Accounting unit asserted against the sigma^g budget: one per terminal
  /// frontier outcome, i.e. a concrete assignment of the wildcards consumed
  /// so far whose descent either dies or completes the pattern.  Outcomes
  /// form an antichain of assignment prefixes, so a pattern with g wildcards
  /// produces at most sigma^g of them (exactly 1 when g = 0).
  u64 events = 0;
  u64 std_lcp_calls = 0;       ///< full-tree unrooted LCP calls (physical)
  u64 wildcard_lcp_calls = 0;  ///< batched per-symbol LCP calls (physical)
  u64 tm_queries = 0;          ///< descents over the marked tree
  u64 group_queries = 0;       ///< descents over small-subtree structures
  u64 pred_probes = 0;         ///< predecessor structure probes
  u64 sa_accesses = 0;         ///< suffix-array / inverse / psi lookups
  u64 rmq_calls = 0;           ///< range-minimum probes on the lcp array
  u64 direct_cmps = 0;         ///< element recomputations in sampled refinement
  u64 finish_marked = 0;       ///< wildcard-tree finishes that crossed a marked node

  void add(const QueryCounters& o) {
    events += o.events;
    std_lcp_calls += o.std_lcp_calls;
    wildcard_lcp_calls += o.wildcard_lcp_calls;
    tm_queries += o.tm_queries;
    group_queries += o.group_queries;
    pred_probes += o.pred_probes;
    sa_accesses += o.sa_accesses;
    rmq_calls += o.rmq_calls;
    direct_cmps += o.direct_cmps;
    finish_marked += o.finish_marked;
  }

  bool operator==(const QueryCounters&) const = default;
};

/// ceil(log2(x)) for x >= 1.
inline u32 ceil_log2(u64 x) {
  u32 r = 0;
  u64 v = 1;
  while (v < x) {
    v <<= 1;
    ++r;
  }
  return r;
}

/// floor(log2(x)) for x >= 1.
inline u32 floor_log2(u64 x) {
  u32 r = 0;
  while (x >>= 1) ++r;
  return r;
}

}  // namespace wcidx
