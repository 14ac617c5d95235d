#pragma once
/// \file pattern_handle.hpp
/// Pattern preprocessing against a TextIndex. For every suffix P[j..] of a
/// query string the handle stores its insertion rank among the text suffixes
/// and the lcp values against its two rank neighbours; together with the lcp
/// array this answers lcp(P[j..], any text suffix) in constant time.

#include <span>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/text_index.hpp"

namespace wcidx {

struct PatternHandle {
  std::vector<Symbol> pat;
  /// r[j] = number of text suffixes strictly smaller than pat[j..]; r[m] = 0.
  std::vector<u32> r;
  /// lcp(pat[j..], suffix of rank r[j]-1); 0 when r[j] == 0.
  std::vector<u32> lcp_left;
  /// lcp(pat[j..], suffix of rank r[j]); 0 when r[j] == n.
  std::vector<u32> lcp_right;

  u32 size() const { return static_cast<u32>(pat.size()); }

  /// Length of the longest prefix of pat[j..] occurring in the text.
  u32 depth(u32 j) const { return std::max(lcp_left[j], lcp_right[j]); }

  /// Rank of a text suffix witnessing depth(j); kNone when depth(j) == 0
  /// carries no witness requirement (either neighbour works, prefer right).
  u32 witness(u32 j, u32 n) const {
    if (lcp_right[j] >= lcp_left[j] && r[j] < n) return r[j];
    return r[j] - 1;
  }
};

/// lcp(pat[j..], text suffix of rank t). Constant time: the query rank is
/// compared against the stored neighbour of P[j..] and bridged with one
/// range-minimum probe on the lcp array.
inline u32 lcp_pattern_suffix(const TextIndex& idx, const PatternHandle& h, u32 j, u32 t,
                              QueryCounters* qc = nullptr) {
  check_contract(j < h.r.size(), "lcp_pattern_suffix: j out of range");
  check_contract(t < idx.n(), "lcp_pattern_suffix: rank out of range");
  if (qc) ++qc->std_lcp_calls;
  u32 rj = h.r[j];
  if (t < rj) {
    if (t == rj - 1) return h.lcp_left[j];
    return std::min(h.lcp_left[j], idx.lcp_suffixes(t, rj - 1, qc));
  }
  if (t == rj) return h.lcp_right[j];
  return std::min(h.lcp_right[j], idx.lcp_suffixes(rj, t, qc));
}

/// Preprocesses a query string (no wildcards; the terminator symbol is
/// allowed so text substrings ending at the terminator stay queryable).
/// Built by one backward scan: the rank of P[j..] is located inside the
/// first-symbol interval by binary search over psi against the rank of
/// P[j+1..], and neighbour lcps extend the level-(j+1) answers by one.
inline PatternHandle preprocess_pattern(const TextIndex& idx, std::span<const Symbol> pat) {
  const u32 n = idx.n();
  const u32 m = static_cast<u32>(pat.size());
  for (Symbol s : pat)
    check_contract(s <= idx.sigma(), "preprocess_pattern: symbol outside the alphabet");

  PatternHandle h;
  h.pat.assign(pat.begin(), pat.end());
  h.r.assign(m + 1, 0);
  h.lcp_left.assign(m + 1, 0);
  h.lcp_right.assign(m + 1, 0);
  // Empty suffix: smaller than every suffix, shares nothing with sa[0].
  h.r[m] = 0;

  std::span<const u32> psi1 = idx.psi1();
  std::span<const u32> sa = idx.sa();

  // lcp(pat[j..], suffix of rank q) using only level j+1 data.
  auto cross_next = [&](u32 j1, u32 q) -> u32 {
    u32 rq = h.r[j1];
    if (q < rq) {
      if (q == rq - 1) return h.lcp_left[j1];
      return std::min(h.lcp_left[j1], idx.lcp_suffixes(q, rq - 1));
    }
    if (q == rq) return h.lcp_right[j1];
    return std::min(h.lcp_right[j1], idx.lcp_suffixes(rq, q));
  };
  // 1 + lcp(pat[j+1..], tail of suffix at rank a) for a suffix whose first
  // symbol matches pat[j].
  auto extend = [&](u32 j, u32 a) -> u32 {
    if (sa[a] == n - 1) return 1;  // terminator suffix: nothing beyond
    return 1 + cross_next(j + 1, psi1[a]);
  };

  for (u32 j = m; j-- > 0;) {
    Symbol c = pat[j];
    auto [lo, hi] = idx.symbol_interval(c);
    // Among suffixes starting with c, count tails smaller than pat[j+1..]:
    // psi is increasing on the interval, so binary search for r[j+1].
    u32 cnt;
    {
      u32 target = h.r[j + 1];
      u32 a = lo, b = hi;
      while (a < b) {
        u32 mid = (a + b) / 2;
        u32 p = psi1[mid];
        // The terminator suffix (psi undefined) has an empty tail, smaller
        // than any non-empty pattern tail.
        bool smaller = (p == kNone) ? (j + 1 < m) : (p < target);
        if (smaller)
          a = mid + 1;
        else
          b = mid;
      }
      cnt = a - lo;
    }
    h.r[j] = lo + cnt;
    if (h.r[j] > 0) {
      u32 a = h.r[j] - 1;
      h.lcp_left[j] = (idx.at(sa[a]) == c) ? extend(j, a) : 0;
    }
    if (h.r[j] < n) {
      u32 b = h.r[j];
      h.lcp_right[j] = (idx.at(sa[b]) == c) ? extend(j, b) : 0;
    }
  }
  return h;
}

}  // namespace wcidx
