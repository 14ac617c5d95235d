#pragma once
/// Reference matchers the index engines are cross-checked against.  Both are
/// deliberately simple and independent of the tree machinery: a linear scan,
/// and a full expansion of the wildcards into concrete patterns searched
/// exactly in the suffix array.

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/text_index.hpp"
#include "wcidx/wildcard_pattern.hpp"

namespace wcidx {

namespace detail {

/// Pattern flattened to one symbol per position, 0 standing for a wildcard
/// (the terminator never appears in literals, so 0 is free for that role).
inline std::vector<Symbol> flatten_pattern(const WildcardPattern& p) {
  std::vector<Symbol> flat;
  flat.reserve(p.length());
  for (u32 i = 0; i < p.literals.size(); ++i) {
    for (Symbol s : p.literals[i]) flat.push_back(s);
    if (i < p.gaps.size())
      for (u32 k = 0; k < p.gaps[i]; ++k) flat.push_back(0);
  }
  return flat;
}

}  // namespace detail

/// Position-by-position scan, O(n * pattern length).  A wildcard matches any
/// real symbol but never the terminator, so matches fit inside the raw text.
inline std::vector<u32> oracle_scan(const TextIndex& idx, const WildcardPattern& p) {
  std::vector<u32> out;
  if (p.unmatchable) return out;
  const u32 raw = idx.n() - 1;
  const u32 len = p.length();
  if (len == 0) {
    for (u32 i = 0; i < raw; ++i) out.push_back(i);
    return out;
  }
  if (len > raw) return out;
  std::vector<Symbol> flat = detail::flatten_pattern(p);
  std::span<const Symbol> text = idx.text();
  for (u32 start = 0; start + len <= raw; ++start) {
    bool ok = true;
    for (u32 i = 0; i < len && ok; ++i) {
      Symbol c = text[start + i];
      ok = flat[i] == 0 ? c != kSentinel : c == flat[i];
    }
    if (ok) out.push_back(start);
  }
  return out;
}

/// Expand every wildcard into each alphabet symbol and search the resulting
/// concrete patterns exactly in the suffix array.  Throws BudgetError when
/// sigma^g exceeds `budget` (the message names the required count).
inline std::vector<u32> oracle_enumerate(const TextIndex& idx, const WildcardPattern& p,
                                         u64 budget = 1'000'000) {
  std::vector<u32> out;
  if (p.unmatchable) return out;
  const u32 n = idx.n();
  const u32 raw = n - 1;
  const u32 len = p.length();
  if (len == 0) {
    for (u32 i = 0; i < raw; ++i) out.push_back(i);
    return out;
  }

  const u32 sigma = idx.sigma();
  std::vector<Symbol> flat = detail::flatten_pattern(p);
  std::vector<u32> wpos;
  for (u32 i = 0; i < len; ++i)
    if (flat[i] == 0) wpos.push_back(i);

  u64 required = 1;
  for (u32 i = 0; i < wpos.size(); ++i) {
    required *= sigma;
    if (required > budget)
      throw BudgetError("oracle_enumerate: expansion needs " + std::to_string(required) +
                        "+ concrete patterns, budget is " + std::to_string(budget));
  }
  if (sigma == 0) return out;  // wildcards but nothing to substitute

  std::span<const Symbol> text = idx.text();
  std::span<const u32> sa = idx.sa();
  auto prefix_cmp = [&](u32 pos) -> int {  // suffix at pos vs the concrete pattern
    for (u32 i = 0; i < len; ++i) {
      if (pos + i >= n) return -1;
      if (text[pos + i] < flat[i]) return -1;
      if (text[pos + i] > flat[i]) return 1;
    }
    return 0;
  };

  // Odometer over the wildcard assignments.
  std::vector<Symbol> assign(wpos.size(), 1);
  for (;;) {
    for (u32 i = 0; i < wpos.size(); ++i) flat[wpos[i]] = assign[i];
    u32 lo = 0, hi = n;
    while (lo < hi) {  // first rank whose suffix is not below the pattern
      u32 mid = lo + (hi - lo) / 2;
      if (prefix_cmp(sa[mid]) < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    u32 lo2 = lo, hi2 = n;
    while (lo2 < hi2) {  // first rank whose suffix is above the pattern
      u32 mid = lo2 + (hi2 - lo2) / 2;
      if (prefix_cmp(sa[mid]) == 0)
        lo2 = mid + 1;
      else
        hi2 = mid;
    }
    for (u32 r = lo; r < lo2; ++r) out.push_back(sa[r]);

    u32 i = 0;
    for (; i < assign.size(); ++i) {
      if (assign[i] < sigma) {
        ++assign[i];
        break;
      }
      assign[i] = 1;
    }
    if (i == assign.size()) break;
  }

  std::sort(out.begin(), out.end());
  for (u32 i = 1; i < out.size(); ++i)
    check_contract(out[i - 1] != out[i], "oracle_enumerate: duplicate position");
  return out;
}

}  // namespace wcidx
