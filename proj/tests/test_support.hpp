#pragma once
/// Shared helpers for the test binaries: slow, obviously-correct reference
/// implementations to check the library structures against, plus small
/// conveniences for building symbol strings from byte literals.

#include <algorithm>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/pattern_handle.hpp"
#include "wcidx/suffix_tree.hpp"
#include "wcidx/text_index.hpp"
#include "wcidx/verify.hpp"

namespace wcidx::testing {

/// Suffix array by direct lexicographic sort of suffix starts.
inline std::vector<u32> naive_suffix_array(std::span<const Symbol> s) {
  std::vector<u32> sa(s.size());
  for (u32 i = 0; i < sa.size(); ++i) sa[i] = i;
  std::sort(sa.begin(), sa.end(), [&](u32 a, u32 b) {
    return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
  });
  return sa;
}

inline std::vector<u32> naive_inverse(const std::vector<u32>& sa) {
  std::vector<u32> isa(sa.size());
  for (u32 i = 0; i < sa.size(); ++i) isa[sa[i]] = i;
  return isa;
}

/// Symbol-by-symbol longest common prefix of two spans.
inline u32 naive_lcp(std::span<const Symbol> a, std::span<const Symbol> b) {
  u32 l = 0;
  while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
  return l;
}

/// lcp of the pattern tail pat[j..] against the text suffix of rank t.
inline u32 naive_pattern_suffix_lcp(const TextIndex& idx, std::span<const Symbol> pat, u32 j,
                                    u32 t) {
  std::span<const Symbol> text = idx.text();
  u32 p = idx.sa()[t];
  u32 l = 0;
  while (j + l < pat.size() && p + l < text.size() && pat[j + l] == text[p + l]) ++l;
  return l;
}

/// Encode a byte string through the index alphabet. Bytes outside the
/// alphabet become kUnmatchable, matching the pattern parser's behaviour.
inline std::vector<Symbol> encode(const TextIndex& idx, std::string_view s) {
  std::vector<Symbol> out(s.size());
  for (u32 i = 0; i < s.size(); ++i)
    out[i] = idx.alphabet().encode(static_cast<unsigned char>(s[i]));
  return out;
}

inline Symbol sym(const TextIndex& idx, char c) {
  return idx.alphabet().encode(static_cast<unsigned char>(c));
}

/// All positions where the byte string occurs in the decoded text
/// (terminator excluded), by direct scanning.
inline std::vector<u32> naive_occurrences(const TextIndex& idx, std::string_view s) {
  std::vector<Symbol> pat = encode(idx, s);
  std::span<const Symbol> text = idx.text();
  std::vector<u32> out;
  if (pat.size() > text.size()) return out;
  for (u32 start = 0; start + pat.size() <= text.size(); ++start) {
    bool ok = true;
    for (u32 i = 0; i < pat.size() && ok; ++i) ok = text[start + i] == pat[i];
    if (ok) out.push_back(start);
  }
  return out;
}

}  // namespace wcidx::testing
