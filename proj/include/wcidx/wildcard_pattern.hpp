#pragma once
/// \file wildcard_pattern.hpp
/// Pattern syntax for wildcard queries: literal bytes, `?` for a single
/// don't-care position, `?{k}` for a run of k of them, and `\?` (or any
/// `\x`) to take a byte literally. Adjacent don't-care runs merge, so a
/// parsed pattern is literals[0] gap[0] literals[1] ... gap[d-1]
/// literals[d], where only the outermost literals may be empty.

#include <string_view>
#include <vector>

#include "wcidx/alphabet.hpp"
#include "wcidx/common.hpp"

namespace wcidx {

struct WildcardPattern {
  std::vector<std::vector<Symbol>> literals;  ///< gaps.size() + 1 pieces
  std::vector<u32> gaps;                      ///< don't-care run lengths, each >= 1
  bool unmatchable = false;  ///< a literal byte was outside the alphabet

  u32 wildcard_total() const {
    u32 g = 0;
    for (u32 k : gaps) g += k;
    return g;
  }
  u32 literal_total() const {
    u32 l = 0;
    for (const auto& p : literals) l += static_cast<u32>(p.size());
    return l;
  }
  u32 length() const { return literal_total() + wildcard_total(); }
  bool empty() const { return length() == 0; }
};

/// Parses the raw pattern against an alphabet. Unknown literal bytes do
/// not fail: they flag the pattern unmatchable (such a pattern simply
/// has no occurrences). Malformed `?{...}` counts and trailing escapes
/// are usage errors.
inline WildcardPattern parse_wildcard_pattern(std::string_view raw, const Alphabet& alpha) {
  WildcardPattern p;
  p.literals.emplace_back();
  std::size_t i = 0;
  auto push_gap = [&](u32 k) {
    if (!p.literals.back().empty() || p.gaps.empty())
      p.gaps.push_back(k), p.literals.emplace_back();
    else
      p.gaps.back() += k;  // merge runs split only by an empty literal
  };
  while (i < raw.size()) {
    char c = raw[i];
    if (c == '?') {
      ++i;
      if (i < raw.size() && raw[i] == '{') {
        std::size_t close = raw.find('}', i + 1);
        check_usage(close != std::string_view::npos, "pattern: '?{' without closing '}'");
        u64 k = 0;
        bool any = false;
        for (std::size_t d = i + 1; d < close; ++d) {
          check_usage(raw[d] >= '0' && raw[d] <= '9', "pattern: non-digit inside '?{...}'");
          k = k * 10 + static_cast<u64>(raw[d] - '0');
          check_usage(k <= 0xFFFFFFFFull, "pattern: wildcard run length overflows");
          any = true;
        }
        check_usage(any && k >= 1, "pattern: wildcard run length must be at least 1");
        i = close + 1;
        push_gap(static_cast<u32>(k));
      } else {
        push_gap(1);
      }
      continue;
    }
    if (c == '\\') {
      check_usage(i + 1 < raw.size(), "pattern: trailing escape");
      c = raw[i + 1];
      i += 2;
    } else {
      ++i;
    }
    Symbol s = alpha.encode(static_cast<unsigned char>(c));
    if (s == kUnmatchable) p.unmatchable = true;
    p.literals.back().push_back(s);
  }
  return p;
}

}  // namespace wcidx
