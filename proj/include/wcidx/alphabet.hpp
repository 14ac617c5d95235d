#pragma once
/// \file alphabet.hpp
/// Byte-to-symbol mapping. The indexed alphabet is either inferred from the
/// distinct bytes of the input or given explicitly; symbols are assigned in
/// ascending byte order starting at 1, with 0 reserved for the terminator.

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "wcidx/common.hpp"

namespace wcidx {

struct Alphabet {
  u32 sigma = 0;                     ///< number of user symbols (terminator excluded)
  std::array<Symbol, 256> code{};    ///< byte -> symbol, kUnmatchable when absent
  std::vector<unsigned char> bytes;  ///< symbol-1 -> byte, ascending

  Alphabet() { code.fill(kUnmatchable); }

  /// Symbol for a byte, or kUnmatchable when the byte is outside the alphabet.
  Symbol encode(unsigned char b) const { return code[b]; }

  /// Byte for a user symbol (1..sigma).
  unsigned char decode(Symbol s) const {
    check_contract(s >= 1 && s <= sigma, "alphabet: symbol out of range");
    return bytes[s - 1];
  }
};

/// Builds the alphabet for a text. `spec` is "infer" (use the distinct bytes
/// of the text) or an explicit string whose distinct bytes form the alphabet.
/// Errors: empty text; a text byte outside an explicit alphabet (the message
/// names the first offending offset).
inline Alphabet make_alphabet(std::string_view text, std::string_view spec) {
  check_usage(!text.empty(), "text must be non-empty");
  std::array<bool, 256> present{};
  if (spec == "infer") {
    for (unsigned char b : text) present[b] = true;
  } else {
    check_usage(!spec.empty(), "explicit alphabet must be non-empty");
    for (unsigned char b : spec) present[b] = true;
  }
  Alphabet a;
  for (u32 b = 0; b < 256; ++b) {
    if (present[b]) {
      a.bytes.push_back(static_cast<unsigned char>(b));
      a.code[b] = static_cast<Symbol>(a.bytes.size());
    }
  }
  a.sigma = static_cast<u32>(a.bytes.size());
  if (spec != "infer") {
    for (std::size_t i = 0; i < text.size(); ++i) {
      unsigned char b = static_cast<unsigned char>(text[i]);
      if (a.code[b] == kUnmatchable) {
        throw UsageError("text byte at offset " + std::to_string(i) +
                         " is outside the given alphabet");
      }
    }
  }
  return a;
}

/// Encodes a text and appends the terminator symbol.
inline std::vector<Symbol> encode_text(std::string_view text, const Alphabet& a) {
  std::vector<Symbol> out;
  out.reserve(text.size() + 1);
  for (unsigned char b : text) out.push_back(a.code[b]);
  out.push_back(kSentinel);
  return out;
}

}  // namespace wcidx
