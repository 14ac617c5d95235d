#pragma once
/// \file text_index.hpp
/// Suffix-array core over one text: suffix array, inverse, lcp array with
/// range-minimum support, the psi successor map, and optional every-s-th
/// position sampling for the public lookup path (values are then recovered
/// by walking psi from the nearest sample, emulating a compressed layout).

#include <algorithm>
#include <span>
#include <string_view>
#include <vector>

#include "wcidx/alphabet.hpp"
#include "wcidx/common.hpp"

namespace wcidx {

struct SaSampling {
  u32 step = 1;  ///< 1 = direct array lookups; s > 1 samples every s-th position
};

class TextIndex {
 public:
  /// Builds the index. `alphabet_spec` is "infer" or an explicit byte set.
  /// Suffixes are sorted by prefix doubling in O(n log^2 n).
  static TextIndex build(std::string_view raw, std::string_view alphabet_spec = "infer",
                         SaSampling sampling = {}) {
    TextIndex t;
    t.alpha_ = make_alphabet(raw, alphabet_spec);
    t.text_ = encode_text(raw, t.alpha_);
    t.sampling_ = sampling;
    check_usage(sampling.step >= 1, "sampling step must be >= 1");
    t.build_arrays();
    return t;
  }

  u32 n() const { return static_cast<u32>(text_.size()); }
  u32 sigma() const { return alpha_.sigma; }
  const Alphabet& alphabet() const { return alpha_; }
  std::span<const Symbol> text() const { return text_; }
  Symbol at(u32 pos) const { return text_[pos]; }
  const SaSampling& sampling() const { return sampling_; }

  /// Number of text suffixes whose first symbol is strictly smaller than c.
  u32 suffix_count_below(Symbol c) const { return cum_[c]; }

  /// Rank interval [lo, hi) of suffixes starting with symbol c.
  std::pair<u32, u32> symbol_interval(Symbol c) const { return {cum_[c], cum_[c + 1]}; }

  /// Position of the rank-th smallest suffix.
  u32 sa_lookup(u32 rank, QueryCounters* qc = nullptr) const {
    check_contract(rank < n(), "sa_lookup: rank out of range");
    if (sampling_.step == 1) {
      bump(qc, 1);
      return sa_[rank];
    }
    u32 t = rank, steps = 0;
    while (!pos_sampled(sa_[t])) {
      // psi is total except on the terminator suffix, which is always sampled.
      bump(qc, 1);
      t = psi1_[t];
      ++steps;
    }
    bump(qc, 1);
    return sa_[t] - steps;
  }

  /// Rank of the suffix starting at pos.
  u32 isa_lookup(u32 pos, QueryCounters* qc = nullptr) const {
    check_contract(pos < n(), "isa_lookup: position out of range");
    if (sampling_.step == 1) {
      bump(qc, 1);
      return isa_[pos];
    }
    u32 base = pos - pos % sampling_.step;
    bump(qc, 1);
    u32 t = isa_[base];
    for (u32 i = base; i < pos; ++i) {
      bump(qc, 1);
      t = psi1_[t];
    }
    return t;
  }

  /// Rank of the suffix i positions after the rank-th suffix.
  /// Precondition: sa[rank] + i <= n - 1.
  u32 psi(u32 rank, u32 i, QueryCounters* qc = nullptr) const {
    u32 pos = sa_lookup(rank, qc);
    check_contract(pos + i <= n() - 1, "psi: shift runs past the terminator");
    return isa_lookup(pos + i, qc);
  }

  /// Longest common prefix of the suffixes with ranks t1 and t2 (t1 == t2
  /// returns the suffix length). Constant time via a sparse table.
  u32 lcp_suffixes(u32 t1, u32 t2, QueryCounters* qc = nullptr) const {
    check_contract(t1 < n() && t2 < n(), "lcp_suffixes: rank out of range");
    if (t1 == t2) return n() - sa_[t1];
    if (qc) ++qc->rmq_calls;
    auto [lo, hi] = std::minmax(t1, t2);
    return rmq(lo + 1, hi);
  }

  // Whole arrays, for construction of derived structures and for tests.
  std::span<const u32> sa() const { return sa_; }
  std::span<const u32> isa() const { return isa_; }
  std::span<const u32> lcp_array() const { return lcp_; }
  /// psi1[t] = rank of the suffix one position after suffix of rank t;
  /// kNone for the terminator suffix.
  std::span<const u32> psi1() const { return psi1_; }

 private:
  Alphabet alpha_;
  std::vector<Symbol> text_;
  SaSampling sampling_;
  std::vector<u32> sa_, isa_, lcp_, psi1_, cum_;
  std::vector<std::vector<u32>> rmq_table_;
  std::vector<u32> log2_;
  std::vector<u8> pos_sampled_;

  static void bump(QueryCounters* qc, u64 k) {
    if (qc) qc->sa_accesses += k;
  }

  bool pos_sampled(u32 pos) const { return pos_sampled_[pos] != 0; }

  void build_arrays() {
    const u32 nn = n();
    sa_.resize(nn);
    std::vector<u32> rank(nn), tmp(nn);
    for (u32 i = 0; i < nn; ++i) {
      sa_[i] = i;
      rank[i] = text_[i];
    }
    auto by_rank = [&](u32 k) {
      return [&rank, k, nn](u32 a, u32 b) {
        if (rank[a] != rank[b]) return rank[a] < rank[b];
        u32 ra = a + k < nn ? rank[a + k] + 1 : 0;
        u32 rb = b + k < nn ? rank[b + k] + 1 : 0;
        return ra < rb;
      };
    };
    for (u32 k = 1;; k <<= 1) {
      auto cmp = by_rank(k);
      std::sort(sa_.begin(), sa_.end(), cmp);
      tmp[sa_[0]] = 0;
      for (u32 i = 1; i < nn; ++i)
        tmp[sa_[i]] = tmp[sa_[i - 1]] + (cmp(sa_[i - 1], sa_[i]) ? 1 : 0);
      rank = tmp;
      if (rank[sa_[nn - 1]] == nn - 1) break;
    }
    isa_.resize(nn);
    for (u32 i = 0; i < nn; ++i) isa_[sa_[i]] = i;

    // lcp_[i] = lcp(suffix sa[i-1], suffix sa[i]); lcp_[0] = 0.
    lcp_.assign(nn, 0);
    u32 h = 0;
    for (u32 p = 0; p < nn; ++p) {
      if (isa_[p] > 0) {
        u32 q = sa_[isa_[p] - 1];
        while (p + h < nn && q + h < nn && text_[p + h] == text_[q + h]) ++h;
        lcp_[isa_[p]] = h;
        if (h > 0) --h;
      } else {
        h = 0;
      }
    }

    psi1_.assign(nn, kNone);
    for (u32 t = 0; t < nn; ++t)
      if (sa_[t] + 1 < nn) psi1_[t] = isa_[sa_[t] + 1];

    cum_.assign(sigma() + 2, 0);
    for (Symbol s : text_) ++cum_[s + 1];
    for (u32 c = 1; c < cum_.size(); ++c) cum_[c] += cum_[c - 1];

    build_rmq();

    pos_sampled_.assign(nn, 0);
    for (u32 p = 0; p < nn; p += sampling_.step) pos_sampled_[p] = 1;
    pos_sampled_[nn - 1] = 1;  // terminator position, psi walk boundary
  }

  void build_rmq() {
    const u32 nn = n();
    log2_.assign(nn + 1, 0);
    for (u32 i = 2; i <= nn; ++i) log2_[i] = log2_[i / 2] + 1;
    u32 levels = log2_[nn] + 1;
    rmq_table_.assign(levels, {});
    rmq_table_[0] = lcp_;
    for (u32 j = 1; j < levels; ++j) {
      u32 len = 1u << j;
      if (len > nn) break;
      rmq_table_[j].resize(nn - len + 1);
      for (u32 i = 0; i + len <= nn; ++i)
        rmq_table_[j][i] = std::min(rmq_table_[j - 1][i], rmq_table_[j - 1][i + len / 2]);
    }
  }

  /// min lcp_[l..r] inclusive, l <= r.
  u32 rmq(u32 l, u32 r) const {
    u32 j = log2_[r - l + 1];
    return std::min(rmq_table_[j][l], rmq_table_[j][r + 1 - (1u << j)]);
  }
};

}  // namespace wcidx
