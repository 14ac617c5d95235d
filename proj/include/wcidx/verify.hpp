#pragma once
/// Randomised self-check and benchmark drivers shared by the CLI.
///
/// A verify run builds indexes over random texts and drives random wildcard
/// patterns through four answerers: the linear scan oracle, the enumeration
/// oracle, and both index engines.  All four must agree, and each engine's
/// terminal-outcome count must respect the sigma^g budget.

#include <chrono>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wcidx/index.hpp"
#include "wcidx/index_file.hpp"
#include "wcidx/matcher.hpp"
#include "wcidx/oracles.hpp"
#include "wcidx/stats.hpp"

namespace wcidx {

inline std::string random_text(std::mt19937_64& rng, u32 n, u32 sigma) {
  std::uniform_int_distribution<u32> d(0, sigma - 1);
  std::string s(n, 'a');
  for (auto& c : s) c = static_cast<char>('a' + d(rng));
  return s;
}

/// Random pattern in the CLI syntax.  Mostly planted (a text window with
/// wildcard runs punched in) so matches actually occur; sometimes free
/// random letters, which may fall outside small inferred alphabets and
/// exercise the unmatchable path; occasionally empty.
inline std::string random_pattern(std::mt19937_64& rng, const std::string& text, u32 max_pieces,
                                  u32 max_run, u32 max_g, u32 sigma) {
  std::uniform_int_distribution<u32> pct(0, 99);
  if (pct(rng) < 2) return "";
  u32 maxlen = std::min<u32>(static_cast<u32>(text.size()), 12);
  std::uniform_int_distribution<u32> lend(1, std::max<u32>(1, maxlen));
  u32 len = lend(rng);
  std::string base;
  if (pct(rng) < 70 && !text.empty()) {
    std::uniform_int_distribution<u32> sd(0, static_cast<u32>(text.size()) - len);
    base = text.substr(sd(rng), len);
  } else {
    std::uniform_int_distribution<u32> cd(0, sigma - 1);
    base.resize(len);
    for (auto& c : base) c = static_cast<char>('a' + cd(rng));
  }
  u32 budget = max_g;
  std::uniform_int_distribution<u32> pieces(0, max_pieces);
  u32 d = pieces(rng);
  for (u32 i = 0; i < d && budget > 0; ++i) {
    std::uniform_int_distribution<u32> posd(0, static_cast<u32>(base.size()) - 1);
    std::uniform_int_distribution<u32> rund(1, std::min(max_run, budget));
    u32 pos = posd(rng);
    u32 k = std::min<u32>(rund(rng), static_cast<u32>(base.size()) - pos);
    for (u32 j = 0; j < k; ++j) base[pos + j] = '?';
    budget -= k;
  }
  return base;
}

struct VerifyConfig {
  u32 trials = 200;
  u32 max_n = 256;  ///< raw text lengths are drawn from [1, max_n]
  u32 sigma = 4;
  u64 seed = 1;
  u32 max_pieces = 4;
  u32 max_run = 2;
  u32 max_g = 4;
  u32 tau = 0;     ///< 0 = draw from {2, 4, 8} per trial
  u32 lambda = 0;  ///< 0 = draw from {2, 3} per trial
  SamplingLevel level = SamplingLevel::full;
  bool roundtrip = false;  ///< additionally save/load each index and re-query
};

struct VerifyReport {
  u32 trials = 0;
  u32 failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
};

inline VerifyReport run_verify(const VerifyConfig& cfg, std::ostream* log = nullptr) {
  VerifyReport rep;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<u32> nd(1, std::max<u32>(1, cfg.max_n));
  const u32 taus[3] = {2, 4, 8};
  const u32 lambdas[2] = {2, 3};
  auto fail = [&](u32 trial, const std::string& text, const std::string& pat,
                  const std::string& what) {
    ++rep.failures;
    if (rep.first_failure.empty()) {
      std::ostringstream os;
      os << "trial " << trial << ": " << what << " (pattern \"" << pat << "\", text \""
         << (text.size() <= 64 ? text : text.substr(0, 64) + "...") << "\")";
      rep.first_failure = os.str();
    }
  };
  for (u32 trial = 0; trial < cfg.trials; ++trial) {
    ++rep.trials;
    std::string text = random_text(rng, nd(rng), cfg.sigma);
    IndexParams ps;
    ps.tau = cfg.tau != 0 ? cfg.tau : taus[rng() % 3];
    ps.lambda = cfg.lambda != 0 ? cfg.lambda : lambdas[rng() % 2];
    ps.level = cfg.level;
    auto ixp = build_index(text, ps);
    const WildcardIndex& ix = *ixp;
    std::string pat =
        random_pattern(rng, text, cfg.max_pieces, cfg.max_run, cfg.max_g, cfg.sigma);
    WildcardPattern wp = parse_wildcard_pattern(pat, ix.text.alphabet());

    std::vector<u32> scan = oracle_scan(ix.text, wp);
    std::vector<u32> enumr = oracle_enumerate(ix.text, wp);
    MatchResult base = run_query(ix, wp, Engine::baseline);
    MatchResult accel = run_query(ix, wp, Engine::accelerated);

    if (scan != enumr) fail(trial, text, pat, "scan and enumeration oracles disagree");
    if (base.positions != scan) fail(trial, text, pat, "baseline engine disagrees with oracles");
    if (accel.positions != scan)
      fail(trial, text, pat, "accelerated engine disagrees with oracles");

    u64 budget = 1;
    bool over = false;
    for (u32 i = 0; i < wp.wildcard_total(); ++i) {
      budget *= std::max<u32>(1, ix.text.sigma());
      if (budget > (1ull << 62)) break;
    }
    if (!wp.unmatchable) {
      if (base.counters.events > budget) over = true;
      if (accel.counters.events > budget) over = true;
      if (wp.wildcard_total() == 0 && base.counters.events != 1) over = true;
    }
    if (over) fail(trial, text, pat, "terminal-outcome budget exceeded");

    if (cfg.roundtrip) {
      std::vector<unsigned char> buf = serialize_index(ix);
      auto ix2 = deserialize_index(buf.data(), buf.size());
      MatchResult again = run_query(*ix2, wp, Engine::accelerated);
      if (!(again == accel)) fail(trial, text, pat, "reloaded index answered differently");
    }
    if (log && (trial + 1) % 500 == 0)
      *log << "verify: " << (trial + 1) << "/" << cfg.trials << " trials, " << rep.failures
           << " failures\n";
  }
  return rep;
}

struct BenchConfig {
  std::vector<u32> sizes = {1u << 10, 1u << 14, 1u << 18};
  u32 sigma = 4;
  u32 queries = 50;
  u64 seed = 7;
  SamplingLevel level = SamplingLevel::full;
};

/// Informational: build sizes and mean per-query counters per text size.
inline void run_bench(const BenchConfig& cfg, std::ostream& out) {
  std::mt19937_64 rng(cfg.seed);
  out << "# space model: see stats.hpp (bits per structure element by level)\n";
  for (u32 n : cfg.sizes) {
    std::string text = random_text(rng, n, cfg.sigma);
    IndexParams ps;
    ps.level = cfg.level;
    auto t0 = std::chrono::steady_clock::now();
    auto ixp = build_index(text, ps);
    const WildcardIndex& ix = *ixp;
    auto t1 = std::chrono::steady_clock::now();
    out << "[n=" << n << "]\n";
    out << "build_ms="
        << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "\n";
    for (const auto& [k, v] : space_stats(ix).lines()) out << k << "=" << v << "\n";
    QueryCounters sum;
    u64 matches = 0;
    auto q0 = std::chrono::steady_clock::now();
    for (u32 i = 0; i < cfg.queries; ++i) {
      std::string pat = random_pattern(rng, text, 4, 2, 4, cfg.sigma);
      MatchResult r = run_query(ix, pat, Engine::accelerated);
      sum.add(r.counters);
      matches += r.positions.size();
    }
    auto q1 = std::chrono::steady_clock::now();
    out << "queries=" << cfg.queries << "\n";
    out << "query_total_us="
        << std::chrono::duration_cast<std::chrono::microseconds>(q1 - q0).count() << "\n";
    out << "total_matches=" << matches << "\n";
    for (const auto& [k, v] : counter_lines(sum)) {
      double mean = cfg.queries ? std::stod(v) / cfg.queries : 0.0;
      out << "mean_" << k << "=" << mean << "\n";
    }
  }
}

}  // namespace wcidx
