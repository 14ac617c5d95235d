// Small tour of the library: build an index over one string, look at what
// the partition produced, and run a few wildcard queries with both engines.

#include <iostream>
#include <string>

#include "wcidx/wcidx.hpp"

int main() {
  using namespace wcidx;
  const std::string text = "banana";

  IndexParams ps;
  ps.tau = 2;     // dense marking so the partition machinery is visible
  ps.lambda = 4;  // one alphabet group covers the whole alphabet
  auto ixp = build_index(text, ps);
  const WildcardIndex& ix = *ixp;

  std::cout << "text: " << text << "\n";
  std::cout << "suffix array:";
  for (u32 r : ix.text.sa()) std::cout << " " << r;
  std::cout << "\n";
  const auto& mk = ix.partition.marking();
  std::cout << "marked leaves: " << mk.marked_leaves
            << ", marked internal: " << mk.marked_internals
            << ", groups: " << ix.partition.groups().size() << "\n";
  std::cout << "wildcard tries: " << ix.wildcards.tries().size() << " holding "
            << ix.wildcards.total_entries() << " tails\n\n";

  for (const std::string pat : {"ana", "?a", "a?a", "?{2}na", "x?z", ""}) {
    MatchResult base = run_query(ix, pat, Engine::baseline);
    MatchResult accel = run_query(ix, pat, Engine::accelerated);
    std::cout << "pattern \"" << pat << "\": positions";
    if (accel.positions.empty()) std::cout << " (none)";
    for (u32 p : accel.positions) std::cout << " " << p;
    std::cout << (base.positions == accel.positions ? "" : "  [ENGINES DISAGREE]");
    std::cout << "  (events " << accel.counters.events << ")\n";
  }
  return 0;
}
