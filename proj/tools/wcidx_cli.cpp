// Command-line front end: build an index file, query it, run the randomised
// self-check, or benchmark.  Exit codes: 0 success, 2 usage/format error,
// 3 verification failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wcidx/wcidx.hpp"

namespace {

wcidx::SamplingLevel parse_level(const std::string& s) {
  if (s == "full") return wcidx::SamplingLevel::full;
  if (s == "compact") return wcidx::SamplingLevel::compact;
  if (s == "sampled") return wcidx::SamplingLevel::sampled;
  throw wcidx::UsageError("unknown sampling level: " + s +
                          " (expected full, compact or sampled)");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw wcidx::UsageError("cannot open: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return std::move(os).str();
}

int run(int argc, char** argv) {
  CLI::App app{"wildcard-pattern text index"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "build an index file from a text file");
  std::string in_path, out_path, sampling = "full", alphabet = "infer";
  wcidx::u32 tau = 0, lambda = 0, cd = 0, ch = 0, micro = 0, sa_step = 1;
  bool raw = false;
  build->add_option("--input", in_path, "text file")->required();
  build->add_option("--output", out_path, "index file to write")->required();
  build->add_option("--tau", tau, "marking spacing (0 = auto)");
  build->add_option("--lambda", lambda, "alphabet-group width (0 = auto)");
  build->add_option("--sampling", sampling, "full | compact | sampled");
  build->add_option("--alphabet", alphabet, "explicit alphabet bytes (default: infer)");
  build->add_option("--cd", cd, "set-element sampling step (0 = auto)");
  build->add_option("--ch", ch, "chain-depth sampling step (0 = auto)");
  build->add_option("--micro-block", micro, "topology block size (0 = auto)");
  build->add_option("--sa-sampling", sa_step, "suffix-array sampling step");
  build->add_flag("--raw", raw, "do not strip one trailing newline");

  // query
  auto* query = app.add_subcommand("query", "run a pattern against an index file");
  std::string index_path, pattern, engine = "accelerated";
  bool stats = false;
  query->add_option("--index", index_path, "index file")->required();
  query->add_option("--pattern", pattern,
                    "pattern (literals, ?, ?{k}; backslash makes the next byte literal)")
      ->required();
  query->add_option("--engine", engine, "baseline | accelerated");
  query->add_flag("--stats", stats, "print query counters");

  // verify
  auto* verify = app.add_subcommand("verify", "randomised four-way self-check");
  wcidx::VerifyConfig vc;
  verify->add_option("--trials", vc.trials, "number of random trials");
  verify->add_option("--n", vc.max_n, "maximum raw text length");
  verify->add_option("--sigma", vc.sigma, "alphabet size of the random texts");
  verify->add_option("--seed", vc.seed, "random seed");
  verify->add_option("--tau", vc.tau, "fixed marking spacing (0 = vary)");
  verify->add_option("--lambda", vc.lambda, "fixed group width (0 = vary)");
  std::string vsampling = "full";
  verify->add_option("--sampling", vsampling, "full | compact | sampled");
  verify->add_flag("--roundtrip", vc.roundtrip, "also save/load each index");

  // bench
  auto* bench = app.add_subcommand("bench", "build/query timings and sizes");
  wcidx::BenchConfig bc;
  std::string bench_out;
  std::string bsampling = "full";
  bench->add_option("--sizes", bc.sizes, "text sizes to benchmark");
  bench->add_option("--sigma", bc.sigma, "alphabet size");
  bench->add_option("--queries", bc.queries, "queries per size");
  bench->add_option("--seed", bc.seed, "random seed");
  bench->add_option("--sampling", bsampling, "full | compact | sampled");
  bench->add_option("--output", bench_out, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0; any parse failure is a usage error
  }

  if (build->parsed()) {
    std::string text = read_file(in_path);
    if (!raw && !text.empty() && text.back() == '\n') text.pop_back();
    wcidx::IndexParams ps;
    ps.tau = tau;
    ps.lambda = lambda;
    ps.level = parse_level(sampling);
    ps.c_d = cd;
    ps.c_h = ch;
    ps.micro_block = micro;
    ps.sa_step = sa_step;
    ps.alphabet = alphabet;
    auto ixp = wcidx::build_index(text, ps);
    const wcidx::WildcardIndex& ix = *ixp;
    wcidx::save_index(ix, out_path);
    std::cerr << "indexed " << ix.text.n() - 1 << " symbols, sigma " << ix.text.sigma()
              << ", tau " << ix.params.tau << ", lambda " << ix.params.lambda << ", "
              << ix.partition.groups().size() << " groups\n";
    return 0;
  }

  if (query->parsed()) {
    auto ixp = wcidx::load_index(index_path);
    const wcidx::WildcardIndex& ix = *ixp;
    wcidx::Engine e;
    if (engine == "baseline")
      e = wcidx::Engine::baseline;
    else if (engine == "accelerated")
      e = wcidx::Engine::accelerated;
    else
      throw wcidx::UsageError("unknown engine: " + engine);
    wcidx::MatchResult r = wcidx::run_query(ix, pattern, e);
    for (wcidx::u32 p : r.positions) std::cout << p << "\n";
    if (stats) {
      std::cout << "count=" << r.positions.size() << "\n";
      for (const auto& [k, v] : wcidx::counter_lines(r.counters))
        std::cout << k << "=" << v << "\n";
    }
    return 0;
  }

  if (verify->parsed()) {
    vc.level = parse_level(vsampling);
    wcidx::VerifyReport rep = wcidx::run_verify(vc, &std::cerr);
    std::cout << "trials=" << rep.trials << "\n" << "failures=" << rep.failures << "\n";
    if (!rep.ok()) {
      std::cout << "first_failure=" << rep.first_failure << "\n";
      return 3;
    }
    return 0;
  }

  bc.level = parse_level(bsampling);
  if (!bench_out.empty()) {
    std::ofstream f(bench_out);
    if (!f) throw wcidx::UsageError("cannot open for writing: " + bench_out);
    wcidx::run_bench(bc, f);
  } else {
    wcidx::run_bench(bc, std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wcidx::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wcidx::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wcidx::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wcidx::Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
