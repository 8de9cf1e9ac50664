// orient: command-line front end.
//
//   orient orient <network> [--algo exact|heuristic|baseline] [--class ...] [--timeout s] [--parallel k] [-o out]
//   orient gen --leaves n --pr p --seed s --count k --out dir
//   orient bench --corpus dir [--algos exact,heuristic,baseline] [--timeout s] [--parallel k] --out csv
//   orient basis <network>
//   orient validate <network>
//
// Exit status: 0 oriented / ok, 1 no orientation found, 2 error or timeout.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "orient/cycle_basis.hpp"
#include "orient/generator.hpp"
#include "orient/harness.hpp"
#include "orient/io.hpp"
#include "orient/solvers.hpp"

namespace fs = std::filesystem;
using namespace orient;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

struct OrientArgs {
  std::string input;
  std::string output;
  std::string algo = "exact";
  std::string cls = "tree-child";
  double timeout = 60.0;
  unsigned parallel = 1;
  std::uint64_t max_subsets = 20'000'000;
  bool newick = false;
};

int cmd_orient(const OrientArgs& a) {
  const auto n = read_network_file(a.input);
  if (a.algo == "heuristic" && a.cls != "tree-child")
    throw std::invalid_argument("the heuristic only targets tree-child networks");
  const auto cls = class_by_name(a.cls);
  SearchOptions options;
  options.threads = a.parallel;
  options.deadline = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                            std::chrono::duration<double>(a.timeout));
  const auto out = run_solver(a.algo, n, cls, options, a.max_subsets);

  std::cout << to_string(out.verdict) << "\n";
  std::cout << "r=" << reticulation_number(n) << " placements_tried=" << out.counters.placements_tried
            << " constrained_calls=" << out.counters.constrained_calls << " elapsed=" << out.counters.elapsed_seconds
            << "\n";
  switch (out.verdict) {
    case Verdict::Oriented: {
      if (auto problem = check_orientation(n, out, cls); !problem.empty())
        throw std::logic_error("orientation failed verification: " + problem);
      fs::path target = a.output;
      if (target.empty()) target = fs::path(a.input).replace_extension(".oriented.txt");
      write_directed_file(target, *out.network,
                          {"oriented from " + fs::path(a.input).filename().string() + " by " + a.algo + " (" + a.cls +
                           ")"});
      std::cout << "wrote " << target.string() << "\n";
      if (a.newick) std::cout << to_extended_newick(*out.network) << "\n";
      return kExitYes;
    }
    case Verdict::No:
    case Verdict::ProbablyNo: return kExitNo;
    case Verdict::Timeout: return kExitError;
  }
  return kExitError;
}

struct GenArgs {
  std::size_t leaves = 10;
  double pr = 0.1;
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::string out = ".";
};

int cmd_gen(const GenArgs& a) {
  fs::create_directories(a.out);
  const auto p = format_probability(a.pr);
  std::map<std::size_t, std::size_t> histogram;
  for (std::size_t k = 0; k < a.count; ++k) {
    GenConfig cfg;
    cfg.n_leaves = a.leaves;
    cfg.p_r = a.pr;
    cfg.seed = a.seed + k;
    const auto g = generate_network(cfg);
    const auto r = reticulation_number(g.network);
    ++histogram[r];
    const auto name = "net_" + std::to_string(a.leaves) + "_" + p + "_" + std::to_string(cfg.seed) + ".txt";
    write_network_file(fs::path(a.out) / name, g.network,
                       {"generator " + std::string(kGeneratorStream), "leaves " + std::to_string(a.leaves),
                        "pr " + p, "seed " + std::to_string(cfg.seed), "retries " + std::to_string(g.trace.retries),
                        "r " + std::to_string(r)});
  }
  std::string csv = "r,count\n";
  for (const auto& [r, c] : histogram) csv += std::to_string(r) + "," + std::to_string(c) + "\n";
  const auto hist = fs::path(a.out) / ("r_histogram_" + std::to_string(a.leaves) + "_" + p + "_" +
                                       std::to_string(a.seed) + "_" + std::to_string(a.count) + ".csv");
  write_text_file(hist, csv);
  std::cout << "wrote " << a.count << " networks to " << a.out << "\n";
  for (const auto& [r, c] : histogram) std::cout << "r=" << r << ": " << c << "\n";
  return kExitYes;
}

struct BenchArgs {
  std::string corpus;
  std::vector<std::string> algos = {"exact", "heuristic", "baseline"};
  std::string cls = "tree-child";
  double timeout = 60.0;
  unsigned parallel = 1;
  std::uint64_t max_subsets = 20'000'000;
  std::string out = "bench.csv";
  std::string summary;
};

int cmd_bench(const BenchArgs& a) {
  BenchConfig cfg;
  cfg.solvers = a.algos;
  cfg.cls = a.cls;
  cfg.timeout_seconds = a.timeout;
  cfg.parallel = a.parallel;
  cfg.baseline_max_subsets = a.max_subsets;
  const auto records = run_bench(load_corpus(a.corpus), cfg);
  write_text_file(a.out, records_csv(records));
  fs::path summary = a.summary;
  if (summary.empty()) summary = fs::path(a.out).replace_extension("").string() + "_summary.csv";
  const auto csv = summary_csv(summarize(records));
  write_text_file(summary, csv);
  std::cout << csv;
  return kExitYes;
}

int cmd_basis(const std::string& input) {
  const auto n = read_network_file(input);
  if (reticulation_number(n) == 0) {
    std::cout << "r=0: the network is a tree\n";
    return kExitYes;
  }
  const auto b = minimal_cycle_basis(n);
  std::cout << "r=" << b.size() << " total_length=" << b.total_length << " search_space=" << search_space_size(b)
            << " baseline_space=" << baseline_space_size(n) << "\n";
  std::cout << format_basis(n, b);
  return kExitYes;
}

int cmd_validate(const std::string& input) {
  const auto report = validate_undirected(parse_raw_graph(read_text_file(input)));
  if (report.ok()) {
    std::cout << "ok\n";
    return kExitYes;
  }
  std::cout << report.to_string();
  return kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orientation of undirected phylogenetic networks"};
  app.require_subcommand(1);

  OrientArgs oa;
  auto* orient_cmd = app.add_subcommand("orient", "Orient a network into the target class");
  orient_cmd->add_option("network", oa.input, "Undirected network file")->required()->check(CLI::ExistingFile);
  orient_cmd->add_option("--algo", oa.algo, "Solver")->check(CLI::IsMember({"exact", "heuristic", "baseline"}));
  orient_cmd->add_option("--class", oa.cls, "Target class")->check(CLI::IsMember({"tree-child", "stack-free", "any"}));
  orient_cmd->add_option("--timeout", oa.timeout, "Wall-clock limit in seconds")->check(CLI::PositiveNumber);
  orient_cmd->add_option("--parallel", oa.parallel, "Worker threads")->check(CLI::Range(1u, 1024u));
  orient_cmd->add_option("--max-subsets", oa.max_subsets, "Baseline budget");
  orient_cmd->add_option("-o,--out", oa.output, "Directed network output file");
  orient_cmd->add_flag("--newick", oa.newick, "Also print extended Newick");

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random networks");
  gen_cmd->add_option("--leaves", ga.leaves, "Number of leaves")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  gen_cmd->add_option("--pr", ga.pr, "Split probability in [0, 1)")->check(CLI::Range(0.0, 0.999999));
  gen_cmd->add_option("--seed", ga.seed, "First seed");
  gen_cmd->add_option("--count", ga.count, "Number of networks");
  gen_cmd->add_option("--out", ga.out, "Output directory");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run solvers over a corpus");
  bench_cmd->add_option("--corpus", ba.corpus, "Directory of network files")->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--algos", ba.algos, "Solvers")->delimiter(',');
  bench_cmd->add_option("--class", ba.cls, "Target class")->check(CLI::IsMember({"tree-child", "stack-free", "any"}));
  bench_cmd->add_option("--timeout", ba.timeout, "Per-cell limit in seconds")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--parallel", ba.parallel, "Concurrent cells")->check(CLI::Range(1u, 1024u));
  bench_cmd->add_option("--max-subsets", ba.max_subsets, "Baseline budget");
  bench_cmd->add_option("--out", ba.out, "Records CSV");
  bench_cmd->add_option("--summary", ba.summary, "Summary CSV (default: <out>_summary.csv)");

  std::string basis_input;
  auto* basis_cmd = app.add_subcommand("basis", "Print a minimal cycle basis");
  basis_cmd->add_option("network", basis_input, "Undirected network file")->required()->check(CLI::ExistingFile);

  std::string validate_input;
  auto* validate_cmd = app.add_subcommand("validate", "Check a network file");
  validate_cmd->add_option("network", validate_input, "Undirected network file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*orient_cmd) return cmd_orient(oa);
    if (*gen_cmd) return cmd_gen(ga);
    if (*bench_cmd) return cmd_bench(ba);
    if (*basis_cmd) return cmd_basis(basis_input);
    if (*validate_cmd) return cmd_validate(validate_input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
