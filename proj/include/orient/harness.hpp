#pragma once

// Benchmark harness: runs solvers over a corpus and tabulates the results.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "orient/network.hpp"
#include "orient/solvers.hpp"

namespace orient {

struct Instance {
  std::string id;
  UndirectedNetwork network;
};

// Every *.txt file in `dir`, sorted by file name; the id is the file stem.
std::vector<Instance> load_corpus(const std::filesystem::path& dir);

struct ExperimentRecord {
  std::string instance_id;
  std::size_t n_leaves = 0;
  std::size_t r = 0;
  std::string solver;
  std::string verdict;  // ORIENTED, NO, PROBABLY_NO, TIMEOUT or BUDGET_EXCEEDED
  double elapsed_seconds = 0.0;
  std::uint64_t placements_tried = 0;
  std::uint64_t constrained_calls = 0;
  std::uint64_t search_space_exact = 0;
  std::uint64_t search_space_baseline = 0;
};

struct BenchConfig {
  std::vector<std::string> solvers = {"exact", "heuristic", "baseline"};
  std::string cls = "tree-child";
  double timeout_seconds = 60.0;
  unsigned parallel = 1;  // concurrent (instance, solver) cells
  std::uint64_t baseline_max_subsets = 20'000'000;
};

// Throws std::invalid_argument for an unknown solver name.
Outcome run_solver(const std::string& solver, const UndirectedNetwork& n, const ClassPredicate& cls,
                   const SearchOptions& options, std::uint64_t baseline_max_subsets = 20'000'000);

// Records sorted by (instance id, solver). Every ORIENTED result is re-checked
// and a failed check throws std::logic_error.
std::vector<ExperimentRecord> run_bench(const std::vector<Instance>& corpus, const BenchConfig& cfg);

struct SummaryRow {
  std::size_t r = 0;
  std::string solver;
  std::size_t instances = 0;
  std::size_t oriented = 0;
  std::size_t negative = 0;  // NO or PROBABLY_NO
  std::size_t unfinished = 0;
  // Agreement with the exact solver, split by its verdict.
  std::size_t exact_yes = 0, yes_agree = 0;
  std::size_t exact_no = 0, no_agree = 0;
  double mean_seconds = 0.0, min_seconds = 0.0, max_seconds = 0.0;
};

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

std::string records_csv(const std::vector<ExperimentRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);

}  // namespace orient
