#include "orient/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "orient/cycle_basis.hpp"
#include "orient/io.hpp"

namespace orient {

std::vector<Instance> load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Instance> corpus;
  for (const auto& f : files) {
    try {
      corpus.push_back({f.stem().string(), read_network_file(f)});
    } catch (const std::exception& e) {
      throw std::runtime_error(f.string() + ": " + e.what());
    }
  }
  return corpus;
}

Outcome run_solver(const std::string& solver, const UndirectedNetwork& n, const ClassPredicate& cls,
                   const SearchOptions& options, std::uint64_t baseline_max_subsets) {
  if (solver == "exact") return exact_c_orientation(n, cls, options);
  if (solver == "heuristic") return tree_child_heuristic(n, options);
  if (solver == "baseline") {
    BaselineOptions b;
    static_cast<SearchOptions&>(b) = options;
    b.max_subsets = baseline_max_subsets;
    return baseline_c_orientation(n, cls, b);
  }
  throw std::invalid_argument("unknown solver '" + solver + "'");
}

namespace {

ExperimentRecord run_cell(const Instance& inst, const std::string& solver, const BenchConfig& cfg,
                          std::uint64_t space_exact, std::uint64_t space_baseline) {
  ExperimentRecord rec;
  rec.instance_id = inst.id;
  rec.n_leaves = inst.network.leaf_count();
  rec.r = reticulation_number(inst.network);
  rec.solver = solver;
  rec.search_space_exact = space_exact;
  rec.search_space_baseline = space_baseline;

  const auto cls = solver == "heuristic" ? tree_child_class() : class_by_name(cfg.cls);
  SearchOptions options;
  options.deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(cfg.timeout_seconds));
  const auto start = std::chrono::steady_clock::now();
  try {
    auto out = run_solver(solver, inst.network, cls, options, cfg.baseline_max_subsets);
    rec.verdict = std::string(to_string(out.verdict));
    rec.elapsed_seconds = out.counters.elapsed_seconds;
    rec.placements_tried = out.counters.placements_tried;
    rec.constrained_calls = out.counters.constrained_calls;
    if (out.verdict == Verdict::Oriented) {
      if (auto problem = check_orientation(inst.network, out, cls); !problem.empty())
        throw std::logic_error(inst.id + " / " + solver + ": returned orientation fails verification: " + problem);
    }
  } catch (const BudgetExceeded&) {
    rec.verdict = "BUDGET_EXCEEDED";
    rec.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

}  // namespace

std::vector<ExperimentRecord> run_bench(const std::vector<Instance>& corpus, const BenchConfig& cfg) {
  for (const auto& s : cfg.solvers)
    if (s != "exact" && s != "heuristic" && s != "baseline") throw std::invalid_argument("unknown solver '" + s + "'");
  class_by_name(cfg.cls);

  std::vector<std::uint64_t> space_exact(corpus.size()), space_baseline(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& n = corpus[i].network;
    space_exact[i] = reticulation_number(n) == 0 ? 1 : search_space_size(minimal_cycle_basis(n));
    space_baseline[i] = baseline_space_size(n);
  }

  const std::size_t cells = corpus.size() * cfg.solvers.size();
  std::vector<ExperimentRecord> records(cells);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < cells;) {
      const std::size_t i = k / cfg.solvers.size();
      try {
        records[k] = run_cell(corpus[i], cfg.solvers[k % cfg.solvers.size()], cfg, space_exact[i], space_baseline[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(cells);
      }
    }
  };
  const unsigned threads = std::max(1u, cfg.parallel);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.instance_id, a.solver) < std::tie(b.instance_id, b.solver);
  });
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  auto positive = [](const std::string& v) { return v == "ORIENTED"; };
  auto negative = [](const std::string& v) { return v == "NO" || v == "PROBABLY_NO"; };

  std::map<std::string, const ExperimentRecord*> exact;
  for (const auto& rec : records)
    if (rec.solver == "exact") exact[rec.instance_id] = &rec;

  std::map<std::pair<std::size_t, std::string>, SummaryRow> rows;
  for (const auto& rec : records) {
    auto& row = rows[{rec.r, rec.solver}];
    row.r = rec.r;
    row.solver = rec.solver;
    if (row.instances == 0) row.min_seconds = row.max_seconds = rec.elapsed_seconds;
    ++row.instances;
    row.mean_seconds += rec.elapsed_seconds;
    row.min_seconds = std::min(row.min_seconds, rec.elapsed_seconds);
    row.max_seconds = std::max(row.max_seconds, rec.elapsed_seconds);
    if (positive(rec.verdict)) ++row.oriented;
    else if (negative(rec.verdict)) ++row.negative;
    else ++row.unfinished;

    auto it = exact.find(rec.instance_id);
    if (it == exact.end()) continue;
    if (positive(it->second->verdict)) {
      ++row.exact_yes;
      if (positive(rec.verdict)) ++row.yes_agree;
    } else if (negative(it->second->verdict)) {
      ++row.exact_no;
      if (negative(rec.verdict)) ++row.no_agree;
    }
  }
  std::vector<SummaryRow> out;
  for (auto& [key, row] : rows) {
    row.mean_seconds /= static_cast<double>(row.instances);
    out.push_back(row);
  }
  return out;
}

namespace {

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

}  // namespace

std::string records_csv(const std::vector<ExperimentRecord>& records) {
  std::string out =
      "instance_id,n_leaves,r,solver,verdict,elapsed_seconds,placements_tried,constrained_calls,"
      "search_space_exact,search_space_baseline\n";
  for (const auto& r : records) {
    out += r.instance_id + "," + std::to_string(r.n_leaves) + "," + std::to_string(r.r) + "," + r.solver + "," +
           r.verdict + "," + seconds(r.elapsed_seconds) + "," + std::to_string(r.placements_tried) + "," +
           std::to_string(r.constrained_calls) + "," + std::to_string(r.search_space_exact) + "," +
           std::to_string(r.search_space_baseline) + "\n";
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "r,solver,instances,oriented,negative,unfinished,exact_yes,yes_agree,exact_no,no_agree,"
      "mean_seconds,min_seconds,max_seconds\n";
  for (const auto& r : rows) {
    out += std::to_string(r.r) + "," + r.solver + "," + std::to_string(r.instances) + "," +
           std::to_string(r.oriented) + "," + std::to_string(r.negative) + "," + std::to_string(r.unfinished) + "," +
           std::to_string(r.exact_yes) + "," + std::to_string(r.yes_agree) + "," + std::to_string(r.exact_no) + "," +
           std::to_string(r.no_agree) + "," + seconds(r.mean_seconds) + "," + seconds(r.min_seconds) + "," +
           seconds(r.max_seconds) + "\n";
  }
  return out;
}

}  // namespace orient
