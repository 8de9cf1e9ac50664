#include "doctest.h"
#include "orient/harness.hpp"
#include "support.hpp"

using namespace orient;

TEST_CASE("bench over the fixtures") {
  auto corpus = load_corpus(ORIENT_FIXTURE_DIR);
  REQUIRE(corpus.size() >= 5);
  CHECK(std::is_sorted(corpus.begin(), corpus.end(), [](auto& a, auto& b) { return a.id < b.id; }));

  BenchConfig cfg;
  cfg.parallel = 3;
  cfg.timeout_seconds = 30;
  auto records = run_bench(corpus, cfg);
  REQUIRE(records.size() == corpus.size() * 3);
  for (std::size_t i = 1; i < records.size(); ++i)
    CHECK(std::tie(records[i - 1].instance_id, records[i - 1].solver) <
          std::tie(records[i].instance_id, records[i].solver));

  auto find = [&](const std::string& id, const std::string& solver) {
    for (const auto& r : records)
      if (r.instance_id == id && r.solver == solver) return r;
    FAIL("missing record");
    return ExperimentRecord{};
  };
  CHECK(find("two_triangles", "exact").verdict == "NO");
  CHECK(find("two_triangles", "heuristic").verdict == "PROBABLY_NO");
  CHECK(find("two_triangles", "baseline").verdict == "NO");
  CHECK(find("two_triangles", "exact").search_space_exact == 9);
  CHECK(find("two_triangles", "exact").search_space_baseline == 6);
  CHECK(find("triangle", "heuristic").verdict == "ORIENTED");
  CHECK(find("heuristic_false_negative", "exact").verdict == "ORIENTED");
  CHECK(find("heuristic_false_negative", "heuristic").verdict == "PROBABLY_NO");

  // sequential and parallel runs agree apart from timings
  cfg.parallel = 1;
  auto again = run_bench(corpus, cfg);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(again[i].verdict == records[i].verdict);
    CHECK(again[i].placements_tried == records[i].placements_tried);
  }

  auto csv = records_csv(records);
  CHECK(csv.rfind(
            "instance_id,n_leaves,r,solver,verdict,elapsed_seconds,placements_tried,constrained_calls,"
            "search_space_exact,search_space_baseline\n",
            0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(records.size() + 1));

  auto rows = summarize(records);
  for (const auto& row : rows) {
    CHECK(row.oriented + row.negative + row.unfinished == row.instances);
    CHECK(row.min_seconds <= row.mean_seconds);
    CHECK(row.mean_seconds <= row.max_seconds);
    if (row.solver == "exact") {
      CHECK(row.yes_agree == row.exact_yes);
      CHECK(row.no_agree == row.exact_no);
    }
  }
  CHECK(summary_csv(rows).find("r,solver,instances") == 0);
}

TEST_CASE("budget overrun is recorded") {
  std::vector<Instance> corpus;
  corpus.push_back({"multi", test::fixture("multi_basis.txt")});
  BenchConfig cfg;
  cfg.solvers = {"baseline"};
  cfg.baseline_max_subsets = 10;
  auto records = run_bench(corpus, cfg);
  REQUIRE(records.size() == 1);
  CHECK(records[0].verdict == "BUDGET_EXCEEDED");
}

TEST_CASE("timeouts are recorded") {
  std::vector<Instance> corpus;
  corpus.push_back({"big", test::generated(30, 0.2, 3, 1)[0].network});
  REQUIRE(reticulation_number(corpus[0].network) >= 3);
  BenchConfig cfg;
  cfg.solvers = {"exact"};
  cfg.timeout_seconds = 1e-9;
  auto records = run_bench(corpus, cfg);
  CHECK(records[0].verdict == "TIMEOUT");
}

TEST_CASE("unknown solvers are rejected") {
  BenchConfig cfg;
  cfg.solvers = {"magic"};
  CHECK_THROWS_AS(run_bench({}, cfg), std::invalid_argument);
  cfg.solvers = {"exact"};
  cfg.cls = "level-1";
  CHECK_THROWS_AS(run_bench({}, cfg), std::invalid_argument);
}
