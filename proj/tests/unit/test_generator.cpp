#include <set>

#include "doctest.h"
#include "orient/generator.hpp"
#include "orient/io.hpp"
#include "support.hpp"

using namespace orient;

namespace {

using Script = std::vector<ScriptedLineageEvents::Step>;

Script table_a1() {
  return {{GenEvent::Coalesce, {3, 4}}, {GenEvent::Split, {2}},     {GenEvent::Coalesce, {1, 6}},
          {GenEvent::Coalesce, {7, 8}}, {GenEvent::Split, {5}},     {GenEvent::Coalesce, {9, 10}},
          {GenEvent::Coalesce, {11, 12}}};
}

std::set<std::pair<std::string, std::string>> named_arcs(const DirectedNetwork& d) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& a : d.arcs()) out.emplace(d.name(a.from), d.name(a.to));
  return out;
}

}  // namespace

TEST_CASE("scripted trace reproduces the worked example") {
  ScriptedLineageEvents events(table_a1());
  auto [raw, trace] = simulate_lineages(4, events, 100);
  const std::vector<std::pair<int, int>> expected{{5, 3},  {5, 4},  {6, 2},   {7, 2},   {8, 1},   {8, 6},   {9, 7},
                                                  {9, 8},  {10, 5}, {11, 5},  {12, 9},  {12, 10}, {13, 11}, {13, 12}};
  CHECK(raw.arcs == expected);
  CHECK(raw.root == 13);
  CHECK(raw.vertex_count == 13);
  REQUIRE(trace.steps.size() == 7);
  CHECK(trace.steps[0].taxa_before == std::vector<int>{1, 2, 3, 4});
  CHECK(trace.steps[2].taxa_before == std::vector<int>{1, 5, 6, 7});
  CHECK(trace.steps[5].taxa_before == std::vector<int>{9, 10, 11});
  CHECK(trace.steps[6].taxa_before == std::vector<int>{11, 12});
  CHECK(trace.steps[1].event == GenEvent::Split);
  CHECK(trace.steps[1].new_taxa == std::vector<int>{6, 7});
  CHECK(trace.steps[4].new_arcs == std::vector<std::pair<int, int>>{{10, 5}, {11, 5}});
}

TEST_CASE("binarizing the worked example") {
  ScriptedLineageEvents events(table_a1());
  auto raw = simulate_lineages(4, events, 100).first;
  auto d = binarize_and_suppress(raw);
  const std::set<std::pair<std::string, std::string>> expected{
      {"13", "5"}, {"13", "12"}, {"12", "9"}, {"12", "5"}, {"9", "2"},  {"9", "8"},
      {"8", "1"},  {"8", "2"},   {"2", "14"}, {"5", "15"}, {"15", "3"}, {"15", "4"}};
  CHECK(named_arcs(d) == expected);
  CHECK(d.name(d.root()) == "13");
  CHECK(d.vertex_count() == 11);
  CHECK(d.label(d.find("14").value()) == "x2");
  CHECK(d.label(d.find("2").value()).empty());
  CHECK(d.label(d.find("1").value()) == "x1");
  CHECK(d.reticulations().size() == 2);
  // the root's children 5 and 12 are adjacent, so the root cannot be suppressed
  CHECK_THROWS_AS(to_undirected(d), NetworkError);
}

TEST_CASE("a chain of unary vertices collapses to one arc") {
  RawDag raw;
  raw.n_leaves = 2;
  raw.vertex_count = 6;
  raw.root = 6;
  raw.arcs = {{6, 5}, {6, 2}, {5, 4}, {4, 3}, {3, 1}};
  auto d = binarize_and_suppress(raw);
  CHECK(named_arcs(d) == std::set<std::pair<std::string, std::string>>{{"6", "1"}, {"6", "2"}});
}

TEST_CASE("out-degree three is split by sorted child id") {
  RawDag raw;
  raw.n_leaves = 3;
  raw.vertex_count = 4;
  raw.root = 4;
  raw.arcs = {{4, 3}, {4, 1}, {4, 2}};
  auto d = binarize_and_suppress(raw);
  CHECK(named_arcs(d) ==
        std::set<std::pair<std::string, std::string>>{{"4", "5"}, {"5", "1"}, {"5", "2"}, {"4", "3"}});
}

TEST_CASE("suppression creating parallel arcs is an error") {
  // 2 splits into 3 and 4, which coalesce straight away
  ScriptedLineageEvents events({{GenEvent::Split, {2}}, {GenEvent::Coalesce, {3, 4}}, {GenEvent::Coalesce, {1, 5}}});
  auto raw = simulate_lineages(2, events, 100).first;
  CHECK_THROWS_AS(binarize_and_suppress(raw), NetworkError);
}

TEST_CASE("two leaves without splits give a cherry") {
  GenConfig cfg;
  cfg.n_leaves = 2;
  cfg.p_r = 0.0;
  auto [raw, trace] = generate_raw_dag(cfg);
  CHECK(raw.vertex_count == 3);
  CHECK(trace.steps.size() == 1);
  auto g = generate_network(cfg);
  CHECK(g.network.vertex_count() == 2);
  CHECK(g.network.edge_count() == 1);
}

TEST_CASE("no splits means trees") {
  for (std::size_t n : {3, 10, 20}) {
    for (const auto& e : test::generated(n, 0.0, 1, 20)) {
      CHECK(reticulation_number(e.network) == 0);
      CHECK(e.rooted.reticulations().empty());
    }
  }
}

TEST_CASE("generation is deterministic") {
  GenConfig cfg;
  cfg.n_leaves = 15;
  cfg.p_r = 0.15;
  cfg.seed = 42;
  auto a = generate_network(cfg);
  auto b = generate_network(cfg);
  CHECK(format_network(a.network) == format_network(b.network));
  CHECK(a.rooted == b.rooted);
  CHECK(a.trace.retries == b.trace.retries);
  cfg.seed = 43;
  CHECK(format_network(generate_network(cfg).network) != format_network(a.network));
}

TEST_CASE("random choices stay in range and cover every candidate") {
  RandomLineageEvents ev(0.5, 9);
  std::vector<int> cand{10, 20, 30};
  std::set<int> seen;
  std::size_t splits = 0;
  for (int i = 0; i < 2000; ++i) {
    seen.insert(ev.pick(cand));
    splits += ev.next_event(cand) == GenEvent::Split;
  }
  CHECK(seen == std::set<int>{10, 20, 30});
  CHECK(splits > 900);
  CHECK(splits < 1100);
}

TEST_CASE("configuration errors") {
  GenConfig cfg;
  cfg.n_leaves = 1;
  CHECK_THROWS_AS(check_config(cfg), std::invalid_argument);
  cfg.n_leaves = 5;
  cfg.p_r = 1.0;
  CHECK_THROWS_AS(check_config(cfg), std::invalid_argument);
  cfg.p_r = 0.95;
  cfg.max_steps = 10;
  CHECK_THROWS_AS(generate_raw_dag(cfg), GeneratorError);
}

TEST_CASE("scripts are checked") {
  ScriptedLineageEvents stale({{GenEvent::Coalesce, {1, 9}}});
  CHECK_THROWS_AS(simulate_lineages(2, stale, 10), GeneratorError);
  ScriptedLineageEvents short_script({{GenEvent::Coalesce, {1, 2}}});
  CHECK_THROWS_AS(simulate_lineages(3, short_script, 10), GeneratorError);
}
