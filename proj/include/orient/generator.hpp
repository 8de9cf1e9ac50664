#pragma once

// Coalescent-style random network generator.
//
// Starting from n present-day lineages, the process runs backwards in time:
// each step either coalesces two lineages into a new tree vertex or splits one
// lineage into two new parents (creating a reticulation), until one lineage,
// the root, remains. The raw DAG is then made binary, the root suppressed and
// orientations dropped.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orient/network.hpp"

namespace orient {

// Name of the pseudo-random stream; recorded in generated file headers.
inline constexpr std::string_view kGeneratorStream = "mt19937_64/seed_seq-v1";

struct GenConfig {
  std::size_t n_leaves = 10;
  double p_r = 0.1;  // split probability, 0 <= p_r < 1
  std::uint64_t seed = 0;
  std::size_t max_steps = 100'000;
  std::size_t max_attempts = 1'000;  // regenerations after parallel-edge collisions
};

// Throws std::invalid_argument for n_leaves < 2 or p_r outside [0, 1).
void check_config(const GenConfig& cfg);

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GenEvent { Coalesce, Split };

struct GenStep {
  std::vector<int> taxa_before;
  std::vector<int> selected;
  GenEvent event = GenEvent::Coalesce;
  std::vector<int> new_taxa;
  std::vector<std::pair<int, int>> new_arcs;  // (parent, child)
};

struct GenTrace {
  std::vector<GenStep> steps;
  std::size_t retries = 0;
};

// Raw directed graph on vertices 1..vertex_count; leaves are 1..n_leaves.
struct RawDag {
  int vertex_count = 0;
  std::size_t n_leaves = 0;
  int root = 0;
  std::vector<std::pair<int, int>> arcs;
};

// Source of events and lineage choices for the backwards process.
class LineageEvents {
 public:
  virtual ~LineageEvents() = default;
  // Called while at least two lineages remain.
  virtual GenEvent next_event(std::span<const int> taxa) = 0;
  // Picks one of `candidates`.
  virtual int pick(std::span<const int> candidates) = 0;
};

// Uniform choices driven by a seeded mt19937_64. The mapping from engine
// output to choices is fixed here, so results do not depend on the standard
// library's distribution implementations.
class RandomLineageEvents : public LineageEvents {
 public:
  RandomLineageEvents(double p_r, std::uint64_t seed, std::uint64_t attempt = 0);
  GenEvent next_event(std::span<const int> taxa) override;
  int pick(std::span<const int> candidates) override;

 private:
  std::uint64_t below(std::uint64_t bound);
  double p_r_;
  std::mt19937_64 engine_;
};

// Replays a fixed list of steps (event plus selected taxa).
class ScriptedLineageEvents : public LineageEvents {
 public:
  struct Step {
    GenEvent event;
    std::vector<int> selected;
  };
  explicit ScriptedLineageEvents(std::vector<Step> script) : script_(std::move(script)) {}
  GenEvent next_event(std::span<const int> taxa) override;
  int pick(std::span<const int> candidates) override;

 private:
  std::vector<Step> script_;
  std::size_t step_ = 0;
  std::size_t picked_ = 0;
};

// Runs the backwards process. Throws GeneratorError after max_steps steps.
std::pair<RawDag, GenTrace> simulate_lineages(std::size_t n_leaves, LineageEvents& events, std::size_t max_steps);
std::pair<RawDag, GenTrace> generate_raw_dag(const GenConfig& cfg);

// Suppresses (1,1) vertices and resolves non-binary vertices. Vertex names are
// the raw ids; leaf i is labelled "x<i>". Throws NetworkError when suppression
// would create parallel arcs.
DirectedNetwork binarize_and_suppress(const RawDag& raw);

// Root suppression plus dropping orientations; propagates suppress_root's error.
UndirectedNetwork to_undirected(const DirectedNetwork& d);

struct GeneratedNetwork {
  UndirectedNetwork network;
  DirectedNetwork rooted;
  GenTrace trace;
};

// Full pipeline with regeneration after parallel-edge collisions; attempt k
// draws from the stream seeded with (seed, k).
GeneratedNetwork generate_network(const GenConfig& cfg);

}  // namespace orient
