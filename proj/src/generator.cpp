#include "orient/generator.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orient {

void check_config(const GenConfig& cfg) {
  if (cfg.n_leaves < 2) throw std::invalid_argument("need at least 2 leaves");
  if (!(cfg.p_r >= 0.0 && cfg.p_r < 1.0)) throw std::invalid_argument("split probability must lie in [0, 1)");
}

RandomLineageEvents::RandomLineageEvents(double p_r, std::uint64_t seed, std::uint64_t attempt) : p_r_(p_r) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(attempt >> 32)};
  engine_.seed(seq);
}

std::uint64_t RandomLineageEvents::below(std::uint64_t bound) {
  // Rejection sampling keeps the choice exactly uniform.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const auto x = engine_();
    if (x >= threshold) return x % bound;
  }
}

GenEvent RandomLineageEvents::next_event(std::span<const int>) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return u < p_r_ ? GenEvent::Split : GenEvent::Coalesce;
}

int RandomLineageEvents::pick(std::span<const int> candidates) { return candidates[below(candidates.size())]; }

GenEvent ScriptedLineageEvents::next_event(std::span<const int>) {
  if (step_ >= script_.size()) throw GeneratorError("script exhausted");
  picked_ = 0;
  return script_[step_++].event;
}

int ScriptedLineageEvents::pick(std::span<const int> candidates) {
  const auto& step = script_.at(step_ - 1);
  if (picked_ >= step.selected.size()) throw GeneratorError("script step has too few selections");
  const int choice = step.selected[picked_++];
  if (std::find(candidates.begin(), candidates.end(), choice) == candidates.end())
    throw GeneratorError("scripted lineage " + std::to_string(choice) + " is not extant");
  return choice;
}

std::pair<RawDag, GenTrace> simulate_lineages(std::size_t n_leaves, LineageEvents& events, std::size_t max_steps) {
  RawDag raw;
  raw.n_leaves = n_leaves;
  GenTrace trace;
  std::vector<int> taxa;
  for (std::size_t i = 1; i <= n_leaves; ++i) taxa.push_back(static_cast<int>(i));
  int next_id = static_cast<int>(n_leaves) + 1;

  auto remove = [&taxa](int t) { taxa.erase(std::find(taxa.begin(), taxa.end(), t)); };

  while (taxa.size() > 1) {
    if (trace.steps.size() >= max_steps)
      throw GeneratorError("lineage process did not finish within " + std::to_string(max_steps) + " steps");
    GenStep step;
    step.taxa_before = taxa;
    step.event = events.next_event(taxa);
    if (step.event == GenEvent::Coalesce) {
      const int a = events.pick(taxa);
      std::vector<int> rest;
      std::copy_if(taxa.begin(), taxa.end(), std::back_inserter(rest), [a](int t) { return t != a; });
      const int b = events.pick(rest);
      step.selected = {std::min(a, b), std::max(a, b)};
      const int parent = next_id++;
      step.new_taxa = {parent};
      for (int child : step.selected) step.new_arcs.emplace_back(parent, child);
      remove(a);
      remove(b);
      taxa.push_back(parent);
    } else {
      const int a = events.pick(taxa);
      step.selected = {a};
      const int p1 = next_id++;
      const int p2 = next_id++;
      step.new_taxa = {p1, p2};
      step.new_arcs = {{p1, a}, {p2, a}};
      remove(a);
      taxa.push_back(p1);
      taxa.push_back(p2);
    }
    raw.arcs.insert(raw.arcs.end(), step.new_arcs.begin(), step.new_arcs.end());
    trace.steps.push_back(std::move(step));
  }
  raw.vertex_count = next_id - 1;
  raw.root = taxa.front();
  return {std::move(raw), std::move(trace)};
}

std::pair<RawDag, GenTrace> generate_raw_dag(const GenConfig& cfg) {
  check_config(cfg);
  RandomLineageEvents events(cfg.p_r, cfg.seed);
  return simulate_lineages(cfg.n_leaves, events, cfg.max_steps);
}

DirectedNetwork binarize_and_suppress(const RawDag& raw) {
  // 1-based ids; new vertices are appended.
  std::vector<std::vector<int>> out(raw.vertex_count + 1), in(raw.vertex_count + 1);
  std::vector<std::string> label(raw.vertex_count + 1);
  std::vector<char> alive(raw.vertex_count + 1, 1);
  alive[0] = 0;
  for (const auto& [p, c] : raw.arcs) {
    out[p].push_back(c);
    in[c].push_back(p);
  }
  for (std::size_t i = 1; i <= raw.n_leaves; ++i) label[i] = "x" + std::to_string(i);

  auto erase_one = [](std::vector<int>& v, int x) { v.erase(std::find(v.begin(), v.end(), x)); };
  auto add_vertex = [&] {
    out.emplace_back();
    in.emplace_back();
    label.emplace_back();
    alive.push_back(1);
    return static_cast<int>(out.size()) - 1;
  };

  // Suppressing a (1,1) vertex leaves every other degree unchanged, so one pass suffices.
  for (int v = 1; v <= raw.vertex_count; ++v) {
    if (in[v].size() != 1 || out[v].size() != 1) continue;
    const int p = in[v][0];
    const int c = out[v][0];
    erase_one(out[p], v);
    erase_one(in[c], v);
    if (std::find(out[p].begin(), out[p].end(), c) != out[p].end())
      throw NetworkError("suppressing vertex " + std::to_string(v) + " creates parallel arcs " + std::to_string(p) +
                         " -> " + std::to_string(c));
    out[p].push_back(c);
    in[c].push_back(p);
    in[v].clear();
    out[v].clear();
    alive[v] = 0;
  }

  for (int v = 1; v <= raw.vertex_count; ++v) {
    if (!alive[v]) continue;
    if (in[v].size() > 2) throw NetworkError("vertex " + std::to_string(v) + " has in-degree above 2");
    if (in[v].size() == 2 && out[v].empty()) {
      // Reticulated leaf: the reticulation keeps the id, a new leaf takes the label.
      const int w = add_vertex();
      out[v].push_back(w);
      in[w].push_back(v);
      label[w] = std::move(label[v]);
      label[v].clear();
    } else if (in[v].size() == 2 && out[v].size() >= 2) {
      const int w = add_vertex();
      for (int c : out[v]) {
        erase_one(in[c], v);
        in[c].push_back(w);
      }
      out[w] = std::move(out[v]);
      out[v] = {w};
      in[w].push_back(v);
    }
    while (out[v].size() > 2) {
      std::sort(out[v].begin(), out[v].end());
      const int w = add_vertex();
      for (int k = 0; k < 2; ++k) {
        const int c = out[v][0];
        out[v].erase(out[v].begin());
        erase_one(in[c], v);
        in[c].push_back(w);
        out[w].push_back(c);
      }
      out[v].push_back(w);
      in[w].push_back(v);
    }
  }
  // A vertex created for an out-degree split can itself need splitting.
  for (int v = raw.vertex_count + 1; v < static_cast<int>(out.size()); ++v)
    if (out[v].size() > 2 || in[v].size() > 2) throw NetworkError("unresolved non-binary vertex");

  std::vector<int> ids;
  for (int v = 1; v < static_cast<int>(out.size()); ++v)
    if (alive[v]) ids.push_back(v);
  std::map<int, Vertex> index;
  std::vector<std::string> names, labels;
  for (auto id : ids) {
    index.emplace(id, static_cast<Vertex>(names.size()));
    names.push_back(std::to_string(id));
    labels.push_back(label[id]);
  }
  std::vector<Arc> arcs;
  for (auto id : ids)
    for (int c : out[id]) arcs.push_back({index.at(id), index.at(c)});
  return DirectedNetwork::build(std::move(names), std::move(labels), std::move(arcs));
}

UndirectedNetwork to_undirected(const DirectedNetwork& d) { return suppress_root(d); }

GeneratedNetwork generate_network(const GenConfig& cfg) {
  check_config(cfg);
  for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    RandomLineageEvents events(cfg.p_r, cfg.seed, attempt);
    auto [raw, trace] = simulate_lineages(cfg.n_leaves, events, cfg.max_steps);
    try {
      auto rooted = binarize_and_suppress(raw);
      auto network = to_undirected(rooted);
      trace.retries = attempt;
      return {std::move(network), std::move(rooted), std::move(trace)};
    } catch (const NetworkError&) {
      // parallel edges; regenerate from the next stream
    }
  }
  throw GeneratorError("no simple network after " + std::to_string(cfg.max_attempts) + " attempts");
}

}  // namespace orient
