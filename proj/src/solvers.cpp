#include "orient/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "orient/constrained.hpp"

namespace orient {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Oriented: return "ORIENTED";
    case Verdict::No: return "NO";
    case Verdict::ProbablyNo: return "PROBABLY_NO";
    case Verdict::Timeout: return "TIMEOUT";
  }
  return "?";
}

namespace {

bool quick_tree_child(const OrientedView& o) {
  const auto& re = o.network.edge(o.root_edge);
  if (o.indegree[re.u] == 2 && o.indegree[re.v] == 2) return false;
  for (Vertex v = 0; v < o.network.vertex_count(); ++v) {
    if (o.network.is_leaf(v)) continue;
    bool tree_child = false;
    o.for_each_child(v, [&](Vertex c) { tree_child = tree_child || o.indegree[c] == 1; });
    if (!tree_child) return false;
  }
  return true;
}

bool quick_stack_free(const OrientedView& o) {
  for (Vertex v = 0; v < o.network.vertex_count(); ++v) {
    if (o.indegree[v] != 2) continue;
    bool stacked = false;
    o.for_each_child(v, [&](Vertex c) { stacked = stacked || o.indegree[c] == 2; });
    if (stacked) return false;
  }
  return true;
}

}  // namespace

ClassPredicate tree_child_class() {
  return {"tree-child", [](const DirectedNetwork& d) { return is_tree_child(d); }, quick_tree_child};
}
ClassPredicate stack_free_class() {
  return {"stack-free", [](const DirectedNetwork& d) { return is_stack_free(d); }, quick_stack_free};
}
ClassPredicate any_class() {
  return {"any", [](const DirectedNetwork&) { return true; }, [](const OrientedView&) { return true; }};
}

ClassPredicate class_by_name(std::string_view name) {
  if (name == "tree-child") return tree_child_class();
  if (name == "stack-free") return stack_free_class();
  if (name == "any") return any_class();
  throw std::invalid_argument("unknown network class '" + std::string(name) + "'");
}

std::vector<std::vector<Vertex>> cycle_candidates(const CycleBasis& b) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& c : b.cycles) {
    auto vs = c.vertices;
    std::sort(vs.begin(), vs.end());
    out.push_back(std::move(vs));
  }
  return out;
}

bool placement_admissible(const CycleBasis& b, std::span<const Vertex> reticulations) {
  const auto r = b.cycles.size();
  if (reticulations.size() != r) return false;
  // Kuhn's augmenting paths, cycles on the left.
  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> owner(r, kFree);  // reticulation -> cycle
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t cycle) {
    for (std::size_t j = 0; j < r; ++j) {
      if (visited[j] || !b.cycles[cycle].contains(reticulations[j])) continue;
      visited[j] = 1;
      if (owner[j] == kFree || augment(owner[j])) {
        owner[j] = cycle;
        return true;
      }
    }
    return false;
  };
  for (std::size_t c = 0; c < r; ++c) {
    visited.assign(r, 0);
    if (!augment(c)) return false;
  }
  return true;
}

std::uint64_t placement_objective(const DistanceMatrix& dist, std::span<const Vertex> placement) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < placement.size(); ++i)
    for (std::size_t j = i + 1; j < placement.size(); ++j) total += dist(placement[i], placement[j]);
  return total;
}

MaximalPlacements maximizing_placements(const UndirectedNetwork& n, const CycleBasis& b, const DistanceMatrix& dist,
                                        std::optional<std::chrono::steady_clock::time_point> deadline) {
  const auto cands = cycle_candidates(b);
  const auto r = cands.size();
  MaximalPlacements result;
  if (r == 0) return result;

  // pair_bound[j][k]: largest distance between candidates of cycles j and k.
  std::vector<std::vector<std::uint64_t>> pair_bound(r, std::vector<std::uint64_t>(r, 0));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = j + 1; k < r; ++k)
      for (auto x : cands[j])
        for (auto y : cands[k]) pair_bound[j][k] = std::max<std::uint64_t>(pair_bound[j][k], dist(x, y));
  // tail_pairs[i]: sum of pair_bound over i <= j < k.
  std::vector<std::uint64_t> tail_pairs(r + 1, 0);
  for (std::size_t i = r; i-- > 0;) {
    tail_pairs[i] = tail_pairs[i + 1];
    for (std::size_t k = i + 1; k < r; ++k) tail_pairs[i] += pair_bound[i][k];
  }

  bool found = false;
  std::uint64_t nodes = 0;
  std::vector<Vertex> chosen;
  std::function<void(std::uint64_t)> extend = [&](std::uint64_t partial) {
    if (result.timed_out) return;
    if (deadline && ++nodes % 4096 == 0 && std::chrono::steady_clock::now() > *deadline) {
      result.timed_out = true;
      return;
    }
    const auto i = chosen.size();
    if (i == r) {
      if (!found || partial > result.objective) {
        found = true;
        result.objective = partial;
        result.placements.clear();
      }
      if (partial == result.objective) result.placements.push_back(chosen);
      return;
    }
    if (found) {
      std::uint64_t bound = partial + tail_pairs[i];
      for (std::size_t j = i; j < r; ++j) {
        std::uint64_t best = 0;
        for (auto v : cands[j]) {
          std::uint64_t s = 0;
          for (auto w : chosen) s += dist(v, w);
          best = std::max(best, s);
        }
        bound += best;
      }
      if (bound < result.objective) return;
    }
    for (auto v : cands[i]) {
      if (n.is_leaf(v)) continue;
      std::uint64_t gain = 0;
      bool spaced = true;
      for (auto w : chosen) {
        const auto d = dist(v, w);
        if (d < 2) {
          spaced = false;
          break;
        }
        gain += d;
      }
      if (!spaced) continue;
      chosen.push_back(v);
      extend(partial + gain);
      chosen.pop_back();
    }
  };
  extend(0);
  if (result.timed_out) result.placements.clear();
  return result;
}

namespace {

using Clock = std::chrono::steady_clock;

// A lexicographically ordered family of reticulation placements, addressed by
// index. decode() returns false for indices that must be skipped.
struct PlacementSource {
  std::uint64_t count = 0;
  std::function<bool(std::uint64_t, std::vector<Vertex>&)> decode;
};

struct Success {
  std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
  std::vector<Vertex> placement;
  std::size_t root_edge = 0;
  std::optional<DirectedNetwork> network;
};

class PlacementSearch {
 public:
  PlacementSearch(const UndirectedNetwork& n, const PlacementSource& source, const ClassPredicate& cls,
                  const SearchOptions& options)
      : n_(n), source_(source), cls_(cls), options_(options) {}

  Outcome run(Verdict exhausted, Clock::time_point started) {
    const auto threads = std::max(1U, options_.threads);
    if (threads == 1 || source_.count < 2) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back([this] { work(); });
      for (auto& t : pool) t.join();
    }

    Outcome out;
    out.counters.placements_tried = placements_.load();
    out.counters.constrained_calls = calls_.load();
    if (best_.network) {
      out.verdict = Verdict::Oriented;
      out.network = std::move(best_.network);
      out.placement = best_.placement;
      std::sort(out.placement.begin(), out.placement.end());
      out.root_edge = n_.edge(best_.root_edge);
    } else {
      out.verdict = timed_out_.load() ? Verdict::Timeout : exhausted;
    }
    out.counters.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return out;
  }

 private:
  void work() {
    ConstrainedOrienter orienter(n_);
    std::vector<Vertex> placement;
    std::vector<std::uint8_t> indegree(n_.vertex_count(), 1);
    for (;;) {
      const auto index = next_.fetch_add(1);
      if (index >= source_.count || index > best_index_.load()) return;
      if (options_.deadline && Clock::now() > *options_.deadline) {
        timed_out_ = true;
        return;
      }
      if (!source_.decode(index, placement)) continue;
      ++placements_;
      for (auto v : placement) indegree[v] = 2;
      const bool done = try_root_edges(index, placement, indegree, orienter);
      for (auto v : placement) indegree[v] = 1;
      if (done) return;
    }
  }

  // True once this placement produced an accepted orientation.
  bool try_root_edges(std::uint64_t index, const std::vector<Vertex>& placement,
                      const std::vector<std::uint8_t>& indegree, ConstrainedOrienter& orienter) {
    for (std::size_t e = 0; e < n_.edge_count(); ++e) {
      ++calls_;
      if (!orienter.run(e, indegree)) continue;
      if (cls_.quick && !options_.on_feasible &&
          !cls_.quick(OrientedView{n_, e, orienter.directions(), indegree}))
        continue;
      auto network = orienter.materialize();
      const bool accepted = cls_.test(network);
      if (options_.on_feasible) {
        std::lock_guard lock(mutex_);
        options_.on_feasible(FeasibleOrientation{placement, n_.edge(e), network, accepted});
      }
      if (!accepted) continue;
      std::lock_guard lock(mutex_);
      if (index < best_.index) {
        best_ = Success{index, placement, e, std::move(network)};
        best_index_ = index;
      }
      return true;
    }
    return false;
  }

  const UndirectedNetwork& n_;
  const PlacementSource& source_;
  const ClassPredicate& cls_;
  const SearchOptions& options_;

  std::atomic<std::uint64_t> next_{0};
  std::atomic<std::uint64_t> best_index_{std::numeric_limits<std::uint64_t>::max()};
  std::atomic<std::uint64_t> placements_{0};
  std::atomic<std::uint64_t> calls_{0};
  std::atomic<bool> timed_out_{false};
  std::mutex mutex_;
  Success best_;
};

// Whether the vertices `left` can be assigned to distinct cycles cands[from..].
bool assignable(const std::vector<std::vector<Vertex>>& cands, std::size_t from, std::span<const Vertex> left) {
  const auto k = left.size();
  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> owner(k, kFree);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t cycle) {
    for (std::size_t j = 0; j < k; ++j) {
      if (visited[j] || !std::binary_search(cands[cycle].begin(), cands[cycle].end(), left[j])) continue;
      visited[j] = 1;
      if (owner[j] == kFree || augment(owner[j])) {
        owner[j] = cycle;
        return true;
      }
    }
    return false;
  };
  for (std::size_t c = from; c < cands.size(); ++c) {
    visited.assign(k, 0);
    if (!augment(c)) return false;
  }
  return true;
}

// True iff no lexicographically smaller tuple of the product covers the same set.
bool first_tuple_of_its_set(const std::vector<std::vector<Vertex>>& cands, std::span<const Vertex> tuple) {
  std::vector<Vertex> left;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    left.assign(tuple.begin() + static_cast<std::ptrdiff_t>(i), tuple.end());
    for (std::size_t j = 1; j < left.size(); ++j) {
      const auto v = left[j];
      if (v >= tuple[i] || !std::binary_search(cands[i].begin(), cands[i].end(), v)) continue;
      std::vector<Vertex> rest = left;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      if (assignable(cands, i + 1, rest)) return false;
    }
  }
  return true;
}

Outcome finish_early(Verdict verdict, Clock::time_point started) {
  Outcome out;
  out.verdict = verdict;
  out.counters.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return out;
}

}  // namespace

Outcome exact_c_orientation(const UndirectedNetwork& n, const ClassPredicate& cls, const SearchOptions& options) {
  const auto started = Clock::now();
  PlacementSource source;
  std::vector<std::vector<Vertex>> cands;
  if (reticulation_number(n) == 0) {
    // A tree has one placement, the empty one.
    source.count = 1;
    source.decode = [](std::uint64_t, std::vector<Vertex>& out) {
      out.clear();
      return true;
    };
  } else {
    cands = cycle_candidates(minimal_cycle_basis(n));
    source.count = 1;
    for (const auto& c : cands)
      source.count = source.count > std::numeric_limits<std::uint64_t>::max() / c.size()
                         ? std::numeric_limits<std::uint64_t>::max()
                         : source.count * c.size();
    source.decode = [&cands, &n](std::uint64_t index, std::vector<Vertex>& out) {
      // Mixed radix, first cycle most significant.
      out.assign(cands.size(), 0);
      for (std::size_t i = cands.size(); i-- > 0;) {
        out[i] = cands[i][index % cands[i].size()];
        index /= cands[i].size();
      }
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (n.is_leaf(out[i])) return false;
        for (std::size_t j = 0; j < i; ++j)
          if (out[i] == out[j]) return false;
      }
      return first_tuple_of_its_set(cands, out);
    };
  }
  return PlacementSearch(n, source, cls, options).run(Verdict::No, started);
}

Outcome tree_child_heuristic(const UndirectedNetwork& n, const SearchOptions& options) {
  const auto started = Clock::now();
  const auto cls = tree_child_class();
  std::vector<std::vector<Vertex>> placements;
  if (reticulation_number(n) == 0) {
    placements.emplace_back();
  } else {
    const auto basis = minimal_cycle_basis(n);
    const DistanceMatrix dist(n);
    auto best = maximizing_placements(n, basis, dist, options.deadline);
    if (best.timed_out) return finish_early(Verdict::Timeout, started);
    placements = std::move(best.placements);
    if (placements.empty()) return finish_early(Verdict::ProbablyNo, started);
  }
  PlacementSource source;
  source.count = placements.size();
  source.decode = [&placements](std::uint64_t index, std::vector<Vertex>& out) {
    out = placements[index];
    return true;
  };
  return PlacementSearch(n, source, cls, options).run(Verdict::ProbablyNo, started);
}

Outcome baseline_c_orientation(const UndirectedNetwork& n, const ClassPredicate& cls, const BaselineOptions& options) {
  const auto started = Clock::now();
  const auto internal = n.internal_vertices();
  const auto r = reticulation_number(n);
  const auto subsets = binomial(internal.size(), r);
  if (subsets > options.max_subsets)
    throw BudgetExceeded("baseline needs " + std::to_string(subsets) + " reticulation sets, budget is " +
                         std::to_string(options.max_subsets));

  std::optional<CycleBasis> basis;
  if (options.matching_pruning && r > 0) basis = minimal_cycle_basis(n);

  PlacementSource source;
  source.count = subsets;
  source.decode = [&](std::uint64_t index, std::vector<Vertex>& out) {
    // Unrank the index-th r-subset of `internal` in lexicographic order.
    out.resize(r);
    std::size_t start = 0;
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t c = start;; ++c) {
        const auto block = binomial(internal.size() - c - 1, r - j - 1);
        if (index < block) {
          out[j] = internal[c];
          start = c + 1;
          break;
        }
        index -= block;
      }
    }
    return !basis || placement_admissible(*basis, out);
  };
  return PlacementSearch(n, source, cls, options).run(Verdict::No, started);
}

std::string check_orientation(const UndirectedNetwork& n, const Outcome& outcome, const ClassPredicate& cls) {
  if (outcome.verdict != Verdict::Oriented) return "verdict is not ORIENTED";
  if (!outcome.network) return "no network attached";
  const auto& d = *outcome.network;
  if (!is_acyclic(d)) return "orientation has a directed cycle";
  if (!validate_directed(d.names(), d.labels(), d.arcs()).ok())
    return "orientation is not a directed binary phylogenetic network";

  std::vector<std::string> retics, placed;
  for (auto v : d.reticulations()) retics.push_back(d.name(v));
  for (auto v : outcome.placement) placed.push_back(n.name(v));
  std::sort(retics.begin(), retics.end());
  std::sort(placed.begin(), placed.end());
  if (retics != placed) return "reticulations differ from the placement";
  if (retics.size() != reticulation_number(n)) return "wrong number of reticulations";

  if (!cls.test(d)) return "orientation is not in class " + cls.name;

  if (outcome.root_edge) {
    auto kids = d.children(d.root());
    std::vector<std::string> got{d.name(kids[0]), d.name(kids[1])};
    std::vector<std::string> want{n.name(outcome.root_edge->u), n.name(outcome.root_edge->v)};
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) return "root is not on the reported root edge";
  }
  try {
    const auto back = suppress_root(d);
    if (!(back == n) && !isomorphic(back, n)) return "root suppression does not give back the input";
  } catch (const NetworkError& e) {
    return std::string("root suppression failed: ") + e.what();
  }
  return {};
}

}  // namespace orient
