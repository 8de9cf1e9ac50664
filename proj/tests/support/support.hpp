#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "orient/generator.hpp"
#include "orient/io.hpp"
#include "orient/network.hpp"

namespace orient::test {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(ORIENT_FIXTURE_DIR) / name;
}

inline UndirectedNetwork fixture(const std::string& name) { return read_network_file(fixture_path(name)); }

inline Vertex vid(const UndirectedNetwork& n, std::string_view id) { return n.find(id).value(); }

inline std::size_t eid(const UndirectedNetwork& n, std::string_view a, std::string_view b) {
  return n.edge_index(vid(n, a), vid(n, b)).value();
}

// Triangle a-b-c with leaves x1, x2, x3 hanging off a, b, c (leaf ids equal labels).
inline UndirectedNetwork triangle() {
  return parse_network(
      "leaf x1 x1\nleaf x2 x2\nleaf x3 x3\n"
      "edge a b\nedge b c\nedge a c\nedge a x1\nedge b x2\nedge c x3\n");
}

inline UndirectedNetwork caterpillar(std::size_t leaves) {
  std::string text;
  for (std::size_t i = 1; i <= leaves; ++i) text += "leaf l" + std::to_string(i) + " t" + std::to_string(i) + "\n";
  text += "edge l1 s2\n";
  for (std::size_t i = 2; i < leaves; ++i) {
    text += "edge s" + std::to_string(i) + " l" + std::to_string(i) + "\n";
    if (i + 1 < leaves) text += "edge s" + std::to_string(i) + " s" + std::to_string(i + 1) + "\n";
  }
  text += "edge s" + std::to_string(leaves - 1) + " l" + std::to_string(leaves) + "\n";
  return parse_network(text);
}

struct CorpusEntry {
  std::string id;
  UndirectedNetwork network;
  DirectedNetwork rooted;
};

// Generated networks for (leaves, p_r) over seeds [first, first + count).
inline std::vector<CorpusEntry> generated(std::size_t leaves, double p_r, std::uint64_t first, std::size_t count) {
  std::vector<CorpusEntry> out;
  for (std::uint64_t s = first; s < first + count; ++s) {
    GenConfig cfg;
    cfg.n_leaves = leaves;
    cfg.p_r = p_r;
    cfg.seed = s;
    auto g = generate_network(cfg);
    out.push_back({std::to_string(leaves) + "/" + std::to_string(p_r) + "/" + std::to_string(s), std::move(g.network),
                   std::move(g.rooted)});
  }
  return out;
}

}  // namespace orient::test
