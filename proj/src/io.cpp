#include "orient/io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace orient {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    Line l{number, {}};
    for (std::string tok; in >> tok;) l.tokens.push_back(std::move(tok));
    if (!l.tokens.empty()) lines.push_back(std::move(l));
    if (end == text.size()) break;
  }
  return lines;
}

void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n)
    throw ParseError(l.number, "'" + l.tokens[0] + "' takes " + std::to_string(n - 1) + " fields, got " +
                                   std::to_string(l.tokens.size() - 1));
}

std::string with_header(const std::vector<std::string>& header, std::vector<std::string> lines) {
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& h : header) out += "# " + h + "\n";
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace

RawGraph parse_raw_graph(std::string_view text) {
  RawGraph g;
  std::map<std::pair<std::string, std::string>, std::size_t> seen_edges;
  std::map<std::string, std::size_t> seen_leaves;
  for (const auto& l : tokenize(text)) {
    const auto& kw = l.tokens[0];
    if (kw == "leaf") {
      expect_arity(l, 3);
      if (auto [it, fresh] = seen_leaves.emplace(l.tokens[1], l.number); !fresh)
        throw ParseError(l.number, "leaf " + l.tokens[1] + " already declared on line " + std::to_string(it->second));
      g.leaves.emplace_back(l.tokens[1], l.tokens[2]);
    } else if (kw == "edge") {
      expect_arity(l, 3);
      auto key = std::minmax(l.tokens[1], l.tokens[2]);
      if (auto [it, fresh] = seen_edges.emplace(std::pair{key.first, key.second}, l.number); !fresh)
        throw ParseError(l.number, "duplicate edge " + l.tokens[1] + " " + l.tokens[2] + " (first on line " +
                                       std::to_string(it->second) + ")");
      g.edges.emplace_back(l.tokens[1], l.tokens[2]);
    } else {
      throw ParseError(l.number, "unknown record '" + kw + "'");
    }
  }
  return g;
}

UndirectedNetwork parse_network(std::string_view text) { return UndirectedNetwork::from_raw(parse_raw_graph(text)); }

UndirectedNetwork read_network_file(const std::filesystem::path& path) { return parse_network(read_text_file(path)); }

std::string format_network(const UndirectedNetwork& n, const std::vector<std::string>& header) {
  std::vector<std::string> lines;
  for (Vertex v = 0; v < n.vertex_count(); ++v)
    if (n.is_leaf(v)) lines.push_back("leaf " + n.name(v) + " " + n.label(v));
  for (const auto& e : n.edges()) lines.push_back("edge " + n.name(e.u) + " " + n.name(e.v));
  return with_header(header, std::move(lines));
}

void write_network_file(const std::filesystem::path& path, const UndirectedNetwork& n,
                        const std::vector<std::string>& header) {
  write_text_file(path, format_network(n, header));
}

DirectedNetwork parse_directed(std::string_view text) {
  std::optional<std::pair<std::string, std::size_t>> root;
  std::map<std::string, std::string> labels;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::set<std::pair<std::string, std::string>> seen;
  std::set<std::string> ids;
  for (const auto& l : tokenize(text)) {
    const auto& kw = l.tokens[0];
    if (kw == "root") {
      expect_arity(l, 2);
      if (root) throw ParseError(l.number, "second root declaration");
      root.emplace(l.tokens[1], l.number);
      ids.insert(l.tokens[1]);
    } else if (kw == "leaf") {
      expect_arity(l, 3);
      if (!labels.emplace(l.tokens[1], l.tokens[2]).second)
        throw ParseError(l.number, "leaf " + l.tokens[1] + " declared twice");
      ids.insert(l.tokens[1]);
    } else if (kw == "arc") {
      expect_arity(l, 3);
      if (!seen.emplace(l.tokens[1], l.tokens[2]).second)
        throw ParseError(l.number, "duplicate arc " + l.tokens[1] + " " + l.tokens[2]);
      arcs.emplace_back(l.tokens[1], l.tokens[2]);
      ids.insert(l.tokens[1]);
      ids.insert(l.tokens[2]);
    } else {
      throw ParseError(l.number, "unknown record '" + kw + "'");
    }
  }
  if (!root) throw ParseError(0, "missing root declaration");
  std::vector<std::string> names(ids.begin(), ids.end());
  std::map<std::string, Vertex> index;
  std::vector<std::string> leaf_labels;
  for (const auto& name : names) {
    index.emplace(name, static_cast<Vertex>(index.size()));
    auto it = labels.find(name);
    leaf_labels.push_back(it == labels.end() ? std::string{} : it->second);
  }
  std::vector<Arc> arc_list;
  for (const auto& [a, b] : arcs) arc_list.push_back({index.at(a), index.at(b)});
  auto d = DirectedNetwork::build(std::move(names), std::move(leaf_labels), std::move(arc_list));
  if (d.name(d.root()) != root->first)
    throw ParseError(root->second, "declared root " + root->first + " is not the source vertex " + d.name(d.root()));
  return d;
}

DirectedNetwork read_directed_file(const std::filesystem::path& path) { return parse_directed(read_text_file(path)); }

std::string format_directed(const DirectedNetwork& d, const std::vector<std::string>& header) {
  std::vector<std::string> lines;
  lines.push_back("root " + d.name(d.root()));
  for (Vertex v = 0; v < d.vertex_count(); ++v)
    if (!d.label(v).empty()) lines.push_back("leaf " + d.name(v) + " " + d.label(v));
  for (const auto& a : d.arcs()) lines.push_back("arc " + d.name(a.from) + " " + d.name(a.to));
  return with_header(header, std::move(lines));
}

void write_directed_file(const std::filesystem::path& path, const DirectedNetwork& d,
                         const std::vector<std::string>& header) {
  write_text_file(path, format_directed(d, header));
}

std::string to_extended_newick(const DirectedNetwork& d) {
  std::vector<int> tag(d.vertex_count(), 0);
  std::vector<char> written(d.vertex_count(), 0);
  int next_tag = 0;
  for (Vertex v = 0; v < d.vertex_count(); ++v)
    if (d.is_reticulation(v)) tag[v] = ++next_tag;

  std::function<std::string(Vertex)> emit = [&](Vertex v) -> std::string {
    const std::string suffix = tag[v] ? "#H" + std::to_string(tag[v]) : "";
    if (tag[v] && written[v]) return suffix;
    written[v] = 1;
    if (d.outdegree(v) == 0) return d.label(v) + suffix;
    std::string s = "(";
    for (std::size_t i = 0; i < d.outdegree(v); ++i) {
      if (i) s += ",";
      s += emit(d.children(v)[i]);
    }
    return s + ")" + suffix;
  };
  return emit(d.root()) + ";";
}

std::string format_basis(const UndirectedNetwork& n, const CycleBasis& b) {
  std::string out;
  for (std::size_t i = 0; i < b.cycles.size(); ++i) {
    const auto& c = b.cycles[i];
    out += "cycle " + std::to_string(i + 1) + " length " + std::to_string(c.length()) + ":";
    for (auto v : c.vertices) out += " " + n.name(v);
    out += "\n";
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace orient
