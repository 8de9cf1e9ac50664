#pragma once

// Line-based text formats.
//
// Undirected:  leaf <id> <label>   edge <id> <id>
// Directed:    root <id>   leaf <id> <label>   arc <from> <to>
//
// '#' starts a comment. Writers put the header comments first and then the
// data lines sorted lexicographically, so files are stable byte for byte.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orient/cycle_basis.hpp"
#include "orient/network.hpp"

namespace orient {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Syntax only; structural checks are left to validate_undirected.
RawGraph parse_raw_graph(std::string_view text);
// Throws ParseError or NetworkError.
UndirectedNetwork parse_network(std::string_view text);
UndirectedNetwork read_network_file(const std::filesystem::path& path);

std::string format_network(const UndirectedNetwork& n, const std::vector<std::string>& header = {});
void write_network_file(const std::filesystem::path& path, const UndirectedNetwork& n,
                        const std::vector<std::string>& header = {});

DirectedNetwork parse_directed(std::string_view text);
DirectedNetwork read_directed_file(const std::filesystem::path& path);
std::string format_directed(const DirectedNetwork& d, const std::vector<std::string>& header = {});
void write_directed_file(const std::filesystem::path& path, const DirectedNetwork& d,
                         const std::vector<std::string>& header = {});

// Extended Newick: reticulations are tagged #H1, #H2, ... and written in full
// at their first occurrence.
std::string to_extended_newick(const DirectedNetwork& d);

// One line per cycle: "cycle <i> length <L>: v_1 v_2 ...".
std::string format_basis(const UndirectedNetwork& n, const CycleBasis& b);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace orient
