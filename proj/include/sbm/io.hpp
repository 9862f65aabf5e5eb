#pragma once

#include <filesystem>
#include <iosfwd>

#include "sbm/core.hpp"

namespace sbm {

// Graph text format:
//   n m
//   i j        (m lines, 0-based endpoints, i < j, sorted lexicographically)
//
// The reader accepts either endpoint order but rejects self-loops,
// out-of-range endpoints, duplicate edges and an edge count that disagrees
// with the header.
void write_graph(std::ostream& out, const Graph& graph);
Graph read_graph(std::istream& in);

// Assignment text format:
//   n K
//   c          (n lines, 0-based community label in [0, K))
void write_assignment(std::ostream& out, const Assignment& sigma);
Assignment read_assignment(std::istream& in);

Graph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const Graph& graph);
Assignment load_assignment(const std::filesystem::path& path);
void save_assignment(const std::filesystem::path& path, const Assignment& sigma);

}  // namespace sbm
