#include "sbm/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sbm {
namespace {

template <typename T>
T read_value(std::istream& in, const char* what) {
  T value{};
  if (!(in >> value)) {
    throw std::runtime_error(std::string("parse error: expected ") + what);
  }
  return value;
}

void expect_end(std::istream& in, const char* what) {
  std::string extra;
  if (in >> extra) {
    throw std::runtime_error(std::string(what) + ": trailing content '" + extra + "'");
  }
}

}  // namespace

void write_graph(std::ostream& out, const Graph& graph) {
  out << graph.n() << ' ' << graph.num_edges() << '\n';
  for (const Edge& e : graph.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph read_graph(std::istream& in) {
  const long long n = read_value<long long>(in, "node count");
  const long long m = read_value<long long>(in, "edge count");
  if (n < 0 || m < 0) throw std::runtime_error("graph header: negative count");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    const long long u = read_value<long long>(in, "edge endpoint");
    const long long v = read_value<long long>(in, "edge endpoint");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::runtime_error("graph: endpoint out of range on edge " + std::to_string(e));
    }
    if (u == v) throw std::runtime_error("graph: self-loop at node " + std::to_string(u));
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  expect_end(in, "graph");
  try {
    return Graph::from_edges(static_cast<int>(n), edges);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

void write_assignment(std::ostream& out, const Assignment& sigma) {
  out << sigma.n() << ' ' << sigma.k() << '\n';
  for (Label c : sigma.labels()) out << (c - 1) << '\n';
}

Assignment read_assignment(std::istream& in) {
  const int n = read_value<int>(in, "node count");
  const int k = read_value<int>(in, "community count");
  if (n < 0 || k < 1) throw std::runtime_error("assignment header: bad n or K");
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = read_value<int>(in, "label");
    if (labels[i] < 0 || labels[i] >= k) {
      throw std::runtime_error("assignment: label " + std::to_string(labels[i]) +
                               " at node " + std::to_string(i) + " outside [0, K)");
    }
  }
  expect_end(in, "assignment");
  return Assignment::from_zero_based(labels, k);
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_graph(in);
}

void save_graph(const std::filesystem::path& path, const Graph& graph) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_graph(out, graph);
}

Assignment load_assignment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_assignment(in);
}

void save_assignment(const std::filesystem::path& path, const Assignment& sigma) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_assignment(out, sigma);
}

}  // namespace sbm
