#ifndef SEMWEAVE_TESTS_SUPPORT_HPP
#define SEMWEAVE_TESTS_SUPPORT_HPP

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "semweave/penman.hpp"

namespace semweave::testing {

// Graphs preserve variable names, so isomorphism reduces to equality of
// root, node set, and edge multiset; only ordering may change across a
// serialize/parse round trip.
inline bool same_graph(const AmrGraph& a, const AmrGraph& b) {
  if (a.root != b.root) return false;
  auto nodes_a = a.nodes;
  auto nodes_b = b.nodes;
  std::sort(nodes_a.begin(), nodes_a.end());
  std::sort(nodes_b.begin(), nodes_b.end());
  if (nodes_a != nodes_b) return false;

  auto edge_key = [](const AmrEdge& e) {
    return e.source + "\x01" + e.role + "\x01" +
           std::to_string(static_cast<int>(e.target.kind)) + "\x01" +
           e.target.text;
  };
  std::multiset<std::string> edges_a, edges_b;
  for (const auto& e : a.edges) edges_a.insert(edge_key(e));
  for (const auto& e : b.edges) edges_b.insert(edge_key(e));
  return edges_a == edges_b;
}

// Longest root-to-leaf path recomputed by plain recursion, independent of
// the library's memoized version.
inline int depth_oracle(const AmrGraph& graph, const std::string& node) {
  int best = 0;
  for (const auto& edge : graph.edges) {
    if (edge.source != node) continue;
    int len = 1;
    if (edge.target.is_node()) len += depth_oracle(graph, edge.target.text);
    best = std::max(best, len);
  }
  return best;
}

// Random rooted DAG with re-entrancies and constant leaves. Tree edges and
// extras both point from lower to higher node index, so acyclicity holds by
// construction and every node stays reachable from v0.
inline AmrGraph random_graph(std::mt19937& rng) {
  static const std::vector<std::string> concepts = {
      "announce-01", "report-01",   "company", "person", "product",
      "develop-02",  "increase-01", "city",    "event",  "idea"};
  static const std::vector<std::string> roles = {
      ":ARG0", ":ARG1",     ":ARG2",     ":ARGM-TMP", ":ARGM-LOC",
      ":mod",  ":ARGM-CAU", ":quant",    ":time",     ":purpose"};

  std::uniform_int_distribution<int> node_count(2, 9);
  int n = node_count(rng);
  AmrGraph g;
  g.root = "v0";
  for (int i = 0; i < n; ++i) {
    g.nodes.emplace_back("v" + std::to_string(i),
                         concepts[rng() % concepts.size()]);
  }
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    g.edges.push_back({"v" + std::to_string(parent(rng)),
                       roles[rng() % roles.size()],
                       Value::node("v" + std::to_string(i))});
  }
  std::uniform_int_distribution<int> extra_count(0, 3);
  for (int k = extra_count(rng); k > 0 && n > 2; --k) {
    std::uniform_int_distribution<int> lo(0, n - 2);
    int u = lo(rng);
    std::uniform_int_distribution<int> hi(u + 1, n - 1);
    int w = hi(rng);
    g.edges.push_back({"v" + std::to_string(u), roles[rng() % roles.size()],
                       Value::node("v" + std::to_string(w))});
  }
  std::uniform_int_distribution<int> leaf_count(0, 3);
  for (int k = leaf_count(rng); k > 0; --k) {
    std::string source = "v" + std::to_string(rng() % n);
    switch (rng() % 4) {
      case 0:
        g.edges.push_back({source, ":name-of",
                           Value::string_const("Quoted \"name\" \\ here")});
        break;
      case 1:
        g.edges.push_back({source, ":quant", Value::number_const("42")});
        break;
      case 2:
        g.edges.push_back({source, ":polarity", Value::symbol_const("-")});
        break;
      default:
        g.edges.push_back({source, ":value", Value::number_const("3.5")});
        break;
    }
  }
  return g;
}

inline std::string temp_dir(const std::string& tag) {
  auto base = std::filesystem::temp_directory_path() /
              ("semweave-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::create_directories(base);
  return base.string();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace semweave::testing

#endif  // SEMWEAVE_TESTS_SUPPORT_HPP
