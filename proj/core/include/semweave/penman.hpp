#ifndef SEMWEAVE_PENMAN_HPP
#define SEMWEAVE_PENMAN_HPP

#include <map>
#include <string>
#include <vector>

namespace semweave {

// Target of an edge: either a reference to a node (by variable) or a
// constant leaf (quoted string, number, or closed-class symbol).
struct Value {
  enum class Kind { Node, StringConst, NumberConst, SymbolConst };

  Kind kind = Kind::Node;
  std::string text;  // node id, or constant text without quotes

  bool is_node() const { return kind == Kind::Node; }
  bool is_constant() const { return kind != Kind::Node; }

  static Value node(std::string id) { return {Kind::Node, std::move(id)}; }
  static Value string_const(std::string s) { return {Kind::StringConst, std::move(s)}; }
  static Value number_const(std::string s) { return {Kind::NumberConst, std::move(s)}; }
  static Value symbol_const(std::string s) { return {Kind::SymbolConst, std::move(s)}; }

  bool operator==(const Value& other) const = default;
};

struct AmrEdge {
  std::string source;  // node id
  std::string role;    // raw label, e.g. ":ARG0"
  Value target;

  bool operator==(const AmrEdge& other) const = default;
};

// A rooted, acyclic, possibly re-entrant AMR graph for one sentence.
// Immutable after construction; every node is reachable from the root.
struct AmrGraph {
  std::string graph_id;
  std::string doc_id;
  std::string source_text;
  std::string root;
  // node id -> concept label, in declaration order
  std::vector<std::pair<std::string, std::string>> nodes;
  std::vector<AmrEdge> edges;

  const std::string* concept_of(const std::string& node_id) const;
  bool has_node(const std::string& node_id) const;
  std::vector<AmrEdge> edges_from(const std::string& node_id) const;
};

// Parse a single PENMAN block. Variable names are preserved as node ids.
// Throws EmptyInput, UnbalancedParens, PenmanSyntax,
// DuplicateConceptForVariable, DanglingReference, CyclicGraph.
AmrGraph parse_penman(const std::string& text, const std::string& graph_id = "",
                      const std::string& doc_id = "");

// Serialize to single-line PENMAN. Each node's concept is declared at its
// first visit; re-entrancies are emitted as bare variable references.
// parse_penman(serialize_penman(g)) is isomorphic to g.
std::string serialize_penman(const AmrGraph& graph);

// Length in edges of the longest directed path starting at the root.
// Constants count as leaf path endpoints; a single-node graph has depth 0.
int graph_depth(const AmrGraph& graph);

// Longest directed path starting at `node_id` within the graph.
int subgraph_depth(const AmrGraph& graph, const std::string& node_id);

// ---- PENMAN corpus files ----------------------------------------------------
//
// One graph per blank-line-separated block. '#' lines before a block are
// metadata; "::id" and "::snt" carry graph id and source text.

struct PenmanBlock {
  std::string id;    // from ::id, may be empty
  std::string snt;   // from ::snt, may be empty
  std::string body;  // the PENMAN text
};

std::vector<PenmanBlock> read_penman_blocks(const std::string& file_contents);

std::string format_penman_block(const AmrGraph& graph);

// Lossless JSON round-trip used for cache artifacts: preserves node and
// edge order exactly.
std::string graph_to_json(const AmrGraph& graph);
AmrGraph graph_from_json(const std::string& json_text);  // throws ParseError

}  // namespace semweave

#endif  // SEMWEAVE_PENMAN_HPP
