#include "semweave/penman.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "semweave/errors.hpp"

namespace semweave {

namespace {

struct Token {
  enum class Kind { Open, Close, Slash, Atom, String };
  Kind kind;
  std::string text;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(') {
      tokens.push_back({Token::Kind::Open, "("});
      ++i;
    } else if (c == ')') {
      tokens.push_back({Token::Kind::Close, ")"});
      ++i;
    } else if (c == '/') {
      tokens.push_back({Token::Kind::Slash, "/"});
      ++i;
    } else if (c == '"') {
      std::string value;
      ++i;
      bool closed = false;
      while (i < text.size()) {
        char d = text[i];
        if (d == '\\' && i + 1 < text.size()) {
          value.push_back(text[i + 1]);
          i += 2;
          continue;
        }
        if (d == '"') {
          closed = true;
          ++i;
          break;
        }
        value.push_back(d);
        ++i;
      }
      if (!closed) throw PenmanSyntax("unterminated string literal");
      tokens.push_back({Token::Kind::String, value});
    } else {
      std::string value;
      while (i < text.size()) {
        char d = text[i];
        if (std::isspace(static_cast<unsigned char>(d)) || d == '(' ||
            d == ')' || d == '/' || d == '"') {
          break;
        }
        value.push_back(d);
        ++i;
      }
      tokens.push_back({Token::Kind::Atom, value});
    }
  }
  return tokens;
}

bool is_number_literal(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  bool digits = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits = true;
    ++i;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
      ++i;
    }
  }
  return digits && i == s.size();
}

const std::set<std::string>& mode_words() {
  static const std::set<std::string> words = {"imperative", "expressive",
                                              "interrogative"};
  return words;
}

struct Parser {
  const std::vector<Token>& tokens;
  std::size_t pos = 0;
  AmrGraph graph;
  std::set<std::string> declared;
  // bare atoms that must resolve to declared variables: edge index
  std::vector<std::size_t> pending_refs;

  const Token& peek() const {
    if (pos >= tokens.size()) throw UnbalancedParens("unexpected end of input");
    return tokens[pos];
  }

  Token next() {
    Token t = peek();
    ++pos;
    return t;
  }

  void expect(Token::Kind kind, const std::string& what) {
    if (peek().kind != kind) {
      throw PenmanSyntax("expected " + what + ", got '" + peek().text + "'");
    }
    ++pos;
  }

  std::string parse_node() {
    expect(Token::Kind::Open, "'('");
    if (peek().kind != Token::Kind::Atom) {
      throw PenmanSyntax("expected variable, got '" + peek().text + "'");
    }
    std::string var = next().text;
    expect(Token::Kind::Slash, "'/'");
    if (peek().kind != Token::Kind::Atom) {
      throw PenmanSyntax("expected concept, got '" + peek().text + "'");
    }
    std::string concept_label = next().text;
    if (declared.count(var)) {
      throw DuplicateConceptForVariable("variable '" + var +
                                        "' declared twice");
    }
    declared.insert(var);
    graph.nodes.emplace_back(var, concept_label);

    while (peek().kind != Token::Kind::Close) {
      const Token& t = peek();
      if (t.kind != Token::Kind::Atom || t.text.empty() || t.text[0] != ':') {
        throw PenmanSyntax("expected role label, got '" + t.text + "'");
      }
      std::string role = next().text;
      parse_target(var, role);
    }
    expect(Token::Kind::Close, "')'");
    return var;
  }

  void parse_target(const std::string& source, const std::string& role) {
    const Token& t = peek();
    if (t.kind == Token::Kind::Open) {
      std::string child = parse_node();
      graph.edges.push_back({source, role, Value::node(child)});
      return;
    }
    if (t.kind == Token::Kind::String) {
      graph.edges.push_back({source, role, Value::string_const(next().text)});
      return;
    }
    if (t.kind != Token::Kind::Atom) {
      throw PenmanSyntax("expected edge target, got '" + t.text + "'");
    }
    std::string atom = next().text;
    if (is_number_literal(atom)) {
      graph.edges.push_back({source, role, Value::number_const(atom)});
    } else if (atom == "-" || atom == "+" || mode_words().count(atom)) {
      graph.edges.push_back({source, role, Value::symbol_const(atom)});
    } else {
      // a variable reference; declaration may still be ahead
      pending_refs.push_back(graph.edges.size());
      graph.edges.push_back({source, role, Value::node(atom)});
    }
  }
};

void check_acyclic(const AmrGraph& graph) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& e : graph.edges) {
    if (e.target.is_node()) adj[e.source].push_back(e.target.text);
  }
  enum class Color { White, Gray, Black };
  std::map<std::string, Color> color;
  for (const auto& [id, _] : graph.nodes) color[id] = Color::White;

  std::vector<std::pair<std::string, std::size_t>> stack;
  for (const auto& [start, _] : graph.nodes) {
    if (color[start] != Color::White) continue;
    stack.push_back({start, 0});
    color[start] = Color::Gray;
    while (!stack.empty()) {
      auto& [node, idx] = stack.back();
      auto& out = adj[node];
      if (idx < out.size()) {
        const std::string& child = out[idx++];
        if (color[child] == Color::Gray) {
          throw CyclicGraph("directed cycle through '" + child + "'");
        }
        if (color[child] == Color::White) {
          color[child] = Color::Gray;
          stack.push_back({child, 0});
        }
      } else {
        color[node] = Color::Black;
        stack.pop_back();
      }
    }
  }
}

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void serialize_node(const AmrGraph& graph, const std::string& node_id,
                    std::set<std::string>& emitted, std::string& out) {
  emitted.insert(node_id);
  out += "(" + node_id + " / " + *graph.concept_of(node_id);
  for (const auto& edge : graph.edges) {
    if (edge.source != node_id) continue;
    out += " " + edge.role + " ";
    switch (edge.target.kind) {
      case Value::Kind::Node:
        if (emitted.count(edge.target.text)) {
          out += edge.target.text;
        } else {
          serialize_node(graph, edge.target.text, emitted, out);
        }
        break;
      case Value::Kind::StringConst:
        out += quote_string(edge.target.text);
        break;
      case Value::Kind::NumberConst:
      case Value::Kind::SymbolConst:
        out += edge.target.text;
        break;
    }
  }
  out += ")";
}

int longest_from(const AmrGraph& graph, const std::string& node_id,
                 std::map<std::string, int>& memo) {
  auto it = memo.find(node_id);
  if (it != memo.end()) return it->second;
  int best = 0;
  for (const auto& edge : graph.edges) {
    if (edge.source != node_id) continue;
    int len = edge.target.is_node()
                  ? 1 + longest_from(graph, edge.target.text, memo)
                  : 1;
    best = std::max(best, len);
  }
  memo[node_id] = best;
  return best;
}

}  // namespace

const std::string* AmrGraph::concept_of(const std::string& node_id) const {
  for (const auto& [id, concept_label] : nodes) {
    if (id == node_id) return &concept_label;
  }
  return nullptr;
}

bool AmrGraph::has_node(const std::string& node_id) const {
  return concept_of(node_id) != nullptr;
}

std::vector<AmrEdge> AmrGraph::edges_from(const std::string& node_id) const {
  std::vector<AmrEdge> out;
  for (const auto& edge : edges) {
    if (edge.source == node_id) out.push_back(edge);
  }
  return out;
}

AmrGraph parse_penman(const std::string& text, const std::string& graph_id,
                      const std::string& doc_id) {
  auto tokens = tokenize(text);
  if (tokens.empty()) throw EmptyInput("empty PENMAN input");

  int balance = 0;
  for (const auto& t : tokens) {
    if (t.kind == Token::Kind::Open) ++balance;
    if (t.kind == Token::Kind::Close) --balance;
    if (balance < 0) throw UnbalancedParens("')' before matching '('");
  }
  if (balance != 0) throw UnbalancedParens("unclosed '('");

  Parser parser{tokens};
  parser.graph.graph_id = graph_id;
  parser.graph.doc_id = doc_id;
  parser.graph.root = parser.parse_node();
  if (parser.pos != tokens.size()) {
    throw PenmanSyntax("trailing content after graph: '" +
                       tokens[parser.pos].text + "'");
  }
  for (std::size_t idx : parser.pending_refs) {
    const std::string& var = parser.graph.edges[idx].target.text;
    if (!parser.declared.count(var)) {
      throw DanglingReference("reference to undeclared variable '" + var +
                              "'");
    }
  }
  check_acyclic(parser.graph);
  return parser.graph;
}

std::string serialize_penman(const AmrGraph& graph) {
  std::string out;
  std::set<std::string> emitted;
  serialize_node(graph, graph.root, emitted, out);
  return out;
}

int graph_depth(const AmrGraph& graph) {
  return subgraph_depth(graph, graph.root);
}

int subgraph_depth(const AmrGraph& graph, const std::string& node_id) {
  std::map<std::string, int> memo;
  return longest_from(graph, node_id, memo);
}

std::vector<PenmanBlock> read_penman_blocks(const std::string& file_contents) {
  std::vector<PenmanBlock> blocks;
  std::istringstream in(file_contents);
  std::string line;
  PenmanBlock current;
  bool in_block = false;

  auto flush = [&] {
    if (in_block && !current.body.empty()) blocks.push_back(current);
    current = PenmanBlock{};
    in_block = false;
  };

  auto take_meta = [&](const std::string& meta) {
    auto id_pos = meta.find("::id");
    if (id_pos != std::string::npos) {
      std::istringstream rest(meta.substr(id_pos + 4));
      rest >> current.id;
    }
    auto snt_pos = meta.find("::snt");
    if (snt_pos != std::string::npos) {
      std::string snt = meta.substr(snt_pos + 5);
      std::size_t start = snt.find_first_not_of(" \t");
      current.snt = start == std::string::npos ? "" : snt.substr(start);
    }
  };

  while (std::getline(in, line)) {
    std::string trimmed = line;
    while (!trimmed.empty() &&
           std::isspace(static_cast<unsigned char>(trimmed.back()))) {
      trimmed.pop_back();
    }
    if (trimmed.empty()) {
      flush();
      continue;
    }
    in_block = true;
    if (trimmed[0] == '#') {
      take_meta(trimmed);
      continue;
    }
    if (!current.body.empty()) current.body += "\n";
    current.body += trimmed;
  }
  flush();
  return blocks;
}

std::string format_penman_block(const AmrGraph& graph) {
  std::string out;
  if (!graph.graph_id.empty()) out += "# ::id " + graph.graph_id + "\n";
  if (!graph.source_text.empty()) out += "# ::snt " + graph.source_text + "\n";
  out += serialize_penman(graph) + "\n";
  return out;
}

std::string graph_to_json(const AmrGraph& graph) {
  nlohmann::json j;
  j["graph_id"] = graph.graph_id;
  j["doc_id"] = graph.doc_id;
  j["source_text"] = graph.source_text;
  j["root"] = graph.root;
  j["nodes"] = nlohmann::json::array();
  for (const auto& [id, concept_label] : graph.nodes) {
    j["nodes"].push_back({id, concept_label});
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& edge : graph.edges) {
    j["edges"].push_back({edge.source, edge.role,
                          static_cast<int>(edge.target.kind),
                          edge.target.text});
  }
  return j.dump();
}

AmrGraph graph_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad graph JSON: ") + e.what());
  }
  AmrGraph g;
  try {
    g.graph_id = j.at("graph_id").get<std::string>();
    g.doc_id = j.at("doc_id").get<std::string>();
    g.source_text = j.at("source_text").get<std::string>();
    g.root = j.at("root").get<std::string>();
    for (const auto& n : j.at("nodes")) {
      g.nodes.emplace_back(n.at(0).get<std::string>(),
                           n.at(1).get<std::string>());
    }
    for (const auto& e : j.at("edges")) {
      AmrEdge edge;
      edge.source = e.at(0).get<std::string>();
      edge.role = e.at(1).get<std::string>();
      edge.target.kind = static_cast<Value::Kind>(e.at(2).get<int>());
      edge.target.text = e.at(3).get<std::string>();
      g.edges.push_back(edge);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad graph JSON: ") + e.what());
  }
  return g;
}

}  // namespace semweave
