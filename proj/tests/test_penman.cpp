#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "semweave/errors.hpp"
#include "semweave/penman.hpp"
#include "support.hpp"

using namespace semweave;
using namespace semweave::testing;

TEST_CASE("single node graph") {
  auto g = parse_penman("(c / city)", "g1", "d1");
  CHECK(g.root == "c");
  CHECK(g.graph_id == "g1");
  CHECK(g.doc_id == "d1");
  REQUIRE(g.nodes.size() == 1);
  CHECK(g.nodes[0].first == "c");
  CHECK(g.nodes[0].second == "city");
  CHECK(g.edges.empty());
  CHECK(graph_depth(g) == 0);
}

TEST_CASE("nested nodes and role edges") {
  auto g = parse_penman(
      "(a / announce-01 :ARG0 (c / company) :ARG1 (p / product :mod (n / "
      "new)))");
  CHECK(g.root == "a");
  CHECK(g.nodes.size() == 4);
  REQUIRE(g.edges.size() == 3);
  CHECK(g.edges[0].source == "a");
  CHECK(g.edges[0].role == ":ARG0");
  CHECK(g.edges[0].target == Value::node("c"));
  // nested subtrees finish before the enclosing edge is recorded
  CHECK(g.edges[1].source == "p");
  CHECK(g.edges[1].role == ":mod");
  CHECK(g.edges[2].source == "a");
  CHECK(g.edges[2].role == ":ARG1");
  CHECK(graph_depth(g) == 2);
  CHECK(subgraph_depth(g, "p") == 1);
  CHECK(subgraph_depth(g, "n") == 0);
}

TEST_CASE("constant classification") {
  auto g = parse_penman(
      "(x / thing :name \"Acme Corp\" :quant 42 :frac 3.5 :neg -7 "
      ":polarity - :plus + :mode imperative)");
  REQUIRE(g.edges.size() == 7);
  CHECK(g.edges[0].target == Value::string_const("Acme Corp"));
  CHECK(g.edges[1].target == Value::number_const("42"));
  CHECK(g.edges[2].target == Value::number_const("3.5"));
  CHECK(g.edges[3].target == Value::number_const("-7"));
  CHECK(g.edges[4].target == Value::symbol_const("-"));
  CHECK(g.edges[5].target == Value::symbol_const("+"));
  CHECK(g.edges[6].target == Value::symbol_const("imperative"));
}

TEST_CASE("string escapes") {
  auto g = parse_penman(R"((x / thing :name "say \"hi\" \\ there"))");
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].target == Value::string_const("say \"hi\" \\ there"));
}

TEST_CASE("re-entrancy by variable reference") {
  auto g = parse_penman(
      "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))");
  REQUIRE(g.edges.size() == 3);
  CHECK(g.edges[1].source == "g");
  CHECK(g.edges[1].target == Value::node("b"));
  CHECK(g.nodes.size() == 3);
}

TEST_CASE("forward reference resolves") {
  auto g = parse_penman("(a / and :op1 x :op2 (x / thing))");
  CHECK(g.nodes.size() == 2);
  CHECK(g.edges[0].target == Value::node("x"));
}

TEST_CASE("dangling reference rejected") {
  CHECK_THROWS_AS(parse_penman("(a / and :op1 zz)"), DanglingReference);
}

TEST_CASE("mode words are constants, not references") {
  CHECK_NOTHROW(parse_penman("(s / say-01 :mode expressive)"));
  CHECK_NOTHROW(parse_penman("(s / say-01 :mode interrogative)"));
}

TEST_CASE("duplicate concept declaration rejected") {
  CHECK_THROWS_AS(
      parse_penman("(a / and :op1 (x / thing) :op2 (x / object))"),
      DuplicateConceptForVariable);
}

TEST_CASE("cycle rejected") {
  CHECK_THROWS_AS(
      parse_penman("(a / alpha :ARG0 (b / beta :ARG0 a))"), CyclicGraph);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_penman(""), EmptyInput);
  CHECK_THROWS_AS(parse_penman("   \n\t "), EmptyInput);
  CHECK_THROWS_AS(parse_penman("(a / alpha"), UnbalancedParens);
  CHECK_THROWS_AS(parse_penman("a / alpha)"), UnbalancedParens);
  CHECK_THROWS_AS(parse_penman("(a / alpha) extra"), PenmanSyntax);
  CHECK_THROWS_AS(parse_penman("(a / alpha :ARG0 (b / beta) junk)"),
                  PenmanSyntax);
  CHECK_THROWS_AS(parse_penman("(a alpha)"), PenmanSyntax);
  CHECK_THROWS_AS(parse_penman("(x / thing :name \"unterminated)"),
                  PenmanSyntax);
}

TEST_CASE("serializer declares each node once") {
  auto g = parse_penman(
      "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))");
  std::string text = serialize_penman(g);
  CHECK(text ==
        "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))");
}

TEST_CASE("serializer quotes and escapes strings") {
  AmrGraph g;
  g.root = "x";
  g.nodes.emplace_back("x", "thing");
  g.edges.push_back({"x", ":name", Value::string_const("a \"b\" \\c")});
  CHECK(serialize_penman(g) == "(x / thing :name \"a \\\"b\\\" \\\\c\")");
}

TEST_CASE("round trip on randomized graphs") {
  std::mt19937 rng(20240817);
  for (int i = 0; i < 150; ++i) {
    AmrGraph g = random_graph(rng);
    AmrGraph back = parse_penman(serialize_penman(g));
    CAPTURE(i);
    CAPTURE(serialize_penman(g));
    REQUIRE(same_graph(g, back));
  }
}

TEST_CASE("graph depth matches brute-force oracle") {
  std::mt19937 rng(99);
  for (int i = 0; i < 80; ++i) {
    AmrGraph g = random_graph(rng);
    CAPTURE(i);
    CHECK(graph_depth(g) == depth_oracle(g, g.root));
    for (const auto& [node, _] : g.nodes) {
      CHECK(subgraph_depth(g, node) == depth_oracle(g, node));
    }
  }
}

TEST_CASE("depth counts constants as single edges") {
  auto g = parse_penman("(x / thing :quant 42)");
  CHECK(graph_depth(g) == 1);
}

TEST_CASE("penman block reader") {
  std::string file =
      "# ::id doc1.1\n"
      "# ::snt The company announced a product.\n"
      "(a / announce-01 :ARG0 (c / company))\n"
      "\n"
      "# comment without metadata\n"
      "(b / report-01\n"
      "   :ARG0 (p / person))\n"
      "\n\n"
      "(c2 / city)\n";
  auto blocks = read_penman_blocks(file);
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0].id == "doc1.1");
  CHECK(blocks[0].snt == "The company announced a product.");
  CHECK(blocks[0].body == "(a / announce-01 :ARG0 (c / company))");
  CHECK(blocks[1].id == "");
  CHECK(blocks[1].body == "(b / report-01\n   :ARG0 (p / person))");
  CHECK_NOTHROW(parse_penman(blocks[1].body));
  CHECK(blocks[2].body == "(c2 / city)");
}

TEST_CASE("format block round trips through the reader") {
  auto g = parse_penman("(a / announce-01 :ARG0 (c / company))", "doc1/s1",
                        "doc1");
  g.source_text = "Announcement text.";
  auto blocks = read_penman_blocks(format_penman_block(g));
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].id == "doc1/s1");
  CHECK(blocks[0].snt == "Announcement text.");
  CHECK(same_graph(parse_penman(blocks[0].body), g));
}

TEST_CASE("graph json round trip is lossless and order-preserving") {
  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) {
    AmrGraph g = random_graph(rng);
    g.graph_id = "g" + std::to_string(i);
    g.doc_id = "d";
    g.source_text = "text " + std::to_string(i);
    AmrGraph back = graph_from_json(graph_to_json(g));
    CHECK(back.graph_id == g.graph_id);
    CHECK(back.doc_id == g.doc_id);
    CHECK(back.source_text == g.source_text);
    CHECK(back.root == g.root);
    CHECK(back.nodes == g.nodes);
    CHECK(back.edges == g.edges);
  }
  CHECK_THROWS_AS(graph_from_json("not json"), ParseError);
  CHECK_THROWS_AS(graph_from_json("{\"root\": \"x\"}"), ParseError);
}
