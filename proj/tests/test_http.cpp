#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "semweave/errors.hpp"
#include "semweave/http_clients.hpp"
#include "semweave/quality.hpp"

using namespace semweave;

namespace {

// In-process service for driving the clients over a real socket.
class LocalServer {
 public:
  LocalServer() = default;

  ~LocalServer() { stop(); }

  template <typename Handler>
  void handle_post(const std::string& path, Handler handler) {
    server_.Post(path, handler);
  }

  std::string start() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return "http://127.0.0.1:" + std::to_string(port_);
  }

  void stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }

  int port() const { return port_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

RoundTripItem sample_item() {
  return {"d1/s1", "The storm damaged the town.",
          "(d / damage-01 :ARG0 (s / storm) :ARG1 (t / town))"};
}

}  // namespace

TEST_CASE("split_url separates base and path") {
  auto [base, path] = split_url("http://localhost:8080/v1/generate");
  CHECK(base == "http://localhost:8080");
  CHECK(path == "/v1/generate");

  auto [bare_base, bare_path] = split_url("http://example.test:9");
  CHECK(bare_base == "http://example.test:9");
  CHECK(bare_path == "/");

  auto [deep_base, deep_path] = split_url("https://h/one/two/three");
  CHECK(deep_base == "https://h");
  CHECK(deep_path == "/one/two/three");

  CHECK_THROWS_WITH_AS(split_url("localhost:8080/x"),
                       doctest::Contains("endpoint url missing scheme"),
                       ParseError);
}

TEST_CASE("text generator round trips a graph payload") {
  LocalServer server;
  std::string seen_graph;
  server.handle_post("/gen", [&](const httplib::Request& req,
                                 httplib::Response& res) {
    auto body = nlohmann::json::parse(req.body);
    seen_graph = body.at("graph").get<std::string>();
    res.set_content(R"({"text":"The storm damaged the town."})",
                    "application/json");
  });
  auto base = server.start();

  EndpointConfig config;
  config.url = base + "/gen";
  HttpTextGenerator generator(config);
  auto item = sample_item();
  CHECK(generator.generate(item) == "The storm damaged the town.");
  CHECK(seen_graph == item.penman);
}

TEST_CASE("text generator rejects bad response payloads") {
  LocalServer server;
  server.handle_post("/missing", [](const httplib::Request&,
                                    httplib::Response& res) {
    res.set_content(R"({"output":"wrong key"})", "application/json");
  });
  server.handle_post("/number", [](const httplib::Request&,
                                   httplib::Response& res) {
    res.set_content(R"({"text": 7})", "application/json");
  });
  server.handle_post("/garbled", [](const httplib::Request&,
                                    httplib::Response& res) {
    res.set_content("not json at all", "application/json");
  });
  auto base = server.start();

  EndpointConfig config;
  config.retries = 0;
  auto item = sample_item();

  config.url = base + "/missing";
  CHECK_THROWS_WITH_AS(HttpTextGenerator(config).generate(item),
                       doctest::Contains("missing string field 'text'"),
                       GeneratorUnavailable);
  config.url = base + "/number";
  CHECK_THROWS_AS(HttpTextGenerator(config).generate(item),
                  GeneratorUnavailable);
  config.url = base + "/garbled";
  CHECK_THROWS_WITH_AS(HttpTextGenerator(config).generate(item),
                       doctest::Contains("unparseable response body"),
                       GeneratorUnavailable);
}

TEST_CASE("text generator retries failed attempts") {
  LocalServer server;
  std::atomic<int> calls{0};
  server.handle_post("/flaky", [&](const httplib::Request&,
                                   httplib::Response& res) {
    if (calls.fetch_add(1) == 0) {
      res.status = 500;
      return;
    }
    res.set_content(R"({"text":"recovered"})", "application/json");
  });
  auto base = server.start();

  EndpointConfig config;
  config.url = base + "/flaky";

  SUBCASE("one retry turns a transient 500 into success") {
    config.retries = 1;
    CHECK(HttpTextGenerator(config).generate(sample_item()) == "recovered");
    CHECK(calls.load() == 2);
  }

  SUBCASE("zero retries surfaces the status") {
    config.retries = 0;
    CHECK_THROWS_WITH_AS(HttpTextGenerator(config).generate(sample_item()),
                         doctest::Contains("returned status 500"),
                         GeneratorUnavailable);
    CHECK(calls.load() == 1);
  }
}

TEST_CASE("credential env toggles the bearer header") {
  LocalServer server;
  std::string auth_header = "unset";
  server.handle_post("/gen", [&](const httplib::Request& req,
                                 httplib::Response& res) {
    auth_header = req.has_header("Authorization")
                      ? req.get_header_value("Authorization")
                      : "";
    res.set_content(R"({"text":"ok"})", "application/json");
  });
  auto base = server.start();

  EndpointConfig config;
  config.url = base + "/gen";
  config.credential_env = "SEMWEAVE_TEST_TOKEN";

  setenv("SEMWEAVE_TEST_TOKEN", "sekrit", 1);
  HttpTextGenerator(config).generate(sample_item());
  CHECK(auth_header == "Bearer sekrit");

  unsetenv("SEMWEAVE_TEST_TOKEN");
  HttpTextGenerator(config).generate(sample_item());
  CHECK(auth_header.empty());
}

TEST_CASE("llm client posts completion settings") {
  LocalServer server;
  nlohmann::json seen;
  server.handle_post("/complete", [&](const httplib::Request& req,
                                      httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    res.set_content(
        R"({"text":"Question: Why?\nAnswer: Because."})", "application/json");
  });
  auto base = server.start();

  LlmSettings settings;
  settings.endpoint.url = base + "/complete";
  settings.model = "qg-large";
  settings.max_tokens = 128;
  settings.temperature = 0.25;
  HttpLlmClient client(settings);

  CHECK(client.model_id() == "qg-large");
  CHECK(client.complete("Write a question.") ==
        "Question: Why?\nAnswer: Because.");
  CHECK(seen.at("model") == "qg-large");
  CHECK(seen.at("prompt") == "Write a question.");
  CHECK(seen.at("max_tokens") == 128);
  CHECK(seen.at("temperature") == 0.25);
}

TEST_CASE("unreachable endpoints throw after exhausting attempts") {
  // Bind a port, then release it so the address is known to refuse.
  int dead_port = 0;
  {
    LocalServer probe;
    probe.start();
    dead_port = probe.port();
  }
  std::string dead = "http://127.0.0.1:" + std::to_string(dead_port);

  EndpointConfig config;
  config.url = dead + "/gen";
  config.retries = 0;
  config.timeout_ms = 500;
  CHECK_THROWS_WITH_AS(HttpTextGenerator(config).generate(sample_item()),
                       doctest::Contains("no response from"),
                       GeneratorUnavailable);

  LlmSettings settings;
  settings.endpoint = config;
  CHECK_THROWS_AS(HttpLlmClient(settings).complete("x"), LlmRequestFailed);

  EndpointConfig blank;
  CHECK_THROWS_WITH_AS(HttpTextGenerator(blank).generate(sample_item()),
                       "GeneratorUnavailable: endpoint not configured",
                       GeneratorUnavailable);
}

TEST_CASE("round trip gate runs over a live text service") {
  LocalServer server;
  server.handle_post("/gen", [](const httplib::Request& req,
                                httplib::Response& res) {
    auto body = nlohmann::json::parse(req.body);
    auto graph = body.at("graph").get<std::string>();
    nlohmann::json out;
    // Regenerate faithfully for the storm graph, badly for the other.
    out["text"] = graph.find("damage-01") != std::string::npos
                      ? "The storm damaged the town."
                      : "lorem ipsum dolor sit amet";
    res.set_content(out.dump(), "application/json");
  });
  auto base = server.start();

  EndpointConfig endpoint;
  endpoint.url = base + "/gen";
  HttpTextGenerator generator(endpoint);

  std::vector<RoundTripItem> items{
      sample_item(),
      {"d2/s1", "Crops grew after the rain.",
       "(g / grow-01 :ARG1 (c / crop))"},
  };
  QualityConfig config;
  config.bleu_threshold = 0.72;
  auto gate = round_trip_gate(items, generator, config);

  REQUIRE(gate.items.size() == 2);
  CHECK(gate.items[0].accepted);
  CHECK(gate.items[0].bleu_score == 1.0);
  CHECK_FALSE(gate.items[1].accepted);
  CHECK(gate.failed_count == 0);
  CHECK(gate.retention == 0.5);
}
