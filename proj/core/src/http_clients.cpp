#include "semweave/http_clients.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "semweave/errors.hpp"

namespace semweave {

namespace {

httplib::Headers auth_headers(const std::string& credential_env) {
  httplib::Headers headers;
  if (!credential_env.empty()) {
    const char* token = std::getenv(credential_env.c_str());
    if (token != nullptr && token[0] != '\0') {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }
  return headers;
}

// Posts the payload, retrying per config; returns the named string field
// of the JSON response or nullopt after exhausting every attempt.
std::optional<std::string> post_for_field(const EndpointConfig& config,
                                          const std::string& payload,
                                          const std::string& field,
                                          std::string& error) {
  auto [base, path] = split_url(config.url);
  httplib::Client client(base);
  client.set_connection_timeout(0, config.timeout_ms * 1000);
  client.set_read_timeout(0, config.timeout_ms * 1000);
  client.set_write_timeout(0, config.timeout_ms * 1000);

  int attempts = 1 + std::max(0, config.retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    auto res = client.Post(path, auth_headers(config.credential_env), payload,
                           "application/json");
    if (!res) {
      error = "no response from " + config.url;
      continue;
    }
    if (res->status != 200) {
      error = config.url + " returned status " + std::to_string(res->status);
      continue;
    }
    try {
      auto body = nlohmann::json::parse(res->body);
      if (!body.contains(field) || !body.at(field).is_string()) {
        error = "response missing string field '" + field + "'";
        continue;
      }
      return body.at(field).get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      error = std::string("unparseable response body: ") + e.what();
    }
  }
  return std::nullopt;
}

}  // namespace

std::pair<std::string, std::string> split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ParseError("endpoint url missing scheme: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

HttpTextGenerator::HttpTextGenerator(EndpointConfig config)
    : config_(std::move(config)) {}

std::string HttpTextGenerator::generate(const RoundTripItem& item) {
  nlohmann::json payload;
  payload["graph"] = item.penman;
  std::string error = "endpoint not configured";
  if (config_.configured()) {
    if (auto text = post_for_field(config_, payload.dump(), "text", error)) {
      return *text;
    }
  }
  throw GeneratorUnavailable(error);
}

HttpLlmClient::HttpLlmClient(LlmSettings settings)
    : settings_(std::move(settings)) {}

std::string HttpLlmClient::complete(const std::string& prompt) {
  nlohmann::json payload;
  payload["model"] = settings_.model;
  payload["prompt"] = prompt;
  payload["max_tokens"] = settings_.max_tokens;
  payload["temperature"] = settings_.temperature;
  std::string error = "endpoint not configured";
  if (settings_.endpoint.configured()) {
    if (auto text =
            post_for_field(settings_.endpoint, payload.dump(), "text", error)) {
      return *text;
    }
  }
  throw LlmRequestFailed(error);
}

std::string HttpLlmClient::model_id() const { return settings_.model; }

}  // namespace semweave
