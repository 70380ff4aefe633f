#ifndef SEMWEAVE_HTTP_CLIENTS_HPP
#define SEMWEAVE_HTTP_CLIENTS_HPP

#include <string>

#include "semweave/config.hpp"
#include "semweave/generation.hpp"
#include "semweave/quality.hpp"

namespace semweave {

// "http://host:port/path" -> (scheme://host:port, /path)
std::pair<std::string, std::string> split_url(const std::string& url);

// AMR-to-text service: POST {"graph": penman} -> {"text": ...}.
// Retries per config; throws on exhaustion or malformed payloads.
class HttpTextGenerator : public TextGenerator {
 public:
  explicit HttpTextGenerator(EndpointConfig config);
  std::string generate(const RoundTripItem& item) override;

 private:
  EndpointConfig config_;
};

// Completion service: POST {"model", "prompt", "max_tokens",
// "temperature"} -> {"text": ...}.
class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(LlmSettings settings);
  std::string complete(const std::string& prompt) override;
  std::string model_id() const override;

 private:
  LlmSettings settings_;
};

}  // namespace semweave

#endif  // SEMWEAVE_HTTP_CLIENTS_HPP
