#ifndef SEMWEAVE_CONFIG_HPP
#define SEMWEAVE_CONFIG_HPP

#include <map>
#include <string>

#include "semweave/bridging.hpp"
#include "semweave/generation.hpp"
#include "semweave/quality.hpp"
#include "semweave/scoring.hpp"

namespace semweave {

struct EndpointConfig {
  std::string url;  // empty: endpoint disabled
  int timeout_ms = 10000;
  int retries = 1;
  std::string credential_env;  // name of the env var holding the token

  bool configured() const { return !url.empty(); }
};

struct LlmSettings {
  EndpointConfig endpoint;
  std::string model = "default";
  int max_tokens = 256;
  double temperature = 0.0;
};

struct AmrAcquisitionConfig {
  std::string method = "stepwise_sota";
  std::map<std::string, std::string> components;
};

struct CachingConfig {
  bool enabled = true;
  std::string cache_dir = "./amr_cache";
  std::string compression = "gzip";  // "gzip" | "none"
};

struct PipelineConfig {
  AmrAcquisitionConfig amr_acquisition;
  QualityConfig quality;
  bool syntactic_validation = true;
  bool semantic_consistency = true;
  CachingConfig caching;
  BridgeConfig bridging;
  ScoringConfig scoring;
  GenerationConfig generation;
  EndpointConfig generator_endpoint;  // AMR-to-text service for the gate
  LlmSettings llm;                    // question generation service
};

// Parses the JSON configuration (quality_control and caching may sit
// inside amr_acquisition or at top level; bridging/scoring/generation
// sections are optional). Weight constraints are enforced at load.
// Throws ParseError, ConstraintViolation.
PipelineConfig parse_config(const std::string& json_text);

// Throws FileNotFound, then as parse_config.
PipelineConfig load_config(const std::string& path);

std::string config_to_json(const PipelineConfig& config);

}  // namespace semweave

#endif  // SEMWEAVE_CONFIG_HPP
