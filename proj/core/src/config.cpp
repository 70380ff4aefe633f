#include "semweave/config.hpp"

#include <json.hpp>

#include "semweave/cache.hpp"
#include "semweave/errors.hpp"

namespace semweave {

namespace {

using nlohmann::json;

const json* find_section(const json& root, const json* acquisition,
                         const std::string& key) {
  if (root.contains(key)) return &root.at(key);
  if (acquisition != nullptr && acquisition->contains(key)) {
    return &acquisition->at(key);
  }
  return nullptr;
}

template <typename T>
void read_field(const json& j, const std::string& key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError("bad value for '" + key + "': " + e.what());
  }
}

EndpointConfig parse_endpoint(const json& j) {
  EndpointConfig endpoint;
  read_field(j, "url", endpoint.url);
  read_field(j, "timeout_ms", endpoint.timeout_ms);
  read_field(j, "retries", endpoint.retries);
  read_field(j, "credential_env", endpoint.credential_env);
  return endpoint;
}

ComplexityVariant complexity_variant_from(const std::string& name) {
  if (name == "main_text") return ComplexityVariant::MainText;
  if (name == "appendix_d") return ComplexityVariant::AppendixD;
  throw ParseError("unknown complexity variant: " + name);
}

EntitiesVariant entities_variant_from(const std::string& name) {
  if (name == "main_text") return EntitiesVariant::MainText;
  if (name == "appendix_d") return EntitiesVariant::AppendixD;
  throw ParseError("unknown entities variant: " + name);
}

}  // namespace

PipelineConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("config root must be a JSON object");

  PipelineConfig config;
  const json* acquisition = nullptr;

  if (root.contains("amr_acquisition")) {
    const json& acq = root.at("amr_acquisition");
    if (!acq.is_object()) {
      throw ParseError("amr_acquisition must be an object");
    }
    acquisition = &acq;
    read_field(acq, "method", config.amr_acquisition.method);
    if (acq.contains("components")) {
      for (const auto& [name, value] : acq.at("components").items()) {
        if (!value.is_string()) {
          throw ParseError("component '" + name + "' must name a model");
        }
        config.amr_acquisition.components[name] = value.get<std::string>();
      }
    }
  }

  if (const json* quality = find_section(root, acquisition, "quality_control")) {
    read_field(*quality, "bleu_threshold", config.quality.bleu_threshold);
    read_field(*quality, "max_ngram", config.quality.max_ngram);
    read_field(*quality, "smoothing_epsilon", config.quality.smoothing_epsilon);
    read_field(*quality, "exclude_failed_from_denominator",
               config.quality.exclude_failed_from_denominator);
    read_field(*quality, "syntactic_validation", config.syntactic_validation);
    read_field(*quality, "semantic_consistency", config.semantic_consistency);
    if (config.quality.bleu_threshold < 0.0 ||
        config.quality.bleu_threshold > 1.0) {
      throw ConstraintViolation("bleu_threshold must lie in [0,1]");
    }
  }

  if (const json* caching = find_section(root, acquisition, "caching")) {
    read_field(*caching, "enabled", config.caching.enabled);
    read_field(*caching, "cache_dir", config.caching.cache_dir);
    read_field(*caching, "compression", config.caching.compression);
    if (config.caching.compression != "gzip" &&
        config.caching.compression != "none") {
      throw ParseError("compression must be \"gzip\" or \"none\"");
    }
  }

  if (root.contains("bridging")) {
    const json& b = root.at("bridging");
    read_field(b, "theta_role", config.bridging.theta_role);
    read_field(b, "strict_role_variation",
               config.bridging.strict_role_variation);
    read_field(b, "cross_document_only", config.bridging.cross_document_only);
    read_field(b, "min_strength", config.bridging.min_strength);
    if (b.contains("relation_table_file")) {
      std::string path = b.at("relation_table_file").get<std::string>();
      config.bridging.relation_table =
          PredicateRelationTable::from_text(read_text_file(path));
    }
    if (config.bridging.theta_role < 0.0 || config.bridging.theta_role > 1.0) {
      throw ConstraintViolation("theta_role must lie in [0,1]");
    }
    if (config.bridging.min_strength < 0.0 ||
        config.bridging.min_strength > 1.0) {
      throw ConstraintViolation("min_strength must lie in [0,1]");
    }
  }

  if (root.contains("scoring")) {
    const json& s = root.at("scoring");
    if (s.contains("weights")) {
      const json& w = s.at("weights");
      read_field(w, "alpha", config.scoring.weights.alpha);
      read_field(w, "beta", config.scoring.weights.beta);
      read_field(w, "gamma", config.scoring.weights.gamma);
      read_field(w, "delta", config.scoring.weights.delta);
    }
    read_field(s, "max_depth", config.scoring.max_depth);
    read_field(s, "k_max", config.scoring.k_max);
    if (s.contains("complexity_variant")) {
      config.scoring.complexity_variant = complexity_variant_from(
          s.at("complexity_variant").get<std::string>());
    }
    if (s.contains("entities_variant")) {
      config.scoring.entities_variant =
          entities_variant_from(s.at("entities_variant").get<std::string>());
    }
  }

  auto violations = validate_weights(config.scoring.weights);
  if (!violations.empty()) {
    std::string message = "strength weights rejected:";
    for (const auto& v : violations) message += "\n  - " + v;
    throw ConstraintViolation(message);
  }

  if (root.contains("generation")) {
    const json& g = root.at("generation");
    read_field(g, "max_questions", config.generation.max_questions);
    read_field(g, "include_paths", config.generation.include_paths);
    read_field(g, "max_path_frames", config.generation.max_path_frames);
    read_field(g, "path_bridge_limit", config.generation.path_bridge_limit);
    if (g.contains("kind_quotas")) {
      for (const auto& [kind, quota] : g.at("kind_quotas").items()) {
        bridge_kind_from_string(kind);  // rejects unknown kinds
        config.generation.kind_quotas[kind] = quota.get<int>();
      }
    }
  }

  if (root.contains("generator_endpoint")) {
    config.generator_endpoint = parse_endpoint(root.at("generator_endpoint"));
  }

  if (root.contains("llm")) {
    const json& l = root.at("llm");
    if (l.contains("endpoint")) {
      config.llm.endpoint = parse_endpoint(l.at("endpoint"));
    }
    read_field(l, "model", config.llm.model);
    read_field(l, "max_tokens", config.llm.max_tokens);
    read_field(l, "temperature", config.llm.temperature);
  }

  return config;
}

PipelineConfig load_config(const std::string& path) {
  return parse_config(read_text_file(path));
}

std::string config_to_json(const PipelineConfig& config) {
  json root;
  json& acq = root["amr_acquisition"];
  acq["method"] = config.amr_acquisition.method;
  acq["components"] = json::object();
  for (const auto& [name, model] : config.amr_acquisition.components) {
    acq["components"][name] = model;
  }
  acq["quality_control"] = {
      {"bleu_threshold", config.quality.bleu_threshold},
      {"max_ngram", config.quality.max_ngram},
      {"smoothing_epsilon", config.quality.smoothing_epsilon},
      {"exclude_failed_from_denominator",
       config.quality.exclude_failed_from_denominator},
      {"syntactic_validation", config.syntactic_validation},
      {"semantic_consistency", config.semantic_consistency},
  };
  acq["caching"] = {
      {"enabled", config.caching.enabled},
      {"cache_dir", config.caching.cache_dir},
      {"compression", config.caching.compression},
  };

  root["bridging"] = {
      {"theta_role", config.bridging.theta_role},
      {"strict_role_variation", config.bridging.strict_role_variation},
      {"cross_document_only", config.bridging.cross_document_only},
      {"min_strength", config.bridging.min_strength},
  };

  root["scoring"] = {
      {"weights",
       {{"alpha", config.scoring.weights.alpha},
        {"beta", config.scoring.weights.beta},
        {"gamma", config.scoring.weights.gamma},
        {"delta", config.scoring.weights.delta}}},
      {"max_depth", config.scoring.max_depth},
      {"k_max", config.scoring.k_max},
      {"complexity_variant",
       config.scoring.complexity_variant == ComplexityVariant::MainText
           ? "main_text"
           : "appendix_d"},
      {"entities_variant",
       config.scoring.entities_variant == EntitiesVariant::MainText
           ? "main_text"
           : "appendix_d"},
  };

  json quotas = json::object();
  for (const auto& [kind, quota] : config.generation.kind_quotas) {
    quotas[kind] = quota;
  }
  root["generation"] = {
      {"max_questions", config.generation.max_questions},
      {"kind_quotas", quotas},
      {"include_paths", config.generation.include_paths},
      {"max_path_frames", config.generation.max_path_frames},
      {"path_bridge_limit", config.generation.path_bridge_limit},
  };

  root["generator_endpoint"] = {
      {"url", config.generator_endpoint.url},
      {"timeout_ms", config.generator_endpoint.timeout_ms},
      {"retries", config.generator_endpoint.retries},
      {"credential_env", config.generator_endpoint.credential_env},
  };

  root["llm"] = {
      {"endpoint",
       {{"url", config.llm.endpoint.url},
        {"timeout_ms", config.llm.endpoint.timeout_ms},
        {"retries", config.llm.endpoint.retries},
        {"credential_env", config.llm.endpoint.credential_env}}},
      {"model", config.llm.model},
      {"max_tokens", config.llm.max_tokens},
      {"temperature", config.llm.temperature},
  };

  return root.dump(2) + "\n";
}

}  // namespace semweave
