#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "semweave/cache.hpp"
#include "semweave/config.hpp"
#include "semweave/corpus.hpp"
#include "semweave/errors.hpp"
#include "semweave/http_clients.hpp"
#include "semweave/metrics.hpp"
#include "semweave/model.hpp"
#include "semweave/pipeline.hpp"
#include "semweave/version.hpp"

namespace {

using namespace semweave;
using nlohmann::json;

struct CommonOptions {
  std::string config_path;
  std::string corpus_path;
  std::string out_dir = ".";
  bool no_cache = false;
  bool template_only = false;
  int max_questions = -1;
};

PipelineConfig effective_config(const CommonOptions& options) {
  if (options.config_path.empty()) return PipelineConfig{};
  return load_config(options.config_path);
}

struct LoadedCorpus {
  IngestResult ingest;
  CorpusModel model;
  BuildDiagnostics diag;
};

LoadedCorpus load_corpus(const CommonOptions& options,
                         const PipelineConfig& config) {
  LoadedCorpus loaded;
  loaded.ingest = ingest_corpus(options.corpus_path);
  ArtifactCache cache(config.caching.cache_dir,
                      config.caching.enabled && !options.no_cache,
                      config.caching.compression == "gzip");
  loaded.model = build_model(loaded.ingest.records, &loaded.diag, &cache);
  return loaded;
}

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty()) {
    std::cout << contents;
    return;
  }
  write_file_atomic(out_path, contents);
}

json entity_ref_json(const EntityRef& ref) {
  return {{"name", ref.name}, {"concept", ref.concept_label}};
}

json frame_json(const SemanticFrame& frame) {
  json j;
  j["frame_id"] = frame.frame_id;
  j["doc_id"] = frame.doc_id;
  j["graph_id"] = frame.graph_id;
  j["predicate"] = frame.predicate;
  j["depth"] = frame.depth;
  for (const auto& [role, ref] : frame.core_args) {
    j["core_args"][role] = entity_ref_json(ref);
  }
  for (const auto& [role, ref] : frame.non_core_args) {
    j["non_core_args"][role] = entity_ref_json(ref);
  }
  for (const auto& [role, ref] : frame.modifiers) {
    j["modifiers"][role] = entity_ref_json(ref);
  }
  return j;
}

GeneratedQA qa_from_json(const std::string& line) {
  json j = json::parse(line);
  GeneratedQA qa;
  qa.question = j.value("question", "");
  qa.answer = j.value("answer", "");
  qa.bridge_id = j.value("bridge_id", "");
  qa.bridge_ids = j.value("bridge_ids", std::vector<std::string>{});
  qa.kind = bridge_kind_from_string(j.value("bridge_type", "entity"));
  qa.strength = j.value("strength", 0.0);
  qa.hop_count = j.value("hop_count", 2);
  qa.generation_mode = j.value("generation_mode", "template");
  qa.template_id = j.value("template_id", "");
  qa.model_id = j.value("model_id", "");
  qa.difficulty = j.value("difficulty", "");
  qa.question_type = j.value("question_type", "");
  qa.source_docs = j.value("source_docs", std::vector<std::string>{});
  return qa;
}

template <typename Record>
std::vector<Record> read_jsonl(const std::string& path,
                               Record (*parse)(const std::string&)) {
  std::istringstream in(read_text_file(path));
  std::vector<Record> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    records.push_back(parse(line));
  }
  return records;
}

int cmd_parse(const CommonOptions& options, const std::string& out_path) {
  auto config = effective_config(options);
  auto loaded = load_corpus(options, config);
  std::string out;
  for (const auto& graph : loaded.model.graphs) {
    out += graph_to_json(graph);
    out += "\n";
  }
  emit(out_path, out);
  for (const auto& message : loaded.ingest.diagnostics) {
    std::cerr << message << "\n";
  }
  for (const auto& message : loaded.diag.messages) {
    std::cerr << message << "\n";
  }
  int skipped = loaded.ingest.skipped + loaded.diag.skipped;
  return skipped > 0 ? kExitPartial : kExitOk;
}

int cmd_frames(const CommonOptions& options, const std::string& out_path) {
  auto config = effective_config(options);
  auto loaded = load_corpus(options, config);
  std::string out;
  for (const auto& frame : loaded.model.frames) {
    out += frame_json(frame).dump();
    out += "\n";
  }
  emit(out_path, out);
  return kExitOk;
}

int cmd_bridges(const CommonOptions& options, const std::string& out_path) {
  auto config = effective_config(options);
  auto loaded = load_corpus(options, config);
  auto bridges = discover_bridges(loaded.model, config.bridging,
                                  config.scoring);
  emit(out_path, bridges_to_jsonl(bridges));
  return kExitOk;
}

int cmd_score(const CommonOptions& options, const std::string& bridges_path,
              const std::string& out_path) {
  auto config = effective_config(options);
  auto loaded = load_corpus(options, config);
  auto bridges = read_jsonl<Bridge>(bridges_path, bridge_from_json);

  ScoringConfig scoring = config.scoring;
  if (scoring.max_depth <= 0) scoring.max_depth = loaded.model.max_frame_depth;
  if (scoring.k_max <= 0) scoring.k_max = loaded.model.max_complexity;

  std::string out;
  for (auto& bridge : bridges) {
    auto fa = loaded.model.frames_by_id.find(bridge.frame_a);
    auto fb = loaded.model.frames_by_id.find(bridge.frame_b);
    if (fa == loaded.model.frames_by_id.end() ||
        fb == loaded.model.frames_by_id.end()) {
      throw ParseError("bridge " + bridge.bridge_id +
                       " references frames outside the corpus");
    }
    bridge.strength =
        bridge_strength(bridge, fa->second, fb->second,
                        loaded.model.dist_for(fa->second.doc_id),
                        loaded.model.dist_for(fb->second.doc_id), scoring,
                        &loaded.model.cooccurrence);
    out += bridge_to_json(bridge);
    out += "\n";
  }
  emit(out_path, out);
  return kExitOk;
}

int cmd_gate(const CommonOptions& options, const std::string& out_path) {
  auto config = effective_config(options);
  auto loaded = load_corpus(options, config);

  std::vector<RoundTripItem> items;
  for (const auto& graph : loaded.model.graphs) {
    if (graph.source_text.empty()) continue;
    items.push_back(
        {graph.graph_id, graph.source_text, serialize_penman(graph)});
  }

  IdentityGenerator identity;
  std::optional<HttpTextGenerator> remote;
  TextGenerator* generator = &identity;
  if (config.generator_endpoint.configured()) {
    remote.emplace(config.generator_endpoint);
    generator = &*remote;
  }

  auto gate = round_trip_gate(items, *generator, config.quality);
  json j;
  j["retention"] = gate.retention;
  j["accepted"] = gate.accepted_count;
  j["failed"] = gate.failed_count;
  j["threshold"] = config.quality.bleu_threshold;
  j["items"] = json::array();
  for (const auto& item : gate.items) {
    j["items"].push_back({{"graph_id", item.graph_id},
                          {"bleu", item.bleu_score},
                          {"accepted", item.accepted},
                          {"generator_failed", item.generator_failed}});
  }
  emit(out_path, j.dump(2) + "\n");
  return gate.failed_count > 0 ? kExitPartial : kExitOk;
}

int cmd_generate(const CommonOptions& options, const std::string& out_path,
                 const std::string& templates_path) {
  auto config = effective_config(options);
  auto loaded = load_corpus(options, config);
  auto bridges = discover_bridges(loaded.model, config.bridging,
                                  config.scoring);

  GenerationConfig gen_config = config.generation;
  if (options.max_questions >= 0) {
    gen_config.max_questions = options.max_questions;
  }
  TemplateSet templates = templates_path.empty()
                              ? default_templates()
                              : parse_templates(read_text_file(templates_path));

  std::optional<HttpLlmClient> remote;
  LlmClient* client = nullptr;
  if (!options.template_only && config.llm.endpoint.configured()) {
    remote.emplace(config.llm);
    client = &*remote;
  }

  auto qa = synthesize_corpus(bridges, loaded.model.frames_by_id, gen_config,
                              templates, client);
  emit(out_path, qa_to_jsonl(qa));
  return kExitOk;
}

int cmd_report(const CommonOptions& options, const std::string& bridges_path,
               const std::string& qa_path, const std::string& rules_path,
               const std::string& out_path) {
  auto config = effective_config(options);
  auto loaded = load_corpus(options, config);
  auto bridges = read_jsonl<Bridge>(bridges_path, bridge_from_json);
  auto qa = read_jsonl<GeneratedQA>(qa_path, qa_from_json);
  DepthRules rules = rules_path.empty()
                         ? DepthRules{}
                         : parse_depth_rules(read_text_file(rules_path));
  auto report = corpus_report(qa, bridges, loaded.model.frames_by_id, rules);
  emit(out_path, report_to_json(report));
  return kExitOk;
}

int cmd_grid_search(const std::string& ratings_path, double delta,
                    bool all_candidates, const std::string& out_path) {
  auto rated = load_rated_bridges(read_text_file(ratings_path));
  auto grid = default_grid(delta);
  auto outcome = grid_search(grid, rated, !all_candidates);

  json j;
  j["evaluated"] = outcome.ranked.size();
  j["skipped"] = outcome.skipped.size();
  j["top"] = json::array();
  std::size_t limit = std::min<std::size_t>(outcome.ranked.size(), 10);
  for (std::size_t i = 0; i < limit; ++i) {
    const auto& entry = outcome.ranked[i];
    j["top"].push_back({{"alpha", entry.weights.alpha},
                        {"beta", entry.weights.beta},
                        {"gamma", entry.weights.gamma},
                        {"delta", entry.weights.delta},
                        {"rho", entry.rho}});
  }
  if (!outcome.ranked.empty()) j["best"] = j["top"].front();
  emit(out_path, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_run(const CommonOptions& options) {
  auto config = effective_config(options);
  auto ingest = ingest_corpus(options.corpus_path);

  PipelineOptions pipeline_options;
  pipeline_options.out_dir = options.out_dir;
  pipeline_options.no_cache = options.no_cache;
  pipeline_options.template_only = options.template_only;
  pipeline_options.max_questions_override = options.max_questions;

  auto result = run_pipeline(config, ingest.records, pipeline_options);

  json j;
  j["exit_code"] = result.exit_code;
  j["bridges_path"] = result.bridges_path;
  j["qa_path"] = result.qa_path;
  j["report_path"] = result.report_path;
  j["records_in"] = result.records_in;
  j["records_skipped"] = result.records_skipped + ingest.skipped;
  j["bridge_count"] = result.bridge_count;
  j["qa_count"] = result.qa_count;
  j["retention"] = result.retention;
  j["stages"] = json::array();
  for (const auto& stage : result.stages) {
    j["stages"].push_back({{"stage", stage.stage},
                           {"millis", stage.millis},
                           {"items", stage.items},
                           {"cache_hits", stage.cache_hits}});
  }
  j["diagnostics"] = result.diagnostics;
  std::cout << j.dump(2) << "\n";

  if (result.exit_code == kExitOk && ingest.skipped > 0) return kExitPartial;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semantic graph weaving and QA synthesis"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOptions common;
  std::string out_path;
  std::string bridges_path;
  std::string qa_path;
  std::string rules_path;
  std::string templates_path;
  std::string ratings_path;
  double grid_delta = 0.1;
  bool grid_all = false;

  auto add_common = [&](CLI::App* sub, bool needs_corpus) {
    sub->add_option("--config", common.config_path, "pipeline config JSON");
    auto* corpus =
        sub->add_option("--corpus", common.corpus_path, "corpus file or dir");
    if (needs_corpus) corpus->required();
    sub->add_flag("--no-cache", common.no_cache, "bypass the parse cache");
    return sub;
  };

  auto* parse_cmd = add_common(app.add_subcommand("parse", "parse AMR corpus"),
                               true);
  parse_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* frames_cmd = add_common(
      app.add_subcommand("frames", "extract semantic frames"), true);
  frames_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* bridges_cmd = add_common(
      app.add_subcommand("bridges", "discover and score bridges"), true);
  bridges_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* score_cmd = add_common(
      app.add_subcommand("score", "rescore an existing bridge file"), true);
  score_cmd->add_option("--bridges", bridges_path, "bridges JSONL")->required();
  score_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* gate_cmd = add_common(
      app.add_subcommand("gate", "round-trip BLEU quality gate"), true);
  gate_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* generate_cmd = add_common(
      app.add_subcommand("generate", "synthesize QA records"), true);
  generate_cmd->add_option("--out", out_path, "output path (default stdout)");
  generate_cmd->add_option("--templates", templates_path,
                           "template file (default built-in)");
  generate_cmd->add_flag("--template-only", common.template_only,
                         "skip any configured LLM endpoint");
  generate_cmd->add_option("--max-questions", common.max_questions,
                           "cap generated questions");

  auto* report_cmd = add_common(
      app.add_subcommand("report", "aggregate corpus metrics"), true);
  report_cmd->add_option("--bridges", bridges_path, "bridges JSONL")
      ->required();
  report_cmd->add_option("--qa", qa_path, "QA JSONL")->required();
  report_cmd->add_option("--depth-rules", rules_path,
                         "semantic depth rule table");
  report_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* grid_cmd =
      app.add_subcommand("grid-search", "calibrate strength weights");
  grid_cmd->add_option("--ratings", ratings_path, "rated bridge file")
      ->required();
  grid_cmd->add_option("--delta", grid_delta, "fixed diversity weight");
  grid_cmd->add_flag("--all-candidates", grid_all,
                     "keep candidates violating weight constraints");
  grid_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* run_cmd =
      add_common(app.add_subcommand("run", "full pipeline"), true);
  run_cmd->add_option("--out-dir", common.out_dir, "artifact directory");
  run_cmd->add_flag("--template-only", common.template_only,
                    "skip any configured LLM endpoint");
  run_cmd->add_option("--max-questions", common.max_questions,
                      "cap generated questions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(common, out_path);
    if (frames_cmd->parsed()) return cmd_frames(common, out_path);
    if (bridges_cmd->parsed()) return cmd_bridges(common, out_path);
    if (score_cmd->parsed()) return cmd_score(common, bridges_path, out_path);
    if (gate_cmd->parsed()) return cmd_gate(common, out_path);
    if (generate_cmd->parsed()) {
      return cmd_generate(common, out_path, templates_path);
    }
    if (report_cmd->parsed()) {
      return cmd_report(common, bridges_path, qa_path, rules_path, out_path);
    }
    if (grid_cmd->parsed()) {
      return cmd_grid_search(ratings_path, grid_delta, grid_all, out_path);
    }
    if (run_cmd->parsed()) return cmd_run(common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFatal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitOk;
}
