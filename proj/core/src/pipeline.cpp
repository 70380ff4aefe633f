#include "semweave/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <set>

#include <json.hpp>

#include "semweave/cache.hpp"
#include "semweave/errors.hpp"
#include "semweave/http_clients.hpp"

namespace semweave {

namespace {

using nlohmann::json;

NonCoreKind non_core_from_string(const std::string& text) {
  for (NonCoreKind kind :
       {NonCoreKind::Tmp, NonCoreKind::Cau, NonCoreKind::Loc, NonCoreKind::Prp,
        NonCoreKind::Mnr, NonCoreKind::Adv, NonCoreKind::Dir, NonCoreKind::Ext,
        NonCoreKind::Gol, NonCoreKind::Condition}) {
    if (to_string(kind) == text) return kind;
  }
  throw ParseError("unknown marker kind: " + text);
}

json strength_to_json(const StrengthBreakdown& s) {
  return {{"s_type", s.s_type},
          {"s_entities", s.s_entities},
          {"s_complexity", s.s_complexity},
          {"s_diversity", s.s_diversity},
          {"total", s.total}};
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}

  double millis() const {
    auto elapsed = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(elapsed).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

std::string bridge_to_json(const Bridge& bridge) {
  json j;
  j["bridge_id"] = bridge.bridge_id;
  j["bridge_type"] = to_string(bridge.kind);
  j["frame_a"] = bridge.frame_a;
  j["frame_b"] = bridge.frame_b;
  j["shared_entities"] = bridge.shared_entities;
  j["strength"] = strength_to_json(bridge.strength);
  if (bridge.entity_evidence) {
    j["entity_evidence"] = {{"entity_id", bridge.entity_evidence->entity_id},
                            {"role_in_a", bridge.entity_evidence->role_in_a},
                            {"role_in_b", bridge.entity_evidence->role_in_b}};
  }
  if (bridge.predicate_evidence) {
    j["predicate_evidence"] = {
        {"predicate_a", bridge.predicate_evidence->predicate_a},
        {"predicate_b", bridge.predicate_evidence->predicate_b},
        {"relation", to_string(bridge.predicate_evidence->relation)}};
  }
  if (bridge.causal_evidence) {
    j["causal_evidence"] = {
        {"marker", to_string(bridge.causal_evidence->marker)},
        {"marker_target", bridge.causal_evidence->marker_target}};
  }
  return j.dump();
}

Bridge bridge_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad bridge record: ") + e.what());
  }
  try {
    Bridge bridge;
    bridge.bridge_id = j.at("bridge_id").get<std::string>();
    bridge.kind = bridge_kind_from_string(j.at("bridge_type"));
    bridge.frame_a = j.at("frame_a").get<std::string>();
    bridge.frame_b = j.at("frame_b").get<std::string>();
    bridge.shared_entities =
        j.value("shared_entities", std::vector<std::string>{});
    if (j.contains("strength")) {
      const json& s = j.at("strength");
      bridge.strength.s_type = s.value("s_type", 0.0);
      bridge.strength.s_entities = s.value("s_entities", 0.0);
      bridge.strength.s_complexity = s.value("s_complexity", 0.0);
      bridge.strength.s_diversity = s.value("s_diversity", 0.0);
      bridge.strength.total = s.value("total", 0.0);
    }
    if (j.contains("entity_evidence")) {
      const json& e = j.at("entity_evidence");
      bridge.entity_evidence =
          EntityEvidence{e.at("entity_id").get<std::string>(),
                         e.at("role_in_a").get<std::string>(),
                         e.at("role_in_b").get<std::string>()};
    }
    if (j.contains("predicate_evidence")) {
      const json& e = j.at("predicate_evidence");
      bridge.predicate_evidence = PredicateEvidence{
          e.at("predicate_a").get<std::string>(),
          e.at("predicate_b").get<std::string>(),
          relation_class_from_string(e.at("relation").get<std::string>())};
    }
    if (j.contains("causal_evidence")) {
      const json& e = j.at("causal_evidence");
      bridge.causal_evidence = CausalEvidence{
          non_core_from_string(e.at("marker").get<std::string>()),
          e.at("marker_target").get<std::string>()};
    }
    return bridge;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad bridge record: ") + e.what());
  }
}

std::string bridges_to_jsonl(const std::vector<Bridge>& bridges) {
  std::string out;
  for (const auto& bridge : bridges) {
    out += bridge_to_json(bridge);
    out += "\n";
  }
  return out;
}

std::string qa_to_json(const GeneratedQA& qa) {
  json j;
  j["question"] = qa.question;
  j["answer"] = qa.answer;
  j["bridge_type"] = to_string(qa.kind);
  j["strength"] = qa.strength;
  j["hop_count"] = qa.hop_count;
  j["source_docs"] = qa.source_docs;
  j["generation_mode"] = qa.generation_mode;
  j["bridge_id"] = qa.bridge_id;
  j["bridge_ids"] = qa.bridge_ids;
  j["difficulty"] = qa.difficulty;
  j["question_type"] = qa.question_type;
  if (!qa.template_id.empty()) j["template_id"] = qa.template_id;
  if (!qa.model_id.empty()) j["model_id"] = qa.model_id;
  return j.dump();
}

std::string qa_to_jsonl(const std::vector<GeneratedQA>& qa) {
  std::string out;
  for (const auto& record : qa) {
    out += qa_to_json(record);
    out += "\n";
  }
  return out;
}

std::vector<Bridge> discover_bridges(const CorpusModel& model,
                                     const BridgeConfig& bridge_config,
                                     const ScoringConfig& scoring_config) {
  ScoringConfig scoring = scoring_config;
  if (scoring.max_depth <= 0) scoring.max_depth = model.max_frame_depth;
  if (scoring.k_max <= 0) scoring.k_max = model.max_complexity;

  std::vector<std::string> docs;
  for (const auto& [doc_id, frames] : model.frames_by_doc) {
    docs.push_back(doc_id);
  }

  std::vector<Bridge> bridges;
  std::set<std::string> seen_ids;
  auto collect = [&](const std::vector<SemanticFrame>& frames_a,
                     const std::vector<SemanticFrame>& frames_b) {
    for (auto builder : {build_entity_bridges, build_predicate_bridges,
                         build_causal_bridges}) {
      for (auto& bridge : builder(frames_a, frames_b, model.entity_index,
                                  bridge_config)) {
        if (seen_ids.insert(bridge.bridge_id).second) {
          bridges.push_back(std::move(bridge));
        }
      }
    }
  };

  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!bridge_config.cross_document_only) {
      collect(model.frames_by_doc.at(docs[i]), model.frames_by_doc.at(docs[i]));
    }
    for (std::size_t j = i + 1; j < docs.size(); ++j) {
      collect(model.frames_by_doc.at(docs[i]), model.frames_by_doc.at(docs[j]));
    }
  }

  // Same-document sweeps visit both orientations of every frame pair, so
  // entity bridges show up mirrored; keep the lexicographically first.
  if (!bridge_config.cross_document_only) {
    std::vector<Bridge> kept;
    for (auto& bridge : bridges) {
      if (bridge.kind == BridgeKind::Entity && bridge.entity_evidence &&
          bridge.frame_b < bridge.frame_a) {
        std::string mirror = "eb|" + bridge.frame_b + "|" + bridge.frame_a +
                             "|" + bridge.entity_evidence->entity_id;
        if (seen_ids.count(mirror) > 0) continue;
      }
      kept.push_back(std::move(bridge));
    }
    bridges = std::move(kept);
  }

  std::vector<Bridge> scored;
  for (auto& bridge : bridges) {
    auto fa = model.frames_by_id.find(bridge.frame_a);
    auto fb = model.frames_by_id.find(bridge.frame_b);
    if (fa == model.frames_by_id.end() || fb == model.frames_by_id.end()) {
      continue;
    }
    bridge.strength = bridge_strength(
        bridge, fa->second, fb->second, model.dist_for(fa->second.doc_id),
        model.dist_for(fb->second.doc_id), scoring, &model.cooccurrence);
    if (bridge.strength.total >= bridge_config.min_strength) {
      scored.push_back(std::move(bridge));
    }
  }

  std::sort(scored.begin(), scored.end(), [](const Bridge& a, const Bridge& b) {
    if (a.strength.total != b.strength.total) {
      return a.strength.total > b.strength.total;
    }
    return a.bridge_id < b.bridge_id;
  });
  return scored;
}

PipelineResult run_pipeline(const PipelineConfig& config,
                            const std::vector<CorpusRecord>& records,
                            const PipelineOptions& options,
                            TextGenerator* generator, LlmClient* llm) {
  PipelineResult result;
  result.records_in = static_cast<int>(records.size());
  result.bridges_path = options.out_dir + "/bridges.jsonl";
  result.qa_path = options.out_dir + "/qa.jsonl";
  result.report_path = options.out_dir + "/report.json";

  bool cache_on = config.caching.enabled && !options.no_cache;
  ArtifactCache cache(config.caching.cache_dir, cache_on,
                      config.caching.compression == "gzip");

  // parse + frames
  CorpusModel model;
  BuildDiagnostics diag;
  {
    Timer timer;
    try {
      model = build_model(records, &diag, &cache);
    } catch (const Error& e) {
      result.diagnostics.push_back(std::string("parse: ") + e.what());
      result.exit_code = kExitFatal;
      return result;
    }
    result.records_skipped = diag.skipped;
    for (const auto& message : diag.messages) {
      result.diagnostics.push_back("parse: " + message);
    }
    result.stages.push_back(
        {"parse", timer.millis(), diag.parsed, diag.cache_hits});
  }

  // bridges + scoring
  std::vector<Bridge> bridges;
  {
    Timer timer;
    try {
      bridges = discover_bridges(model, config.bridging, config.scoring);
    } catch (const Error& e) {
      result.diagnostics.push_back(std::string("bridge: ") + e.what());
      result.exit_code = kExitFatal;
      return result;
    }
    result.bridge_count = static_cast<int>(bridges.size());
    write_file_atomic(result.bridges_path, bridges_to_jsonl(bridges));
    result.stages.push_back(
        {"bridge", timer.millis(), result.bridge_count, 0});
  }

  // round-trip gate
  std::set<std::string> rejected_graphs;
  int gate_failures = 0;
  {
    Timer timer;
    std::vector<RoundTripItem> items;
    for (const auto& graph : model.graphs) {
      if (graph.source_text.empty()) continue;  // nothing to round-trip
      items.push_back(
          {graph.graph_id, graph.source_text, serialize_penman(graph)});
    }
    std::unique_ptr<TextGenerator> owned;
    TextGenerator* gate_generator = generator;
    if (gate_generator == nullptr && config.generator_endpoint.configured()) {
      owned = std::make_unique<HttpTextGenerator>(config.generator_endpoint);
      gate_generator = owned.get();
    }
    if (gate_generator == nullptr) {
      static IdentityGenerator identity;
      gate_generator = &identity;
    }
    try {
      auto gate = round_trip_gate(items, *gate_generator, config.quality);
      result.retention = gate.retention;
      gate_failures = gate.failed_count;
      for (const auto& item : gate.items) {
        if (!item.accepted) rejected_graphs.insert(item.graph_id);
      }
      result.stages.push_back(
          {"gate", timer.millis(), static_cast<int>(items.size()), 0});
    } catch (const Error& e) {
      result.diagnostics.push_back(std::string("gate: ") + e.what());
      result.exit_code = kExitPartial;
      for (const auto& item : items) rejected_graphs.insert(item.graph_id);
      result.retention = 0.0;
    }
  }

  // generation
  std::vector<GeneratedQA> qa;
  {
    Timer timer;
    std::vector<Bridge> admitted;
    for (const auto& bridge : bridges) {
      auto fa = model.frames_by_id.find(bridge.frame_a);
      auto fb = model.frames_by_id.find(bridge.frame_b);
      if (fa == model.frames_by_id.end() || fb == model.frames_by_id.end()) {
        continue;
      }
      if (rejected_graphs.count(fa->second.graph_id) > 0 ||
          rejected_graphs.count(fb->second.graph_id) > 0) {
        continue;
      }
      admitted.push_back(bridge);
    }

    GenerationConfig gen_config = config.generation;
    if (options.max_questions_override >= 0) {
      gen_config.max_questions = options.max_questions_override;
    }
    std::unique_ptr<LlmClient> owned;
    LlmClient* question_client = options.template_only ? nullptr : llm;
    if (question_client == nullptr && !options.template_only &&
        config.llm.endpoint.configured()) {
      owned = std::make_unique<HttpLlmClient>(config.llm);
      question_client = owned.get();
    }
    try {
      qa = synthesize_corpus(admitted, model.frames_by_id, gen_config,
                             default_templates(), question_client);
    } catch (const Error& e) {
      result.diagnostics.push_back(std::string("generate: ") + e.what());
      result.exit_code = kExitPartial;
      qa.clear();
    }
    result.qa_count = static_cast<int>(qa.size());
    write_file_atomic(result.qa_path, qa_to_jsonl(qa));
    result.stages.push_back({"generate", timer.millis(), result.qa_count, 0});
  }

  // report
  {
    Timer timer;
    CorpusReport report = corpus_report(qa, bridges, model.frames_by_id);
    json j = json::parse(report_to_json(report));
    j["retention"] = result.retention;
    j["records_in"] = result.records_in;
    j["records_skipped"] = result.records_skipped;
    j["sentence_count"] = diag.parsed;
    j["bridges_per_100_sentences"] =
        diag.parsed > 0
            ? static_cast<double>(result.bridge_count) * 100.0 / diag.parsed
            : 0.0;
    j["cache_hits"] = diag.cache_hits;
    write_file_atomic(result.report_path, j.dump(2) + "\n");
    result.stages.push_back({"report", timer.millis(), 1, 0});
  }

  if (result.exit_code == kExitOk) {
    bool empty_yield = result.records_in > 0 && result.qa_count == 0;
    if (result.records_skipped > 0 || gate_failures > 0 || empty_yield) {
      result.exit_code = kExitPartial;
    }
  }
  return result;
}

}  // namespace semweave
