#ifndef SEMWEAVE_PIPELINE_HPP
#define SEMWEAVE_PIPELINE_HPP

#include <string>
#include <vector>

#include "semweave/bridging.hpp"
#include "semweave/config.hpp"
#include "semweave/corpus.hpp"
#include "semweave/generation.hpp"
#include "semweave/metrics.hpp"
#include "semweave/model.hpp"
#include "semweave/quality.hpp"

namespace semweave {

// Exit codes: 0 success, 1 fatal, 2 partial success (records skipped,
// generator failures, or an empty QA yield on a non-empty corpus).
inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitPartial = 2;

struct PipelineOptions {
  std::string out_dir = ".";
  bool no_cache = false;
  bool template_only = false;  // force template mode even with an LLM endpoint
  int max_questions_override = -1;  // <0: use config
};

struct StageStat {
  std::string stage;
  double millis = 0.0;
  int items = 0;
  int cache_hits = 0;
};

struct PipelineResult {
  int exit_code = kExitOk;
  std::string bridges_path;
  std::string qa_path;
  std::string report_path;
  int records_in = 0;
  int records_skipped = 0;
  int bridge_count = 0;
  int qa_count = 0;
  double retention = 1.0;
  std::vector<StageStat> stages;
  std::vector<std::string> diagnostics;
};

// parse -> frames -> bridges -> score/filter -> gate -> generate -> report.
// Writes bridges.jsonl, qa.jsonl, report.json under options.out_dir.
// Stage artifacts are written as soon as their stage completes, so a
// later failure leaves earlier artifacts intact. Optional generator /
// llm override the endpoint-configured clients (used by tests).
PipelineResult run_pipeline(const PipelineConfig& config,
                            const std::vector<CorpusRecord>& records,
                            const PipelineOptions& options,
                            TextGenerator* generator = nullptr,
                            LlmClient* llm = nullptr);

// Artifact serialization (one JSON object per line).
std::string bridge_to_json(const Bridge& bridge);
Bridge bridge_from_json(const std::string& json_text);
std::string bridges_to_jsonl(const std::vector<Bridge>& bridges);
std::string qa_to_json(const GeneratedQA& qa);
std::string qa_to_jsonl(const std::vector<GeneratedQA>& qa);

// Bridge discovery over a built model: all three builders on every
// document pair, scored, filtered to min_strength, sorted by strength
// descending then bridge id.
std::vector<Bridge> discover_bridges(const CorpusModel& model,
                                     const BridgeConfig& bridge_config,
                                     const ScoringConfig& scoring_config);

}  // namespace semweave

#endif  // SEMWEAVE_PIPELINE_HPP
