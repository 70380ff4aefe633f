#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "semweave/config.hpp"
#include "semweave/model.hpp"
#include "semweave/penman.hpp"
#include "semweave/pipeline.hpp"
#include "semweave/quality.hpp"
#include "semweave/scoring.hpp"

namespace {

using namespace semweave;

const char* kGraph =
    "(a / announce-01 :ARG0 (c / company :name (n / name :op1 \"Apple\"))"
    " :ARG1 (p / product :mod (m / new))"
    " :ARGM-TMP (t / today) :ARGM-CAU (d / demand-01 :ARG0 c))";

// Ten-document corpus with entity overlap and periodic causal markers,
// sized so bridge discovery does real pairwise work.
std::vector<CorpusRecord> bench_corpus(int sentences) {
  std::vector<CorpusRecord> records;
  for (int k = 0; k < sentences; ++k) {
    std::string subject = "Ent" + std::to_string(k % 12);
    std::string amr = "(v / verb" + std::to_string(k) + "-01 :ARG0 (e / entity"
                      " :name (n / name :op1 \"" + subject + "\"))"
                      " :ARG1 (i / item" + std::to_string(k) + ")";
    if (k % 5 == 0) {
      amr += " :ARGM-CAU (m / entity :name (n2 / name :op1 \"Ent" +
             std::to_string((k + 1) % 12) + "\"))";
    }
    amr += ")";
    records.push_back({"doc" + std::to_string(k % 10),
                       "s" + std::to_string(k / 10),
                       "Sentence " + std::to_string(k) + ".", amr});
  }
  return records;
}

void bm_parse_penman(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_penman(kGraph));
  }
}
BENCHMARK(bm_parse_penman);

void bm_serialize_penman(benchmark::State& state) {
  auto graph = parse_penman(kGraph);
  for (auto _ : state) {
    benchmark::DoNotOptimize(serialize_penman(graph));
  }
}
BENCHMARK(bm_serialize_penman);

void bm_bleu(benchmark::State& state) {
  QualityConfig config;
  std::string candidate =
      "the company announced a new product today because demand grew";
  std::string reference =
      "the company announced its new product today as demand was growing";
  for (auto _ : state) {
    benchmark::DoNotOptimize(bleu(candidate, reference, config));
  }
}
BENCHMARK(bm_bleu);

void bm_bridge_strength(benchmark::State& state) {
  auto model = build_model(bench_corpus(20));
  auto config = parse_config("{}");
  auto bridges = discover_bridges(model, config.bridging, config.scoring);
  if (bridges.empty()) {
    state.SkipWithError("no bridges in the bench corpus");
    return;
  }
  ScoringConfig scoring = config.scoring;
  scoring.max_depth = model.max_frame_depth;
  scoring.k_max = model.max_complexity;
  const auto& bridge = bridges.front();
  const auto& fa = model.frames_by_id.at(bridge.frame_a);
  const auto& fb = model.frames_by_id.at(bridge.frame_b);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bridge_strength(
        bridge, fa, fb, model.dist_for(fa.doc_id), model.dist_for(fb.doc_id),
        scoring, &model.cooccurrence));
  }
}
BENCHMARK(bm_bridge_strength);

void bm_discover_bridges(benchmark::State& state) {
  auto records = bench_corpus(static_cast<int>(state.range(0)));
  auto model = build_model(records);
  auto config = parse_config("{}");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        discover_bridges(model, config.bridging, config.scoring));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_discover_bridges)->Arg(50)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
