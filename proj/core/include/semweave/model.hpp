#ifndef SEMWEAVE_MODEL_HPP
#define SEMWEAVE_MODEL_HPP

#include <map>
#include <string>
#include <vector>

#include "semweave/cache.hpp"
#include "semweave/corpus.hpp"
#include "semweave/frames.hpp"
#include "semweave/penman.hpp"
#include "semweave/scoring.hpp"

namespace semweave {

// Parsed corpus with every derived structure the pipeline stages share.
struct CorpusModel {
  std::vector<CorpusRecord> records;
  std::vector<AmrGraph> graphs;
  std::vector<SemanticFrame> frames;
  std::map<std::string, SemanticFrame> frames_by_id;
  std::map<std::string, std::vector<SemanticFrame>> frames_by_doc;
  EntityIndex entity_index;
  std::map<std::string, ConceptDistribution> concept_dists;  // by doc_id
  CooccurrenceStats cooccurrence;
  int max_frame_depth = 1;
  int max_complexity = 1;  // corpus max of K(F)

  std::vector<std::string> doc_ids() const;  // sorted, distinct
  const ConceptDistribution& dist_for(const std::string& doc_id) const;
};

struct BuildDiagnostics {
  int parsed = 0;
  int skipped = 0;
  int cache_hits = 0;
  std::vector<std::string> messages;
};

// Parses all records and derives frames, entities, and distributions.
// Records whose AMR fails to parse are skipped and counted. When a
// cache is supplied, parse results are served from and written to it.
CorpusModel build_model(const std::vector<CorpusRecord>& records,
                        BuildDiagnostics* diagnostics = nullptr,
                        ArtifactCache* cache = nullptr);

}  // namespace semweave

#endif  // SEMWEAVE_MODEL_HPP
