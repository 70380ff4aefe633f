#include "semweave/model.hpp"

#include <algorithm>
#include <set>

#include "semweave/errors.hpp"
#include "semweave/version.hpp"

namespace semweave {

std::vector<std::string> CorpusModel::doc_ids() const {
  std::vector<std::string> ids;
  for (const auto& [doc_id, dist] : concept_dists) ids.push_back(doc_id);
  return ids;
}

const ConceptDistribution& CorpusModel::dist_for(
    const std::string& doc_id) const {
  static const ConceptDistribution kEmpty;
  auto it = concept_dists.find(doc_id);
  return it == concept_dists.end() ? kEmpty : it->second;
}

namespace {

AmrGraph parse_record(const CorpusRecord& record, const std::string& graph_id,
                      ArtifactCache* cache, BuildDiagnostics* diagnostics) {
  if (cache != nullptr && cache->enabled()) {
    std::string key = ArtifactCache::make_key(record.amr, kVersion);
    if (auto cached = cache->get(key)) {
      AmrGraph graph = graph_from_json(*cached);
      // Content-addressed entries drop identity; restore it per record.
      graph.graph_id = graph_id;
      graph.doc_id = record.doc_id;
      graph.source_text = record.text;
      if (diagnostics != nullptr) diagnostics->cache_hits += 1;
      return graph;
    }
    AmrGraph graph = parse_penman(record.amr, graph_id, record.doc_id);
    graph.source_text = record.text;
    cache->put(key, graph_to_json(graph));
    return graph;
  }
  AmrGraph graph = parse_penman(record.amr, graph_id, record.doc_id);
  graph.source_text = record.text;
  return graph;
}

}  // namespace

CorpusModel build_model(const std::vector<CorpusRecord>& records,
                        BuildDiagnostics* diagnostics, ArtifactCache* cache) {
  CorpusModel model;
  model.records = records;

  std::map<std::string, std::map<std::string, int>> concept_counts;
  std::vector<Entity> all_entities;

  for (const auto& record : records) {
    std::string graph_id = record.doc_id + "/" + record.sent_id;
    AmrGraph graph;
    try {
      graph = parse_record(record, graph_id, cache, diagnostics);
    } catch (const Error& e) {
      if (diagnostics != nullptr) {
        diagnostics->skipped += 1;
        diagnostics->messages.push_back("skipped " + graph_id + ": " +
                                        e.what());
      }
      continue;
    }
    if (diagnostics != nullptr) diagnostics->parsed += 1;

    auto frames = extract_frames(graph);
    auto entities = extract_entities(graph, frames);
    all_entities.insert(all_entities.end(), entities.begin(), entities.end());

    auto& counts = concept_counts[record.doc_id];
    for (const auto& [node_id, concept_label] : graph.nodes) {
      counts[concept_label] += 1;
    }

    for (auto& frame : frames) {
      model.max_frame_depth = std::max(model.max_frame_depth, frame.depth);
      model.max_complexity =
          std::max(model.max_complexity, argument_complexity(frame));
      model.frames_by_id[frame.frame_id] = frame;
      model.frames_by_doc[frame.doc_id].push_back(frame);
      model.frames.push_back(std::move(frame));
    }
    model.graphs.push_back(std::move(graph));
  }

  model.entity_index = build_entity_index(all_entities);

  for (const auto& [doc_id, counts] : concept_counts) {
    ConceptDistribution dist;
    dist.doc_id = doc_id;
    double total = 0.0;
    for (const auto& [concept_label, count] : counts) total += count;
    for (const auto& [concept_label, count] : counts) {
      dist.probs[concept_label] = count / total;
    }
    model.concept_dists[doc_id] = std::move(dist);
  }

  model.cooccurrence.doc_count = static_cast<int>(concept_counts.size());
  for (const auto& [doc_id, counts] : concept_counts) {
    std::vector<std::string> concepts;
    for (const auto& [concept_label, count] : counts) {
      concepts.push_back(concept_label);
      model.cooccurrence.docs_with[concept_label] += 1;
    }
    for (std::size_t i = 0; i < concepts.size(); ++i) {
      for (std::size_t j = i + 1; j < concepts.size(); ++j) {
        model.cooccurrence.docs_with_both[{concepts[i], concepts[j]}] += 1;
      }
    }
  }

  return model;
}

}  // namespace semweave
