#ifndef SEMWEAVE_METRICS_HPP
#define SEMWEAVE_METRICS_HPP

#include <map>
#include <string>
#include <vector>

#include "semweave/bridging.hpp"
#include "semweave/generation.hpp"

namespace semweave {

// One evidence relation's abstraction scores.
struct SemanticRelationAnnotation {
  int ral = 1;  // relation abstraction level, 1-5
  int cad = 1;  // concept abstraction degree, 1-3
  int itc = 1;  // inference type complexity, 1-3
};

// Mean over relations of ral * cad * itc. Throws EmptyRelationList.
double semantic_depth(const std::vector<SemanticRelationAnnotation>& relations);

// Rules mapping bridge evidence to annotation scores; unmapped cases
// take the floor (1,1,1).
struct DepthRules {
  std::map<std::string, int> ral_for_marker = {
      {"CAU", 3}, {"condition", 4}, {"PRP", 3}};
  std::map<std::string, int> ral_for_relation = {
      {"causation", 3}, {"temporal", 4}, {"logical", 5}};
  int ral_entity = 2;
  int cad_named = 1;
  int cad_category = 2;
  int cad_abstract = 3;
  int itc_explicit = 1;
};

// File format: "key value" pairs, one per line ("marker.CAU 3",
// "relation.temporal 4", "ral.entity 2", "cad.named 1", ...), '#'
// comments ignored. Unknown keys throw ParseError.
DepthRules parse_depth_rules(const std::string& contents);
std::string depth_rules_to_text(const DepthRules& rules);

std::vector<SemanticRelationAnnotation> annotate_bridge_relations(
    const Bridge& bridge, const std::map<std::string, SemanticFrame>& frames,
    const DepthRules& rules);

// Shannon entropy of the kind distribution over {entity, predicate,
// causal}, normalized by log(3); empty input gives 0.
double bridge_diversity(const std::vector<Bridge>& bridges);

struct KindStats {
  int count = 0;
  double mean_strength = 0.0;
};

struct CorpusReport {
  int question_count = 0;
  int bridge_count = 0;
  double mean_hop_count = 0.0;
  double mean_semantic_depth = 0.0;
  double diversity = 0.0;
  std::map<std::string, KindStats> per_kind;  // keyed by kind name
};

CorpusReport corpus_report(const std::vector<GeneratedQA>& qa,
                           const std::vector<Bridge>& bridges,
                           const std::map<std::string, SemanticFrame>& frames,
                           const DepthRules& rules = {});

std::string report_to_json(const CorpusReport& report);

}  // namespace semweave

#endif  // SEMWEAVE_METRICS_HPP
