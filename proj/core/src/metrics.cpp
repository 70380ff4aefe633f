#include "semweave/metrics.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "semweave/errors.hpp"

namespace semweave {

double semantic_depth(const std::vector<SemanticRelationAnnotation>& relations) {
  if (relations.empty()) {
    throw EmptyRelationList("semantic_depth requires at least one relation");
  }
  double sum = 0.0;
  for (const auto& r : relations) {
    sum += static_cast<double>(r.ral) * r.cad * r.itc;
  }
  return sum / static_cast<double>(relations.size());
}

namespace {

int parse_rule_value(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ParseError("bad value for depth rule '" + key + "': " + text);
  }
}

std::string marker_rule_key(NonCoreKind marker) {
  switch (marker) {
    case NonCoreKind::Cau:
      return "CAU";
    case NonCoreKind::Condition:
      return "condition";
    case NonCoreKind::Prp:
      return "PRP";
    default:
      return "";
  }
}

// True when either frame binds the entity through a named-entity node.
bool entity_is_named(const std::string& entity_id, const SemanticFrame& f1,
                     const SemanticFrame& f2) {
  for (const SemanticFrame* frame : {&f1, &f2}) {
    for (const auto& [role, ref] : frame->core_args) {
      if (ref.key() == entity_id && ref.named) return true;
    }
  }
  return false;
}

}  // namespace

DepthRules parse_depth_rules(const std::string& contents) {
  DepthRules rules;
  std::istringstream in(contents);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream fields(line);
    std::string key, value;
    if (!(fields >> key)) continue;
    if (!(fields >> value)) {
      throw ParseError("depth rule missing value at line " +
                       std::to_string(line_no));
    }
    std::string extra;
    if (fields >> extra) {
      throw ParseError("trailing content in depth rule at line " +
                       std::to_string(line_no));
    }
    int v = parse_rule_value(key, value);
    if (key.rfind("marker.", 0) == 0) {
      rules.ral_for_marker[key.substr(7)] = v;
    } else if (key.rfind("relation.", 0) == 0) {
      rules.ral_for_relation[key.substr(9)] = v;
    } else if (key == "ral.entity") {
      rules.ral_entity = v;
    } else if (key == "cad.named") {
      rules.cad_named = v;
    } else if (key == "cad.category") {
      rules.cad_category = v;
    } else if (key == "cad.abstract") {
      rules.cad_abstract = v;
    } else if (key == "itc.explicit") {
      rules.itc_explicit = v;
    } else {
      throw ParseError("unknown depth rule key '" + key + "' at line " +
                       std::to_string(line_no));
    }
  }
  return rules;
}

std::string depth_rules_to_text(const DepthRules& rules) {
  std::ostringstream out;
  out << "# semantic depth rule table: <key> <integer>\n";
  for (const auto& [marker, ral] : rules.ral_for_marker) {
    out << "marker." << marker << " " << ral << "\n";
  }
  for (const auto& [relation, ral] : rules.ral_for_relation) {
    out << "relation." << relation << " " << ral << "\n";
  }
  out << "ral.entity " << rules.ral_entity << "\n";
  out << "cad.named " << rules.cad_named << "\n";
  out << "cad.category " << rules.cad_category << "\n";
  out << "cad.abstract " << rules.cad_abstract << "\n";
  out << "itc.explicit " << rules.itc_explicit << "\n";
  return out.str();
}

std::vector<SemanticRelationAnnotation> annotate_bridge_relations(
    const Bridge& bridge, const std::map<std::string, SemanticFrame>& frames,
    const DepthRules& rules) {
  SemanticRelationAnnotation ann;

  switch (bridge.kind) {
    case BridgeKind::Causal:
      if (bridge.causal_evidence) {
        auto it = rules.ral_for_marker.find(
            marker_rule_key(bridge.causal_evidence->marker));
        if (it != rules.ral_for_marker.end()) ann.ral = it->second;
      }
      break;
    case BridgeKind::PredicateChain:
      if (bridge.predicate_evidence) {
        auto it = rules.ral_for_relation.find(
            to_string(bridge.predicate_evidence->relation));
        if (it != rules.ral_for_relation.end()) ann.ral = it->second;
      }
      break;
    case BridgeKind::Entity:
      ann.ral = rules.ral_entity;
      break;
  }

  if (bridge.shared_entities.empty()) {
    ann.cad = rules.cad_abstract;
  } else {
    auto fa = frames.find(bridge.frame_a);
    auto fb = frames.find(bridge.frame_b);
    if (fa != frames.end() && fb != frames.end()) {
      bool named = false;
      for (const auto& entity_id : bridge.shared_entities) {
        if (entity_is_named(entity_id, fa->second, fb->second)) {
          named = true;
          break;
        }
      }
      ann.cad = named ? rules.cad_named : rules.cad_category;
    }
  }

  ann.itc = rules.itc_explicit;
  return {ann};
}

double bridge_diversity(const std::vector<Bridge>& bridges) {
  if (bridges.empty()) return 0.0;
  std::map<BridgeKind, int> counts;
  for (const auto& b : bridges) counts[b.kind] += 1;
  double n = static_cast<double>(bridges.size());
  double entropy = 0.0;
  for (const auto& [kind, count] : counts) {
    double p = count / n;
    entropy -= p * std::log(p);
  }
  double h = entropy / std::log(3.0);
  if (h < 0.0) h = 0.0;
  if (h > 1.0) h = 1.0;
  return h;
}

CorpusReport corpus_report(const std::vector<GeneratedQA>& qa,
                           const std::vector<Bridge>& bridges,
                           const std::map<std::string, SemanticFrame>& frames,
                           const DepthRules& rules) {
  CorpusReport report;
  report.question_count = static_cast<int>(qa.size());
  report.bridge_count = static_cast<int>(bridges.size());
  report.diversity = bridge_diversity(bridges);

  report.per_kind[to_string(BridgeKind::Entity)] = {};
  report.per_kind[to_string(BridgeKind::PredicateChain)] = {};
  report.per_kind[to_string(BridgeKind::Causal)] = {};

  std::map<std::string, double> strength_sums;
  std::map<std::string, const Bridge*> by_id;
  for (const auto& b : bridges) {
    auto& stats = report.per_kind[to_string(b.kind)];
    stats.count += 1;
    strength_sums[to_string(b.kind)] += b.strength.total;
    by_id[b.bridge_id] = &b;
  }
  for (auto& [kind, stats] : report.per_kind) {
    if (stats.count > 0) stats.mean_strength = strength_sums[kind] / stats.count;
  }

  double hop_sum = 0.0;
  double depth_sum = 0.0;
  int depth_count = 0;
  for (const auto& q : qa) {
    hop_sum += q.hop_count;
    std::vector<SemanticRelationAnnotation> annotations;
    for (const auto& id : q.bridge_ids) {
      auto it = by_id.find(id);
      if (it == by_id.end()) continue;
      auto part = annotate_bridge_relations(*it->second, frames, rules);
      annotations.insert(annotations.end(), part.begin(), part.end());
    }
    if (!annotations.empty()) {
      depth_sum += semantic_depth(annotations);
      depth_count += 1;
    }
  }
  if (!qa.empty()) {
    report.mean_hop_count = hop_sum / static_cast<double>(qa.size());
  }
  if (depth_count > 0) {
    report.mean_semantic_depth = depth_sum / depth_count;
  }
  return report;
}

std::string report_to_json(const CorpusReport& report) {
  nlohmann::json j;
  j["question_count"] = report.question_count;
  j["bridge_count"] = report.bridge_count;
  j["mean_hop_count"] = report.mean_hop_count;
  j["mean_semantic_depth"] = report.mean_semantic_depth;
  j["bridge_diversity"] = report.diversity;
  for (const auto& [kind, stats] : report.per_kind) {
    j["per_kind"][kind]["count"] = stats.count;
    j["per_kind"][kind]["mean_strength"] = stats.mean_strength;
  }
  return j.dump(2) + "\n";
}

}  // namespace semweave
