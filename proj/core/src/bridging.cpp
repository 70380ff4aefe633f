#include "semweave/bridging.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "semweave/errors.hpp"

namespace semweave {

namespace {

const std::vector<std::string>& marker_labels() {
  static const std::vector<std::string> labels = {":ARGM-CAU", ":condition",
                                                  ":ARGM-PRP"};
  return labels;
}

NonCoreKind marker_kind(const std::string& label) {
  if (label == ":ARGM-CAU") return NonCoreKind::Cau;
  if (label == ":condition") return NonCoreKind::Condition;
  return NonCoreKind::Prp;
}

std::vector<std::string> shared_entity_keys(const SemanticFrame& a,
                                            const SemanticFrame& b) {
  auto ka = a.entity_keys();
  auto kb = b.entity_keys();
  std::vector<std::string> shared;
  std::set_intersection(ka.begin(), ka.end(), kb.begin(), kb.end(),
                        std::back_inserter(shared));
  return shared;
}

// first core slot holding the given entity key, in role-label order
std::optional<std::string> core_slot_for(const SemanticFrame& frame,
                                         const std::string& entity_key) {
  for (const auto& [label, ref] : frame.core_args) {
    if (ref.is_entity() && ref.key() == entity_key) return label;
  }
  return std::nullopt;
}

bool pair_in_scope(const SemanticFrame& a, const SemanticFrame& b,
                   const BridgeConfig& config) {
  if (a.frame_id == b.frame_id) return false;
  if (config.cross_document_only && a.doc_id == b.doc_id) return false;
  return true;
}

bool marker_mentions(const SemanticFrame& bearer, const std::string& label,
                     const SemanticFrame& other) {
  auto it = bearer.marker_terms.find(label);
  if (it == bearer.marker_terms.end()) return false;
  std::string other_lemma = predicate_lemma(other.predicate);
  for (const auto& term : it->second) {
    if (predicate_lemma(term) == other_lemma) return true;
    if (other.mentions(term)) return true;
  }
  return false;
}

}  // namespace

std::string to_string(BridgeKind kind) {
  switch (kind) {
    case BridgeKind::Entity: return "entity";
    case BridgeKind::PredicateChain: return "predicate_chain";
    case BridgeKind::Causal: return "causal";
  }
  return "?";
}

BridgeKind bridge_kind_from_string(const std::string& text) {
  if (text == "entity") return BridgeKind::Entity;
  if (text == "predicate_chain") return BridgeKind::PredicateChain;
  if (text == "causal") return BridgeKind::Causal;
  throw ParseError("unknown bridge kind '" + text + "'");
}

std::string to_string(RelationClass cls) {
  switch (cls) {
    case RelationClass::Causation: return "causation";
    case RelationClass::Temporal: return "temporal";
    case RelationClass::Logical: return "logical";
  }
  return "?";
}

RelationClass relation_class_from_string(const std::string& text) {
  if (text == "causation") return RelationClass::Causation;
  if (text == "temporal") return RelationClass::Temporal;
  if (text == "logical") return RelationClass::Logical;
  throw ParseError("unknown relation class '" + text + "'");
}

void PredicateRelationTable::add(const std::string& predicate_a,
                                 const std::string& predicate_b,
                                 RelationClass cls) {
  rows_[{predicate_a, predicate_b}] = cls;
}

std::optional<RelationClass> PredicateRelationTable::lookup(
    const std::string& predicate_a, const std::string& predicate_b) const {
  auto it = rows_.find({predicate_a, predicate_b});
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

PredicateRelationTable PredicateRelationTable::from_text(
    const std::string& contents) {
  PredicateRelationTable table;
  std::istringstream in(contents);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream row(line);
    std::string a, b, cls, extra;
    if (!(row >> a)) continue;  // blank
    if (!(row >> b >> cls) || (row >> extra)) {
      throw ParseError("relation table line " + std::to_string(line_no) +
                       ": expected 'predicate_a predicate_b relation_class'");
    }
    table.add(a, b, relation_class_from_string(cls));
  }
  return table;
}

PredicateRelationTable PredicateRelationTable::builtin() {
  PredicateRelationTable table;
  auto add = [&](const char* a, const char* b, RelationClass cls) {
    table.add(a, b, cls);
  };
  add("cause-01", "result-01", RelationClass::Causation);
  add("invest-01", "profit-01", RelationClass::Causation);
  add("heat-01", "melt-01", RelationClass::Causation);
  add("rain-01", "flood-01", RelationClass::Causation);
  add("train-01", "improve-01", RelationClass::Causation);
  add("infect-01", "sicken-01", RelationClass::Causation);
  add("begin-01", "end-01", RelationClass::Temporal);
  add("develop-01", "implement-01", RelationClass::Temporal);
  add("develop-02", "implement-01", RelationClass::Temporal);
  add("research-01", "discover-01", RelationClass::Temporal);
  add("design-01", "build-01", RelationClass::Temporal);
  add("plant-01", "harvest-01", RelationClass::Temporal);
  add("buy-01", "own-01", RelationClass::Logical);
  add("learn-01", "know-01", RelationClass::Logical);
  add("win-01", "qualify-02", RelationClass::Logical);
  return table;
}

std::string PredicateRelationTable::to_text() const {
  std::string out;
  for (const auto& [pair, cls] : rows_) {
    out += pair.first + " " + pair.second + " " + to_string(cls) + "\n";
  }
  return out;
}

double role_distance(const Role& r1, const Role& r2) {
  if (r1.same_role(r2)) return 0.0;
  bool core1 = r1.category == RoleCategory::CoreArg;
  bool core2 = r2.category == RoleCategory::CoreArg;
  if (core1 && core2) return 0.5;
  bool non_core1 = r1.category == RoleCategory::NonCore;
  bool non_core2 = r2.category == RoleCategory::NonCore;
  if ((core1 && non_core2) || (core2 && non_core1)) return 0.75;
  return 1.0;
}

std::vector<Bridge> build_entity_bridges(
    const std::vector<SemanticFrame>& frames_a,
    const std::vector<SemanticFrame>& frames_b, const EntityIndex& index,
    const BridgeConfig& config) {
  (void)index;
  std::vector<Bridge> bridges;
  for (const auto& fa : frames_a) {
    for (const auto& fb : frames_b) {
      if (!pair_in_scope(fa, fb, config)) continue;
      auto shared = shared_entity_keys(fa, fb);
      for (const auto& key : shared) {
        auto slot_a = core_slot_for(fa, key);
        auto slot_b = core_slot_for(fb, key);
        if (!slot_a || !slot_b) continue;
        Role role_a = classify_role(*slot_a);
        Role role_b = classify_role(*slot_b);
        bool role_varies = !role_a.same_role(role_b) &&
                           role_distance(role_a, role_b) > config.theta_role;
        bool qualifies = config.strict_role_variation
                             ? role_varies
                             : role_varies || fa.predicate != fb.predicate;
        if (!qualifies) continue;
        Bridge bridge;
        bridge.kind = BridgeKind::Entity;
        bridge.frame_a = fa.frame_id;
        bridge.frame_b = fb.frame_id;
        bridge.shared_entities = shared;
        bridge.entity_evidence = EntityEvidence{key, *slot_a, *slot_b};
        bridge.bridge_id =
            "eb|" + fa.frame_id + "|" + fb.frame_id + "|" + key;
        bridges.push_back(std::move(bridge));
      }
    }
  }
  return bridges;
}

std::vector<Bridge> build_predicate_bridges(
    const std::vector<SemanticFrame>& frames_a,
    const std::vector<SemanticFrame>& frames_b, const EntityIndex& index,
    const BridgeConfig& config) {
  (void)index;
  if (config.relation_table.empty()) {
    throw MissingRelationTable("predicate relation table has no rows");
  }
  std::vector<Bridge> bridges;
  for (const auto& fa : frames_a) {
    for (const auto& fb : frames_b) {
      if (!pair_in_scope(fa, fb, config)) continue;
      auto shared = shared_entity_keys(fa, fb);
      if (shared.empty()) continue;

      const SemanticFrame* first = nullptr;
      const SemanticFrame* second = nullptr;
      std::optional<RelationClass> cls =
          config.relation_table.lookup(fa.predicate, fb.predicate);
      if (cls) {
        first = &fa;
        second = &fb;
      } else {
        cls = config.relation_table.lookup(fb.predicate, fa.predicate);
        if (cls) {
          first = &fb;
          second = &fa;
        }
      }
      if (!cls) continue;

      Bridge bridge;
      bridge.kind = BridgeKind::PredicateChain;
      bridge.frame_a = first->frame_id;
      bridge.frame_b = second->frame_id;
      bridge.shared_entities = shared;
      bridge.predicate_evidence =
          PredicateEvidence{first->predicate, second->predicate, *cls};
      bridge.bridge_id = "pb|" + first->frame_id + "|" + second->frame_id;
      bridges.push_back(std::move(bridge));
    }
  }
  return bridges;
}

std::vector<Bridge> build_causal_bridges(
    const std::vector<SemanticFrame>& frames_a,
    const std::vector<SemanticFrame>& frames_b, const EntityIndex& index,
    const BridgeConfig& config) {
  (void)index;
  std::vector<Bridge> bridges;
  auto scan = [&](const SemanticFrame& bearer, const SemanticFrame& other) {
    for (const auto& label : marker_labels()) {
      auto slot = bearer.non_core_args.find(label);
      if (slot == bearer.non_core_args.end()) continue;
      bool related = !shared_entity_keys(bearer, other).empty() ||
                     marker_mentions(bearer, label, other);
      if (!related) continue;
      Bridge bridge;
      bridge.kind = BridgeKind::Causal;
      bridge.frame_a = bearer.frame_id;  // marker bearer is always frame_a
      bridge.frame_b = other.frame_id;
      bridge.shared_entities = shared_entity_keys(bearer, other);
      bridge.causal_evidence = CausalEvidence{marker_kind(label),
                                              slot->second.name};
      bridge.bridge_id =
          "cb|" + bearer.frame_id + "|" + other.frame_id + "|" + label;
      bridges.push_back(std::move(bridge));
      return;  // one causal bridge per ordered pair
    }
  };
  for (const auto& fa : frames_a) {
    for (const auto& fb : frames_b) {
      if (!pair_in_scope(fa, fb, config)) continue;
      scan(fa, fb);
      scan(fb, fa);
    }
  }
  return bridges;
}

std::vector<ReasoningPath> weave_paths(const std::vector<Bridge>& bridges,
                                       int max_frames) {
  std::vector<ReasoningPath> paths;
  // every bridge is itself a 2-frame path
  for (const auto& bridge : bridges) {
    ReasoningPath path;
    path.bridge_ids = {bridge.bridge_id};
    path.frame_sequence = {bridge.frame_a, bridge.frame_b};
    path.hop_count = 2;
    paths.push_back(std::move(path));
  }
  if (max_frames < 3 || bridges.empty()) return paths;

  struct Link {
    std::string other;
    std::size_t bridge;
  };
  std::map<std::string, std::vector<Link>> adjacency;
  for (std::size_t i = 0; i < bridges.size(); ++i) {
    adjacency[bridges[i].frame_a].push_back({bridges[i].frame_b, i});
    adjacency[bridges[i].frame_b].push_back({bridges[i].frame_a, i});
  }
  for (auto& [_, links] : adjacency) {
    std::sort(links.begin(), links.end(), [&](const Link& a, const Link& b) {
      if (a.other != b.other) return a.other < b.other;
      return bridges[a.bridge].bridge_id < bridges[b.bridge].bridge_id;
    });
  }

  std::vector<ReasoningPath> longer;
  std::vector<std::string> frame_stack;
  std::vector<std::size_t> bridge_stack;
  std::set<std::string> on_stack;

  auto dfs = [&](auto&& self, const std::string& frame) -> void {
    if (frame_stack.size() >= 3 && frame_stack.front() < frame_stack.back()) {
      ReasoningPath path;
      path.frame_sequence = frame_stack;
      for (std::size_t b : bridge_stack) {
        path.bridge_ids.push_back(bridges[b].bridge_id);
      }
      path.hop_count = static_cast<int>(frame_stack.size());
      longer.push_back(std::move(path));
    }
    if (static_cast<int>(frame_stack.size()) >= max_frames) return;
    for (const auto& link : adjacency[frame]) {
      if (on_stack.count(link.other)) continue;
      frame_stack.push_back(link.other);
      bridge_stack.push_back(link.bridge);
      on_stack.insert(link.other);
      self(self, link.other);
      on_stack.erase(link.other);
      bridge_stack.pop_back();
      frame_stack.pop_back();
    }
  };

  std::vector<std::string> starts;
  for (const auto& [frame, _] : adjacency) starts.push_back(frame);
  for (const auto& start : starts) {
    frame_stack = {start};
    bridge_stack.clear();
    on_stack = {start};
    dfs(dfs, start);
  }

  std::sort(longer.begin(), longer.end(),
            [](const ReasoningPath& a, const ReasoningPath& b) {
              if (a.hop_count != b.hop_count) return a.hop_count < b.hop_count;
              if (a.frame_sequence != b.frame_sequence) {
                return a.frame_sequence < b.frame_sequence;
              }
              return a.bridge_ids < b.bridge_ids;
            });
  paths.insert(paths.end(), longer.begin(), longer.end());
  return paths;
}

}  // namespace semweave
