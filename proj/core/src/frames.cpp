#include "semweave/frames.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "semweave/errors.hpp"

namespace semweave {

namespace {

std::string canonical_role_key(const Role& role) {
  switch (role.category) {
    case RoleCategory::CoreArg:
      return ":ARG" + std::to_string(role.core_index);
    case RoleCategory::NonCore:
      if (role.non_core == NonCoreKind::Condition) return ":condition";
      return ":ARGM-" + to_string(role.non_core);
    case RoleCategory::Modifier:
      return ":" + to_string(role.modifier);
    case RoleCategory::Attribute:
      return role.raw_label;
  }
  return role.raw_label;
}

bool is_op_role(const std::string& label, int& index) {
  if (label.size() < 4 || label.compare(0, 3, ":op") != 0) return false;
  for (std::size_t i = 3; i < label.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(label[i]))) return false;
  }
  index = std::stoi(label.substr(3));
  return true;
}

std::optional<std::string> resolve_name(const AmrGraph& graph,
                                        const std::string& node_id) {
  for (const auto& edge : graph.edges_from(node_id)) {
    if (edge.role != ":name" || !edge.target.is_node()) continue;
    std::vector<std::pair<int, std::string>> ops;
    for (const auto& op : graph.edges_from(edge.target.text)) {
      int index = 0;
      if (!is_op_role(op.role, index)) continue;
      if (op.target.is_node()) {
        if (const auto* concept_label = graph.concept_of(op.target.text)) {
          ops.emplace_back(index, *concept_label);
        }
      } else {
        ops.emplace_back(index, op.target.text);
      }
    }
    if (ops.empty()) continue;
    std::stable_sort(ops.begin(), ops.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string joined;
    for (const auto& [_, part] : ops) {
      if (!joined.empty()) joined += " ";
      joined += part;
    }
    return joined;
  }
  return std::nullopt;
}

// concepts, resolved names, and constants in the subgraph under `value`
std::vector<std::string> subgraph_terms(const AmrGraph& graph,
                                        const Value& value) {
  std::vector<std::string> terms;
  std::set<std::string> seen_nodes;
  std::set<std::string> seen_terms;
  auto add = [&](const std::string& term) {
    if (!term.empty() && seen_terms.insert(term).second) terms.push_back(term);
  };

  std::vector<Value> queue = {value};
  while (!queue.empty()) {
    Value current = queue.front();
    queue.erase(queue.begin());
    if (!current.is_node()) {
      add(current.text);
      continue;
    }
    if (!seen_nodes.insert(current.text).second) continue;
    if (const auto* concept_label = graph.concept_of(current.text)) add(*concept_label);
    if (auto name = resolve_name(graph, current.text)) add(*name);
    for (const auto& edge : graph.edges_from(current.text)) {
      queue.push_back(edge.target);
    }
  }
  return terms;
}

}  // namespace

bool is_predicate_concept(const std::string& concept_label) {
  auto pos = concept_label.rfind('-');
  if (pos == std::string::npos || pos + 1 >= concept_label.size()) return false;
  for (std::size_t i = pos + 1; i < concept_label.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(concept_label[i]))) return false;
  }
  return pos > 0;
}

std::string predicate_lemma(const std::string& predicate) {
  if (!is_predicate_concept(predicate)) return predicate;
  return predicate.substr(0, predicate.rfind('-'));
}

bool EntityRef::is_entity() const {
  return !node_id.empty() && !is_predicate_concept(concept_label);
}

EntityRef resolve_entity(const AmrGraph& graph, const Value& target) {
  EntityRef ref;
  if (!target.is_node()) {
    ref.name = target.text;
    return ref;
  }
  ref.node_id = target.text;
  if (const auto* concept_label = graph.concept_of(target.text)) {
    ref.concept_label = *concept_label;
    ref.name = *concept_label;
  }
  if (auto name = resolve_name(graph, target.text)) {
    ref.name = *name;
    ref.named = true;
  }
  return ref;
}

std::optional<EntityRef> SemanticFrame::arg(
    const std::string& role_label) const {
  for (const auto* slot : {&core_args, &non_core_args, &modifiers}) {
    if (auto it = slot->find(role_label); it != slot->end()) return it->second;
  }
  return std::nullopt;
}

std::vector<std::string> SemanticFrame::entity_keys() const {
  std::set<std::string> keys;
  for (const auto& [_, ref] : core_args) {
    if (ref.is_entity()) keys.insert(ref.key());
  }
  return {keys.begin(), keys.end()};
}

bool SemanticFrame::mentions(const std::string& entity_name) const {
  if (entity_name.empty()) return false;
  if (predicate == entity_name || predicate_lemma(predicate) == entity_name) {
    return true;
  }
  for (const auto* slot : {&core_args, &non_core_args, &modifiers}) {
    for (const auto& [_, ref] : *slot) {
      if (ref.name == entity_name || ref.concept_label == entity_name) return true;
    }
  }
  return false;
}

std::vector<SemanticFrame> extract_frames(const AmrGraph& graph) {
  std::vector<SemanticFrame> frames;
  for (const auto& [node_id, concept_label] : graph.nodes) {
    if (!is_predicate_concept(concept_label)) continue;
    SemanticFrame frame;
    frame.frame_id = graph.graph_id + "#" + node_id;
    frame.graph_id = graph.graph_id;
    frame.doc_id = graph.doc_id;
    frame.sentence = graph.source_text;
    frame.node_id = node_id;
    frame.predicate = concept_label;
    frame.depth = subgraph_depth(graph, node_id);

    for (const auto& edge : graph.edges_from(node_id)) {
      Role role = classify_role(edge.role);
      EntityRef ref = resolve_entity(graph, edge.target);
      std::string key = canonical_role_key(role);
      switch (role.category) {
        case RoleCategory::CoreArg:
          frame.core_args[key] = ref;
          break;
        case RoleCategory::NonCore:
          frame.non_core_args[key] = ref;
          if (role.non_core == NonCoreKind::Cau ||
              role.non_core == NonCoreKind::Condition ||
              role.non_core == NonCoreKind::Prp) {
            frame.marker_terms[key] = subgraph_terms(graph, edge.target);
          }
          break;
        case RoleCategory::Modifier:
        case RoleCategory::Attribute:
          frame.modifiers[key] = ref;
          break;
      }
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

std::vector<Entity> extract_entities(const AmrGraph& graph,
                                     const std::vector<SemanticFrame>& frames) {
  (void)graph;
  std::vector<Entity> entities;
  std::map<std::string, std::size_t> position;
  for (const auto& frame : frames) {
    for (const auto& [label, ref] : frame.core_args) {
      if (!ref.is_entity()) continue;
      std::string id = ref.key();
      auto it = position.find(id);
      if (it == position.end()) {
        Entity entity;
        entity.entity_id = id;
        entity.canonical_name = ref.name;
        entity.concept_label = ref.concept_label;
        position[id] = entities.size();
        entities.push_back(std::move(entity));
        it = position.find(id);
      }
      entities[it->second].mentions.push_back(
          {frame.frame_id, classify_role(label)});
    }
  }
  return entities;
}

EntityIndex build_entity_index(const std::vector<Entity>& entities) {
  EntityIndex index;
  for (const auto& entity : entities) {
    auto [it, inserted] = index.by_id.emplace(entity.entity_id, entity);
    if (!inserted) {
      auto& mentions = it->second.mentions;
      mentions.insert(mentions.end(), entity.mentions.begin(),
                      entity.mentions.end());
    }
  }
  return index;
}

const Entity* EntityIndex::find(const std::string& entity_id) const {
  auto it = by_id.find(entity_id);
  return it == by_id.end() ? nullptr : &it->second;
}

}  // namespace semweave
