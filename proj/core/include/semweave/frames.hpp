#ifndef SEMWEAVE_FRAMES_HPP
#define SEMWEAVE_FRAMES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semweave/penman.hpp"
#include "semweave/roles.hpp"

namespace semweave {

// A participant slot value inside a frame, resolved from an edge target.
struct EntityRef {
  std::string name;  // :name op literals joined, else concept, else constant
  std::string concept_label;  // concept of the node; empty for constants
  std::string node_id;        // empty for constants
  bool named = false;         // resolved through a :name subgraph

  // identity used for cross-document merging
  std::string key() const { return name + "|" + concept_label; }

  // entity slots are non-predicate nodes; constants and nested
  // predicates do not participate in entity identity
  bool is_entity() const;

  bool operator==(const EntityRef& other) const = default;
};

// One predicate instance with its argument structure.
struct SemanticFrame {
  std::string frame_id;  // "<graph_id>#<node_id>"
  std::string graph_id;
  std::string doc_id;
  std::string sentence;
  std::string node_id;
  std::string predicate;  // concept with sense suffix, e.g. "announce-01"
  int depth = 0;          // longest path out of the predicate node, in edges

  // Keyed by canonical role label (":ARG0", ":ARGM-TMP", ":mod"; attribute
  // edges keep their raw label). Duplicate role edges overwrite in edge
  // order, so each key holds the last-seen value.
  std::map<std::string, EntityRef> core_args;
  std::map<std::string, EntityRef> non_core_args;
  std::map<std::string, EntityRef> modifiers;

  // Terms found under each causal marker's target subgraph (concepts,
  // resolved names, constants), keyed by the marker's canonical label.
  std::map<std::string, std::vector<std::string>> marker_terms;

  std::optional<EntityRef> arg(const std::string& role_label) const;
  // distinct core-argument entity keys, sorted
  std::vector<std::string> entity_keys() const;
  // true when any argument slot or the marker subgraph naming matches
  bool mentions(const std::string& entity_name) const;
};

struct EntityMention {
  std::string frame_id;
  Role role;
};

// A corpus-level entity: all frames referencing the same (name, concept).
struct Entity {
  std::string entity_id;  // "<canonical_name>|<concept>"
  std::string canonical_name;
  std::string concept_label;
  std::vector<EntityMention> mentions;
};

// Corpus-wide index of entities merged on (canonical_name, concept).
struct EntityIndex {
  std::map<std::string, Entity> by_id;

  const Entity* find(const std::string& entity_id) const;
  std::size_t size() const { return by_id.size(); }
};

// True for concepts carrying a trailing dash-digit sense suffix.
bool is_predicate_concept(const std::string& concept_label);

// "announce-01" -> "announce"; concepts without a suffix pass through.
std::string predicate_lemma(const std::string& predicate);

// Resolve an edge target to a slot value. Node targets with a :name
// subgraph use the joined :opN literals; other nodes use their concept;
// constants use their text.
EntityRef resolve_entity(const AmrGraph& graph, const Value& target);

// Lift every predicate node into a frame: each outgoing edge is filed
// under core_args / non_core_args / modifiers by its classified role.
// Frames follow node declaration order.
std::vector<SemanticFrame> extract_frames(const AmrGraph& graph);

// One Entity per distinct core-argument entity of the given frames.
std::vector<Entity> extract_entities(const AmrGraph& graph,
                                     const std::vector<SemanticFrame>& frames);

// Merge per-document entity lists on (canonical_name, concept).
EntityIndex build_entity_index(const std::vector<Entity>& entities);

}  // namespace semweave

#endif  // SEMWEAVE_FRAMES_HPP
