#ifndef SEMWEAVE_BRIDGING_HPP
#define SEMWEAVE_BRIDGING_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semweave/frames.hpp"
#include "semweave/roles.hpp"
#include "semweave/strength.hpp"

namespace semweave {

enum class BridgeKind { Entity, PredicateChain, Causal };

std::string to_string(BridgeKind kind);
BridgeKind bridge_kind_from_string(const std::string& text);

enum class RelationClass { Causation, Temporal, Logical };

std::string to_string(RelationClass cls);
RelationClass relation_class_from_string(const std::string& text);

struct EntityEvidence {
  std::string entity_id;
  std::string role_in_a;  // raw label, e.g. ":ARG0"
  std::string role_in_b;
};

struct PredicateEvidence {
  std::string predicate_a;
  std::string predicate_b;
  RelationClass relation = RelationClass::Causation;
};

struct CausalEvidence {
  NonCoreKind marker = NonCoreKind::Cau;  // Cau, Condition, or Prp
  std::string marker_target;              // entity name the marker points at
};

// A cross-document link between two frames. frame_a bears the causal
// marker for causal bridges; evidence fields are kind-specific.
struct Bridge {
  std::string bridge_id;
  BridgeKind kind = BridgeKind::Entity;
  std::string frame_a;
  std::string frame_b;
  std::vector<std::string> shared_entities;  // entity ids
  std::optional<EntityEvidence> entity_evidence;
  std::optional<PredicateEvidence> predicate_evidence;
  std::optional<CausalEvidence> causal_evidence;
  StrengthBreakdown strength;  // filled by the scoring pass
};

// Directional table of curated predicate relations. Rows are ordered:
// (earlier/cause predicate, later/effect predicate) -> relation class.
class PredicateRelationTable {
 public:
  void add(const std::string& predicate_a, const std::string& predicate_b,
           RelationClass cls);
  std::optional<RelationClass> lookup(const std::string& predicate_a,
                                      const std::string& predicate_b) const;
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  // File format: one "predicate_a predicate_b relation_class" per line,
  // '#' comments and blank lines ignored.
  static PredicateRelationTable from_text(const std::string& contents);
  static PredicateRelationTable builtin();
  std::string to_text() const;

 private:
  std::map<std::pair<std::string, std::string>, RelationClass> rows_;
};

struct BridgeConfig {
  double theta_role = 0.4;
  bool strict_role_variation = false;
  bool cross_document_only = true;
  double min_strength = 0.3;
  PredicateRelationTable relation_table = PredicateRelationTable::builtin();
};

// Distance table: 0 same role; 0.5 between distinct core-arg indices;
// 0.75 between core and non-core; 1.0 otherwise. Symmetric.
double role_distance(const Role& r1, const Role& r2);

std::vector<Bridge> build_entity_bridges(
    const std::vector<SemanticFrame>& frames_a,
    const std::vector<SemanticFrame>& frames_b, const EntityIndex& index,
    const BridgeConfig& config);

// Throws MissingRelationTable when the config table is empty.
std::vector<Bridge> build_predicate_bridges(
    const std::vector<SemanticFrame>& frames_a,
    const std::vector<SemanticFrame>& frames_b, const EntityIndex& index,
    const BridgeConfig& config);

std::vector<Bridge> build_causal_bridges(
    const std::vector<SemanticFrame>& frames_a,
    const std::vector<SemanticFrame>& frames_b, const EntityIndex& index,
    const BridgeConfig& config);

// A chain of bridges joined at shared frames.
struct ReasoningPath {
  std::vector<std::string> bridge_ids;
  std::vector<std::string> frame_sequence;  // distinct frames in chain order
  int hop_count = 0;                        // = frame_sequence.size()
};

// Exhaustive enumeration of simple paths (no repeated frame) up to
// max_frames frames. Every input bridge yields its own 2-frame path.
// A path and its reversal count once.
std::vector<ReasoningPath> weave_paths(const std::vector<Bridge>& bridges,
                                       int max_frames = 4);

}  // namespace semweave

#endif  // SEMWEAVE_BRIDGING_HPP
