#ifndef SEMWEAVE_GENERATION_HPP
#define SEMWEAVE_GENERATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semweave/bridging.hpp"
#include "semweave/frames.hpp"

namespace semweave {

struct RoleChange {
  std::string entity;
  std::string role_in_a;
  std::string role_in_b;
};

// Everything a template or LLM prompt may reference about one bridge
// or reasoning path.
struct SemanticContext {
  std::string bridge_id;                  // unit id; "path|..." for paths
  std::vector<std::string> bridge_ids;    // member bridges (one for plain bridges)
  BridgeKind kind = BridgeKind::Entity;
  double strength = 0.0;
  int hop_count = 2;
  bool is_path = false;
  std::string frame_a_text;  // rendered "predicate(arg, arg)" form
  std::string frame_b_text;
  std::vector<std::string> path_frames;  // rendered frames in chain order
  std::string shared_entity;
  std::optional<RoleChange> role_change;          // entity bridges
  std::optional<std::string> marker_label;        // ":ARGM-CAU" etc.
  std::optional<std::string> marker_target;       // what the marker names
  std::optional<RelationClass> relation;          // predicate chains
  std::vector<std::string> source_docs;

  // template dispatch key: entity | predicate | causal | causal_condition | path
  std::string template_kind() const;
};

struct PromptTemplate {
  std::string template_id;
  std::string kind;      // dispatch key, see SemanticContext::template_kind
  std::string category;  // question type tag, e.g. "role-analysis"
  std::string pattern;   // with {entity} {frame_a} {frame_b} {marker} {path}
};

struct TemplateSet {
  std::vector<PromptTemplate> templates;

  std::vector<const PromptTemplate*> for_kind(const std::string& kind) const;
  bool empty() const { return templates.empty(); }
};

// Text format: blocks separated by blank lines; each block carries a
// "kind:" line, an optional "category:" line, and one pattern line per
// template. '#' comments ignored. Throws ParseError.
TemplateSet parse_templates(const std::string& contents);
TemplateSet default_templates();
std::string templates_to_text(const TemplateSet& set);

struct GeneratedQA {
  std::string question;
  std::string answer;
  std::string bridge_id;
  std::vector<std::string> bridge_ids;  // member bridges of the unit
  BridgeKind kind = BridgeKind::Entity;
  double strength = 0.0;
  int hop_count = 2;
  std::string generation_mode;  // "llm" | "template"
  std::string template_id;      // template mode
  std::string model_id;         // llm mode
  std::string difficulty;       // easy | medium | hard
  std::string question_type;    // template category
  std::vector<std::string> source_docs;
};

// Pluggable completion endpoint; failures are signalled by throwing.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const std::string& prompt) = 0;
  virtual std::string model_id() const = 0;
};

struct GenerationConfig {
  int max_questions = 0;             // 0: unlimited
  std::map<std::string, int> kind_quotas;  // by kind name; absent: unlimited
  bool include_paths = true;
  int max_path_frames = 4;
  int path_bridge_limit = 64;  // weave paths over at most this many bridges
};

// "announce-01(Apple, product)": predicate plus core args in index order.
std::string render_frame(const SemanticFrame& frame);

std::string difficulty_for_hops(int hop_count);

SemanticContext build_semantic_context(
    const Bridge& bridge, const std::map<std::string, SemanticFrame>& frames);

SemanticContext build_path_context(
    const ReasoningPath& path, const std::vector<Bridge>& bridges,
    const std::map<std::string, SemanticFrame>& frames);

struct RenderedPrompt {
  std::string text;
  std::string template_id;
  std::string category;
};

// Substitutes every placeholder; picks among same-kind templates by a
// stable hash of bridge_id. Throws NoTemplateForKind, UnresolvedPlaceholder.
RenderedPrompt render_prompt(const SemanticContext& context,
                             const TemplateSet& templates);

// Parses "Question:"/"Answer:" labeled lines out of a model response.
std::optional<std::pair<std::string, std::string>> parse_llm_response(
    const std::string& response);

// LLM mode when client != nullptr (falling back to template mode on
// failure); template mode recasts the rendered prompt as the question
// and assembles the answer from bridge evidence.
GeneratedQA generate_question(const SemanticContext& context,
                              LlmClient* client, const TemplateSet& templates);

// Selects bridges (and woven multi-frame paths) by strength descending
// under per-kind quotas and the max_questions cap, then generates QA.
std::vector<GeneratedQA> synthesize_corpus(
    const std::vector<Bridge>& bridges,
    const std::map<std::string, SemanticFrame>& frames,
    const GenerationConfig& config, const TemplateSet& templates,
    LlmClient* client = nullptr);

}  // namespace semweave

#endif  // SEMWEAVE_GENERATION_HPP
