#include "semweave/generation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "semweave/cache.hpp"
#include "semweave/errors.hpp"

namespace semweave {

namespace {

std::string entity_display(const std::string& entity_id) {
  auto bar = entity_id.find('|');
  return bar == std::string::npos ? entity_id : entity_id.substr(0, bar);
}

std::string strip_colon(const std::string& label) {
  return !label.empty() && label[0] == ':' ? label.substr(1) : label;
}

const SemanticFrame& frame_or_throw(
    const std::map<std::string, SemanticFrame>& frames,
    const std::string& frame_id) {
  auto it = frames.find(frame_id);
  if (it == frames.end()) {
    throw DanglingReference("bridge references unknown frame '" + frame_id +
                            "'");
  }
  return it->second;
}

std::string join(const std::vector<std::string>& parts,
                 const std::string& sep) {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += sep;
    out += part;
  }
  return out;
}

void push_unique(std::vector<std::string>& values, const std::string& value) {
  if (std::find(values.begin(), values.end(), value) == values.end()) {
    values.push_back(value);
  }
}

std::string relation_verb(RelationClass cls) {
  switch (cls) {
    case RelationClass::Causation: return "leads to";
    case RelationClass::Temporal: return "precedes";
    case RelationClass::Logical: return "entails";
  }
  return "relates to";
}

std::string template_answer(const SemanticContext& context) {
  std::ostringstream out;
  if (context.is_path) {
    out << "The chain is " << join(context.path_frames, " -> ") << ".";
    return out.str();
  }
  switch (context.kind) {
    case BridgeKind::Entity: {
      const auto& rc = context.role_change;
      out << context.shared_entity << " acts as "
          << (rc ? strip_colon(rc->role_in_a) : "a participant") << " in "
          << context.frame_a_text << " and as "
          << (rc ? strip_colon(rc->role_in_b) : "a participant") << " in "
          << context.frame_b_text << ".";
      return out.str();
    }
    case BridgeKind::PredicateChain: {
      std::string verb = context.relation ? relation_verb(*context.relation)
                                          : "relates to";
      out << context.frame_a_text << " " << verb << " "
          << context.frame_b_text;
      if (!context.shared_entity.empty()) {
        out << "; both involve " << context.shared_entity;
      }
      out << ".";
      return out.str();
    }
    case BridgeKind::Causal: {
      if (context.marker_label && *context.marker_label == ":condition") {
        out << context.frame_a_text << " leads to " << context.frame_b_text
            << " under the condition of "
            << context.marker_target.value_or("the stated condition") << ".";
      } else {
        out << "The chain runs from "
            << context.marker_target.value_or("the stated cause") << " to "
            << context.frame_a_text << " and on to " << context.frame_b_text
            << ".";
      }
      return out.str();
    }
  }
  return out.str();
}

std::string build_llm_prompt(const SemanticContext& context,
                             const RenderedPrompt& rendered) {
  std::ostringstream out;
  out << "You are given a cross-document semantic bridge.\n";
  out << "Bridge kind: " << to_string(context.kind) << "\n";
  out << "Frame A: " << context.frame_a_text << "\n";
  out << "Frame B: " << context.frame_b_text << "\n";
  if (!context.shared_entity.empty()) {
    out << "Shared entity: " << context.shared_entity << "\n";
  }
  if (context.marker_label) {
    out << "Causal marker: " << *context.marker_label << " ("
        << context.marker_target.value_or("") << ")\n";
  }
  if (context.is_path) {
    out << "Reasoning path: " << join(context.path_frames, " -> ") << "\n";
  }
  out << "Seed question: " << rendered.text << "\n";
  out << "Write one multi-hop question grounded in both frames and its "
         "answer.\n";
  out << "Respond with exactly two lines:\nQuestion: ...\nAnswer: ...\n";
  return out.str();
}

}  // namespace

std::string SemanticContext::template_kind() const {
  if (is_path) return "path";
  switch (kind) {
    case BridgeKind::Entity: return "entity";
    case BridgeKind::PredicateChain: return "predicate";
    case BridgeKind::Causal:
      return marker_label && *marker_label == ":condition"
                 ? "causal_condition"
                 : "causal";
  }
  return "entity";
}

std::vector<const PromptTemplate*> TemplateSet::for_kind(
    const std::string& kind) const {
  std::vector<const PromptTemplate*> out;
  for (const auto& t : templates) {
    if (t.kind == kind) out.push_back(&t);
  }
  return out;
}

TemplateSet parse_templates(const std::string& contents) {
  TemplateSet set;
  std::istringstream in(contents);
  std::string line;
  std::string kind;
  std::string category;
  std::map<std::string, int> ordinal;

  auto reset = [&] {
    kind.clear();
    category.clear();
  };

  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.empty()) {
      reset();
      continue;
    }
    if (line[0] == '#') continue;
    if (line.rfind("kind:", 0) == 0) {
      kind = line.substr(5);
      kind.erase(0, kind.find_first_not_of(' '));
      continue;
    }
    if (line.rfind("category:", 0) == 0) {
      category = line.substr(9);
      category.erase(0, category.find_first_not_of(' '));
      continue;
    }
    if (kind.empty()) {
      throw ParseError("template pattern before any 'kind:' header: '" +
                       line + "'");
    }
    PromptTemplate t;
    t.kind = kind;
    t.category = category.empty() ? kind : category;
    t.pattern = line;
    t.template_id = kind + "-" + std::to_string(ordinal[kind]++);
    set.templates.push_back(std::move(t));
  }
  return set;
}

TemplateSet default_templates() {
  static const char* text =
      "kind: entity\n"
      "category: role-analysis\n"
      "What different roles does {entity} play in the contexts of {frame_a} "
      "and {frame_b}?\n"
      "\n"
      "kind: predicate\n"
      "category: process\n"
      "What is the sequence from the action {frame_a} to the action "
      "{frame_b} involving {entity}?\n"
      "\n"
      "kind: causal\n"
      "category: multi-step-causation\n"
      "Trace the causal chain from {marker} through {frame_a} to "
      "{frame_b}.\n"
      "\n"
      "kind: causal_condition\n"
      "category: conditional\n"
      "Under what conditions does {frame_a} lead to {frame_b}?\n"
      "\n"
      "kind: path\n"
      "category: multi-step-reasoning\n"
      "What is the chain of reasoning that links {path}?\n";
  return parse_templates(text);
}

std::string templates_to_text(const TemplateSet& set) {
  std::string out;
  for (const auto& t : set.templates) {
    if (!out.empty()) out += "\n";
    out += "kind: " + t.kind + "\n";
    out += "category: " + t.category + "\n";
    out += t.pattern + "\n";
  }
  return out;
}

std::string render_frame(const SemanticFrame& frame) {
  std::vector<std::string> args;
  for (const auto& [_, ref] : frame.core_args) {
    push_unique(args, ref.name);
  }
  if (args.empty()) return frame.predicate;
  return frame.predicate + "(" + join(args, ", ") + ")";
}

std::string difficulty_for_hops(int hop_count) {
  if (hop_count <= 2) return "easy";
  if (hop_count == 3) return "medium";
  return "hard";
}

SemanticContext build_semantic_context(
    const Bridge& bridge, const std::map<std::string, SemanticFrame>& frames) {
  const auto& fa = frame_or_throw(frames, bridge.frame_a);
  const auto& fb = frame_or_throw(frames, bridge.frame_b);

  SemanticContext context;
  context.bridge_id = bridge.bridge_id;
  context.bridge_ids = {bridge.bridge_id};
  context.kind = bridge.kind;
  context.strength = bridge.strength.total;
  context.hop_count = 2;
  context.frame_a_text = render_frame(fa);
  context.frame_b_text = render_frame(fb);
  push_unique(context.source_docs, fa.doc_id);
  push_unique(context.source_docs, fb.doc_id);

  if (!bridge.shared_entities.empty()) {
    context.shared_entity = entity_display(bridge.shared_entities.front());
  }
  if (bridge.entity_evidence) {
    const auto& ev = *bridge.entity_evidence;
    context.shared_entity = entity_display(ev.entity_id);
    context.role_change =
        RoleChange{entity_display(ev.entity_id), ev.role_in_a, ev.role_in_b};
  }
  if (bridge.predicate_evidence) {
    context.relation = bridge.predicate_evidence->relation;
  }
  if (bridge.causal_evidence) {
    const auto& ev = *bridge.causal_evidence;
    context.marker_label =
        ev.marker == NonCoreKind::Condition
            ? ":condition"
            : ":ARGM-" + to_string(ev.marker);
    context.marker_target = ev.marker_target;
  }
  return context;
}

SemanticContext build_path_context(
    const ReasoningPath& path, const std::vector<Bridge>& bridges,
    const std::map<std::string, SemanticFrame>& frames) {
  std::map<std::string, const Bridge*> by_id;
  for (const auto& b : bridges) by_id[b.bridge_id] = &b;

  SemanticContext context;
  context.is_path = true;
  context.hop_count = path.hop_count;
  context.bridge_id = "path|" + join(path.bridge_ids, "|");
  context.bridge_ids = path.bridge_ids;

  double sum = 0.0;
  const Bridge* strongest = nullptr;
  for (const auto& id : path.bridge_ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw DanglingReference("path references unknown bridge '" + id + "'");
    }
    sum += it->second->strength.total;
    if (!strongest ||
        it->second->strength.total > strongest->strength.total) {
      strongest = it->second;
    }
  }
  context.strength = path.bridge_ids.empty()
                         ? 0.0
                         : sum / static_cast<double>(path.bridge_ids.size());
  if (strongest) {
    context.kind = strongest->kind;
    if (!strongest->shared_entities.empty()) {
      context.shared_entity =
          entity_display(strongest->shared_entities.front());
    }
  }
  for (const auto& frame_id : path.frame_sequence) {
    const auto& frame = frame_or_throw(frames, frame_id);
    context.path_frames.push_back(render_frame(frame));
    push_unique(context.source_docs, frame.doc_id);
  }
  if (!context.path_frames.empty()) {
    context.frame_a_text = context.path_frames.front();
    context.frame_b_text = context.path_frames.back();
  }
  return context;
}

RenderedPrompt render_prompt(const SemanticContext& context,
                             const TemplateSet& templates) {
  std::string kind = context.template_kind();
  auto candidates = templates.for_kind(kind);
  if (candidates.empty()) {
    throw NoTemplateForKind("no template for kind '" + kind + "'");
  }
  std::size_t pick = fnv1a64(context.bridge_id) % candidates.size();
  const PromptTemplate& chosen = *candidates[pick];

  std::map<std::string, std::string> values = {
      {"entity", context.shared_entity},
      {"frame_a", context.frame_a_text},
      {"frame_b", context.frame_b_text},
      {"marker", context.marker_target.value_or("")},
      {"path", join(context.path_frames, " -> ")},
  };

  std::string out;
  const std::string& pattern = chosen.pattern;
  std::size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] != '{') {
      out.push_back(pattern[i++]);
      continue;
    }
    auto close = pattern.find('}', i);
    if (close == std::string::npos) {
      throw UnresolvedPlaceholder("unterminated placeholder in template '" +
                                  chosen.template_id + "'");
    }
    std::string name = pattern.substr(i + 1, close - i - 1);
    auto it = values.find(name);
    if (it == values.end() || it->second.empty()) {
      throw UnresolvedPlaceholder("placeholder {" + name +
                                  "} has no value for bridge '" +
                                  context.bridge_id + "'");
    }
    out += it->second;
    i = close + 1;
  }
  return {out, chosen.template_id, chosen.category};
}

std::optional<std::pair<std::string, std::string>> parse_llm_response(
    const std::string& response) {
  std::istringstream in(response);
  std::string line;
  std::string question;
  std::string answer;
  auto match = [](const std::string& line, const char* label,
                  std::string& out) {
    std::string lower;
    for (char c : line) {
      lower.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    std::string needle = label;
    if (lower.rfind(needle, 0) != 0) return false;
    std::string rest = line.substr(needle.size());
    auto start = rest.find_first_not_of(" \t");
    out = start == std::string::npos ? "" : rest.substr(start);
    return true;
  };
  while (std::getline(in, line)) {
    if (question.empty() && match(line, "question:", question)) continue;
    if (answer.empty()) match(line, "answer:", answer);
  }
  if (question.empty() || answer.empty()) return std::nullopt;
  return std::make_pair(question, answer);
}

GeneratedQA generate_question(const SemanticContext& context,
                              LlmClient* client,
                              const TemplateSet& templates) {
  RenderedPrompt rendered = render_prompt(context, templates);

  GeneratedQA qa;
  qa.bridge_id = context.bridge_id;
  qa.bridge_ids = context.bridge_ids;
  qa.kind = context.kind;
  qa.strength = context.strength;
  qa.hop_count = context.hop_count;
  qa.difficulty = difficulty_for_hops(context.hop_count);
  qa.question_type = rendered.category;
  qa.source_docs = context.source_docs;

  if (client != nullptr) {
    try {
      std::string response = client->complete(build_llm_prompt(context, rendered));
      if (auto parsed = parse_llm_response(response)) {
        qa.question = parsed->first;
        qa.answer = parsed->second;
        qa.generation_mode = "llm";
        qa.model_id = client->model_id();
        return qa;
      }
    } catch (const std::exception&) {
      // fall through to template mode
    }
  }

  qa.question = rendered.text;
  qa.answer = template_answer(context);
  qa.generation_mode = "template";
  qa.template_id = rendered.template_id;
  return qa;
}

std::vector<GeneratedQA> synthesize_corpus(
    const std::vector<Bridge>& bridges,
    const std::map<std::string, SemanticFrame>& frames,
    const GenerationConfig& config, const TemplateSet& templates,
    LlmClient* client) {
  std::vector<SemanticContext> units;
  units.reserve(bridges.size());
  for (const auto& bridge : bridges) {
    units.push_back(build_semantic_context(bridge, frames));
  }

  if (config.include_paths && !bridges.empty()) {
    std::vector<Bridge> pool(
        bridges.begin(),
        bridges.begin() + std::min<std::size_t>(bridges.size(),
                                                config.path_bridge_limit));
    for (const auto& path : weave_paths(pool, config.max_path_frames)) {
      if (path.hop_count < 3) continue;  // bridges already cover 2-frame paths
      units.push_back(build_path_context(path, pool, frames));
    }
  }

  std::stable_sort(units.begin(), units.end(),
                   [](const SemanticContext& a, const SemanticContext& b) {
                     if (a.strength != b.strength) {
                       return a.strength > b.strength;
                     }
                     return a.bridge_id < b.bridge_id;
                   });

  std::vector<GeneratedQA> out;
  std::map<std::string, int> used;
  std::set<std::string> seen_questions;
  for (const auto& unit : units) {
    if (config.max_questions > 0 &&
        static_cast<int>(out.size()) >= config.max_questions) {
      break;
    }
    std::string kind_name = to_string(unit.kind);
    auto quota = config.kind_quotas.find(kind_name);
    if (quota != config.kind_quotas.end() &&
        used[kind_name] >= quota->second) {
      continue;
    }
    GeneratedQA qa = generate_question(unit, client, templates);
    if (!seen_questions.insert(qa.question).second) continue;
    ++used[kind_name];
    out.push_back(std::move(qa));
  }
  return out;
}

}  // namespace semweave
