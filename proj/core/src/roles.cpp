#include "semweave/roles.hpp"

#include <map>

#include "semweave/errors.hpp"

namespace semweave {

namespace {

const std::map<std::string, NonCoreKind>& non_core_labels() {
  static const std::map<std::string, NonCoreKind> labels = {
      {":ARGM-TMP", NonCoreKind::Tmp},  {":ARGM-CAU", NonCoreKind::Cau},
      {":ARGM-LOC", NonCoreKind::Loc},  {":ARGM-PRP", NonCoreKind::Prp},
      {":ARGM-MNR", NonCoreKind::Mnr},  {":ARGM-ADV", NonCoreKind::Adv},
      {":ARGM-DIR", NonCoreKind::Dir},  {":ARGM-EXT", NonCoreKind::Ext},
      {":ARGM-GOL", NonCoreKind::Gol},  {":condition", NonCoreKind::Condition},
      {":time", NonCoreKind::Tmp},      {":cause", NonCoreKind::Cau},
      {":location", NonCoreKind::Loc},  {":purpose", NonCoreKind::Prp},
      {":manner", NonCoreKind::Mnr},    {":direction", NonCoreKind::Dir},
      {":extent", NonCoreKind::Ext},
  };
  return labels;
}

const std::map<std::string, ModifierKind>& modifier_labels() {
  static const std::map<std::string, ModifierKind> labels = {
      {":mod", ModifierKind::Mod},
      {":domain", ModifierKind::Domain},
      {":poss", ModifierKind::Poss},
      {":name", ModifierKind::Name},
  };
  return labels;
}

}  // namespace

std::string to_string(NonCoreKind kind) {
  switch (kind) {
    case NonCoreKind::Tmp: return "TMP";
    case NonCoreKind::Cau: return "CAU";
    case NonCoreKind::Loc: return "LOC";
    case NonCoreKind::Prp: return "PRP";
    case NonCoreKind::Mnr: return "MNR";
    case NonCoreKind::Adv: return "ADV";
    case NonCoreKind::Dir: return "DIR";
    case NonCoreKind::Ext: return "EXT";
    case NonCoreKind::Gol: return "GOL";
    case NonCoreKind::Condition: return "condition";
  }
  return "?";
}

std::string to_string(ModifierKind kind) {
  switch (kind) {
    case ModifierKind::Mod: return "mod";
    case ModifierKind::Domain: return "domain";
    case ModifierKind::Poss: return "poss";
    case ModifierKind::Name: return "name";
  }
  return "?";
}

std::string to_string(RoleCategory category) {
  switch (category) {
    case RoleCategory::CoreArg: return "core";
    case RoleCategory::NonCore: return "non_core";
    case RoleCategory::Modifier: return "modifier";
    case RoleCategory::Attribute: return "attribute";
  }
  return "?";
}

Role classify_role(const std::string& raw_label) {
  if (raw_label.empty() || raw_label[0] != ':') {
    throw MalformedLabel("role label must start with ':': '" + raw_label +
                         "'");
  }
  Role role;
  role.raw_label = raw_label;

  if (raw_label.size() == 5 && raw_label.compare(0, 4, ":ARG") == 0 &&
      raw_label[4] >= '0' && raw_label[4] <= '5') {
    role.category = RoleCategory::CoreArg;
    role.core_index = raw_label[4] - '0';
    return role;
  }
  if (auto it = non_core_labels().find(raw_label);
      it != non_core_labels().end()) {
    role.category = RoleCategory::NonCore;
    role.non_core = it->second;
    return role;
  }
  if (auto it = modifier_labels().find(raw_label);
      it != modifier_labels().end()) {
    role.category = RoleCategory::Modifier;
    role.modifier = it->second;
    return role;
  }
  role.category = RoleCategory::Attribute;
  return role;
}

bool Role::same_role(const Role& other) const {
  if (category != other.category) return false;
  switch (category) {
    case RoleCategory::CoreArg: return core_index == other.core_index;
    case RoleCategory::NonCore: return non_core == other.non_core;
    case RoleCategory::Modifier: return modifier == other.modifier;
    case RoleCategory::Attribute: return raw_label == other.raw_label;
  }
  return false;
}

std::string role_label(const Role& role) {
  return role.raw_label;
}

}  // namespace semweave
