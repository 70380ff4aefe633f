#ifndef SEMWEAVE_ROLES_HPP
#define SEMWEAVE_ROLES_HPP

#include <string>

namespace semweave {

enum class RoleCategory { CoreArg, NonCore, Modifier, Attribute };

// Canonical non-core argument kinds. The inventory is closed here; labels
// outside it classify as Attribute.
enum class NonCoreKind { Tmp, Cau, Loc, Prp, Mnr, Adv, Dir, Ext, Gol, Condition };

enum class ModifierKind { Mod, Domain, Poss, Name };

// One classified edge label. `category` decides which of the optional
// payload fields is meaningful: core_index for CoreArg, non_core for
// NonCore, modifier for Modifier. Attribute keeps only the raw label.
struct Role {
  RoleCategory category = RoleCategory::Attribute;
  int core_index = -1;
  NonCoreKind non_core = NonCoreKind::Tmp;
  ModifierKind modifier = ModifierKind::Mod;
  std::string raw_label;

  // Semantic identity: category plus index/kind; attributes compare by
  // raw label since they carry no kind.
  bool same_role(const Role& other) const;
};

// Total classification of a raw edge label (":ARG0", ":ARGM-CAU", ":mod",
// ":quant", ...). Unknown labels map to Attribute. Throws MalformedLabel
// when the label does not start with ':'.
Role classify_role(const std::string& raw_label);

std::string to_string(NonCoreKind kind);
std::string to_string(ModifierKind kind);
std::string to_string(RoleCategory category);

// Canonical display label for a role, e.g. ":ARG0", ":ARGM-CAU", ":mod".
std::string role_label(const Role& role);

}  // namespace semweave

#endif  // SEMWEAVE_ROLES_HPP
