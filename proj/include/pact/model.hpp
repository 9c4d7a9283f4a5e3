#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pact/action.hpp"
#include "pact/effect.hpp"
#include "pact/errors.hpp"
#include "pact/formula.hpp"
#include "pact/term.hpp"

namespace pact {

// State-based control requirements: an invariant formula, "this event only
// in states satisfying phi", or "phi disables this event".
struct Requirement {
  enum class Kind { pure, event_implies, disables };
  Kind kind = Kind::pure;
  std::string name;
  FormulaPtr formula;
  std::optional<Action> action;

  bool operator==(const Requirement& o) const {
    return kind == o.kind && name == o.name &&
           formula_equal(formula, o.formula) && action == o.action;
  }
};

struct SupervisorDecl {
  TermPtr term;
  GrammarClass mode = GrammarClass::supervisor_event;

  bool operator==(const SupervisorDecl& o) const {
    return term_equal(term, o.term) && mode == o.mode;
  }
};

// A parsed model file: the single ingestion point for channel and data
// declarations, process definitions, plants, supervisors, encapsulation
// sets, requirements, the effect specification and renamings.
struct Model {
  std::vector<ChannelDecl> channels;  // declaration order
  ChannelClasses channel_classes;
  std::vector<std::string> data;
  std::map<std::string, std::vector<std::string>> groups;
  SymbolTablePtr symbols = std::make_shared<const SymbolTable>();
  std::map<std::string, TermPtr> defs;
  std::map<std::string, TermPtr> plants;
  std::map<std::string, SupervisorDecl> supervisors;
  std::map<std::string, std::vector<EncapPattern>> encapsulations;
  std::vector<Requirement> requirements;
  EffectSpec effect = EffectSpec::any_default();
  FormulaPtr init = f_true();
  std::map<std::string, RenamingMap> renamings;
  bool state_based = false;

  // Any named term: definitions, plants and supervisors alike.
  TermPtr lookup_term(const std::string& name) const {
    if (auto it = defs.find(name); it != defs.end()) return it->second;
    if (auto it = plants.find(name); it != plants.end()) return it->second;
    if (auto it = supervisors.find(name); it != supervisors.end())
      return it->second.term;
    return nullptr;
  }

  TermPtr expand(const TermPtr& t) const { return expand_refs(t, defs); }

  TermPtr expand_named(const std::string& name) const {
    TermPtr t = lookup_term(name);
    if (!t) throw Error("unknown process name: " + name);
    return expand(t);
  }

  const Requirement* find_requirement(const std::string& name) const {
    for (const auto& r : requirements)
      if (r.name == name) return &r;
    return nullptr;
  }
};

inline bool model_equal(const Model& a, const Model& b) {
  auto term_maps_equal = [](const std::map<std::string, TermPtr>& x,
                            const std::map<std::string, TermPtr>& y) {
    if (x.size() != y.size()) return false;
    for (auto itx = x.begin(), ity = y.begin(); itx != x.end(); ++itx, ++ity) {
      if (itx->first != ity->first || !term_equal(itx->second, ity->second))
        return false;
    }
    return true;
  };
  auto channels_equal = [&] {
    if (a.channels.size() != b.channels.size()) return false;
    for (size_t i = 0; i < a.channels.size(); ++i)
      if (a.channels[i].name != b.channels[i].name ||
          a.channels[i].cls != b.channels[i].cls)
        return false;
    return true;
  };
  auto effects_equal = [&] {
    const auto& ra = a.effect.rules();
    const auto& rb = b.effect.rules();
    if (ra.size() != rb.size()) return false;
    for (size_t i = 0; i < ra.size(); ++i) {
      if (!(ra[i].pattern == rb[i].pattern) || ra[i].kind != rb[i].kind ||
          ra[i].symbols != rb[i].symbols)
        return false;
      if ((ra[i].constraint == nullptr) != (rb[i].constraint == nullptr))
        return false;
      if (ra[i].constraint && !formula_equal(ra[i].constraint, rb[i].constraint))
        return false;
    }
    return true;
  };
  return channels_equal() && a.data == b.data && a.groups == b.groups &&
         *a.symbols == *b.symbols && term_maps_equal(a.defs, b.defs) &&
         term_maps_equal(a.plants, b.plants) &&
         a.supervisors == b.supervisors &&
         a.encapsulations == b.encapsulations &&
         a.requirements == b.requirements && effects_equal() &&
         formula_equal(a.init, b.init) && a.renamings == b.renamings &&
         a.state_based == b.state_based;
}

}  // namespace pact
