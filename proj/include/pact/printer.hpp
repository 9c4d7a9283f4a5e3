#pragma once

#include <sstream>
#include <string>

#include "pact/model.hpp"

namespace pact {

// Canonical model printing; parse(print(m)) is structurally equal to m.
inline std::string print_model(const Model& m, bool full_parens = false) {
  std::ostringstream out;
  auto idlist = [&](const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i) {
      if (i) out << ", ";
      out << names[i];
    }
  };

  std::vector<std::string> unc, ctl;
  for (const auto& c : m.channels)
    (c.cls == ChannelClass::uncontrollable ? unc : ctl).push_back(c.name);
  if (!unc.empty()) {
    out << "uncontrollable ";
    idlist(unc);
    out << "\n";
  }
  if (!ctl.empty()) {
    out << "controllable ";
    idlist(ctl);
    out << "\n";
  }
  if (!m.data.empty()) {
    out << "data ";
    idlist(m.data);
    out << "\n";
  }
  for (const auto& [name, members] : m.groups) {
    out << "group " << name << " = { ";
    idlist(members);
    out << " }\n";
  }
  for (const auto& [name, t] : m.defs)
    out << "def " << name << " = " << term_str(t, full_parens) << "\n";
  for (const auto& [name, t] : m.plants)
    out << "plant " << name << " = " << term_str(t, full_parens) << "\n";
  for (const auto& [name, s] : m.supervisors) {
    out << "supervisor ";
    out << (s.mode == GrammarClass::supervisor_state ? "state " : "event ");
    out << name << " = " << term_str(s.term, full_parens) << "\n";
  }
  for (const auto& [name, pats] : m.encapsulations) {
    out << "encap " << name << " = { ";
    for (size_t i = 0; i < pats.size(); ++i) {
      if (i) out << ", ";
      out << pats[i].str();
    }
    out << " }\n";
  }
  bool default_effect = m.effect.rules().size() == 1 &&
                        m.effect.rules()[0].pattern.is_wildcard() &&
                        m.effect.rules()[0].kind == EffectKind::any;
  if (!default_effect)
    for (const auto& rule : m.effect.rules()) out << "effect " << rule.str() << "\n";
  if (m.init->kind != Formula::Kind::tt)
    out << "init " << formula_str(m.init, full_parens) << "\n";
  for (const auto& r : m.requirements) {
    out << "req " << r.name << ": ";
    switch (r.kind) {
      case Requirement::Kind::pure:
        out << formula_str(r.formula, full_parens);
        break;
      case Requirement::Kind::event_implies:
        out << "enables(" << r.action->str() << ") => "
            << formula_str(r.formula, full_parens);
        break;
      case Requirement::Kind::disables:
        // The formula must stay below the top-level implication.
        out << formula_str(r.formula, full_parens,
                           r.formula->kind == Formula::Kind::implication ? 1 : 0)
            << " => disabled(" << r.action->str() << ")";
        break;
    }
    out << "\n";
  }
  for (const auto& [name, xi] : m.renamings) {
    out << "rename " << name << ": ";
    const auto& entries = xi.entries();
    for (size_t i = 0; i < entries.size(); ++i) {
      if (i) out << ", ";
      const auto& e = entries[i];
      Action from{e.channel, e.sends, e.receives, e.datum_filter};
      Action to{e.to_channel, e.to_sends, e.to_receives, {}};
      out << from.str() << " -> " << to.str();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace pact
