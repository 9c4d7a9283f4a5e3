#pragma once

#include <sstream>
#include <string>

#include "pact/lts.hpp"

namespace pact {

namespace detail {
inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace detail

// Graphviz export. Terminating states are drawn double-circled; state-based
// states carry their satisfied-symbol list.
inline std::string to_dot(const Lts& l, const std::string& name = "lts") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (uint32_t s = 0; s < l.num_states(); ++s) {
    out << "  s" << s << " [label=\"" << detail::dot_escape(l.state(s).str())
        << "\"";
    if (l.terminating(s)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (size_t i = 0; i < l.initial().size(); ++i) {
    out << "  init" << i << " [shape=point, style=invis];\n";
    out << "  init" << i << " -> s" << l.initial()[i] << ";\n";
  }
  for (uint32_t s = 0; s < l.num_states(); ++s)
    for (const auto& [lbl, dst] : l.out(s))
      out << "  s" << s << " -> s" << dst << " [label=\""
          << detail::dot_escape(l.label(lbl).str(false)) << "\"];\n";
  out << "}\n";
  return out.str();
}

// Aldebaran format: a des header naming the first initial state, then one
// line per transition.
inline std::string to_aut(const Lts& l) {
  std::ostringstream out;
  uint32_t first = l.initial().empty() ? 0 : l.initial()[0];
  out << "des (" << first << ", " << l.num_transitions() << ", "
      << l.num_states() << ")\n";
  for (uint32_t s = 0; s < l.num_states(); ++s)
    for (const auto& [lbl, dst] : l.out(s))
      out << "(" << s << ", \"" << l.label(lbl).str(false) << "\", " << dst
          << ")\n";
  return out.str();
}

}  // namespace pact
