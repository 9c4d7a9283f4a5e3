#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "pact/action.hpp"
#include "pact/formula.hpp"
#include "pact/term.hpp"

namespace pact {

// One explicit state: a normalized term, plus a valuation in the
// state-based semantics. Generated LTSs may carry no term at all.
struct LtsState {
  TermPtr term;
  std::optional<Valuation> valuation;

  std::string str() const {
    std::string s = term ? term_str(term) : "";
    if (valuation) s += (s.empty() ? "" : " @ ") + valuation->str();
    return s;
  }
};

struct BuildStats {
  size_t max_states = 0;
  size_t transitions = 0;
  bool normalized = false;
};

// Explicit-state labeled transition system with a termination marking.
// Construction is deterministic: rebuilding from the same input yields
// identical state numbering and transition order.
class Lts {
 public:
  uint32_t add_state(LtsState s, bool terminating) {
    states_.push_back(std::move(s));
    terminating_.push_back(terminating);
    out_.emplace_back();
    return (uint32_t)(states_.size() - 1);
  }

  uint32_t intern_action(const Action& a) {
    auto it = action_ids_.find(a);
    if (it != action_ids_.end()) return it->second;
    uint32_t id = (uint32_t)actions_.size();
    actions_.push_back(a);
    action_ids_.emplace(a, id);
    return id;
  }

  void add_transition(uint32_t src, const Action& a, uint32_t dst) {
    out_[src].emplace_back(intern_action(a), dst);
    ++stats_.transitions;
  }

  void add_initial(uint32_t s) { initial_.push_back(s); }

  size_t num_states() const { return states_.size(); }
  size_t num_transitions() const { return stats_.transitions; }
  const std::vector<uint32_t>& initial() const { return initial_; }
  const LtsState& state(uint32_t i) const { return states_[i]; }
  bool terminating(uint32_t i) const { return terminating_[i]; }
  const std::vector<std::pair<uint32_t, uint32_t>>& out(uint32_t i) const {
    return out_[i];
  }
  const Action& label(uint32_t id) const { return actions_[id]; }
  const std::vector<Action>& labels() const { return actions_; }
  BuildStats& stats() { return stats_; }
  const BuildStats& stats() const { return stats_; }

  std::set<Action> label_set() const {
    return std::set<Action>(actions_.begin(), actions_.end());
  }

  bool has_out(uint32_t i, const Action& a) const {
    auto it = action_ids_.find(a);
    if (it == action_ids_.end()) return false;
    for (const auto& [lbl, dst] : out_[i])
      if (lbl == it->second) return true;
    return false;
  }

 private:
  std::vector<LtsState> states_;
  std::vector<bool> terminating_;
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> out_;
  std::vector<uint32_t> initial_;
  std::vector<Action> actions_;
  std::unordered_map<Action, uint32_t, ActionHash> action_ids_;
  BuildStats stats_;
};

// Relabels every transition through the renaming map. Unlike the term-level
// traversal this also reaches actions that only arise from synchronization
// merges, e.g. completed communications inside an encapsulated plant.
inline Lts rename_labels(const Lts& l, const RenamingMap& xi) {
  Lts out;
  out.stats() = l.stats();
  for (uint32_t s = 0; s < l.num_states(); ++s)
    out.add_state(l.state(s), l.terminating(s));
  for (uint32_t s : l.initial()) out.add_initial(s);
  out.stats().transitions = 0;
  for (uint32_t s = 0; s < l.num_states(); ++s)
    for (const auto& [lbl, dst] : l.out(s))
      out.add_transition(s, xi.apply(l.label(lbl)), dst);
  return out;
}

// Nondeterministic replay of an action sequence from the initial states;
// returns the set of states reachable by exactly that trace.
inline std::set<uint32_t> replay_trace(const Lts& lts,
                                       const std::vector<Action>& trace) {
  std::set<uint32_t> cur(lts.initial().begin(), lts.initial().end());
  for (const Action& a : trace) {
    std::set<uint32_t> next;
    for (uint32_t s : cur)
      for (const auto& [lbl, dst] : lts.out(s))
        if (lts.label(lbl) == a) next.insert(dst);
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return cur;
}

}  // namespace pact
