#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pact/errors.hpp"
#include "pact/lts.hpp"
#include "pact/pbisim.hpp"
#include "pact/term.hpp"

namespace pact {

// Verdict of a supervisory check, with replayable evidence on failure.
struct ControlVerdict {
  bool pass = false;
  std::vector<std::string> checks_run;
  std::vector<Action> trace;             // witness trace, one action per step
  std::optional<uint32_t> witness_state; // state the trace leads to
  std::vector<PbisimCex> pbisim_cex;
  std::vector<std::string> warnings;
  std::string detail;
};

// The closed control loop: the supervisor composed in parallel with the
// plant, encapsulated to force the intended communications.
inline TermPtr compose_supervised(const TermPtr& plant, const TermPtr& supervisor,
                                  std::vector<EncapPattern> E) {
  return t_encap(std::move(E), t_par(supervisor, plant));
}

namespace detail {

// BFS parents for shortest-trace reconstruction.
struct Bfs {
  std::vector<int> parent;
  std::vector<uint32_t> via_label;
  std::vector<int> dist;

  explicit Bfs(const Lts& l) {
    parent.assign(l.num_states(), -1);
    via_label.assign(l.num_states(), 0);
    dist.assign(l.num_states(), -1);
    std::deque<uint32_t> q;
    for (uint32_t s : l.initial()) {
      if (dist[s] >= 0) continue;
      dist[s] = 0;
      q.push_back(s);
    }
    while (!q.empty()) {
      uint32_t s = q.front();
      q.pop_front();
      for (const auto& [lbl, dst] : l.out(s)) {
        if (dist[dst] >= 0) continue;
        dist[dst] = dist[s] + 1;
        parent[dst] = (int)s;
        via_label[dst] = lbl;
        q.push_back(dst);
      }
    }
  }

  std::vector<Action> trace_to(const Lts& l, uint32_t s) const {
    std::vector<Action> out;
    uint32_t cur = s;
    while (parent[cur] >= 0) {
      out.push_back(l.label(via_label[cur]));
      cur = (uint32_t)parent[cur];
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace detail

// Partial-bisimulation controllability: the supervised plant must be
// partially bisimilar to the renamed plant with respect to the
// uncontrollable actions. Warns when the plant still shows communication
// shapes that look open against the supervised side.
inline ControlVerdict check_controllability(const Lts& supervised,
                                            const Lts& renamed_plant,
                                            const ChannelClasses& classes) {
  ControlVerdict v;
  v.checks_run.push_back("controllable");
  auto sup_labels = supervised.label_set();
  for (const Action& a : renamed_plant.label_set()) {
    for (const Action& b : sup_labels) {
      if (b.channel != a.channel || b.datum != a.datum) continue;
      if (b.sends >= a.sends && b.receives >= a.receives &&
          (b.sends != a.sends || b.receives != a.receives)) {
        v.warnings.push_back("plant action " + a.str() +
                             " looks like an open communication; the supervised "
                             "plant exhibits " +
                             b.str() + " (is the renaming complete?)");
      }
    }
  }
  PbisimOutcome r = pbisim_leq(supervised, renamed_plant,
                               BisimActionSet::uncontrollable(classes));
  v.pass = r.holds;
  if (!r.holds) {
    v.pbisim_cex = std::move(r.counterexample);
    v.detail = r.summary;
  }
  return v;
}

// Requirement refinement: the supervised plant simulated by the
// requirement process (B empty).
inline ControlVerdict check_requirement_refinement(const Lts& supervised,
                                                   const Lts& requirement_lts) {
  ControlVerdict v;
  v.checks_run.push_back("refinement");
  PbisimOutcome r = pbisim_leq(supervised, requirement_lts, BisimActionSet::none());
  v.pass = r.holds;
  if (!r.holds) {
    v.pbisim_cex = std::move(r.counterexample);
    v.detail = r.summary;
  }
  return v;
}

// A deadlock is a reachable state with no outgoing transition and no
// termination mark; failure carries a shortest trace to one.
inline ControlVerdict check_deadlock_free(const Lts& l) {
  ControlVerdict v;
  v.checks_run.push_back("deadlock");
  detail::Bfs bfs(l);
  int best = -1;
  for (uint32_t s = 0; s < l.num_states(); ++s) {
    if (l.out(s).empty() && !l.terminating(s)) {
      if (best < 0 || bfs.dist[s] < bfs.dist[(uint32_t)best]) best = (int)s;
    }
  }
  if (best < 0) {
    v.pass = true;
    return v;
  }
  v.pass = false;
  v.witness_state = (uint32_t)best;
  v.trace = bfs.trace_to(l, (uint32_t)best);
  v.detail = "deadlock state: " + l.state((uint32_t)best).str();
  return v;
}

// Nonblocking: from every reachable state some terminating state remains
// reachable. An LTS with no terminating state at all is reported
// distinctly.
inline ControlVerdict check_nonblocking(const Lts& l) {
  ControlVerdict v;
  v.checks_run.push_back("nonblocking");
  std::vector<std::vector<uint32_t>> preds(l.num_states());
  std::vector<char> coreach(l.num_states(), 0);
  std::deque<uint32_t> q;
  bool any_terminating = false;
  for (uint32_t s = 0; s < l.num_states(); ++s) {
    for (const auto& [lbl, dst] : l.out(s)) preds[dst].push_back(s);
    if (l.terminating(s)) {
      any_terminating = true;
      coreach[s] = 1;
      q.push_back(s);
    }
  }
  if (!any_terminating) {
    v.pass = false;
    v.detail = "vacuously blocking: the system has no terminating state at all";
    if (l.num_states() > 0) v.witness_state = l.initial().empty() ? 0 : l.initial()[0];
    return v;
  }
  while (!q.empty()) {
    uint32_t s = q.front();
    q.pop_front();
    for (uint32_t p : preds[s]) {
      if (coreach[p]) continue;
      coreach[p] = 1;
      q.push_back(p);
    }
  }
  detail::Bfs bfs(l);
  int best = -1;
  for (uint32_t s = 0; s < l.num_states(); ++s)
    if (!coreach[s] && bfs.dist[s] >= 0)
      if (best < 0 || bfs.dist[s] < bfs.dist[(uint32_t)best]) best = (int)s;
  if (best < 0) {
    v.pass = true;
    return v;
  }
  v.pass = false;
  v.witness_state = (uint32_t)best;
  v.trace = bfs.trace_to(l, (uint32_t)best);
  v.detail = "blocking state (no path to termination): " +
             l.state((uint32_t)best).str();
  return v;
}

// Subset construction. Deterministic: subset states are explored
// breadth-first with labels in their sorted order.
inline Lts determinize(const Lts& l, size_t max_subsets = 65536) {
  std::vector<Action> labels = l.labels();
  std::sort(labels.begin(), labels.end());

  Lts det;
  det.stats().max_states = max_subsets;
  std::map<std::set<uint32_t>, uint32_t> seen;
  std::deque<std::set<uint32_t>> frontier;

  auto intern = [&](const std::set<uint32_t>& subset) {
    auto it = seen.find(subset);
    if (it != seen.end()) return it->second;
    if (det.num_states() >= max_subsets)
      throw BudgetError(max_subsets, "subset construction");
    bool term = false;
    for (uint32_t s : subset) term |= l.terminating(s);
    uint32_t id = det.add_state(LtsState{nullptr, std::nullopt}, term);
    seen.emplace(subset, id);
    frontier.push_back(subset);
    return id;
  };

  std::set<uint32_t> init(l.initial().begin(), l.initial().end());
  det.add_initial(intern(init));
  while (!frontier.empty()) {
    std::set<uint32_t> subset = frontier.front();
    frontier.pop_front();
    uint32_t src = seen[subset];
    for (const Action& a : labels) {
      std::set<uint32_t> next;
      for (uint32_t s : subset)
        for (const auto& [lbl, dst] : l.out(s))
          if (l.label(lbl) == a) next.insert(dst);
      if (next.empty()) continue;
      det.add_transition(src, a, intern(next));
    }
  }
  return det;
}

// Classical language controllability: L(supervised) U-extended, cut with
// L(plant), must stay within L(supervised). Both systems are determinized
// and walked along common traces; at every reached pair each uncontrollable
// action enabled on the plant side must be enabled on the supervised side.
inline ControlVerdict check_language_controllability(const Lts& supervised,
                                                     const Lts& plant,
                                                     const ChannelClasses& classes,
                                                     size_t max_subsets = 65536) {
  ControlVerdict v;
  v.checks_run.push_back("lang-controllable");
  Lts dsup = determinize(supervised, max_subsets);
  Lts dpl = determinize(plant, max_subsets);

  struct Node {
    uint32_t sup, pl;
    bool operator<(const Node& o) const {
      return sup != o.sup ? sup < o.sup : pl < o.pl;
    }
  };
  std::map<Node, std::pair<Node, Action>> parent;
  std::set<Node> seen;
  std::deque<Node> q;
  Node root{dsup.initial()[0], dpl.initial()[0]};
  seen.insert(root);
  q.push_back(root);

  auto trace_to = [&](Node n) {
    std::vector<Action> out;
    while (!(n.sup == root.sup && n.pl == root.pl)) {
      auto it = parent.find(n);
      out.push_back(it->second.second);
      n = it->second.first;
    }
    std::reverse(out.begin(), out.end());
    return out;
  };

  while (!q.empty()) {
    Node n = q.front();
    q.pop_front();
    // deterministic successor per label on each side
    std::map<Action, uint32_t> sup_next, pl_next;
    for (const auto& [lbl, dst] : dsup.out(n.sup)) sup_next[dsup.label(lbl)] = dst;
    for (const auto& [lbl, dst] : dpl.out(n.pl)) pl_next[dpl.label(lbl)] = dst;
    for (const auto& [a, pdst] : pl_next) {
      if (is_uncontrollable(classes, a) && !sup_next.count(a)) {
        v.pass = false;
        v.trace = trace_to(n);
        v.trace.push_back(a);
        v.detail = "uncontrollable action " + a.str() +
                   " is enabled in the plant but disabled in the supervised plant";
        return v;
      }
      auto it = sup_next.find(a);
      if (it == sup_next.end()) continue;  // trace leaves L(supervised)
      Node m{it->second, pdst};
      if (seen.insert(m).second) {
        parent.emplace(m, std::make_pair(n, a));
        q.push_back(m);
      }
    }
  }
  v.pass = true;
  return v;
}

}  // namespace pact
