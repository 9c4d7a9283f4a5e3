#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pact/action.hpp"
#include "pact/lts.hpp"

namespace pact {

// The bisimulation action set B: explicit actions, all uncontrollable
// actions (resolved against channel declarations), everything, or nothing.
class BisimActionSet {
 public:
  enum class Kind { none, all, uncontrollable, explicit_set };

  static BisimActionSet none() { return BisimActionSet(Kind::none); }
  static BisimActionSet all() { return BisimActionSet(Kind::all); }
  static BisimActionSet uncontrollable(ChannelClasses classes) {
    BisimActionSet b(Kind::uncontrollable);
    b.classes_ = std::move(classes);
    return b;
  }
  static BisimActionSet explicit_set(std::set<Action> actions) {
    BisimActionSet b(Kind::explicit_set);
    b.actions_ = std::move(actions);
    return b;
  }

  bool contains(const Action& a) const {
    switch (kind_) {
      case Kind::none:
        return false;
      case Kind::all:
        return true;
      case Kind::uncontrollable:
        return is_uncontrollable(classes_, a);
      case Kind::explicit_set:
        return actions_.count(a) > 0;
    }
    return false;
  }

  Kind kind() const { return kind_; }
  const std::set<Action>& actions() const { return actions_; }

  // Explicit actions not occurring in either system under comparison.
  std::vector<Action> strays(const Lts& l1, const Lts& l2) const {
    std::vector<Action> out;
    if (kind_ != Kind::explicit_set) return out;
    auto s1 = l1.label_set(), s2 = l2.label_set();
    for (const Action& a : actions_)
      if (!s1.count(a) && !s2.count(a)) out.push_back(a);
    return out;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::none:
        return "{}";
      case Kind::all:
        return "all actions";
      case Kind::uncontrollable:
        return "all uncontrollable actions";
      case Kind::explicit_set: {
        std::string s = "{";
        bool first = true;
        for (const Action& a : actions_) {
          if (!first) s += ", ";
          s += a.str();
          first = false;
        }
        return s + "}";
      }
    }
    return "";
  }

 private:
  explicit BisimActionSet(Kind k) : kind_(k) {}
  Kind kind_;
  ChannelClasses classes_;
  std::set<Action> actions_;
};

// Counterexample: an alternating move tree. A forward node names a left
// move no right move can answer; a back node names a B-move of the right
// the left cannot answer; a termination node is a terminating left state
// matched against a non-terminating right state.
struct PbisimCex {
  enum class Cond { termination, forward, back };
  Cond cond = Cond::termination;
  Action action;
  uint32_t left_state = 0;
  uint32_t right_state = 0;
  std::vector<PbisimCex> children;
};

struct PbisimOutcome {
  bool holds = false;
  // When the verdict holds: a partial bisimulation relating the initial
  // states, re-checkable by validate_partial_bisimulation.
  std::vector<std::pair<uint32_t, uint32_t>> witness;
  // When it fails: one explanation per candidate initial pairing.
  uint32_t failing_initial = 0;
  std::vector<PbisimCex> counterexample;
  std::string summary;
};

namespace detail {

// Shared label space so transition labels compare as integers.
struct LabelSpace {
  std::vector<Action> actions;
  std::map<Action, uint32_t> ids;

  uint32_t intern(const Action& a) {
    auto it = ids.find(a);
    if (it != ids.end()) return it->second;
    uint32_t id = (uint32_t)actions.size();
    actions.push_back(a);
    ids.emplace(a, id);
    return id;
  }
};

struct Edges {
  // per state: (common label, dst), in the LTS's transition order
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> out;

  Edges(const Lts& l, LabelSpace& space) {
    out.resize(l.num_states());
    for (uint32_t s = 0; s < l.num_states(); ++s)
      for (const auto& [lbl, dst] : l.out(s))
        out[s].emplace_back(space.intern(l.label(lbl)), dst);
  }
};

struct Deletion {
  int round = 0;
  PbisimCex::Cond cond = PbisimCex::Cond::termination;
  uint32_t action = 0;    // common label id
  uint32_t move_target = 0;  // p' for forward, q' for back
};

// Greatest-fixpoint refinement over the pair lattice: pairs violating one
// of the three conditions are deleted in synchronous rounds until stable.
struct Fixpoint {
  const Lts& l1;
  const Lts& l2;
  const BisimActionSet& B;
  LabelSpace space;
  Edges e1, e2;
  std::vector<bool> in_b;  // per common label
  size_t n1, n2;
  std::vector<char> alive;
  std::vector<Deletion> deletion;

  Fixpoint(const Lts& l1_, const Lts& l2_, const BisimActionSet& B_)
      : l1(l1_), l2(l2_), B(B_), e1(l1_, space), e2(l2_, space) {
    in_b.resize(space.actions.size());
    for (size_t i = 0; i < space.actions.size(); ++i)
      in_b[i] = B.contains(space.actions[i]);
    n1 = l1.num_states();
    n2 = l2.num_states();
    alive.assign(n1 * n2, 1);
    deletion.resize(n1 * n2);
    run();
  }

  size_t idx(uint32_t i, uint32_t j) const { return (size_t)i * n2 + j; }
  bool rel(uint32_t i, uint32_t j) const { return alive[idx(i, j)] != 0; }

  void run() {
    int round = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<size_t> doomed;
      for (uint32_t i = 0; i < n1; ++i) {
        for (uint32_t j = 0; j < n2; ++j) {
          if (!alive[idx(i, j)]) continue;
          Deletion d;
          if (violates(i, j, d)) {
            d.round = round;
            deletion[idx(i, j)] = d;
            doomed.push_back(idx(i, j));
          }
        }
      }
      for (size_t k : doomed) alive[k] = 0;
      changed = !doomed.empty();
      ++round;
    }
  }

  bool violates(uint32_t i, uint32_t j, Deletion& d) const {
    if (l1.terminating(i) && !l2.terminating(j)) {
      d.cond = PbisimCex::Cond::termination;
      return true;
    }
    for (const auto& [a, p2] : e1.out[i]) {
      bool matched = false;
      for (const auto& [b, q2] : e2.out[j]) {
        if (b == a && rel(p2, q2)) {
          matched = true;
          break;
        }
      }
      if (!matched) {
        d.cond = PbisimCex::Cond::forward;
        d.action = a;
        d.move_target = p2;
        return true;
      }
    }
    for (const auto& [b, q2] : e2.out[j]) {
      if (!in_b[b]) continue;
      bool matched = false;
      for (const auto& [a, p2] : e1.out[i]) {
        if (a == b && rel(p2, q2)) {
          matched = true;
          break;
        }
      }
      if (!matched) {
        d.cond = PbisimCex::Cond::back;
        d.action = b;
        d.move_target = q2;
        return true;
      }
    }
    return false;
  }

  // Explains why a deleted pair died; children explain the earlier deaths
  // of every candidate answer, so rounds strictly decrease.
  PbisimCex explain(uint32_t i, uint32_t j, size_t budget = 400) const {
    const Deletion& d = deletion[idx(i, j)];
    PbisimCex node;
    node.cond = d.cond;
    node.left_state = i;
    node.right_state = j;
    if (d.cond == PbisimCex::Cond::termination) return node;
    node.action = space.actions[d.action];
    if (budget == 0) return node;
    if (d.cond == PbisimCex::Cond::forward) {
      for (const auto& [b, q2] : e2.out[j])
        if (b == d.action)
          node.children.push_back(
              explain(d.move_target, q2, budget / std::max<size_t>(1, e2.out[j].size())));
    } else {
      for (const auto& [a, p2] : e1.out[i])
        if (a == d.action)
          node.children.push_back(
              explain(p2, d.move_target, budget / std::max<size_t>(1, e1.out[i].size())));
    }
    return node;
  }
};

}  // namespace detail

// Decides initial(l1) <=_B initial(l2): every initial state of l1 must be
// related to some initial state of l2 by the greatest partial bisimulation.
inline PbisimOutcome pbisim_leq(const Lts& l1, const Lts& l2,
                                const BisimActionSet& B) {
  detail::Fixpoint fp(l1, l2, B);
  PbisimOutcome out;
  for (uint32_t i : l1.initial()) {
    bool covered = false;
    for (uint32_t j : l2.initial()) covered |= fp.rel(i, j);
    if (!covered) {
      out.holds = false;
      out.failing_initial = i;
      for (uint32_t j : l2.initial())
        out.counterexample.push_back(fp.explain(i, j));
      out.summary = "initial state " + std::to_string(i) +
                    " is not related to any initial state of the right system";
      return out;
    }
  }
  out.holds = true;
  for (uint32_t i = 0; i < l1.num_states(); ++i)
    for (uint32_t j = 0; j < l2.num_states(); ++j)
      if (fp.rel(i, j)) out.witness.emplace_back(i, j);
  out.summary = "holds";
  return out;
}

// One-pass validation that a relation is a partial bisimulation wrt B and
// relates every initial state of l1 to some initial state of l2.
inline bool validate_partial_bisimulation(
    const Lts& l1, const Lts& l2,
    const std::vector<std::pair<uint32_t, uint32_t>>& relation,
    const BisimActionSet& B, bool check_initials = true) {
  std::set<std::pair<uint32_t, uint32_t>> rel(relation.begin(), relation.end());
  for (const auto& [i, j] : rel) {
    if (l1.terminating(i) && !l2.terminating(j)) return false;
    for (const auto& [al, p2] : l1.out(i)) {
      const Action& a = l1.label(al);
      bool matched = false;
      for (const auto& [bl, q2] : l2.out(j))
        if (l2.label(bl) == a && rel.count({p2, q2})) {
          matched = true;
          break;
        }
      if (!matched) return false;
    }
    for (const auto& [bl, q2] : l2.out(j)) {
      const Action& b = l2.label(bl);
      if (!B.contains(b)) continue;
      bool matched = false;
      for (const auto& [al, p2] : l1.out(i))
        if (l1.label(al) == b && rel.count({p2, q2})) {
          matched = true;
          break;
        }
      if (!matched) return false;
    }
  }
  if (check_initials) {
    for (uint32_t i : l1.initial()) {
      bool covered = false;
      for (uint32_t j : l2.initial()) covered |= rel.count({i, j}) > 0;
      if (!covered) return false;
    }
  }
  return true;
}

struct PbisimEqOutcome {
  bool holds = false;
  PbisimOutcome forward;
  PbisimOutcome backward;
};

inline PbisimEqOutcome pbisim_eq(const Lts& l1, const Lts& l2,
                                 const BisimActionSet& B) {
  PbisimEqOutcome out;
  out.forward = pbisim_leq(l1, l2, B);
  out.backward = pbisim_leq(l2, l1, B);
  out.holds = out.forward.holds && out.backward.holds;
  return out;
}

// Quotient of l by the mutual-partial-bisimilarity equivalence; the result
// is validated against the input before it is returned.
inline Lts minimize(const Lts& l, const BisimActionSet& B) {
  detail::Fixpoint fp(l, l, B);
  const size_t n = l.num_states();
  std::vector<uint32_t> cls(n, 0);
  std::vector<uint32_t> reps;
  for (uint32_t i = 0; i < n; ++i) {
    bool found = false;
    for (size_t c = 0; c < reps.size() && !found; ++c) {
      uint32_t r = reps[c];
      if (fp.rel(i, r) && fp.rel(r, i)) {
        cls[i] = (uint32_t)c;
        found = true;
      }
    }
    if (!found) {
      cls[i] = (uint32_t)reps.size();
      reps.push_back(i);
    }
  }

  Lts q;
  q.stats().max_states = l.stats().max_states;
  for (uint32_t c = 0; c < reps.size(); ++c)
    q.add_state(l.state(reps[c]), l.terminating(reps[c]));
  std::set<uint32_t> seen_init;
  for (uint32_t i : l.initial())
    if (seen_init.insert(cls[i]).second) q.add_initial(cls[i]);
  std::vector<std::set<std::pair<uint32_t, uint32_t>>> added(reps.size());
  for (uint32_t i = 0; i < n; ++i) {
    for (const auto& [lbl, dst] : l.out(i)) {
      uint32_t src_c = cls[i], dst_c = cls[dst];
      uint32_t common = q.intern_action(l.label(lbl));
      if (added[src_c].insert({common, dst_c}).second)
        q.add_transition(src_c, l.label(lbl), dst_c);
    }
  }

  PbisimEqOutcome check = pbisim_eq(q, l, B);
  if (!check.holds)
    throw Error("internal: quotient is not partially bisimilar to the input");
  return q;
}

// Text rendering of a counterexample tree for reports.
inline void cex_lines(const PbisimCex& node, const Lts& l1, const Lts& l2,
                      std::vector<std::string>& out, int depth = 0,
                      size_t limit = 200) {
  if (out.size() >= limit) return;
  std::string pad(2 * (size_t)depth, ' ');
  auto left = [&](uint32_t s) {
    std::string v = l1.state(s).str();
    return v.empty() ? std::to_string(s) : v;
  };
  auto right = [&](uint32_t s) {
    std::string v = l2.state(s).str();
    return v.empty() ? std::to_string(s) : v;
  };
  switch (node.cond) {
    case PbisimCex::Cond::termination:
      out.push_back(pad + "termination: left [" + left(node.left_state) +
                    "] terminates, right [" + right(node.right_state) +
                    "] does not");
      break;
    case PbisimCex::Cond::forward:
      out.push_back(pad + "forward " + node.action.str() + ": left [" +
                    left(node.left_state) + "] moves, right [" +
                    right(node.right_state) + "] cannot match");
      break;
    case PbisimCex::Cond::back:
      out.push_back(pad + "back " + node.action.str() + ": right [" +
                    right(node.right_state) + "] moves, left [" +
                    left(node.left_state) + "] cannot match");
      break;
  }
  for (const auto& child : node.children) cex_lines(child, l1, l2, out, depth + 1, limit);
}

}  // namespace pact
