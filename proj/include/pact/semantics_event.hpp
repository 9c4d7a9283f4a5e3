#pragma once

#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pact/errors.hpp"
#include "pact/lts.hpp"
#include "pact/term.hpp"

namespace pact {

namespace detail {
inline void require_event_term(const TermPtr& t) {
  if (uses_state_features(t))
    throw SemanticsError(
        "term uses guards, emissions or bot; use the state-based engine");
  if (t->kind == Term::Kind::ref)
    throw SemanticsError("unresolved reference " + t->name +
                         "; expand definitions first");
}
}  // namespace detail

// Successful termination predicate.
inline bool terminates(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::empty:
    case Term::Kind::star:
      return true;
    case Term::Kind::deadlock:
    case Term::Kind::prefix:
      return false;
    case Term::Kind::seq:
    case Term::Kind::par:
      return terminates(t->a) && terminates(t->b);
    case Term::Kind::alt:
      return terminates(t->a) || terminates(t->b);
    case Term::Kind::encap:
      return terminates(t->a);
    case Term::Kind::ref:
      throw SemanticsError("unresolved reference " + t->name +
                           "; expand definitions first");
    default:
      throw SemanticsError(
          "termination of a state-based construct; use the state-based engine");
  }
}

// One-step transitions. Synchronization merges actions on the same channel
// with the same datum when each side contributes at least one send or
// receive event; encapsulation drops actions matching its pattern set.
inline std::vector<std::pair<Action, TermPtr>> step(const TermPtr& t) {
  std::vector<std::pair<Action, TermPtr>> out;
  struct Key {
    Action a;
    TermPtr t;
    bool operator==(const Key& o) const {
      return a == o.a && term_equal(t, o.t);
    }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return hash_combine(hash_value(k.a), k.t->hash);
    }
  };
  std::unordered_set<Key, KeyHash> seen;
  auto emit = [&](Action a, TermPtr target) {
    if (!seen.insert(Key{a, target}).second) return;
    out.emplace_back(std::move(a), std::move(target));
  };
  switch (t->kind) {
    case Term::Kind::deadlock:
    case Term::Kind::empty:
      break;
    case Term::Kind::prefix:
      emit(t->act, t->a);
      break;
    case Term::Kind::seq: {
      for (auto& [a, p2] : step(t->a)) emit(a, t_seq(p2, t->b));
      if (terminates(t->a))
        for (auto& [a, q2] : step(t->b)) emit(a, q2);
      break;
    }
    case Term::Kind::alt: {
      for (auto& [a, p2] : step(t->a)) emit(a, p2);
      for (auto& [a, q2] : step(t->b)) emit(a, q2);
      break;
    }
    case Term::Kind::par: {
      auto left = step(t->a);
      auto right = step(t->b);
      for (auto& [a, p2] : left) emit(a, t_par(p2, t->b));
      for (auto& [a, q2] : right) emit(a, t_par(t->a, q2));
      for (auto& [a, p2] : left) {
        if (a.sends + a.receives == 0) continue;
        for (auto& [b, q2] : right) {
          if (b.sends + b.receives == 0) continue;
          if (a.channel != b.channel || a.datum != b.datum) continue;
          emit(Action{a.channel, a.sends + b.sends, a.receives + b.receives,
                      a.datum},
               t_par(p2, q2));
        }
      }
      break;
    }
    case Term::Kind::star: {
      for (auto& [a, p2] : step(t->a)) emit(a, t_seq(p2, t));
      break;
    }
    case Term::Kind::encap: {
      for (auto& [a, p2] : step(t->a))
        if (!blocked_by(t->patterns, a)) emit(a, t_encap(t->patterns, p2));
      break;
    }
    case Term::Kind::ref:
      throw SemanticsError("unresolved reference " + t->name +
                           "; expand definitions first");
    default:
      throw SemanticsError(
          "transition of a state-based construct; use the state-based engine");
  }
  return out;
}

// Transition-and-termination-preserving rewrites, applied exhaustively:
// 1;p -> p, 0;p -> 0, 0+p -> p, p+0 -> p, encap of 0 or 1 collapses, and
// nested alternatives are flattened to a right-nested chain so that
// differently-associated sums hash alike. The result is strongly bisimilar
// to the input.
inline TermPtr normalize(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::deadlock:
    case Term::Kind::empty:
    case Term::Kind::inaccessible:
    case Term::Kind::ref:
      return t;
    case Term::Kind::prefix: {
      TermPtr a = normalize(t->a);
      return a.get() == t->a.get() ? t : t_prefix(t->act, a);
    }
    case Term::Kind::seq: {
      TermPtr a = normalize(t->a);
      TermPtr b = normalize(t->b);
      if (a->kind == Term::Kind::empty) return b;
      if (a->kind == Term::Kind::deadlock) return a;
      return (a.get() == t->a.get() && b.get() == t->b.get()) ? t : t_seq(a, b);
    }
    case Term::Kind::alt: {
      std::vector<TermPtr> leaves;
      // collect alternatives left to right, dropping deadlock summands
      struct Collect {
        std::vector<TermPtr>& leaves;
        void run(const TermPtr& u) {
          if (u->kind == Term::Kind::alt) {
            run(u->a);
            run(u->b);
            return;
          }
          TermPtr n = normalize(u);
          if (n->kind == Term::Kind::alt) {
            run(n);
            return;
          }
          if (n->kind != Term::Kind::deadlock) leaves.push_back(n);
        }
      };
      Collect{leaves}.run(t);
      if (leaves.empty()) return t_deadlock();
      TermPtr acc = leaves.back();
      for (size_t i = leaves.size() - 1; i-- > 0;) acc = t_alt(leaves[i], acc);
      return acc;
    }
    case Term::Kind::par: {
      TermPtr a = normalize(t->a);
      TermPtr b = normalize(t->b);
      return (a.get() == t->a.get() && b.get() == t->b.get()) ? t : t_par(a, b);
    }
    case Term::Kind::star: {
      TermPtr a = normalize(t->a);
      return a.get() == t->a.get() ? t : t_star(a);
    }
    case Term::Kind::encap: {
      TermPtr a = normalize(t->a);
      if (a->kind == Term::Kind::deadlock || a->kind == Term::Kind::empty)
        return a;
      return a.get() == t->a.get() ? t : t_encap(t->patterns, a);
    }
    case Term::Kind::guard: {
      TermPtr a = normalize(t->a);
      return a.get() == t->a.get() ? t : t_guard(t->formula, a);
    }
    case Term::Kind::emit: {
      TermPtr a = normalize(t->a);
      return a.get() == t->a.get() ? t : t_emit(t->formula, a);
    }
  }
  return t;
}

// Breadth-first exploration from normalize(t), states deduplicated by
// structural equality of normalized terms.
inline Lts build_lts(const TermPtr& t, size_t max_states = 100000) {
  detail::require_event_term(t);
  Lts lts;
  lts.stats().max_states = max_states;
  lts.stats().normalized = true;

  std::unordered_map<TermPtr, uint32_t, TermPtrHash, TermPtrEq> seen;
  std::deque<uint32_t> frontier;

  auto intern = [&](const TermPtr& raw) {
    TermPtr n = normalize(raw);
    auto it = seen.find(n);
    if (it != seen.end()) return it->second;
    if (lts.num_states() >= max_states)
      throw BudgetError(max_states, term_str(n));
    uint32_t id = lts.add_state(LtsState{n, std::nullopt}, terminates(n));
    seen.emplace(n, id);
    frontier.push_back(id);
    return id;
  };

  lts.add_initial(intern(t));
  while (!frontier.empty()) {
    uint32_t src = frontier.front();
    frontier.pop_front();
    TermPtr term = lts.state(src).term;
    for (auto& [a, target] : step(term)) {
      uint32_t dst = intern(target);
      lts.add_transition(src, a, dst);
    }
  }
  return lts;
}

}  // namespace pact
