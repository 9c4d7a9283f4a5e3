#pragma once

#include <deque>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pact/effect.hpp"
#include "pact/errors.hpp"
#include "pact/lts.hpp"
#include "pact/model.hpp"
#include "pact/semantics_event.hpp"
#include "pact/term.hpp"

namespace pact {

// ---- consistency and termination, by structural recursion ---------------

// Consistency predicate. Deadlock, termination and prefixes are always
// consistent, bot never is; a false guard shields an inconsistent body
// while an emission requires its signal to hold.
inline bool consistent(const TermPtr& t, const Valuation& v);

inline bool sb_terminates(const TermPtr& t, const Valuation& v) {
  switch (t->kind) {
    case Term::Kind::empty:
      return true;
    case Term::Kind::deadlock:
    case Term::Kind::inaccessible:
    case Term::Kind::prefix:
      return false;
    case Term::Kind::alt:
      return (sb_terminates(t->a, v) && consistent(t->b, v)) ||
             (sb_terminates(t->b, v) && consistent(t->a, v));
    case Term::Kind::seq:
    case Term::Kind::par:
      return sb_terminates(t->a, v) && sb_terminates(t->b, v);
    case Term::Kind::star:
      return consistent(t->a, v);
    case Term::Kind::encap:
      return sb_terminates(t->a, v);
    case Term::Kind::guard:
    case Term::Kind::emit:
      return eval_formula(t->formula, v) && sb_terminates(t->a, v);
    case Term::Kind::ref:
      throw SemanticsError("unresolved reference " + t->name);
  }
  return false;
}

inline bool consistent(const TermPtr& t, const Valuation& v) {
  switch (t->kind) {
    case Term::Kind::deadlock:
    case Term::Kind::empty:
    case Term::Kind::prefix:
      return true;
    case Term::Kind::inaccessible:
      return false;
    case Term::Kind::alt:
    case Term::Kind::par:
      return consistent(t->a, v) && consistent(t->b, v);
    case Term::Kind::seq:
      return sb_terminates(t->a, v) ? consistent(t->b, v)
                                    : consistent(t->a, v);
    case Term::Kind::star:
      return consistent(t->a, v);
    case Term::Kind::encap:
      return consistent(t->a, v);
    case Term::Kind::guard:
      return !eval_formula(t->formula, v) || consistent(t->a, v);
    case Term::Kind::emit:
      return eval_formula(t->formula, v) && consistent(t->a, v);
    case Term::Kind::ref:
      throw SemanticsError("unresolved reference " + t->name);
  }
  return false;
}

// ---- symbolic engine ------------------------------------------------------

namespace detail {

// Characterizes consistency and termination of a term as formulas over the
// propositional symbols, so successor valuations can be enumerated without
// scanning the full valuation space.
class SbEngine {
 public:
  SbEngine(SymbolTablePtr table, const EffectSpec& effect)
      : table_(std::move(table)), effect_(effect) {}

  const SymbolTablePtr& table() const { return table_; }
  const EffectSpec& effect() const { return effect_; }

  FormulaPtr cons_formula(const TermPtr& t) {
    auto it = cons_.find(t);
    if (it != cons_.end()) return it->second;
    FormulaPtr f;
    switch (t->kind) {
      case Term::Kind::deadlock:
      case Term::Kind::empty:
      case Term::Kind::prefix:
        f = f_true();
        break;
      case Term::Kind::inaccessible:
        f = f_false();
        break;
      case Term::Kind::alt:
      case Term::Kind::par:
        f = f_and(cons_formula(t->a), cons_formula(t->b));
        break;
      case Term::Kind::seq: {
        FormulaPtr td = term_formula(t->a);
        f = f_or(f_and(td, cons_formula(t->b)),
                 f_and(cons_formula(t->a), f_not(td)));
        break;
      }
      case Term::Kind::star:
      case Term::Kind::encap:
        f = cons_formula(t->a);
        break;
      case Term::Kind::guard:
        f = f_or(f_not(t->formula), cons_formula(t->a));
        break;
      case Term::Kind::emit:
        f = f_and(t->formula, cons_formula(t->a));
        break;
      case Term::Kind::ref:
        throw SemanticsError("unresolved reference " + t->name);
    }
    cons_.emplace(t, f);
    return f;
  }

  FormulaPtr term_formula(const TermPtr& t) {
    auto it = term_.find(t);
    if (it != term_.end()) return it->second;
    FormulaPtr f;
    switch (t->kind) {
      case Term::Kind::empty:
        f = f_true();
        break;
      case Term::Kind::deadlock:
      case Term::Kind::inaccessible:
      case Term::Kind::prefix:
        f = f_false();
        break;
      case Term::Kind::alt:
        f = f_or(f_and(term_formula(t->a), cons_formula(t->b)),
                 f_and(term_formula(t->b), cons_formula(t->a)));
        break;
      case Term::Kind::seq:
      case Term::Kind::par:
        f = f_and(term_formula(t->a), term_formula(t->b));
        break;
      case Term::Kind::star:
        f = cons_formula(t->a);
        break;
      case Term::Kind::encap:
        f = term_formula(t->a);
        break;
      case Term::Kind::guard:
      case Term::Kind::emit:
        f = f_and(t->formula, term_formula(t->a));
        break;
      case Term::Kind::ref:
        throw SemanticsError("unresolved reference " + t->name);
    }
    term_.emplace(t, f);
    return f;
  }

  bool cons(const TermPtr& t, const Valuation& v) {
    return eval_formula(cons_formula(t), v);
  }
  bool term(const TermPtr& t, const Valuation& v) {
    return eval_formula(term_formula(t), v);
  }

  // Valuations v' in effect(a, v) whose target state <target, v'> is
  // consistent. Constant effect descriptions enumerate the models of the
  // target's consistency formula; pointwise descriptions test directly.
  std::vector<Valuation> successors(const Action& a, const Valuation& v,
                                    const TermPtr& target) {
    const EffectRule& rule = effect_.resolve(a);
    switch (rule.kind) {
      case EffectKind::any:
        return models_of(cons_formula(target), table_);
      case EffectKind::constrained:
        return models_of(f_and(rule.constraint, cons_formula(target)), table_);
      case EffectKind::keep:
        if (cons(target, v)) return {v};
        return {};
      case EffectKind::set_true:
      case EffectKind::set_false: {
        Valuation next = v;
        for (const auto& s : rule.symbols)
          next = next.with(s, rule.kind == EffectKind::set_true);
        if (cons(target, next)) return {next};
        return {};
      }
    }
    return {};
  }

  // Transitions grouped by action and target term; the valuation list
  // holds every target valuation of the group. Grouping keeps the
  // synchronization rule quadratic in moves rather than in transitions.
  struct Move {
    Action act;
    TermPtr target;
    std::vector<Valuation> vals;
  };

  // Table 3 transitions. Targets are raw terms; consistency of every
  // target state is enforced by the rules themselves. The iteration rule
  // carries the same target-consistency premise as sequential composition
  // so that unfoldings cannot step into inconsistent states.
  std::vector<Move> moves(const TermPtr& t, const Valuation& v) {
    std::vector<Move> out;
    auto emit = [&out](const Action& a, const TermPtr& target,
                       std::vector<Valuation> vals) {
      if (vals.empty()) return;
      for (Move& m : out) {
        if (m.act == a && term_equal(m.target, target)) {
          for (const Valuation& w : vals) {
            bool dup = false;
            for (const Valuation& x : m.vals) dup |= x.bits() == w.bits();
            if (!dup) m.vals.push_back(w);
          }
          return;
        }
      }
      out.push_back(Move{a, target, std::move(vals)});
    };
    switch (t->kind) {
      case Term::Kind::deadlock:
      case Term::Kind::empty:
      case Term::Kind::inaccessible:
        break;
      case Term::Kind::prefix:
        emit(t->act, t->a, successors(t->act, v, t->a));
        break;
      case Term::Kind::alt: {
        if (cons(t->b, v))
          for (Move& m : moves(t->a, v)) emit(m.act, m.target, std::move(m.vals));
        if (cons(t->a, v))
          for (Move& m : moves(t->b, v)) emit(m.act, m.target, std::move(m.vals));
        break;
      }
      case Term::Kind::seq: {
        if (term(t->a, v))
          for (Move& m : moves(t->b, v)) emit(m.act, m.target, std::move(m.vals));
        for (Move& m : moves(t->a, v)) {
          TermPtr target = t_seq(m.target, t->b);
          std::vector<Valuation> kept;
          for (const Valuation& w : m.vals)
            if (cons(target, w)) kept.push_back(w);
          emit(m.act, target, std::move(kept));
        }
        break;
      }
      case Term::Kind::star: {
        for (Move& m : moves(t->a, v)) {
          TermPtr target = t_seq(m.target, t);
          std::vector<Valuation> kept;
          for (const Valuation& w : m.vals)
            if (cons(target, w)) kept.push_back(w);
          emit(m.act, target, std::move(kept));
        }
        break;
      }
      case Term::Kind::par: {
        std::vector<Move> left = moves(t->a, v);
        std::vector<Move> right = moves(t->b, v);
        if (cons(t->b, v))
          for (const Move& m : left) {
            std::vector<Valuation> kept;
            for (const Valuation& w : m.vals)
              if (cons(t->b, w)) kept.push_back(w);
            emit(m.act, t_par(m.target, t->b), std::move(kept));
          }
        if (cons(t->a, v))
          for (const Move& m : right) {
            std::vector<Valuation> kept;
            for (const Valuation& w : m.vals)
              if (cons(t->a, w)) kept.push_back(w);
            emit(m.act, t_par(t->a, m.target), std::move(kept));
          }
        // Synchronization discards the component target valuations; only
        // the existence of the component transitions matters.
        for (const Move& ml : left) {
          if (ml.act.sends + ml.act.receives == 0 || ml.vals.empty()) continue;
          for (const Move& mr : right) {
            if (mr.act.sends + mr.act.receives == 0 || mr.vals.empty()) continue;
            if (ml.act.channel != mr.act.channel || ml.act.datum != mr.act.datum)
              continue;
            Action merged{ml.act.channel, ml.act.sends + mr.act.sends,
                          ml.act.receives + mr.act.receives, ml.act.datum};
            TermPtr target = t_par(ml.target, mr.target);
            emit(merged, target, successors(merged, v, target));
          }
        }
        break;
      }
      case Term::Kind::encap: {
        for (Move& m : moves(t->a, v))
          if (!blocked_by(t->patterns, m.act))
            emit(m.act, t_encap(t->patterns, m.target), std::move(m.vals));
        break;
      }
      case Term::Kind::guard:
      case Term::Kind::emit: {
        if (eval_formula(t->formula, v))
          for (Move& m : moves(t->a, v)) emit(m.act, m.target, std::move(m.vals));
        break;
      }
      case Term::Kind::ref:
        throw SemanticsError("unresolved reference " + t->name);
    }
    return out;
  }

  using Step = std::tuple<Action, TermPtr, Valuation>;

  std::vector<Step> step(const TermPtr& t, const Valuation& v) {
    std::vector<Step> out;
    for (const Move& m : moves(t, v))
      for (const Valuation& w : m.vals) out.emplace_back(m.act, m.target, w);
    return out;
  }

 private:
  SymbolTablePtr table_;
  const EffectSpec& effect_;
  std::unordered_map<TermPtr, FormulaPtr, TermPtrHash, TermPtrEq> cons_;
  std::unordered_map<TermPtr, FormulaPtr, TermPtrHash, TermPtrEq> term_;
};

}  // namespace detail

// One-step transitions of <t, v> under the given effect specification.
inline std::vector<std::tuple<Action, TermPtr, Valuation>> sb_step(
    const TermPtr& t, const Valuation& v, const EffectSpec& eff) {
  detail::SbEngine engine(v.table(), eff);
  return engine.step(t, v);
}

// ---- effect well-definedness ---------------------------------------------

struct EffectWitness {
  Action merged;
  Action left;
  Action right;
  Valuation valuation;
};

struct EffectCheckResult {
  bool ok = true;
  std::optional<EffectWitness> witness;
};

namespace detail {

// Valuation sets during the well-definedness check: either the full space
// or an explicit sorted element list.
struct VSet {
  bool full = false;
  std::vector<uint32_t> elems;

  static VSet full_set() { return {true, {}}; }
  static VSet single(uint32_t v) { return {false, {v}}; }

  size_t size(uint32_t space) const { return full ? space : elems.size(); }

  bool subset_of(const VSet& o, uint32_t space) const {
    if (o.full) return true;
    if (full) return o.elems.size() == space;
    size_t j = 0;
    for (uint32_t e : elems) {
      while (j < o.elems.size() && o.elems[j] < e) ++j;
      if (j == o.elems.size() || o.elems[j] != e) return false;
    }
    return true;
  }

  VSet intersect(const VSet& o) const {
    if (full) return o;
    if (o.full) return *this;
    VSet r;
    size_t i = 0, j = 0;
    while (i < elems.size() && j < o.elems.size()) {
      if (elems[i] < o.elems[j]) {
        ++i;
      } else if (elems[i] > o.elems[j]) {
        ++j;
      } else {
        r.elems.push_back(elems[i]);
        ++i;
        ++j;
      }
    }
    return r;
  }
};

}  // namespace detail

// Verifies the merge condition effect(c!(l+m)?(k+n) d, v) included in the
// composition of the split effects, both ways around, for every split of
// every action shape in `actions` and every valuation.
inline EffectCheckResult check_effect_welldefined(const EffectSpec& eff,
                                                  const std::set<Action>& actions,
                                                  const SymbolTablePtr& table) {
  if (table->size() > 20)
    throw Error("effect well-definedness check supports at most 20 symbols, got " +
                std::to_string(table->size()));
  const uint32_t space = 1u << table->size();

  auto apply = [&](const Action& a, const detail::VSet& in) -> detail::VSet {
    const EffectRule& rule = eff.resolve(a);
    switch (rule.kind) {
      case EffectKind::any:
        return detail::VSet::full_set();
      case EffectKind::keep:
        return in;
      case EffectKind::constrained: {
        detail::VSet r;
        for (const Valuation& m : models_of(rule.constraint, table))
          r.elems.push_back(m.bits());
        return r;
      }
      case EffectKind::set_true:
      case EffectKind::set_false: {
        uint32_t mask = 0;
        for (const auto& s : rule.symbols) mask |= 1u << table->index_of(s);
        detail::VSet r;
        auto map_bits = [&](uint32_t b) {
          return rule.kind == EffectKind::set_true ? (b | mask) : (b & ~mask);
        };
        if (in.full) {
          for (uint32_t b = 0; b < space; ++b) r.elems.push_back(map_bits(b));
        } else {
          for (uint32_t b : in.elems) r.elems.push_back(map_bits(b));
        }
        std::sort(r.elems.begin(), r.elems.end());
        r.elems.erase(std::unique(r.elems.begin(), r.elems.end()), r.elems.end());
        return r;
      }
    }
    return {};
  };

  for (const Action& a : actions) {
    const int M = a.sends, N = a.receives;
    if (M + N < 2) continue;  // no split with both sides contributing
    for (int l = 0; l <= M; ++l) {
      for (int k = 0; k <= N; ++k) {
        int m = M - l, n = N - k;
        if (l + k == 0 || m + n == 0) continue;
        Action a1{a.channel, l, k, a.datum};
        Action a2{a.channel, m, n, a.datum};
        // If every involved description ignores the source valuation the
        // check is valuation-independent and runs once.
        auto is_const = [&](const Action& x) {
          EffectKind kind = eff.resolve(x).kind;
          return kind == EffectKind::any || kind == EffectKind::constrained;
        };
        uint32_t rounds = (is_const(a) && is_const(a1) && is_const(a2)) ? 1 : space;
        for (uint32_t bits = 0; bits < rounds; ++bits) {
          detail::VSet v0 = detail::VSet::single(bits);
          detail::VSet merged = apply(a, v0);
          detail::VSet one = apply(a2, apply(a1, v0)).intersect(apply(a1, apply(a2, v0)));
          if (!merged.subset_of(one, space))
            return {false,
                    EffectWitness{a, a1, a2, Valuation(table, bits)}};
        }
      }
    }
  }
  return {};
}

// ---- state-based LTS construction ----------------------------------------

inline Lts build_sb_lts(const TermPtr& t, const EffectSpec& eff,
                        const FormulaPtr& init, const SymbolTablePtr& table,
                        size_t max_states = 100000) {
  if (t->kind == Term::Kind::ref)
    throw SemanticsError("unresolved reference " + t->name);
  detail::SbEngine engine(table, eff);
  Lts lts;
  lts.stats().max_states = max_states;
  lts.stats().normalized = true;

  TermPtr root = normalize(t);

  struct Key {
    TermPtr term;
    uint32_t bits;
    bool operator==(const Key& o) const {
      return bits == o.bits && term_equal(term, o.term);
    }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return hash_combine(k.term ? k.term->hash : 0, k.bits);
    }
  };

  std::unordered_map<Key, uint32_t, KeyHash> seen;
  std::deque<uint32_t> frontier;

  auto intern = [&](const TermPtr& raw, const Valuation& v) {
    TermPtr n = normalize(raw);
    Key key{n, v.bits()};
    auto it = seen.find(key);
    if (it != seen.end()) return it->second;
    if (lts.num_states() >= max_states)
      throw BudgetError(max_states, term_str(n) + " @ " + v.str());
    if (!engine.cons(n, v))
      throw Error("internal: inconsistent state reached: " + term_str(n) +
                  " @ " + v.str());
    uint32_t id = lts.add_state(LtsState{n, v}, engine.term(n, v));
    seen.emplace(std::move(key), id);
    frontier.push_back(id);
    return id;
  };

  auto initial_vals = models_of(f_and(init, engine.cons_formula(root)), table);
  if (initial_vals.empty())
    throw Error("no consistent initial valuation for " + term_str(root));
  for (const Valuation& v : initial_vals) lts.add_initial(intern(root, v));

  while (!frontier.empty()) {
    uint32_t src = frontier.front();
    frontier.pop_front();
    TermPtr term = lts.state(src).term;
    Valuation v = *lts.state(src).valuation;
    for (auto& [a, target, w] : engine.step(term, v))
      lts.add_transition(src, a, intern(target, w));
  }
  return lts;
}

// ---- requirement checking -------------------------------------------------

struct RequirementResult {
  bool holds = true;
  std::vector<uint32_t> violations;
};

namespace detail {

inline RequirementResult check_disables(const Lts& l, const FormulaPtr& phi,
                                        const Action& a) {
  RequirementResult r;
  for (uint32_t s = 0; s < l.num_states(); ++s) {
    if (!eval_formula(phi, *l.state(s).valuation)) continue;
    if (l.has_out(s, a)) {
      r.holds = false;
      r.violations.push_back(s);
    }
  }
  return r;
}

}  // namespace detail

// Pure requirements hold when every reachable valuation satisfies the
// formula. An event-implies requirement is checked through its
// disablement translation: the event is forbidden wherever the formula
// fails.
inline RequirementResult check_requirement(const Lts& l, const Requirement& r,
                                           const EffectSpec& /*eff*/) {
  for (uint32_t s = 0; s < l.num_states(); ++s)
    if (!l.state(s).valuation)
      throw SemanticsError("requirement checking needs a state-based LTS");
  switch (r.kind) {
    case Requirement::Kind::pure: {
      RequirementResult res;
      for (uint32_t s = 0; s < l.num_states(); ++s) {
        if (!eval_formula(r.formula, *l.state(s).valuation)) {
          res.holds = false;
          res.violations.push_back(s);
        }
      }
      return res;
    }
    case Requirement::Kind::disables:
      return detail::check_disables(l, r.formula, *r.action);
    case Requirement::Kind::event_implies:
      return detail::check_disables(l, f_not(r.formula), *r.action);
  }
  return {};
}

}  // namespace pact
