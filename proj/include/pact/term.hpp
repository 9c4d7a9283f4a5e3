#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pact/action.hpp"
#include "pact/errors.hpp"
#include "pact/formula.hpp"

namespace pact {

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Process terms. Deadlock is printed 0, successful termination 1, the
// inaccessible process bot. Guard, Emit and Inaccessible belong to the
// state-based fragment only.
class Term {
 public:
  enum class Kind {
    deadlock,
    empty,
    inaccessible,
    prefix,
    seq,
    alt,
    par,
    star,
    encap,
    guard,
    emit,
    ref,
  };

  Kind kind;
  Action act;                          // prefix
  FormulaPtr formula;                  // guard, emit
  TermPtr a, b;                        // children
  std::vector<EncapPattern> patterns;  // encap, sorted
  std::string name;                    // ref
  size_t hash = 0;
};

namespace detail {

inline TermPtr mk_term(Term t) {
  size_t h = (size_t)t.kind * 0x517cc1b727220a95ull;
  if (t.kind == Term::Kind::prefix) h = hash_combine(h, hash_value(t.act));
  if (t.formula) h = hash_combine(h, t.formula->hash);
  if (t.a) h = hash_combine(h, t.a->hash);
  if (t.b) h = hash_combine(h, t.b->hash);
  for (const auto& p : t.patterns) {
    h = hash_combine(h, std::hash<std::string>{}(p.channel));
    h = hash_combine(h, (size_t)p.sends * 31 + (size_t)p.receives);
    if (p.datum) h = hash_combine(h, std::hash<std::string>{}(*p.datum));
  }
  if (!t.name.empty()) h = hash_combine(h, std::hash<std::string>{}(t.name));
  t.hash = h;
  return std::make_shared<const Term>(std::move(t));
}

}  // namespace detail

inline TermPtr t_deadlock() {
  static const TermPtr t = detail::mk_term({Term::Kind::deadlock, {}, {}, {}, {}, {}, {}});
  return t;
}

inline TermPtr t_empty() {
  static const TermPtr t = detail::mk_term({Term::Kind::empty, {}, {}, {}, {}, {}, {}});
  return t;
}

inline TermPtr t_bot() {
  static const TermPtr t =
      detail::mk_term({Term::Kind::inaccessible, {}, {}, {}, {}, {}, {}});
  return t;
}

inline TermPtr t_prefix(Action a, TermPtr p) {
  return detail::mk_term(
      {Term::Kind::prefix, std::move(a), {}, std::move(p), {}, {}, {}});
}

inline TermPtr t_seq(TermPtr a, TermPtr b) {
  return detail::mk_term(
      {Term::Kind::seq, {}, {}, std::move(a), std::move(b), {}, {}});
}

inline TermPtr t_alt(TermPtr a, TermPtr b) {
  return detail::mk_term(
      {Term::Kind::alt, {}, {}, std::move(a), std::move(b), {}, {}});
}

inline TermPtr t_par(TermPtr a, TermPtr b) {
  return detail::mk_term(
      {Term::Kind::par, {}, {}, std::move(a), std::move(b), {}, {}});
}

inline TermPtr t_star(TermPtr p) {
  return detail::mk_term({Term::Kind::star, {}, {}, std::move(p), {}, {}, {}});
}

inline TermPtr t_encap(std::vector<EncapPattern> patterns, TermPtr p) {
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  return detail::mk_term(
      {Term::Kind::encap, {}, {}, std::move(p), {}, std::move(patterns), {}});
}

inline TermPtr t_guard(FormulaPtr phi, TermPtr p) {
  return detail::mk_term(
      {Term::Kind::guard, {}, std::move(phi), std::move(p), {}, {}, {}});
}

inline TermPtr t_emit(FormulaPtr phi, TermPtr p) {
  return detail::mk_term(
      {Term::Kind::emit, {}, std::move(phi), std::move(p), {}, {}, {}});
}

inline TermPtr t_ref(std::string name) {
  return detail::mk_term(
      {Term::Kind::ref, {}, {}, {}, {}, {}, std::move(name)});
}

inline bool term_equal(const TermPtr& x, const TermPtr& y) {
  if (x.get() == y.get()) return true;
  if (!x || !y) return false;
  if (x->hash != y->hash || x->kind != y->kind) return false;
  switch (x->kind) {
    case Term::Kind::deadlock:
    case Term::Kind::empty:
    case Term::Kind::inaccessible:
      return true;
    case Term::Kind::prefix:
      return x->act == y->act && term_equal(x->a, y->a);
    case Term::Kind::seq:
    case Term::Kind::alt:
    case Term::Kind::par:
      return term_equal(x->a, y->a) && term_equal(x->b, y->b);
    case Term::Kind::star:
      return term_equal(x->a, y->a);
    case Term::Kind::encap:
      return x->patterns == y->patterns && term_equal(x->a, y->a);
    case Term::Kind::guard:
    case Term::Kind::emit:
      return formula_equal(x->formula, y->formula) && term_equal(x->a, y->a);
    case Term::Kind::ref:
      return x->name == y->name;
  }
  return false;
}

struct TermPtrHash {
  size_t operator()(const TermPtr& t) const { return t ? t->hash : 0; }
};
struct TermPtrEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const {
    return term_equal(a, b);
  }
};

// Printing. Precedence, tight to loose: * and atoms, action prefix
// (with guard and emission at the same level), ;, ||, +.
namespace detail {

inline int term_level(Term::Kind k) {
  switch (k) {
    case Term::Kind::alt:
      return 0;
    case Term::Kind::par:
      return 1;
    case Term::Kind::seq:
      return 2;
    case Term::Kind::prefix:
    case Term::Kind::guard:
    case Term::Kind::emit:
      return 3;
    default:
      return 4;
  }
}

}  // namespace detail

inline std::string term_str(const TermPtr& t, bool full_parens = false,
                            int min_level = 0) {
  int level = detail::term_level(t->kind);
  std::string s;
  switch (t->kind) {
    case Term::Kind::deadlock:
      return "0";
    case Term::Kind::empty:
      return "1";
    case Term::Kind::inaccessible:
      return "bot";
    case Term::Kind::ref:
      return t->name;
    case Term::Kind::star: {
      std::string body = term_str(t->a, full_parens, 4);
      return body + "*";
    }
    case Term::Kind::encap: {
      s = "encap({";
      for (size_t i = 0; i < t->patterns.size(); ++i) {
        if (i) s += ", ";
        s += t->patterns[i].str();
      }
      s += "}, " + term_str(t->a, full_parens, 0) + ")";
      return s;
    }
    case Term::Kind::prefix:
      s = t->act.str() + "." + term_str(t->a, full_parens, 3);
      break;
    case Term::Kind::guard:
      s = "[" + formula_str(t->formula, full_parens) + "] -> " +
          term_str(t->a, full_parens, 3);
      break;
    case Term::Kind::emit:
      s = formula_str(t->formula, full_parens) + " ^^ " +
          term_str(t->a, full_parens, 3);
      break;
    case Term::Kind::seq:
      s = term_str(t->a, full_parens, 2) + " ; " +
          term_str(t->b, full_parens, 3);
      break;
    case Term::Kind::par:
      s = term_str(t->a, full_parens, 1) + " || " +
          term_str(t->b, full_parens, 2);
      break;
    case Term::Kind::alt:
      s = term_str(t->a, full_parens, 0) + " + " +
          term_str(t->b, full_parens, 1);
      break;
  }
  if (full_parens || level < min_level) return "(" + s + ")";
  return s;
}

// Structural traversal: constants fixed, homomorphic over the operators,
// action prefixes renamed. Encapsulation sets are left untouched.
inline TermPtr apply_renaming(const TermPtr& t, const RenamingMap& xi) {
  switch (t->kind) {
    case Term::Kind::deadlock:
    case Term::Kind::empty:
    case Term::Kind::inaccessible:
    case Term::Kind::ref:
      return t;
    case Term::Kind::prefix:
      return t_prefix(xi.apply(t->act), apply_renaming(t->a, xi));
    case Term::Kind::seq:
      return t_seq(apply_renaming(t->a, xi), apply_renaming(t->b, xi));
    case Term::Kind::alt:
      return t_alt(apply_renaming(t->a, xi), apply_renaming(t->b, xi));
    case Term::Kind::par:
      return t_par(apply_renaming(t->a, xi), apply_renaming(t->b, xi));
    case Term::Kind::star:
      return t_star(apply_renaming(t->a, xi));
    case Term::Kind::encap:
      return t_encap(t->patterns, apply_renaming(t->a, xi));
    case Term::Kind::guard:
      return t_guard(t->formula, apply_renaming(t->a, xi));
    case Term::Kind::emit:
      return t_emit(t->formula, apply_renaming(t->a, xi));
  }
  return t;
}

inline bool uses_state_features(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::inaccessible:
    case Term::Kind::guard:
    case Term::Kind::emit:
      return true;
    case Term::Kind::deadlock:
    case Term::Kind::empty:
    case Term::Kind::ref:
      return false;
    default:
      return (t->a && uses_state_features(t->a)) ||
             (t->b && uses_state_features(t->b));
  }
}

// Macro-expands definition references. Cyclic definitions are rejected;
// recursion is expressed only via iteration.
inline TermPtr expand_refs(const TermPtr& t,
                           const std::map<std::string, TermPtr>& defs) {
  struct Expander {
    const std::map<std::string, TermPtr>& defs;
    std::set<std::string> in_progress;
    std::map<std::string, TermPtr> done;

    TermPtr expand(const TermPtr& t) {
      switch (t->kind) {
        case Term::Kind::deadlock:
        case Term::Kind::empty:
        case Term::Kind::inaccessible:
          return t;
        case Term::Kind::ref: {
          auto cached = done.find(t->name);
          if (cached != done.end()) return cached->second;
          auto it = defs.find(t->name);
          if (it == defs.end())
            throw Error("unresolved reference: " + t->name);
          if (!in_progress.insert(t->name).second)
            throw Error("cyclic definition: " + t->name);
          TermPtr r = expand(it->second);
          in_progress.erase(t->name);
          done[t->name] = r;
          return r;
        }
        case Term::Kind::prefix:
          return t_prefix(t->act, expand(t->a));
        case Term::Kind::seq:
          return t_seq(expand(t->a), expand(t->b));
        case Term::Kind::alt:
          return t_alt(expand(t->a), expand(t->b));
        case Term::Kind::par:
          return t_par(expand(t->a), expand(t->b));
        case Term::Kind::star:
          return t_star(expand(t->a));
        case Term::Kind::encap:
          return t_encap(t->patterns, expand(t->a));
        case Term::Kind::guard:
          return t_guard(t->formula, expand(t->a));
        case Term::Kind::emit:
          return t_emit(t->formula, expand(t->a));
      }
      return t;
    }
  };
  return Expander{defs, {}, {}}.expand(t);
}

// Grammar classes for plants and supervisors. Event-based supervisors may
// observe uncontrollable receives; state-based supervisors may not, but
// may use guarded commands.
enum class GrammarClass {
  plant_event,
  supervisor_event,
  plant_state,
  supervisor_state,
};

struct ClassifyResult {
  bool ok = true;
  TermPtr violation;
  std::string reason;
};

inline ClassifyResult classify_term(const TermPtr& t, GrammarClass grammar,
                                    const ChannelClasses& classes) {
  auto fail = [](const TermPtr& at, std::string why) {
    return ClassifyResult{false, at, std::move(why)};
  };
  auto cls_of = [&](const std::string& chan) {
    auto it = classes.find(chan);
    if (it == classes.end())
      throw Error("undeclared channel: " + chan);
    return it->second;
  };
  const bool plant = grammar == GrammarClass::plant_event ||
                     grammar == GrammarClass::plant_state;
  const bool state_based = grammar == GrammarClass::plant_state ||
                           grammar == GrammarClass::supervisor_state;

  switch (t->kind) {
    case Term::Kind::empty:
      return {};
    case Term::Kind::deadlock:
      if (!plant) return fail(t, "deadlock is not in the supervisor grammar");
      return {};
    case Term::Kind::inaccessible:
      return fail(t, "the inaccessible process is not in any plant or supervisor grammar");
    case Term::Kind::ref:
      return fail(t, "unexpanded reference " + t->name);
    case Term::Kind::prefix: {
      const Action& a = t->act;
      ChannelClass cc = cls_of(a.channel);
      if (plant) {
        if (cc == ChannelClass::controllable) {
          if (!(a.sends == 0 && a.receives == 1))
            return fail(t, "controllable actions appear in plants only as receives");
        } else {
          if (a.sends > 1 || a.receives > 1)
            return fail(t, "uncontrollable plant prefixes carry at most one send and one receive");
        }
      } else {
        if (cc == ChannelClass::controllable) {
          if (!(a.sends == 1 && a.receives == 0))
            return fail(t, "controllable actions appear in supervisors only as sends");
        } else {
          if (state_based)
            return fail(t, "state-based supervisors observe states, not uncontrollable events");
          if (!(a.sends == 0 && a.receives == 1))
            return fail(t, "uncontrollable actions appear in event-based supervisors only as receives");
        }
      }
      return classify_term(t->a, grammar, classes);
    }
    case Term::Kind::seq:
      if (!plant) return fail(t, "sequential composition is not in the supervisor grammar");
      break;
    case Term::Kind::par:
      if (!plant) return fail(t, "parallel composition is not in the supervisor grammar");
      break;
    case Term::Kind::encap:
      if (!plant) return fail(t, "encapsulation is not in the supervisor grammar");
      break;
    case Term::Kind::alt:
    case Term::Kind::star:
      break;
    case Term::Kind::guard:
      if (!state_based) return fail(t, "guarded commands require the state-based grammar");
      break;
    case Term::Kind::emit:
      if (!(state_based && plant))
        return fail(t, "signal emission belongs to state-based plants only");
      break;
  }
  if (t->a) {
    auto r = classify_term(t->a, grammar, classes);
    if (!r.ok) return r;
  }
  if (t->b) {
    auto r = classify_term(t->b, grammar, classes);
    if (!r.ok) return r;
  }
  return {};
}

inline void collect_actions(const TermPtr& t, std::set<Action>& out) {
  if (t->kind == Term::Kind::prefix) out.insert(t->act);
  if (t->a) collect_actions(t->a, out);
  if (t->b) collect_actions(t->b, out);
}

inline void collect_term_symbols(const TermPtr& t, std::set<std::string>& out) {
  if (t->formula) collect_symbols(t->formula, out);
  if (t->a) collect_term_symbols(t->a, out);
  if (t->b) collect_term_symbols(t->b, out);
}

}  // namespace pact
