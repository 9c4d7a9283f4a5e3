#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "pact/action.hpp"
#include "pact/errors.hpp"

namespace pact {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Boolean expressions over propositional symbols: F, T, symbols, negation,
// conjunction, disjunction, implication, plus the exclusive-choice macro
// oneof{...} which is definitionally equal to its expansion.
class Formula {
 public:
  enum class Kind {
    ff,
    tt,
    symbol,
    negation,
    conjunction,
    disjunction,
    implication,
    one_of,
  };

  Kind kind;
  std::string name;                  // symbol
  FormulaPtr lhs, rhs;               // binary operators; lhs for negation
  std::vector<std::string> symbols;  // one_of members, sorted
  FormulaPtr expansion;              // one_of, precomputed
  size_t hash = 0;
};

FormulaPtr expand_oneof(std::vector<std::string> symbols);

namespace detail {

inline FormulaPtr mk_formula(Formula f) {
  size_t h = (size_t)f.kind * 0x9e3779b9u;
  h = hash_combine(h, std::hash<std::string>{}(f.name));
  if (f.lhs) h = hash_combine(h, f.lhs->hash);
  if (f.rhs) h = hash_combine(h, f.rhs->hash);
  for (const auto& s : f.symbols) h = hash_combine(h, std::hash<std::string>{}(s));
  f.hash = h;
  return std::make_shared<const Formula>(std::move(f));
}

}  // namespace detail

inline FormulaPtr f_false() {
  static const FormulaPtr f = detail::mk_formula({Formula::Kind::ff, {}, {}, {}, {}, {}});
  return f;
}

inline FormulaPtr f_true() {
  static const FormulaPtr f = detail::mk_formula({Formula::Kind::tt, {}, {}, {}, {}, {}});
  return f;
}

inline FormulaPtr f_sym(std::string name) {
  return detail::mk_formula({Formula::Kind::symbol, std::move(name), {}, {}, {}, {}});
}

inline FormulaPtr f_not(FormulaPtr a) {
  return detail::mk_formula({Formula::Kind::negation, {}, std::move(a), {}, {}, {}});
}

inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return detail::mk_formula(
      {Formula::Kind::conjunction, {}, std::move(a), std::move(b), {}, {}});
}

inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return detail::mk_formula(
      {Formula::Kind::disjunction, {}, std::move(a), std::move(b), {}, {}});
}

inline FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return detail::mk_formula(
      {Formula::Kind::implication, {}, std::move(a), std::move(b), {}, {}});
}

inline FormulaPtr f_oneof(std::vector<std::string> symbols) {
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  FormulaPtr exp = expand_oneof(symbols);
  Formula f{Formula::Kind::one_of, {}, {}, {}, std::move(symbols), std::move(exp)};
  return detail::mk_formula(std::move(f));
}

// Disjunction over the set's members of "this one true, all others false".
// For a singleton the negation conjunct is empty and the result is the
// symbol itself.
inline FormulaPtr expand_oneof(std::vector<std::string> symbols) {
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  if (symbols.empty())
    throw Error("oneof over the empty symbol set is undefined");
  FormulaPtr result;
  for (const auto& p : symbols) {
    FormulaPtr conj = f_sym(p);
    for (const auto& q : symbols) {
      if (q == p) continue;
      conj = f_and(conj, f_not(f_sym(q)));
    }
    result = result ? f_or(result, conj) : conj;
  }
  return result;
}

inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::ff:
    case Formula::Kind::tt:
      return true;
    case Formula::Kind::symbol:
      return a->name == b->name;
    case Formula::Kind::negation:
      return formula_equal(a->lhs, b->lhs);
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction:
    case Formula::Kind::implication:
      return formula_equal(a->lhs, b->lhs) && formula_equal(a->rhs, b->rhs);
    case Formula::Kind::one_of:
      return a->symbols == b->symbols;
  }
  return false;
}

inline void collect_symbols(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case Formula::Kind::symbol:
      out.insert(f->name);
      break;
    case Formula::Kind::one_of:
      out.insert(f->symbols.begin(), f->symbols.end());
      break;
    default:
      collect_symbols(f->lhs, out);
      collect_symbols(f->rhs, out);
  }
}

// The model's propositional symbols, sorted; valuations index into it.
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
    if (names_.size() > 32)
      throw Error("symbol space too large: " + std::to_string(names_.size()) +
                  " symbols (at most 32 supported)");
    for (size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = (int)i;
  }

  size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw EvalError(name);
    return it->second;
  }
  bool contains(const std::string& name) const { return index_.count(name) > 0; }

  bool operator==(const SymbolTable& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

// Total truth assignment over a symbol table, packed into a bit mask.
class Valuation {
 public:
  Valuation() : table_(std::make_shared<const SymbolTable>()) {}
  Valuation(SymbolTablePtr table, uint32_t bits)
      : table_(std::move(table)), bits_(bits) {}

  static Valuation all_false(SymbolTablePtr table) {
    return Valuation(std::move(table), 0);
  }

  bool value(const std::string& symbol) const {
    int i = table_->index_of(symbol);
    return (bits_ >> i) & 1u;
  }

  Valuation with(const std::string& symbol, bool v) const {
    int i = table_->index_of(symbol);
    uint32_t b = bits_;
    if (v)
      b |= (1u << i);
    else
      b &= ~(1u << i);
    return Valuation(table_, b);
  }

  uint32_t bits() const { return bits_; }
  const SymbolTablePtr& table() const { return table_; }

  // Two valuations are equal iff they agree on every symbol.
  bool operator==(const Valuation& o) const {
    return bits_ == o.bits_ && *table_ == *o.table_;
  }

  std::vector<std::string> satisfied_symbols() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < table_->size(); ++i)
      if ((bits_ >> i) & 1u) out.push_back(table_->names()[i]);
    return out;
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& name : satisfied_symbols()) {
      if (!first) s += ", ";
      s += name;
      first = false;
    }
    return s + "}";
  }

 private:
  SymbolTablePtr table_;
  uint32_t bits_ = 0;
};

// Standard Boolean semantics; oneof is evaluated via its expansion.
inline bool eval_formula(const FormulaPtr& phi, const Valuation& v) {
  switch (phi->kind) {
    case Formula::Kind::ff:
      return false;
    case Formula::Kind::tt:
      return true;
    case Formula::Kind::symbol:
      return v.value(phi->name);
    case Formula::Kind::negation:
      return !eval_formula(phi->lhs, v);
    case Formula::Kind::conjunction:
      return eval_formula(phi->lhs, v) && eval_formula(phi->rhs, v);
    case Formula::Kind::disjunction:
      return eval_formula(phi->lhs, v) || eval_formula(phi->rhs, v);
    case Formula::Kind::implication:
      return !eval_formula(phi->lhs, v) || eval_formula(phi->rhs, v);
    case Formula::Kind::one_of:
      return eval_formula(phi->expansion, v);
  }
  return false;
}

// Precedence for printing: => binds weakest, then \/, then /\, then !.
namespace detail {
inline int formula_level(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::implication:
      return 0;
    case Formula::Kind::disjunction:
      return 1;
    case Formula::Kind::conjunction:
      return 2;
    case Formula::Kind::negation:
      return 3;
    default:
      return 4;
  }
}
}  // namespace detail

inline std::string formula_str(const FormulaPtr& f, bool full_parens = false,
                               int min_level = 0) {
  int level = detail::formula_level(f->kind);
  std::string s;
  switch (f->kind) {
    case Formula::Kind::ff:
      return "false";
    case Formula::Kind::tt:
      return "true";
    case Formula::Kind::symbol:
      return f->name;
    case Formula::Kind::negation:
      s = "!" + formula_str(f->lhs, full_parens, level);
      break;
    case Formula::Kind::conjunction:
      s = formula_str(f->lhs, full_parens, level) + " /\\ " +
          formula_str(f->rhs, full_parens, level + 1);
      break;
    case Formula::Kind::disjunction:
      s = formula_str(f->lhs, full_parens, level) + " \\/ " +
          formula_str(f->rhs, full_parens, level + 1);
      break;
    case Formula::Kind::implication:
      // right-associative
      s = formula_str(f->lhs, full_parens, level + 1) + " => " +
          formula_str(f->rhs, full_parens, level);
      break;
    case Formula::Kind::one_of: {
      s = "oneof{";
      for (size_t i = 0; i < f->symbols.size(); ++i) {
        if (i) s += ", ";
        s += f->symbols[i];
      }
      s += "}";
      return s;
    }
  }
  if (full_parens || level < min_level) return "(" + s + ")";
  return s;
}

// Deterministic all-models enumeration in ascending bit order.
inline std::vector<Valuation> models_of(const FormulaPtr& phi,
                                        const SymbolTablePtr& table) {
  std::vector<Valuation> out;
  const uint32_t n = (uint32_t)table->size();
  // Three-valued evaluation with a partial assignment prunes the search;
  // the recursion assigns symbols in index order, false branch first.
  struct Enumerator {
    const SymbolTablePtr& table;
    std::vector<Valuation>& out;
    const FormulaPtr& phi;
    uint32_t n;

    // result: 0 = false, 1 = true, 2 = unknown
    int eval3(const FormulaPtr& f, uint32_t bits, uint32_t known) const {
      switch (f->kind) {
        case Formula::Kind::ff:
          return 0;
        case Formula::Kind::tt:
          return 1;
        case Formula::Kind::symbol: {
          int i = table->index_of(f->name);
          if (!((known >> i) & 1u)) return 2;
          return (bits >> i) & 1u;
        }
        case Formula::Kind::negation: {
          int r = eval3(f->lhs, bits, known);
          return r == 2 ? 2 : 1 - r;
        }
        case Formula::Kind::conjunction: {
          int a = eval3(f->lhs, bits, known);
          if (a == 0) return 0;
          int b = eval3(f->rhs, bits, known);
          if (b == 0) return 0;
          return (a == 1 && b == 1) ? 1 : 2;
        }
        case Formula::Kind::disjunction: {
          int a = eval3(f->lhs, bits, known);
          if (a == 1) return 1;
          int b = eval3(f->rhs, bits, known);
          if (b == 1) return 1;
          return (a == 0 && b == 0) ? 0 : 2;
        }
        case Formula::Kind::implication: {
          int a = eval3(f->lhs, bits, known);
          if (a == 0) return 1;
          int b = eval3(f->rhs, bits, known);
          if (b == 1) return 1;
          return (a == 1 && b == 0) ? 0 : 2;
        }
        case Formula::Kind::one_of:
          return eval3(f->expansion, bits, known);
      }
      return 2;
    }

    void run(uint32_t idx, uint32_t bits, uint32_t known) const {
      int r = eval3(phi, bits, known);
      if (r == 0) return;
      if (r == 1) {
        // every extension over the remaining symbols is a model
        uint64_t free_count = n - idx;
        for (uint64_t rest = 0; rest < (1ull << free_count); ++rest)
          out.emplace_back(table, bits | ((uint32_t)rest << idx));
        return;
      }
      run(idx + 1, bits, known | (1u << idx));
      run(idx + 1, bits | (1u << idx), known | (1u << idx));
    }
  };
  Enumerator{table, out, phi, n}.run(0, 0, 0);
  std::sort(out.begin(), out.end(),
            [](const Valuation& a, const Valuation& b) { return a.bits() < b.bits(); });
  return out;
}

}  // namespace pact
