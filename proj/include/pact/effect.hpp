#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pact/action.hpp"
#include "pact/errors.hpp"
#include "pact/formula.hpp"

namespace pact {

// Action pattern for effect rules. Unset fields match anything; the datum
// field participates only when match_any_datum is false.
struct EffectPattern {
  std::optional<std::string> channel;
  std::optional<int> sends;
  std::optional<int> receives;
  bool match_any_datum = true;
  std::optional<std::string> datum;

  bool matches(const Action& a) const {
    if (channel && a.channel != *channel) return false;
    if (sends && a.sends != *sends) return false;
    if (receives && a.receives != *receives) return false;
    if (!match_any_datum && a.datum != datum) return false;
    return true;
  }

  bool is_wildcard() const { return !channel && !sends && !receives && match_any_datum; }

  bool operator==(const EffectPattern& o) const {
    return channel == o.channel && sends == o.sends && receives == o.receives &&
           match_any_datum == o.match_any_datum && datum == o.datum;
  }

  std::string str() const {
    if (is_wildcard()) return "*";
    std::string s = channel ? *channel : "*";
    if (sends || receives)
      s += "!" + std::to_string(sends.value_or(0)) + "?" +
           std::to_string(receives.value_or(0));
    if (!match_any_datum) s += "(" + (datum ? *datum : std::string()) + ")";
    return s;
  }
};

// Valuation-set descriptions: the full space, the source valuation kept,
// assignments forced on listed symbols, or all models of a formula.
enum class EffectKind { any, keep, set_true, set_false, constrained };

struct EffectRule {
  EffectPattern pattern;
  EffectKind kind = EffectKind::any;
  std::vector<std::string> symbols;  // set_true / set_false
  FormulaPtr constraint;             // constrained

  std::string str() const {
    std::string s = pattern.str() + " : ";
    switch (kind) {
      case EffectKind::any:
        return s + "any";
      case EffectKind::keep:
        return s + "keep";
      case EffectKind::set_true:
      case EffectKind::set_false: {
        s += kind == EffectKind::set_true ? "settrue(" : "setfalse(";
        for (size_t i = 0; i < symbols.size(); ++i) {
          if (i) s += ", ";
          s += symbols[i];
        }
        return s + ")";
      }
      case EffectKind::constrained:
        return s + "constrained(" + formula_str(constraint) + ")";
    }
    return s;
  }
};

// A first-match-wins rule list with a mandatory trailing wildcard rule.
class EffectSpec {
 public:
  EffectSpec() : rules_{EffectRule{EffectPattern{}, EffectKind::any, {}, {}}} {}

  explicit EffectSpec(std::vector<EffectRule> rules) : rules_(std::move(rules)) {
    if (rules_.empty() || !rules_.back().pattern.is_wildcard())
      throw Error("effect specification needs a trailing default rule");
  }

  static EffectSpec any_default() { return EffectSpec(); }
  static EffectSpec keep_default() {
    return EffectSpec({EffectRule{EffectPattern{}, EffectKind::keep, {}, {}}});
  }

  const EffectRule& resolve(const Action& a) const {
    for (const auto& r : rules_)
      if (r.pattern.matches(a)) return r;
    return rules_.back();  // unreachable: the default is a wildcard
  }

  const std::vector<EffectRule>& rules() const { return rules_; }

  bool is_pure_any() const {
    for (const auto& r : rules_)
      if (r.kind != EffectKind::any) return false;
    return true;
  }

  // Membership test for v_next in effect(a, v).
  bool contains(const Action& a, const Valuation& v, const Valuation& v_next) const {
    const EffectRule& r = resolve(a);
    switch (r.kind) {
      case EffectKind::any:
        return true;
      case EffectKind::keep:
        return v_next.bits() == v.bits();
      case EffectKind::set_true:
      case EffectKind::set_false: {
        Valuation target = v;
        for (const auto& s : r.symbols)
          target = target.with(s, r.kind == EffectKind::set_true);
        return v_next.bits() == target.bits();
      }
      case EffectKind::constrained:
        return eval_formula(r.constraint, v_next);
    }
    return false;
  }

 private:
  std::vector<EffectRule> rules_;
};

}  // namespace pact
