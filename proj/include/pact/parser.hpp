#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pact/action.hpp"
#include "pact/effect.hpp"
#include "pact/errors.hpp"
#include "pact/formula.hpp"
#include "pact/model.hpp"
#include "pact/term.hpp"

namespace pact {

namespace detail {

enum class Tok {
  ident,
  number,
  dot,
  semi,
  plus,
  parpar,
  star,
  lparen,
  rparen,
  lbracket,
  rbracket,
  lbrace,
  rbrace,
  equals,
  colon,
  comma,
  arrow,    // ->
  darrow,   // =>
  emit2,    // ^^
  and_op,   // /\ .
  or_op,    // \/ .
  bang,
  qmark,
  eof,
};

struct Token {
  Tok kind;
  std::string text;
  long number = 0;
  int line = 1;
  int col = 1;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(line, col, msg); };
  auto push = [&](Tok k, std::string text, long num = 0) {
    out.push_back({k, std::move(text), num, line, col});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    int tok_col = col;
    auto advance = [&](size_t n) {
      i += n;
      col += (int)n;
    };
    if (isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (isalnum((unsigned char)src[j]) || src[j] == '_'))
        ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), 0, line, tok_col});
      col += (int)(j - i);
      i = j;
      continue;
    }
    if (isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < src.size() && isdigit((unsigned char)src[j])) ++j;
      std::string text(src.substr(i, j - i));
      out.push_back({Tok::number, text, std::strtol(text.c_str(), nullptr, 10),
                     line, tok_col});
      col += (int)(j - i);
      i = j;
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (two('-', '>')) { push(Tok::arrow, "->"); advance(2); continue; }
    if (two('=', '>')) { push(Tok::darrow, "=>"); advance(2); continue; }
    if (two('^', '^')) { push(Tok::emit2, "^^"); advance(2); continue; }
    if (two('/', '\\')) { push(Tok::and_op, "/\\"); advance(2); continue; }
    if (two('\\', '/')) { push(Tok::or_op, "\\/"); advance(2); continue; }
    if (two('|', '|')) { push(Tok::parpar, "||"); advance(2); continue; }
    switch (c) {
      case '.': push(Tok::dot, "."); advance(1); continue;
      case ';': push(Tok::semi, ";"); advance(1); continue;
      case '+': push(Tok::plus, "+"); advance(1); continue;
      case '*': push(Tok::star, "*"); advance(1); continue;
      case '(': push(Tok::lparen, "("); advance(1); continue;
      case ')': push(Tok::rparen, ")"); advance(1); continue;
      case '[': push(Tok::lbracket, "["); advance(1); continue;
      case ']': push(Tok::rbracket, "]"); advance(1); continue;
      case '{': push(Tok::lbrace, "{"); advance(1); continue;
      case '}': push(Tok::rbrace, "}"); advance(1); continue;
      case '=': push(Tok::equals, "="); advance(1); continue;
      case ':': push(Tok::colon, ":"); advance(1); continue;
      case ',': push(Tok::comma, ","); advance(1); continue;
      case '!': push(Tok::bang, "!"); advance(1); continue;
      case '?': push(Tok::qmark, "?"); advance(1); continue;
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::eof, "", 0, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Model parse() {
    while (!at(Tok::eof)) parse_decl();
    finalize();
    return std::move(model_);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  Model model_;
  std::map<std::string, Token> referenced_channels_;
  std::map<std::string, Token> referenced_data_;
  std::vector<std::pair<std::string, Token>> decl_positions_;

  void note_channel(const std::string& name, const Token& tok) {
    referenced_channels_.emplace(name, tok);
  }
  void note_datum(const std::string& name, const Token& tok) {
    referenced_data_.emplace(name, tok);
  }

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(size_t n = 1) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_ident(const char* text) const {
    return cur().kind == Tok::ident && cur().text == text;
  }
  Token take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(cur().line, cur().col, msg);
  }
  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }
  std::string expect_ident(const char* what) {
    if (!at(Tok::ident)) fail(std::string("expected ") + what);
    return take().text;
  }

  // ---- declarations -------------------------------------------------

  void parse_decl() {
    if (!at(Tok::ident)) fail("expected a declaration");
    Token head = cur();
    const std::string& kw = head.text;
    if (kw == "uncontrollable" || kw == "controllable") {
      take();
      ChannelClass cls = kw == "controllable" ? ChannelClass::controllable
                                              : ChannelClass::uncontrollable;
      for (const auto& name : parse_ident_list()) {
        auto it = model_.channel_classes.find(name);
        if (it != model_.channel_classes.end()) {
          if (it->second != cls)
            throw ParseError(head.line, head.col,
                             "channel " + name +
                                 " declared both controllable and uncontrollable");
          throw ParseError(head.line, head.col,
                           "channel " + name + " declared twice");
        }
        model_.channel_classes[name] = cls;
        model_.channels.push_back({name, cls});
      }
      return;
    }
    if (kw == "data") {
      take();
      for (auto& name : parse_ident_list()) model_.data.push_back(name);
      return;
    }
    if (kw == "group") {
      take();
      std::string name = expect_ident("group name");
      expect(Tok::equals, "'='");
      expect(Tok::lbrace, "'{'");
      std::vector<std::string> syms;
      do {
        syms.push_back(parse_symbol_name());
      } while (accept(Tok::comma));
      expect(Tok::rbrace, "'}'");
      if (!model_.groups.emplace(name, std::move(syms)).second)
        throw ParseError(head.line, head.col, "group " + name + " declared twice");
      return;
    }
    if (kw == "def" || kw == "plant") {
      take();
      std::string name = expect_ident("process name");
      expect(Tok::equals, "'='");
      TermPtr body = parse_term();
      auto& map = kw == "def" ? model_.defs : model_.plants;
      if (model_.lookup_term(name))
        throw ParseError(head.line, head.col, "process " + name + " declared twice");
      map.emplace(name, std::move(body));
      decl_positions_.emplace_back(name, head);
      return;
    }
    if (kw == "supervisor") {
      take();
      std::optional<GrammarClass> mode;
      if (at(Tok::ident) && peek().kind == Tok::ident) {
        if (cur().text == "event") {
          mode = GrammarClass::supervisor_event;
          take();
        } else if (cur().text == "state") {
          mode = GrammarClass::supervisor_state;
          take();
        }
      }
      std::string name = expect_ident("supervisor name");
      expect(Tok::equals, "'='");
      TermPtr body = parse_term();
      if (model_.lookup_term(name))
        throw ParseError(head.line, head.col, "process " + name + " declared twice");
      model_.supervisors.emplace(
          name, SupervisorDecl{std::move(body),
                               mode.value_or(GrammarClass::supervisor_event)});
      if (mode) supervisor_mode_given_.insert(name);
      decl_positions_.emplace_back(name, head);
      return;
    }
    if (kw == "encap") {
      take();
      std::string name = expect_ident("encapsulation set name");
      expect(Tok::equals, "'='");
      expect(Tok::lbrace, "'{'");
      std::vector<EncapPattern> pats;
      do {
        pats.push_back(parse_encap_pattern());
      } while (accept(Tok::comma));
      expect(Tok::rbrace, "'}'");
      if (!model_.encapsulations.emplace(name, std::move(pats)).second)
        throw ParseError(head.line, head.col,
                         "encapsulation set " + name + " declared twice");
      return;
    }
    if (kw == "effect") {
      take();
      effect_rules_.push_back(parse_effect_rule());
      return;
    }
    if (kw == "init") {
      take();
      if (init_seen_)
        throw ParseError(head.line, head.col, "init declared twice");
      init_seen_ = true;
      model_.init = parse_formula();
      return;
    }
    if (kw == "req") {
      take();
      std::string name;
      if (at(Tok::ident)) name = take().text;
      expect(Tok::colon, "':'");
      Requirement r = parse_req_body();
      r.name = name.empty()
                   ? "req" + std::to_string(model_.requirements.size() + 1)
                   : name;
      model_.requirements.push_back(std::move(r));
      return;
    }
    if (kw == "rename") {
      take();
      std::string name = expect_ident("renaming name");
      expect(Tok::colon, "':'");
      std::vector<RenameEntry> entries;
      do {
        entries.push_back(parse_rename_entry());
      } while (accept(Tok::comma));
      if (!model_.renamings.emplace(name, RenamingMap(std::move(entries))).second)
        throw ParseError(head.line, head.col, "renaming " + name + " declared twice");
      return;
    }
    fail("unknown declaration '" + kw + "'");
  }

  std::vector<std::string> parse_ident_list() {
    std::vector<std::string> out;
    do {
      out.push_back(expect_ident("identifier"));
    } while (accept(Tok::comma));
    return out;
  }

  // A propositional symbol: a plain identifier or in(Name).
  std::string parse_symbol_name() {
    std::string name = expect_ident("propositional symbol");
    if (name == "in") {
      expect(Tok::lparen, "'('");
      std::string inner = expect_ident("state name");
      expect(Tok::rparen, "')'");
      return "in(" + inner + ")";
    }
    return name;
  }

  // ---- actions and patterns -----------------------------------------

  // !m?n | !? | ! | ? following a channel name.
  std::optional<std::pair<int, int>> parse_shape() {
    if (accept(Tok::bang)) {
      if (at(Tok::number)) {
        int m = (int)take().number;
        expect(Tok::qmark, "'?'");
        int n = (int)expect(Tok::number, "receive count").number;
        return std::make_pair(m, n);
      }
      if (accept(Tok::qmark)) return std::make_pair(1, 1);
      return std::make_pair(1, 0);
    }
    if (accept(Tok::qmark)) return std::make_pair(0, 1);
    return std::nullopt;
  }

  std::optional<std::string> parse_datum_parens() {
    if (at(Tok::lparen) && peek().kind == Tok::ident &&
        peek(2).kind == Tok::rparen) {
      take();
      Token d = take();
      take();
      note_datum(d.text, d);
      return d.text;
    }
    return std::nullopt;
  }

  Action parse_action() {
    Token chan_tok = cur();
    std::string chan = expect_ident("channel name");
    note_channel(chan, chan_tok);
    auto shape = parse_shape();
    auto datum = parse_datum_parens();
    Action a{chan, 0, 0, datum};
    if (shape) {
      a.sends = shape->first;
      a.receives = shape->second;
    }
    return a;
  }

  EncapPattern parse_encap_pattern() {
    Token chan_tok = cur();
    std::string chan = expect_ident("channel name");
    note_channel(chan, chan_tok);
    auto shape = parse_shape();
    auto datum = parse_datum_parens();
    EncapPattern p{chan, 0, 0, datum};
    if (shape) {
      p.sends = shape->first;
      p.receives = shape->second;
    }
    return p;
  }

  RenameEntry parse_rename_entry() {
    RenameEntry e;
    Token chan_tok = cur();
    e.channel = expect_ident("channel name");
    note_channel(e.channel, chan_tok);
    if (auto shape = parse_shape()) {
      e.sends = shape->first;
      e.receives = shape->second;
    }
    e.datum_filter = parse_datum_parens();
    expect(Tok::arrow, "'->'");
    Token to_tok = cur();
    e.to_channel = expect_ident("channel name");
    note_channel(e.to_channel, to_tok);
    if (auto shape = parse_shape()) {
      e.to_sends = shape->first;
      e.to_receives = shape->second;
    }
    return e;
  }

  EffectRule parse_effect_rule() {
    EffectRule rule;
    if (accept(Tok::star) || (at_ident("default") && (take(), true))) {
      // wildcard pattern
    } else {
      Token chan_tok = cur();
      std::string chan = expect_ident("channel name or '*'");
      note_channel(chan, chan_tok);
      rule.pattern.channel = chan;
      if (auto shape = parse_shape()) {
        rule.pattern.sends = shape->first;
        rule.pattern.receives = shape->second;
      }
      if (at(Tok::lparen)) {
        take();
        rule.pattern.match_any_datum = false;
        if (at(Tok::ident)) {
          Token d = take();
          rule.pattern.datum = d.text;
          note_datum(d.text, d);
        }
        expect(Tok::rparen, "')'");
      }
    }
    expect(Tok::colon, "':'");
    std::string kind = expect_ident("effect description");
    if (kind == "any") {
      rule.kind = EffectKind::any;
    } else if (kind == "keep") {
      rule.kind = EffectKind::keep;
    } else if (kind == "settrue" || kind == "setfalse") {
      rule.kind = kind == "settrue" ? EffectKind::set_true : EffectKind::set_false;
      expect(Tok::lparen, "'('");
      do {
        rule.symbols.push_back(parse_symbol_name());
      } while (accept(Tok::comma));
      expect(Tok::rparen, "')'");
    } else if (kind == "constrained") {
      rule.kind = EffectKind::constrained;
      expect(Tok::lparen, "'('");
      rule.constraint = parse_formula();
      expect(Tok::rparen, "')'");
    } else {
      fail("unknown effect description '" + kind + "'");
    }
    return rule;
  }

  // ---- formulas ------------------------------------------------------

  FormulaPtr parse_formula() { return parse_implies(); }

  FormulaPtr parse_implies() {
    FormulaPtr lhs = parse_or();
    if (accept(Tok::darrow)) return f_implies(std::move(lhs), parse_implies());
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    while (accept(Tok::or_op)) lhs = f_or(std::move(lhs), parse_and());
    return lhs;
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_unary();
    while (accept(Tok::and_op)) lhs = f_and(std::move(lhs), parse_unary());
    return lhs;
  }

  FormulaPtr parse_unary() {
    if (accept(Tok::bang)) return f_not(parse_unary());
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    if (at(Tok::lparen)) {
      take();
      FormulaPtr f = parse_implies();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (!at(Tok::ident)) fail("expected a formula");
    if (at_ident("true")) {
      take();
      return f_true();
    }
    if (at_ident("false")) {
      take();
      return f_false();
    }
    if (at_ident("oneof")) {
      take();
      if (accept(Tok::lbrace)) {
        std::vector<std::string> syms;
        do {
          syms.push_back(parse_symbol_name());
        } while (accept(Tok::comma));
        expect(Tok::rbrace, "'}'");
        return f_oneof(std::move(syms));
      }
      expect(Tok::lparen, "'(' or '{'");
      Token name_tok = cur();
      std::string name = expect_ident("group name");
      expect(Tok::rparen, "')'");
      auto it = model_.groups.find(name);
      if (it == model_.groups.end())
        throw ParseError(name_tok.line, name_tok.col, "unknown group " + name);
      return f_oneof(it->second);
    }
    return f_sym(parse_symbol_name());
  }

  // ---- terms ----------------------------------------------------------

  TermPtr parse_term() { return parse_alt(); }

  TermPtr parse_alt() {
    TermPtr lhs = parse_par();
    while (accept(Tok::plus)) lhs = t_alt(std::move(lhs), parse_par());
    return lhs;
  }

  TermPtr parse_par() {
    TermPtr lhs = parse_seq();
    while (accept(Tok::parpar)) lhs = t_par(std::move(lhs), parse_seq());
    return lhs;
  }

  TermPtr parse_seq() {
    TermPtr lhs = parse_prefix();
    while (accept(Tok::semi)) lhs = t_seq(std::move(lhs), parse_prefix());
    return lhs;
  }

  TermPtr parse_prefix() {
    if (at(Tok::lbracket)) {
      take();
      FormulaPtr phi = parse_formula();
      expect(Tok::rbracket, "']'");
      expect(Tok::arrow, "'->'");
      return t_guard(std::move(phi), parse_prefix());
    }
    // A signal emission starts with a formula; resolved by backtracking.
    if (at(Tok::ident) || at(Tok::bang) || at(Tok::lparen)) {
      size_t save = pos_;
      try {
        FormulaPtr phi = parse_formula();
        if (accept(Tok::emit2)) return t_emit(std::move(phi), parse_prefix());
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    // Action prefix: channel, optional shape, optional datum, then a dot.
    if (at(Tok::ident) && action_prefix_ahead()) {
      Action a = parse_action();
      expect(Tok::dot, "'.'");
      return t_prefix(std::move(a), parse_prefix());
    }
    return parse_postfix();
  }

  // Token lookahead for "channel [shape] [datum] ." with no side effects.
  bool action_prefix_ahead() const {
    size_t p = pos_;
    auto kind = [&](size_t i) {
      return toks_[std::min(i, toks_.size() - 1)].kind;
    };
    if (kind(p) != Tok::ident) return false;
    ++p;
    if (kind(p) == Tok::bang) {
      ++p;
      if (kind(p) == Tok::number) {
        if (kind(p + 1) != Tok::qmark || kind(p + 2) != Tok::number) return false;
        p += 3;
      } else if (kind(p) == Tok::qmark) {
        ++p;
      }
    } else if (kind(p) == Tok::qmark) {
      ++p;
    }
    if (kind(p) == Tok::lparen && kind(p + 1) == Tok::ident &&
        kind(p + 2) == Tok::rparen)
      p += 3;
    return kind(p) == Tok::dot;
  }

  TermPtr parse_postfix() {
    TermPtr t = parse_primary();
    while (accept(Tok::star)) t = t_star(std::move(t));
    return t;
  }

  TermPtr parse_primary() {
    if (at(Tok::number)) {
      Token n = take();
      if (n.number == 0) return t_deadlock();
      if (n.number == 1) return t_empty();
      throw ParseError(n.line, n.col, "expected a process term");
    }
    if (at_ident("bot")) {
      take();
      return t_bot();
    }
    if (at_ident("encap") && peek().kind == Tok::lparen) {
      take();
      take();
      std::vector<EncapPattern> pats;
      if (accept(Tok::lbrace)) {
        do {
          pats.push_back(parse_encap_pattern());
        } while (accept(Tok::comma));
        expect(Tok::rbrace, "'}'");
      } else {
        Token name_tok = cur();
        std::string name = expect_ident("encapsulation set name");
        auto it = model_.encapsulations.find(name);
        if (it == model_.encapsulations.end())
          throw ParseError(name_tok.line, name_tok.col,
                           "unknown encapsulation set " + name);
        pats = it->second;
      }
      expect(Tok::comma, "','");
      TermPtr body = parse_term();
      expect(Tok::rparen, "')'");
      return t_encap(std::move(pats), std::move(body));
    }
    if (at(Tok::lparen)) {
      take();
      TermPtr t = parse_term();
      expect(Tok::rparen, "')'");
      return t;
    }
    if (at(Tok::ident)) return t_ref(take().text);
    fail("expected a process term");
  }

  // ---- requirements ---------------------------------------------------

  Requirement parse_req_body() {
    if (at_ident("enables")) {
      take();
      expect(Tok::lparen, "'('");
      Action a = parse_action();
      expect(Tok::rparen, "')'");
      expect(Tok::darrow, "'=>'");
      Requirement r;
      r.kind = Requirement::Kind::event_implies;
      r.action = std::move(a);
      r.formula = parse_formula();
      return r;
    }
    return parse_req_implies();
  }

  Requirement parse_req_implies() {
    FormulaPtr lhs = parse_or();
    if (!accept(Tok::darrow)) {
      Requirement r;
      r.kind = Requirement::Kind::pure;
      r.formula = std::move(lhs);
      return r;
    }
    if (at_ident("disabled")) {
      take();
      expect(Tok::lparen, "'('");
      Action a = parse_action();
      expect(Tok::rparen, "')'");
      Requirement r;
      r.kind = Requirement::Kind::disables;
      r.formula = std::move(lhs);
      r.action = std::move(a);
      return r;
    }
    Requirement rest = parse_req_implies();
    if (rest.kind != Requirement::Kind::pure)
      fail("'disabled' may only follow the first top-level '=>'");
    rest.formula = f_implies(std::move(lhs), std::move(rest.formula));
    return rest;
  }

  // ---- validation ------------------------------------------------------

  Token decl_pos(const std::string& name) const {
    for (const auto& [n, tok] : decl_positions_)
      if (n == name) return tok;
    return Token{Tok::eof, "", 0, 0, 0};
  }

  void finalize() {
    if (!effect_rules_.empty()) {
      if (!effect_rules_.back().pattern.is_wildcard())
        throw ParseError(1, 1,
                         "the last effect rule must be the default ('effect * : ...')");
      model_.effect = EffectSpec(std::move(effect_rules_));
    }

    for (const auto& [chan, tok] : referenced_channels_)
      if (!model_.channel_classes.count(chan))
        throw ParseError(tok.line, tok.col, "undeclared channel: " + chan);
    for (const auto& [d, tok] : referenced_data_) {
      bool found = false;
      for (const auto& dd : model_.data) found |= dd == d;
      if (!found) throw ParseError(tok.line, tok.col, "undeclared datum: " + d);
    }

    // The model's propositional symbols: group members plus every symbol
    // occurring in a formula anywhere in the model.
    std::set<std::string> syms;
    for (const auto& [name, members] : model_.groups)
      syms.insert(members.begin(), members.end());
    collect_symbols(model_.init, syms);
    for (const auto& r : model_.requirements) collect_symbols(r.formula, syms);
    for (const auto& rule : model_.effect.rules()) {
      syms.insert(rule.symbols.begin(), rule.symbols.end());
      if (rule.constraint) collect_symbols(rule.constraint, syms);
    }
    bool state_features = false;
    auto scan_term = [&](const TermPtr& t) {
      collect_term_symbols(t, syms);
      state_features |= uses_state_features(t);
    };
    for (const auto& [n, t] : model_.defs) scan_term(t);
    for (const auto& [n, t] : model_.plants) scan_term(t);
    for (const auto& [n, s] : model_.supervisors) scan_term(s.term);
    model_.symbols = std::make_shared<const SymbolTable>(
        std::vector<std::string>(syms.begin(), syms.end()));
    model_.state_based =
        state_features || !syms.empty() || !model_.requirements.empty();


    // Definitions must resolve acyclically; plants and supervisors must
    // conform to their grammar class.
    auto expand_checked = [&](const std::string& name, const TermPtr& t) {
      try {
        return model_.expand(t);
      } catch (const Error& e) {
        Token tok = decl_pos(name);
        throw ParseError(tok.line, tok.col, e.what());
      }
    };
    for (const auto& [name, t] : model_.defs) expand_checked(name, t);
    GrammarClass plant_grammar = model_.state_based ? GrammarClass::plant_state
                                                    : GrammarClass::plant_event;
    for (const auto& [name, t] : model_.plants) {
      TermPtr expanded = expand_checked(name, t);
      auto r = classify_term(expanded, plant_grammar, model_.channel_classes);
      if (!r.ok) {
        Token tok = decl_pos(name);
        throw ParseError(tok.line, tok.col,
                         "plant " + name + " violates the plant grammar at '" +
                             term_str(r.violation) + "': " + r.reason);
      }
    }
    for (auto& [name, sup] : model_.supervisors) {
      if (!supervisor_mode_given_.count(name) && model_.state_based)
        sup.mode = GrammarClass::supervisor_state;
      TermPtr expanded = expand_checked(name, sup.term);
      auto r = classify_term(expanded, sup.mode, model_.channel_classes);
      if (!r.ok) {
        Token tok = decl_pos(name);
        throw ParseError(tok.line, tok.col,
                         "supervisor " + name +
                             " violates the supervisor grammar at '" +
                             term_str(r.violation) + "': " + r.reason);
      }
    }
  }

  std::vector<EffectRule> effect_rules_;
  std::set<std::string> supervisor_mode_given_;
  bool init_seen_ = false;
};

}  // namespace detail

inline Model parse_model(std::string_view text) {
  return detail::Parser(text).parse();
}

// Parses a single action literal, e.g. "s!?(make)" (used by the CLI).
inline Action parse_action_literal(std::string_view text) {
  auto toks = detail::lex(text);
  size_t pos = 0;
  auto& t0 = toks[pos];
  if (t0.kind != detail::Tok::ident)
    throw ParseError(t0.line, t0.col, "expected an action");
  Action a{t0.text, 0, 0, {}};
  ++pos;
  auto at = [&](detail::Tok k) { return toks[pos].kind == k; };
  if (at(detail::Tok::bang)) {
    ++pos;
    if (at(detail::Tok::number)) {
      a.sends = (int)toks[pos++].number;
      if (!at(detail::Tok::qmark))
        throw ParseError(toks[pos].line, toks[pos].col, "expected '?'");
      ++pos;
      if (!at(detail::Tok::number))
        throw ParseError(toks[pos].line, toks[pos].col, "expected receive count");
      a.receives = (int)toks[pos++].number;
    } else if (at(detail::Tok::qmark)) {
      ++pos;
      a.sends = a.receives = 1;
    } else {
      a.sends = 1;
    }
  } else if (at(detail::Tok::qmark)) {
    ++pos;
    a.receives = 1;
  }
  if (at(detail::Tok::lparen)) {
    ++pos;
    if (toks[pos].kind != detail::Tok::ident)
      throw ParseError(toks[pos].line, toks[pos].col, "expected a datum");
    a.datum = toks[pos++].text;
    if (toks[pos].kind != detail::Tok::rparen)
      throw ParseError(toks[pos].line, toks[pos].col, "expected ')'");
    ++pos;
  }
  if (toks[pos].kind != detail::Tok::eof)
    throw ParseError(toks[pos].line, toks[pos].col, "trailing input after action");
  return a;
}

}  // namespace pact
