#pragma once

#include <stdexcept>
#include <string>

namespace pact {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Model-file syntax or validation error. Positions are 1-based.
struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(int line_, int col_, const std::string& msg)
      : Error("parse error at " + std::to_string(line_) + ":" +
              std::to_string(col_) + ": " + msg),
        line(line_),
        column(col_) {}
};

// Formula evaluated against a valuation that does not cover a symbol.
struct EvalError : Error {
  std::string symbol;
  explicit EvalError(const std::string& sym)
      : Error("unknown propositional symbol: " + sym), symbol(sym) {}
};

// State or subset budget exceeded during exploration.
struct BudgetError : Error {
  std::string frontier;
  BudgetError(size_t budget, const std::string& frontier_)
      : Error("state budget of " + std::to_string(budget) +
              " exceeded; frontier: " + frontier_),
        frontier(frontier_) {}
};

// Operation applied to a term outside its semantic fragment.
struct SemanticsError : Error {
  explicit SemanticsError(const std::string& msg) : Error(msg) {}
};

}  // namespace pact
