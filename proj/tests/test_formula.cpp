#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pact/formula.hpp"

using namespace pact;

namespace {

SymbolTablePtr table(std::vector<std::string> names) {
  return std::make_shared<const SymbolTable>(std::move(names));
}

// Independent truth-table count of satisfying valuations.
size_t count_models_bruteforce(const FormulaPtr& f, const SymbolTablePtr& t) {
  size_t count = 0;
  for (uint32_t bits = 0; bits < (1u << t->size()); ++bits)
    if (eval_formula(f, Valuation(t, bits))) ++count;
  return count;
}

FormulaPtr random_formula(std::mt19937& rng, const std::vector<std::string>& syms,
                          int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 6);
  switch (pick(rng)) {
    case 0:
      return f_true();
    case 1:
      return f_false();
    case 2: {
      std::uniform_int_distribution<size_t> s(0, syms.size() - 1);
      return f_sym(syms[s(rng)]);
    }
    case 3:
      return f_not(random_formula(rng, syms, depth - 1));
    case 4:
      return f_and(random_formula(rng, syms, depth - 1),
                   random_formula(rng, syms, depth - 1));
    case 5:
      return f_or(random_formula(rng, syms, depth - 1),
                  random_formula(rng, syms, depth - 1));
    default:
      return f_implies(random_formula(rng, syms, depth - 1),
                       random_formula(rng, syms, depth - 1));
  }
}

}  // namespace

TEST_CASE("constants evaluate to themselves") {
  auto t = table({});
  Valuation v(t, 0);
  CHECK(eval_formula(f_true(), v));
  CHECK_FALSE(eval_formula(f_false(), v));
}

TEST_CASE("guard g3 of the printer supervisor") {
  auto t = table({"in(Standby)", "in(ExecuteNow)"});
  FormulaPtr g3 = f_and(f_sym("in(Standby)"), f_sym("in(ExecuteNow)"));
  Valuation both = Valuation(t, 0).with("in(Standby)", true).with("in(ExecuteNow)", true);
  CHECK(eval_formula(g3, both));
  CHECK_FALSE(eval_formula(g3, both.with("in(Standby)", false)));
}

TEST_CASE("oneof over two symbols, both true, is false") {
  auto t = table({"A", "B"});
  FormulaPtr f = f_oneof({"A", "B"});
  Valuation v = Valuation(t, 0).with("A", true).with("B", true);
  CHECK_FALSE(eval_formula(f, v));
  CHECK(eval_formula(f, Valuation(t, 0).with("A", true)));
  CHECK(eval_formula(f, Valuation(t, 0).with("B", true)));
  CHECK_FALSE(eval_formula(f, Valuation(t, 0)));
}

TEST_CASE("oneof of a singleton is the symbol itself") {
  FormulaPtr f = expand_oneof({"P"});
  REQUIRE(f->kind == Formula::Kind::symbol);
  CHECK(f->name == "P");
}

TEST_CASE("oneof of two symbols expands to the exclusive disjunction") {
  FormulaPtr f = expand_oneof({"P", "Q"});
  // (P /\ !Q) \/ (Q /\ !P)
  REQUIRE(f->kind == Formula::Kind::disjunction);
  auto t = table({"P", "Q"});
  CHECK(count_models_bruteforce(f, t) == 2);
}

TEST_CASE("oneof over k symbols has exactly k satisfying valuations") {
  std::vector<std::string> names;
  for (int k = 1; k <= 6; ++k) {
    names.push_back(std::string(1, char('a' + k - 1)));
    auto t = table(names);
    FormulaPtr f = expand_oneof(names);
    CHECK(count_models_bruteforce(f, t) == (size_t)k);
  }
}

TEST_CASE("oneof over the empty set is rejected") {
  CHECK_THROWS_AS(expand_oneof({}), Error);
}

TEST_CASE("unknown symbol names the offender") {
  auto t = table({"A"});
  try {
    eval_formula(f_sym("Missing"), Valuation(t, 0));
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.symbol == "Missing");
  }
}

TEST_CASE("negation and de Morgan dualities on random formulas") {
  std::mt19937 rng(0xC0FFEE);
  std::vector<std::string> syms{"A", "B", "C"};
  auto t = table(syms);
  for (int i = 0; i < 500; ++i) {
    FormulaPtr f = random_formula(rng, syms, 3);
    FormulaPtr g = random_formula(rng, syms, 3);
    std::uniform_int_distribution<uint32_t> bits(0, 7);
    Valuation v(t, bits(rng));
    CHECK(eval_formula(f_not(f), v) == !eval_formula(f, v));
    CHECK(eval_formula(f_not(f_and(f, g)), v) ==
          eval_formula(f_or(f_not(f), f_not(g)), v));
    CHECK(eval_formula(f_not(f_or(f, g)), v) ==
          eval_formula(f_and(f_not(f), f_not(g)), v));
    CHECK(eval_formula(f_implies(f, g), v) ==
          eval_formula(f_or(f_not(f), g), v));
  }
}

TEST_CASE("models_of enumerates exactly the satisfying valuations") {
  std::mt19937 rng(0xBEEF);
  std::vector<std::string> syms{"A", "B", "C", "D"};
  auto t = table(syms);
  for (int i = 0; i < 200; ++i) {
    FormulaPtr f = random_formula(rng, syms, 3);
    auto models = models_of(f, t);
    std::set<uint32_t> got;
    for (const auto& m : models) got.insert(m.bits());
    CHECK(got.size() == models.size());  // no duplicates
    for (uint32_t bits = 0; bits < 16; ++bits)
      CHECK(got.count(bits) == (eval_formula(f, Valuation(t, bits)) ? 1u : 0u));
  }
}

TEST_CASE("formula printing round-trips through precedence") {
  FormulaPtr f =
      f_implies(f_or(f_sym("A"), f_and(f_sym("B"), f_not(f_sym("C")))), f_sym("D"));
  CHECK(formula_str(f) == "A \\/ B /\\ !C => D");
  FormulaPtr g = f_and(f_or(f_sym("A"), f_sym("B")), f_sym("C"));
  CHECK(formula_str(g) == "(A \\/ B) /\\ C");
}
