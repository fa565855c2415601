#include <random>
#include <set>

#include "doctest.h"
#include "plauslab/error.hpp"
#include "plauslab/generators.hpp"
#include "plauslab/syntax.hpp"

using namespace plauslab;

namespace {

Formula subj(const std::string& text) { return parse(text, Lang::kSubj); }
Formula stat(const std::string& text) { return parse(text, Lang::kStat); }
Term var(const std::string& v) { return Term::var(v); }
Term con(const std::string& c) { return Term::func(c); }

std::set<std::string> fv(const Formula& f) { return {f.free_vars().begin(), f.free_vars().end()}; }

FormulaShape fuzz_shape(Lang lang) {
  FormulaShape s;
  s.lang = lang;
  s.predicates = {{"P", 1}, {"Q", 2}, {"R", 0}};
  s.constants = {"c", "d"};
  s.functions = {{"f", 1}, {"g", 2}};
  s.variables = lang == Lang::kSubj ? std::vector<std::string>{"x", "y", "z"}
                                    : std::vector<std::string>{"x1", "x2", "x3"};
  s.max_depth = 6;
  return s;
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  Formula f = subj("forall x (true => ~Winner(x))");
  REQUIRE(f.op() == Op::kForall);
  CHECK(f.symbol() == "x");
  const Formula& c = f.child(0);
  REQUIRE(c.op() == Op::kCond);
  CHECK(c.child(0).op() == Op::kTrue);
  REQUIRE(c.child(1).op() == Op::kNot);
  CHECK(c.child(1).child(0) == atom("Winner", {var("x")}));

  CHECK(subj("true => exists x Winner(x)") == cond(truth(), exists("x", atom("Winner", {var("x")}))));
  CHECK(subj("P(c)") == atom("P", {con("c")}));
  CHECK(subj("x != y") == negate(equals(var("x"), var("y"))));
  CHECK(subj("N P(x)") == nec(atom("P", {var("x")})));
  CHECK(stat("P(x1) =[x2,x1]=> Q(x1)") == stat_cond({"x1", "x2"}, atom("P", {var("x1")}), atom("Q", {var("x1")})));
}

TEST_CASE("connective precedence and associativity") {
  CHECK(subj("P | Q & R") == disj(atom("P"), conj(atom("Q"), atom("R"))));
  CHECK(subj("P -> Q -> R") == implies(atom("P"), implies(atom("Q"), atom("R"))));
  CHECK(subj("P & Q & R") == conj(conj(atom("P"), atom("Q")), atom("R")));
  CHECK(subj("~P & Q") == conj(negate(atom("P")), atom("Q")));
  CHECK(subj("forall x P(x) & Q") == conj(forall("x", atom("P", {var("x")})), atom("Q")));
  CHECK_THROWS_AS(subj("P <-> Q <-> R"), ParseError);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(subj("P(x"), ParseError);
  CHECK_THROWS_AS(subj("P(x) Q"), ParseError);
  CHECK_THROWS_AS(subj("P(x) & P(x,y)"), ArityError);
  CHECK_THROWS_AS(subj("P(c) & c(x)"), ArityError);
  CHECK_THROWS_AS(subj("P =[x]=> Q"), ParseError);
  CHECK_THROWS_AS(stat("P => Q"), ParseError);
  CHECK_THROWS_AS(stat("N P"), ParseError);
  CHECK_THROWS_AS(stat("forall y P(y)"), ParseError);
  CHECK_THROWS_AS(stat("P =[]=> Q"), ParseError);
  CHECK_THROWS_AS(subj("x"), ParseError);
  CHECK_THROWS_AS(subj("P(x(c))"), ParseError);
  CHECK_THROWS_AS(subj("P $ Q"), ParseError);
  try {
    subj("P & & Q");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("column 5") != std::string::npos);
  }
  Vocabulary v;
  parse("P(c)", Lang::kSubj, &v);
  CHECK(v.predicate_arity("P") == 1);
  CHECK(v.function_arity("c") == 0);
  CHECK_THROWS_AS(parse("P(c,c)", Lang::kSubj, &v), ArityError);
}

TEST_CASE("free variables") {
  CHECK(fv(stat("P(x1,x2) =[x1]=> Q(x1)")) == std::set<std::string>{"x2"});
  CHECK(fv(subj("forall x P(x)")).empty());
  CHECK(fv(subj("x = y")) == std::set<std::string>{"x", "y"});
  CHECK(fv(subj("forall x (P(x) => Q(y)) & R(x)")) == std::set<std::string>{"x", "y"});
}

TEST_CASE("substitution") {
  CHECK(substitute(subj("P(x)"), "x", con("c")) == subj("P(c)"));
  CHECK_THROWS_AS(substitute(subj("forall y x != y"), "x", var("y")), SubstitutionError);
  CHECK(substitute(subj("P(x) => Q(x)"), "x", var("y")) == subj("P(y) => Q(y)"));
  CHECK(substitute(subj("forall x P(x) & P(x)"), "x", con("c")) == subj("forall x P(x) & P(c)"));
  CHECK(substitute(stat("P(x1,x2) =[x1]=> Q(x1)"), "x1", var("x3")) == stat("P(x1,x2) =[x1]=> Q(x1)"));
  CHECK(substitute(stat("P(x1,x2) =[x1]=> Q(x1)"), "x2", var("x3")) == stat("P(x1,x3) =[x1]=> Q(x1)"));
  CHECK_THROWS_AS(substitute(stat("P(x1,x2) =[x1]=> Q(x1)"), "x2", var("x1")), SubstitutionError);
}

TEST_CASE("substitutability") {
  CHECK_FALSE(substitutable(subj("P(x) => Q(x)"), "x", con("c")));
  CHECK(substitutable(subj("P(x) & Q(x)"), "x", Term::func("f", {con("c")})));
  CHECK(substitutable(subj("forall x P(x)"), "x", con("c")));
  CHECK_FALSE(substitutable(subj("N P(x)"), "x", con("c")));
  CHECK(fo_substitutable(subj("P(x) => Q(x)"), "x", con("c")));
  CHECK_FALSE(substitutable(subj("exists y (x = y)"), "x", var("y")));
}

TEST_CASE("universal closure") {
  CHECK(universal_closure(subj("P(x,y)")) == subj("forall x forall y P(x,y)"));
  Formula s = subj("forall x P(x)");
  CHECK(universal_closure(s) == s);
  CHECK(universal_closure(stat("P(x1) =[x1]=> Q(x1,x2)")) == stat("forall x2 (P(x1) =[x1]=> Q(x1,x2))"));
}

TEST_CASE("statistical variable conventions") {
  CHECK(stat_index("x1") == 1);
  CHECK(stat_index("x12") == 12);
  CHECK(stat_index("x0") == 0);
  CHECK(stat_index("x01") == 0);
  CHECK(stat_index("y1") == 0);
  CHECK(looks_like_subj_var("x"));
  CHECK(looks_like_subj_var("u3"));
  CHECK_FALSE(looks_like_subj_var("c"));
}

TEST_CASE("mixing conditionals is rejected") {
  CHECK_THROWS_AS(conj(cond(truth(), truth()), stat_cond({"x1"}, truth(), truth())), ParseError);
  CHECK(desugar(subj("N P(x)")) == subj("~P(x) => false"));
}

TEST_CASE("print and parse round-trip on random formulas") {
  Rng rng(11);
  for (Lang lang : {Lang::kSubj, Lang::kStat}) {
    FormulaShape shape = fuzz_shape(lang);
    for (int i = 0; i < 3000; ++i) {
      Formula f = random_formula(rng, shape);
      std::string text = print(f);
      CAPTURE(text);
      Formula g = parse(text, lang);
      CHECK(g == f);
      CHECK(print(g) == text);
    }
  }
}

TEST_CASE("substitution law for free variables") {
  Rng rng(12);
  FormulaShape shape = fuzz_shape(Lang::kSubj);
  shape.max_depth = 4;
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    Formula f = random_formula(rng, shape);
    for (const std::string& y : {"y", "w"}) {
      if (!substitutable(f, "x", var(y))) continue;
      ++checked;
      Formula g = substitute(f, "x", var(y));
      std::set<std::string> expected = fv(f);
      bool was_free = expected.erase("x") > 0;
      if (was_free) expected.insert(y);
      CHECK(fv(g) == expected);
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("substitutable is capture-freedom for variables") {
  Rng rng(13);
  FormulaShape shape = fuzz_shape(Lang::kSubj);
  shape.max_depth = 4;
  for (int i = 0; i < 2000; ++i) {
    Formula f = random_formula(rng, shape);
    CHECK(substitutable(f, "x", var("y")) == fo_substitutable(f, "x", var("y")));
    if (f.has_modal() && occurs_free(f, "x")) CHECK_FALSE(substitutable(f, "x", con("c")));
  }
}
