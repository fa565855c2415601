#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "lottery_mutations.hpp"
#include "plauslab/axioms.hpp"
#include "plauslab/backends.hpp"
#include "plauslab/error.hpp"
#include "plauslab/generators.hpp"
#include "plauslab/subjective.hpp"

using namespace plauslab;

namespace {

Formula subj(const std::string& text) { return parse(text, Lang::kSubj); }
Formula stat(const std::string& text) { return parse(text, Lang::kStat); }

// Truth table over 0-ary atoms, evaluated directly.
bool prop_eval(const Formula& f, const std::map<std::string, bool>& a) {
  switch (f.op()) {
    case Op::kTrue: return true;
    case Op::kFalse: return false;
    case Op::kAtom: return a.at(f.symbol());
    case Op::kNot: return !prop_eval(f.child(0), a);
    case Op::kAnd: return prop_eval(f.child(0), a) && prop_eval(f.child(1), a);
    case Op::kOr: return prop_eval(f.child(0), a) || prop_eval(f.child(1), a);
    case Op::kImplies: return !prop_eval(f.child(0), a) || prop_eval(f.child(1), a);
    case Op::kIff: return prop_eval(f.child(0), a) == prop_eval(f.child(1), a);
    default: throw std::logic_error("not propositional");
  }
}

bool prop_tautology(const Formula& f, const std::vector<std::string>& atoms) {
  for (unsigned code = 0; code < (1u << atoms.size()); ++code) {
    std::map<std::string, bool> a;
    for (std::size_t i = 0; i < atoms.size(); ++i) a[atoms[i]] = (code >> i) & 1;
    if (!prop_eval(f, a)) return false;
  }
  return true;
}

FormulaShape subj_shape() {
  FormulaShape s;
  s.lang = Lang::kSubj;
  s.predicates = {{"P", 1}, {"Q", 2}, {"R", 0}};
  s.constants = {"c", "d"};
  s.functions = {{"f", 1}};
  s.variables = {"x", "y", "z"};
  s.max_depth = 2;
  return s;
}

FormulaShape stat_shape(int slots) {
  FormulaShape s;
  s.lang = Lang::kStat;
  s.predicates = {{"P", 1}, {"Q", 2}, {"R", 0}};
  s.constants = {"c"};
  for (int i = 1; i <= slots; ++i) s.variables.push_back("x" + std::to_string(i));
  s.max_depth = 2;
  s.nec = false;
  return s;
}

Justification premise() { return {}; }

Justification mp(int a, int b) {
  Justification j;
  j.kind = Justification::Kind::kMp;
  j.refs = {a, b};
  return j;
}

Justification axiom(const std::string& schema) {
  Justification j;
  j.kind = Justification::Kind::kAxiom;
  j.schema = schema;
  return j;
}

}  // namespace

TEST_CASE("schema table, aliases and groups") {
  for (const Schema& s : schemas()) CHECK(find_schema(s.name).name == s.name);
  CHECK(find_schema("∀3").name == "forall3");
  CHECK(find_schema("C0′").name == "C0'");
  CHECK(find_schema("∀3′").name == "forall3'");
  CHECK_THROWS_AS(find_schema("C9"), std::invalid_argument);
  CHECK(expand_schema_set("C-subj").size() == 13);
  CHECK(expand_schema_set("C-stat").size() == 9);
  CHECK(expand_schema_set("C6") == std::vector<std::string>{"C6"});
}

TEST_CASE("instantiate examples and side conditions") {
  Bindings c1;
  c1.formulas = {{"phi", subj("P(c)")}};
  CHECK(instantiate("C1", c1) == subj("P(c) => P(c)"));

  Bindings f1;
  f1.formulas = {{"phi", subj("true => P(x)")}};
  f1.vars = {{"x", "x"}};
  f1.terms.emplace("t", Term::func("c"));
  CHECK_THROWS_AS(instantiate("F1", f1), SideConditionError);
  f1.terms.at("t") = Term::var("y");
  CHECK(instantiate("F1", f1) == subj("forall x (true => P(x)) -> (true => P(y))"));
  f1.formulas["phi"] = subj("P(x)");
  f1.terms.at("t") = Term::func("c");
  CHECK(instantiate("F1", f1) == subj("forall x P(x) -> P(c)"));

  Bindings f3;
  f3.formulas = {{"phi", subj("true")}, {"psi", subj("~Winner(x)")}};
  f3.vars = {{"x", "x"}};
  CHECK(instantiate("forall3", f3) == subj("forall x (true => ~Winner(x)) -> (true => forall x ~Winner(x))"));
  f3.formulas["phi"] = subj("P(x)");
  CHECK_THROWS_AS(instantiate("forall3", f3), SideConditionError);

  Bindings bad;
  bad.formulas = {{"phi", subj("P(x)")}};
  bad.vars = {{"x", "x"}};
  CHECK_THROWS_AS(instantiate("F3", bad), SideConditionError);
  CHECK_THROWS_AS(instantiate("C1", Bindings{}), std::invalid_argument);
  CHECK_THROWS_AS(instantiate("C1", bad), std::invalid_argument);  // foreign slot x

  Bindings f5;
  f5.formulas = {{"phi", subj("Q(x,x)")}, {"phi'", subj("Q(y,x)")}};
  f5.vars = {{"x", "x"}, {"y", "y"}};
  CHECK(instantiate("F5", f5) == subj("x = y -> (Q(x,x) -> Q(y,x))"));
  f5.formulas["phi'"] = subj("Q(x,y) | R");
  CHECK_THROWS_AS(instantiate("F5", f5), SideConditionError);
  f5.formulas = {{"phi", subj("forall z Q(x,z)")}, {"phi'", subj("forall z Q(y,z)")}};
  CHECK_THROWS_AS(instantiate("F5", f5), SideConditionError);

  Bindings ren;
  ren.formulas = {{"phi", stat("P(x1)")}, {"psi", stat("Q(x1,c)")}};
  ren.varset = {"x1"};
  ren.vars = {{"x", "x1"}, {"y", "x2"}};
  CHECK(instantiate("Ren", ren) == stat("(P(x1) =[x1]=> Q(x1,c)) -> (P(x2) =[x2]=> Q(x2,c))"));
  ren.formulas["phi"] = stat("P(x2)");
  CHECK_THROWS_AS(instantiate("Ren", ren), SideConditionError);

  Bindings prod;
  prod.formulas = {{"phi", stat("P(x1)")}, {"psi", stat("R")}, {"phi'", stat("P(x1)")}};
  prod.varset = {"x1"};
  CHECK_THROWS_AS(instantiate("Prod", prod), SideConditionError);
  prod.formulas["phi'"] = stat("P(x2)");
  CHECK(instantiate("Prod", prod) == stat("(P(x1) =[x1]=> R) -> (P(x1) & P(x2) =[x1]=> R)"));

  Bindings gen = c1;
  gen.generalized = {"y"};
  CHECK(instantiate("C1", gen) == subj("forall y (P(c) => P(c))"));
}

TEST_CASE("tautology check against a direct truth table") {
  std::mt19937_64 rng(11);
  FormulaShape s;
  s.predicates = {{"A", 0}, {"B", 0}, {"C", 0}};
  s.equality = false;
  s.max_depth = 4;
  int tautologies = 0;
  for (int i = 0; i < 3000; ++i) {
    Formula f = random_formula(rng, s);
    if (f.has_modal()) continue;
    bool expected = prop_tautology(f, {"A", "B", "C"});
    CHECK(is_tautology(f) == expected);
    tautologies += expected;
  }
  CHECK(tautologies > 10);

  CHECK(is_tautology(subj("(exists x P(x)) <-> ~forall x ~P(x)")));
  CHECK(is_tautology(subj("(exists x P(x) & forall x ~P(x)) -> false")));
  CHECK(is_tautology(subj("(P(c) => R) | ~(P(c) => R)")));
  CHECK(is_tautology(subj("N R <-> (~R => false)")));
  CHECK_FALSE(is_tautology(subj("(P(c) => R) -> (P(c) -> R)")));
  CHECK_FALSE(is_tautology(subj("forall x P(x) -> P(c)")));

  std::vector<Formula> atoms;
  for (int i = 0; i < 21; ++i) atoms.push_back(atom("A" + std::to_string(i)));
  Formula big = disj(conj_all(atoms), truth());
  CHECK_THROWS_AS(is_tautology(big), CapacityError);
}

TEST_CASE("matcher inverts instantiate on random instances") {
  std::mt19937_64 rng(5);
  const FormulaShape ss = subj_shape();
  const FormulaShape st = stat_shape(3);
  for (const Schema& s : schemas()) {
    const FormulaShape& shape = s.lang == Lang::kSubj ? ss : st;
    for (int i = 0; i < 60; ++i) {
      Formula f = random_instance(rng, s.name, shape);
      std::optional<Bindings> b = match_schema(s.name, f);
      INFO(s.name << ": " << print(f));
      REQUIRE(b.has_value());
      CHECK(instantiate(s.name, *b) == f);
      // Generalizations are instances too.
      Formula g = forall("y", f);
      if (s.lang == Lang::kStat) g = forall("x3", f);
      std::optional<Bindings> gb = match_schema(s.name, g);
      REQUIRE(gb.has_value());
      CHECK(instantiate(s.name, *gb) == g);
    }
  }
}

TEST_CASE("matcher only accepts instances") {
  CHECK_FALSE(match_schema("C1", subj("P(c) => P(d)")));
  CHECK_FALSE(match_schema("F3", subj("P(x) -> forall x P(x)")));
  CHECK(match_schema("F3", subj("P(y) -> forall x P(y)")));
  CHECK_FALSE(match_schema("F1", subj("forall x (true => P(x)) -> (true => P(c))")));
  CHECK(match_schema("F1", subj("forall x P(x) -> P(f(c))")));
  CHECK_FALSE(match_schema("forall3", subj("forall x (P(x) => R) -> (P(x) => forall x R)")));
  CHECK_FALSE(match_schema("C2", subj("((R => P(c)) & (R => P(d))) -> (R => P(d) & P(c))")));
  CHECK_FALSE(match_schema("Ren", stat("(P(x1) =[x1]=> Q(x1,x2)) -> (P(x2) =[x2]=> Q(x2,x2))")));
  CHECK(match_schema("C0", subj("forall y (R | ~R)")));
  CHECK(match_schema("C0'", stat("forall x1 P(x1) -> P(c)")));
  CHECK_FALSE(match_schema("C0'", stat("P(c) -> forall x1 P(x1)")));

  // Soundness on arbitrary formulas: any match re-instantiates exactly.
  std::mt19937_64 rng(9);
  FormulaShape shape = subj_shape();
  shape.max_depth = 4;
  int matched = 0;
  for (int i = 0; i < 3000; ++i) {
    Formula f = random_formula(rng, shape);
    for (const Schema& s : schemas()) {
      if (s.lang != Lang::kSubj) continue;
      if (auto b = match_schema(s.name, f)) {
        ++matched;
        CHECK(instantiate(s.name, *b) == f);
      }
    }
  }
  CHECK(matched > 0);
}

TEST_CASE("derivations: a short C2 proof and a corrupted one") {
  Derivation d;
  Formula a = subj("P(c) => Q(c,c)");
  Formula b = subj("P(c) => R");
  d.premises = {a, b};
  d.lines.push_back({a, premise()});
  d.lines.push_back({b, premise()});
  d.lines.push_back({subj("((P(c) => Q(c,c)) & (P(c) => R)) -> (P(c) => Q(c,c) & R)"), axiom("C2")});
  d.lines.push_back({implies(a, implies(b, conj(a, b))), axiom("C0")});
  d.lines.push_back({implies(b, conj(a, b)), mp(1, 4)});
  d.lines.push_back({conj(a, b), mp(2, 5)});
  d.lines.push_back({subj("P(c) => Q(c,c) & R"), mp(6, 3)});
  CHECK(check_derivation(d).ok);

  Derivation bad = d;
  bad.lines[4].just.refs = {2, 4};
  DerivationReport r = check_derivation(bad);
  CHECK_FALSE(r.ok);
  CHECK(r.bad_line == 5);

  Derivation rule = d;
  rule.lang = Lang::kStat;
  rule.premises = {stat("R")};
  rule.lines = {{stat("R"), premise()}, {stat("R"), premise()}};
  rule.lines[1].just.kind = Justification::Kind::kR2;
  rule.lines[1].just.refs = {1};
  r = check_derivation(rule);
  CHECK_FALSE(r.ok);
  CHECK(r.bad_line == 2);
}

TEST_CASE("lottery derivation with and without forall3") {
  Derivation d = lottery_derivation(true);
  CHECK(d.lines.size() == 12);
  CHECK(d.lines.back().formula == subj("true => false"));
  DerivationReport ok = check_derivation(d);
  INFO(ok.reason);
  CHECK(ok.ok);

  DerivationReport off = check_derivation(lottery_derivation(false));
  CHECK_FALSE(off.ok);
  CHECK(off.bad_line == 3);
  CHECK(off.reason.find("forall3") != std::string::npos);

  for (const auto& [name, m] : lottery_mutations()) {
    INFO(name);
    CHECK_FALSE(check_derivation(m).ok);
  }
  CHECK(lottery_mutations().size() == 10);
}

TEST_CASE("derivation JSON round trip") {
  Derivation d = lottery_derivation(true);
  std::string text = derivation_to_json(d);
  Derivation back = parse_derivation(text);
  CHECK(derivation_to_json(back) == text);
  CHECK(check_derivation(back).ok);
  CHECK_THROWS_AS(parse_derivation("{"), ParseError);
  CHECK_THROWS_AS(parse_derivation(R"({"lines":[{"formula":"P(","just":{"kind":"premise"}}]})"), ParseError);
  CHECK_THROWS_AS(parse_derivation(R"({"lines":[{"formula":"R","just":{"kind":"guess"}}]})"), ParseError);
}

TEST_CASE("validity sweeps") {
  SizeBounds small{3, 3, 2};
  CHECK(test_validity("C6", MeasureClass::kKappa, 200, 10, 1).violations == 0);
  CHECK(test_validity("C6", MeasureClass::kPoss, 200, 10, 2).violations == 0);
  CHECK(test_validity("C7", MeasureClass::kEps, 200, 5, 3).violations == 0);
  CHECK(test_validity("C-subj", MeasureClass::kQpl, 60, 5, 4, small).violations == 0);
  CHECK(test_validity("forall3", MeasureClass::kQpl, 200, 10, 5).violations == 0);
  CHECK(test_validity("C-subj", MeasureClass::kPref, 40, 5, 6, small).violations == 0);

  ValidityReport c6 = test_validity("C6", MeasureClass::kQpl, 400, 20, 7);
  CHECK(c6.violations > 0);
  CHECK(c6.witness.find("instance:") != std::string::npos);
  CHECK(test_validity("C7", MeasureClass::kQpl, 100, 1, 8).violations > 0);

  ValidityReport f = test_validity("P(c) => P(c)", MeasureClass::kQpl, 50, 1, 9);
  CHECK(f.instances == 50);
  CHECK(f.violations == 0);
  CHECK(test_validity("forall x N P(x) -> N forall x P(x)", MeasureClass::kKappa, 100, 1, 10).violations == 0);

  CHECK(test_validity("C-stat", MeasureClass::kQpl, 60, 5, 11, small).violations == 0);
  CHECK(test_validity("C6'", MeasureClass::kKappa, 100, 10, 12).violations == 0);
  CHECK(test_validity("forall3'", MeasureClass::kKappa, 100, 10, 13).violations == 0);
  CHECK_THROWS_AS(test_validity("C1'", MeasureClass::kEps, 1, 1, 1), std::invalid_argument);
  CHECK(test_validity("C1", MeasureClass::kQpl, 3, 2, 1).text().find("0 violations") != std::string::npos);
}

TEST_CASE("countermodel search") {
  CHECK_FALSE(find_countermodel(subj("P(c) => P(c)"), MeasureClass::kQpl).countermodel);

  Bindings b;
  b.formulas = {{"phi", subj("A")}, {"psi", subj("B")}, {"xi", subj("C")}};
  Formula c6 = instantiate("C6", b);
  SearchReport qpl = find_countermodel(c6, MeasureClass::kQpl, {1, 3, 1});
  REQUIRE(qpl.countermodel);
  const Countermodel& m = *qpl.countermodel;
  CHECK_FALSE(eval_subj(*m.model, m.world, {}, c6));
  CHECK(m.worlds == 3);
  CHECK(qpl.text().find("countermodel") != std::string::npos);
  CHECK_FALSE(find_countermodel(c6, MeasureClass::kKappa, {1, 4, 1}).countermodel);
  CHECK_FALSE(find_countermodel(c6, MeasureClass::kPoss, {1, 4, 1}).countermodel);

  SearchReport open = find_countermodel(subj("P(x) => Q(x,y)"), MeasureClass::kKappa, {2, 2, 1});
  REQUIRE(open.countermodel);
  Valuation v;
  for (const auto& [name, e] : open.countermodel->valuation) v[name] = e == "d1" ? 0 : 1;
  CHECK_FALSE(eval_subj(*open.countermodel->model, open.countermodel->world, v, subj("P(x) => Q(x,y)")));

  CHECK_THROWS_AS(find_countermodel(subj("R"), MeasureClass::kQpl, {3, 5, 1}), CapacityError);
  CHECK_THROWS_AS(find_countermodel(stat("P(x1) =[x1]=> R"), MeasureClass::kQpl), std::invalid_argument);
}

TEST_CASE("countermodel search agrees with enumeration of interpretations") {
  // Oracle: every interpretation of two 0-ary predicates and one constant over
  // a 2-element domain, on every ranking shape of up to 2 worlds.
  std::mt19937_64 rng(21);
  FormulaShape s;
  s.predicates = {{"A", 0}, {"B", 0}, {"P", 1}};
  s.constants = {"c"};
  s.variables = {"x"};
  s.max_depth = 3;
  int found = 0;
  for (int i = 0; i < 120; ++i) {
    Formula f = universal_closure(random_formula(rng, s));
    Vocabulary vocab;
    vocab.absorb(f);
    for (const auto& [n, a] : std::map<std::string, int>{{"A", 0}, {"B", 0}, {"P", 1}}) vocab.add_predicate(n, a);
    vocab.add_function("c", 0);
    bool oracle = false;
    for (int worlds = 1; worlds <= 2 && !oracle; ++worlds) {
      std::vector<std::vector<Rank>> shapes = worlds == 1 ? std::vector<std::vector<Rank>>{{0}}
                                                          : std::vector<std::vector<Rank>>{{0, 0}, {0, 1}, {0, kInfiniteRank}};
      for (const auto& ranks : shapes) {
        auto pl = std::make_shared<KappaRanking>(ranks);
        // Per world: A, B, P(d1), P(d2), c.
        const int bits = 5 * worlds;
        for (unsigned code = 0; code < (1u << bits) && !oracle; ++code) {
          std::vector<Interpretation> in(worlds);
          for (int w = 0; w < worlds; ++w) {
            unsigned c = code >> (5 * w);
            in[w].preds["A"] = {static_cast<char>(c & 1)};
            in[w].preds["B"] = {static_cast<char>((c >> 1) & 1)};
            in[w].preds["P"] = {static_cast<char>((c >> 2) & 1), static_cast<char>((c >> 3) & 1)};
            in[w].funcs["c"] = {static_cast<Element>((c >> 4) & 1)};
          }
          std::vector<std::string> wn;
          for (int w = 0; w < worlds; ++w) wn.push_back("w" + std::to_string(w + 1));
          SubjectiveStructure st(vocab, {"d1", "d2"}, wn, in, pl);
          SubjectiveEvaluator ev(st);
          if (!ev.valid(f)) oracle = true;
        }
      }
    }
    SearchReport r = find_countermodel(f, MeasureClass::kKappa, {2, 2, 1});
    // The search also tries |Dom| = 1, whose countermodels lift to |Dom| = 2
    // only for some formulas, so compare in one direction and on |Dom| = 2.
    if (oracle) {
      CHECK(r.countermodel.has_value());
      ++found;
    }
    if (r.countermodel && r.countermodel->dom == 2) CHECK(oracle);
  }
  CHECK(found > 10);
}
