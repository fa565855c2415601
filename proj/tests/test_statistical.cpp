#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "plauslab/backends.hpp"
#include "plauslab/error.hpp"
#include "plauslab/generators.hpp"
#include "plauslab/statistical.hpp"

using namespace plauslab;

namespace {

Formula stat(const std::string& text) { return parse(text, Lang::kStat); }

// Textbook cylinder semantics over explicit tuples.
struct Oracle {
  const StatisticalStructure& s;

  Element term(const Term& t, const std::vector<Element>& v) const {
    if (t.is_var()) return v.at(stat_index(t.name()) - 1);
    std::vector<Element> args;
    for (const Term& a : t.args()) args.push_back(term(a, v));
    return s.interp().func(t.name(), args, s.dom_size());
  }

  std::vector<Element> tuple(int point) const {
    std::vector<Element> t;
    for (int i = 0, p = point; i < s.slots(); ++i, p /= s.dom_size()) t.push_back(p % s.dom_size());
    return t;
  }

  bool truth(const Formula& f, const std::vector<Element>& v) const {
    switch (f.op()) {
      case Op::kTrue: return true;
      case Op::kFalse: return false;
      case Op::kAtom: {
        std::vector<Element> args;
        for (const Term& a : f.terms()) args.push_back(term(a, v));
        return s.interp().pred(f.symbol(), args, s.dom_size());
      }
      case Op::kEq: return term(f.terms()[0], v) == term(f.terms()[1], v);
      case Op::kNot: return !truth(f.child(0), v);
      case Op::kAnd: return truth(f.child(0), v) && truth(f.child(1), v);
      case Op::kOr: return truth(f.child(0), v) || truth(f.child(1), v);
      case Op::kImplies: return !truth(f.child(0), v) || truth(f.child(1), v);
      case Op::kIff: return truth(f.child(0), v) == truth(f.child(1), v);
      case Op::kForall:
      case Op::kExists: {
        bool all = true, any = false;
        for (Element d = 0; d < s.dom_size(); ++d) {
          std::vector<Element> u = v;
          u.at(stat_index(f.symbol()) - 1) = d;
          all = all && truth(f.child(0), u);
          any = any || truth(f.child(0), u);
        }
        return f.op() == Op::kForall ? all : any;
      }
      case Op::kStatCond: {
        Mask a = 0, b = 0;
        for (int q = 0; q < s.points(); ++q) {
          std::vector<Element> u = v, tq = tuple(q);
          for (const std::string& x : f.bound()) u.at(stat_index(x) - 1) = tq.at(stat_index(x) - 1);
          if (truth(f.child(0), u)) a |= Mask{1} << q;
          if (truth(f.child(1), u)) b |= Mask{1} << q;
        }
        return s.pl().is_bottom(a) || s.pl().less(a & ~b, a & b);
      }
      default: break;
    }
    throw std::logic_error("subjective operator in a statistical formula");
  }
};

Vocabulary fuzz_vocab() {
  Vocabulary v;
  v.add_predicate("P", 1);
  v.add_predicate("Q", 2);
  v.add_function("c", 0);
  return v;
}

FormulaShape fuzz_shape(int slots) {
  FormulaShape s;
  s.lang = Lang::kStat;
  s.predicates = {{"P", 1}, {"Q", 2}};
  s.constants = {"c"};
  for (int i = 1; i <= slots; ++i) s.variables.push_back("x" + std::to_string(i));
  s.max_depth = 4;
  return s;
}

Valuation valuation_of(const StatisticalStructure& s, int point) {
  Valuation v;
  for (int i = 0; i < s.slots(); ++i) v["x" + std::to_string(i + 1)] = s.coord(point, i);
  return v;
}

// k = 2, Dom = {a, b}; the diagonal is more plausible than the off-diagonal.
StatisticalStructure diagonal() {
  Vocabulary v;
  v.add_predicate("P", 1);
  Interpretation i;
  i.preds["P"] = {1, 0};
  return StatisticalStructure(v, {"a", "b"}, 2, i, std::make_shared<KappaRanking>(std::vector<Rank>{0, 1, 1, 0}));
}

}  // namespace

TEST_CASE("points and coordinates") {
  StatisticalStructure s = diagonal();
  CHECK(s.points() == 4);
  CHECK(s.point_of({1, 0}) == 1);
  CHECK(s.coord(2, 1) == 1);
  CHECK(s.with_coord(0, 1, 1) == 2);
  CHECK(s.tuple_of(3) == std::vector<Element>{1, 1});
  CHECK(s.point_name(1) == "(b,a)");
}

TEST_CASE("single-coordinate example") {
  Vocabulary v;
  v.add_predicate("P", 1);
  Interpretation i;
  i.preds["P"] = {1, 0};
  auto pl = std::make_shared<FiniteMeasure>(2, PlausibilityPoset::chain({"0", "1/2", "1"}), std::vector<ValueId>{0, 1, 1, 2});
  StatisticalStructure s(v, {"d1", "d2"}, 1, i, pl);
  CHECK_FALSE(eval_stat(s, {{"x1", 0}}, stat("true =[x1]=> P(x1)")));
  CHECK(eval_stat(s, {{"x1", 0}}, stat("P(x1) =[x1]=> P(x1)")));
  CHECK(eval_stat(s, {}, stat("forall x1 (P(x1) | ~P(x1)) -> (true =[x1]=> P(x1) | ~P(x1))")));
}

TEST_CASE("cylinder and slice readings differ") {
  StatisticalStructure s = diagonal();
  Valuation v{{"x1", 1}, {"x2", 0}};
  const Formula f1 = stat("true =[x1]=> P(x1)");
  const Formula f2 = stat("true =[x2]=> P(x2)");
  CHECK(eval_stat(s, v, f1, StatSemantics::kSlice));
  CHECK_FALSE(eval_stat(s, v, f2, StatSemantics::kSlice));
  CHECK(eval_stat(s, v, f1) == eval_stat(s, v, f2));
  CHECK_FALSE(check_ren(s).has_value());
}

TEST_CASE("trace lines") {
  StatisticalStructure s = diagonal();
  std::ostringstream trace;
  StatisticalEvaluator ev(s, StatSemantics::kCylinder, &trace);
  ev.holds(stat("true =[x1]=> P(x1)"), {{"x1", 0}, {"x2", 0}});
  CHECK(trace.str().find("-> false") != std::string::npos);
}

TEST_CASE("statistical errors") {
  StatisticalStructure s = diagonal();
  CHECK_THROWS_AS(eval_stat(s, {}, stat("P(x3)")), EvalError);
  CHECK_THROWS_AS(eval_stat(s, {}, stat("P(x1)")), EvalError);
  CHECK_THROWS_AS(eval_stat(s, {{"x1", 0}, {"x2", 0}}, stat("R(x1)")), EvalError);
  Vocabulary v;
  v.add_predicate("P", 1);
  Interpretation i;
  i.preds["P"] = {1, 0};
  CHECK_THROWS_AS(StatisticalStructure(v, {"a", "b"}, 2, i, std::make_shared<KappaRanking>(std::vector<Rank>{0, 1})),
                  ValidationError);
  CHECK_THROWS_AS(StatisticalStructure(v, {"a", "b"}, 7, i, std::make_shared<KappaRanking>(std::vector<Rank>{0})),
                  CapacityError);
}

TEST_CASE("check_ren examples") {
  Vocabulary v;
  Interpretation i;
  // product-style: κ(a, b) = r(a) + r(b)
  std::vector<Rank> r{0, 1, 3}, prod;
  for (int p = 0; p < 27; ++p) prod.push_back(r[p % 3] + r[p / 3 % 3] + r[p / 9]);
  StatisticalStructure product(v, {"a", "b", "c"}, 3, i, std::make_shared<KappaRanking>(prod));
  CHECK_FALSE(check_ren(product).has_value());

  StatisticalStructure skew(v, {"a", "b"}, 2, i, std::make_shared<KappaRanking>(std::vector<Rank>{0, 1, 2, 0}));
  auto violation = check_ren(skew);
  REQUIRE(violation.has_value());
  CHECK(violation->perm == std::vector<int>{1, 0});
  CHECK(std::string(violation->message).size() > 0);

  StatisticalStructure one(v, {"a", "b"}, 1, i, std::make_shared<KappaRanking>(std::vector<Rank>{0, 1}));
  CHECK_FALSE(check_ren(one).has_value());

  // sampled branch: 4^3 points
  std::vector<Rank> big;
  for (int p = 0; p < 64; ++p) big.push_back(p % 4 + p / 4 % 4 + p / 16);
  StatisticalStructure sampled(v, {"a", "b", "c", "d"}, 3, i, std::make_shared<KappaRanking>(big));
  CHECK_FALSE(check_ren(sampled).has_value());
  big[1] = 7;  // (b,a,a) against (a,b,a)
  CHECK(check_ren(StatisticalStructure(v, {"a", "b", "c", "d"}, 3, i, std::make_shared<KappaRanking>(big))).has_value());
}

TEST_CASE("permute_points") {
  StatisticalStructure s = diagonal();
  CHECK(permute_points(s, 0b0010, {1, 0}) == 0b0100);
  CHECK(permute_points(s, 0b1001, {1, 0}) == 0b1001);
}

TEST_CASE("product property") {
  Vocabulary v;
  Interpretation i;
  for (int dom = 1; dom <= 3; ++dom) {
    std::vector<Rank> r{0, 2, 1};
    std::vector<Rank> prod;
    for (int p = 0; p < dom * dom; ++p) prod.push_back(r[p % dom] + r[p / dom]);
    std::vector<std::string> names{"a", "b", "c"};
    names.resize(dom);
    StatisticalStructure s(v, names, 2, i, std::make_shared<KappaRanking>(prod));
    auto subsets = [&](int arity) {
      std::vector<TupleSet> out;
      for (int m = 0; m < (1 << dom); ++m) {
        TupleSet t{arity, {}};
        for (int d = 0; d < dom; ++d)
          if (m >> d & 1) t.tuples.push_back({d});
        out.push_back(t);
      }
      return out;
    };
    for (const TupleSet& a : subsets(1))
      for (const TupleSet& a2 : subsets(1))
        for (const TupleSet& b : subsets(1)) CHECK(check_product_property(s, a, a2, b));
    TupleSet whole{1, {}};
    for (int d = 0; d < dom; ++d) whole.tuples.push_back({d});
    CHECK(check_product_property(s, subsets(1).back(), subsets(1).front(), whole));
  }
  StatisticalStructure s(v, {"a", "b"}, 2, i, std::make_shared<KappaRanking>(std::vector<Rank>{0, 1, 1, 2}));
  CHECK_THROWS_AS(check_product_property(s, TupleSet{1, {{0}}}, TupleSet{2, {{0, 0}}}, TupleSet{1, {{0}}}),
                  ValidationError);
  CHECK_THROWS_AS(check_product_property(s, TupleSet{1, {{0}}}, TupleSet{1, {{0}}}, TupleSet{2, {{0, 0}}}),
                  ValidationError);
  CHECK_THROWS_AS(check_product_property(s, TupleSet{1, {{5}}}, TupleSet{1, {{0}}}, TupleSet{1, {{0}}}),
                  ValidationError);
}

TEST_CASE("a symmetric non-product measure breaks the product property") {
  Rng rng(51);
  Vocabulary v;
  Interpretation i;
  bool found = false;
  for (int t = 0; t < 400 && !found; ++t) {
    StatisticalStructure s(v, {"a", "b"}, 2, i, random_symmetric_measure(rng, MeasureClass::kQpl, 2, 2));
    REQUIRE_FALSE(check_ren(s).has_value());
    std::vector<TupleSet> sets;
    for (int m = 0; m < 4; ++m) {
      TupleSet ts{1, {}};
      for (int d = 0; d < 2; ++d)
        if (m >> d & 1) ts.tuples.push_back({d});
      sets.push_back(ts);
    }
    for (const auto& a : sets)
      for (const auto& a2 : sets)
        for (const auto& b : sets)
          if (!check_product_property(s, a, a2, b)) found = true;
  }
  CHECK(found);
}

TEST_CASE("evaluator agrees with the cylinder oracle") {
  Rng rng(52);
  Vocabulary vocab = fuzz_vocab();
  for (int t = 0; t < 120; ++t) {
    const int dom = 1 + t % 3, slots = 1 + t % 2 + (dom <= 2 && t % 5 == 0);
    StatisticalStructure s = random_statistical(rng, t % 2 ? MeasureClass::kQpl : MeasureClass::kKappa, vocab, dom, slots);
    CHECK_FALSE(check_ren(s).has_value());
    Oracle oracle{s};
    StatisticalEvaluator ev(s);
    FormulaShape shape = fuzz_shape(slots);
    for (int n = 0; n < 20; ++n) {
      Formula f = random_formula(rng, shape);
      CAPTURE(print(f));
      Mask expected = 0;
      for (int p = 0; p < s.points(); ++p)
        if (oracle.truth(f, oracle.tuple(p))) expected |= Mask{1} << p;
      CHECK(ev.extension(f) == expected);
      for (int p = 0; p < s.points(); ++p) CHECK(eval_stat(s, valuation_of(s, p), f) == contains(expected, p));
    }
  }
}

TEST_CASE("sentences and renamings under REN") {
  Rng rng(53);
  Vocabulary vocab = fuzz_vocab();
  for (int t = 0; t < 100; ++t) {
    const int dom = 2 + t % 2, slots = 2 + (t % 3 == 0 && dom == 2);
    StatisticalStructure s = random_statistical(rng, t % 2 ? MeasureClass::kQpl : MeasureClass::kKappa, vocab, dom, slots);
    StatisticalEvaluator ev(s);
    FormulaShape shape = fuzz_shape(1);  // bodies mention x1 only
    shape.max_depth = 3;
    for (int n = 0; n < 10; ++n) {
      Formula phi = random_formula(rng, shape), psi = random_formula(rng, shape);
      Formula sentence = universal_closure(stat_cond({"x1"}, phi, psi));
      Mask e = ev.extension(sentence);
      CHECK((e == 0 || e == s.all_points()));
      // renaming x1 to a fresh x2 changes nothing
      Formula renamed = stat_cond({"x2"}, fo_substitute(phi, "x1", Term::var("x2")), fo_substitute(psi, "x1", Term::var("x2")));
      CHECK(ev.extension(stat_cond({"x1"}, phi, psi)) == ev.extension(renamed));
      // U: ∀X ψ ⇒ (φ ⟶_X ψ)
      CHECK(ev.valid(implies(forall("x1", psi), stat_cond({"x1"}, phi, psi))));
      CHECK(ev.valid(stat_cond({"x1"}, phi, phi)));
    }
  }
}
