#include <random>
#include <sstream>

#include "doctest.h"
#include "plauslab/error.hpp"
#include "plauslab/scenarios.hpp"

using namespace plauslab;

namespace {

bool holds(const std::string& scenario, const Formula& f) { return eval_scenario(builtin(scenario), f); }
Formula subj(const std::string& text) { return parse(text, Lang::kSubj); }
Formula stat(const std::string& text) { return parse(text, Lang::kStat); }

CofiniteSet random_set(std::mt19937_64& rng) {
  std::vector<long> support;
  for (long i = 1; i <= 6; ++i)
    if (rng() % 3 == 0) support.push_back(i);
  return rng() % 2 ? CofiniteSet::cofinite(support) : CofiniteSet::finite(support);
}

}  // namespace

TEST_CASE("lottery satisfies Lottery but not its paradoxical consequences") {
  CHECK(holds("lottery", lottery_each_loses()));
  CHECK(holds("lottery", lottery_someone_wins()));
  CHECK(holds("lottery", lottery_formula()));
  CHECK_FALSE(holds("lottery", lottery_nobody_wins()));
  CHECK_FALSE(holds("lottery", subj("true => false")));
}

TEST_CASE("lottery extensions land in the cofinite algebra") {
  const Scenario s = builtin("lottery");
  ScenarioEvaluator e(s);
  CHECK(e.extension(subj("~Winner(x)"), {{"x", 3}}) == CofiniteSet::cofinite({3}));
  CHECK(e.extension(subj("Winner(x)"), {{"x", 3}}) == CofiniteSet::finite({3}));
  CHECK(e.extension(subj("exists x Winner(x)"), {}) == CofiniteSet::all());
  CHECK(e.extension(subj("forall x ~Winner(x)"), {}) == CofiniteSet::empty());
}

TEST_CASE("trace reports the lottery plausibilities") {
  const Scenario s = builtin("lottery");
  std::ostringstream trace;
  ScenarioEvaluator e(s, &trace);
  CHECK(e.holds(lottery_each_loses()));
  CHECK(trace.str().find("cond true => ~Winner(x) [x=d1]: A=W Pl(A&B)=1 Pl(A-B)=1/2 -> true") != std::string::npos);
}

TEST_CASE("crooked lottery satisfies Lottery and Crooked") {
  CHECK(holds("crooked", lottery_formula()));
  CHECK(holds("crooked", crooked_formula()));
  CHECK_FALSE(holds("crooked", subj("true => false")));
  CHECK_FALSE(holds("lottery", crooked_formula()));
  const auto m = builtin("crooked").measure;
  CHECK(m->value(CofiniteSet::empty()) == "0");
  CHECK(m->value(CofiniteSet::finite({2})) == "1/2");
  CHECK(m->value(CofiniteSet::finite({1, 4})) == "3/4");
  CHECK(m->value(CofiniteSet::cofinite({1})) == "1");
}

TEST_CASE("possibility and preferential lotteries satisfy Lottery but not Crooked") {
  for (const char* name : {"possibility-lottery", "preferential-chain"}) {
    CAPTURE(name);
    CHECK(holds(name, lottery_formula()));
    CHECK_FALSE(holds(name, crooked_formula()));
    CHECK_FALSE(holds(name, subj("true => false")));
    // Lottery ∧ Crooked ⇒ (true ⟶ false) holds because Crooked fails.
    CHECK(holds(name, implies(conj(lottery_formula(), crooked_formula()), subj("true => false"))));
  }
}

TEST_CASE("possibility lottery values") {
  PossibilityLotteryMeasure m;
  CHECK(m.poss(CofiniteSet::finite({1})) == Rational(1, 2));
  CHECK(m.poss(CofiniteSet::finite({2, 5})) == Rational(5, 6));
  CHECK(m.poss(CofiniteSet::cofinite({1, 2})) == Rational(1));
  // A0={w5} against {w1..w4}: premise 5/6 > i/(i+1), and 5/6 is not below 4/5.
  CofiniteFamily fam;
  for (long i : {5, 1, 2, 3, 4}) fam.parts.push_back(CofiniteSet::finite({i}));
  CHECK(check_A2dagger_instance(m, fam));
  CHECK(m.less(CofiniteSet::finite({1, 2, 3, 4}), CofiniteSet::finite({5})));
}

TEST_CASE("preferential chain closed form agrees with the plausibility rule") {
  PreferentialChainMeasure m;
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    CofiniteSet a = random_set(rng), b = random_set(rng);
    bool generic = m.is_bottom(a) || m.less(a.minus(b), a.intersect(b));
    CHECK(m.conditional(a, b) == generic);
  }
}

TEST_CASE("A2* and A2† witnesses") {
  InstanceReport lot = a2star_witness(builtin("lottery"));
  CHECK(lot.condition == "A2*");
  CHECK(lot.premise);
  CHECK_FALSE(lot.conclusion);
  CHECK_FALSE(lot.holds());
  REQUIRE(lot.values.size() == 4);
  CHECK(lot.values[0].second == "1");
  CHECK(lot.values[1].second == "1/2");
  CHECK(lot.values[2].second == "0");

  CofiniteFamily fam;
  fam.parts.push_back(CofiniteSet::empty());
  fam.singleton_tail = true;
  CHECK_FALSE(check_A2star_instance(CofiniteMeasure(CofiniteMeasure::Kind::kLottery), fam));

  InstanceReport crooked = a2star_witness(builtin("crooked"));
  CHECK(crooked.condition == "A2†");
  CHECK(crooked.premise);
  CHECK_FALSE(crooked.holds());
  CHECK(crooked.values[0].second == "3/4");
  CHECK(crooked.values[1].second == "1/2");
  CHECK(crooked.values[2].second == "1");

  CHECK_THROWS_AS(a2star_witness(builtin("married")), std::invalid_argument);
}

TEST_CASE("forall3 fails in the lottery") {
  Formula inst = implies(lottery_each_loses(), lottery_nobody_wins());
  CHECK_FALSE(holds("lottery", inst));
  CHECK_FALSE(holds("crooked", inst));
}

TEST_CASE("null lottery refutes the N form of the infinitary A3 axiom") {
  CHECK(holds("null-lottery", subj("forall x N ~Winner(x)")));
  CHECK_FALSE(holds("null-lottery", subj("N (forall x ~Winner(x))")));
  CHECK_FALSE(check_qualitative(CofiniteMeasure(CofiniteMeasure::Kind::kNull)).has_value());
}

TEST_CASE("married: most people are not married to y, yet not most people are unmarried") {
  CHECK(holds("married", stat("forall x2 (true =[x1]=> ~Married(x1,x2))")));
  CHECK_FALSE(holds("married", stat("true =[x1]=> forall x2 ~Married(x1,x2)")));
  CHECK(holds("married", stat("forall x1 exists x2 Married(x1,x2)")));
  CHECK(holds("married", stat("forall x1 forall x2 (Married(x1,x2) -> Married(x2,x1))")));
}

TEST_CASE("nonrigid Tweety is consistent, rigid Tweety is not") {
  CHECK(holds("tweety-nonrigid", tweety_kb(false, true)));
  CHECK_FALSE(holds("tweety-nonrigid", tweety_kb(true, false)));
  CHECK_FALSE(holds("tweety-nonrigid", subj("exists x N (x = Tweety)")));
}

TEST_CASE("scenario errors") {
  CHECK_THROWS_AS(builtin("nope"), std::invalid_argument);
  CHECK_THROWS_AS(holds("lottery", subj("P(c)")), EvalError);
  CHECK_THROWS_AS(holds("lottery", stat("true =[x1]=> true")), EvalError);
  CHECK_THROWS_AS(holds("married", stat("true =[x1,x2]=> Married(x1,x2)")), EvalError);
  CHECK_THROWS_AS(holds("lottery", subj("Winner(x)")), EvalError);

  // A scenario whose interpretation is not uniform past its bound.
  Scenario bad = builtin("lottery");
  bad.atom = [](const std::string&, const std::vector<long>& args, long w) { return args[0] == w || w % 2 == 0; };
  CHECK_THROWS_AS(eval_scenario(bad, subj("exists x Winner(x) => Winner(x)")), std::exception);
  CHECK_THROWS_AS(eval_scenario(bad, subj("true => forall x Winner(x)")), UniformityError);
}
