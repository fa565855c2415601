#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "plauslab/plausibility.hpp"
#include "plauslab/rational.hpp"
#include "plauslab/syntax.hpp"

namespace plauslab {

// A representative-index audit disagreed: the scenario is not uniform beyond
// its declared bound for this formula.
struct UniformityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Poss(w_i) = i/(i+1); Poss(A) is the supremum, so 1 for infinite A.
class PossibilityLotteryMeasure final : public CountableMeasure {
 public:
  std::string name() const override { return "possibility-lottery"; }
  Rational poss(const CofiniteSet& s) const;
  bool leq(const CofiniteSet& a, const CofiniteSet& b) const override { return poss(a) <= poss(b); }
  bool is_bottom(const CofiniteSet& s) const override { return s.is_empty(); }
  std::string value(const CofiniteSet& s) const override { return to_string(poss(s)); }
};

// The preferential order ... w3 ≺ w2 ≺ w1 seen through its lub embedding:
// Pl(A) <= Pl(B) iff every world of A has a world of B at least as preferred.
// conditional() is the Lewis-style clause in closed form.
class PreferentialChainMeasure final : public CountableMeasure {
 public:
  std::string name() const override { return "preferential-chain"; }
  bool leq(const CofiniteSet& a, const CofiniteSet& b) const override;
  bool is_bottom(const CofiniteSet& s) const override { return s.is_empty(); }
  std::string value(const CofiniteSet& s) const override;
  bool conditional(const CofiniteSet& a, const CofiniteSet& b) const override;
};

// A countably infinite model given by closed-form interpretations.
// Subjective scenarios index worlds and domain elements by min_index, min_index+1, ...
// and the measure ranges over worlds. Statistical scenarios have one rigid
// interpretation and the measure ranges over domain elements (one coordinate).
struct Scenario {
  std::string name;
  std::string summary;
  Lang lang = Lang::kSubj;
  Vocabulary vocab;
  long min_index = 1;
  // Beyond max(bound, indices in play) every index behaves alike.
  long bound = 2;
  std::function<bool(const std::string& pred, const std::vector<long>& args, long world)> atom;
  std::function<long(const std::string& func, const std::vector<long>& args, long world)> func;
  // Elements tied to d by the interpretation (e.g. a spouse); closed under repetition.
  std::function<std::vector<long>(long)> neighbours;
  std::shared_ptr<const CountableMeasure> measure;
};

using IndexValuation = std::vector<std::pair<std::string, long>>;

class ScenarioEvaluator {
 public:
  explicit ScenarioEvaluator(const Scenario& s, std::ostream* trace = nullptr);

  // Truth of a sentence (subjective: at every world; it must not vary).
  bool holds(const Formula& f);
  bool holds_at(const Formula& f, long world, const IndexValuation& v);
  // Worlds satisfying f under v.
  CofiniteSet extension(const Formula& f, const IndexValuation& v);

 private:
  bool eval(const Formula& f, long world, IndexValuation& env);
  long term_value(const Term& t, long world, const IndexValuation& env) const;
  long horizon(const IndexValuation& env, long world) const;
  CofiniteSet collect(const std::function<bool(long)>& member, long top, long fresh, const std::string& what);
  void check(const Formula& f) const;

  const Scenario& s_;
  std::ostream* trace_;
  std::set<std::string> traced_;
};

bool eval_scenario(const Scenario& s, const Formula& f);

std::vector<std::string> builtin_scenarios();
// lottery, crooked, possibility-lottery, preferential-chain, married,
// tweety-nonrigid, null-lottery. Unknown names throw std::invalid_argument.
Scenario builtin(const std::string& name);

// The formulas the scenarios are about.
Formula lottery_formula();        // Lottery: (1) ∧ (2)
Formula lottery_each_loses();     // (1) ∀x(true ⟶ ¬Winner(x))
Formula lottery_someone_wins();   // (2) true ⟶ ∃x Winner(x)
Formula lottery_nobody_wins();    // (3) true ⟶ ∀x ¬Winner(x)
Formula crooked_formula();
Formula tweety_kb(bool rigid, bool consistent);

struct InstanceReport {
  std::string condition;  // "A2*" or "A2†"
  std::vector<std::pair<std::string, std::string>> values;  // set description, plausibility
  bool premise = false;
  bool conclusion = false;
  bool holds() const { return !premise || conclusion; }
  std::string text() const;
};

// lottery: the failing A2* instance A0=∅, Ai={wi}.
// crooked: the failing A2† instance A0={w1}, Ai={wi} for i > 1.
// Other scenarios throw std::invalid_argument.
InstanceReport a2star_witness(const Scenario& s);

}  // namespace plauslab
