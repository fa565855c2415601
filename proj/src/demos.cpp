#include "plauslab/demos.hpp"

#include <sstream>
#include <stdexcept>

#include "plauslab/axioms.hpp"
#include "plauslab/scenarios.hpp"

namespace plauslab {

namespace {

const char* verdict(bool b) { return b ? "true" : "false"; }

void line(std::ostream& out, const Scenario& s, const std::string& label, const Formula& f) {
  out << label << ": " << print(f) << ": " << verdict(eval_scenario(s, f)) << "\n";
}

void header(std::ostream& out, const Scenario& s) { out << "scenario " << s.name << ": " << s.summary << "\n"; }

void values(std::ostream& out, const Scenario& s, const std::vector<std::pair<std::string, CofiniteSet>>& sets) {
  for (const auto& [label, set] : sets) out << "Pl(" << label << ") = " << s.measure->value(set) << "\n";
}

void lottery_lines(std::ostream& out, const Scenario& s) {
  line(out, s, "each ticket loses", lottery_each_loses());
  line(out, s, "some ticket wins", lottery_someone_wins());
  line(out, s, "Lottery", lottery_formula());
  line(out, s, "no ticket wins", lottery_nobody_wins());
  line(out, s, "inconsistent beliefs", parse("true => false", Lang::kSubj));
}

std::string lottery() {
  std::ostringstream out;
  const Scenario s = builtin("lottery");
  header(out, s);
  values(out, s, {{"{}", CofiniteSet::empty()}, {"{w1}", CofiniteSet::finite({1})},
                  {"{w1,w2}", CofiniteSet::finite({1, 2})}, {"W-{w1}", CofiniteSet::cofinite({1})},
                  {"W", CofiniteSet::all()}});
  lottery_lines(out, s);
  line(out, s, "forall3 instance", implies(lottery_each_loses(), lottery_nobody_wins()));
  out << a2star_witness(s).text();
  return out.str();
}

std::string crooked() {
  std::ostringstream out;
  const Scenario s = builtin("crooked");
  header(out, s);
  values(out, s, {{"{}", CofiniteSet::empty()}, {"{w2}", CofiniteSet::finite({2})},
                  {"{w1}", CofiniteSet::finite({1})}, {"{w1,w2}", CofiniteSet::finite({1, 2})},
                  {"W", CofiniteSet::all()}});
  lottery_lines(out, s);
  line(out, s, "Crooked", crooked_formula());
  out << "Lottery ∧ Crooked: " << verdict(eval_scenario(s, conj(lottery_formula(), crooked_formula()))) << "\n";
  out << a2star_witness(s).text();
  for (const char* other : {"lottery", "possibility-lottery", "preferential-chain"})
    out << "Crooked in " << other << ": " << verdict(eval_scenario(builtin(other), crooked_formula())) << "\n";
  return out.str();
}

std::string lottery_variant(const std::string& name) {
  std::ostringstream out;
  const Scenario s = builtin(name);
  header(out, s);
  values(out, s, {{"{}", CofiniteSet::empty()}, {"{w1}", CofiniteSet::finite({1})},
                  {"{w2}", CofiniteSet::finite({2})}, {"{w1,w2}", CofiniteSet::finite({1, 2})},
                  {"W", CofiniteSet::all()}});
  lottery_lines(out, s);
  line(out, s, "Crooked", crooked_formula());
  return out.str();
}

std::string null_lottery() {
  std::ostringstream out;
  const Scenario s = builtin("null-lottery");
  header(out, s);
  values(out, s, {{"{}", CofiniteSet::empty()}, {"{w1}", CofiniteSet::finite({1})}, {"W", CofiniteSet::all()}});
  line(out, s, "each ticket surely loses", parse("forall x N ~Winner(x)", Lang::kSubj));
  line(out, s, "surely no ticket wins", parse("N (forall x ~Winner(x))", Lang::kSubj));
  line(out, s, "instance", parse("(forall x N ~Winner(x)) -> N (forall x ~Winner(x))", Lang::kSubj));
  return out.str();
}

std::string married() {
  std::ostringstream out;
  const Scenario s = builtin("married");
  header(out, s);
  values(out, s, {{"{}", CofiniteSet::empty()}, {"{0,1}", CofiniteSet::finite({0, 1})},
                  {"Dom-{0,1}", CofiniteSet::cofinite({0, 1})}});
  const Formula premise = parse("forall x2 (true =[x1]=> ~Married(x1,x2))", Lang::kStat);
  const Formula conclusion = parse("true =[x1]=> forall x2 ~Married(x1,x2)", Lang::kStat);
  line(out, s, "premise", premise);
  line(out, s, "conclusion", conclusion);
  line(out, s, "forall3' instance", implies(premise, conclusion));
  line(out, s, "everyone is married", parse("forall x1 exists x2 Married(x1,x2)", Lang::kStat));
  return out.str();
}

std::string tweety() {
  std::ostringstream out;
  const Scenario s = builtin("tweety-nonrigid");
  header(out, s);
  line(out, s, "nonrigid KB, consistent", tweety_kb(false, true));
  line(out, s, "Tweety is rigid", parse("exists x N (x = Tweety)", Lang::kSubj));
  return out.str();
}

std::string c6() {
  std::ostringstream out;
  Bindings b;
  b.formulas = {{"phi", parse("A", Lang::kSubj)}, {"psi", parse("B", Lang::kSubj)}, {"xi", parse("C", Lang::kSubj)}};
  const Formula f = instantiate("C6", b);
  out << "C6 instance: " << print(f) << "\n";
  for (MeasureClass c : {MeasureClass::kKappa, MeasureClass::kPoss, MeasureClass::kQpl}) {
    SearchReport r = find_countermodel(f, c, {1, 3, 1});
    out << to_string(c) << ": " << r.text();
  }
  return out.str();
}

}  // namespace

std::vector<std::string> demo_names() {
  return {"lottery", "crooked", "possibility-lottery", "preferential-chain", "null-lottery", "married", "tweety", "c6"};
}

std::string run_demo(const std::string& name) {
  if (name == "lottery") return lottery();
  if (name == "crooked") return crooked();
  if (name == "possibility-lottery" || name == "preferential-chain") return lottery_variant(name);
  if (name == "null-lottery") return null_lottery();
  if (name == "married") return married();
  if (name == "tweety") return tweety();
  if (name == "c6") return c6();
  throw std::invalid_argument("unknown demo '" + name + "'");
}

}  // namespace plauslab
