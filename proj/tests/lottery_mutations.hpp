#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plauslab/axioms.hpp"

namespace plauslab {

// Ten corruptions of the lottery derivation; each must be rejected.
inline std::vector<std::pair<std::string, Derivation>> lottery_mutations() {
  const Derivation base = lottery_derivation(true);
  auto f = [](const char* s) { return parse(s, Lang::kSubj); };
  std::vector<std::pair<std::string, Derivation>> out;
  auto mutate = [&](const std::string& name, auto edit) {
    Derivation d = base;
    edit(d);
    out.emplace_back(name, std::move(d));
  };
  mutate("mp cites the wrong lines", [](Derivation& d) { d.lines[3].just.refs = {1, 2}; });
  mutate("mp references swapped", [](Derivation& d) { d.lines[3].just.refs = {3, 1}; });
  mutate("predicate renamed in an axiom line", [&](Derivation& d) {
    d.lines[2].formula = f("forall x (true => ~Loser(x)) -> (true => forall x ~Loser(x))");
  });
  mutate("wrong schema cited", [](Derivation& d) { d.lines[4].just.schema = "C3"; });
  mutate("forward reference", [](Derivation& d) { d.lines[3].just.refs = {1, 9}; });
  mutate("line dropped", [](Derivation& d) { d.lines.erase(d.lines.begin() + 5); });
  mutate("undeclared premise", [](Derivation& d) { d.premises.pop_back(); });
  mutate("non-tautology cited as C0", [&](Derivation& d) {
    Formula g = f("(true => exists x Winner(x)) -> (true => forall x ~Winner(x))");
    d.lines[5].formula = g;
    d.lines[5].just.bindings->formulas["phi"] = g;
  });
  mutate("r2 applied to the wrong line", [](Derivation& d) { d.lines[10].just.refs = {9}; });
  mutate("conclusion altered", [&](Derivation& d) { d.lines[11].formula = f("true => Winner(c)"); });
  return out;
}

}  // namespace plauslab
