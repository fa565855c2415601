#pragma once

#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "plauslab/plausibility.hpp"
#include "plauslab/statistical.hpp"
#include "plauslab/subjective.hpp"
#include "plauslab/syntax.hpp"

namespace plauslab {

using Rng = std::mt19937_64;

// Semantic classes of subjective structures.
//   qpl: qualitative plausibility; eps: ε-polynomial PPDs; kappa: κ-rankings;
//   poss: possibility; pref, pref-wf: preferential (finite, so well-founded);
//   prob: probability measures, which break A2.
enum class MeasureClass { kQpl, kEps, kKappa, kPoss, kPref, kPrefWf, kProb };

std::string to_string(MeasureClass c);
// Throws std::invalid_argument.
MeasureClass parse_measure_class(const std::string& name);

// Pl(A) = total weight of A; A1 holds, A2 generally does not.
class ProbabilityPlausibility final : public SetPlausibility {
 public:
  explicit ProbabilityPlausibility(std::vector<int> weights);
  int size() const override { return static_cast<int>(weights_.size()); }
  bool leq(Mask a, Mask b) const override { return weight(a) <= weight(b); }
  bool is_bottom(Mask a) const override { return weight(a) == 0; }
  std::string label(Mask a) const override;
  int weight(Mask a) const;

 private:
  std::vector<int> weights_;
  int total_ = 0;
};

std::shared_ptr<const SetPlausibility> random_measure(Rng& rng, MeasureClass c, int worlds);

Interpretation random_interpretation(Rng& rng, const Vocabulary& vocab, int dom);

SubjectiveStructure random_subjective(Rng& rng, MeasureClass c, const Vocabulary& vocab, int dom, int worlds);

// REN-symmetric measures on Dom^k. kQpl mixes symmetric members of the
// qualitative catalogue (when |Dom^k| <= 4), symmetric rankings and symmetric
// possibility measures; kKappa gives symmetric rankings only.
std::shared_ptr<const SetPlausibility> random_symmetric_measure(Rng& rng, MeasureClass c, int dom, int slots);

StatisticalStructure random_statistical(Rng& rng, MeasureClass c, const Vocabulary& vocab, int dom, int slots);

struct FormulaShape {
  Lang lang = Lang::kSubj;
  std::vector<std::pair<std::string, int>> predicates;
  std::vector<std::string> constants;
  std::vector<std::pair<std::string, int>> functions;  // arity >= 1
  std::vector<std::string> variables;
  int max_depth = 4;
  bool equality = true;
  bool nec = true;
};

// Connective weights: Boolean 40, conditional 25, quantifier 20, atom 15.
Formula random_formula(Rng& rng, const FormulaShape& shape);
Formula random_formula(Rng& rng, const FormulaShape& shape, int depth);
Term random_term(Rng& rng, const FormulaShape& shape, int depth);

// The same measure with worlds renamed: the result gives image(A) the value
// that pl gives A, where image moves world i to perm[i].
FiniteMeasure permute_worlds(const FiniteMeasure& pl, const std::vector<int>& perm);

}  // namespace plauslab
