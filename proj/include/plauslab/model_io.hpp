#pragma once

#include <memory>
#include <optional>
#include <string>

#include "plauslab/statistical.hpp"
#include "plauslab/subjective.hpp"

namespace plauslab {

// A structure read from a JSON model file:
//
//   {"kind": "subjective" | "statistical",
//    "vocabulary": {"predicates": {"P": 1}, "functions": {"c": 0}},
//    "dom": ["d1", "d2"],
//    "worlds": ["w1", "w2"],                 (subjective)
//    "slots": 2,                             (statistical)
//    "interp": {"w1": {...}, "w2": {...}} or one {"pred": ..., "func": ...},
//    "plausibility": {"style": ..., "data": ...}}
//
// pred maps a name to its true tuples ([] for 0-ary truth, or a bool);
// func maps a name to rows [arg..., value], or to a plain value for constants.
// Measure styles, over worlds (subjective) or valuations "(d1,d2)" (statistical):
//   explicit:     {"values": [...], "leq": [[a, b], ...], "assign": {"w1,w2": v, "": v, ...}}
//                 bottom and top are the first and last values unless named.
//   possibility:  {"w1": "1", "w2": "1/2"}
//   kappa:        {"w1": 0, "w2": "inf"}
//   preferential: [[a, b], ...] meaning a is preferred to b
//   ppd:          {"w1": {"coeff": "1", "exp": 0}}
struct Model {
  Lang lang = Lang::kSubj;
  std::shared_ptr<const SubjectiveStructure> subj;
  std::shared_ptr<const StatisticalStructure> stat;

  const SetPlausibility& pl() const { return subj ? subj->pl() : stat->pl(); }
  const Vocabulary& vocab() const { return subj ? subj->vocab() : stat->vocab(); }
  std::string describe() const { return subj ? subj->describe() : stat->describe(); }
};

// Malformed JSON or fields throw ParseError; a model breaking arities,
// totality, poset laws or A1 throws ValidationError. With require_qualitative
// the measure must also satisfy A2 and A3.
Model load_model(const std::string& json_text, bool require_qualitative = false);
Model load_model_file(const std::string& path, bool require_qualitative = false);

// Writes a subjective structure in the file format above (explicit measure).
std::string model_to_json(const SubjectiveStructure& s);

}  // namespace plauslab
