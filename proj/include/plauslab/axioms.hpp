#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plauslab/generators.hpp"
#include "plauslab/syntax.hpp"

namespace plauslab {

// Metavariable assignment for a schema. Formula slots are named phi, phi1,
// phi2, phi', psi, psi1, psi2 and xi; variable slots x and y; the term slot t;
// X is the variable set of a statistical conditional. Instances may be
// generalized: `generalized` lists the outer universal prefix, outermost first.
struct Bindings {
  std::map<std::string, Formula> formulas;
  std::map<std::string, std::string> vars;
  std::map<std::string, Term> terms;
  std::vector<std::string> varset;
  std::vector<std::string> generalized;
};

struct Schema {
  std::string name;
  Lang lang;
  std::string text;
  std::vector<std::string> formula_slots;
  std::vector<std::string> var_slots;
  bool term_slot = false;
  bool varset_slot = false;
};

// C0..C7, F1..F7, forall3, A3*ax-N, A3*ax-OR, A3*ax-OR-lit, C0'..C4', R1', R2',
// U, Ren, C6', C7', forall3', Prod.
const std::vector<Schema>& schemas();
// Accepts ∀ for "forall" and ′ for "'". Throws std::invalid_argument.
const Schema& find_schema(const std::string& name);
// A schema name or one of the groups C-subj (C0-C5, F1-F7) and C-stat
// (C0'-C4', R1', R2', U, Ren). Throws std::invalid_argument.
std::vector<std::string> expand_schema_set(const std::string& name);

// Throws SideConditionError naming the violated condition, or
// std::invalid_argument for missing or foreign bindings.
Formula instantiate(const std::string& schema, const Bindings& b);
// Bindings whose instance is exactly f, or nullopt.
std::optional<Bindings> match_schema(const std::string& schema, const Formula& f);

// Propositional tautology over maximal non-Boolean subformulas, with ∃x φ
// read as ¬∀x¬φ. More than 20 atoms throws CapacityError.
bool is_tautology(const Formula& f);

// ---------------------------------------------------------------------------
// Derivations

struct Justification {
  enum class Kind { kPremise, kAxiom, kMp, kR1, kR2 };
  Kind kind = Kind::kPremise;
  std::vector<int> refs;  // 1-based line numbers; mp is [antecedent, implication]
  std::string schema;
  std::optional<Bindings> bindings;
};

struct DerivationLine {
  Formula formula;
  Justification just;
};

struct Derivation {
  Lang lang = Lang::kSubj;
  std::vector<std::string> schemas;  // enabled schemas or groups
  std::vector<Formula> premises;
  std::vector<DerivationLine> lines;
};

struct DerivationReport {
  bool ok = true;
  int bad_line = 0;  // 1-based
  std::string reason;
};

DerivationReport check_derivation(const Derivation& d);

// JSON: {lang, schemas, premises: [text], lines: [{formula, just: {kind, refs |
// schema, bindings}}]}. Throws ParseError.
Derivation parse_derivation(const std::string& json_text);
std::string derivation_to_json(const Derivation& d);

// The lottery argument: from the two lottery premises to true => false,
// using forall3 once.
Derivation lottery_derivation(bool enable_forall3 = true);

// ---------------------------------------------------------------------------
// Validity sweeps and countermodel search

struct SizeBounds {
  int max_dom = 3;
  int max_worlds = 4;  // subjective
  int max_slots = 2;   // statistical
};

struct ValidityReport {
  std::string target;
  std::string measure_class;
  int trials = 0;
  long instances = 0;
  long violations = 0;
  std::string witness;  // first violation, human-readable

  std::string text() const;
};

// Random instance of a schema over the given shape; side conditions hold.
Formula random_instance(Rng& rng, const std::string& schema, const FormulaShape& shape);

// target: a schema, a schema group or a formula in the class's language.
// Subjective classes: qpl, eps, kappa, poss, pref, pref-wf, prob; statistical
// targets use REN-symmetric qpl or kappa measures.
ValidityReport test_validity(const std::string& target, MeasureClass c, int trials, int instances_per_trial,
                             std::uint64_t seed, const SizeBounds& bounds = {});

struct Countermodel {
  std::shared_ptr<const SubjectiveStructure> model;
  std::string structure;  // describe() of the witness
  int world = 0;
  std::map<std::string, std::string> valuation;
  int dom = 0;
  int worlds = 0;
};

struct SearchReport {
  std::optional<Countermodel> countermodel;
  long structures = 0;  // measure and size combinations tried
  double seconds = 0;
  std::string text() const;
};

// Bounded search for a finite subjective structure, world and valuation
// falsifying f: domains 1..max_dom, worlds 1..max_worlds, measures from the
// class (qpl: the qualitative catalogue, posets of at most 6 values; kappa,
// poss and eps: every ranking shape; pref and pref-wf: every strict order).
// Interpretations of f's symbols are found by a SAT encoding per measure; a
// witness is re-checked with the evaluator.
SearchReport find_countermodel(const Formula& f, MeasureClass c, const SizeBounds& bounds = {});

}  // namespace plauslab
