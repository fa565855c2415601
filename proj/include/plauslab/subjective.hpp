#pragma once

#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "plauslab/plausibility.hpp"
#include "plauslab/syntax.hpp"

namespace plauslab {

using Element = int;
using Valuation = std::map<std::string, Element>;

// Tuple (a0, a1, ...) over a domain of size d is stored at a0 + a1·d + ...
std::size_t tuple_code(const std::vector<Element>& args, int dom);
std::vector<Element> tuple_decode(std::size_t code, int arity, int dom);
std::size_t table_size(int arity, int dom);

struct Interpretation {
  std::map<std::string, std::vector<char>> preds;
  std::map<std::string, std::vector<Element>> funcs;

  bool pred(const std::string& name, const std::vector<Element>& args, int dom) const;
  Element func(const std::string& name, const std::vector<Element>& args, int dom) const;
  // Arity-correct, total and in range for every symbol of vocab.
  void validate(const Vocabulary& vocab, int dom, const std::string& where) const;
};

class SubjectiveStructure {
 public:
  SubjectiveStructure(Vocabulary vocab, std::vector<std::string> dom, std::vector<std::string> worlds,
                      std::vector<Interpretation> interp, std::shared_ptr<const SetPlausibility> pl);

  const Vocabulary& vocab() const { return vocab_; }
  int dom_size() const { return static_cast<int>(dom_.size()); }
  int world_count() const { return static_cast<int>(worlds_.size()); }
  const std::vector<std::string>& dom() const { return dom_; }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const Interpretation& interp(int w) const { return interp_[w]; }
  const std::vector<Interpretation>& interps() const { return interp_; }
  const SetPlausibility& pl() const { return *pl_; }
  std::shared_ptr<const SetPlausibility> pl_ptr() const { return pl_; }
  Mask all_worlds() const { return full_mask(world_count()); }

  std::string describe() const;

 private:
  Vocabulary vocab_;
  std::vector<std::string> dom_;
  std::vector<std::string> worlds_;
  std::vector<Interpretation> interp_;
  std::shared_ptr<const SetPlausibility> pl_;
};

// Evaluates subjective formulas. Conditional truth values are memoised per
// node and restricted valuation within one top-level call.
class SubjectiveEvaluator {
 public:
  explicit SubjectiveEvaluator(const SubjectiveStructure& s, std::ostream* trace = nullptr);

  Mask extension(const Formula& f, const Valuation& v);
  bool holds(const Formula& f, int world, const Valuation& v);
  // True at every world under every valuation of the free variables.
  bool valid(const Formula& f);

 private:
  using Env = std::vector<std::pair<std::string, Element>>;
  Mask ext(const Formula& f, Env& env);
  Element term_value(const Term& t, int world, const Env& env) const;
  Element lookup(const std::string& var, const Env& env) const;
  bool conditional(const Formula& f, Mask a, Mask b, const Env& env);
  void check_vocabulary(const Formula& f) const;

  const SubjectiveStructure& s_;
  std::ostream* trace_;
  std::map<std::pair<const void*, std::vector<Element>>, bool> memo_;
};

bool eval_subj(const SubjectiveStructure& s, int world, const Valuation& v, const Formula& f);
Mask extension(const SubjectiveStructure& s, const Valuation& v, const Formula& f);

enum class RigidityMode { kStrict, kFormula };

// kStrict: c denotes the same element in every world.
// kFormula: the structure satisfies ∃x N(x = c).
bool check_rigid(const SubjectiveStructure& s, const std::string& constant, RigidityMode mode);

}  // namespace plauslab
