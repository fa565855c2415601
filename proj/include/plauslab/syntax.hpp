#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace plauslab {

enum class Lang { kSubj, kStat };

std::string_view to_string(Lang lang);
Lang parse_lang(std::string_view text);

class Term {
 public:
  static Term var(std::string name);
  static Term func(std::string symbol, std::vector<Term> args = {});

  bool is_var() const;
  const std::string& name() const;
  const std::vector<Term>& args() const;

  bool mentions(std::string_view var) const;
  void collect_vars(std::set<std::string>& out) const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class Op {
  kTrue,
  kFalse,
  kAtom,
  kEq,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kForall,
  kExists,
  kCond,      // subjective phi => psi
  kStatCond,  // phi =[X]=> psi
  kNec,       // N phi, read as ~phi => false
};

class Formula {
 public:
  Formula();  // true

  Op op() const;
  // Predicate name for atoms, bound variable for quantifiers.
  const std::string& symbol() const;
  // Atom arguments, or the two sides of an equation.
  const std::vector<Term>& terms() const;
  const std::vector<Formula>& children() const;
  const Formula& child(std::size_t i) const { return children()[i]; }
  // Variable set of a statistical conditional, sorted.
  const std::vector<std::string>& bound() const;
  // Sorted free variables, cached at construction.
  const std::vector<std::string>& free_vars() const;

  bool has_subj_cond() const;  // any => or N
  bool has_stat_cond() const;
  bool has_modal() const { return has_subj_cond() || has_stat_cond(); }
  bool has_quantifier() const;
  std::size_t depth() const;

  // Identity of the shared node, usable as a memo key.
  const void* id() const { return node_.get(); }
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  friend Formula make_node(Op, std::string, std::vector<Term>, std::vector<Formula>, std::vector<std::string>);
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

Formula truth();
Formula falsity();
Formula atom(std::string pred, std::vector<Term> args = {});
Formula equals(Term a, Term b);
Formula negate(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula forall(std::string var, Formula body);
Formula exists(std::string var, Formula body);
Formula cond(Formula a, Formula b);
Formula stat_cond(std::vector<std::string> vars, Formula a, Formula b);
Formula nec(Formula f);
Formula conj_all(const std::vector<Formula>& fs);
Formula forall_all(const std::vector<std::string>& vars, Formula body);

// Replaces every N phi by (~phi => false).
Formula desugar(const Formula& f);

bool occurs_free(const Formula& f, std::string_view var);
// Free or bound, anywhere in the formula (including varsets).
bool occurs(const Formula& f, std::string_view var);

// Capture-freedom only.
bool fo_substitutable(const Formula& f, std::string_view var, const Term& t);
// Capture-freedom, and t must be a variable whenever f contains a conditional.
bool substitutable(const Formula& f, std::string_view var, const Term& t);
// Throws SubstitutionError unless substitutable(f, var, t).
Formula substitute(const Formula& f, std::string_view var, const Term& t);
// Same, checked with fo_substitutable only.
Formula fo_substitute(const Formula& f, std::string_view var, const Term& t);

Formula universal_closure(const Formula& f);

// Statistical variables are x1, x2, ...; returns the index or 0.
int stat_index(std::string_view name);
// Free-variable naming convention of the subjective language: [u-z][0-9]*.
bool looks_like_subj_var(std::string_view name);

class Vocabulary {
 public:
  void add_predicate(const std::string& name, int arity);
  void add_function(const std::string& name, int arity);
  // Registers every symbol of f; throws ArityError on clashes.
  void absorb(const Formula& f);

  std::optional<int> predicate_arity(const std::string& name) const;
  std::optional<int> function_arity(const std::string& name) const;
  const std::map<std::string, int>& predicates() const { return predicates_; }
  const std::map<std::string, int>& functions() const { return functions_; }
  bool covers(const Vocabulary& other) const;

 private:
  std::map<std::string, int> predicates_;
  std::map<std::string, int> functions_;
};

// Throws ParseError (or ArityError) with a column number. Symbols are checked
// against, and added to, vocab when given.
Formula parse(std::string_view text, Lang lang, Vocabulary* vocab = nullptr);
Term parse_term(std::string_view text, Lang lang);

std::string print(const Formula& f);
std::string print(const Term& t);

}  // namespace plauslab
