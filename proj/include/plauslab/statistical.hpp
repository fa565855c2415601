#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "plauslab/plausibility.hpp"
#include "plauslab/subjective.hpp"
#include "plauslab/syntax.hpp"

namespace plauslab {

// One rigid interpretation and a plausibility measure on Dom^k, the valuations
// of x1..xk. Point p encodes (v(x1), ..., v(xk)) with x1 least significant.
class StatisticalStructure {
 public:
  StatisticalStructure(Vocabulary vocab, std::vector<std::string> dom, int slots, Interpretation interp,
                       std::shared_ptr<const SetPlausibility> pl);

  const Vocabulary& vocab() const { return vocab_; }
  int dom_size() const { return static_cast<int>(dom_.size()); }
  const std::vector<std::string>& dom() const { return dom_; }
  int slots() const { return slots_; }
  int points() const { return points_; }
  const Interpretation& interp() const { return interp_; }
  const SetPlausibility& pl() const { return *pl_; }
  std::shared_ptr<const SetPlausibility> pl_ptr() const { return pl_; }
  Mask all_points() const { return full_mask(points_); }

  Element coord(int point, int slot) const;  // slot is 0-based
  int with_coord(int point, int slot, Element d) const;
  int point_of(const std::vector<Element>& tuple) const;
  std::vector<Element> tuple_of(int point) const;
  std::string point_name(int point) const;
  std::string set_name(Mask points) const;

  std::string describe() const;

 private:
  Vocabulary vocab_;
  std::vector<std::string> dom_;
  int slots_;
  int points_;
  Interpretation interp_;
  std::shared_ptr<const SetPlausibility> pl_;
};

// How a statistical conditional picks the sets it compares.
//   kCylinder: the X-coordinates of the satisfying valuations, with every other
//              coordinate left free. Sentence truth does not depend on the
//              valuation and the renaming axiom is sound under REN.
//   kSlice:    the satisfying valuations that agree with v outside X, read
//              literally. Kept for comparison; see the tests.
enum class StatSemantics { kCylinder, kSlice };

class StatisticalEvaluator {
 public:
  explicit StatisticalEvaluator(const StatisticalStructure& s, StatSemantics sem = StatSemantics::kCylinder,
                                std::ostream* trace = nullptr);

  // The set of points (valuations) satisfying f.
  Mask extension(const Formula& f);
  bool holds(const Formula& f, const Valuation& v);
  bool valid(const Formula& f) { return extension(f) == s_.all_points(); }

 private:
  Mask ext(const Formula& f);
  Element term_value(const Term& t, int point) const;
  void check(const Formula& f) const;

  const StatisticalStructure& s_;
  StatSemantics sem_;
  std::ostream* trace_;
};

bool eval_stat(const StatisticalStructure& s, const Valuation& v, const Formula& f,
               StatSemantics sem = StatSemantics::kCylinder);

// The image of a point set under a permutation of coordinates: the point with
// coordinates (a1..ak) goes to the point whose coordinate perm[i] is ai.
Mask permute_points(const StatisticalStructure& s, Mask set, const std::vector<int>& perm);

struct RenViolation {
  std::vector<int> perm;
  Mask set = 0;
  std::string message;
};

// Every coordinate permutation against every subset when |Dom^k| <= 16;
// otherwise all singletons and pairs plus 4096 seeded random subsets.
std::optional<RenViolation> check_ren(const StatisticalStructure& s, std::uint64_t seed = 1);

struct TupleSet {
  int arity = 0;
  std::vector<std::vector<Element>> tuples;
};

// If Pl(cyl A) <= Pl(cyl A') then Pl(cyl A×B) <= Pl(cyl A'×B), with A, A' on
// the first n coordinates and B on the next m.
bool check_product_property(const StatisticalStructure& s, const TupleSet& a, const TupleSet& a2, const TupleSet& b);

}  // namespace plauslab
