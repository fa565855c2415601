#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plauslab/order.hpp"
#include "plauslab/sets.hpp"

namespace plauslab {

// A plausibility measure over all subsets of a finite carrier, seen through
// comparisons only. Every backend implements this.
class SetPlausibility {
 public:
  virtual ~SetPlausibility() = default;
  virtual int size() const = 0;
  virtual bool leq(Mask a, Mask b) const = 0;
  virtual bool is_bottom(Mask a) const = 0;
  // Human-readable value of Pl(a), for traces.
  virtual std::string label(Mask a) const = 0;

  bool less(Mask a, Mask b) const { return leq(a, b) && !leq(b, a); }
  bool equivalent(Mask a, Mask b) const { return leq(a, b) && leq(b, a); }
};

// The conditional rule shared by both languages: Pl(A) is bottom, or
// Pl(A ∩ B) > Pl(A − B).
bool conditional_holds(const SetPlausibility& pl, Mask a, Mask b);

// Extensional measure: a value id for each of the 2^n subsets.
class FiniteMeasure final : public SetPlausibility {
 public:
  // Validates assign(∅) = ⊥, assign(W) = ⊤ and monotonicity (A1).
  FiniteMeasure(int points, PlausibilityPoset values, std::vector<ValueId> assign);

  int size() const override { return n_; }
  bool leq(Mask a, Mask b) const override { return values_.leq(assign_[a], assign_[b]); }
  bool is_bottom(Mask a) const override { return assign_[a] == values_.bottom(); }
  std::string label(Mask a) const override { return values_.name(assign_[a]); }

  ValueId value(Mask a) const { return assign_[a]; }
  const PlausibilityPoset& values() const { return values_; }
  const std::vector<ValueId>& assignment() const { return assign_; }

 private:
  int n_;
  PlausibilityPoset values_;
  std::vector<ValueId> assign_;
};

// The extensional measure induced by any set plausibility: subsets are
// grouped into mutual-leq classes, which become the poset elements.
FiniteMeasure materialize(const SetPlausibility& pl);

struct QualitativeViolation {
  enum class Condition { kA1, kA2, kA3 };
  Condition condition;
  Mask a = 0;
  Mask b = 0;
  Mask c = 0;
  std::string message;
};

// A1 for all pairs, A2 for all pairwise disjoint triples, A3 for all disjoint
// pairs. Capacity: 12 points.
std::optional<QualitativeViolation> check_qualitative(const SetPlausibility& pl);

// Instance checkers for the infinitary conditions restricted to one finite
// family. parts[0] is A0 and A is the union of all parts; A0 alone holds
// vacuously. Overlapping parts throw ValidationError.
bool check_A2star_instance(const SetPlausibility& pl, const std::vector<Mask>& parts);
bool check_A2dagger_instance(const SetPlausibility& pl, const std::vector<Mask>& parts);
bool check_A3star_instance(const SetPlausibility& pl, const std::vector<Mask>& parts);

// ---------------------------------------------------------------------------
// Countable carrier {first, first+1, ...} with the finite/cofinite algebra.

class CofiniteSet {
 public:
  CofiniteSet() = default;  // empty
  static CofiniteSet finite(std::vector<long> indices);
  static CofiniteSet cofinite(std::vector<long> excluded);
  static CofiniteSet all() { return cofinite({}); }
  static CofiniteSet empty() { return CofiniteSet(); }

  bool is_cofinite() const { return cofinite_; }
  bool is_finite() const { return !cofinite_; }
  bool is_empty() const { return !cofinite_ && support_.empty(); }
  // Members when finite, non-members when cofinite. Sorted.
  const std::vector<long>& support() const { return support_; }
  bool contains(long i) const;

  CofiniteSet complement() const;
  CofiniteSet unite(const CofiniteSet& o) const;
  CofiniteSet intersect(const CofiniteSet& o) const;
  CofiniteSet minus(const CofiniteSet& o) const { return intersect(o.complement()); }
  bool disjoint(const CofiniteSet& o) const { return intersect(o).is_empty(); }
  bool subset_of(const CofiniteSet& o) const { return minus(o).is_empty(); }

  // "{w1,w3}", or "W-{w2}" for cofinite sets.
  std::string str(const std::string& prefix = "w", const std::string& whole = "W") const;

  friend bool operator==(const CofiniteSet& a, const CofiniteSet& b) {
    return a.cofinite_ == b.cofinite_ && a.support_ == b.support_;
  }

 private:
  CofiniteSet(bool cofinite, std::vector<long> support);
  bool cofinite_ = false;
  std::vector<long> support_;
};

// Plausibility on the finite/cofinite algebra of a countable carrier.
class CountableMeasure {
 public:
  virtual ~CountableMeasure() = default;
  virtual std::string name() const = 0;
  virtual bool leq(const CofiniteSet& a, const CofiniteSet& b) const = 0;
  virtual bool is_bottom(const CofiniteSet& s) const = 0;
  virtual std::string value(const CofiniteSet& s) const = 0;
  // Defaults to the plausibility rule; closed-form overrides must agree.
  virtual bool conditional(const CofiniteSet& a, const CofiniteSet& b) const;

  bool less(const CofiniteSet& a, const CofiniteSet& b) const { return leq(a, b) && !leq(b, a); }
};

// Values drawn from a finite rational chain.
class CofiniteMeasure final : public CountableMeasure {
 public:
  // lottery: ∅→0, finite→1/2, cofinite→1.
  // crooked: like lottery but finite sets containing index 1 get 3/4.
  // null: finite→0 (bottom), cofinite→1.
  enum class Kind { kLottery, kCrooked, kNull };

  explicit CofiniteMeasure(Kind kind) : kind_(kind) {}
  Kind kind() const { return kind_; }
  std::string name() const override;

  std::vector<std::string> chain() const;
  // Index into chain().
  int level(const CofiniteSet& s) const;

  bool leq(const CofiniteSet& a, const CofiniteSet& b) const override { return level(a) <= level(b); }
  bool is_bottom(const CofiniteSet& s) const override { return level(s) == 0; }
  std::string value(const CofiniteSet& s) const override { return chain()[level(s)]; }

 private:
  Kind kind_;
};

// "lottery", "crooked" or "null"; anything else throws std::invalid_argument.
CofiniteMeasure cofinite_measure(const std::string& spec);

// A family of pairwise disjoint sets: explicit parts plus, optionally, every
// singleton {i} (i >= first_index) outside all explicit supports, the tail.
struct CofiniteFamily {
  std::vector<CofiniteSet> parts;  // parts[0] is A0
  bool singleton_tail = false;
  long first_index = 1;
};

// Tail premises are checked on representative indices: every uncovered index
// up to two past the largest explicit index, plus one further out.
bool check_A2star_instance(const CountableMeasure& m, const CofiniteFamily& family);
bool check_A2dagger_instance(const CountableMeasure& m, const CofiniteFamily& family);
bool check_A3star_instance(const CountableMeasure& m, const CofiniteFamily& family);

// A1, A2 and A3 over every algebra member with support in {1..bound}: each
// index goes to one of A, B, C or none, and at most one of the three sets also
// takes every index above the bound.
std::optional<std::string> check_qualitative(const CountableMeasure& m, int bound = 6);

}  // namespace plauslab
