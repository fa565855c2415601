#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plauslab/sets.hpp"

namespace plauslab {

using ValueId = int;

// Raw relation as read from input; nothing is assumed about it.
struct PosetSpec {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq;  // leq[a][b] means a <= b
  ValueId bot = 0;
  ValueId top = 0;
};

struct PosetViolation {
  enum class Law { kReflexivity, kTransitivity, kAntisymmetry, kBottom, kTop };
  Law law;
  ValueId a = 0;
  ValueId b = 0;
  ValueId c = 0;  // middle element of a transitivity failure
  std::string message;
};

std::optional<PosetViolation> validate_poset(const PosetSpec& spec);

class PlausibilityPoset {
 public:
  // Reflexive-transitive closure of the given <= pairs, then validation.
  // Throws ValidationError naming the violating pair.
  static PlausibilityPoset from_pairs(std::vector<std::string> names,
                                      const std::vector<std::pair<ValueId, ValueId>>& leq_pairs, ValueId bot,
                                      ValueId top);
  static PlausibilityPoset from_spec(const PosetSpec& spec);
  // Skips validation; for relations that are orders by construction.
  static PlausibilityPoset unchecked(const PosetSpec& spec);
  // names[0] is bottom, names.back() is top.
  static PlausibilityPoset chain(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  bool leq(ValueId a, ValueId b) const { return rel_[a * size() + b]; }
  bool less(ValueId a, ValueId b) const { return a != b && leq(a, b); }
  bool comparable(ValueId a, ValueId b) const { return leq(a, b) || leq(b, a); }
  ValueId bottom() const { return bot_; }
  ValueId top() const { return top_; }
  const std::string& name(ValueId v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<ValueId> find(const std::string& name) const;

 private:
  PlausibilityPoset() = default;
  std::vector<std::string> names_;
  std::vector<char> rel_;
  ValueId bot_ = 0;
  ValueId top_ = 0;
};

// Strict partial order on worlds 0..n-1; before(w) is the set of worlds
// strictly preferred to w.
class StrictOrder {
 public:
  // Validates irreflexivity and transitivity of the relation exactly as given.
  StrictOrder(int worlds, std::vector<Mask> preferred_to);
  // Transitive closure of the pairs (a, b) meaning a is preferred to b;
  // throws ValidationError when the closure has a cycle.
  static StrictOrder from_pairs(int worlds, const std::vector<std::pair<int, int>>& pairs);

  int worlds() const { return n_; }
  bool prefers(int a, int b) const { return contains(before_[b], a); }
  Mask before(int w) const { return before_[w]; }
  // Worlds of a with no strictly preferred world inside a.
  Mask minimal(Mask a) const;

 private:
  int n_;
  std::vector<Mask> before_;
};

// Free join-completion of the world order (d_v < d_w whenever w is preferred
// to v). Elements are antichains of preferred worlds; the value of a world set
// is the antichain of its minimal worlds.
class LubClosure {
 public:
  const StrictOrder& base() const { return base_; }
  const PlausibilityPoset& poset() const { return poset_; }
  ValueId value_of(Mask worlds) const { return value_[worlds]; }
  Mask antichain(ValueId v) const { return antichains_[v]; }

 private:
  friend LubClosure lub_close(const StrictOrder& order, const std::vector<std::string>& world_names);
  LubClosure(StrictOrder base, PlausibilityPoset poset, std::vector<ValueId> value, std::vector<Mask> antichains)
      : base_(std::move(base)), poset_(std::move(poset)), value_(std::move(value)),
        antichains_(std::move(antichains)) {}
  StrictOrder base_;
  PlausibilityPoset poset_;
  std::vector<ValueId> value_;
  std::vector<Mask> antichains_;
};

LubClosure lub_close(const StrictOrder& order, const std::vector<std::string>& world_names = {});

// Pl(A) <= Pl(B) in the embedded measure, read off antichains directly.
bool antichain_leq(const StrictOrder& order, Mask a, Mask b);

}  // namespace plauslab
