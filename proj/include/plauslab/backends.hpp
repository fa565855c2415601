#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "plauslab/order.hpp"
#include "plauslab/plausibility.hpp"
#include "plauslab/rational.hpp"

namespace plauslab {

using Rank = std::uint32_t;
inline constexpr Rank kInfiniteRank = std::numeric_limits<Rank>::max();

std::string rank_string(Rank r);

// Poss(A) = max of member weights, 0 on the empty set.
class PossibilityMeasure final : public SetPlausibility {
 public:
  // Weights in [0,1] with maximum exactly 1.
  explicit PossibilityMeasure(std::vector<Rational> weights);

  Rational poss(Mask a) const;
  const std::vector<Rational>& weights() const { return weights_; }

  int size() const override { return static_cast<int>(weights_.size()); }
  bool leq(Mask a, Mask b) const override { return poss(a) <= poss(b); }
  bool is_bottom(Mask a) const override { return poss(a) == Rational(0); }
  std::string label(Mask a) const override { return to_string(poss(a)); }

 private:
  std::vector<Rational> weights_;
};

// κ(A) = min of member ranks, ∞ on the empty set. Lower is more plausible.
class KappaRanking final : public SetPlausibility {
 public:
  // Some world must have rank 0.
  explicit KappaRanking(std::vector<Rank> ranks);

  Rank kappa(Mask a) const;
  const std::vector<Rank>& ranks() const { return ranks_; }

  int size() const override { return static_cast<int>(ranks_.size()); }
  bool leq(Mask a, Mask b) const override { return kappa(a) >= kappa(b); }
  bool is_bottom(Mask a) const override { return kappa(a) == kInfiniteRank; }
  std::string label(Mask a) const override { return "k=" + rank_string(kappa(a)); }

 private:
  std::vector<Rank> ranks_;
};

// A strict preference order on worlds; finite orders are always well-founded.
class PreferentialOrder {
 public:
  explicit PreferentialOrder(StrictOrder order) : order_(std::move(order)) {}
  const StrictOrder& order() const { return order_; }
  int size() const { return order_.worlds(); }
  bool wellfounded() const { return true; }

 private:
  StrictOrder order_;
};

// Pl_≺ as a comparison oracle (no materialized closure), usable on carriers
// too large for lub_close.
class PreferentialPlausibility final : public SetPlausibility {
 public:
  explicit PreferentialPlausibility(PreferentialOrder order) : order_(std::move(order)) {}
  const PreferentialOrder& order() const { return order_; }

  int size() const override { return order_.size(); }
  bool leq(Mask a, Mask b) const override { return antichain_leq(order_.order(), a, b); }
  bool is_bottom(Mask a) const override { return a == 0; }
  std::string label(Mask a) const override;

 private:
  PreferentialOrder order_;
};

struct PpdTerm {
  Rational coeff;
  Rank exponent = 0;  // kInfiniteRank: the world has probability 0 throughout
};

// Pr_ε(w) proportional to coeff·ε^exponent.
class EpsPolyPpd {
 public:
  // Positive coefficients; some world has exponent 0.
  explicit EpsPolyPpd(std::vector<PpdTerm> terms);
  const std::vector<PpdTerm>& terms() const { return terms_; }
  int size() const { return static_cast<int>(terms_.size()); }
  // Smallest exponent in a, ∞ for the empty set.
  Rank ord(Mask a) const;

 private:
  std::vector<PpdTerm> terms_;
};

// Pl_PP: leq(A, B) iff lim Pr(B | A ∪ B) = 1.
class PpdPlausibility final : public SetPlausibility {
 public:
  explicit PpdPlausibility(EpsPolyPpd ppd) : ppd_(std::move(ppd)) {}
  const EpsPolyPpd& ppd() const { return ppd_; }

  int size() const override { return ppd_.size(); }
  bool leq(Mask a, Mask b) const override;
  bool is_bottom(Mask a) const override { return ppd_.ord(a) == kInfiniteRank; }
  std::string label(Mask a) const override;

 private:
  EpsPolyPpd ppd_;
};

bool cond_sat_possibility(const PossibilityMeasure& p, Mask a, Mask b);
bool cond_sat_kappa(const KappaRanking& k, Mask a, Mask b);
// The Lewis-style clause; does not need well-foundedness.
bool cond_sat_preferential(const PreferentialOrder& p, Mask a, Mask b);
// All most-preferred worlds of A are in B; the well-founded definition.
bool cond_sat_preferential_minimal(const PreferentialOrder& p, Mask a, Mask b);
bool cond_sat_ppd(const EpsPolyPpd& d, Mask a, Mask b);

FiniteMeasure embed_preferential(const PreferentialOrder& p);
PpdPlausibility embed_ppd(const EpsPolyPpd& d);

// Direct images on numeric carriers: possibility values keep their order,
// ranks are reversed so that ⊥ = ∞ and ⊤ = 0.
FiniteMeasure to_plausibility(const PossibilityMeasure& p);
FiniteMeasure to_plausibility(const KappaRanking& k);

}  // namespace plauslab
