#include "plauslab/backends.hpp"

#include <algorithm>
#include <set>

#include "plauslab/error.hpp"

namespace plauslab {

std::string rank_string(Rank r) { return r == kInfiniteRank ? "inf" : std::to_string(r); }

namespace {

void check_size(std::size_t n) {
  if (n == 0) throw ValidationError("a measure needs at least one world");
  if (n > static_cast<std::size_t>(kMaskBits)) throw CapacityError("at most 64 points are supported");
}

std::vector<std::string> default_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("w" + std::to_string(i + 1));
  return out;
}

}  // namespace

PossibilityMeasure::PossibilityMeasure(std::vector<Rational> weights) : weights_(std::move(weights)) {
  check_size(weights_.size());
  Rational top = 0;
  for (const Rational& w : weights_) {
    if (w < Rational(0) || w > Rational(1)) throw ValidationError("possibility weights must lie in [0,1]");
    top = std::max(top, w);
  }
  if (top != Rational(1)) throw ValidationError("possibility weights must have maximum 1");
}

Rational PossibilityMeasure::poss(Mask a) const {
  Rational best = 0;
  for (int i : members(a)) best = std::max(best, weights_[i]);
  return best;
}

KappaRanking::KappaRanking(std::vector<Rank> ranks) : ranks_(std::move(ranks)) {
  check_size(ranks_.size());
  if (std::find(ranks_.begin(), ranks_.end(), Rank{0}) == ranks_.end())
    throw ValidationError("a ranking needs a world of rank 0");
}

Rank KappaRanking::kappa(Mask a) const {
  Rank best = kInfiniteRank;
  for (int i : members(a)) best = std::min(best, ranks_[i]);
  return best;
}

std::string PreferentialPlausibility::label(Mask a) const {
  Mask m = order_.order().minimal(a);
  return m == 0 ? "bot" : format_set(m, default_names(size()));
}

EpsPolyPpd::EpsPolyPpd(std::vector<PpdTerm> terms) : terms_(std::move(terms)) {
  check_size(terms_.size());
  bool anchored = false;
  for (const PpdTerm& t : terms_) {
    if (t.coeff <= Rational(0)) throw ValidationError("PPD coefficients must be positive");
    anchored = anchored || t.exponent == 0;
  }
  if (!anchored) throw ValidationError("a PPD needs a world with exponent 0");
}

Rank EpsPolyPpd::ord(Mask a) const {
  Rank best = kInfiniteRank;
  for (int i : members(a)) best = std::min(best, terms_[i].exponent);
  return best;
}

bool PpdPlausibility::leq(Mask a, Mask b) const {
  // Pr(B | A ∪ B) → 1 iff the part of A outside B vanishes faster than B.
  if (ppd_.ord(a | b) == kInfiniteRank) return true;
  Rank outside = ppd_.ord(a & ~b);
  return outside == kInfiniteRank || outside > ppd_.ord(b);
}

std::string PpdPlausibility::label(Mask a) const {
  Rank r = ppd_.ord(a);
  if (r == kInfiniteRank) return "0";
  return r == 0 ? "1" : "eps^" + std::to_string(r);
}

bool cond_sat_possibility(const PossibilityMeasure& p, Mask a, Mask b) {
  return p.poss(a) == Rational(0) || p.poss(a & b) > p.poss(a & ~b);
}

bool cond_sat_kappa(const KappaRanking& k, Mask a, Mask b) {
  return k.kappa(a) == kInfiniteRank || k.kappa(a & b) < k.kappa(a & ~b);
}

bool cond_sat_preferential(const PreferentialOrder& p, Mask a, Mask b) {
  const StrictOrder& o = p.order();
  for (int w1 : members(a)) {
    bool witnessed = false;
    Mask candidates = (o.before(w1) | (Mask{1} << w1)) & a & b;
    for (int w2 : members(candidates)) {
      Mask better = o.before(w2);
      if ((better & a & ~b) == 0) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed) return false;
  }
  return true;
}

bool cond_sat_preferential_minimal(const PreferentialOrder& p, Mask a, Mask b) {
  return subset_of(p.order().minimal(a), b);
}

bool cond_sat_ppd(const EpsPolyPpd& d, Mask a, Mask b) {
  if (d.ord(a) == kInfiniteRank) return true;
  Rank out = d.ord(a & ~b);
  return out == kInfiniteRank ? true : out > d.ord(a & b);
}

FiniteMeasure embed_preferential(const PreferentialOrder& p) {
  LubClosure c = lub_close(p.order());
  const Mask subsets = Mask{1} << p.size();
  std::vector<ValueId> assign(subsets);
  for (Mask a = 0; a < subsets; ++a) assign[a] = c.value_of(a);
  return FiniteMeasure(p.size(), c.poset(), std::move(assign));
}

PpdPlausibility embed_ppd(const EpsPolyPpd& d) { return PpdPlausibility(d); }

FiniteMeasure to_plausibility(const PossibilityMeasure& p) {
  const int n = p.size();
  if (n > max_worlds()) throw CapacityError("too many worlds to materialize");
  std::set<Rational> levels{Rational(0), Rational(1)};
  for (const Rational& w : p.weights()) levels.insert(w);
  std::vector<Rational> chain(levels.begin(), levels.end());
  std::vector<std::string> names;
  for (const Rational& r : chain) names.push_back(to_string(r));
  const Mask subsets = Mask{1} << n;
  std::vector<ValueId> assign(subsets);
  for (Mask a = 0; a < subsets; ++a)
    assign[a] = static_cast<ValueId>(std::lower_bound(chain.begin(), chain.end(), p.poss(a)) - chain.begin());
  return FiniteMeasure(n, PlausibilityPoset::chain(names), std::move(assign));
}

FiniteMeasure to_plausibility(const KappaRanking& k) {
  const int n = k.size();
  if (n > max_worlds()) throw CapacityError("too many worlds to materialize");
  std::set<Rank> levels{Rank{0}, kInfiniteRank};
  for (Rank r : k.ranks()) levels.insert(r);
  // bottom first: ∞, then decreasing ranks down to 0 at the top
  std::vector<Rank> chain(levels.rbegin(), levels.rend());
  std::vector<std::string> names;
  for (Rank r : chain) names.push_back(rank_string(r));
  const Mask subsets = Mask{1} << n;
  std::vector<ValueId> assign(subsets);
  for (Mask a = 0; a < subsets; ++a)
    assign[a] = static_cast<ValueId>(std::find(chain.begin(), chain.end(), k.kappa(a)) - chain.begin());
  return FiniteMeasure(n, PlausibilityPoset::chain(names), std::move(assign));
}

}  // namespace plauslab
