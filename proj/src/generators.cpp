#include "plauslab/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "plauslab/backends.hpp"
#include "plauslab/catalogue.hpp"
#include "plauslab/error.hpp"

namespace plauslab {

std::string to_string(MeasureClass c) {
  switch (c) {
    case MeasureClass::kQpl: return "qpl";
    case MeasureClass::kEps: return "eps";
    case MeasureClass::kKappa: return "kappa";
    case MeasureClass::kPoss: return "poss";
    case MeasureClass::kPref: return "pref";
    case MeasureClass::kPrefWf: return "pref-wf";
    case MeasureClass::kProb: return "prob";
  }
  return "?";
}

MeasureClass parse_measure_class(const std::string& name) {
  for (MeasureClass c : {MeasureClass::kQpl, MeasureClass::kEps, MeasureClass::kKappa, MeasureClass::kPoss,
                         MeasureClass::kPref, MeasureClass::kPrefWf, MeasureClass::kProb})
    if (to_string(c) == name) return c;
  throw std::invalid_argument("unknown class '" + name + "' (qpl, eps, kappa, poss, pref, pref-wf, prob)");
}

ProbabilityPlausibility::ProbabilityPlausibility(std::vector<int> weights) : weights_(std::move(weights)) {
  for (int w : weights_) {
    if (w < 0) throw ValidationError("probability weights must be nonnegative");
    total_ += w;
  }
  if (total_ == 0) throw ValidationError("probability weights must not all be zero");
}

int ProbabilityPlausibility::weight(Mask a) const {
  int s = 0;
  for (int i : members(a)) s += weights_[i];
  return s;
}

std::string ProbabilityPlausibility::label(Mask a) const { return to_string(Rational(weight(a), total_)); }

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<int> random_permutation(Rng& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

Rank random_rank(Rng& rng) {
  int r = uniform(rng, 0, 9);
  return r == 9 ? kInfiniteRank : static_cast<Rank>(r % 4);
}

Rational random_weight(Rng& rng) {
  static const Rational kWeights[] = {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                      Rational(2, 3), Rational(3, 4), Rational(1)};
  return kWeights[uniform(rng, 0, 6)];
}

StrictOrder random_order(Rng& rng, int n) {
  std::vector<int> rank = random_permutation(rng, n);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rank[a] < rank[b] && uniform(rng, 0, 2) == 0) pairs.emplace_back(a, b);
  return StrictOrder::from_pairs(n, pairs);
}

// Sorted coordinate multiset of a point: the REN orbit key.
std::vector<Element> orbit_key(int point, int dom, int slots) {
  std::vector<Element> t = tuple_decode(point, slots, dom);
  std::sort(t.begin(), t.end());
  return t;
}

Mask permute_coordinates(Mask set, const std::vector<int>& perm, int dom, int slots) {
  Mask out = 0;
  for (int p : members(set)) {
    std::vector<Element> t = tuple_decode(p, slots, dom);
    std::vector<Element> u(t.size());
    for (int i = 0; i < slots; ++i) u[perm[i]] = t[i];
    out |= Mask{1} << tuple_code(u, dom);
  }
  return out;
}

bool ren_symmetric(const SetPlausibility& pl, int dom, int slots) {
  std::vector<int> perm(slots);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  while (std::next_permutation(perm.begin(), perm.end())) perms.push_back(perm);
  const Mask subsets = Mask{1} << pl.size();
  for (Mask a = 0; a < subsets; ++a)
    for (const auto& h : perms)
      if (!pl.equivalent(a, permute_coordinates(a, h, dom, slots))) return false;
  return true;
}

const std::vector<std::shared_ptr<const SetPlausibility>>& symmetric_catalogue(int dom, int slots) {
  static std::map<std::pair<int, int>, std::vector<std::shared_ptr<const SetPlausibility>>> cache;
  auto key = std::make_pair(dom, slots);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int points = static_cast<int>(table_size(slots, dom));
  std::vector<std::shared_ptr<const SetPlausibility>> out;
  std::set<std::string> seen;
  for (const auto& pl : qualitative_catalogue(points)) {
    std::vector<int> perm(points);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      auto candidate = std::make_shared<FiniteMeasure>(permute_worlds(*pl, perm));
      if (ren_symmetric(*candidate, dom, slots) && seen.insert(conditional_signature(*candidate)).second)
        out.push_back(candidate);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

FiniteMeasure permute_worlds(const FiniteMeasure& pl, const std::vector<int>& perm) {
  const int n = pl.size();
  std::vector<ValueId> assign(std::size_t{1} << n);
  for (Mask a = 0; a < (Mask{1} << n); ++a) {
    Mask img = 0;
    for (int i : members(a)) img |= Mask{1} << perm[i];
    assign[img] = pl.value(a);
  }
  return FiniteMeasure(n, pl.values(), std::move(assign));
}

std::shared_ptr<const SetPlausibility> random_measure(Rng& rng, MeasureClass c, int worlds) {
  switch (c) {
    case MeasureClass::kQpl: {
      if (worlds > 4) return std::make_shared<PreferentialPlausibility>(PreferentialOrder(random_order(rng, worlds)));
      const auto& cat = qualitative_catalogue(worlds);
      const auto& base = *cat[uniform(rng, 0, static_cast<int>(cat.size()) - 1)];
      return std::make_shared<FiniteMeasure>(permute_worlds(base, random_permutation(rng, worlds)));
    }
    case MeasureClass::kEps: {
      std::vector<PpdTerm> terms;
      for (int i = 0; i < worlds; ++i)
        terms.push_back({Rational(uniform(rng, 1, 3)), uniform(rng, 0, 9) == 9 ? kInfiniteRank : Rank(uniform(rng, 0, 3))});
      terms[uniform(rng, 0, worlds - 1)].exponent = 0;
      return std::make_shared<PpdPlausibility>(EpsPolyPpd(std::move(terms)));
    }
    case MeasureClass::kKappa: {
      std::vector<Rank> ranks;
      for (int i = 0; i < worlds; ++i) ranks.push_back(random_rank(rng));
      ranks[uniform(rng, 0, worlds - 1)] = 0;
      return std::make_shared<KappaRanking>(std::move(ranks));
    }
    case MeasureClass::kPoss: {
      std::vector<Rational> weights;
      for (int i = 0; i < worlds; ++i) weights.push_back(random_weight(rng));
      weights[uniform(rng, 0, worlds - 1)] = 1;
      return std::make_shared<PossibilityMeasure>(std::move(weights));
    }
    case MeasureClass::kPref:
    case MeasureClass::kPrefWf:
      return std::make_shared<PreferentialPlausibility>(PreferentialOrder(random_order(rng, worlds)));
    case MeasureClass::kProb: {
      std::vector<int> weights;
      for (int i = 0; i < worlds; ++i) weights.push_back(uniform(rng, 1, 4));
      return std::make_shared<ProbabilityPlausibility>(std::move(weights));
    }
  }
  throw std::logic_error("unhandled measure class");
}

Interpretation random_interpretation(Rng& rng, const Vocabulary& vocab, int dom) {
  Interpretation in;
  for (const auto& [name, arity] : vocab.predicates()) {
    auto& table = in.preds[name];
    table.resize(table_size(arity, dom));
    for (auto& bit : table) bit = static_cast<char>(uniform(rng, 0, 1));
  }
  for (const auto& [name, arity] : vocab.functions()) {
    auto& table = in.funcs[name];
    table.resize(table_size(arity, dom));
    for (auto& v : table) v = uniform(rng, 0, dom - 1);
  }
  return in;
}

SubjectiveStructure random_subjective(Rng& rng, MeasureClass c, const Vocabulary& vocab, int dom, int worlds) {
  std::vector<std::string> dnames, wnames;
  for (int d = 0; d < dom; ++d) dnames.push_back("d" + std::to_string(d + 1));
  for (int w = 0; w < worlds; ++w) wnames.push_back("w" + std::to_string(w + 1));
  std::vector<Interpretation> interps;
  for (int w = 0; w < worlds; ++w) interps.push_back(random_interpretation(rng, vocab, dom));
  return SubjectiveStructure(vocab, dnames, wnames, std::move(interps), random_measure(rng, c, worlds));
}

std::shared_ptr<const SetPlausibility> random_symmetric_measure(Rng& rng, MeasureClass c, int dom, int slots) {
  const int points = static_cast<int>(table_size(slots, dom));
  if (c != MeasureClass::kQpl && c != MeasureClass::kKappa)
    throw std::invalid_argument("symmetric measures are generated for the qpl and kappa classes");
  int style = c == MeasureClass::kKappa ? 0 : uniform(rng, 0, 2);
  if (style == 2 && points <= 4) {
    if (slots == 1) {
      const auto& cat = qualitative_catalogue(points);
      return cat[uniform(rng, 0, static_cast<int>(cat.size()) - 1)];
    }
    const auto& sym = symmetric_catalogue(dom, slots);
    return sym[uniform(rng, 0, static_cast<int>(sym.size()) - 1)];
  }
  std::map<std::vector<Element>, int> orbit_index;
  for (int p = 0; p < points; ++p) orbit_index.emplace(orbit_key(p, dom, slots), 0);
  int next = 0;
  for (auto& [key, idx] : orbit_index) idx = next++;
  if (style == 1) {
    std::vector<Rational> orbit_weight(next);
    for (auto& w : orbit_weight) w = random_weight(rng);
    orbit_weight[uniform(rng, 0, next - 1)] = 1;
    std::vector<Rational> weights;
    for (int p = 0; p < points; ++p) weights.push_back(orbit_weight[orbit_index[orbit_key(p, dom, slots)]]);
    return std::make_shared<PossibilityMeasure>(std::move(weights));
  }
  std::vector<Rank> orbit_rank(next);
  for (auto& r : orbit_rank) r = random_rank(rng);
  orbit_rank[uniform(rng, 0, next - 1)] = 0;
  std::vector<Rank> ranks;
  for (int p = 0; p < points; ++p) ranks.push_back(orbit_rank[orbit_index[orbit_key(p, dom, slots)]]);
  return std::make_shared<KappaRanking>(std::move(ranks));
}

StatisticalStructure random_statistical(Rng& rng, MeasureClass c, const Vocabulary& vocab, int dom, int slots) {
  std::vector<std::string> dnames;
  for (int d = 0; d < dom; ++d) dnames.push_back("d" + std::to_string(d + 1));
  return StatisticalStructure(vocab, dnames, slots, random_interpretation(rng, vocab, dom),
                              random_symmetric_measure(rng, c, dom, slots));
}

Term random_term(Rng& rng, const FormulaShape& shape, int depth) {
  const int vars = static_cast<int>(shape.variables.size());
  const int consts = static_cast<int>(shape.constants.size());
  const int funcs = depth > 0 ? static_cast<int>(shape.functions.size()) : 0;
  const int total = vars + consts + funcs;
  if (total == 0) throw std::invalid_argument("no terms available");
  int pick = uniform(rng, 0, total - 1);
  if (pick < vars) return Term::var(shape.variables[pick]);
  pick -= vars;
  if (pick < consts) return Term::func(shape.constants[pick]);
  pick -= consts;
  const auto& [name, arity] = shape.functions[pick];
  std::vector<Term> args;
  for (int i = 0; i < arity; ++i) args.push_back(random_term(rng, shape, depth - 1));
  return Term::func(name, std::move(args));
}

namespace {

Formula random_atom(Rng& rng, const FormulaShape& shape) {
  const int preds = static_cast<int>(shape.predicates.size());
  int roll = uniform(rng, 0, 19);
  if (roll == 0) return truth();
  if (roll == 1) return falsity();
  if (shape.equality && (roll < 5 || preds == 0)) return equals(random_term(rng, shape, 1), random_term(rng, shape, 1));
  if (preds == 0) return truth();
  const auto& [name, arity] = shape.predicates[uniform(rng, 0, preds - 1)];
  std::vector<Term> args;
  for (int i = 0; i < arity; ++i) args.push_back(random_term(rng, shape, 1));
  return atom(name, std::move(args));
}

}  // namespace

Formula random_formula(Rng& rng, const FormulaShape& shape) { return random_formula(rng, shape, shape.max_depth); }

Formula random_formula(Rng& rng, const FormulaShape& shape, int depth) {
  if (depth <= 0) return random_atom(rng, shape);
  int roll = uniform(rng, 0, 99);
  if (roll < 40) {
    switch (uniform(rng, 0, 4)) {
      case 0: return negate(random_formula(rng, shape, depth - 1));
      case 1: return conj(random_formula(rng, shape, depth - 1), random_formula(rng, shape, depth - 1));
      case 2: return disj(random_formula(rng, shape, depth - 1), random_formula(rng, shape, depth - 1));
      case 3: return implies(random_formula(rng, shape, depth - 1), random_formula(rng, shape, depth - 1));
      default: return iff(random_formula(rng, shape, depth - 1), random_formula(rng, shape, depth - 1));
    }
  }
  if (roll < 65) {
    if (shape.lang == Lang::kStat) {
      std::vector<std::string> xs;
      for (const std::string& v : shape.variables)
        if (uniform(rng, 0, 2) == 0) xs.push_back(v);
      if (xs.empty()) xs.push_back(shape.variables[uniform(rng, 0, static_cast<int>(shape.variables.size()) - 1)]);
      return stat_cond(std::move(xs), random_formula(rng, shape, depth - 1), random_formula(rng, shape, depth - 1));
    }
    if (shape.nec && uniform(rng, 0, 4) == 0) return nec(random_formula(rng, shape, depth - 1));
    return cond(random_formula(rng, shape, depth - 1), random_formula(rng, shape, depth - 1));
  }
  if (roll < 85 && !shape.variables.empty()) {
    const std::string& v = shape.variables[uniform(rng, 0, static_cast<int>(shape.variables.size()) - 1)];
    Formula body = random_formula(rng, shape, depth - 1);
    return uniform(rng, 0, 1) ? forall(v, body) : exists(v, body);
  }
  return random_atom(rng, shape);
}

}  // namespace plauslab
