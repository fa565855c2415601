#include "plauslab/plausibility.hpp"

#include <algorithm>
#include <stdexcept>

#include "plauslab/error.hpp"

namespace plauslab {

bool conditional_holds(const SetPlausibility& pl, Mask a, Mask b) {
  return pl.is_bottom(a) || pl.less(a & ~b, a & b);
}

FiniteMeasure::FiniteMeasure(int points, PlausibilityPoset values, std::vector<ValueId> assign)
    : n_(points), values_(std::move(values)), assign_(std::move(assign)) {
  if (n_ < 0 || n_ > max_worlds())
    throw CapacityError("finite measures are limited to " + std::to_string(max_worlds()) + " points");
  const Mask subsets = Mask{1} << n_;
  if (assign_.size() != subsets) throw ValidationError("measure must assign a value to every subset");
  for (ValueId v : assign_)
    if (v < 0 || v >= values_.size()) throw ValidationError("measure assigns an unknown value");
  if (assign_[0] != values_.bottom()) throw ValidationError("Pl(empty set) must be bottom");
  if (assign_[subsets - 1] != values_.top()) throw ValidationError("Pl(whole carrier) must be top");
  for (Mask a = 0; a < subsets; ++a)
    for (int i = 0; i < n_; ++i)
      if (!contains(a, i) && !leq(a, a | (Mask{1} << i)))
        throw ValidationError("A1 fails: a set is more plausible than its superset (adding point " +
                              std::to_string(i) + " to a set of " + std::to_string(cardinality(a)) + ")");
}

FiniteMeasure materialize(const SetPlausibility& pl) {
  const int n = pl.size();
  if (n > max_worlds()) throw CapacityError("cannot materialize a measure on " + std::to_string(n) + " points");
  const Mask subsets = Mask{1} << n;
  std::vector<Mask> reps;
  std::vector<ValueId> assign(subsets);
  for (Mask a = 0; a < subsets; ++a) {
    ValueId found = -1;
    for (std::size_t r = 0; r < reps.size(); ++r)
      if (pl.equivalent(a, reps[r])) {
        found = static_cast<ValueId>(r);
        break;
      }
    if (found < 0) {
      found = static_cast<ValueId>(reps.size());
      reps.push_back(a);
    }
    assign[a] = found;
  }
  const int k = static_cast<int>(reps.size());
  PosetSpec spec;
  for (Mask r : reps) spec.names.push_back(pl.label(r));
  spec.leq.assign(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) spec.leq[i][j] = pl.leq(reps[i], reps[j]);
  spec.bot = assign[0];
  spec.top = assign[subsets - 1];
  // the cubic order check is only affordable on small quotients
  PlausibilityPoset poset = k <= 256 ? PlausibilityPoset::from_spec(spec) : PlausibilityPoset::unchecked(spec);
  return FiniteMeasure(n, std::move(poset), std::move(assign));
}

std::optional<QualitativeViolation> check_qualitative(const SetPlausibility& pl) {
  const int n = pl.size();
  if (n > 12) throw CapacityError("qualitative check is exhaustive and limited to 12 points");
  const Mask all = full_mask(n);
  using C = QualitativeViolation::Condition;
  for (Mask a = 0; a <= all; ++a)
    for (int i = 0; i < n; ++i)
      if (!contains(a, i) && !pl.leq(a, a | (Mask{1} << i)))
        return QualitativeViolation{C::kA1, a, a | (Mask{1} << i), 0, "A1: Pl(A) > Pl(B) although A is a subset of B"};
  for (Mask a = 0; a <= all; ++a) {
    const Mask rest_a = all & ~a;
    for (Mask b = rest_a;; b = (b - 1) & rest_a) {
      if (pl.is_bottom(a) && pl.is_bottom(b) && !pl.is_bottom(a | b))
        return QualitativeViolation{C::kA3, a, b, 0, "A3: Pl(A) = Pl(B) = bottom but Pl(A u B) is not"};
      const Mask rest_ab = rest_a & ~b;
      for (Mask c = rest_ab;; c = (c - 1) & rest_ab) {
        if (pl.less(c, a | b) && pl.less(b, a | c) && !pl.less(b | c, a))
          return QualitativeViolation{C::kA2, a, b, c,
                                      "A2: Pl(A u B) > Pl(C) and Pl(A u C) > Pl(B) but not Pl(A) > Pl(B u C)"};
        if (c == 0) break;
      }
      if (b == 0) break;
    }
  }
  return std::nullopt;
}

namespace {

Mask union_of_disjoint(const std::vector<Mask>& parts) {
  if (parts.empty()) throw ValidationError("a family needs at least the part A0");
  Mask u = 0;
  for (Mask p : parts) {
    if (u & p) throw ValidationError("family parts must be pairwise disjoint");
    u |= p;
  }
  return u;
}

}  // namespace

bool check_A2star_instance(const SetPlausibility& pl, const std::vector<Mask>& parts) {
  const Mask a = union_of_disjoint(parts);
  if (parts.size() == 1) return true;
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (!pl.less(parts[i], a & ~parts[i])) return true;
  return pl.less(a & ~parts[0], parts[0]);
}

bool check_A2dagger_instance(const SetPlausibility& pl, const std::vector<Mask>& parts) {
  const Mask a = union_of_disjoint(parts);
  if (parts.size() == 1) return true;
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (!pl.less(parts[i], parts[0])) return true;
  return !pl.less(parts[0], a & ~parts[0]);
}

bool check_A3star_instance(const SetPlausibility& pl, const std::vector<Mask>& parts) {
  Mask u = 0;
  for (Mask p : parts) {
    if (!pl.is_bottom(p)) return true;
    u |= p;
  }
  return pl.is_bottom(u);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<long> normalized(std::vector<long> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<long> set_union(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<long> set_inter(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<long> set_diff(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

CofiniteSet::CofiniteSet(bool cofinite, std::vector<long> support)
    : cofinite_(cofinite), support_(std::move(support)) {}

CofiniteSet CofiniteSet::finite(std::vector<long> indices) { return CofiniteSet(false, normalized(std::move(indices))); }

CofiniteSet CofiniteSet::cofinite(std::vector<long> excluded) {
  return CofiniteSet(true, normalized(std::move(excluded)));
}

bool CofiniteSet::contains(long i) const {
  bool listed = std::binary_search(support_.begin(), support_.end(), i);
  return cofinite_ ? !listed : listed;
}

CofiniteSet CofiniteSet::complement() const { return CofiniteSet(!cofinite_, support_); }

CofiniteSet CofiniteSet::unite(const CofiniteSet& o) const {
  if (!cofinite_ && !o.cofinite_) return CofiniteSet(false, set_union(support_, o.support_));
  if (cofinite_ && o.cofinite_) return CofiniteSet(true, set_inter(support_, o.support_));
  const CofiniteSet& co = cofinite_ ? *this : o;
  const CofiniteSet& fin = cofinite_ ? o : *this;
  return CofiniteSet(true, set_diff(co.support_, fin.support_));
}

CofiniteSet CofiniteSet::intersect(const CofiniteSet& o) const {
  return complement().unite(o.complement()).complement();
}

std::string CofiniteSet::str(const std::string& prefix, const std::string& whole) const {
  std::string inner;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (i) inner += ",";
    inner += prefix + std::to_string(support_[i]);
  }
  if (!cofinite_) return "{" + inner + "}";
  if (support_.empty()) return whole;
  return whole + "-{" + inner + "}";
}

bool CountableMeasure::conditional(const CofiniteSet& a, const CofiniteSet& b) const {
  return is_bottom(a) || less(a.minus(b), a.intersect(b));
}

std::string CofiniteMeasure::name() const {
  switch (kind_) {
    case Kind::kLottery: return "lottery";
    case Kind::kCrooked: return "crooked";
    case Kind::kNull: return "null";
  }
  return "";
}

std::vector<std::string> CofiniteMeasure::chain() const {
  switch (kind_) {
    case Kind::kLottery: return {"0", "1/2", "1"};
    case Kind::kCrooked: return {"0", "1/2", "3/4", "1"};
    case Kind::kNull: return {"0", "1"};
  }
  return {};
}

int CofiniteMeasure::level(const CofiniteSet& s) const {
  if (s.is_empty()) return 0;
  switch (kind_) {
    case Kind::kLottery: return s.is_cofinite() ? 2 : 1;
    case Kind::kCrooked:
      if (s.is_cofinite()) return 3;
      return s.contains(1) ? 2 : 1;
    case Kind::kNull: return s.is_cofinite() ? 1 : 0;
  }
  return 0;
}

CofiniteMeasure cofinite_measure(const std::string& spec) {
  if (spec == "lottery") return CofiniteMeasure(CofiniteMeasure::Kind::kLottery);
  if (spec == "crooked") return CofiniteMeasure(CofiniteMeasure::Kind::kCrooked);
  if (spec == "null") return CofiniteMeasure(CofiniteMeasure::Kind::kNull);
  throw std::invalid_argument("unknown cofinite measure '" + spec + "' (expected lottery, crooked or null)");
}

namespace {

struct ExpandedFamily {
  CofiniteSet whole;
  std::vector<long> tail_reps;
};

ExpandedFamily expand(const CofiniteFamily& f) {
  if (f.parts.empty()) throw ValidationError("a family needs at least the part A0");
  CofiniteSet u;
  for (const CofiniteSet& p : f.parts) {
    if (!u.disjoint(p)) throw ValidationError("family parts must be pairwise disjoint");
    u = u.unite(p);
  }
  ExpandedFamily out{u, {}};
  if (!f.singleton_tail) return out;
  if (u.is_cofinite()) throw ValidationError("a singleton tail cannot be disjoint from a cofinite part");
  long top = f.first_index;
  for (long i : u.support()) top = std::max(top, i);
  for (long i = f.first_index; i <= top + 2; ++i)
    if (!u.contains(i)) out.tail_reps.push_back(i);
  out.tail_reps.push_back(top + 17);
  // every index outside the explicit parts is in the tail
  out.whole = CofiniteSet::all();
  return out;
}

}  // namespace

bool check_A2star_instance(const CountableMeasure& m, const CofiniteFamily& f) {
  ExpandedFamily e = expand(f);
  if (f.parts.size() == 1 && e.tail_reps.empty()) return true;
  auto premise = [&](const CofiniteSet& ai) { return m.less(ai, e.whole.minus(ai)); };
  for (std::size_t i = 1; i < f.parts.size(); ++i)
    if (!premise(f.parts[i])) return true;
  for (long r : e.tail_reps)
    if (!premise(CofiniteSet::finite({r}))) return true;
  return m.less(e.whole.minus(f.parts[0]), f.parts[0]);
}

bool check_A2dagger_instance(const CountableMeasure& m, const CofiniteFamily& f) {
  ExpandedFamily e = expand(f);
  if (f.parts.size() == 1 && e.tail_reps.empty()) return true;
  const CofiniteSet& a0 = f.parts[0];
  for (std::size_t i = 1; i < f.parts.size(); ++i)
    if (!m.less(f.parts[i], a0)) return true;
  for (long r : e.tail_reps)
    if (!m.less(CofiniteSet::finite({r}), a0)) return true;
  return !m.less(a0, e.whole.minus(a0));
}

bool check_A3star_instance(const CountableMeasure& m, const CofiniteFamily& f) {
  ExpandedFamily e = expand(f);
  for (const CofiniteSet& p : f.parts)
    if (!m.is_bottom(p)) return true;
  for (long r : e.tail_reps)
    if (!m.is_bottom(CofiniteSet::finite({r}))) return true;
  return m.is_bottom(e.whole);
}

std::optional<std::string> check_qualitative(const CountableMeasure& m, int bound) {
  if (bound < 1 || bound > 10) throw CapacityError("cofinite qualitative check supports bounds 1..10");
  std::vector<long> above_excluded;
  for (long i = 1; i <= bound; ++i) above_excluded.push_back(i);
  long assignments = 1;
  for (int i = 0; i < bound; ++i) assignments *= 4;
  for (int tail = 0; tail < 4; ++tail) {
    for (long code = 0; code < assignments; ++code) {
      std::vector<long> parts[3];
      long c = code;
      for (long i = 1; i <= bound; ++i, c /= 4)
        if (c % 4 < 3) parts[c % 4].push_back(i);
      CofiniteSet s[3];
      for (int k = 0; k < 3; ++k) {
        s[k] = CofiniteSet::finite(parts[k]);
        if (tail == k + 1) s[k] = s[k].unite(CofiniteSet::cofinite(above_excluded));
      }
      const CofiniteSet& a = s[0];
      const CofiniteSet& b = s[1];
      const CofiniteSet& cc = s[2];
      auto show = [&]() { return " with A=" + a.str() + " B=" + b.str() + " C=" + cc.str(); };
      CofiniteSet ab = a.unite(b), ac = a.unite(cc), bc = b.unite(cc), abc = ab.unite(cc);
      if (!m.leq(a, ab) || !m.leq(b, ab) || !m.leq(ab, abc) || !m.leq(bc, abc) || !m.leq(cc, ac))
        return "A1 fails" + show();
      if (m.is_bottom(a) && m.is_bottom(b) && !m.is_bottom(ab)) return "A3 fails" + show();
      if (m.less(cc, ab) && m.less(b, ac) && !m.less(bc, a)) return "A2 fails" + show();
    }
  }
  return std::nullopt;
}

}  // namespace plauslab
