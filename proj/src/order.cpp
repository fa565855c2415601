#include "plauslab/order.hpp"

#include <algorithm>
#include <map>

#include "plauslab/error.hpp"

namespace plauslab {

namespace {

std::string law_name(PosetViolation::Law law) {
  switch (law) {
    case PosetViolation::Law::kReflexivity: return "reflexivity";
    case PosetViolation::Law::kTransitivity: return "transitivity";
    case PosetViolation::Law::kAntisymmetry: return "antisymmetry";
    case PosetViolation::Law::kBottom: return "bottom bound";
    case PosetViolation::Law::kTop: return "top bound";
  }
  return "";
}

}  // namespace

std::optional<PosetViolation> validate_poset(const PosetSpec& spec) {
  const int n = static_cast<int>(spec.names.size());
  auto nm = [&](ValueId v) { return spec.names[v]; };
  auto report = [&](PosetViolation::Law law, ValueId a, ValueId b, ValueId c, std::string detail) {
    return PosetViolation{law, a, b, c, law_name(law) + " fails: " + detail};
  };
  if (n == 0) return PosetViolation{PosetViolation::Law::kBottom, 0, 0, 0, "empty poset"};
  if (static_cast<int>(spec.leq.size()) != n)
    return PosetViolation{PosetViolation::Law::kReflexivity, 0, 0, 0, "relation has the wrong shape"};
  for (const auto& row : spec.leq)
    if (static_cast<int>(row.size()) != n)
      return PosetViolation{PosetViolation::Law::kReflexivity, 0, 0, 0, "relation has the wrong shape"};
  if (spec.bot < 0 || spec.bot >= n || spec.top < 0 || spec.top >= n)
    return PosetViolation{PosetViolation::Law::kBottom, 0, 0, 0, "bottom or top is not an element"};
  for (int a = 0; a < n; ++a)
    if (!spec.leq[a][a]) return report(PosetViolation::Law::kReflexivity, a, a, a, nm(a) + " <= " + nm(a) + " missing");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && spec.leq[a][b] && spec.leq[b][a])
        return report(PosetViolation::Law::kAntisymmetry, a, b, b,
                      nm(a) + " <= " + nm(b) + " and " + nm(b) + " <= " + nm(a));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!spec.leq[a][b]) continue;
      for (int c = 0; c < n; ++c)
        if (spec.leq[b][c] && !spec.leq[a][c])
          return report(PosetViolation::Law::kTransitivity, a, c, b,
                        nm(a) + " <= " + nm(b) + " <= " + nm(c) + " but not " + nm(a) + " <= " + nm(c));
    }
  for (int d = 0; d < n; ++d) {
    if (!spec.leq[spec.bot][d])
      return report(PosetViolation::Law::kBottom, spec.bot, d, d, nm(spec.bot) + " <= " + nm(d) + " missing");
    if (!spec.leq[d][spec.top])
      return report(PosetViolation::Law::kTop, d, spec.top, d, nm(d) + " <= " + nm(spec.top) + " missing");
  }
  return std::nullopt;
}

PlausibilityPoset PlausibilityPoset::from_spec(const PosetSpec& spec) {
  if (auto v = validate_poset(spec)) throw ValidationError("invalid plausibility poset: " + v->message);
  return unchecked(spec);
}

PlausibilityPoset PlausibilityPoset::unchecked(const PosetSpec& spec) {
  PlausibilityPoset p;
  const int n = static_cast<int>(spec.names.size());
  p.names_ = spec.names;
  p.rel_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p.rel_[a * n + b] = spec.leq[a][b];
  p.bot_ = spec.bot;
  p.top_ = spec.top;
  return p;
}

PlausibilityPoset PlausibilityPoset::from_pairs(std::vector<std::string> names,
                                                const std::vector<std::pair<ValueId, ValueId>>& leq_pairs,
                                                ValueId bot, ValueId top) {
  const int n = static_cast<int>(names.size());
  PosetSpec spec;
  spec.names = std::move(names);
  spec.leq.assign(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) spec.leq[a][a] = true;
  for (auto [a, b] : leq_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw ValidationError("poset pair refers to an unknown element");
    spec.leq[a][b] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (spec.leq[a][k])
        for (int b = 0; b < n; ++b)
          if (spec.leq[k][b]) spec.leq[a][b] = true;
  spec.bot = bot;
  spec.top = top;
  return from_spec(spec);
}

PlausibilityPoset PlausibilityPoset::chain(std::vector<std::string> names) {
  const int n = static_cast<int>(names.size());
  PosetSpec spec;
  spec.names = std::move(names);
  spec.leq.assign(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) spec.leq[a][b] = true;
  spec.bot = 0;
  spec.top = n - 1;
  return from_spec(spec);
}

std::optional<ValueId> PlausibilityPoset::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<ValueId>(it - names_.begin());
}

StrictOrder::StrictOrder(int worlds, std::vector<Mask> preferred_to) : n_(worlds), before_(std::move(preferred_to)) {
  if (n_ < 0 || n_ > kMaskBits) throw CapacityError("too many worlds for a preference order");
  if (static_cast<int>(before_.size()) != n_) throw ValidationError("preference relation has the wrong shape");
  for (int w = 0; w < n_; ++w) {
    if (!subset_of(before_[w], full_mask(n_))) throw ValidationError("preference relation mentions unknown worlds");
    if (contains(before_[w], w))
      throw ValidationError("preference order is not irreflexive: world " + std::to_string(w) + " is preferred to itself");
  }
  for (int b = 0; b < n_; ++b)
    for (int a : members(before_[b]))
      if (!subset_of(before_[a], before_[b])) {
        int c = members(before_[a] & ~before_[b]).front();
        throw ValidationError("preference order is not transitive: " + std::to_string(c) + " < " +
                              std::to_string(a) + " < " + std::to_string(b));
      }
}

StrictOrder StrictOrder::from_pairs(int worlds, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Mask> before(worlds, 0);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= worlds || b < 0 || b >= worlds) throw ValidationError("preference pair refers to an unknown world");
    before[b] |= Mask{1} << a;
  }
  for (int k = 0; k < worlds; ++k)
    for (int b = 0; b < worlds; ++b)
      if (contains(before[b], k)) before[b] |= before[k];
  for (int w = 0; w < worlds; ++w)
    if (contains(before[w], w))
      throw ValidationError("preference pairs contain a cycle through world " + std::to_string(w));
  return StrictOrder(worlds, std::move(before));
}

Mask StrictOrder::minimal(Mask a) const {
  Mask out = 0;
  for (int w : members(a))
    if ((before_[w] & a) == 0) out |= Mask{1} << w;
  return out;
}

bool antichain_leq(const StrictOrder& order, Mask a, Mask b) {
  // every world of A is matched by an equally or more preferred world of B
  for (int s : members(order.minimal(a))) {
    Mask cover = order.before(s) | (Mask{1} << s);
    if ((cover & b) == 0) return false;
  }
  return true;
}

LubClosure lub_close(const StrictOrder& order, const std::vector<std::string>& world_names) {
  const int n = order.worlds();
  if (n > max_worlds()) throw CapacityError("lub closure limited to " + std::to_string(max_worlds()) + " worlds");
  const std::size_t subsets = std::size_t{1} << n;
  std::map<Mask, ValueId> ids;
  std::vector<Mask> antichains;
  std::vector<ValueId> value(subsets);
  for (Mask a = 0; a < subsets; ++a) {
    Mask m = order.minimal(a);
    auto [it, fresh] = ids.emplace(m, static_cast<ValueId>(antichains.size()));
    if (fresh) antichains.push_back(m);
    value[a] = it->second;
  }
  std::vector<std::string> names;
  std::vector<std::string> wn = world_names;
  for (int w = static_cast<int>(wn.size()); w < n; ++w) wn.push_back("w" + std::to_string(w + 1));
  for (Mask m : antichains) names.push_back(m == 0 ? "bot" : format_set(m, wn));
  const int k = static_cast<int>(antichains.size());
  PosetSpec spec;
  spec.names = names;
  spec.leq.assign(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) spec.leq[i][j] = antichain_leq(order, antichains[i], antichains[j]);
  spec.bot = value[0];
  spec.top = value[subsets - 1];
  return LubClosure(order, PlausibilityPoset::unchecked(spec), std::move(value), std::move(antichains));
}

}  // namespace plauslab
