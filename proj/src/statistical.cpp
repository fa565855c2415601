#include "plauslab/statistical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "plauslab/error.hpp"

namespace plauslab {

StatisticalStructure::StatisticalStructure(Vocabulary vocab, std::vector<std::string> dom, int slots,
                                           Interpretation interp, std::shared_ptr<const SetPlausibility> pl)
    : vocab_(std::move(vocab)), dom_(std::move(dom)), slots_(slots), interp_(std::move(interp)), pl_(std::move(pl)) {
  if (dom_.empty()) throw ValidationError("the domain must be nonempty");
  if (slots_ < 1) throw ValidationError("a statistical structure needs at least one variable slot");
  long pts = 1;
  for (int i = 0; i < slots_; ++i) {
    pts *= dom_size();
    if (pts > kMaskBits) throw CapacityError("|Dom|^k may not exceed 64 valuation points");
  }
  points_ = static_cast<int>(pts);
  if (!pl_) throw ValidationError("missing plausibility measure");
  if (pl_->size() != points_) throw ValidationError("the plausibility measure must range over Dom^k");
  interp_.validate(vocab_, dom_size(), "interpretation");
}

Element StatisticalStructure::coord(int point, int slot) const {
  for (int i = 0; i < slot; ++i) point /= dom_size();
  return point % dom_size();
}

int StatisticalStructure::with_coord(int point, int slot, Element d) const {
  int stride = 1;
  for (int i = 0; i < slot; ++i) stride *= dom_size();
  return point + (d - coord(point, slot)) * stride;
}

int StatisticalStructure::point_of(const std::vector<Element>& tuple) const {
  if (static_cast<int>(tuple.size()) != slots_) throw EvalError("valuation point has the wrong dimension");
  return static_cast<int>(tuple_code(tuple, dom_size()));
}

std::vector<Element> StatisticalStructure::tuple_of(int point) const { return tuple_decode(point, slots_, dom_size()); }

std::string StatisticalStructure::point_name(int point) const {
  std::string s = "(";
  for (int i = 0; i < slots_; ++i) s += (i ? "," : "") + dom_[coord(point, i)];
  return s + ")";
}

std::string StatisticalStructure::set_name(Mask points) const {
  std::string s = "{";
  bool first = true;
  for (int p : members(points)) {
    s += (first ? "" : ",") + point_name(p);
    first = false;
  }
  return s + "}";
}

std::string StatisticalStructure::describe() const {
  std::ostringstream out;
  out << "dom {";
  for (int d = 0; d < dom_size(); ++d) out << (d ? "," : "") << dom_[d];
  out << "}, k=" << slots_ << "\n ";
  for (const auto& [name, table] : interp_.funcs) {
    int arity = *vocab_.function_arity(name);
    for (std::size_t c = 0; c < table.size(); ++c) {
      auto args = tuple_decode(c, arity, dom_size());
      out << " " << name;
      if (arity) {
        out << "(";
        for (int i = 0; i < arity; ++i) out << (i ? "," : "") << dom_[args[i]];
        out << ")";
      }
      out << "=" << dom_[table[c]];
    }
  }
  for (const auto& [name, table] : interp_.preds) {
    int arity = *vocab_.predicate_arity(name);
    out << " " << name << "={";
    bool first = true;
    for (std::size_t c = 0; c < table.size(); ++c) {
      if (!table[c]) continue;
      auto args = tuple_decode(c, arity, dom_size());
      out << (first ? "" : ",") << "(";
      first = false;
      for (int i = 0; i < arity; ++i) out << (i ? "," : "") << dom_[args[i]];
      out << ")";
    }
    out << "}";
  }
  out << "\n  Pl on points:";
  for (int p = 0; p < points_; ++p) out << " " << point_name(p) << "=" << pl_->label(Mask{1} << p);
  out << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

StatisticalEvaluator::StatisticalEvaluator(const StatisticalStructure& s, StatSemantics sem, std::ostream* trace)
    : s_(s), sem_(sem), trace_(trace) {}

void StatisticalEvaluator::check(const Formula& f) const {
  if (f.has_subj_cond()) throw EvalError("subjective conditionals cannot be evaluated in a statistical structure");
  Vocabulary v;
  v.absorb(f);
  for (const auto& [name, arity] : v.predicates())
    if (s_.vocab().predicate_arity(name) != arity)
      throw EvalError("predicate '" + name + "/" + std::to_string(arity) + "' is not in the structure's vocabulary");
  for (const auto& [name, arity] : v.functions())
    if (s_.vocab().function_arity(name) != arity)
      throw EvalError("function '" + name + "/" + std::to_string(arity) + "' is not in the structure's vocabulary");
}

Element StatisticalEvaluator::term_value(const Term& t, int point) const {
  if (t.is_var()) {
    int i = stat_index(t.name());
    if (i == 0) throw EvalError("'" + t.name() + "' is not a statistical variable");
    if (i > s_.slots()) throw EvalError("variable " + t.name() + " exceeds the structure's " + std::to_string(s_.slots()) + " slots");
    return s_.coord(point, i - 1);
  }
  std::vector<Element> args;
  for (const Term& a : t.args()) args.push_back(term_value(a, point));
  return s_.interp().func(t.name(), args, s_.dom_size());
}

namespace {

int slot_of(const std::string& var, int slots) {
  int i = stat_index(var);
  if (i == 0) throw EvalError("'" + var + "' is not a statistical variable");
  if (i > slots) throw EvalError("variable " + var + " exceeds the structure's " + std::to_string(slots) + " slots");
  return i - 1;
}

}  // namespace

Mask StatisticalEvaluator::ext(const Formula& f) {
  const Mask all = s_.all_points();
  const int n = s_.points();
  switch (f.op()) {
    case Op::kTrue: return all;
    case Op::kFalse: return 0;
    case Op::kAtom:
    case Op::kEq: {
      Mask out = 0;
      std::vector<Element> args(f.terms().size());
      for (int p = 0; p < n; ++p) {
        for (std::size_t i = 0; i < args.size(); ++i) args[i] = term_value(f.terms()[i], p);
        bool v = f.op() == Op::kEq ? args[0] == args[1] : s_.interp().pred(f.symbol(), args, s_.dom_size());
        if (v) out |= Mask{1} << p;
      }
      return out;
    }
    case Op::kNot: return all & ~ext(f.child(0));
    case Op::kAnd: return ext(f.child(0)) & ext(f.child(1));
    case Op::kOr: return ext(f.child(0)) | ext(f.child(1));
    case Op::kImplies: return (all & ~ext(f.child(0))) | ext(f.child(1));
    case Op::kIff: return all & ~(ext(f.child(0)) ^ ext(f.child(1)));
    case Op::kForall:
    case Op::kExists: {
      const int slot = slot_of(f.symbol(), s_.slots());
      const bool universal = f.op() == Op::kForall;
      Mask body = ext(f.child(0));
      Mask out = 0;
      for (int p = 0; p < n; ++p) {
        bool acc = universal;
        for (Element d = 0; d < s_.dom_size(); ++d) {
          bool in = contains(body, s_.with_coord(p, slot, d));
          acc = universal ? (acc && in) : (acc || in);
        }
        if (acc) out |= Mask{1} << p;
      }
      return out;
    }
    case Op::kStatCond: {
      std::vector<int> xs;
      for (const std::string& v : f.bound()) xs.push_back(slot_of(v, s_.slots()));
      auto is_x = [&](int slot) { return std::find(xs.begin(), xs.end(), slot) != xs.end(); };
      Mask a = ext(f.child(0));
      Mask b = ext(f.child(1));
      // p's coordinates outside X, with X zeroed
      auto outside = [&](int p) {
        for (int x : xs) p = s_.with_coord(p, x, 0);
        return p;
      };
      // q's X-coordinates combined with p's other coordinates
      auto merge = [&](int q, int p) {
        for (int slot = 0; slot < s_.slots(); ++slot)
          if (!is_x(slot)) q = s_.with_coord(q, slot, s_.coord(p, slot));
        return q;
      };
      std::map<int, bool> by_key;
      Mask out = 0;
      for (int p = 0; p < n; ++p) {
        int key = outside(p);
        auto it = by_key.find(key);
        if (it == by_key.end()) {
          Mask ca = 0, cb = 0;
          for (int q = 0; q < n; ++q) {
            int src;
            if (sem_ == StatSemantics::kCylinder) {
              src = merge(q, p);
            } else {
              if (outside(q) != key) continue;
              src = q;
            }
            if (contains(a, src)) ca |= Mask{1} << q;
            if (contains(b, src)) cb |= Mask{1} << q;
          }
          bool r = conditional_holds(s_.pl(), ca, cb);
          if (trace_) {
            *trace_ << "cond " << print(f);
            if (!f.free_vars().empty()) {
              *trace_ << " [";
              bool first = true;
              for (const std::string& v : f.free_vars()) {
                *trace_ << (first ? "" : ",") << v << "=" << s_.dom()[s_.coord(p, slot_of(v, s_.slots()))];
                first = false;
              }
              *trace_ << "]";
            }
            *trace_ << ": A=" << s_.set_name(ca) << " Pl(A&B)=" << s_.pl().label(ca & cb)
                    << " Pl(A-B)=" << s_.pl().label(ca & ~cb) << " -> " << (r ? "true" : "false") << "\n";
          }
          it = by_key.emplace(key, r).first;
        }
        if (it->second) out |= Mask{1} << p;
      }
      return out;
    }
    case Op::kCond:
    case Op::kNec: throw EvalError("subjective conditionals cannot be evaluated in a statistical structure");
  }
  return 0;
}

Mask StatisticalEvaluator::extension(const Formula& f) {
  check(f);
  return ext(f);
}

bool StatisticalEvaluator::holds(const Formula& f, const Valuation& v) {
  check(f);
  std::vector<Element> tuple(s_.slots(), 0);
  for (const std::string& var : f.free_vars()) {
    auto it = v.find(var);
    if (it == v.end()) throw EvalError("free variable '" + var + "' has no value");
    if (it->second < 0 || it->second >= s_.dom_size()) throw EvalError("variable '" + var + "' is outside the domain");
    tuple[slot_of(var, s_.slots())] = it->second;
  }
  for (const auto& [var, value] : v) {
    int i = stat_index(var);
    if (i >= 1 && i <= s_.slots() && value >= 0 && value < s_.dom_size()) tuple[i - 1] = value;
  }
  return contains(ext(f), s_.point_of(tuple));
}

bool eval_stat(const StatisticalStructure& s, const Valuation& v, const Formula& f, StatSemantics sem) {
  StatisticalEvaluator e(s, sem);
  return e.holds(f, v);
}

Mask permute_points(const StatisticalStructure& s, Mask set, const std::vector<int>& perm) {
  Mask out = 0;
  for (int p : members(set)) {
    std::vector<Element> t = s.tuple_of(p);
    std::vector<Element> u(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) u[perm[i]] = t[i];
    out |= Mask{1} << s.point_of(u);
  }
  return out;
}

std::optional<RenViolation> check_ren(const StatisticalStructure& s, std::uint64_t seed) {
  std::vector<int> perm(s.slots());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  while (std::next_permutation(perm.begin(), perm.end())) perms.push_back(perm);
  if (perms.empty()) return std::nullopt;

  auto check_set = [&](Mask a) -> std::optional<RenViolation> {
    for (const auto& h : perms) {
      Mask ah = permute_points(s, a, h);
      if (!s.pl().equivalent(a, ah)) {
        std::string hs;
        for (std::size_t i = 0; i < h.size(); ++i) hs += (i ? " " : "") + std::to_string(h[i] + 1);
        return RenViolation{h, a,
                            "Pl(" + s.set_name(a) + ")=" + s.pl().label(a) + " but its image under coordinate map [" +
                                hs + "] has Pl=" + s.pl().label(ah)};
      }
    }
    return std::nullopt;
  };

  const int n = s.points();
  if (n <= 16) {
    for (Mask a = 0; a <= full_mask(n); ++a)
      if (auto v = check_set(a)) return v;
    return std::nullopt;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (auto v = check_set((Mask{1} << i) | (Mask{1} << j))) return v;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 4096; ++t)
    if (auto v = check_set(rng() & s.all_points())) return v;
  return std::nullopt;
}

bool check_product_property(const StatisticalStructure& s, const TupleSet& a, const TupleSet& a2, const TupleSet& b) {
  const int n = a.arity;
  const int m = b.arity;
  if (a2.arity != n) throw ValidationError("A and A' must have the same dimension");
  if (n < 1 || m < 1 || n + m > s.slots()) throw ValidationError("need n, m >= 1 and n + m <= k");
  auto check_tuples = [&](const TupleSet& t) {
    for (const auto& tup : t.tuples) {
      if (static_cast<int>(tup.size()) != t.arity) throw ValidationError("tuple of the wrong dimension");
      for (Element e : tup)
        if (e < 0 || e >= s.dom_size()) throw ValidationError("tuple element outside the domain");
    }
  };
  check_tuples(a);
  check_tuples(a2);
  check_tuples(b);
  auto in = [&](const TupleSet& t, const std::vector<Element>& tuple, int from) {
    std::vector<Element> part(tuple.begin() + from, tuple.begin() + from + t.arity);
    return std::find(t.tuples.begin(), t.tuples.end(), part) != t.tuples.end();
  };
  auto cylinder = [&](const TupleSet& first, const TupleSet* second) {
    Mask out = 0;
    for (int p = 0; p < s.points(); ++p) {
      std::vector<Element> t = s.tuple_of(p);
      if (in(first, t, 0) && (second == nullptr || in(*second, t, n))) out |= Mask{1} << p;
    }
    return out;
  };
  if (!s.pl().leq(cylinder(a, nullptr), cylinder(a2, nullptr))) return true;
  return s.pl().leq(cylinder(a, &b), cylinder(a2, &b));
}

}  // namespace plauslab
