#include "plauslab/scenarios.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "plauslab/error.hpp"

namespace plauslab {

Rational PossibilityLotteryMeasure::poss(const CofiniteSet& s) const {
  if (s.is_cofinite()) return 1;
  if (s.is_empty()) return 0;
  long i = s.support().back();
  return Rational(i, i + 1);
}

bool PreferentialChainMeasure::leq(const CofiniteSet& a, const CofiniteSet& b) const {
  if (a.is_empty() || b.is_cofinite()) return true;
  if (a.is_cofinite() || b.is_empty()) return false;
  return a.support().back() <= b.support().back();
}

std::string PreferentialChainMeasure::value(const CofiniteSet& s) const {
  if (s.is_empty()) return "bot";
  if (s.is_cofinite()) return "unbounded";
  return "max w" + std::to_string(s.support().back());
}

bool PreferentialChainMeasure::conditional(const CofiniteSet& a, const CofiniteSet& b) const {
  if (a.is_empty()) return true;
  CofiniteSet out = a.minus(b);
  if (out.is_cofinite()) return false;  // A-B always has a better world
  if (a.intersect(b).is_cofinite()) return true;
  return b.contains(a.support().back());
}

// ---------------------------------------------------------------------------

ScenarioEvaluator::ScenarioEvaluator(const Scenario& s, std::ostream* trace) : s_(s), trace_(trace) {}

void ScenarioEvaluator::check(const Formula& f) const {
  if (s_.lang == Lang::kSubj && f.has_stat_cond())
    throw EvalError("scenario '" + s_.name + "' is subjective; statistical conditionals are not defined there");
  if (s_.lang == Lang::kStat && f.has_subj_cond())
    throw EvalError("scenario '" + s_.name + "' is statistical; subjective conditionals are not defined there");
  Vocabulary v;
  v.absorb(f);
  for (const auto& [name, arity] : v.predicates())
    if (s_.vocab.predicate_arity(name) != arity)
      throw EvalError("predicate '" + name + "/" + std::to_string(arity) + "' is not in scenario '" + s_.name + "'");
  for (const auto& [name, arity] : v.functions())
    if (s_.vocab.function_arity(name) != arity)
      throw EvalError("function '" + name + "/" + std::to_string(arity) + "' is not in scenario '" + s_.name + "'");
}

long ScenarioEvaluator::term_value(const Term& t, long world, const IndexValuation& env) const {
  if (t.is_var()) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == t.name()) return it->second;
    throw EvalError("free variable '" + t.name() + "' has no value");
  }
  std::vector<long> args;
  for (const Term& a : t.args()) args.push_back(term_value(a, world, env));
  return s_.func(t.name(), args, world);
}

long ScenarioEvaluator::horizon(const IndexValuation& env, long world) const {
  long top = std::max({s_.bound, s_.min_index, world});
  for (const auto& [var, d] : env) {
    top = std::max(top, d);
    if (s_.neighbours)
      for (long n : s_.neighbours(d)) top = std::max(top, n);
  }
  return top;
}

CofiniteSet ScenarioEvaluator::collect(const std::function<bool(long)>& member, long top, long fresh,
                                       const std::string& what) {
  std::vector<long> in, out;
  for (long i = s_.min_index; i <= top; ++i) (member(i) ? in : out).push_back(i);
  bool generic = member(fresh);
  for (long probe : {fresh + 1, fresh + 16})
    if (member(probe) != generic)
      throw UniformityError("scenario '" + s_.name + "': " + what + " differs at indices " + std::to_string(fresh) +
                            " and " + std::to_string(probe));
  return generic ? CofiniteSet::cofinite(out) : CofiniteSet::finite(in);
}

bool ScenarioEvaluator::eval(const Formula& f, long world, IndexValuation& env) {
  switch (f.op()) {
    case Op::kTrue: return true;
    case Op::kFalse: return false;
    case Op::kAtom: {
      std::vector<long> args;
      for (const Term& t : f.terms()) args.push_back(term_value(t, world, env));
      return s_.atom(f.symbol(), args, world);
    }
    case Op::kEq: return term_value(f.terms()[0], world, env) == term_value(f.terms()[1], world, env);
    case Op::kNot: return !eval(f.child(0), world, env);
    case Op::kAnd: return eval(f.child(0), world, env) && eval(f.child(1), world, env);
    case Op::kOr: return eval(f.child(0), world, env) || eval(f.child(1), world, env);
    case Op::kImplies: return !eval(f.child(0), world, env) || eval(f.child(1), world, env);
    case Op::kIff: return eval(f.child(0), world, env) == eval(f.child(1), world, env);
    case Op::kForall:
    case Op::kExists: {
      const bool universal = f.op() == Op::kForall;
      const long top = horizon(env, world);
      auto member = [&](long d) {
        env.emplace_back(f.symbol(), d);
        bool r = eval(f.child(0), world, env);
        env.pop_back();
        return r;
      };
      CofiniteSet sat = collect(member, top, top + 1, "the body of " + print(f));
      return universal ? sat == CofiniteSet::all() : !sat.is_empty();
    }
    case Op::kCond:
    case Op::kNec:
    case Op::kStatCond: {
      CofiniteSet a, b;
      if (f.op() == Op::kStatCond) {
        if (f.bound().size() != 1)
          throw EvalError("scenario '" + s_.name + "' supports statistical conditionals over one variable only");
        const std::string& x = f.bound()[0];
        const long top = horizon(env, world);
        auto over = [&](const Formula& g) {
          return collect(
              [&](long d) {
                env.emplace_back(x, d);
                bool r = eval(g, world, env);
                env.pop_back();
                return r;
              },
              top, top + 1, print(g));
        };
        a = over(f.child(0));
        b = over(f.child(1));
      } else if (f.op() == Op::kNec) {
        a = extension(negate(f.child(0)), env);
        b = CofiniteSet::empty();
      } else {
        a = extension(f.child(0), env);
        b = extension(f.child(1), env);
      }
      bool r = s_.measure->conditional(a, b);
      if (trace_) {
        std::ostringstream line;
        line << (f.op() == Op::kNec ? "nec " : "cond ") << print(f);
        if (!env.empty()) {
          line << " [";
          for (std::size_t i = 0; i < env.size(); ++i)
            line << (i ? "," : "") << env[i].first << "=d" << env[i].second;
          line << "]";
        }
        const std::string pre = s_.lang == Lang::kSubj ? "w" : "d";
        const std::string whole = s_.lang == Lang::kSubj ? "W" : "Dom";
        line << ": A=" << a.str(pre, whole) << " Pl(A&B)=" << s_.measure->value(a.intersect(b))
             << " Pl(A-B)=" << s_.measure->value(a.minus(b)) << " -> " << (r ? "true" : "false");
        if (traced_.insert(line.str()).second) *trace_ << line.str() << "\n";
      }
      return r;
    }
  }
  return false;
}

CofiniteSet ScenarioEvaluator::extension(const Formula& f, const IndexValuation& v) {
  if (s_.lang != Lang::kSubj) throw EvalError("world extensions exist only in subjective scenarios");
  IndexValuation env = v;
  const long top = horizon(env, s_.min_index);
  return collect([&](long w) { return eval(f, w, env); }, top, top + 1, "membership in [[" + print(f) + "]]");
}

bool ScenarioEvaluator::holds_at(const Formula& f, long world, const IndexValuation& v) {
  check(f);
  for (const std::string& var : f.free_vars())
    if (std::none_of(v.begin(), v.end(), [&](const auto& p) { return p.first == var; }))
      throw EvalError("free variable '" + var + "' has no value");
  IndexValuation env = v;
  return eval(f, world, env);
}

bool ScenarioEvaluator::holds(const Formula& f) {
  check(f);
  if (!f.free_vars().empty()) throw EvalError("scenario truth is defined for sentences only");
  if (s_.lang == Lang::kStat) {
    IndexValuation env;
    return eval(f, 0, env);
  }
  return extension(f, {}) == CofiniteSet::all();
}

bool eval_scenario(const Scenario& s, const Formula& f) {
  ScenarioEvaluator e(s);
  return e.holds(f);
}

// ---------------------------------------------------------------------------

namespace {

Scenario lottery_like(const std::string& name, const std::string& summary, std::shared_ptr<const CountableMeasure> m) {
  Scenario s;
  s.name = name;
  s.summary = summary;
  s.lang = Lang::kSubj;
  s.vocab.add_predicate("Winner", 1);
  s.atom = [](const std::string&, const std::vector<long>& args, long w) { return args[0] == w; };
  s.func = [](const std::string& f, const std::vector<long>&, long) -> long {
    throw EvalError("unknown function '" + f + "'");
  };
  s.measure = std::move(m);
  return s;
}

}  // namespace

std::vector<std::string> builtin_scenarios() {
  return {"lottery", "crooked", "possibility-lottery", "preferential-chain", "married", "tweety-nonrigid",
          "null-lottery"};
}

Scenario builtin(const std::string& name) {
  if (name == "lottery")
    return lottery_like(name, "Winner at w_i is {d_i}; Pl: empty 0, finite 1/2, infinite 1",
                        std::make_shared<CofiniteMeasure>(CofiniteMeasure::Kind::kLottery));
  if (name == "crooked")
    return lottery_like(name, "as lottery, but finite sets containing w1 get 3/4",
                        std::make_shared<CofiniteMeasure>(CofiniteMeasure::Kind::kCrooked));
  if (name == "possibility-lottery")
    return lottery_like(name, "as lottery, with Poss(w_i) = i/(i+1)", std::make_shared<PossibilityLotteryMeasure>());
  if (name == "preferential-chain")
    return lottery_like(name, "as lottery, with ... w3 < w2 < w1 (higher index preferred)",
                        std::make_shared<PreferentialChainMeasure>());
  if (name == "null-lottery")
    return lottery_like(name, "as lottery, but every finite set has plausibility 0",
                        std::make_shared<CofiniteMeasure>(CofiniteMeasure::Kind::kNull));
  if (name == "tweety-nonrigid") {
    Scenario s;
    s.name = name;
    s.summary = "Tweety at w_i is d_i; every d is a bird; d_i alone does not fly at w_i; lottery measure";
    s.lang = Lang::kSubj;
    s.vocab.add_predicate("Bird", 1);
    s.vocab.add_predicate("Fly", 1);
    s.vocab.add_function("Tweety", 0);
    s.atom = [](const std::string& p, const std::vector<long>& args, long w) {
      return p == "Bird" ? true : args[0] != w;
    };
    s.func = [](const std::string&, const std::vector<long>&, long w) { return w; };
    s.measure = std::make_shared<CofiniteMeasure>(CofiniteMeasure::Kind::kLottery);
    return s;
  }
  if (name == "married") {
    Scenario s;
    s.name = name;
    s.summary = "Dom = {0,1,2,...}, Married = {(2i,2i+1),(2i+1,2i)}; cofinite lottery measure on one coordinate";
    s.lang = Lang::kStat;
    s.min_index = 0;
    s.vocab.add_predicate("Married", 2);
    s.atom = [](const std::string&, const std::vector<long>& args, long) {
      return args[0] != args[1] && args[0] / 2 == args[1] / 2;
    };
    s.func = [](const std::string& f, const std::vector<long>&, long) -> long {
      throw EvalError("unknown function '" + f + "'");
    };
    s.neighbours = [](long d) { return std::vector<long>{d ^ 1}; };
    s.measure = std::make_shared<CofiniteMeasure>(CofiniteMeasure::Kind::kLottery);
    return s;
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

Formula lottery_each_loses() { return parse("forall x (true => ~Winner(x))", Lang::kSubj); }
Formula lottery_someone_wins() { return parse("true => exists x Winner(x)", Lang::kSubj); }
Formula lottery_nobody_wins() { return parse("true => forall x ~Winner(x)", Lang::kSubj); }
Formula lottery_formula() { return conj(lottery_each_loses(), lottery_someone_wins()); }

Formula crooked_formula() {
  return parse("exists y forall x (x != y -> ((Winner(x) | Winner(y)) => Winner(y)))", Lang::kSubj);
}

Formula tweety_kb(bool rigid, bool consistent) {
  Formula kb = parse("forall x (Bird(x) => Fly(x))", Lang::kSubj);
  kb = conj(kb, parse("true => Bird(Tweety) & ~Fly(Tweety)", Lang::kSubj));
  if (rigid) kb = conj(parse("exists x N (x = Tweety)", Lang::kSubj), kb);
  if (consistent) kb = conj(kb, parse("~(true => false)", Lang::kSubj));
  return kb;
}

std::string InstanceReport::text() const {
  std::ostringstream out;
  out << condition << " instance\n";
  for (const auto& [set, value] : values) out << "  Pl(" << set << ") = " << value << "\n";
  out << "  premise " << (premise ? "holds" : "fails") << ", conclusion " << (conclusion ? "holds" : "fails")
      << ": " << condition << (holds() ? " holds" : " fails") << "\n";
  return out.str();
}

InstanceReport a2star_witness(const Scenario& s) {
  const auto* m = dynamic_cast<const CofiniteMeasure*>(s.measure.get());
  const std::vector<long> reps{1, 2, 3, 17};
  InstanceReport r;
  if (s.name == "lottery" && m) {
    // A0 = ∅, Ai = {wi}, A = W
    r.condition = "A2*";
    CofiniteSet a0 = CofiniteSet::empty(), whole = CofiniteSet::all();
    r.premise = std::all_of(reps.begin(), reps.end(), [&](long i) {
      CofiniteSet ai = CofiniteSet::finite({i});
      return m->less(ai, whole.minus(ai));
    });
    r.conclusion = m->less(whole.minus(a0), a0);
    r.values = {{"A-Ai", m->value(whole.minus(CofiniteSet::finite({2})))},
                {"Ai", m->value(CofiniteSet::finite({2}))},
                {"A0", m->value(a0)},
                {"A-A0", m->value(whole.minus(a0))}};
    return r;
  }
  if (s.name == "crooked" && m) {
    // A0 = {w1}, Ai = {wi} for i > 1
    r.condition = "A2†";
    CofiniteSet a0 = CofiniteSet::finite({1}), whole = CofiniteSet::all();
    r.premise = std::all_of(reps.begin() + 1, reps.end(),
                            [&](long i) { return m->less(CofiniteSet::finite({i}), a0); });
    r.conclusion = !m->less(a0, whole.minus(a0));
    r.values = {{"A0", m->value(a0)}, {"Ai", m->value(CofiniteSet::finite({2}))}, {"A-A0", m->value(whole.minus(a0))}};
    return r;
  }
  throw std::invalid_argument("no infinitary witness is defined for scenario '" + s.name + "'");
}

}  // namespace plauslab
