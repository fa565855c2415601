#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "plauslab/axioms.hpp"
#include "plauslab/backends.hpp"
#include "plauslab/catalogue.hpp"
#include "plauslab/error.hpp"
#include "plauslab/sat.hpp"

namespace plauslab {

namespace {

using Lit = SatSolver::Lit;
using Env = std::vector<std::pair<std::string, Element>>;

// Tseitin encoding of "f fails somewhere" over a fixed domain size and
// measure; predicate and function tables of every world are the unknowns.
class Encoder {
 public:
  Encoder(const Vocabulary& vocab, int dom, const SetPlausibility& pl) : vocab_(vocab), d_(dom), pl_(pl), n_(pl.size()) {
    true_ = SatSolver::pos(sat_.new_var());
    sat_.add_clause({true_});
    for (const auto& [name, arity] : vocab.predicates()) {
      auto& tables = preds_[name];
      tables.resize(n_);
      for (auto& t : tables)
        for (std::size_t i = 0; i < table_size(arity, d_); ++i) t.push_back(SatSolver::pos(sat_.new_var()));
    }
    for (const auto& [name, arity] : vocab.functions()) {
      auto& tables = funcs_[name];
      tables.resize(n_);
      for (auto& t : tables)
        for (std::size_t i = 0; i < table_size(arity, d_); ++i) {
          std::vector<Lit> onehot;
          for (int e = 0; e < d_; ++e) onehot.push_back(SatSolver::pos(sat_.new_var()));
          exactly_one(onehot);
          t.push_back(onehot);
        }
    }
    const Mask all = full_mask(n_);
    holds_.resize(std::size_t{1} << (2 * n_));
    for (Mask a = 0; a <= all; ++a)
      for (Mask b = 0; b <= all; ++b) holds_[a << n_ | b] = conditional_holds(pl_, a, b);
  }

  bool refute(const Formula& f) {
    std::vector<Lit> goal;
    const auto& fv = f.free_vars();
    const std::size_t combos = table_size(static_cast<int>(fv.size()), d_);
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<Element> vals = tuple_decode(code, static_cast<int>(fv.size()), d_);
      Env env;
      for (std::size_t i = 0; i < fv.size(); ++i) env.emplace_back(fv[i], vals[i]);
      for (int w = 0; w < n_; ++w) goal.push_back(SatSolver::negate(encode(f, w, env)));
    }
    add(goal);
    return sat_.solve();
  }

  std::vector<Interpretation> decode() const {
    std::vector<Interpretation> out(n_);
    for (const auto& [name, tables] : preds_)
      for (int w = 0; w < n_; ++w)
        for (Lit l : tables[w]) out[w].preds[name].push_back(static_cast<char>(value(l)));
    for (const auto& [name, tables] : funcs_)
      for (int w = 0; w < n_; ++w)
        for (const auto& onehot : tables[w]) {
          Element v = 0;
          for (int e = 0; e < d_; ++e)
            if (value(onehot[e])) v = e;
          out[w].funcs[name].push_back(v);
        }
    return out;
  }

 private:
  Lit constant(bool b) const { return b ? true_ : SatSolver::negate(true_); }
  bool is_true(Lit l) const { return l == true_; }
  bool is_false(Lit l) const { return l == SatSolver::negate(true_); }
  bool value(Lit l) const { return sat_.model(l >> 1) != static_cast<bool>(l & 1); }

  void add(std::vector<Lit> clause) {
    std::vector<Lit> kept;
    for (Lit l : clause) {
      if (is_true(l)) return;
      if (!is_false(l)) kept.push_back(l);
    }
    sat_.add_clause(std::move(kept));
  }

  void exactly_one(const std::vector<Lit>& ls) {
    add(ls);
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j) add({SatSolver::negate(ls[i]), SatSolver::negate(ls[j])});
  }

  Lit all_of(const std::vector<Lit>& ls) {
    std::vector<Lit> kept;
    for (Lit l : ls) {
      if (is_false(l)) return l;
      if (!is_true(l)) kept.push_back(l);
    }
    if (kept.empty()) return true_;
    if (kept.size() == 1) return kept[0];
    Lit g = SatSolver::pos(sat_.new_var());
    std::vector<Lit> back{g};
    for (Lit l : kept) {
      add({SatSolver::negate(g), l});
      back.push_back(SatSolver::negate(l));
    }
    add(back);
    return g;
  }

  Lit any_of(const std::vector<Lit>& ls) {
    std::vector<Lit> neg;
    for (Lit l : ls) neg.push_back(SatSolver::negate(l));
    return SatSolver::negate(all_of(neg));
  }

  Lit equiv(Lit a, Lit b) {
    return any_of({all_of({a, b}), all_of({SatSolver::negate(a), SatSolver::negate(b)})});
  }

  static Element lookup(const Env& env, const std::string& v) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == v) return it->second;
    throw EvalError("free variable '" + v + "' has no value");
  }

  // One-hot literals for the value of t at world w.
  std::vector<Lit> term(const Term& t, int w, const Env& env) {
    std::vector<Lit> out(d_);
    if (t.is_var()) {
      Element e = lookup(env, t.name());
      for (int i = 0; i < d_; ++i) out[i] = constant(i == e);
      return out;
    }
    std::vector<std::vector<Lit>> args;
    for (const Term& a : t.args()) args.push_back(term(a, w, env));
    const auto& table = funcs_.at(t.name())[w];
    std::vector<std::vector<Lit>> cases(d_);
    for (std::size_t code = 0; code < table.size(); ++code) {
      Lit match = tuple_match(args, code);
      if (is_false(match)) continue;
      for (int e = 0; e < d_; ++e) cases[e].push_back(all_of({match, table[code][e]}));
    }
    for (int e = 0; e < d_; ++e) out[e] = any_of(cases[e]);
    return out;
  }

  Lit tuple_match(const std::vector<std::vector<Lit>>& args, std::size_t code) {
    std::vector<Element> tuple = tuple_decode(code, static_cast<int>(args.size()), d_);
    std::vector<Lit> parts;
    for (std::size_t i = 0; i < args.size(); ++i) parts.push_back(args[i][tuple[i]]);
    return all_of(parts);
  }

  Lit encode(const Formula& f, int w, Env& env) {
    const bool world_free = f.op() == Op::kCond;
    std::vector<Element> key_vals;
    for (const std::string& v : f.free_vars()) key_vals.push_back(lookup(env, v));
    auto key = std::make_tuple(f.id(), world_free ? -1 : w, key_vals);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Lit out = build(f, w, env);
    memo_.emplace(std::move(key), out);
    return out;
  }

  Lit build(const Formula& f, int w, Env& env) {
    switch (f.op()) {
      case Op::kTrue: return true_;
      case Op::kFalse: return constant(false);
      case Op::kAtom: {
        std::vector<std::vector<Lit>> args;
        for (const Term& t : f.terms()) args.push_back(term(t, w, env));
        const auto& table = preds_.at(f.symbol())[w];
        std::vector<Lit> cases;
        for (std::size_t code = 0; code < table.size(); ++code) cases.push_back(all_of({tuple_match(args, code), table[code]}));
        return any_of(cases);
      }
      case Op::kEq: {
        std::vector<Lit> a = term(f.terms()[0], w, env);
        std::vector<Lit> b = term(f.terms()[1], w, env);
        std::vector<Lit> cases;
        for (int e = 0; e < d_; ++e) cases.push_back(all_of({a[e], b[e]}));
        return any_of(cases);
      }
      case Op::kNot: return SatSolver::negate(encode(f.child(0), w, env));
      case Op::kAnd: return all_of({encode(f.child(0), w, env), encode(f.child(1), w, env)});
      case Op::kOr: return any_of({encode(f.child(0), w, env), encode(f.child(1), w, env)});
      case Op::kImplies: return any_of({SatSolver::negate(encode(f.child(0), w, env)), encode(f.child(1), w, env)});
      case Op::kIff: return equiv(encode(f.child(0), w, env), encode(f.child(1), w, env));
      case Op::kForall:
      case Op::kExists: {
        std::vector<Lit> parts;
        for (int e = 0; e < d_; ++e) {
          env.emplace_back(f.symbol(), e);
          parts.push_back(encode(f.child(0), w, env));
          env.pop_back();
        }
        return f.op() == Op::kForall ? all_of(parts) : any_of(parts);
      }
      case Op::kCond: return conditional(f, env);
      default: throw std::invalid_argument("countermodel search covers the subjective language only");
    }
  }

  // The conditional's truth is a function of which worlds satisfy phi and
  // phi & psi; one clause per combination pins it to the measure.
  Lit conditional(const Formula& f, Env& env) {
    std::vector<Lit> a(n_), b(n_);
    for (int w = 0; w < n_; ++w) {
      a[w] = encode(f.child(0), w, env);
      b[w] = encode(f.child(1), w, env);
    }
    Lit c = SatSolver::pos(sat_.new_var());
    // state[w]: 0 outside phi, 1 in phi & psi, 2 in phi & ~psi.
    std::vector<int> state(n_, 0);
    while (true) {
      Mask am = 0, bm = 0;
      std::vector<Lit> clause;
      for (int w = 0; w < n_; ++w) {
        if (state[w] == 0) {
          clause.push_back(a[w]);
          continue;
        }
        am |= Mask{1} << w;
        clause.push_back(SatSolver::negate(a[w]));
        if (state[w] == 1) bm |= Mask{1} << w;
        clause.push_back(state[w] == 1 ? SatSolver::negate(b[w]) : b[w]);
      }
      clause.push_back(holds_[am << n_ | bm] ? c : SatSolver::negate(c));
      add(clause);
      int i = 0;
      while (i < n_ && ++state[i] == 3) state[i++] = 0;
      if (i == n_) break;
    }
    return c;
  }

  const Vocabulary& vocab_;
  int d_;
  const SetPlausibility& pl_;
  int n_;
  SatSolver sat_;
  Lit true_ = 0;
  std::map<std::string, std::vector<std::vector<Lit>>> preds_;
  std::map<std::string, std::vector<std::vector<std::vector<Lit>>>> funcs_;
  std::vector<char> holds_;
  std::map<std::tuple<const void*, int, std::vector<Element>>, Lit> memo_;
};

// Nondecreasing rank vectors starting at 0 without gaps, ∞ allowed at the end:
// every ranking shape up to a renaming of worlds.
std::vector<std::vector<Rank>> rank_shapes(int n) {
  std::vector<std::vector<Rank>> out;
  std::vector<Rank> cur{0};
  std::function<void()> grow = [&]() {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    const Rank last = cur.back();
    std::vector<Rank> next;
    if (last == kInfiniteRank) {
      next = {kInfiniteRank};
    } else {
      next = {last, last + 1, kInfiniteRank};
    }
    for (Rank r : next) {
      cur.push_back(r);
      grow();
      cur.pop_back();
    }
  };
  grow();
  return out;
}

std::vector<StrictOrder> strict_orders(int n) {
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) cells.emplace_back(a, b);
  std::vector<StrictOrder> out;
  for (unsigned long code = 0; code < (1ul << cells.size()); ++code) {
    std::vector<Mask> before(n, 0);
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (code >> i & 1) before[cells[i].second] |= Mask{1} << cells[i].first;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (contains(before[b], a) && (contains(before[a], b) || !subset_of(before[a], before[b]))) ok = false;
    if (ok) out.emplace_back(n, before);
  }
  return out;
}

std::vector<std::shared_ptr<const SetPlausibility>> measures(MeasureClass c, int n) {
  std::vector<std::shared_ptr<const SetPlausibility>> out;
  switch (c) {
    case MeasureClass::kQpl:
      for (const auto& m : qualitative_catalogue(n)) out.push_back(m);
      break;
    case MeasureClass::kKappa:
      for (const auto& r : rank_shapes(n)) out.push_back(std::make_shared<KappaRanking>(r));
      break;
    case MeasureClass::kPoss:
      for (const auto& r : rank_shapes(n)) {
        std::vector<Rational> w;
        for (Rank k : r) w.push_back(k == kInfiniteRank ? Rational(0) : Rational(1, static_cast<long long>(k) + 1));
        out.push_back(std::make_shared<PossibilityMeasure>(w));
      }
      break;
    case MeasureClass::kEps:
      for (const auto& r : rank_shapes(n)) {
        std::vector<PpdTerm> terms;
        for (Rank k : r) terms.push_back({Rational(1), k});
        out.push_back(std::make_shared<PpdPlausibility>(EpsPolyPpd(terms)));
      }
      break;
    case MeasureClass::kPref:
    case MeasureClass::kPrefWf:
      for (const StrictOrder& o : strict_orders(n))
        out.push_back(std::make_shared<PreferentialPlausibility>(PreferentialOrder(o)));
      break;
    case MeasureClass::kProb: {
      std::vector<int> w(n, 0);
      std::function<void(int, int)> grow = [&](int i, int lo) {
        if (i == n) {
          if (w.back() > 0) out.push_back(std::make_shared<ProbabilityPlausibility>(w));
          return;
        }
        for (int v = lo; v <= 3; ++v) {
          w[i] = v;
          grow(i + 1, v);
        }
      };
      grow(0, 0);
      break;
    }
  }
  return out;
}

}  // namespace

std::string SearchReport::text() const {
  std::ostringstream out;
  if (countermodel) {
    const Countermodel& m = *countermodel;
    out << "countermodel after " << structures << " structures: |Dom|=" << m.dom << ", |W|=" << m.worlds << "\n"
        << m.structure << "falsified at world " << m.model->worlds()[m.world] << " under {";
    bool first = true;
    for (const auto& [v, e] : m.valuation) {
      out << (first ? "" : ", ") << v << "=" << e;
      first = false;
    }
    out << "}\n";
  } else {
    out << "none within bounds: " << structures << " structures searched\n";
  }
  return out.str();
}

SearchReport find_countermodel(const Formula& input, MeasureClass c, const SizeBounds& bounds) {
  if (bounds.max_dom < 1 || bounds.max_worlds < 1) throw std::invalid_argument("size bounds must be positive");
  if (bounds.max_dom > 4) throw CapacityError("countermodel search allows |Dom| <= 4");
  const int world_cap = c == MeasureClass::kQpl ? 4 : 6;
  if (bounds.max_worlds > world_cap)
    throw CapacityError("countermodel search for " + to_string(c) + " allows |W| <= " + std::to_string(world_cap));
  if (input.has_stat_cond()) throw std::invalid_argument("countermodel search covers the subjective language only");

  const auto start = std::chrono::steady_clock::now();
  const Formula f = desugar(input);
  Vocabulary vocab;
  vocab.absorb(f);
  SearchReport report;
  for (int n = 1; n <= bounds.max_worlds; ++n) {
    const auto candidates = measures(c, n);
    for (int d = 1; d <= bounds.max_dom; ++d) {
      std::vector<std::string> dnames, wnames;
      for (int i = 0; i < d; ++i) dnames.push_back("d" + std::to_string(i + 1));
      for (int i = 0; i < n; ++i) wnames.push_back("w" + std::to_string(i + 1));
      for (const auto& pl : candidates) {
        ++report.structures;
        Encoder enc(vocab, d, *pl);
        if (!enc.refute(f)) continue;
        auto s = std::make_shared<SubjectiveStructure>(vocab, dnames, wnames, enc.decode(), pl);
        SubjectiveEvaluator ev(*s);
        const auto& fv = input.free_vars();
        for (std::size_t code = 0; code < table_size(static_cast<int>(fv.size()), d) && !report.countermodel; ++code) {
          std::vector<Element> vals = tuple_decode(code, static_cast<int>(fv.size()), d);
          Valuation v;
          for (std::size_t i = 0; i < fv.size(); ++i) v[fv[i]] = vals[i];
          for (int w = 0; w < n; ++w) {
            if (ev.holds(input, w, v)) continue;
            Countermodel m;
            m.model = s;
            m.structure = s->describe();
            m.world = w;
            for (const auto& [name, e] : v) m.valuation[name] = dnames[e];
            m.dom = d;
            m.worlds = n;
            report.countermodel = m;
            break;
          }
        }
        if (!report.countermodel) throw std::logic_error("SAT model of a countermodel failed the evaluator re-check");
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
      }
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace plauslab
