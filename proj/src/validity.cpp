#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "plauslab/axioms.hpp"
#include "plauslab/error.hpp"

namespace plauslab {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct Target {
  Lang lang = Lang::kSubj;
  std::vector<std::string> schemas;
  std::optional<Formula> formula;
};

Target resolve(const std::string& target) {
  Target t;
  try {
    t.schemas = expand_schema_set(target);
    t.lang = find_schema(t.schemas.front()).lang;
    return t;
  } catch (const std::invalid_argument&) {
  }
  try {
    t.formula = parse(target, Lang::kSubj);
    t.lang = Lang::kSubj;
  } catch (const ParseError&) {
    t.formula = parse(target, Lang::kStat);
    t.lang = Lang::kStat;
  }
  return t;
}

FormulaShape subj_shape() {
  FormulaShape s;
  s.lang = Lang::kSubj;
  s.predicates = {{"P", 1}, {"Q", 2}, {"R", 0}};
  s.constants = {"c", "d"};
  s.functions = {{"f", 1}};
  s.variables = {"x", "y", "z"};
  s.max_depth = 2;
  return s;
}

FormulaShape stat_shape(int slots) {
  FormulaShape s;
  s.lang = Lang::kStat;
  s.predicates = {{"P", 1}, {"Q", 2}, {"R", 0}};
  s.constants = {"c", "d"};
  for (int i = 1; i <= slots; ++i) s.variables.push_back("x" + std::to_string(i));
  s.max_depth = 2;
  s.nec = false;
  return s;
}

Vocabulary vocabulary_of(const FormulaShape& shape) {
  Vocabulary v;
  for (const auto& [n, a] : shape.predicates) v.add_predicate(n, a);
  for (const std::string& c : shape.constants) v.add_function(c, 0);
  for (const auto& [n, a] : shape.functions) v.add_function(n, a);
  return v;
}

std::string valuation_text(const std::vector<std::string>& vars, const std::vector<Element>& vals,
                           const std::vector<std::string>& dom) {
  std::string s = "{";
  for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? ", " : "") + vars[i] + "=" + dom[vals[i]];
  return s + "}";
}

std::string subj_witness(const SubjectiveStructure& s, const Formula& f) {
  const auto& fv = f.free_vars();
  const int d = s.dom_size();
  std::size_t combos = table_size(static_cast<int>(fv.size()), d);
  SubjectiveEvaluator ev(s);
  for (std::size_t code = 0; code < combos; ++code) {
    std::vector<Element> vals = tuple_decode(code, static_cast<int>(fv.size()), d);
    Valuation v;
    for (std::size_t i = 0; i < fv.size(); ++i) v[fv[i]] = vals[i];
    for (int w = 0; w < s.world_count(); ++w)
      if (!ev.holds(f, w, v))
        return "instance: " + print(f) + "\nfails at world " + s.worlds()[w] + " under " +
               valuation_text(fv, vals, s.dom()) + "\nstructure:\n" + s.describe();
  }
  return "instance: " + print(f) + "\nstructure:\n" + s.describe();
}

std::string stat_witness(const StatisticalStructure& s, const Formula& f) {
  StatisticalEvaluator ev(s);
  Mask bad = s.all_points() & ~ev.extension(f);
  std::string where = bad ? "\nfails at valuation " + s.point_name(members(bad).front()) : "";
  return "instance: " + print(f) + where + "\nstructure:\n" + s.describe();
}

int max_stat_index(const Formula& f) {
  int m = 0;
  std::set<std::string> vars;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    for (const Term& t : g.terms()) t.collect_vars(vars);
    if (g.op() == Op::kForall || g.op() == Op::kExists) vars.insert(g.symbol());
    for (const std::string& v : g.bound()) vars.insert(v);
    for (const Formula& k : g.children()) walk(k);
  };
  walk(f);
  for (const std::string& v : vars) m = std::max(m, stat_index(v));
  return m;
}

}  // namespace

std::string ValidityReport::text() const {
  std::ostringstream out;
  out << target << " on " << measure_class << ": " << instances << " instances over " << trials << " structures, "
      << violations << " violations\n";
  if (!witness.empty()) out << "first violation:\n" << witness << "\n";
  return out.str();
}

ValidityReport test_validity(const std::string& target, MeasureClass c, int trials, int instances_per_trial,
                             std::uint64_t seed, const SizeBounds& bounds) {
  if (bounds.max_dom < 1 || bounds.max_worlds < 1 || bounds.max_slots < 1)
    throw std::invalid_argument("size bounds must be positive");
  if (bounds.max_worlds > max_worlds())
    throw CapacityError("at most " + std::to_string(max_worlds()) + " worlds");
  Target t = resolve(target);
  Rng rng(seed);
  ValidityReport r;
  r.target = target;
  r.measure_class = to_string(c);
  r.trials = trials;
  auto record = [&](bool ok, const std::function<std::string()>& witness) {
    ++r.instances;
    if (ok) return;
    if (r.violations++ == 0) r.witness = witness();
  };

  if (t.lang == Lang::kSubj) {
    const FormulaShape shape = subj_shape();
    Vocabulary vocab = vocabulary_of(shape);
    if (t.formula) {
      vocab = Vocabulary();
      vocab.absorb(*t.formula);
    }
    for (int trial = 0; trial < trials; ++trial) {
      const int dom = uniform(rng, 1, bounds.max_dom);
      const int worlds = uniform(rng, 1, bounds.max_worlds);
      SubjectiveStructure s = random_subjective(rng, c, vocab, dom, worlds);
      SubjectiveEvaluator ev(s);
      if (t.formula) {
        record(ev.valid(*t.formula), [&] { return subj_witness(s, *t.formula); });
        continue;
      }
      for (const std::string& name : t.schemas)
        for (int i = 0; i < instances_per_trial; ++i) {
          Formula f = random_instance(rng, name, shape);
          record(ev.valid(f), [&] { return subj_witness(s, f); });
        }
    }
    return r;
  }

  if (c != MeasureClass::kQpl && c != MeasureClass::kKappa)
    throw std::invalid_argument("statistical sweeps use the qpl or kappa class");
  int min_slots = 1;
  if (t.formula) min_slots = std::max(1, max_stat_index(*t.formula));
  auto needs_two = [](const std::string& name) { return name == "Ren" || name == "forall3'"; };
  if (!t.schemas.empty() && std::all_of(t.schemas.begin(), t.schemas.end(), needs_two)) min_slots = 2;
  const int max_slots = std::max(bounds.max_slots, min_slots);
  Vocabulary vocab = vocabulary_of(stat_shape(1));
  if (t.formula) {
    vocab = Vocabulary();
    vocab.absorb(*t.formula);
  }
  for (int trial = 0; trial < trials; ++trial) {
    const int dom = uniform(rng, 1, bounds.max_dom);
    const int slots = uniform(rng, min_slots, max_slots);
    StatisticalStructure s = random_statistical(rng, c, vocab, dom, slots);
    StatisticalEvaluator ev(s);
    if (t.formula) {
      record(ev.valid(*t.formula), [&] { return stat_witness(s, *t.formula); });
      continue;
    }
    const FormulaShape shape = stat_shape(slots);
    for (const std::string& name : t.schemas) {
      if (slots < 2 && needs_two(name)) continue;
      for (int i = 0; i < instances_per_trial; ++i) {
        Formula f = random_instance(rng, name, shape);
        record(ev.valid(f), [&] { return stat_witness(s, f); });
      }
    }
  }
  return r;
}

}  // namespace plauslab
