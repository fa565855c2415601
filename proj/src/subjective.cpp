#include "plauslab/subjective.hpp"

#include <algorithm>
#include <sstream>

#include "plauslab/error.hpp"

namespace plauslab {

std::size_t tuple_code(const std::vector<Element>& args, int dom) {
  std::size_t code = 0;
  for (auto it = args.rbegin(); it != args.rend(); ++it) code = code * dom + static_cast<std::size_t>(*it);
  return code;
}

std::vector<Element> tuple_decode(std::size_t code, int arity, int dom) {
  std::vector<Element> out(arity);
  for (int i = 0; i < arity; ++i) {
    out[i] = static_cast<Element>(code % dom);
    code /= dom;
  }
  return out;
}

std::size_t table_size(int arity, int dom) {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) {
    n *= static_cast<std::size_t>(dom);
    if (n > (1U << 20)) throw CapacityError("symbol table too large");
  }
  return n;
}

bool Interpretation::pred(const std::string& name, const std::vector<Element>& args, int dom) const {
  auto it = preds.find(name);
  if (it == preds.end()) throw EvalError("predicate '" + name + "' is not interpreted");
  return it->second.at(tuple_code(args, dom));
}

Element Interpretation::func(const std::string& name, const std::vector<Element>& args, int dom) const {
  auto it = funcs.find(name);
  if (it == funcs.end()) throw EvalError("function '" + name + "' is not interpreted");
  return it->second.at(tuple_code(args, dom));
}

void Interpretation::validate(const Vocabulary& vocab, int dom, const std::string& where) const {
  for (const auto& [name, arity] : vocab.predicates()) {
    auto it = preds.find(name);
    if (it == preds.end()) throw ValidationError(where + ": predicate '" + name + "' is not interpreted");
    if (it->second.size() != table_size(arity, dom))
      throw ValidationError(where + ": predicate '" + name + "' has a table of the wrong size");
  }
  for (const auto& [name, arity] : vocab.functions()) {
    auto it = funcs.find(name);
    if (it == funcs.end()) throw ValidationError(where + ": function '" + name + "' is not interpreted");
    if (it->second.size() != table_size(arity, dom))
      throw ValidationError(where + ": function '" + name + "' is not total");
    for (Element e : it->second)
      if (e < 0 || e >= dom) throw ValidationError(where + ": function '" + name + "' leaves the domain");
  }
  for (const auto& [name, table] : preds)
    if (!vocab.predicate_arity(name)) throw ValidationError(where + ": predicate '" + name + "' is not in the vocabulary");
  for (const auto& [name, table] : funcs)
    if (!vocab.function_arity(name)) throw ValidationError(where + ": function '" + name + "' is not in the vocabulary");
}

SubjectiveStructure::SubjectiveStructure(Vocabulary vocab, std::vector<std::string> dom,
                                         std::vector<std::string> worlds, std::vector<Interpretation> interp,
                                         std::shared_ptr<const SetPlausibility> pl)
    : vocab_(std::move(vocab)), dom_(std::move(dom)), worlds_(std::move(worlds)), interp_(std::move(interp)),
      pl_(std::move(pl)) {
  if (dom_.empty()) throw ValidationError("the domain must be nonempty");
  if (worlds_.empty()) throw ValidationError("a structure needs at least one world");
  if (world_count() > max_worlds())
    throw CapacityError("structures are limited to " + std::to_string(max_worlds()) + " worlds");
  if (static_cast<int>(interp_.size()) != world_count())
    throw ValidationError("every world needs an interpretation");
  if (!pl_) throw ValidationError("missing plausibility measure");
  if (pl_->size() != world_count()) throw ValidationError("the plausibility measure must range over the worlds");
  for (int w = 0; w < world_count(); ++w) interp_[w].validate(vocab_, dom_size(), "world " + worlds_[w]);
}

std::string SubjectiveStructure::describe() const {
  std::ostringstream out;
  out << "dom {";
  for (int d = 0; d < dom_size(); ++d) out << (d ? "," : "") << dom_[d];
  out << "}, worlds {";
  for (int w = 0; w < world_count(); ++w) out << (w ? "," : "") << worlds_[w];
  out << "}\n";
  for (int w = 0; w < world_count(); ++w) {
    out << "  " << worlds_[w] << ":";
    for (const auto& [name, table] : interp_[w].funcs) {
      int arity = *vocab_.function_arity(name);
      if (arity == 0) {
        out << " " << name << "=" << dom_[table[0]];
        continue;
      }
      for (std::size_t c = 0; c < table.size(); ++c) {
        auto args = tuple_decode(c, arity, dom_size());
        out << " " << name << "(";
        for (int i = 0; i < arity; ++i) out << (i ? "," : "") << dom_[args[i]];
        out << ")=" << dom_[table[c]];
      }
    }
    for (const auto& [name, table] : interp_[w].preds) {
      int arity = *vocab_.predicate_arity(name);
      out << " " << name << "={";
      bool first = true;
      for (std::size_t c = 0; c < table.size(); ++c) {
        if (!table[c]) continue;
        out << (first ? "" : ",");
        first = false;
        auto args = tuple_decode(c, arity, dom_size());
        if (arity == 0) {
          out << "()";
          continue;
        }
        out << "(";
        for (int i = 0; i < arity; ++i) out << (i ? "," : "") << dom_[args[i]];
        out << ")";
      }
      out << "}";
    }
    out << "\n";
  }
  out << "  Pl:";
  const Mask subsets = Mask{1} << world_count();
  for (Mask a = 0; a < subsets; ++a) out << " " << format_set(a, worlds_) << "=" << pl_->label(a);
  out << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

SubjectiveEvaluator::SubjectiveEvaluator(const SubjectiveStructure& s, std::ostream* trace) : s_(s), trace_(trace) {}

void SubjectiveEvaluator::check_vocabulary(const Formula& f) const {
  if (f.has_stat_cond()) throw EvalError("statistical conditionals cannot be evaluated in a subjective structure");
  Vocabulary v;
  v.absorb(f);
  for (const auto& [name, arity] : v.predicates())
    if (s_.vocab().predicate_arity(name) != arity)
      throw EvalError("predicate '" + name + "/" + std::to_string(arity) + "' is not in the structure's vocabulary");
  for (const auto& [name, arity] : v.functions())
    if (s_.vocab().function_arity(name) != arity)
      throw EvalError("function '" + name + "/" + std::to_string(arity) + "' is not in the structure's vocabulary");
}

Element SubjectiveEvaluator::lookup(const std::string& var, const Env& env) const {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == var) return it->second;
  throw EvalError("variable '" + var + "' is unbound");
}

Element SubjectiveEvaluator::term_value(const Term& t, int world, const Env& env) const {
  if (t.is_var()) return lookup(t.name(), env);
  std::vector<Element> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(term_value(a, world, env));
  return s_.interp(world).func(t.name(), args, s_.dom_size());
}

bool SubjectiveEvaluator::conditional(const Formula& f, Mask a, Mask b, const Env& env) {
  bool result = conditional_holds(s_.pl(), a, b);
  if (trace_) {
    std::string binding;
    for (const std::string& v : f.free_vars())
      binding += (binding.empty() ? " [" : ",") + v + "=" + s_.dom()[lookup(v, env)];
    if (!binding.empty()) binding += "]";
    const auto& w = s_.worlds();
    *trace_ << "cond " << print(f) << binding << ": [[lhs]]=" << format_set(a, w) << " A&B=" << format_set(a & b, w)
            << " A-B=" << format_set(a & ~b, w) << " Pl(A)=" << s_.pl().label(a)
            << " Pl(A&B)=" << s_.pl().label(a & b) << " Pl(A-B)=" << s_.pl().label(a & ~b) << " -> "
            << (result ? "true" : "false") << "\n";
  }
  return result;
}

Mask SubjectiveEvaluator::ext(const Formula& f, Env& env) {
  const Mask all = s_.all_worlds();
  const int n = s_.world_count();
  switch (f.op()) {
    case Op::kTrue: return all;
    case Op::kFalse: return 0;
    case Op::kAtom: {
      Mask out = 0;
      std::vector<Element> args(f.terms().size());
      for (int w = 0; w < n; ++w) {
        for (std::size_t i = 0; i < args.size(); ++i) args[i] = term_value(f.terms()[i], w, env);
        if (s_.interp(w).pred(f.symbol(), args, s_.dom_size())) out |= Mask{1} << w;
      }
      return out;
    }
    case Op::kEq: {
      Mask out = 0;
      for (int w = 0; w < n; ++w)
        if (term_value(f.terms()[0], w, env) == term_value(f.terms()[1], w, env)) out |= Mask{1} << w;
      return out;
    }
    case Op::kNot: return all & ~ext(f.child(0), env);
    case Op::kAnd: {
      Mask a = ext(f.child(0), env);
      return a == 0 ? 0 : a & ext(f.child(1), env);
    }
    case Op::kOr: {
      Mask a = ext(f.child(0), env);
      return a == all ? all : a | ext(f.child(1), env);
    }
    case Op::kImplies: {
      Mask a = ext(f.child(0), env);
      return a == 0 ? all : (all & ~a) | ext(f.child(1), env);
    }
    case Op::kIff: {
      Mask a = ext(f.child(0), env);
      Mask b = ext(f.child(1), env);
      return all & ~(a ^ b);
    }
    case Op::kForall:
    case Op::kExists: {
      const bool universal = f.op() == Op::kForall;
      Mask out = universal ? all : 0;
      env.emplace_back(f.symbol(), 0);
      for (Element d = 0; d < s_.dom_size(); ++d) {
        env.back().second = d;
        Mask m = ext(f.child(0), env);
        out = universal ? (out & m) : (out | m);
        if (out == (universal ? 0 : all)) break;
      }
      env.pop_back();
      return out;
    }
    case Op::kCond:
    case Op::kNec: {
      std::vector<Element> key;
      key.reserve(f.free_vars().size());
      for (const std::string& v : f.free_vars()) key.push_back(lookup(v, env));
      auto memo_key = std::make_pair(f.id(), std::move(key));
      if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second ? all : 0;
      bool r;
      if (f.op() == Op::kCond) {
        Mask a = ext(f.child(0), env);
        Mask b = ext(f.child(1), env);
        r = conditional(f, a, b, env);
      } else {
        Mask a = all & ~ext(f.child(0), env);
        r = conditional(f, a, 0, env);
      }
      memo_.emplace(std::move(memo_key), r);
      return r ? all : 0;
    }
    case Op::kStatCond:
      throw EvalError("statistical conditionals cannot be evaluated in a subjective structure");
  }
  return 0;
}

Mask SubjectiveEvaluator::extension(const Formula& f, const Valuation& v) {
  check_vocabulary(f);
  // keys hold node addresses, which are only stable while f is alive
  memo_.clear();
  Env env;
  for (const std::string& var : f.free_vars()) {
    auto it = v.find(var);
    if (it == v.end()) throw EvalError("free variable '" + var + "' has no value");
    if (it->second < 0 || it->second >= s_.dom_size()) throw EvalError("variable '" + var + "' is outside the domain");
    env.emplace_back(var, it->second);
  }
  return ext(f, env);
}

bool SubjectiveEvaluator::holds(const Formula& f, int world, const Valuation& v) {
  if (world < 0 || world >= s_.world_count()) throw EvalError("no such world");
  return contains(extension(f, v), world);
}

bool SubjectiveEvaluator::valid(const Formula& f) {
  return extension(universal_closure(f), {}) == s_.all_worlds();
}

bool eval_subj(const SubjectiveStructure& s, int world, const Valuation& v, const Formula& f) {
  SubjectiveEvaluator e(s);
  return e.holds(f, world, v);
}

Mask extension(const SubjectiveStructure& s, const Valuation& v, const Formula& f) {
  SubjectiveEvaluator e(s);
  return e.extension(f, v);
}

bool check_rigid(const SubjectiveStructure& s, const std::string& constant, RigidityMode mode) {
  if (s.vocab().function_arity(constant) != 0) throw EvalError("'" + constant + "' is not a constant of the structure");
  if (mode == RigidityMode::kStrict) {
    Element first = s.interp(0).func(constant, {}, s.dom_size());
    for (int w = 1; w < s.world_count(); ++w)
      if (s.interp(w).func(constant, {}, s.dom_size()) != first) return false;
    return true;
  }
  std::string var = "x";
  Formula f = exists(var, nec(equals(Term::var(var), Term::func(constant))));
  return eval_subj(s, 0, {}, f);
}

}  // namespace plauslab
