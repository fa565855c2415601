#include "plauslab/axioms.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "plauslab/error.hpp"

namespace plauslab {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kSubjGroup = {"C0", "C1", "C2", "C3", "C4", "C5", "F1",
                                             "F2", "F3", "F4", "F5", "F6", "F7"};
const std::vector<std::string> kStatGroup = {"C0'", "C1'", "C2'", "C3'", "C4'", "R1'", "R2'", "U", "Ren"};

std::vector<Schema> build_schemas() {
  const Lang s = Lang::kSubj;
  const Lang t = Lang::kStat;
  return {
      {"C0", s, "propositional tautology phi", {"phi"}, {}, false, false},
      {"C1", s, "phi => phi", {"phi"}, {}, false, false},
      {"C2", s, "((phi => psi1) & (phi => psi2)) -> (phi => psi1 & psi2)", {"phi", "psi1", "psi2"}, {}, false, false},
      {"C3", s, "((phi1 => psi) & (phi2 => psi)) -> (phi1 | phi2 => psi)", {"phi1", "phi2", "psi"}, {}, false, false},
      {"C4", s, "((phi1 => phi2) & (phi1 => psi)) -> (phi1 & phi2 => psi)", {"phi1", "phi2", "psi"}, {}, false, false},
      {"C5", s, "((phi => psi) -> N (phi => psi)) & (~(phi => psi) -> N ~(phi => psi))", {"phi", "psi"}, {}, false, false},
      {"F1", s, "forall x phi -> phi[x/t], t substitutable for x", {"phi"}, {"x"}, true, false},
      {"F2", s, "forall x (phi -> psi) -> (forall x phi -> forall x psi)", {"phi", "psi"}, {"x"}, false, false},
      {"F3", s, "phi -> forall x phi, x not free in phi", {"phi"}, {"x"}, false, false},
      {"F4", s, "x = x", {}, {"x"}, false, false},
      {"F5", s, "x = y -> (phi -> phi'), phi quantifier- and conditional-free, phi' replaces some x by y",
       {"phi", "phi'"}, {"x", "y"}, false, false},
      {"F6", s, "x = y -> N (x = y)", {}, {"x", "y"}, false, false},
      {"F7", s, "x != y -> N (x != y)", {}, {"x", "y"}, false, false},
      {"C6", s, "(phi => psi) & ~(phi => ~xi) -> (phi & xi => psi)", {"phi", "psi", "xi"}, {}, false, false},
      {"C7", s, "~(true => false)", {}, {}, false, false},
      {"forall3", s, "forall x (phi => psi) -> (phi => forall x psi), x not free in phi", {"phi", "psi"}, {"x"}, false,
       false},
      {"A3*ax-N", s, "forall x N phi -> N forall x phi", {"phi"}, {"x"}, false, false},
      {"A3*ax-OR", s, "forall x (phi => psi) -> (exists x phi => psi), x not free in psi", {"phi", "psi"}, {"x"},
       false, false},
      {"A3*ax-OR-lit", s, "forall x (phi => psi) -> (exists x phi -> psi), x not free in psi", {"phi", "psi"}, {"x"},
       false, false},
      {"C0'", t, "first-order validity: tautology or F1-F5 shaped instance", {"phi"}, {}, false, false},
      {"C1'", t, "phi =[X]=> phi", {"phi"}, {}, false, true},
      {"C2'", t, "((phi =[X]=> psi1) & (phi =[X]=> psi2)) -> (phi =[X]=> psi1 & psi2)", {"phi", "psi1", "psi2"}, {},
       false, true},
      {"C3'", t, "((phi1 =[X]=> psi) & (phi2 =[X]=> psi)) -> (phi1 | phi2 =[X]=> psi)", {"phi1", "phi2", "psi"}, {},
       false, true},
      {"C4'", t, "((phi1 =[X]=> phi2) & (phi1 =[X]=> psi)) -> (phi1 & phi2 =[X]=> psi)", {"phi1", "phi2", "psi"},
       {}, false, true},
      {"R1'", t, "forall X (phi1 <-> phi2) -> ((phi1 =[X]=> psi) -> (phi2 =[X]=> psi))", {"phi1", "phi2", "psi"}, {},
       false, true},
      {"R2'", t, "forall X (psi1 -> psi2) -> ((phi =[X]=> psi1) -> (phi =[X]=> psi2))", {"phi", "psi1", "psi2"}, {},
       false, true},
      {"U", t, "forall X psi -> (phi =[X]=> psi)", {"phi", "psi"}, {}, false, true},
      {"Ren", t, "(phi =[X]=> psi) -> (phi[x/y] =[X[x/y]]=> psi[x/y]), x in X, y not in X and not in phi, psi",
       {"phi", "psi"}, {"x", "y"}, false, true},
      {"C6'", t, "(phi =[X]=> psi) & ~(phi =[X]=> ~xi) -> (phi & xi =[X]=> psi)", {"phi", "psi", "xi"}, {}, false,
       true},
      {"C7'", t, "~(true =[X]=> false)", {}, {}, false, true},
      {"forall3'", t, "forall y (phi =[X]=> psi) -> (phi =[X]=> forall y psi), y not free in phi, y not in X",
       {"phi", "psi"}, {"y"}, false, true},
      {"Prod", t, "(phi =[X]=> psi) -> (phi & phi' =[X]=> psi), free(phi') disjoint from free(phi & psi)",
       {"phi", "psi", "phi'"}, {}, false, true},
  };
}

std::string canonical_name(std::string name) {
  auto replace = [&](const std::string& from, const std::string& to) {
    for (std::size_t p; (p = name.find(from)) != std::string::npos;) name.replace(p, from.size(), to);
  };
  replace("′", "'");
  replace("∀", "forall");
  return name;
}

[[noreturn]] void side(const std::string& schema, const std::string& what) {
  throw SideConditionError(schema + ": " + what);
}

const Formula& fslot(const Bindings& b, const std::string& name) {
  auto it = b.formulas.find(name);
  if (it == b.formulas.end()) throw std::invalid_argument("missing formula binding '" + name + "'");
  return it->second;
}

const std::string& vslot(const Bindings& b, const std::string& name) {
  auto it = b.vars.find(name);
  if (it == b.vars.end()) throw std::invalid_argument("missing variable binding '" + name + "'");
  return it->second;
}

const Term& tslot(const Bindings& b) {
  auto it = b.terms.find("t");
  if (it == b.terms.end()) throw std::invalid_argument("missing term binding 't'");
  return it->second;
}

Term var(const std::string& v) { return Term::var(v); }

bool in(const std::vector<std::string>& xs, const std::string& v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

bool qf_conditional_free(const Formula& f) { return !f.has_quantifier() && !f.has_modal(); }

bool term_replaces(const Term& a, const Term& b, const std::string& x, const std::string& y) {
  if (a == b) return true;
  if (a.is_var()) return a.name() == x && b.is_var() && b.name() == y;
  if (b.is_var() || a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!term_replaces(a.args()[i], b.args()[i], x, y)) return false;
  return true;
}

// b arises from the quantifier-free a by replacing some occurrences of x by y.
bool replaces(const Formula& a, const Formula& b, const std::string& x, const std::string& y) {
  if (a.op() != b.op() || a.symbol() != b.symbol() || a.terms().size() != b.terms().size() ||
      a.children().size() != b.children().size())
    return false;
  for (std::size_t i = 0; i < a.terms().size(); ++i)
    if (!term_replaces(a.terms()[i], b.terms()[i], x, y)) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!replaces(a.child(i), b.child(i), x, y)) return false;
  return true;
}

void check_lang(const Schema& s, const Bindings& b) {
  for (const auto& [name, f] : b.formulas) {
    if (!in(s.formula_slots, name)) throw std::invalid_argument(s.name + " has no formula slot '" + name + "'");
    if (s.lang == Lang::kSubj && f.has_stat_cond())
      throw std::invalid_argument(s.name + ": statistical conditional in a subjective schema");
    if (s.lang == Lang::kStat && f.has_subj_cond())
      throw std::invalid_argument(s.name + ": subjective conditional in a statistical schema");
  }
  for (const auto& [name, v] : b.vars) {
    if (!in(s.var_slots, name)) throw std::invalid_argument(s.name + " has no variable slot '" + name + "'");
    if (s.lang == Lang::kStat && stat_index(v) == 0)
      throw std::invalid_argument(s.name + ": '" + v + "' is not a statistical variable");
  }
  if (!b.terms.empty() && !s.term_slot) throw std::invalid_argument(s.name + " has no term slot");
  for (const auto& [name, t] : b.terms)
    if (name != "t") throw std::invalid_argument(s.name + " has no term slot '" + name + "'");
  if (!b.varset.empty() && !s.varset_slot) throw std::invalid_argument(s.name + " has no variable set slot");
  if (s.varset_slot) {
    if (b.varset.empty()) throw std::invalid_argument(s.name + ": missing variable set binding 'X'");
    for (const std::string& v : b.varset)
      if (stat_index(v) == 0) throw std::invalid_argument(s.name + ": '" + v + "' is not a statistical variable");
  }
  for (const std::string& v : b.generalized)
    if (s.lang == Lang::kStat && stat_index(v) == 0)
      throw std::invalid_argument(s.name + ": '" + v + "' is not a statistical variable");
}

std::vector<std::string> sorted_set(std::vector<std::string> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

bool is_fo_instance(const Formula& f);

// The schema body with side conditions checked; `lang` selects the
// substitution discipline of F1 (subjective: substitutable, statistical:
// capture-freedom only).
Formula build(const std::string& n, const Bindings& b, Lang lang, bool check) {
  auto F = [&](const char* k) { return fslot(b, k); };
  auto V = [&](const char* k) { return vslot(b, k); };
  auto X = [&]() { return sorted_set(b.varset); };
  auto sc = [&](const Formula& a, const Formula& c) { return stat_cond(X(), a, c); };

  if (n == "C0") {
    if (check && !is_tautology(F("phi"))) side(n, "phi is not a propositional tautology");
    return F("phi");
  }
  if (n == "C0'") {
    if (check && !is_tautology(F("phi")) && !is_fo_instance(F("phi")))
      side(n, "phi is neither a propositional tautology nor an F1-F5 instance");
    return F("phi");
  }
  if (n == "C1") return cond(F("phi"), F("phi"));
  if (n == "C2")
    return implies(conj(cond(F("phi"), F("psi1")), cond(F("phi"), F("psi2"))),
                   cond(F("phi"), conj(F("psi1"), F("psi2"))));
  if (n == "C3")
    return implies(conj(cond(F("phi1"), F("psi")), cond(F("phi2"), F("psi"))),
                   cond(disj(F("phi1"), F("phi2")), F("psi")));
  if (n == "C4")
    return implies(conj(cond(F("phi1"), F("phi2")), cond(F("phi1"), F("psi"))),
                   cond(conj(F("phi1"), F("phi2")), F("psi")));
  if (n == "C5") {
    Formula c = cond(F("phi"), F("psi"));
    return conj(implies(c, nec(c)), implies(negate(c), nec(negate(c))));
  }
  if (n == "F1") {
    const Formula& phi = F("phi");
    const std::string& x = V("x");
    const Term& t = tslot(b);
    if (lang == Lang::kSubj) {
      if (!substitutable(phi, x, t)) side(n, print(t) + " is not substitutable for " + x + " in " + print(phi));
      return implies(forall(x, phi), substitute(phi, x, t));
    }
    if (!fo_substitutable(phi, x, t)) side(n, print(t) + " is not substitutable for " + x + " in " + print(phi));
    return implies(forall(x, phi), fo_substitute(phi, x, t));
  }
  if (n == "F2") {
    const std::string& x = V("x");
    return implies(forall(x, implies(F("phi"), F("psi"))), implies(forall(x, F("phi")), forall(x, F("psi"))));
  }
  if (n == "F3") {
    const std::string& x = V("x");
    if (check && occurs_free(F("phi"), x)) side(n, x + " occurs free in phi");
    return implies(F("phi"), forall(x, F("phi")));
  }
  if (n == "F4") return equals(var(V("x")), var(V("x")));
  if (n == "F5") {
    const std::string& x = V("x");
    const std::string& y = V("y");
    const Formula& phi = F("phi");
    const Formula& phi2 = F("phi'");
    if (check && !qf_conditional_free(phi)) side(n, "phi must be quantifier-free and conditional-free");
    if (check && !replaces(phi, phi2, x, y)) side(n, "phi' does not arise from phi by replacing " + x + " by " + y);
    return implies(equals(var(x), var(y)), implies(phi, phi2));
  }
  if (n == "F6") {
    Formula e = equals(var(V("x")), var(V("y")));
    return implies(e, nec(e));
  }
  if (n == "F7") {
    Formula e = negate(equals(var(V("x")), var(V("y"))));
    return implies(e, nec(e));
  }
  if (n == "C6")
    return implies(conj(cond(F("phi"), F("psi")), negate(cond(F("phi"), negate(F("xi"))))),
                   cond(conj(F("phi"), F("xi")), F("psi")));
  if (n == "C7") return negate(cond(truth(), falsity()));
  if (n == "forall3") {
    const std::string& x = V("x");
    if (check && occurs_free(F("phi"), x)) side(n, x + " occurs free in phi");
    return implies(forall(x, cond(F("phi"), F("psi"))), cond(F("phi"), forall(x, F("psi"))));
  }
  if (n == "A3*ax-N") {
    const std::string& x = V("x");
    return implies(forall(x, nec(F("phi"))), nec(forall(x, F("phi"))));
  }
  if (n == "A3*ax-OR" || n == "A3*ax-OR-lit") {
    const std::string& x = V("x");
    if (check && occurs_free(F("psi"), x)) side(n, x + " occurs free in psi");
    Formula head = forall(x, cond(F("phi"), F("psi")));
    if (n == "A3*ax-OR") return implies(head, cond(exists(x, F("phi")), F("psi")));
    return implies(head, implies(exists(x, F("phi")), F("psi")));
  }
  if (n == "C1'") return sc(F("phi"), F("phi"));
  if (n == "C2'")
    return implies(conj(sc(F("phi"), F("psi1")), sc(F("phi"), F("psi2"))), sc(F("phi"), conj(F("psi1"), F("psi2"))));
  if (n == "C3'")
    return implies(conj(sc(F("phi1"), F("psi")), sc(F("phi2"), F("psi"))), sc(disj(F("phi1"), F("phi2")), F("psi")));
  if (n == "C4'")
    return implies(conj(sc(F("phi1"), F("phi2")), sc(F("phi1"), F("psi"))), sc(conj(F("phi1"), F("phi2")), F("psi")));
  if (n == "R1'")
    return implies(forall_all(X(), iff(F("phi1"), F("phi2"))),
                   implies(sc(F("phi1"), F("psi")), sc(F("phi2"), F("psi"))));
  if (n == "R2'")
    return implies(forall_all(X(), implies(F("psi1"), F("psi2"))),
                   implies(sc(F("phi"), F("psi1")), sc(F("phi"), F("psi2"))));
  if (n == "U") return implies(forall_all(X(), F("psi")), sc(F("phi"), F("psi")));
  if (n == "Ren") {
    const std::string& x = V("x");
    const std::string& y = V("y");
    std::vector<std::string> xs = X();
    if (check) {
      if (!in(xs, x)) side(n, x + " is not in the variable set");
      if (in(xs, y)) side(n, y + " is already in the variable set");
      if (occurs(F("phi"), y) || occurs(F("psi"), y)) side(n, y + " occurs in phi or psi");
    }
    std::vector<std::string> ys;
    for (const std::string& v : xs) ys.push_back(v == x ? y : v);
    return implies(stat_cond(xs, F("phi"), F("psi")),
                   stat_cond(ys, fo_substitute(F("phi"), x, var(y)), fo_substitute(F("psi"), x, var(y))));
  }
  if (n == "C6'")
    return implies(conj(sc(F("phi"), F("psi")), negate(sc(F("phi"), negate(F("xi"))))),
                   sc(conj(F("phi"), F("xi")), F("psi")));
  if (n == "C7'") return negate(sc(truth(), falsity()));
  if (n == "forall3'") {
    const std::string& y = V("y");
    if (check) {
      if (occurs_free(F("phi"), y)) side(n, y + " occurs free in phi");
      if (in(X(), y)) side(n, y + " is in the variable set");
    }
    return implies(forall(y, sc(F("phi"), F("psi"))), sc(F("phi"), forall(y, F("psi"))));
  }
  if (n == "Prod") {
    if (check) {
      const std::vector<std::string> shared = conj(F("phi"), F("psi")).free_vars();
      for (const std::string& v : F("phi'").free_vars())
        if (std::binary_search(shared.begin(), shared.end(), v)) side(n, v + " is free in both phi' and phi & psi");
    }
    return implies(sc(F("phi"), F("psi")), sc(conj(F("phi"), F("phi'")), F("psi")));
  }
  throw std::invalid_argument("unknown schema '" + n + "'");
}

// ---------------------------------------------------------------------------
// Matching. Templates are the schema bodies over metavariables ?name; a
// unifier binds them, and the candidate is confirmed by re-instantiation.

bool is_meta(const std::string& s) { return !s.empty() && s[0] == '?'; }

struct Unifier {
  std::map<std::string, Formula> formulas;
  std::map<std::string, std::string> vars;
  std::optional<std::vector<std::string>> varset;

  bool bind_var(const std::string& meta, const std::string& v) {
    auto [it, fresh] = vars.emplace(meta.substr(1), v);
    return fresh || it->second == v;
  }

  bool term(const Term& p, const Term& t) {
    if (p.is_var()) {
      if (is_meta(p.name())) return t.is_var() && bind_var(p.name(), t.name());
      return t.is_var() && t.name() == p.name();
    }
    if (t.is_var() || p.name() != t.name() || p.args().size() != t.args().size()) return false;
    for (std::size_t i = 0; i < p.args().size(); ++i)
      if (!term(p.args()[i], t.args()[i])) return false;
    return true;
  }

  bool formula(const Formula& p, const Formula& f) {
    if (p.op() == Op::kAtom && is_meta(p.symbol())) {
      auto [it, fresh] = formulas.emplace(p.symbol().substr(1), f);
      return fresh || it->second == f;
    }
    if (p.op() != f.op() || p.children().size() != f.children().size() || p.terms().size() != f.terms().size())
      return false;
    if (p.op() == Op::kForall || p.op() == Op::kExists) {
      if (is_meta(p.symbol())) {
        if (!bind_var(p.symbol(), f.symbol())) return false;
      } else if (p.symbol() != f.symbol()) {
        return false;
      }
    } else if (p.symbol() != f.symbol()) {
      return false;
    }
    if (p.op() == Op::kStatCond) {
      if (p.bound().size() == 1 && is_meta(p.bound()[0])) {
        if (varset && *varset != f.bound()) return false;
        varset = f.bound();
      } else if (p.bound() != f.bound()) {
        return false;
      }
    }
    for (std::size_t i = 0; i < p.terms().size(); ++i)
      if (!term(p.terms()[i], f.terms()[i])) return false;
    for (std::size_t i = 0; i < p.children().size(); ++i)
      if (!formula(p.child(i), f.child(i))) return false;
    return true;
  }

  Bindings bindings() const {
    Bindings b;
    b.formulas = formulas;
    b.vars = vars;
    if (varset) b.varset = *varset;
    return b;
  }
};

Bindings meta_bindings(const Schema& s) {
  Bindings b;
  for (const std::string& k : s.formula_slots) b.formulas.emplace(k, atom("?" + k));
  for (const std::string& k : s.var_slots) b.vars.emplace(k, "?" + k);
  if (s.varset_slot) b.varset = {"?X"};
  return b;
}

const Formula& template_of(const Schema& s) {
  static std::map<std::string, Formula> cache;
  auto it = cache.find(s.name);
  if (it != cache.end()) return it->second;
  return cache.emplace(s.name, build(s.name, meta_bindings(s), s.lang, false)).first->second;
}

// The term standing where phi has free x, found by a parallel walk.
std::optional<Term> find_subst_term(const Term& p, const Term& t, const std::string& x) {
  if (p.is_var()) {
    if (p.name() == x) return t;
    return std::nullopt;
  }
  if (t.is_var() || p.name() != t.name() || p.args().size() != t.args().size()) return std::nullopt;
  for (std::size_t i = 0; i < p.args().size(); ++i)
    if (auto r = find_subst_term(p.args()[i], t.args()[i], x)) return r;
  return std::nullopt;
}

std::optional<Term> find_subst_term(const Formula& p, const Formula& f, const std::string& x) {
  if (p.op() != f.op() || p.children().size() != f.children().size() || p.terms().size() != f.terms().size())
    return std::nullopt;
  if ((p.op() == Op::kForall || p.op() == Op::kExists) && p.symbol() == x) return std::nullopt;
  if (p.op() == Op::kStatCond && in(p.bound(), x)) return std::nullopt;
  for (std::size_t i = 0; i < p.terms().size(); ++i)
    if (auto r = find_subst_term(p.terms()[i], f.terms()[i], x)) return r;
  for (std::size_t i = 0; i < p.children().size(); ++i)
    if (auto r = find_subst_term(p.child(i), f.child(i), x)) return r;
  return std::nullopt;
}

std::optional<Bindings> candidate(const Schema& s, const Formula& core, Lang lang) {
  const std::string& n = s.name;
  if (n == "C0" || n == "C0'") {
    Bindings b;
    b.formulas.emplace("phi", core);
    return b;
  }
  if (n == "F1") {
    if (core.op() != Op::kImplies || core.child(0).op() != Op::kForall) return std::nullopt;
    const Formula& q = core.child(0);
    Bindings b;
    b.formulas.emplace("phi", q.child(0));
    b.vars.emplace("x", q.symbol());
    std::optional<Term> t = find_subst_term(q.child(0), core.child(1), q.symbol());
    b.terms.emplace("t", t ? *t : var(q.symbol()));
    return b;
  }
  if (n == "F5") {
    if (core.op() != Op::kImplies || core.child(0).op() != Op::kEq || core.child(1).op() != Op::kImplies)
      return std::nullopt;
    const auto& ts = core.child(0).terms();
    if (!ts[0].is_var() || !ts[1].is_var()) return std::nullopt;
    Bindings b;
    b.vars = {{"x", ts[0].name()}, {"y", ts[1].name()}};
    b.formulas = {{"phi", core.child(1).child(0)}, {"phi'", core.child(1).child(1)}};
    return b;
  }
  if (n == "U" || n == "R1'" || n == "R2'") {
    if (core.op() != Op::kImplies) return std::nullopt;
    Unifier u;
    Bindings mb = meta_bindings(s);
    Formula rhs = build(n, mb, lang, false).child(1);
    if (!u.formula(rhs, core.child(1))) return std::nullopt;
    return u.bindings();
  }
  if (n == "Ren") {
    if (core.op() != Op::kImplies || core.child(0).op() != Op::kStatCond || core.child(1).op() != Op::kStatCond)
      return std::nullopt;
    const auto& xs = core.child(0).bound();
    const auto& ys = core.child(1).bound();
    std::vector<std::string> only_x, only_y;
    std::set_difference(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(only_x));
    std::set_difference(ys.begin(), ys.end(), xs.begin(), xs.end(), std::back_inserter(only_y));
    if (only_x.size() != 1 || only_y.size() != 1) return std::nullopt;
    Bindings b;
    b.varset = xs;
    b.vars = {{"x", only_x[0]}, {"y", only_y[0]}};
    b.formulas = {{"phi", core.child(0).child(0)}, {"psi", core.child(0).child(1)}};
    return b;
  }
  Unifier u;
  if (!u.formula(template_of(s), core)) return std::nullopt;
  return u.bindings();
}

std::optional<Bindings> match_core(const Schema& s, const Formula& core, Lang lang) {
  std::optional<Bindings> b = candidate(s, core, lang);
  if (!b) return std::nullopt;
  for (const std::string& k : s.formula_slots)
    if (!b->formulas.count(k)) return std::nullopt;
  for (const std::string& k : s.var_slots)
    if (!b->vars.count(k)) return std::nullopt;
  if (s.varset_slot && b->varset.empty()) return std::nullopt;
  try {
    if (build(s.name, *b, lang, true) == core) return b;
  } catch (const SideConditionError&) {
  } catch (const SubstitutionError&) {
  } catch (const std::invalid_argument&) {
  } catch (const ParseError&) {
  }
  return std::nullopt;
}

const Schema& schema_ref(const std::string& name) { return find_schema(name); }

bool is_fo_instance(const Formula& f) {
  for (const char* n : {"F1", "F2", "F3", "F4", "F5"})
    if (match_core(schema_ref(n), f, Lang::kStat)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Tautologies

struct Circuit {
  struct Gate {
    Op op;
    int a = -1, b = -1;  // gate inputs; atom index for kAtom
  };
  std::vector<Gate> gates;
  std::unordered_map<Formula, int, FormulaHash> atoms;

  int add(const Formula& f) {
    switch (f.op()) {
      case Op::kTrue:
      case Op::kFalse: gates.push_back({f.op()}); break;
      case Op::kNot: {
        int a = add(f.child(0));
        gates.push_back({Op::kNot, a});
        break;
      }
      case Op::kAnd:
      case Op::kOr:
      case Op::kImplies:
      case Op::kIff: {
        int a = add(f.child(0));
        int b = add(f.child(1));
        gates.push_back({f.op(), a, b});
        break;
      }
      case Op::kExists: {
        // exists x phi is read as ~forall x ~phi.
        int a = leaf(forall(f.symbol(), negate(f.child(0))));
        gates.push_back({Op::kNot, a});
        break;
      }
      default: return leaf(f);
    }
    return static_cast<int>(gates.size()) - 1;
  }

  int leaf(const Formula& f) {
    auto [it, fresh] = atoms.emplace(f, static_cast<int>(atoms.size()));
    gates.push_back({Op::kAtom, it->second});
    return static_cast<int>(gates.size()) - 1;
  }

  bool eval(std::uint32_t assignment, std::vector<char>& v) const {
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const Gate& g = gates[i];
      switch (g.op) {
        case Op::kTrue: v[i] = 1; break;
        case Op::kFalse: v[i] = 0; break;
        case Op::kAtom: v[i] = (assignment >> g.a) & 1; break;
        case Op::kNot: v[i] = !v[g.a]; break;
        case Op::kAnd: v[i] = v[g.a] && v[g.b]; break;
        case Op::kOr: v[i] = v[g.a] || v[g.b]; break;
        case Op::kImplies: v[i] = !v[g.a] || v[g.b]; break;
        default: v[i] = v[g.a] == v[g.b]; break;
      }
    }
    return v.back();
  }
};

}  // namespace

bool is_tautology(const Formula& f) {
  Circuit c;
  c.add(desugar(f));
  if (c.atoms.size() > 20)
    throw CapacityError("tautology check over " + std::to_string(c.atoms.size()) + " atoms exceeds the limit of 20");
  std::vector<char> v(c.gates.size());
  const std::uint32_t rows = 1u << c.atoms.size();
  for (std::uint32_t a = 0; a < rows; ++a)
    if (!c.eval(a, v)) return false;
  return true;
}

const std::vector<Schema>& schemas() {
  static const std::vector<Schema> all = build_schemas();
  return all;
}

const Schema& find_schema(const std::string& name) {
  const std::string n = canonical_name(name);
  for (const Schema& s : schemas())
    if (s.name == n) return s;
  throw std::invalid_argument("unknown schema '" + name + "'");
}

std::vector<std::string> expand_schema_set(const std::string& name) {
  const std::string n = canonical_name(name);
  if (n == "C-subj") return kSubjGroup;
  if (n == "C-stat") return kStatGroup;
  return {find_schema(n).name};
}

Formula instantiate(const std::string& schema, const Bindings& b) {
  const Schema& s = find_schema(schema);
  check_lang(s, b);
  Formula core = build(s.name, b, s.lang, true);
  return forall_all(b.generalized, core);
}

std::optional<Bindings> match_schema(const std::string& schema, const Formula& f) {
  const Schema& s = find_schema(schema);
  std::vector<std::string> prefix;
  Formula core = f;
  while (true) {
    if (std::optional<Bindings> b = match_core(s, core, s.lang)) {
      b->generalized = prefix;
      try {
        check_lang(s, *b);
        return b;
      } catch (const std::invalid_argument&) {
      }
    }
    if (core.op() != Op::kForall) return std::nullopt;
    prefix.push_back(core.symbol());
    core = core.child(0);
  }
}

// ---------------------------------------------------------------------------
// Derivations

namespace {

std::string kind_name(Justification::Kind k) {
  switch (k) {
    case Justification::Kind::kPremise: return "premise";
    case Justification::Kind::kAxiom: return "axiom";
    case Justification::Kind::kMp: return "mp";
    case Justification::Kind::kR1: return "r1";
    case Justification::Kind::kR2: return "r2";
  }
  return "?";
}

Justification::Kind parse_kind(const std::string& s) {
  for (auto k : {Justification::Kind::kPremise, Justification::Kind::kAxiom, Justification::Kind::kMp,
                 Justification::Kind::kR1, Justification::Kind::kR2})
    if (kind_name(k) == s) return k;
  throw ParseError("unknown justification kind '" + s + "'");
}

DerivationReport bad(int line, std::string reason) { return {false, line, std::move(reason)}; }

}  // namespace

DerivationReport check_derivation(const Derivation& d) {
  std::set<std::string> enabled;
  std::vector<std::string> groups = d.schemas;
  if (groups.empty()) groups.push_back(d.lang == Lang::kSubj ? "C-subj" : "C-stat");
  for (const std::string& g : groups)
    for (const std::string& n : expand_schema_set(g)) enabled.insert(n);

  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    const DerivationLine& l = d.lines[i];
    const Justification& j = l.just;
    if (d.lang == Lang::kSubj ? l.formula.has_stat_cond() : l.formula.has_subj_cond())
      return bad(line, "formula is not in the " + std::string(to_string(d.lang)) + " language");
    for (int r : j.refs)
      if (r < 1 || r >= line) return bad(line, "reference " + std::to_string(r) + " does not precede this line");
    auto ref = [&](std::size_t k) -> const Formula& { return d.lines[j.refs[k] - 1].formula; };
    switch (j.kind) {
      case Justification::Kind::kPremise:
        if (std::find(d.premises.begin(), d.premises.end(), l.formula) == d.premises.end())
          return bad(line, "not a declared premise");
        break;
      case Justification::Kind::kAxiom: {
        std::string name;
        try {
          name = find_schema(j.schema).name;
        } catch (const std::invalid_argument& e) {
          return bad(line, e.what());
        }
        if (!enabled.count(name)) return bad(line, "schema " + name + " is not enabled");
        if (j.bindings) {
          try {
            if (!(instantiate(name, *j.bindings) == l.formula))
              return bad(line, "formula is not the " + name + " instance of the given bindings");
          } catch (const std::exception& e) {
            return bad(line, e.what());
          }
        } else {
          std::optional<Bindings> b;
          try {
            b = match_schema(name, l.formula);
          } catch (const CapacityError& e) {
            return bad(line, e.what());
          }
          if (!b) return bad(line, "formula is not an instance of " + name);
        }
        break;
      }
      case Justification::Kind::kMp:
        if (j.refs.size() != 2) return bad(line, "mp needs two references");
        if (!(ref(1) == implies(ref(0), l.formula)))
          return bad(line, "line " + std::to_string(j.refs[1]) + " is not line " + std::to_string(j.refs[0]) +
                               " -> this formula");
        break;
      case Justification::Kind::kR1:
      case Justification::Kind::kR2: {
        const bool r1 = j.kind == Justification::Kind::kR1;
        const std::string rule = r1 ? "r1" : "r2";
        if (d.lang != Lang::kSubj) return bad(line, rule + " is a rule of the subjective system only");
        if (j.refs.size() != 1) return bad(line, rule + " needs one reference");
        const Formula& p = ref(0);
        const Formula& f = l.formula;
        const Op premise_op = r1 ? Op::kIff : Op::kImplies;
        if (p.op() != premise_op) return bad(line, "the cited line is not " + std::string(r1 ? "an equivalence" : "an implication"));
        if (f.op() != premise_op || f.child(0).op() != Op::kCond || f.child(1).op() != Op::kCond)
          return bad(line, "formula does not have the shape of the " + rule + " conclusion");
        const Formula& c1 = f.child(0);
        const Formula& c2 = f.child(1);
        bool ok = r1 ? (c1.child(0) == p.child(0) && c2.child(0) == p.child(1) && c1.child(1) == c2.child(1))
                     : (c1.child(1) == p.child(0) && c2.child(1) == p.child(1) && c1.child(0) == c2.child(0));
        if (!ok) return bad(line, "formula does not follow from line " + std::to_string(j.refs[0]) + " by " + rule);
        break;
      }
    }
  }
  return {};
}

namespace {

json bindings_json(const Bindings& b) {
  json j = json::object();
  for (const auto& [k, f] : b.formulas) j[k] = print(f);
  for (const auto& [k, v] : b.vars) j[k] = v;
  for (const auto& [k, t] : b.terms) j[k] = print(t);
  if (!b.varset.empty()) j["X"] = b.varset;
  if (!b.generalized.empty()) j["generalized"] = b.generalized;
  return j;
}

Bindings parse_bindings(const json& j, Lang lang) {
  if (!j.is_object()) throw ParseError("bindings must be an object");
  Bindings b;
  for (const auto& [k, v] : j.items()) {
    if (k == "X" || k == "generalized") {
      if (!v.is_array()) throw ParseError("binding '" + k + "' must be a list of variables");
      auto& dest = k == "X" ? b.varset : b.generalized;
      for (const auto& x : v) dest.push_back(x.get<std::string>());
    } else if (k == "x" || k == "y") {
      b.vars[k] = v.get<std::string>();
    } else if (k == "t") {
      b.terms.emplace("t", parse_term(v.get<std::string>(), lang));
    } else {
      b.formulas.emplace(k, parse(v.get<std::string>(), lang));
    }
  }
  return b;
}

}  // namespace

Derivation parse_derivation(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("derivation JSON: ") + e.what());
  }
  Derivation d;
  try {
    d.lang = j.contains("lang") ? parse_lang(j.at("lang").get<std::string>()) : Lang::kSubj;
    if (j.contains("schemas"))
      for (const auto& s : j.at("schemas")) d.schemas.push_back(s.get<std::string>());
    if (j.contains("premises"))
      for (const auto& p : j.at("premises")) d.premises.push_back(parse(p.get<std::string>(), d.lang));
    int n = 0;
    for (const auto& l : j.at("lines")) {
      ++n;
      DerivationLine line;
      try {
        line.formula = parse(l.at("formula").get<std::string>(), d.lang);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(n) + ": " + e.what());
      }
      const json& just = l.at("just");
      line.just.kind = parse_kind(just.at("kind").get<std::string>());
      if (just.contains("refs"))
        for (const auto& r : just.at("refs")) line.just.refs.push_back(r.get<int>());
      if (just.contains("schema")) line.just.schema = just.at("schema").get<std::string>();
      if (just.contains("bindings")) line.just.bindings = parse_bindings(just.at("bindings"), d.lang);
      d.lines.push_back(std::move(line));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("derivation JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("derivation JSON: ") + e.what());
  }
  return d;
}

std::string derivation_to_json(const Derivation& d) {
  json j;
  j["lang"] = std::string(to_string(d.lang));
  j["schemas"] = d.schemas;
  json premises = json::array();
  for (const Formula& p : d.premises) premises.push_back(print(p));
  j["premises"] = premises;
  json lines = json::array();
  for (const DerivationLine& l : d.lines) {
    json just;
    just["kind"] = kind_name(l.just.kind);
    if (!l.just.refs.empty()) just["refs"] = l.just.refs;
    if (!l.just.schema.empty()) just["schema"] = l.just.schema;
    if (l.just.bindings) just["bindings"] = bindings_json(*l.just.bindings);
    lines.push_back({{"formula", print(l.formula)}, {"just", just}});
  }
  j["lines"] = lines;
  return j.dump(2) + "\n";
}

Derivation lottery_derivation(bool enable_forall3) {
  auto p = [](const char* s) { return parse(s, Lang::kSubj); };
  Derivation d;
  d.lang = Lang::kSubj;
  d.schemas = {"C-subj"};
  if (enable_forall3) d.schemas.push_back("forall3");
  const Formula w = p("Winner(x)");
  const Formula some = p("exists x Winner(x)");
  const Formula none = p("forall x ~Winner(x)");
  const Formula p1 = forall("x", cond(truth(), negate(w)));
  const Formula p2 = cond(truth(), some);
  d.premises = {p1, p2};

  using K = Justification::Kind;
  auto axiom = [](const std::string& schema, Bindings b) {
    Justification j;
    j.kind = K::kAxiom;
    j.schema = schema;
    j.bindings = std::move(b);
    return j;
  };
  auto rule = [](K k, std::vector<int> refs) {
    Justification j;
    j.kind = k;
    j.refs = std::move(refs);
    return j;
  };

  Bindings f3;
  f3.formulas = {{"phi", truth()}, {"psi", negate(w)}};
  f3.vars = {{"x", "x"}};
  Bindings c2;
  c2.formulas = {{"phi", truth()}, {"psi1", some}, {"psi2", none}};
  const Formula a = cond(truth(), some);
  const Formula b = cond(truth(), none);
  Bindings t1;
  t1.formulas = {{"phi", implies(a, implies(b, conj(a, b)))}};
  Bindings t2;
  t2.formulas = {{"phi", implies(conj(some, none), falsity())}};

  auto add = [&](Formula f, Justification j) { d.lines.push_back({std::move(f), std::move(j)}); };
  add(p1, rule(K::kPremise, {}));                                                   // 1
  add(p2, rule(K::kPremise, {}));                                                   // 2
  add(instantiate("forall3", f3), axiom("forall3", f3));                            // 3
  add(b, rule(K::kMp, {1, 3}));                                                     // 4
  add(instantiate("C2", c2), axiom("C2", c2));                                      // 5
  add(t1.formulas["phi"], axiom("C0", t1));                                         // 6
  add(implies(b, conj(a, b)), rule(K::kMp, {2, 6}));                                // 7
  add(conj(a, b), rule(K::kMp, {4, 7}));                                            // 8
  add(cond(truth(), conj(some, none)), rule(K::kMp, {8, 5}));                       // 9
  add(t2.formulas["phi"], axiom("C0", t2));                                         // 10
  add(implies(cond(truth(), conj(some, none)), cond(truth(), falsity())), rule(K::kR2, {10}));  // 11
  add(cond(truth(), falsity()), rule(K::kMp, {9, 11}));                             // 12
  return d;
}

// ---------------------------------------------------------------------------
// Random instances

namespace {

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

template <class T>
const T& pick_from(Rng& rng, const std::vector<T>& xs) {
  return xs[pick(rng, static_cast<int>(xs.size()))];
}

FormulaShape without(const FormulaShape& shape, const std::vector<std::string>& drop) {
  FormulaShape out = shape;
  out.variables.clear();
  for (const std::string& v : shape.variables)
    if (!in(drop, v)) out.variables.push_back(v);
  return out;
}

Formula random_qf(Rng& rng, const FormulaShape& shape, int depth);

// Without variables only closed quantifier-free formulas are available.
Formula sub_formula(Rng& rng, const FormulaShape& shape) {
  if (!shape.variables.empty()) return random_formula(rng, shape);
  if (!shape.constants.empty()) return random_qf(rng, shape, 2);
  for (const auto& [name, arity] : shape.predicates)
    if (arity == 0 && pick(rng, 2)) return atom(name);
  return pick(rng, 2) ? truth() : falsity();
}

Term random_term_of(Rng& rng, const FormulaShape& shape) {
  if (shape.variables.empty() && shape.constants.empty()) throw std::invalid_argument("no terms available");
  return random_term(rng, shape, 1);
}

Formula random_qf(Rng& rng, const FormulaShape& shape, int depth) {
  if (depth <= 0 || pick(rng, 3) == 0) {
    const int preds = static_cast<int>(shape.predicates.size());
    if (shape.equality && (preds == 0 || pick(rng, 3) == 0))
      return equals(random_term_of(rng, shape), random_term_of(rng, shape));
    if (preds == 0) return truth();
    const auto& [name, arity] = shape.predicates[pick(rng, preds)];
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i) args.push_back(random_term_of(rng, shape));
    return atom(name, std::move(args));
  }
  switch (pick(rng, 4)) {
    case 0: return negate(random_qf(rng, shape, depth - 1));
    case 1: return conj(random_qf(rng, shape, depth - 1), random_qf(rng, shape, depth - 1));
    case 2: return disj(random_qf(rng, shape, depth - 1), random_qf(rng, shape, depth - 1));
    default: return implies(random_qf(rng, shape, depth - 1), random_qf(rng, shape, depth - 1));
  }
}

Term replace_some(Rng& rng, const Term& t, const std::string& x, const std::string& y) {
  if (t.is_var()) return t.name() == x && pick(rng, 2) ? Term::var(y) : t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(replace_some(rng, a, x, y));
  return Term::func(t.name(), std::move(args));
}

Formula replace_some(Rng& rng, const Formula& f, const std::string& x, const std::string& y) {
  switch (f.op()) {
    case Op::kAtom: {
      std::vector<Term> ts;
      for (const Term& t : f.terms()) ts.push_back(replace_some(rng, t, x, y));
      return atom(f.symbol(), std::move(ts));
    }
    case Op::kEq: return equals(replace_some(rng, f.terms()[0], x, y), replace_some(rng, f.terms()[1], x, y));
    case Op::kNot: return negate(replace_some(rng, f.child(0), x, y));
    case Op::kAnd: return conj(replace_some(rng, f.child(0), x, y), replace_some(rng, f.child(1), x, y));
    case Op::kOr: return disj(replace_some(rng, f.child(0), x, y), replace_some(rng, f.child(1), x, y));
    case Op::kImplies: return implies(replace_some(rng, f.child(0), x, y), replace_some(rng, f.child(1), x, y));
    case Op::kIff: return iff(replace_some(rng, f.child(0), x, y), replace_some(rng, f.child(1), x, y));
    default: return f;
  }
}

Formula random_tautology(Rng& rng, const FormulaShape& shape) {
  Formula a = sub_formula(rng, shape);
  Formula b = sub_formula(rng, shape);
  Formula c = sub_formula(rng, shape);
  switch (pick(rng, 8)) {
    case 0: return disj(a, negate(a));
    case 1: return implies(a, a);
    case 2: return implies(conj(a, b), a);
    case 3: return implies(a, implies(b, a));
    case 4: return implies(conj(implies(a, b), implies(b, c)), implies(a, c));
    case 5: return iff(implies(a, b), implies(negate(b), negate(a)));
    case 6: return iff(negate(conj(a, b)), disj(negate(a), negate(b)));
    default: {
      if (shape.variables.empty()) return implies(a, a);
      const std::string& x = pick_from(rng, shape.variables);
      return iff(exists(x, a), negate(forall(x, negate(a))));
    }
  }
}

std::vector<std::string> random_subset(Rng& rng, const std::vector<std::string>& xs) {
  std::vector<std::string> out;
  for (const std::string& v : xs)
    if (pick(rng, 2)) out.push_back(v);
  if (out.empty() && !xs.empty()) out.push_back(pick_from(rng, xs));
  return out;
}

Formula fo_instance(Rng& rng, const FormulaShape& shape) {
  static const std::vector<std::string> kShapes = {"F1", "F2", "F3", "F4", "F5"};
  const std::string& n = pick_from(rng, kShapes);
  Bindings b;
  const std::string x = pick_from(rng, shape.variables);
  const std::string y = pick_from(rng, shape.variables);
  b.vars = {{"x", x}};
  if (n == "F1") {
    b.formulas = {{"phi", sub_formula(rng, shape)}};
    Term t = random_term_of(rng, shape);
    if (!fo_substitutable(b.formulas["phi"], x, t)) t = Term::var(x);
    b.terms.emplace("t", t);
  } else if (n == "F2") {
    b.formulas = {{"phi", sub_formula(rng, shape)}, {"psi", sub_formula(rng, shape)}};
  } else if (n == "F3") {
    Formula phi = sub_formula(rng, shape);
    b.formulas = {{"phi", occurs_free(phi, x) ? forall(x, phi) : phi}};
  } else if (n == "F5") {
    Formula phi = random_qf(rng, shape, 2);
    b.vars["y"] = y;
    b.formulas = {{"phi", phi}, {"phi'", replace_some(rng, phi, x, y)}};
  }
  return build(n, b, Lang::kStat, true);
}

}  // namespace

Formula random_instance(Rng& rng, const std::string& schema, const FormulaShape& shape) {
  const Schema& s = find_schema(schema);
  const std::string& n = s.name;
  if (s.lang != shape.lang) throw std::invalid_argument(n + " is not a schema of the shape's language");
  const auto& vars = shape.variables;
  if (vars.empty() && (!s.var_slots.empty() || s.varset_slot))
    throw std::invalid_argument(n + " needs variables in the shape");
  if ((n == "Ren" || n == "forall3'") && vars.size() < 2)
    throw std::invalid_argument(n + " needs at least two variables in the shape");

  if (n == "C0") return random_tautology(rng, shape);
  if (n == "C0'") return pick(rng, 2) ? random_tautology(rng, shape) : fo_instance(rng, shape);

  Bindings b;
  for (const std::string& k : s.formula_slots) b.formulas[k] = sub_formula(rng, shape);
  for (const std::string& k : s.var_slots) b.vars[k] = pick_from(rng, vars);
  if (s.varset_slot) b.varset = random_subset(rng, vars);
  if (s.term_slot) b.terms.emplace("t", random_term_of(rng, shape));

  if (n == "F1" && !(s.lang == Lang::kSubj ? substitutable(b.formulas["phi"], b.vars["x"], b.terms.at("t"))
                                           : fo_substitutable(b.formulas["phi"], b.vars["x"], b.terms.at("t")))) {
    // x itself is always substitutable for x.
    b.terms.at("t") = Term::var(b.vars["x"]);
  }
  if (n == "F3" || n == "forall3") {
    const std::string& x = b.vars["x"];
    if (occurs_free(b.formulas["phi"], x)) b.formulas["phi"] = forall(x, b.formulas["phi"]);
  }
  if (n == "A3*ax-OR" || n == "A3*ax-OR-lit") {
    const std::string& x = b.vars["x"];
    if (occurs_free(b.formulas["psi"], x)) b.formulas["psi"] = forall(x, b.formulas["psi"]);
  }
  if (n == "F5") {
    b.formulas["phi"] = random_qf(rng, shape, 2);
    b.formulas["phi'"] = replace_some(rng, b.formulas["phi"], b.vars["x"], b.vars["y"]);
  }
  if (n == "Ren") {
    std::vector<std::string> shuffled = vars;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const std::string x = shuffled[0];
    const std::string y = shuffled[1];
    b.vars = {{"x", x}, {"y", y}};
    b.varset = {x};
    for (std::size_t i = 2; i < shuffled.size(); ++i)
      if (pick(rng, 2)) b.varset.push_back(shuffled[i]);
    FormulaShape rest = without(shape, {y});
    b.formulas = {{"phi", sub_formula(rng, rest)}, {"psi", sub_formula(rng, rest)}};
  }
  if (n == "forall3'") {
    const std::string& y = b.vars["y"];
    b.varset = random_subset(rng, without(shape, {y}).variables);
    if (occurs_free(b.formulas["phi"], y)) b.formulas["phi"] = forall(y, b.formulas["phi"]);
  }
  if (n == "Prod") {
    const auto used = conj(b.formulas["phi"], b.formulas["psi"]).free_vars();
    b.formulas["phi'"] = sub_formula(rng, without(shape, used));
  }
  return instantiate(n, b);
}

}  // namespace plauslab
