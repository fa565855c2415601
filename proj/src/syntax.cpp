#include "plauslab/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "plauslab/error.hpp"

namespace plauslab {

std::string_view to_string(Lang lang) { return lang == Lang::kSubj ? "subj" : "stat"; }

Lang parse_lang(std::string_view text) {
  if (text == "subj") return Lang::kSubj;
  if (text == "stat") return Lang::kStat;
  throw ParseError("unknown language '" + std::string(text) + "' (expected subj or stat)");
}

// ---------------------------------------------------------------------------
// Terms

struct Term::Node {
  bool var = false;
  std::string name;
  std::vector<Term> args;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t term_hash(const Term& t);

}  // namespace

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->var = true;
  n->hash = mix(1, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::func(std::string symbol, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  std::size_t h = mix(2, std::hash<std::string>{}(symbol));
  for (const Term& a : args) h = mix(h, term_hash(a));
  n->hash = h;
  n->name = std::move(symbol);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->var; }
const std::string& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->args; }

bool Term::mentions(std::string_view var) const {
  if (node_->var) return node_->name == var;
  return std::any_of(node_->args.begin(), node_->args.end(),
                     [&](const Term& a) { return a.mentions(var); });
}

void Term::collect_vars(std::set<std::string>& out) const {
  if (node_->var) {
    out.insert(node_->name);
    return;
  }
  for (const Term& a : node_->args) a.collect_vars(out);
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->var != b.node_->var || a.node_->name != b.node_->name)
    return false;
  return a.node_->args == b.node_->args;
}

namespace {

std::size_t term_hash(const Term& t) {
  std::size_t h = std::hash<std::string>{}(t.name());
  h = mix(h, t.is_var() ? 1 : 2);
  for (const Term& a : t.args()) h = mix(h, term_hash(a));
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Formulas

namespace {
constexpr unsigned kSubjFlag = 1;
constexpr unsigned kStatFlag = 2;
constexpr unsigned kQuantFlag = 4;
}  // namespace

struct Formula::Node {
  Op op = Op::kTrue;
  std::string symbol;
  std::vector<Term> terms;
  std::vector<Formula> kids;
  std::vector<std::string> bound;
  std::vector<std::string> free;
  unsigned flags = 0;
  std::size_t depth = 0;
  std::size_t hash = 0;
};

Formula make_node(Op op, std::string symbol, std::vector<Term> terms, std::vector<Formula> kids,
                  std::vector<std::string> bound) {
  auto n = std::make_shared<Formula::Node>();
  std::set<std::string> fv;
  for (const Term& t : terms) t.collect_vars(fv);
  unsigned flags = 0;
  std::size_t depth = 0;
  for (const Formula& k : kids) {
    fv.insert(k.free_vars().begin(), k.free_vars().end());
    flags |= k.node_->flags;
    depth = std::max(depth, k.node_->depth + 1);
  }
  switch (op) {
    case Op::kForall:
    case Op::kExists:
      fv.erase(symbol);
      flags |= kQuantFlag;
      break;
    case Op::kStatCond:
      for (const std::string& v : bound) fv.erase(v);
      flags |= kStatFlag;
      break;
    case Op::kCond:
    case Op::kNec:
      flags |= kSubjFlag;
      break;
    default:
      break;
  }
  if ((flags & kSubjFlag) && (flags & kStatFlag))
    throw ParseError("a formula may not mix subjective and statistical conditionals");

  std::size_t h = mix(0x51, static_cast<std::size_t>(op));
  h = mix(h, std::hash<std::string>{}(symbol));
  for (const Term& t : terms) h = mix(h, term_hash(t));
  for (const Formula& k : kids) h = mix(h, k.hash());
  for (const std::string& v : bound) h = mix(h, std::hash<std::string>{}(v));

  n->op = op;
  n->symbol = std::move(symbol);
  n->terms = std::move(terms);
  n->kids = std::move(kids);
  n->bound = std::move(bound);
  n->free.assign(fv.begin(), fv.end());
  n->flags = flags;
  n->depth = depth;
  n->hash = h;
  return Formula(std::move(n));
}

Formula::Formula() {
  static const Formula kTrueNode = make_node(Op::kTrue, "", {}, {}, {});
  node_ = kTrueNode.node_;
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::symbol() const { return node_->symbol; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const std::vector<Formula>& Formula::children() const { return node_->kids; }
const std::vector<std::string>& Formula::bound() const { return node_->bound; }
const std::vector<std::string>& Formula::free_vars() const { return node_->free; }
bool Formula::has_subj_cond() const { return node_->flags & kSubjFlag; }
bool Formula::has_stat_cond() const { return node_->flags & kStatFlag; }
bool Formula::has_quantifier() const { return node_->flags & kQuantFlag; }
std::size_t Formula::depth() const { return node_->depth; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.hash == y.hash && x.op == y.op && x.symbol == y.symbol && x.bound == y.bound &&
         x.terms == y.terms && x.kids == y.kids;
}

Formula truth() { return Formula(); }
Formula falsity() {
  static const Formula f = make_node(Op::kFalse, "", {}, {}, {});
  return f;
}
Formula atom(std::string pred, std::vector<Term> args) {
  return make_node(Op::kAtom, std::move(pred), std::move(args), {}, {});
}
Formula equals(Term a, Term b) { return make_node(Op::kEq, "", {std::move(a), std::move(b)}, {}, {}); }
Formula negate(Formula f) { return make_node(Op::kNot, "", {}, {std::move(f)}, {}); }
Formula conj(Formula a, Formula b) { return make_node(Op::kAnd, "", {}, {std::move(a), std::move(b)}, {}); }
Formula disj(Formula a, Formula b) { return make_node(Op::kOr, "", {}, {std::move(a), std::move(b)}, {}); }
Formula implies(Formula a, Formula b) {
  return make_node(Op::kImplies, "", {}, {std::move(a), std::move(b)}, {});
}
Formula iff(Formula a, Formula b) { return make_node(Op::kIff, "", {}, {std::move(a), std::move(b)}, {}); }
Formula forall(std::string var, Formula body) {
  return make_node(Op::kForall, std::move(var), {}, {std::move(body)}, {});
}
Formula exists(std::string var, Formula body) {
  return make_node(Op::kExists, std::move(var), {}, {std::move(body)}, {});
}
Formula cond(Formula a, Formula b) { return make_node(Op::kCond, "", {}, {std::move(a), std::move(b)}, {}); }
Formula stat_cond(std::vector<std::string> vars, Formula a, Formula b) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.empty()) throw ParseError("statistical conditional needs a nonempty variable set");
  return make_node(Op::kStatCond, "", {}, {std::move(a), std::move(b)}, std::move(vars));
}
Formula nec(Formula f) { return make_node(Op::kNec, "", {}, {std::move(f)}, {}); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return truth();
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = conj(out, fs[i]);
  return out;
}

Formula forall_all(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  return make_node(f.op(), f.symbol(), f.terms(), std::move(kids), f.bound());
}

Term subst_term(const Term& t, std::string_view var, const Term& by) {
  if (t.is_var()) return t.name() == var ? by : t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(subst_term(a, var, by));
  return Term::func(t.name(), std::move(args));
}

bool binds(const Formula& f, std::string_view var) {
  if (f.op() == Op::kForall || f.op() == Op::kExists) return f.symbol() == var;
  if (f.op() == Op::kStatCond)
    return std::find(f.bound().begin(), f.bound().end(), var) != f.bound().end();
  return false;
}

Formula subst(const Formula& f, std::string_view var, const Term& by) {
  if (!occurs_free(f, var)) return f;
  switch (f.op()) {
    case Op::kAtom:
    case Op::kEq: {
      std::vector<Term> ts;
      for (const Term& t : f.terms()) ts.push_back(subst_term(t, var, by));
      return make_node(f.op(), f.symbol(), std::move(ts), {}, {});
    }
    default: {
      std::vector<Formula> kids;
      for (const Formula& k : f.children()) kids.push_back(subst(k, var, by));
      return rebuild(f, std::move(kids));
    }
  }
}

}  // namespace

Formula desugar(const Formula& f) {
  if (!f.has_subj_cond()) return f;
  if (f.op() == Op::kNec) return cond(negate(desugar(f.child(0))), falsity());
  std::vector<Formula> kids;
  for (const Formula& k : f.children()) kids.push_back(desugar(k));
  return rebuild(f, std::move(kids));
}

bool occurs_free(const Formula& f, std::string_view var) {
  return std::binary_search(f.free_vars().begin(), f.free_vars().end(), var,
                            [](const auto& a, const auto& b) { return std::string_view(a) < std::string_view(b); });
}

bool occurs(const Formula& f, std::string_view var) {
  if (binds(f, var)) return true;
  for (const Term& t : f.terms())
    if (t.mentions(var)) return true;
  for (const Formula& k : f.children())
    if (occurs(k, var)) return true;
  return false;
}

bool fo_substitutable(const Formula& f, std::string_view var, const Term& t) {
  if (!occurs_free(f, var)) return true;
  if (f.op() == Op::kForall || f.op() == Op::kExists) {
    if (t.mentions(f.symbol())) return false;
  } else if (f.op() == Op::kStatCond) {
    for (const std::string& v : f.bound())
      if (t.mentions(v)) return false;
  }
  for (const Formula& k : f.children())
    if (!fo_substitutable(k, var, t)) return false;
  return true;
}

bool substitutable(const Formula& f, std::string_view var, const Term& t) {
  if (f.has_modal() && !t.is_var()) return false;
  return fo_substitutable(f, var, t);
}

Formula substitute(const Formula& f, std::string_view var, const Term& t) {
  if (!substitutable(f, var, t)) {
    if (f.has_modal() && !t.is_var())
      throw SubstitutionError("only variables may be substituted into a formula with conditionals; '" +
                              print(t) + "' is not a variable");
    throw SubstitutionError("substituting '" + print(t) + "' for " + std::string(var) + " in " + print(f) +
                            " would capture a variable");
  }
  return subst(f, var, t);
}

Formula fo_substitute(const Formula& f, std::string_view var, const Term& t) {
  if (!fo_substitutable(f, var, t))
    throw SubstitutionError("substituting '" + print(t) + "' for " + std::string(var) + " in " + print(f) +
                            " would capture a variable");
  return subst(f, var, t);
}

Formula universal_closure(const Formula& f) { return forall_all(f.free_vars(), f); }

int stat_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') return 0;
  int v = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 0;
    if (v > 100000) return 0;
    v = v * 10 + (name[i] - '0');
  }
  return v;
}

bool looks_like_subj_var(std::string_view name) {
  if (name.empty() || name[0] < 'u' || name[0] > 'z') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// ---------------------------------------------------------------------------
// Vocabulary

void Vocabulary::add_predicate(const std::string& name, int arity) {
  if (functions_.count(name)) throw ArityError("'" + name + "' is used both as a function and as a predicate");
  auto [it, fresh] = predicates_.emplace(name, arity);
  if (!fresh && it->second != arity)
    throw ArityError("predicate '" + name + "' used with arity " + std::to_string(arity) + " and " +
                     std::to_string(it->second));
}

void Vocabulary::add_function(const std::string& name, int arity) {
  if (predicates_.count(name)) throw ArityError("'" + name + "' is used both as a predicate and as a function");
  auto [it, fresh] = functions_.emplace(name, arity);
  if (!fresh && it->second != arity)
    throw ArityError("function '" + name + "' used with arity " + std::to_string(arity) + " and " +
                     std::to_string(it->second));
}

namespace {
void absorb_term(Vocabulary& v, const Term& t) {
  if (t.is_var()) return;
  v.add_function(t.name(), static_cast<int>(t.args().size()));
  for (const Term& a : t.args()) absorb_term(v, a);
}
}  // namespace

void Vocabulary::absorb(const Formula& f) {
  if (f.op() == Op::kAtom) add_predicate(f.symbol(), static_cast<int>(f.terms().size()));
  for (const Term& t : f.terms()) absorb_term(*this, t);
  for (const Formula& k : f.children()) absorb(k);
}

std::optional<int> Vocabulary::predicate_arity(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Vocabulary::function_arity(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) return std::nullopt;
  return it->second;
}

bool Vocabulary::covers(const Vocabulary& other) const {
  for (const auto& [n, a] : other.predicates_)
    if (predicate_arity(n) != a) return false;
  for (const auto& [n, a] : other.functions_)
    if (function_arity(n) != a) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok {
  kEnd,
  kIdent,
  kLParen,
  kRParen,
  kComma,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kCond,
  kStatOpen,
  kStatClose,
  kEq,
  kNeq,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t col;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto err = [&](const std::string& msg) { throw ParseError("column " + std::to_string(i + 1) + ": " + msg); };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (starts("<->")) {
      out.push_back({Tok::kIff, "<->", col});
      i += 3;
    } else if (starts("->")) {
      out.push_back({Tok::kImplies, "->", col});
      i += 2;
    } else if (starts("=>")) {
      out.push_back({Tok::kCond, "=>", col});
      i += 2;
    } else if (starts("=[")) {
      out.push_back({Tok::kStatOpen, "=[", col});
      i += 2;
    } else if (starts("]=>")) {
      out.push_back({Tok::kStatClose, "]=>", col});
      i += 3;
    } else if (starts("!=")) {
      out.push_back({Tok::kNeq, "!=", col});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::kLParen; break;
        case ')': k = Tok::kRParen; break;
        case ',': k = Tok::kComma; break;
        case '~': k = Tok::kNot; break;
        case '&': k = Tok::kAnd; break;
        case '|': k = Tok::kOr; break;
        case '=': k = Tok::kEq; break;
        default: err(std::string("unexpected character '") + c + "'");
      }
      out.push_back({k, std::string(1, c), col});
      ++i;
    }
  }
  out.push_back({Tok::kEnd, "", s.size() + 1});
  return out;
}

bool is_keyword(std::string_view w) {
  return w == "forall" || w == "exists" || w == "true" || w == "false" || w == "N";
}

class Parser {
 public:
  Parser(std::string_view text, Lang lang, Vocabulary* vocab) : toks_(lex(text)), lang_(lang), vocab_(vocab) {}

  Formula top() {
    Formula f = formula_or_conditional();
    expect(Tok::kEnd, "end of input");
    return f;
  }

  Term term_only() {
    Term t = term();
    expect(Tok::kEnd, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("column " + std::to_string(peek().col) + ": " + msg);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + (peek().kind == Tok::kEnd ? " but input ended" : " near '" + peek().text + "'"));
  }

  Formula formula_or_conditional() {
    Formula lhs = formula();
    if (accept(Tok::kCond)) {
      if (lang_ == Lang::kStat) fail("subjective conditional '=>' in a statistical formula");
      return cond(lhs, formula());
    }
    if (peek().kind == Tok::kStatOpen) {
      if (lang_ == Lang::kSubj) fail("statistical conditional '=[..]=>' in a subjective formula");
      next();
      std::vector<std::string> vars;
      if (peek().kind == Tok::kStatClose) fail("statistical conditional needs at least one variable");
      do {
        if (peek().kind != Tok::kIdent) fail("expected a variable in the conditional's variable set");
        std::string v = next().text;
        if (stat_index(v) == 0) fail("'" + v + "' is not a statistical variable (x1, x2, ...)");
        vars.push_back(v);
      } while (accept(Tok::kComma));
      expect(Tok::kStatClose, "']=>'");
      std::vector<std::string> saved = bound_;
      bound_.insert(bound_.end(), vars.begin(), vars.end());
      Formula rhs = formula();
      bound_ = saved;
      // lhs was parsed before the varset was known; its variables follow the
      // x<k> convention so they are already classified correctly.
      return stat_cond(vars, lhs, rhs);
    }
    return lhs;
  }

  Formula formula() {
    Formula lhs = implication();
    if (accept(Tok::kIff)) {
      Formula rhs = implication();
      if (peek().kind == Tok::kIff) fail("'<->' is not associative; add parentheses");
      return iff(lhs, rhs);
    }
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::kImplies)) return implies(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::kOr)) f = disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::kAnd)) f = conj(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::kNot)) return negate(unary());
    if (peek().kind == Tok::kIdent) {
      const std::string& w = peek().text;
      if (w == "N") {
        if (lang_ == Lang::kStat) fail("'N' is only available in the subjective language");
        next();
        return nec(unary());
      }
      if (w == "forall" || w == "exists") {
        bool universal = w == "forall";
        next();
        if (peek().kind != Tok::kIdent || is_keyword(peek().text)) fail("expected a variable after quantifier");
        std::string v = next().text;
        if (lang_ == Lang::kStat && stat_index(v) == 0)
          fail("'" + v + "' is not a statistical variable (x1, x2, ...)");
        bound_.push_back(v);
        Formula body = unary();
        bound_.pop_back();
        return universal ? forall(v, body) : exists(v, body);
      }
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::kLParen) {
      next();
      Formula f = formula_or_conditional();
      expect(Tok::kRParen, "')'");
      return f;
    }
    if (t.kind != Tok::kIdent) fail(t.kind == Tok::kEnd ? "unexpected end of input" : "unexpected '" + t.text + "'");
    if (t.text == "true") {
      next();
      return truth();
    }
    if (t.text == "false") {
      next();
      return falsity();
    }
    if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
    std::size_t save = pos_;
    std::string name = next().text;
    bool has_args = peek().kind == Tok::kLParen;
    std::vector<Term> args;
    if (has_args) args = arguments();
    if (peek().kind == Tok::kEq || peek().kind == Tok::kNeq) {
      pos_ = save;
      Term lhs = term();
      bool negated = next().kind == Tok::kNeq;
      Term rhs = term();
      Formula e = equals(lhs, rhs);
      return negated ? negate(e) : e;
    }
    if (is_variable(name)) {
      pos_ = save;
      fail("variable '" + name + "' used as a formula");
    }
    register_predicate(name, static_cast<int>(args.size()), save);
    return atom(name, std::move(args));
  }

  std::vector<Term> arguments() {
    expect(Tok::kLParen, "'('");
    std::vector<Term> args;
    if (peek().kind == Tok::kRParen) fail("empty argument list; write the symbol without parentheses");
    do {
      args.push_back(term());
    } while (accept(Tok::kComma));
    expect(Tok::kRParen, "')'");
    return args;
  }

  Term term() {
    if (peek().kind != Tok::kIdent || is_keyword(peek().text)) fail("expected a term");
    std::size_t at = pos_;
    std::string name = next().text;
    if (peek().kind == Tok::kLParen) {
      if (is_variable(name)) {
        pos_ = at;
        fail("variable '" + name + "' applied to arguments");
      }
      std::vector<Term> args = arguments();
      register_function(name, static_cast<int>(args.size()), at);
      return Term::func(name, std::move(args));
    }
    if (is_variable(name)) return Term::var(name);
    register_function(name, 0, at);
    return Term::func(name);
  }

  bool is_variable(const std::string& name) const {
    if (std::find(bound_.begin(), bound_.end(), name) != bound_.end()) return true;
    return lang_ == Lang::kStat ? stat_index(name) > 0 : looks_like_subj_var(name);
  }

  void register_predicate(const std::string& name, int arity, std::size_t at) {
    try {
      local_.add_predicate(name, arity);
      if (vocab_) vocab_->add_predicate(name, arity);
    } catch (const ArityError& e) {
      throw ArityError("column " + std::to_string(toks_[at].col) + ": " + e.what());
    }
  }

  void register_function(const std::string& name, int arity, std::size_t at) {
    try {
      local_.add_function(name, arity);
      if (vocab_) vocab_->add_function(name, arity);
    } catch (const ArityError& e) {
      throw ArityError("column " + std::to_string(toks_[at].col) + ": " + e.what());
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Lang lang_;
  Vocabulary* vocab_;
  Vocabulary local_;
  std::vector<std::string> bound_;
};

}  // namespace

Formula parse(std::string_view text, Lang lang, Vocabulary* vocab) {
  Parser p(text, lang, vocab);
  return p.top();
}

Term parse_term(std::string_view text, Lang lang) {
  Parser p(text, lang, nullptr);
  return p.term_only();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::kIff: return 1;
    case Op::kImplies: return 2;
    case Op::kOr: return 3;
    case Op::kAnd: return 4;
    case Op::kNot:
      return f.child(0).op() == Op::kEq ? 6 : 5;
    case Op::kNec:
    case Op::kForall:
    case Op::kExists: return 5;
    default: return 6;
  }
}

void print_term(const Term& t, std::string& out) {
  out += t.name();
  if (t.is_var() || t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    print_term(t.args()[i], out);
  }
  out += ')';
}

void print_formula(const Formula& f, int ctx, std::string& out, bool top);

void print_conditional(const Formula& f, std::string& out, bool wrap) {
  if (wrap) out += '(';
  print_formula(f.child(0), 0, out, false);
  if (f.op() == Op::kCond) {
    out += " => ";
  } else {
    out += " =[";
    for (std::size_t i = 0; i < f.bound().size(); ++i) {
      if (i) out += ',';
      out += f.bound()[i];
    }
    out += "]=> ";
  }
  print_formula(f.child(1), 0, out, false);
  if (wrap) out += ')';
}

void print_formula(const Formula& f, int ctx, std::string& out, bool top) {
  if (f.op() == Op::kCond || f.op() == Op::kStatCond) {
    print_conditional(f, out, !top);
    return;
  }
  int prec = precedence(f);
  bool paren = prec < ctx;
  if (paren) out += '(';
  switch (f.op()) {
    case Op::kTrue: out += "true"; break;
    case Op::kFalse: out += "false"; break;
    case Op::kAtom:
      out += f.symbol();
      if (!f.terms().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out += ',';
          print_term(f.terms()[i], out);
        }
        out += ')';
      }
      break;
    case Op::kEq:
      print_term(f.terms()[0], out);
      out += " = ";
      print_term(f.terms()[1], out);
      break;
    case Op::kNot:
      if (f.child(0).op() == Op::kEq) {
        print_term(f.child(0).terms()[0], out);
        out += " != ";
        print_term(f.child(0).terms()[1], out);
      } else {
        out += '~';
        print_formula(f.child(0), 5, out, false);
      }
      break;
    case Op::kNec:
      out += "N ";
      print_formula(f.child(0), 5, out, false);
      break;
    case Op::kForall:
    case Op::kExists:
      out += f.op() == Op::kForall ? "forall " : "exists ";
      out += f.symbol();
      out += ' ';
      print_formula(f.child(0), 5, out, false);
      break;
    case Op::kAnd:
      print_formula(f.child(0), 4, out, false);
      out += " & ";
      print_formula(f.child(1), 5, out, false);
      break;
    case Op::kOr:
      print_formula(f.child(0), 3, out, false);
      out += " | ";
      print_formula(f.child(1), 4, out, false);
      break;
    case Op::kImplies:
      print_formula(f.child(0), 3, out, false);
      out += " -> ";
      print_formula(f.child(1), 2, out, false);
      break;
    case Op::kIff:
      print_formula(f.child(0), 2, out, false);
      out += " <-> ";
      print_formula(f.child(1), 2, out, false);
      break;
    default: break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_formula(f, 0, out, true);
  return out;
}

std::string print(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

}  // namespace plauslab
