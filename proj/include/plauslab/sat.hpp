#pragma once

#include <cstdint>
#include <vector>

namespace plauslab {

// A small CDCL solver: two watched literals, first-UIP learning, activity
// ordering and geometric restarts. Literal 2v is variable v, 2v+1 its negation.
class SatSolver {
 public:
  using Lit = int;
  static Lit pos(int v) { return 2 * v; }
  static Lit neg(int v) { return 2 * v + 1; }
  static Lit negate(Lit l) { return l ^ 1; }

  int new_var();
  int vars() const { return static_cast<int>(value_.size()); }
  void add_clause(std::vector<Lit> clause);
  bool solve();
  // After a satisfiable solve().
  bool model(int v) const { return model_[v] == 1; }
  std::uint64_t conflicts() const { return conflicts_; }

 private:
  int lit_value(Lit l) const;  // 1 true, 0 false, -1 unassigned
  void enqueue(Lit l, int reason);
  int propagate();  // conflicting clause or -1
  void analyze(int conflict, std::vector<Lit>& learnt, int& back_level);
  void backtrack(int level);
  int pick_branch() const;
  void bump(int v);
  int add_learnt(const std::vector<Lit>& c);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;  // per literal: clauses watching it
  std::vector<signed char> value_;
  std::vector<signed char> phase_;
  std::vector<signed char> model_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::vector<Lit> units_;
  std::size_t head_ = 0;
  double bump_ = 1.0;
  bool empty_clause_ = false;
  std::uint64_t conflicts_ = 0;
};

}  // namespace plauslab
