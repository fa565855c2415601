#include <random>

#include "doctest.h"
#include "plauslab/sat.hpp"

using namespace plauslab;

namespace {

using Clause = std::vector<int>;  // DIMACS style: +v / -v, v >= 1

bool satisfied(const std::vector<Clause>& cnf, unsigned assignment) {
  for (const Clause& c : cnf) {
    bool any = false;
    for (int l : c) {
      bool val = (assignment >> (std::abs(l) - 1)) & 1;
      if ((l > 0) == val) any = true;
    }
    if (!any) return false;
  }
  return true;
}

bool brute_force(const std::vector<Clause>& cnf, int vars) {
  for (unsigned a = 0; a < (1u << vars); ++a)
    if (satisfied(cnf, a)) return true;
  return false;
}

}  // namespace

TEST_CASE("sat solver agrees with brute force on random 3-CNF") {
  std::mt19937_64 rng(7);
  int sat_count = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const int vars = std::uniform_int_distribution<int>(1, 12)(rng);
    const int clauses = std::uniform_int_distribution<int>(0, 6 * vars)(rng);
    std::vector<Clause> cnf;
    for (int i = 0; i < clauses; ++i) {
      Clause c;
      const int width = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int k = 0; k < width; ++k) {
        int v = std::uniform_int_distribution<int>(1, vars)(rng);
        c.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? v : -v);
      }
      cnf.push_back(c);
    }
    SatSolver s;
    for (int v = 0; v < vars; ++v) s.new_var();
    for (const Clause& c : cnf) {
      std::vector<SatSolver::Lit> lits;
      for (int l : c) lits.push_back(l > 0 ? SatSolver::pos(l - 1) : SatSolver::neg(-l - 1));
      s.add_clause(lits);
    }
    const bool expected = brute_force(cnf, vars);
    const bool got = s.solve();
    REQUIRE(got == expected);
    if (got) {
      ++sat_count;
      unsigned a = 0;
      for (int v = 0; v < vars; ++v)
        if (s.model(v)) a |= 1u << v;
      CHECK(satisfied(cnf, a));
    }
  }
  CHECK(sat_count > 100);
  CHECK(sat_count < 1400);
}

TEST_CASE("sat solver edge cases") {
  SatSolver empty;
  CHECK(empty.solve());

  SatSolver contradiction;
  int v = contradiction.new_var();
  contradiction.add_clause({SatSolver::pos(v)});
  contradiction.add_clause({SatSolver::neg(v)});
  CHECK_FALSE(contradiction.solve());

  SatSolver empty_clause;
  empty_clause.new_var();
  empty_clause.add_clause({});
  CHECK_FALSE(empty_clause.solve());

  SatSolver tautology;
  int t = tautology.new_var();
  tautology.add_clause({SatSolver::pos(t), SatSolver::neg(t)});
  CHECK(tautology.solve());
}

TEST_CASE("pigeonhole 5 into 4 is unsatisfiable") {
  const int pigeons = 5, holes = 4;
  SatSolver s;
  auto var = [&](int p, int h) { return p * holes + h; };
  for (int i = 0; i < pigeons * holes; ++i) s.new_var();
  for (int p = 0; p < pigeons; ++p) {
    std::vector<SatSolver::Lit> c;
    for (int h = 0; h < holes; ++h) c.push_back(SatSolver::pos(var(p, h)));
    s.add_clause(c);
  }
  for (int h = 0; h < holes; ++h)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q) s.add_clause({SatSolver::neg(var(p, h)), SatSolver::neg(var(q, h))});
  CHECK_FALSE(s.solve());
  CHECK(s.conflicts() > 0);
}
