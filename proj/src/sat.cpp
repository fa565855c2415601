#include "plauslab/sat.hpp"

#include <algorithm>

namespace plauslab {

int SatSolver::new_var() {
  value_.push_back(-1);
  phase_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  watches_.emplace_back();
  watches_.emplace_back();
  return vars() - 1;
}

int SatSolver::lit_value(Lit l) const {
  int v = value_[l >> 1];
  return v < 0 ? -1 : v ^ (l & 1);
}

void SatSolver::add_clause(std::vector<Lit> clause) {
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (std::size_t i = 1; i < clause.size(); ++i)
    if (clause[i] == negate(clause[i - 1])) return;  // tautology
  if (clause.empty()) {
    empty_clause_ = true;
    return;
  }
  if (clause.size() == 1) {
    units_.push_back(clause[0]);
    return;
  }
  const int idx = static_cast<int>(clauses_.size());
  watches_[clause[0]].push_back(idx);
  watches_[clause[1]].push_back(idx);
  clauses_.push_back(std::move(clause));
}

void SatSolver::enqueue(Lit l, int reason) {
  const int v = l >> 1;
  value_[v] = static_cast<signed char>((l & 1) ^ 1);
  level_[v] = static_cast<int>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(l);
}

// Watches are keyed by the watched literal; a clause is visited when one of
// its two watched literals becomes false.
int SatSolver::propagate() {
  while (head_ < trail_.size()) {
    const Lit falsified = negate(trail_[head_++]);
    std::vector<int>& ws = watches_[falsified];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const int ci = ws[i];
      std::vector<Lit>& c = clauses_[ci];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k)
        if (lit_value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      if (moved) continue;
      ws[keep++] = ci;
      if (lit_value(c[0]) == 0) {
        for (std::size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
        ws.resize(keep);
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(keep);
  }
  return -1;
}

void SatSolver::bump(int v) {
  activity_[v] += bump_;
  if (activity_[v] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    bump_ *= 1e-100;
  }
}

void SatSolver::analyze(int conflict, std::vector<Lit>& learnt, int& back_level) {
  std::vector<char> seen(vars(), 0);
  const int current = static_cast<int>(trail_lim_.size());
  int pending = 0;
  Lit uip = -1;
  std::size_t idx = trail_.size();
  learnt.assign(1, -1);
  int ci = conflict;
  while (true) {
    for (Lit l : clauses_[ci]) {
      if (l == uip) continue;
      const int v = l >> 1;
      if (seen[v] || level_[v] == 0) continue;
      seen[v] = 1;
      bump(v);
      if (level_[v] == current) ++pending;
      else learnt.push_back(l);
    }
    do --idx;
    while (!seen[trail_[idx] >> 1]);
    uip = trail_[idx];
    seen[uip >> 1] = 0;
    if (--pending == 0) break;
    ci = reason_[uip >> 1];
  }
  learnt[0] = negate(uip);
  back_level = 0;
  std::size_t best = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (level_[learnt[i] >> 1] > back_level) {
      back_level = level_[learnt[i] >> 1];
      best = i;
    }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[best]);
  bump_ /= 0.95;
}

void SatSolver::backtrack(int level) {
  if (static_cast<int>(trail_lim_.size()) <= level) return;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[level]);) {
    const int v = trail_[i] >> 1;
    phase_[v] = value_[v];
    value_[v] = -1;
    reason_[v] = -1;
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  head_ = trail_.size();
}

int SatSolver::pick_branch() const {
  int best = -1;
  for (int v = 0; v < vars(); ++v)
    if (value_[v] < 0 && (best < 0 || activity_[v] > activity_[best])) best = v;
  return best;
}

int SatSolver::add_learnt(const std::vector<Lit>& c) {
  const int idx = static_cast<int>(clauses_.size());
  clauses_.push_back(c);
  watches_[c[0]].push_back(idx);
  watches_[c[1]].push_back(idx);
  return idx;
}

bool SatSolver::solve() {
  if (empty_clause_) return false;
  backtrack(0);
  for (Lit u : units_) {
    int val = lit_value(u);
    if (val == 0) return false;
    if (val < 0) enqueue(u, -1);
  }
  if (propagate() >= 0) return false;
  std::uint64_t restart_at = 100;
  std::uint64_t since_restart = 0;
  std::vector<Lit> learnt;
  while (true) {
    const int conflict = propagate();
    if (conflict >= 0) {
      ++conflicts_;
      ++since_restart;
      if (trail_lim_.empty()) return false;
      int back_level = 0;
      analyze(conflict, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
        units_.push_back(learnt[0]);
      } else {
        enqueue(learnt[0], add_learnt(learnt));
      }
      continue;
    }
    if (since_restart >= restart_at) {
      since_restart = 0;
      restart_at = restart_at * 3 / 2;
      backtrack(0);
      continue;
    }
    const int v = pick_branch();
    if (v < 0) {
      model_ = value_;
      return true;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(phase_[v] == 1 ? pos(v) : neg(v), -1);
  }
}

}  // namespace plauslab
