#include "plauslab/catalogue.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

#include "plauslab/error.hpp"

namespace plauslab {

namespace {

Mask image(Mask a, const std::vector<int>& perm) {
  if (perm.empty()) return a;
  Mask out = 0;
  for (int i : members(a)) out |= Mask{1} << perm[i];
  return out;
}

int image(int a, const std::vector<int>& perm) { return static_cast<int>(image(static_cast<Mask>(a), perm)); }

// Strict orders on m labelled elements, one per relabelling class.
std::vector<std::vector<std::vector<bool>>> strict_orders(int m) {
  std::vector<std::vector<std::vector<bool>>> out;
  const int pairs = m * m;
  for (long mask = 0; mask < (1L << pairs); ++mask) {
    std::vector<std::vector<bool>> lt(m, std::vector<bool>(m));
    bool bad = false;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        lt[i][j] = (mask >> (i * m + j)) & 1;
        if (i == j && lt[i][j]) bad = true;
      }
    for (int i = 0; i < m && !bad; ++i)
      for (int j = 0; j < m && !bad; ++j)
        for (int k = 0; k < m && !bad; ++k)
          if (lt[i][j] && lt[j][k] && !lt[i][k]) bad = true;
    if (bad) continue;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    bool canonical = true;
    while (canonical && std::next_permutation(perm.begin(), perm.end())) {
      long relabelled = 0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (lt[i][j]) relabelled |= 1L << (perm[i] * m + perm[j]);
      if (relabelled < mask) canonical = false;
    }
    if (canonical) out.push_back(lt);
  }
  return out;
}

class Enumerator {
 public:
  Enumerator(int n, std::vector<std::vector<bool>> le, std::vector<std::string> names,
             std::map<std::string, std::shared_ptr<const FiniteMeasure>>& found)
      : n_(n), subsets_(1 << n), le_(std::move(le)), names_(std::move(names)), found_(found) {
    for (int pc = 1; pc < n_; ++pc)
      for (int s = 1; s < subsets_ - 1; ++s)
        if (std::popcount(static_cast<unsigned>(s)) == pc) order_.push_back(s);
    std::vector<int> pos(subsets_, -1);
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = static_cast<int>(i);
    triples_.assign(order_.size() + 1, {});
    pairs_.assign(order_.size() + 1, {});
    // each check runs as soon as the last of its sets is assigned
    for (int a = 0; a < subsets_; ++a)
      for (int b = 0; b < subsets_; ++b) {
        if (a & b) continue;
        for (int c = 0; c < subsets_; ++c) {
          if (c & (a | b)) continue;
          int last = std::max({pos[a | b], pos[a | c], pos[a], pos[b | c], pos[b], pos[c]});
          if (last >= 0) triples_[last].push_back({a, b, c});
        }
        int last = std::max({pos[a], pos[b], pos[a | b]});
        if (last >= 0) pairs_[last].push_back({a, b});
      }
    assign_.assign(subsets_, -1);
    assign_[0] = 0;
    assign_[subsets_ - 1] = static_cast<int>(le_.size()) - 1;
  }

  void run() { rec(0); }

 private:
  bool greater(int a, int b) const { return a != b && le_[b][a]; }

  void rec(std::size_t idx) {
    if (idx == order_.size()) {
      emit();
      return;
    }
    const int s = order_[idx];
    const int values = static_cast<int>(le_.size());
    for (int v = 0; v < values; ++v) {
      bool ok = true;
      for (int i = 0; i < n_ && ok; ++i)
        if ((s >> i) & 1) ok = le_[assign_[s & ~(1 << i)]][v];
      if (!ok) continue;
      assign_[s] = v;
      for (const auto& [a, b, c] : triples_[idx])
        if (greater(assign_[a | b], assign_[c]) && greater(assign_[a | c], assign_[b]) &&
            !greater(assign_[a], assign_[b | c])) {
          ok = false;
          break;
        }
      if (ok)
        for (const auto& [a, b] : pairs_[idx])
          if (assign_[a] == 0 && assign_[b] == 0 && assign_[a | b] != 0) {
            ok = false;
            break;
          }
      if (ok) rec(idx + 1);
    }
    assign_[s] = -1;
  }

  bool raw_less(int a, int b) const { return greater(assign_[b], assign_[a]); }

  std::string raw_signature(const std::vector<int>& perm) const {
    std::string sig;
    for (int a = 0; a < subsets_; ++a) sig.push_back(assign_[image(a, perm)] == 0 ? 'b' : 'n');
    for (int a = 0; a < subsets_; ++a)
      for (int b = 0; b < subsets_; ++b)
        if (!(a & b)) sig.push_back(raw_less(image(b, perm), image(a, perm)) ? '1' : '0');
    return sig;
  }

  void emit() {
    if (!seen_.insert(raw_signature({})).second) return;
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
      std::string sig = raw_signature(perm);
      if (best.empty() || sig < best) best = sig;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (found_.count(best)) return;
    std::vector<std::pair<ValueId, ValueId>> pairs;
    const int k = static_cast<int>(le_.size());
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (le_[a][b]) pairs.emplace_back(a, b);
    found_.emplace(best, std::make_shared<FiniteMeasure>(n_, PlausibilityPoset::from_pairs(names_, pairs, 0, k - 1),
                                                         std::vector<ValueId>(assign_.begin(), assign_.end())));
  }

  int n_;
  int subsets_;
  std::vector<std::vector<bool>> le_;
  std::vector<std::string> names_;
  std::map<std::string, std::shared_ptr<const FiniteMeasure>>& found_;
  std::vector<int> order_;
  std::vector<std::vector<std::array<int, 3>>> triples_;
  std::vector<std::vector<std::pair<int, int>>> pairs_;
  std::vector<int> assign_;
  std::set<std::string> seen_;
};

std::vector<std::shared_ptr<const FiniteMeasure>> build(int n, int middle) {
  std::map<std::string, std::shared_ptr<const FiniteMeasure>> found;
  for (int m = 0; m <= middle; ++m) {
    for (const auto& lt : strict_orders(m)) {
      std::vector<std::vector<bool>> le(m + 2, std::vector<bool>(m + 2, false));
      for (int i = 0; i < m + 2; ++i) le[0][i] = le[i][m + 1] = le[i][i] = true;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (lt[i][j]) le[i + 1][j + 1] = true;
      std::vector<std::string> names{"bot"};
      for (int i = 0; i < m; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
      names.push_back("top");
      Enumerator(n, le, names, found).run();
    }
  }
  std::vector<std::shared_ptr<const FiniteMeasure>> out;
  out.push_back(std::make_shared<FiniteMeasure>(n, PlausibilityPoset::chain({"bot=top"}),
                                                std::vector<ValueId>(std::size_t{1} << n, 0)));
  for (auto& [sig, pl] : found) out.push_back(pl);
  return out;
}

}  // namespace

std::string conditional_signature(const SetPlausibility& pl, const std::vector<int>& perm) {
  const Mask subsets = Mask{1} << pl.size();
  std::string sig;
  for (Mask a = 0; a < subsets; ++a) sig.push_back(pl.is_bottom(image(a, perm)) ? 'b' : 'n');
  for (Mask a = 0; a < subsets; ++a)
    for (Mask b = 0; b < subsets; ++b)
      if (!(a & b)) sig.push_back(pl.less(image(b, perm), image(a, perm)) ? '1' : '0');
  return sig;
}

const std::vector<std::shared_ptr<const FiniteMeasure>>& qualitative_catalogue(int worlds, int middle) {
  if (worlds < 1 || worlds > 4) throw CapacityError("the qualitative catalogue covers 1 to 4 worlds");
  if (middle < 0 || middle > 4) throw CapacityError("the qualitative catalogue covers at most 4 middle values");
  static std::map<std::pair<int, int>, std::vector<std::shared_ptr<const FiniteMeasure>>> cache;
  auto key = std::make_pair(worlds, middle);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build(worlds, middle)).first;
  return it->second;
}

}  // namespace plauslab
