#include <random>

#include "doctest.h"
#include "plauslab/error.hpp"
#include "plauslab/order.hpp"

using namespace plauslab;

namespace {

PosetSpec spec_from(int n, const std::vector<std::pair<int, int>>& pairs, int bot, int top) {
  PosetSpec s;
  for (int i = 0; i < n; ++i) s.names.push_back("v" + std::to_string(i));
  s.leq.assign(n, std::vector<bool>(n, false));
  for (auto [a, b] : pairs) s.leq[a][b] = true;
  s.bot = bot;
  s.top = top;
  return s;
}

// The embedding property read literally: Pl(A) <= Pl(B) iff every w in A-B
// has some w' in B with w' ≺ w and no w'' in A-B with w'' ≺ w'.
bool embed_oracle(const StrictOrder& o, Mask a, Mask b) {
  for (int w : members(a & ~b)) {
    bool found = false;
    for (int w1 : members(b)) {
      if (!o.prefers(w1, w)) continue;
      bool blocked = false;
      for (int w2 : members(a & ~b))
        if (o.prefers(w2, w1)) blocked = true;
      if (!blocked) found = true;
    }
    if (!found) return false;
  }
  return true;
}

StrictOrder random_order(std::mt19937_64& rng, int n) {
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[i] = i;
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rank[a] < rank[b] && rng() % 3 == 0) pairs.emplace_back(a, b);
  return StrictOrder::from_pairs(n, pairs);
}

}  // namespace

TEST_CASE("validate_poset") {
  // chain bot < a < top
  CHECK_FALSE(validate_poset(spec_from(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}}, 0, 2)).has_value());
  // diamond
  CHECK_FALSE(validate_poset(spec_from(4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}},
                                       0, 3))
                  .has_value());
  // a <= b and b <= a
  auto v = validate_poset(spec_from(4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3},
                                        {1, 2}, {2, 1}},
                                    0, 3));
  REQUIRE(v.has_value());
  CHECK(v->law == PosetViolation::Law::kAntisymmetry);
  CHECK(((v->a == 1 && v->b == 2) || (v->a == 2 && v->b == 1)));

  auto r = validate_poset(spec_from(2, {{0, 1}, {1, 1}}, 0, 1));
  REQUIRE(r.has_value());
  CHECK(r->law == PosetViolation::Law::kReflexivity);
  auto t = validate_poset(spec_from(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}}, 0, 2));
  REQUIRE(t.has_value());
  CHECK(t->law == PosetViolation::Law::kTransitivity);
  auto b = validate_poset(spec_from(3, {{0, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 2}}, 0, 2));
  REQUIRE(b.has_value());
  CHECK(b->law == PosetViolation::Law::kBottom);
}

TEST_CASE("from_pairs closes and validates") {
  auto p = PlausibilityPoset::from_pairs({"bot", "a", "top"}, {{0, 1}, {1, 2}}, 0, 2);
  CHECK(p.leq(0, 2));
  CHECK(p.less(0, 1));
  CHECK_FALSE(p.leq(2, 0));
  CHECK(p.find("a") == 1);
  CHECK_THROWS_AS(PlausibilityPoset::from_pairs({"bot", "a", "b", "top"}, {{0, 1}, {1, 2}, {2, 1}, {2, 3}}, 0, 3),
                  ValidationError);
  auto c = PlausibilityPoset::chain({"0", "1/2", "1"});
  CHECK(c.bottom() == 0);
  CHECK(c.top() == 2);
  CHECK(c.less(1, 2));
}

TEST_CASE("strict orders") {
  CHECK_THROWS_AS(StrictOrder::from_pairs(2, {{0, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(StrictOrder(2, {Mask{1}, 0}), ValidationError);  // w1 before itself
  StrictOrder o = StrictOrder::from_pairs(3, {{0, 1}, {1, 2}});
  CHECK(o.prefers(0, 2));
  CHECK(o.minimal(0b110) == 0b010);
  CHECK(o.minimal(0b111) == 0b001);
}

TEST_CASE("lub_close examples") {
  {
    // w1 ≺ w2
    LubClosure c = lub_close(StrictOrder::from_pairs(2, {{0, 1}}));
    const auto& p = c.poset();
    CHECK(p.less(c.value_of(0b10), c.value_of(0b01)));
    CHECK(c.value_of(0b01) == c.value_of(0b11));
    CHECK(c.value_of(0) == p.bottom());
  }
  {
    LubClosure c = lub_close(StrictOrder::from_pairs(2, {}));
    const auto& p = c.poset();
    CHECK_FALSE(p.comparable(c.value_of(0b01), c.value_of(0b10)));
    CHECK(p.less(c.value_of(0b01), c.value_of(0b11)));
    CHECK(p.less(c.value_of(0b10), c.value_of(0b11)));
    CHECK(c.value_of(0b11) == p.top());
    CHECK(p.size() == 4);
  }
}

TEST_CASE("lub closure is a poset with every subset's lub") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    StrictOrder o = random_order(rng, 1 + static_cast<int>(rng() % 5));
    LubClosure c = lub_close(o);
    PosetSpec s;
    s.names = c.poset().names();
    const int k = c.poset().size();
    s.leq.assign(k, std::vector<bool>(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) s.leq[a][b] = c.poset().leq(a, b);
    s.bot = c.poset().bottom();
    s.top = c.poset().top();
    CHECK_FALSE(validate_poset(s).has_value());
    // value of A is the least upper bound of its singletons
    const Mask all = full_mask(o.worlds());
    for (Mask a = 0; a <= all; ++a) {
      for (int w : members(a)) CHECK(c.poset().leq(c.value_of(Mask{1} << w), c.value_of(a)));
      for (int u = 0; u < k; ++u) {
        bool upper = true;
        for (int w : members(a)) upper = upper && c.poset().leq(c.value_of(Mask{1} << w), u);
        if (upper) CHECK(c.poset().leq(c.value_of(a), u));
      }
    }
  }
}

TEST_CASE("embedding property holds exhaustively on random orders up to 6 worlds") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 6;
    StrictOrder o = random_order(rng, n);
    LubClosure c = lub_close(o);
    const Mask all = full_mask(n);
    for (Mask a = 0; a <= all; ++a)
      for (Mask b = 0; b <= all; ++b) {
        bool expected = embed_oracle(o, a, b);
        CHECK(c.poset().leq(c.value_of(a), c.value_of(b)) == expected);
        CHECK(antichain_leq(o, a, b) == expected);
        if ((a & ~b) == 0) CHECK(expected);  // A1
      }
  }
}
