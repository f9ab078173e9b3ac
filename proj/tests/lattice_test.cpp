#include <gtest/gtest.h>

#include <random>

#include "endokit/lattice.hpp"

using namespace endokit;

namespace {

LatVec random_lat(std::mt19937& rng, std::size_t n, int bound = 5) {
  std::uniform_int_distribution<int> d(-bound, bound);
  LatVec v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

LatAut random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix m = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-2, 2);
  for (int step = 0; step < 6; ++step) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) m(i, k) += c * m(j, k);
  }
  return LatAut(m);
}

}  // namespace

TEST(Pairing, Examples) {
  EXPECT_EQ(pair(LatVec{1, -1}, LatVec{1, 0}), 1);
  EXPECT_EQ(pair(LatVec{1, -1}, TorsionVec{Rational(1, 2), Rational(1, 2)}), 0);
  EXPECT_EQ(pair(LatVec{2, 0, -1}, TorsionVec{Rational(1, 3), 0, Rational(1, 3)}), Rational(1, 3));
}

TEST(Pairing, DimensionMismatchThrows) {
  EXPECT_THROW(pair(LatVec{1, 2}, LatVec{1, 2, 3}), DimensionError);
}

TEST(Pairing, Bilinear) {
  std::mt19937 rng(7);
  for (int it = 0; it < 200; ++it) {
    auto x = random_lat(rng, 4), y = random_lat(rng, 4), z = random_lat(rng, 4);
    Integer a = static_cast<long>(rng() % 7) - 3;
    EXPECT_EQ(pair(a * x + z, y), Rational(a) * pair(x, y) + pair(z, y));
    EXPECT_EQ(pair(x, a * y + z), Rational(a) * pair(x, y) + pair(x, z));
  }
}

TEST(Pairing, ContragredientPreservesPairing) {
  std::mt19937 rng(11);
  for (int it = 0; it < 100; ++it) {
    auto g = random_unimodular(rng, 3);
    auto x = random_lat(rng, 3), y = random_lat(rng, 3);
    EXPECT_EQ(pair(g.contragredient().apply(x), g.apply(y)), pair(x, y));
  }
}

TEST(LatAut, RejectsNonUnimodular) {
  EXPECT_THROW(LatAut(IntMatrix{{2, 0}, {0, 1}}), ValidationError);
  EXPECT_NO_THROW(LatAut(IntMatrix{{0, 1}, {1, 0}}));
}

TEST(InvariantSubspace, Examples) {
  std::vector<LatAut> id{LatAut::identity(2)};
  auto full = invariant_subspace(id, 2);
  ASSERT_EQ(full.size(), 2u);
  EXPECT_EQ(full[0], (RatVec{1, 0}));
  EXPECT_EQ(full[1], (RatVec{0, 1}));

  std::vector<LatAut> swap{LatAut(IntMatrix{{0, 1}, {1, 0}})};
  auto s = invariant_subspace(swap, 2);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (RatVec{1, 1}));

  std::vector<LatAut> cyc{LatAut(IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})};
  auto c = invariant_subspace(cyc, 3);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], (RatVec{1, 1, 1}));
}

TEST(InvariantSubspace, OutputIsFixed) {
  std::mt19937 rng(3);
  for (int it = 0; it < 50; ++it) {
    std::vector<LatAut> gens{random_unimodular(rng, 3)};
    if (it % 2) gens.push_back(random_unimodular(rng, 3));
    for (const auto& v : invariant_subspace(gens, 3)) {
      for (const auto& g : gens) EXPECT_EQ(g.apply(v), v);
      auto lead = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
      ASSERT_NE(lead, v.end());
      EXPECT_GT(*lead, 0);
    }
  }
}

TEST(TorsionVec, Normalizes) {
  TorsionVec t{Rational(-1, 2), Rational(5, 3)};
  EXPECT_EQ(t[0], Rational(1, 2));
  EXPECT_EQ(t[1], Rational(2, 3));
  EXPECT_EQ(t.order(), 6);
}

TEST(LatticeQuotient, CanonicalRepresentatives) {
  LatticeQuotient q({LatVec{2, 4}, LatVec{0, 6}, LatVec{4, 2}}, 2);
  std::mt19937 rng(5);
  for (int it = 0; it < 100; ++it) {
    auto v = random_lat(rng, 2, 20);
    auto r = q.reduce(v);
    EXPECT_EQ(q.reduce(r), r);
    EXPECT_TRUE(q.contains(v - r));
    EXPECT_EQ(q.reduce(v + 3 * LatVec{2, 4} - LatVec{4, 2}), r);
  }
  EXPECT_FALSE(q.contains(LatVec{1, 0}));
  EXPECT_TRUE(q.contains(LatVec{2, -2}));
}

TEST(LinearAlgebra, SolveAndNullspace) {
  RatMatrix m{{1, 2, 3}, {2, 4, 6}};
  auto ns = nullspace(m);
  EXPECT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_TRUE((m * v).is_zero());
  auto x = solve(m, RatVec{1, 2});
  ASSERT_TRUE(x);
  EXPECT_EQ(m * *x, (RatVec{1, 2}));
  EXPECT_FALSE(solve(m, RatVec{1, 3}));
}
