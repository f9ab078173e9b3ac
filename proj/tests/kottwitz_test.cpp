#include <gtest/gtest.h>

#include <random>

#include "endokit/kottwitz.hpp"
#include "support/oracles.hpp"

using namespace endokit;

namespace {

GaloisForm split(const char* f, std::size_t n) { return GaloisForm::split(builtin_datum(f, n)); }

GaloisForm unitary(std::size_t n) {
  auto d = builtin_datum("U", n);
  return GaloisForm(d, {2}, {opposition_flip(d)});
}

std::set<RatVec> newton_of(const std::vector<KottwitzPoint>& pts) {
  std::set<RatVec> s;
  for (const auto& p : pts) s.insert(p.nu);
  return s;
}

}  // namespace

TEST(Kottwitz, SetSizes) {
  EXPECT_EQ(kottwitz_set(CocharWorld::of_group(split("GL", 2)), LatVec{1, 0}).size(), 2u);
  EXPECT_EQ(kottwitz_set(CocharWorld::of_group(split("GL", 3)), LatVec{1, 0, 0}).size(), 3u);
  EXPECT_EQ(kottwitz_set(CocharWorld::of_group(split("T", 2)), LatVec{3, -1}).size(), 1u);
}

TEST(Kottwitz, UnitaryPoints) {
  auto pts = kottwitz_set(CocharWorld::of_group(unitary(3)), LatVec{1, 0, 0});
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].nu, (RatVec{0, 0, 0}));
  EXPECT_EQ(pts[1].nu, (RatVec{Rational(1, 2), 0, Rational(-1, 2)}));
}

TEST(Kottwitz, AgreesWithNewtonPointScan) {
  std::vector<std::pair<GaloisForm, LatVec>> cases = {
      {split("GL", 2), LatVec{1, 0}},    {split("GL", 3), LatVec{1, 0, 0}}, {split("GL", 3), LatVec{1, 1, 0}},
      {split("GL", 4), LatVec{1, 1, 0, 0}}, {split("T", 2), LatVec{1, -2}},  {unitary(3), LatVec{1, 0, 0}},
      {unitary(3), LatVec{1, 1, 0}},
  };
  for (const auto& [g, mu] : cases) {
    auto w = CocharWorld::of_group(g);
    EXPECT_EQ(newton_of(kottwitz_set(w, mu)), oracle::newton_points(g, mu)) << g.name() << " " << mu.str();
  }
}

// Away from minuscule mu the image of the strictly dominant pairs can miss Newton points:
// (1,1/2,1/2) in B(GL3,(2,0,0)) is not an average of a W-conjugate of mu.
TEST(Kottwitz, NonMinusculeImageIsInsideTheScan) {
  auto g = split("GL", 3);
  LatVec mu{2, 0, 0};
  auto got = newton_of(kottwitz_set(CocharWorld::of_group(g), mu));
  auto all = oracle::newton_points(g, mu);
  EXPECT_TRUE(std::includes(all.begin(), all.end(), got.begin(), got.end()));
  EXPECT_EQ(all.size(), 4u);
  EXPECT_EQ(got.size(), 3u);
  EXPECT_EQ(all.count(RatVec{1, Rational(1, 2), Rational(1, 2)}), 1u);
  EXPECT_EQ(got.count(RatVec{1, Rational(1, 2), Rational(1, 2)}), 0u);
}

TEST(Kottwitz, ThetaMatchesExplicitAverage) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> c(-3, 3);
  for (const auto& g : {split("GL", 4), unitary(3), split("Sp", 4)}) {
    auto w = CocharWorld::of_group(g);
    for (const auto& s : w.levis())
      for (int it = 0; it < 5; ++it) {
        LatVec mu(g.datum().rank());
        for (auto& x : mu) x = c(rng);
        EXPECT_EQ(w.theta(s, mu), oracle::average(g, s, mu));
      }
  }
}

TEST(Kottwitz, PairOrderIsPartialOrder) {
  for (const auto& [g, mu] : std::vector<std::pair<GaloisForm, LatVec>>{
           {split("GL", 3), LatVec{1, 0, 0}}, {split("GL", 4), LatVec{1, 1, 0, 0}}, {unitary(3), LatVec{1, 0, 0}}}) {
    auto w = CocharWorld::of_group(g);
    auto ps = cochar_pairs(w, mu);
    for (const auto& a : ps) {
      EXPECT_TRUE(pair_leq(w, a, a));
      for (const auto& b : ps) {
        if (!(a == b) && pair_leq(w, a, b)) EXPECT_FALSE(pair_leq(w, b, a));
        for (const auto& c : ps)
          if (pair_leq(w, a, b) && pair_leq(w, b, c)) EXPECT_TRUE(pair_leq(w, a, c));
      }
    }
  }
}

TEST(Kottwitz, LeviClassIsDeterminedByThePoint) {
  auto w = CocharWorld::of_group(split("GL", 4));
  for (const auto& mu : {LatVec{1, 1, 0, 0}, LatVec{2, 1, 0, 0}}) {
    std::map<RatVec, LatVec> seen;
    for (const auto& p : cochar_pairs_sd(w, mu)) {
      auto b = t_map(w, p);
      auto [it, fresh] = seen.emplace(b.nu, b.kappa_levi);
      if (!fresh) EXPECT_EQ(it->second, b.kappa_levi);
    }
  }
}

TEST(Kottwitz, FibersPartitionStrictlyDominantPairs) {
  for (const auto& g : {split("GL", 3), unitary(3)}) {
    auto w = CocharWorld::of_group(g);
    LatVec mu{1, 0, 0};
    for (const auto& h : enumerate_elliptic(g, 2)) {
      FiberClasses fc(w, h);
      auto sd = sd_endo(fc, mu);
      std::size_t total = 0;
      for (const auto& b : kottwitz_set(w, mu)) total += t_fiber(fc, b, mu).size();
      EXPECT_EQ(total, sd.size());
    }
  }
}

TEST(Kottwitz, Gl3DecompositionByHand) {
  auto g = split("GL", 3);
  auto w = CocharWorld::of_group(g);
  auto h = enumerate_elliptic(g, 1).front();
  LatVec mu{1, 0, 0};
  auto pts = kottwitz_set(w, mu);
  ASSERT_EQ(pts.size(), 3u);
  auto coeffs = [&](const KottwitzPoint& b) {
    std::map<std::vector<int>, long> out;
    auto orbit = w.orbit(mu, w.labels());
    auto sum = m_sum(w, h, b, mu);
    for (const auto& [id, t] : sum.terms()) {
      EXPECT_NE(std::find(orbit.begin(), orbit.end(), t.mu), orbit.end());
      EXPECT_TRUE(is_dominant(w.datum(), to_rat(t.mu), t.levi));
      out[t.levi] += t.coeff.get_si();
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  };
  using M = std::map<std::vector<int>, long>;
  EXPECT_EQ(coeffs(pts[0]), (M{{{0, 1}, 1}, {{0}, -1}, {{1}, -1}, {{}, 1}}));
  EXPECT_EQ(coeffs(pts[1]), (M{{{0}, 1}, {{}, -1}}));
  EXPECT_EQ(coeffs(pts[2]), (M{{{1}, 1}}));
}

TEST(Kottwitz, SumFormulaSmallCases) {
  for (const auto& g : {split("GL", 2), split("GL", 3), unitary(3)}) {
    auto w = CocharWorld::of_group(g);
    const std::size_t n = g.datum().rank();
    for (std::size_t k = 0; k <= n; ++k) {
      LatVec mu(n);
      for (std::size_t i = 0; i < k; ++i) mu[i] = 1;
      for (const auto& h : enumerate_elliptic(g, 2)) EXPECT_TRUE(verify_sum_formula(w, h, mu).is_zero());
    }
  }
}

TEST(Kottwitz, SumFormulaForNonMinusculeAndNonElliptic) {
  auto g = split("GL", 3);
  auto w = CocharWorld::of_group(g);
  EnumerateOptions o;
  o.elliptic_only = false;
  o.dedup = Equivalence::refined;
  for (const auto& h : enumerate_triples(w.dual(), o))
    EXPECT_TRUE(verify_sum_formula(w, h, LatVec{2, 0, -1}).is_zero()) << canonical_id(h);
}

TEST(Kottwitz, InductionGl3) {
  auto g = split("GL", 3);
  auto w = CocharWorld::of_group(g);
  auto h = enumerate_elliptic(g, 2).front();
  LatVec mu{1, 0, 0};
  for (const auto& b : kottwitz_set(w, mu))
    for (const auto& s : w.levis()) {
      if (!is_subset(b.levi, s)) {
        EXPECT_THROW(verify_induction(w, s, h, b, mu), PreconditionError);
        continue;
      }
      EXPECT_TRUE(verify_induction(w, s, h, b, mu).is_zero());
    }
}

TEST(Kottwitz, RejectsNonDominant) {
  auto w = CocharWorld::of_group(split("GL", 2));
  EXPECT_THROW(kottwitz_set(w, LatVec{0, 1}), PreconditionError);
}
