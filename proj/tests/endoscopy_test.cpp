#include <gtest/gtest.h>

#include <random>

#include "endokit/endoscopy.hpp"

using namespace endokit;

namespace {

GaloisForm split(const char* f, std::size_t n) { return GaloisForm::split(builtin_datum(f, n)); }

GaloisForm unitary(std::size_t n) {
  auto d = builtin_datum("U", n);
  return GaloisForm(d, {2}, {opposition_flip(d)});
}

GaloisForm sl2_twisted() { return GaloisForm(builtin_datum("SL", 2), {2}, {IntMatrix::identity(1)}); }

std::vector<EndoTriple> refined_all(const AmbientPtr& amb, int order) {
  EnumerateOptions o;
  o.max_order = order;
  o.elliptic_only = false;
  o.dedup = Equivalence::refined;
  return enumerate_triples(amb, o);
}

}  // namespace

TEST(Enumerate, EllipticCounts) {
  EXPECT_EQ(enumerate_elliptic(split("GL", 2), 2).size(), 1u);
  EXPECT_EQ(enumerate_elliptic(split("GL", 3), 3).size(), 1u);
  EXPECT_EQ(enumerate_elliptic(split("GL", 4), 2).size(), 1u);
  EXPECT_EQ(enumerate_elliptic(sl2_twisted(), 2).size(), 2u);
  EXPECT_EQ(enumerate_elliptic(unitary(3), 2).size(), 2u);
  EXPECT_EQ(enumerate_elliptic(split("T", 2), 3).size(), 1u);
}

TEST(Enumerate, SplitSl2HasOnlyTheTrivialClass) {
  EXPECT_EQ(enumerate_elliptic(split("SL", 2), 2).size(), 1u);
}

TEST(Enumerate, StableUnderRootReordering) {
  auto d = builtin_datum("U", 3);
  RootDatum raw = d.raw();
  std::reverse(raw.roots.begin(), raw.roots.end());
  std::reverse(raw.coroots.begin(), raw.coroots.end());
  BasedRootDatum d2(raw, d.simple_roots(), {}, "U3");
  GaloisForm f2(d2, {2}, {opposition_flip(d2)});
  auto a = enumerate_elliptic(unitary(3), 2), b = enumerate_elliptic(f2, 2);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(canonical_id(a[i]), canonical_id(b[i]));
}

TEST(Enumerate, JobsDoNotChangeTheResult) {
  auto amb = dual_ambient(split("GL", 4));
  EnumerateOptions o;
  o.elliptic_only = false;
  o.dedup = Equivalence::refined;
  auto a = enumerate_triples(amb, o);
  o.jobs = 8;
  auto b = enumerate_triples(amb, o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(canonical_id(a[i]), canonical_id(b[i]));
}

TEST(Triple, TorusOfGl2IsNotElliptic) {
  auto amb = dual_ambient(split("GL", 2));
  auto t = triple_from_element(amb, TorsionVec{0, Rational(1, 2)});
  EXPECT_TRUE(t.h_roots.empty());
  EXPECT_FALSE(is_elliptic(t));
  EXPECT_TRUE(is_elliptic(triple_from_element(amb, TorsionVec{0, 0})));
}

TEST(Triple, ConstructionErrors) {
  auto amb = dual_ambient(unitary(3));
  // The bare Galois action moves (0,0,1/2).
  EXPECT_THROW(triple_from_element(amb, TorsionVec{0, 0, Rational(1, 2)}), ConstructionError);
  EXPECT_THROW(triple_from_element(amb, TorsionVec{0, 0}), DimensionError);
}

TEST(Triple, TwistedGeneratorsPreserveBaseAndSatisfyRelations) {
  for (const auto& f : {unitary(3), sl2_twisted(), split("GL", 4)}) {
    auto amb = dual_ambient(f);
    for (const auto& t : refined_all(amb, 2)) {
      auto mask = t.h_mask();
      for (const auto& g : t.gamma_h) {
        EXPECT_EQ(g.on_cochar(t.s), t.s);
        for (auto b : t.h_base) EXPECT_NE(std::find(t.h_base.begin(), t.h_base.end(), g.perm[b]), t.h_base.end());
      }
      EXPECT_EQ(triple_from_element(amb, t.s, t.twist).gamma_h.size(), t.gamma_h.size());
    }
  }
}

TEST(OutGroup, NormOneTorusOfSl2) {
  auto ell = enumerate_elliptic(sl2_twisted(), 2);
  ASSERT_EQ(ell.size(), 2u);
  EXPECT_EQ(out_group(ell[0]).order(), 1u);
  EXPECT_EQ(out_group(ell[1]).order(), 2u);
}

TEST(OutGroup, BlockSwapOfGl4) {
  auto amb = dual_ambient(split("GL", 4));
  auto t = triple_from_element(amb, TorsionVec{0, 0, Rational(1, 2), Rational(1, 2)});
  EXPECT_EQ(t.h_roots.size(), 4u);
  EXPECT_EQ(out_group(t, Equivalence::refined).order(), 1u);
  EXPECT_EQ(out_group(t, Equivalence::standard).order(), 2u);
}

TEST(OutGroup, ContainsEndoscopicWeylGroup) {
  for (const auto& f : {unitary(3), split("GL", 4), sl2_twisted()}) {
    auto amb = dual_ambient(f);
    for (const auto& t : refined_all(amb, 2)) {
      auto out = out_group(t);
      auto wh = h_weyl(t);
      for (auto h : wh) EXPECT_NE(std::find(out.aut.begin(), out.aut.end(), h), out.aut.end());
      EXPECT_EQ(out.aut.size(), out.order() * wh.size());
    }
  }
}

TEST(Isomorphism, WitnessCarriesTriple) {
  auto amb = dual_ambient(unitary(3));
  const auto& W = amb->weyl();
  auto ts = refined_all(amb, 2);
  for (const auto& t : ts)
    for (const auto& g : W.elements()) {
      EndoTriple c = conjugate(t, g.aut);
      auto w = is_isomorphic(t, c);
      ASSERT_TRUE(w);
      EXPECT_EQ(w->aut.on_cochar(t.s), c.s);
      EXPECT_EQ(canonical_id(t), canonical_id(c));
    }
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); ++j) {
      EXPECT_EQ(is_isomorphic(ts[i], ts[j]).has_value(), i == j);
      EXPECT_EQ(canonical_id(ts[i]) == canonical_id(ts[j]), i == j);
    }
}

TEST(Isomorphism, DifferentAmbientsRejected) {
  auto a = triple_from_element(dual_ambient(split("GL", 2)), TorsionVec{0, 0});
  auto b = triple_from_element(dual_ambient(split("GL", 3)), TorsionVec{0, 0, 0});
  EXPECT_THROW(is_isomorphic(a, b), IncompatibleTriples);
}

TEST(Isomorphism, StandardModeIgnoresCentre) {
  auto amb = dual_ambient(split("GL", 2));
  auto a = triple_from_element(amb, TorsionVec{0, 0});
  auto b = triple_from_element(amb, TorsionVec{Rational(1, 2), Rational(1, 2)});
  EXPECT_FALSE(is_isomorphic(a, b, Equivalence::refined));
  EXPECT_TRUE(is_isomorphic(a, b, Equivalence::standard));
}

TEST(SemisimplePair, BuildsTripleFromCentralCharacter) {
  auto g = split("GL", 2);
  auto amb = dual_ambient(g);
  SSPair p{TorsionVec{0, Rational(1, 2)}, RatVec{0, 0}, TorsionVec{Rational(1, 2), 0}};
  auto t = ss_pair_to_triple(amb, g, p);
  EXPECT_TRUE(t.h_roots.empty());
  EXPECT_EQ(t.s, (TorsionVec{Rational(1, 2), 0}));

  SSPair q{TorsionVec{0, 0}, RatVec{0, 0}, TorsionVec{Rational(1, 2), Rational(1, 2)}};
  EXPECT_EQ(ss_pair_to_triple(amb, g, q).h_roots.size(), 2u);

  SSPair bad{TorsionVec{0, 0}, RatVec{0, 0}, TorsionVec{Rational(1, 2), 0}};
  EXPECT_THROW(ss_pair_to_triple(amb, g, bad), PreconditionError);
}

TEST(SemisimplePair, MatchesRestrictionToCentralizer) {
  auto g = unitary(3);
  auto amb = dual_ambient(g);
  // Regular valuation part: the centralizer is the maximal torus.
  SSPair p{TorsionVec{0, 0, 0}, RatVec{1, 0, -1}, TorsionVec{0, 0, 0}};
  auto t = ss_pair_to_triple(amb, g, p);
  EXPECT_EQ(t.h_roots.size(), 6u);
  EXPECT_TRUE(is_elliptic(t));
  SSPair q{TorsionVec{0, 0, 0}, RatVec{1, 0, 0}, TorsionVec{0, 0, 0}};
  EXPECT_THROW(ss_pair_to_triple(amb, g, q), PreconditionError);
}
