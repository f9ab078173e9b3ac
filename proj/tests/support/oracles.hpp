#pragma once

// Independent reference computations used by the tests.

#include <set>
#include <vector>

#include "endokit/kottwitz.hpp"

namespace oracle {

using namespace endokit;

// Average of mu over the explicit W(M_S)-orbit (with multiplicity) and over the explicit Γ.
inline RatVec average(const GaloisForm& g, const std::vector<int>& s, const LatVec& mu) {
  const auto& d = g.datum();
  WeylGroup W(d);
  std::vector<bool> mask(d.base().size(), false);
  for (int l : s) mask[*d.position_of_label(l)] = true;
  RatVec sum(d.rank());
  long n = 0;
  for (std::size_t i = 0; i < W.size(); ++i) {
    if (!W.in_parabolic(i, mask)) continue;
    for (const auto& gm : g.elements()) {
      sum += to_rat(gm.on_cochar(W[i].aut.on_cochar(mu)));
      ++n;
    }
  }
  sum *= Rational(1, n);
  return sum;
}

inline LatVec pi1(const GaloisForm& g, const LatVec& mu) {
  const auto& d = g.datum();
  std::vector<LatVec> gens;
  for (auto b : d.base()) gens.push_back(d.coroot(b));
  for (const auto& gm : g.gens())
    for (std::size_t k = 0; k < d.rank(); ++k) {
      LatVec e(d.rank());
      e[k] = 1;
      gens.push_back(gm.on_cochar(e) - e);
    }
  return LatticeQuotient(gens, d.rank()).reduce(mu);
}

// Newton points of B(G, mu), found by scanning lattice points in a box.
inline std::set<RatVec> newton_points(const GaloisForm& g, const LatVec& mu) {
  const auto& d = g.datum();
  const std::size_t r = d.rank();
  long bound = 1;
  for (const auto& x : mu) bound = std::max(bound, std::abs(x.get_si()) + 1);
  RatVec top = average(g, d.labels(), mu);
  (void)top;
  RatVec mu_diamond = RatVec(r);
  {
    // Γ-average of the dominant representative.
    RatVec m = to_rat(mu);
    for (const auto& gm : g.elements()) mu_diamond += gm.on_cochar(m);
    mu_diamond *= Rational(1, static_cast<long>(g.elements().size()));
  }
  LatVec kappa = pi1(g, mu);
  std::vector<RatVec> coroots;
  for (auto b : d.base()) coroots.push_back(to_rat(d.coroot(b)));
  std::set<RatVec> out;
  for (const auto& s : g.stable_subsets()) {
    std::vector<long> k(r, -bound);
    for (;;) {
      LatVec lam(r);
      for (std::size_t i = 0; i < r; ++i) lam[i] = k[i];
      if (pi1(g, lam) == kappa) {
        RatVec nu = average(g, s, lam);
        bool strict = true;
        for (std::size_t p = 0; p < d.base().size(); ++p) {
          bool in = std::find(s.begin(), s.end(), d.labels()[p]) != s.end();
          if (!in && pair(d.root(d.base()[p]), nu) <= 0) strict = false;
        }
        if (strict) {
          auto c = coordinates(coroots, mu_diamond - nu);
          if (c && std::all_of(c->begin(), c->end(), [](const Rational& x) { return x >= 0; })) out.insert(nu);
        }
      }
      std::size_t i = 0;
      while (i < r && ++k[i] > bound) k[i++] = -bound;
      if (i == r) break;
    }
  }
  return out;
}

}  // namespace oracle
