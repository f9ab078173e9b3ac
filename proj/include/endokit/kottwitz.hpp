#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "endokit/levi_transfer.hpp"

namespace endokit {

// A quasi-split group (or standard Levi) on the G side, its dual ambient, and derived lattice data.
class CocharWorld {
 public:
  CocharWorld(GaloisForm top, AmbientPtr dual_top) : top_(std::move(top)), dual_(std::move(dual_top)) {
    if (!(dual_->datum().labels() == top_.datum().labels()))
      throw ValidationError("dual ambient does not match the group");
    weyl_ = std::make_shared<WeylGroup>(top_.datum());
    levis_ = top_.stable_subsets();
    orbits_ = top_.simple_orbits();
  }

  static CocharWorld of_group(const GaloisForm& g) { return CocharWorld(g, dual_ambient(g)); }

  // The world of a Γ-stable standard Levi, sharing the dual ambient of this world.
  CocharWorld levi(const std::vector<int>& labels) const {
    return CocharWorld(top_.levi(labels), dual_->levi(labels));
  }

  const GaloisForm& form() const { return top_; }
  const BasedRootDatum& datum() const { return top_.datum(); }
  const AmbientPtr& dual() const { return dual_; }
  const WeylGroup& weyl() const { return *weyl_; }
  std::vector<int> labels() const { return datum().labels(); }
  const std::vector<std::vector<int>>& levis() const { return levis_; }
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }

  // Number of Γ-orbits of simple roots in big \\ small.
  std::size_t relative_gap(const std::vector<int>& small, const std::vector<int>& big) const {
    std::size_t n = 0;
    for (const auto& o : orbits_) {
      bool in_big = std::find(big.begin(), big.end(), o.front()) != big.end();
      bool in_small = std::find(small.begin(), small.end(), o.front()) != small.end();
      if (in_big && !in_small) ++n;
    }
    return n;
  }

  // Average of mu over W(M_S) and Γ.
  RatVec theta(const std::vector<int>& s, const LatVec& mu) const {
    const auto& d = datum();
    RatVec v = to_rat(mu);
    if (!s.empty()) {
      std::vector<std::size_t> b;
      for (int l : s) b.push_back(d.base()[*d.position_of_label(l)]);
      RatMatrix c(b.size(), b.size());
      RatVec rhs(b.size());
      for (std::size_t j = 0; j < b.size(); ++j) {
        rhs[j] = pair(d.root(b[j]), v);
        for (std::size_t i = 0; i < b.size(); ++i) c(j, i) = pair(d.root(b[j]), d.coroot(b[i]));
      }
      RatVec x = *solve(c, rhs);
      for (std::size_t i = 0; i < b.size(); ++i) v -= x[i] * to_rat(d.coroot(b[i]));
    }
    return gamma_average_cochar(top_, v);
  }

  // Canonical representative of the image of mu in pi_1(M_S)_Γ.
  LatVec kappa(const std::vector<int>& s, const LatVec& mu) const {
    const auto& d = datum();
    std::vector<LatVec> gens;
    for (int l : s) gens.push_back(d.coroot(d.base()[*d.position_of_label(l)]));
    for (const auto& g : top_.gens())
      for (std::size_t k = 0; k < d.rank(); ++k) {
        LatVec e(d.rank());
        e[k] = 1;
        gens.push_back(g.on_cochar(e) - e);
      }
    return LatticeQuotient(gens, d.rank()).reduce(mu);
  }

  // W(M_S)-orbit of mu.
  std::vector<LatVec> orbit(const LatVec& mu, const std::vector<int>& s) const {
    std::vector<bool> mask(datum().base().size(), false);
    for (int l : s) mask[*datum().position_of_label(l)] = true;
    std::set<LatVec> out;
    for (std::size_t i = 0; i < weyl_->size(); ++i)
      if (weyl_->in_parabolic(i, mask)) out.insert((*weyl_)[i].aut.on_cochar(mu));
    return {out.begin(), out.end()};
  }

 private:
  GaloisForm top_;
  AmbientPtr dual_;
  std::shared_ptr<WeylGroup> weyl_;
  std::vector<std::vector<int>> levis_;
  std::vector<std::vector<int>> orbits_;
};

inline bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::all_of(a.begin(), a.end(), [&](int x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

struct CocharPair {
  std::vector<int> levi;  // Γ-stable simple labels S
  LatVec mu;              // M_S-dominant
  friend bool operator==(const CocharPair& a, const CocharPair& b) { return a.levi == b.levi && a.mu == b.mu; }
  friend bool operator<(const CocharPair& a, const CocharPair& b) {
    if (a.levi.size() != b.levi.size()) return a.levi.size() < b.levi.size();
    if (a.levi != b.levi) return a.levi < b.levi;
    return a.mu < b.mu;
  }
};

struct KottwitzPoint {
  RatVec nu;                  // dominant Newton point
  std::vector<int> levi;      // labels of its centralizer M_b
  LatVec kappa_levi;          // class in pi_1(M_b)_Γ
  LatVec kappa;               // class in pi_1(G)_Γ
  friend bool operator==(const KottwitzPoint& a, const KottwitzPoint& b) {
    return a.nu == b.nu && a.kappa == b.kappa;
  }
  friend bool operator<(const KottwitzPoint& a, const KottwitzPoint& b) {
    if (a.nu != b.nu) return a.nu < b.nu;
    return a.kappa < b.kappa;
  }
};

// (S1, mu1) <= (S2, mu2).
inline bool pair_leq(const CocharWorld& w, const CocharPair& a, const CocharPair& b) {
  if (!is_subset(a.levi, b.levi)) return false;
  if (dominant_rep(w.datum(), to_rat(a.mu), b.levi).first != to_rat(b.mu)) return false;
  RatVec diff = w.theta(a.levi, a.mu) - w.theta(b.levi, b.mu);
  const auto& d = w.datum();
  std::vector<RatVec> basis;
  for (int l : b.levi) basis.push_back(to_rat(d.coroot(d.base()[*d.position_of_label(l)])));
  auto c = coordinates(basis, diff);
  if (!c) return false;
  for (std::size_t i = 0; i < b.levi.size(); ++i)
    if (std::find(a.levi.begin(), a.levi.end(), b.levi[i]) == a.levi.end() && (*c)[i] <= 0) return false;
  return true;
}

// theta_S(mu) is strictly dominant away from S, i.e. its centralizer is exactly M_S.
inline bool is_strictly_dominant_pair(const CocharWorld& w, const CocharPair& p) {
  RatVec th = w.theta(p.levi, p.mu);
  const auto& d = w.datum();
  for (std::size_t k = 0; k < d.base().size(); ++k) {
    if (std::find(p.levi.begin(), p.levi.end(), d.labels()[k]) != p.levi.end()) continue;
    if (pair(d.root(d.base()[k]), th) <= 0) return false;
  }
  return true;
}

inline CocharPair top_pair(const CocharWorld& w, const LatVec& mu) {
  if (!is_dominant(w.datum(), to_rat(mu))) throw PreconditionError("cocharacter " + mu.str() + " is not dominant");
  return CocharPair{w.labels(), mu};
}

// All pairs (S, mu_S) with S Γ-stable and mu_S in W mu, M_S-dominant, and below (G, mu).
inline std::vector<CocharPair> cochar_pairs(const CocharWorld& w, const LatVec& mu) {
  CocharPair top = top_pair(w, mu);
  auto orbit = w.orbit(mu, w.labels());
  std::vector<CocharPair> out;
  for (const auto& s : w.levis())
    for (const auto& m : orbit) {
      if (!is_dominant(w.datum(), to_rat(m), s)) continue;
      CocharPair p{s, m};
      if (pair_leq(w, p, top)) out.push_back(p);
    }
  return out;
}

inline std::vector<CocharPair> cochar_pairs_sd(const CocharWorld& w, const LatVec& mu) {
  std::vector<CocharPair> out;
  for (auto& p : cochar_pairs(w, mu))
    if (is_strictly_dominant_pair(w, p)) out.push_back(p);
  return out;
}

inline KottwitzPoint t_map(const CocharWorld& w, const CocharPair& p) {
  return KottwitzPoint{w.theta(p.levi, p.mu), p.levi, w.kappa(p.levi, p.mu), w.kappa(w.labels(), p.mu)};
}

inline std::vector<KottwitzPoint> kottwitz_set(const CocharWorld& w, const LatVec& mu) {
  std::set<KottwitzPoint> pts;
  for (const auto& p : cochar_pairs_sd(w, mu)) pts.insert(t_map(w, p));
  return {pts.begin(), pts.end()};
}

// ---- endoscopic cocharacter pairs ----

struct EndoCochar {
  CocharPair pair;
  EndoTriple decoration;  // triple on the dual of M_S
  std::string class_id;   // canonical id of the decoration
};

inline std::string term_id(const std::vector<int>& levi, const LatVec& mu, const std::string& cls) {
  std::string s = "L=";
  for (std::size_t i = 0; i < levi.size(); ++i) s += (i ? "," : "") + std::to_string(levi[i]);
  s += "|mu=";
  for (std::size_t i = 0; i < mu.size(); ++i) s += (i ? "," : "") + mu[i].get_str();
  return s + "|H=" + cls;
}

struct SumTerm {
  std::vector<int> levi;
  LatVec mu;
  std::string class_id;
  Integer coeff;
};

// Formal Z-linear combination of endoscopic cocharacter pairs, keyed by term id.
class EndoCochainSum {
 public:
  void add(const std::vector<int>& levi, const LatVec& mu, const std::string& cls, const Integer& c) {
    if (c == 0) return;
    std::string id = term_id(levi, mu, cls);
    auto it = terms_.find(id);
    if (it == terms_.end()) {
      terms_.emplace(id, SumTerm{levi, mu, cls, c});
      return;
    }
    it->second.coeff += c;
    if (it->second.coeff == 0) terms_.erase(it);
  }
  void add(const SumTerm& t, const Integer& scale = 1) { add(t.levi, t.mu, t.class_id, t.coeff * scale); }
  EndoCochainSum& operator+=(const EndoCochainSum& o) {
    for (const auto& [id, t] : o.terms_) add(t);
    return *this;
  }
  EndoCochainSum& operator-=(const EndoCochainSum& o) {
    for (const auto& [id, t] : o.terms_) add(t, -1);
    return *this;
  }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<std::string, SumTerm>& terms() const { return terms_; }
  friend bool operator==(const EndoCochainSum& a, const EndoCochainSum& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
      if (ia->first != ib->first || ia->second.coeff != ib->second.coeff) return false;
    return true;
  }

 private:
  std::map<std::string, SumTerm> terms_;
};

// Restricted triples of h over each standard Levi, memoized.
class FiberClasses {
 public:
  FiberClasses(const CocharWorld& w, const EndoTriple& h) : w_(w), h_(h) {
    if (!same_ambient(*h.ambient, *w.dual())) throw IncompatibleTriples("triple does not live on the dual group");
  }

  struct Entry {
    EndoTriple triple;
    std::string id;
  };

  const std::vector<Entry>& over(const std::vector<int>& s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    std::vector<Entry> out;
    for (const auto& e : fiber(h_, s)) {
      EndoTriple t = x_map(e);
      std::string id = canonical_id(t);
      out.push_back(Entry{std::move(t), std::move(id)});
    }
    return memo_.emplace(s, std::move(out)).first->second;
  }

  const CocharWorld& world() const { return w_; }

 private:
  const CocharWorld& w_;
  EndoTriple h_;
  std::map<std::vector<int>, std::vector<Entry>> memo_;
};

inline bool decoration_leq(const CocharWorld& w, const EndoTriple& small, const std::vector<int>& big_levi,
                           const EndoTriple& big) {
  EndoTriple induced = y_map(small, w.dual()->levi(big_levi));
  return is_isomorphic(induced, big).has_value();
}

// x <= y in the poset of endoscopic cocharacter pairs.
inline bool poset_leq(const CocharWorld& w, const EndoCochar& x, const EndoCochar& y) {
  return pair_leq(w, x.pair, y.pair) && decoration_leq(w, x.decoration, y.pair.levi, y.decoration);
}

// Strictly dominant endoscopic pairs over h.
inline std::vector<EndoCochar> sd_endo(FiberClasses& fc, const LatVec& mu) {
  std::vector<EndoCochar> out;
  for (const auto& p : cochar_pairs_sd(fc.world(), mu))
    for (const auto& e : fc.over(p.levi)) out.push_back(EndoCochar{p, e.triple, e.id});
  return out;
}

inline std::vector<EndoCochar> t_fiber(FiberClasses& fc, const KottwitzPoint& b, const LatVec& mu) {
  std::vector<EndoCochar> out;
  for (auto& x : sd_endo(fc, mu))
    if (t_map(fc.world(), x.pair) == b) out.push_back(std::move(x));
  return out;
}

inline EndoCochainSum m_sum(FiberClasses& fc, const KottwitzPoint& b, const LatVec& mu) {
  const CocharWorld& w = fc.world();
  auto all = cochar_pairs(w, mu);
  std::set<std::string> seen;
  EndoCochainSum out;
  for (const auto& x : t_fiber(fc, b, mu)) {
    for (const auto& p : all) {
      if (!pair_leq(w, p, x.pair)) continue;
      for (const auto& e : fc.over(p.levi)) {
        std::string id = term_id(p.levi, p.mu, e.id);
        if (seen.count(id)) continue;
        if (!decoration_leq(w, e.triple, x.pair.levi, x.decoration)) continue;
        seen.insert(id);
        long sign = w.relative_gap(p.levi, b.levi) % 2 ? -1 : 1;
        out.add(p.levi, p.mu, e.id, sign);
      }
    }
  }
  return out;
}

inline EndoCochainSum m_sum(const CocharWorld& w, const EndoTriple& h, const KottwitzPoint& b, const LatVec& mu) {
  FiberClasses fc(w, h);
  return m_sum(fc, b, mu);
}

// sum_b M_b - (G, mu, h); zero exactly when the sum formula holds.
inline EndoCochainSum verify_sum_formula(const CocharWorld& w, const EndoTriple& h, const LatVec& mu,
                                         unsigned jobs = 1) {
  auto bs = kottwitz_set(w, mu);
  auto parts = parallel_map(bs.size(), jobs, [&](std::size_t i) { return m_sum(w, h, bs[i], mu); });
  EndoCochainSum total;
  for (const auto& p : parts) total += p;
  EndoCochainSum top;
  top.add(w.labels(), mu, canonical_id(h), 1);
  total -= top;
  return total;
}

// The image of b in B(M_S) determined by its reduction to M_b.
inline KottwitzPoint restrict_point(const CocharWorld& w, const std::vector<int>& s, const KottwitzPoint& b,
                                    const LatVec& mu) {
  if (!is_subset(b.levi, s)) throw PreconditionError("Levi does not contain the centralizer of the slope");
  for (const auto& p : cochar_pairs_sd(w, mu))
    if (t_map(w, p) == b) return t_map(w.levi(s), p);
  throw PreconditionError("point does not belong to B(G, mu)");
}

// sum over I of i^G M^{M_S}_{h_S, b_S, mu_S} minus M^G_{h, b, mu}.
inline EndoCochainSum verify_induction(const CocharWorld& w, const std::vector<int>& s, const EndoTriple& h,
                                       const KottwitzPoint& b, const LatVec& mu, unsigned jobs = 1) {
  if (!w.form().is_stable(s)) throw PreconditionError("Levi subset is not Galois-stable");
  KottwitzPoint bs = restrict_point(w, s, b, mu);
  CocharWorld ws = w.levi(s);
  FiberClasses fc(w, h);
  struct Item {
    EndoTriple h_s;
    LatVec mu_s;
  };
  std::vector<Item> items;
  for (const auto& m : w.orbit(mu, w.labels())) {
    if (!is_dominant(w.datum(), to_rat(m), s)) continue;
    auto pts = kottwitz_set(ws, m);
    if (std::find(pts.begin(), pts.end(), bs) == pts.end()) continue;
    for (const auto& e : fc.over(s)) items.push_back(Item{e.triple, m});
  }
  auto parts = parallel_map(items.size(), jobs, [&](std::size_t i) {
    return m_sum(ws, items[i].h_s, bs, items[i].mu_s);
  });
  EndoCochainSum total;
  for (const auto& p : parts) total += p;
  total -= m_sum(fc, b, mu);
  return total;
}

}  // namespace endokit
