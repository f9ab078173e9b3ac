#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "endokit/endoscopy.hpp"

namespace endokit {

// An endoscopic triple together with a Weyl conjugator placing a Levi of H inside the standard Levi M.
struct EmbeddedDatum {
  EndoTriple triple;
  std::vector<int> levi;             // labels of M
  std::vector<std::size_t> h_levi;   // elements of triple.h_base spanning the Levi of H
  std::size_t conjugator = 0;        // ambient Weyl index w
};

namespace detail {

inline std::vector<bool> levi_root_mask(const BasedRootDatum& d, const std::vector<int>& labels) {
  std::vector<bool> in_pos(d.base().size(), false);
  for (int l : labels) {
    auto p = d.position_of_label(l);
    if (!p) throw ValidationError("label " + std::to_string(l) + " is not a simple root");
    in_pos[*p] = true;
  }
  std::vector<bool> m(d.num_roots(), true);
  for (std::size_t i = 0; i < d.num_roots(); ++i)
    for (std::size_t k = 0; k < in_pos.size(); ++k)
      if (!in_pos[k] && d.coeffs(i)[k] != 0) m[i] = false;
  return m;
}

inline std::vector<bool> levi_position_mask(const BasedRootDatum& d, const std::vector<int>& labels) {
  std::vector<bool> m(d.base().size(), false);
  for (int l : labels) m[*d.position_of_label(l)] = true;
  return m;
}

// Per-triple data reused across conjugators.
struct TransferCache {
  const EndoTriple& t;
  std::vector<int> labels;
  std::vector<bool> m_roots;
  std::vector<bool> m_positions;
  std::vector<LatVec> h_coeffs;  // coordinates of each h_root in h_base
  std::vector<std::size_t> wh;   // W(H)

  TransferCache(const EndoTriple& tr, const std::vector<int>& lab)
      : t(tr),
        labels(lab),
        m_roots(levi_root_mask(tr.datum(), lab)),
        m_positions(levi_position_mask(tr.datum(), lab)),
        wh(h_weyl(tr)) {
    const auto& d = t.datum();
    std::vector<RatVec> hb;
    for (auto b : t.h_base) hb.push_back(to_rat(d.root(b)));
    for (auto r : t.h_roots) h_coeffs.push_back(*to_lat(*coordinates(hb, to_rat(d.root(r)))));
  }

  std::optional<EmbeddedDatum> restricts(std::size_t wi) const {
    const auto& d = t.datum();
    const auto& W = t.ambient->weyl();
    const DatumAut& w = W[wi].aut;
    std::vector<bool> s_h(t.h_base.size(), false);
    for (std::size_t k = 0; k < t.h_base.size(); ++k) s_h[k] = m_roots[w.perm[t.h_base[k]]];
    for (std::size_t j = 0; j < t.h_roots.size(); ++j) {
      bool supported = true;
      for (std::size_t k = 0; k < s_h.size(); ++k)
        if (!s_h[k] && h_coeffs[j][k] != 0) supported = false;
      if (supported != static_cast<bool>(m_roots[w.perm[t.h_roots[j]]])) return std::nullopt;
    }
    std::vector<bool> hb_mask(d.num_roots(), false);
    for (std::size_t k = 0; k < t.h_base.size(); ++k)
      if (s_h[k]) hb_mask[t.h_base[k]] = true;
    for (const auto& g : t.gamma_h)
      for (std::size_t k = 0; k < t.h_base.size(); ++k)
        if (s_h[k] && !hb_mask[g.perm[t.h_base[k]]]) return std::nullopt;
    DatumAut wi_inv = w.inverse();
    const auto& f = t.ambient->form();
    for (std::size_t i = 0; i < t.gamma_h.size(); ++i) {
      auto u = W.index_of(w * t.gamma_h[i] * wi_inv * f.gens()[i].inverse());
      if (!u || !W.in_parabolic(*u, m_positions)) return std::nullopt;
    }
    EmbeddedDatum e{t, labels, {}, wi};
    for (std::size_t k = 0; k < t.h_base.size(); ++k)
      if (s_h[k]) e.h_levi.push_back(t.h_base[k]);
    return e;
  }
};

}  // namespace detail

// Restricted triple on the dual Levi: (w s, w H w^{-1} ∩ M, w gamma_H w^{-1}).
inline EndoTriple x_map(const EmbeddedDatum& e) {
  const auto& t = e.triple;
  AmbientPtr am = t.ambient->levi(e.levi);
  const DatumAut& w = t.ambient->weyl()[e.conjugator].aut;
  DatumAut wi = w.inverse();
  std::vector<DatumAut> raw;
  for (const auto& g : t.gamma_h) raw.push_back(retarget(w * g * wi, am->datum()));
  return detail::assemble(am, w.on_cochar(t.s), raw);
}

// Induces a triple on a Levi (or the group) containing the ambient of t_m; same element, same twists.
inline EndoTriple y_map(const EndoTriple& t_m, const AmbientPtr& target) {
  std::vector<DatumAut> raw;
  for (const auto& g : t_m.gamma_h) raw.push_back(retarget(g, target->datum()));
  return detail::assemble(target, t_m.s, raw);
}

inline std::optional<EmbeddedDatum> restricts(const EndoTriple& t, const std::vector<int>& levi, std::size_t w) {
  return detail::TransferCache(t, levi).restricts(w);
}

// W(M*, H): Weyl elements w such that the twisted Galois action preserves w^{-1} Z(M)^Γ up to W(H).
inline std::vector<std::size_t> w_mh(const EndoTriple& t, const std::vector<int>& levi) {
  const auto& d = t.datum();
  const auto& W = t.ambient->weyl();
  const std::size_t n = d.rank();
  detail::TransferCache c(t, levi);
  std::vector<RatVec> eqs;
  for (std::size_t k = 0; k < d.base().size(); ++k)
    if (c.m_positions[k]) eqs.push_back(to_rat(d.root(d.base()[k])));
  for (const auto& g : t.ambient->form().gens()) {
    RatMatrix m = to_rat(g.comat) - RatMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) eqs.push_back(m.row(i));
  }
  if (eqs.empty()) eqs.push_back(RatVec(n));
  auto vm = nullspace(RatMatrix::from_rows(eqs, n));
  std::vector<std::size_t> out;
  for (std::size_t wi = 0; wi < W.size(); ++wi) {
    DatumAut inv = W[wi].aut.inverse();
    std::vector<RatVec> z;
    for (const auto& v : vm) z.push_back(inv.on_cochar(v));
    bool ok = true;
    for (const auto& g : t.gamma_h) {
      bool found = false;
      for (auto h : c.wh) {
        DatumAut x = W[h].aut * g;
        if (std::all_of(z.begin(), z.end(), [&](const RatVec& v) { return x.on_cochar(v) == v; })) {
          found = true;
          break;
        }
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(wi);
  }
  return out;
}

inline std::vector<std::size_t> restricting_conjugators(const EndoTriple& t, const std::vector<int>& levi) {
  detail::TransferCache c(t, levi);
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < t.ambient->weyl().size(); ++w)
    if (c.restricts(w)) out.push_back(w);
  return out;
}

inline std::vector<std::size_t> levi_weyl(const Ambient& amb, const std::vector<int>& levi) {
  auto mask = detail::levi_position_mask(amb.datum(), levi);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < amb.weyl().size(); ++i)
    if (amb.weyl().in_parabolic(i, mask)) out.push_back(i);
  return out;
}

// Embedded data over M up to isomorphism, via double cosets W(M) \ W(M*,H) / Aut(H).
inline std::vector<EmbeddedDatum> fiber(const EndoTriple& t, const std::vector<int>& levi) {
  const auto& W = t.ambient->weyl();
  detail::TransferCache c(t, levi);
  auto wmh = w_mh(t, levi);
  auto wm = levi_weyl(*t.ambient, levi);
  auto aut = out_group(t).aut;
  std::vector<bool> in_wmh(W.size(), false), done(W.size(), false);
  for (auto w : wmh) in_wmh[w] = true;
  std::vector<EmbeddedDatum> out;
  for (auto w : wmh) {
    if (done[w]) continue;
    for (auto m : wm)
      for (auto a : aut) {
        auto x = W.mul(W.mul(m, w), a);
        if (!in_wmh[x]) throw Error("W(M*,H) is not stable under W(M) and Aut(H)");
        done[x] = true;
      }
    std::optional<EmbeddedDatum> best;
    for (auto h : c.wh) {
      auto x = W.mul(w, h);
      if (best && best->conjugator <= x) continue;
      if (auto e = c.restricts(x)) best = std::move(e);
    }
    if (!best) throw Error("double coset without a restricting conjugator");
    out.push_back(std::move(*best));
  }
  return out;
}

// Independent enumeration: restricting conjugators up to isomorphism of the restricted triples.
inline std::vector<EmbeddedDatum> fiber_by_restriction(const EndoTriple& t, const std::vector<int>& levi) {
  detail::TransferCache c(t, levi);
  std::vector<EmbeddedDatum> out;
  std::vector<EndoTriple> images;
  for (std::size_t w = 0; w < t.ambient->weyl().size(); ++w) {
    auto e = c.restricts(w);
    if (!e) continue;
    EndoTriple x = x_map(*e);
    bool dup = false;
    for (const auto& y : images)
      if (is_isomorphic(x, y)) {
        dup = true;
        break;
      }
    if (dup) continue;
    images.push_back(std::move(x));
    out.push_back(std::move(*e));
  }
  return out;
}

inline std::size_t inner_class_count(const EmbeddedDatum& e) {
  std::size_t big = out_group(e.triple).order();
  std::size_t small = out_group(x_map(e)).order();
  if (small == 0 || big % small != 0) throw Error("outer automorphism orders are not divisible");
  return big / small;
}

// Brute force: (W(M), W(H)) double cosets inside W(M) w Aut(H).
inline std::size_t inner_class_count_brute(const EmbeddedDatum& e) {
  const auto& t = e.triple;
  const auto& W = t.ambient->weyl();
  auto wm = levi_weyl(*t.ambient, e.levi);
  auto wh = h_weyl(t);
  auto aut = out_group(t).aut;
  std::set<std::size_t> big;
  for (auto m : wm)
    for (auto a : aut) big.insert(W.mul(W.mul(m, e.conjugator), a));
  std::set<std::size_t> seen;
  std::size_t count = 0;
  for (auto x : big) {
    if (seen.count(x)) continue;
    ++count;
    for (auto m : wm)
      for (auto h : wh) seen.insert(W.mul(W.mul(m, x), h));
  }
  return count;
}

// ---- acceptability (G side: roots are characters, nu and w are rational cocharacters) ----

struct SlopeDatum {
  RatVec nu;
  std::vector<int> levi;  // labels of the centralizer of nu
};

struct ValuationElt {
  RatVec w;
};

inline SlopeDatum slope_datum(const BasedRootDatum& g, const RatVec& nu) {
  return SlopeDatum{nu, levi_from_cochar(g, nu).datum.labels()};
}

inline bool is_acceptable(const BasedRootDatum& g, const RatVec& nu, const ValuationElt& x) {
  if (!is_dominant(g, nu)) throw PreconditionError("slope " + nu.str() + " is not dominant");
  for (const auto& a : g.roots())
    if (pair(a, nu) > 0 && pair(a, x.w) <= 0) return false;
  return true;
}

// s* with s nu + t acceptable exactly for s > s*; nullopt when every s works.
inline std::optional<Rational> acceptable_threshold(const BasedRootDatum& g, const RatVec& nu, const RatVec& t) {
  std::optional<Rational> best;
  for (const auto& a : g.roots()) {
    Rational p = pair(a, nu);
    if (p <= 0) continue;
    Rational v = -pair(a, t) / p;
    if (!best || v > *best) best = v;
  }
  return best;
}

// max |<a,t>| / |<a,nu>| over roots not orthogonal to nu; an upper bound for the threshold.
inline Rational acceptable_bound(const BasedRootDatum& g, const RatVec& nu, const RatVec& t) {
  Rational best = 0;
  for (const auto& a : g.roots()) {
    Rational p = pair(a, nu);
    if (p == 0) continue;
    Rational v = abs(pair(a, t)) / abs(p);
    if (v > best) best = v;
  }
  return best;
}

// Keeps the embedded data whose transported torus has an acceptable Galois-fixed point.
// Returns nothing when the fiber's Levi is not the centralizer of the slope.
inline std::vector<EmbeddedDatum> eff_filter(const std::vector<EmbeddedDatum>& data, const SlopeDatum& slope) {
  std::vector<EmbeddedDatum> out;
  for (const auto& e : data) {
    auto lv = e.levi;
    auto sl = slope.levi;
    std::sort(lv.begin(), lv.end());
    std::sort(sl.begin(), sl.end());
    if (lv != sl) return {};
    const auto& amb = *e.triple.ambient;
    const auto& d = amb.datum();
    const DatumAut& w = amb.weyl()[e.conjugator].aut;
    DatumAut wi = w.inverse();
    std::vector<DatumAut> gens;
    for (const auto& g : e.triple.gamma_h) gens.push_back(w * g * wi);
    // Average of the slope over the twisted action, which acts on G-cocharacters via `mat`.
    std::vector<RatVec> orbit{slope.nu};
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<RatVec> next;
      for (const auto& v : orbit) {
        RatVec p = v;
        for (int k = 0; k < amb.form().orders()[i]; ++k) {
          next.push_back(p);
          p = gens[i].on_char(p);
        }
      }
      orbit = std::move(next);
    }
    RatVec avg(d.rank());
    for (const auto& v : orbit) avg += v;
    avg *= Rational(1, static_cast<long>(orbit.size()));
    bool ok = true;
    for (std::size_t i = 0; i < d.num_roots(); ++i) {
      const auto& a = d.coroot(i);  // a root of G
      if (pair(a, slope.nu) > 0 && pair(a, avg) <= 0) ok = false;
    }
    if (ok) out.push_back(e);
  }
  return out;
}

}  // namespace endokit
