#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "endokit/galois_form.hpp"
#include "endokit/parallel.hpp"

namespace endokit {

// A dual group (or a standard Levi of one) with its Γ-action and a lazily enumerated Weyl group.
// Levis are always created through the full group, so equal Levis share one object and one name.
class Ambient : public std::enable_shared_from_this<Ambient> {
 public:
  explicit Ambient(GaloisForm f, std::size_t weyl_limit = kDefaultWeylLimit,
                   std::shared_ptr<const Ambient> full = nullptr)
      : f_(std::move(f)), limit_(weyl_limit), full_(std::move(full)) {}
  Ambient(const Ambient&) = delete;
  Ambient& operator=(const Ambient&) = delete;

  const GaloisForm& form() const { return f_; }
  const BasedRootDatum& datum() const { return f_.datum(); }
  const std::string& name() const { return f_.name(); }
  std::size_t rank() const { return datum().rank(); }
  std::vector<int> labels() const { return datum().labels(); }

  const WeylGroup& weyl() const {
    std::call_once(w_once_, [&] { w_ = std::make_unique<WeylGroup>(datum(), limit_); });
    return *w_;
  }

  std::shared_ptr<const Ambient> full() const { return full_ ? full_ : shared_from_this(); }

  std::shared_ptr<const Ambient> levi(std::vector<int> labels) const {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    for (int l : labels)
      if (!datum().position_of_label(l))
        throw PreconditionError("label " + std::to_string(l) + " is not a simple root of " + name());
    if (full_) return full_->levi(labels);
    if (labels == datum().labels()) return shared_from_this();
    std::lock_guard lock(m_);
    auto it = levis_.find(labels);
    if (it != levis_.end()) return it->second;
    auto a = std::make_shared<const Ambient>(f_.levi(labels), limit_, shared_from_this());
    levis_.emplace(labels, a);
    return a;
  }

 private:
  GaloisForm f_;
  std::size_t limit_;
  std::shared_ptr<const Ambient> full_;
  mutable std::once_flag w_once_;
  mutable std::unique_ptr<WeylGroup> w_;
  mutable std::mutex m_;
  mutable std::map<std::vector<int>, std::shared_ptr<const Ambient>> levis_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

inline AmbientPtr make_ambient(GaloisForm f) { return std::make_shared<const Ambient>(std::move(f)); }

// The dual group of G, with the contragredient Galois action.
inline AmbientPtr dual_ambient(const GaloisForm& g) { return make_ambient(g.dual()); }

inline bool same_ambient(const Ambient& a, const Ambient& b) {
  if (&a == &b) return true;
  if (!(a.datum() == b.datum()) || a.form().orders() != b.form().orders()) return false;
  for (std::size_t i = 0; i < a.form().num_gens(); ++i)
    if (!(a.form().gens()[i] == b.form().gens()[i])) return false;
  return true;
}

enum class Equivalence { refined, standard };

struct EndoTriple {
  AmbientPtr ambient;
  TorsionVec s;
  std::vector<std::size_t> h_roots;  // ambient root indices, sorted
  std::vector<std::size_t> h_base;   // simple roots of h_roots for the induced order, sorted
  std::vector<DatumAut> gamma_h;     // per Galois generator; preserves h_base
  std::vector<std::size_t> twist;    // Weyl index of gamma_h[i] * gamma_i^{-1}

  const BasedRootDatum& datum() const { return ambient->datum(); }
  std::vector<bool> h_mask() const {
    std::vector<bool> m(datum().num_roots(), false);
    for (auto i : h_roots) m[i] = true;
    return m;
  }
};

namespace detail {

inline std::vector<std::size_t> kernel_roots(const BasedRootDatum& d, const TorsionVec& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.num_roots(); ++i)
    if (pair(d.root(i), s) == 0) out.push_back(i);
  return out;
}

// Indecomposable positive elements of a root subsystem.
inline std::vector<std::size_t> subsystem_base(const BasedRootDatum& d, const std::vector<std::size_t>& sub) {
  std::set<LatVec> pos;
  for (auto i : sub)
    if (d.is_positive(i)) pos.insert(d.root(i));
  std::vector<std::size_t> base;
  for (auto i : sub) {
    if (!d.is_positive(i)) continue;
    bool decomposable = false;
    for (const auto& a : pos)
      if (pos.count(d.root(i) - a)) {
        decomposable = true;
        break;
      }
    if (!decomposable) base.push_back(i);
  }
  return base;
}

// Left-multiplies x by the unique element of W(sub) that makes it preserve the positive roots of sub.
// Requires x to preserve the subsystem spanned by `sub_base`.
inline DatumAut normalize(const BasedRootDatum& d, const std::vector<std::size_t>& sub_base, DatumAut x) {
  for (;;) {
    DatumAut xi = x.inverse();
    bool moved = false;
    for (auto b : sub_base)
      if (!d.is_positive(xi.perm[b])) {
        x = DatumAut::reflection(d, b) * x;
        moved = true;
        break;
      }
    if (!moved) return x;
  }
}

// u is assumed to lie in the ambient Weyl group and to preserve the subsystem.
inline bool in_sub_weyl(const BasedRootDatum& d, const std::vector<std::size_t>& sub_base, const DatumAut& u) {
  return normalize(d, sub_base, u).is_identity();
}

inline bool preserves(const DatumAut& x, const std::vector<std::size_t>& sub, const std::vector<bool>& mask) {
  for (auto i : sub)
    if (!mask[x.perm[i]]) return false;
  return true;
}

inline bool relations_hold(const GaloisForm& f, const std::vector<DatumAut>& gh) {
  for (std::size_t i = 0; i < gh.size(); ++i) {
    DatumAut p = gh[i];
    for (int k = 1; k < f.orders()[i]; ++k) p = p * gh[i];
    if (!p.is_identity()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (!(gh[i] * gh[j] == gh[j] * gh[i])) return false;
  }
  return true;
}

inline bool s_matches(const BasedRootDatum& d, const TorsionVec& a, const TorsionVec& b, Equivalence mode) {
  if (mode == Equivalence::refined) return a == b;
  RatVec diff = a.lift() - b.lift();
  for (auto k : d.base())
    if (!is_integral(pair(d.root(k), diff))) return false;
  return true;
}

// Builds a triple from already twisted generators; throws if they do not fix s or violate the relations.
inline EndoTriple assemble(const AmbientPtr& amb, const TorsionVec& s, const std::vector<DatumAut>& raw) {
  const auto& d = amb->datum();
  const auto& f = amb->form();
  EndoTriple t{amb, s, kernel_roots(d, s), {}, {}, {}};
  t.h_base = subsystem_base(d, t.h_roots);
  std::sort(t.h_base.begin(), t.h_base.end());
  auto mask = t.h_mask();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].on_cochar(s) != s)
      throw ConstructionError("twisted Galois generator " + std::to_string(i) + " does not fix s = " + s.str());
    if (!preserves(raw[i], t.h_roots, mask))
      throw ConstructionError("twisted Galois generator " + std::to_string(i) + " does not preserve H");
    t.gamma_h.push_back(normalize(d, t.h_base, raw[i]));
  }
  if (!relations_hold(f, t.gamma_h))
    throw ConstructionError("twisted generators do not satisfy the Galois group relations");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto w = amb->weyl().index_of(t.gamma_h[i] * f.gens()[i].inverse());
    if (!w) throw ConstructionError("twist is not a Weyl group element");
    t.twist.push_back(*w);
  }
  return t;
}

}  // namespace detail

// Triple attached to s, with Galois generators twisted by the given Weyl elements (indices; empty = none).
inline EndoTriple triple_from_element(const AmbientPtr& amb, const TorsionVec& s,
                                      const std::vector<std::size_t>& twists = {}) {
  if (s.size() != amb->rank()) throw DimensionError("element has rank " + std::to_string(s.size()));
  const auto& f = amb->form();
  if (!twists.empty() && twists.size() != f.num_gens())
    throw DimensionError("one twist per Galois generator is required");
  std::vector<DatumAut> raw;
  for (std::size_t i = 0; i < f.num_gens(); ++i) {
    DatumAut w = twists.empty() ? DatumAut::identity(amb->datum()) : amb->weyl()[twists[i]].aut;
    raw.push_back(w * f.gens()[i]);
  }
  return detail::assemble(amb, s, raw);
}

inline bool is_elliptic(const EndoTriple& t) {
  const auto& d = t.datum();
  const std::size_t n = d.rank();
  std::vector<RatVec> eqs;
  for (const auto& g : t.gamma_h) {
    RatMatrix m = to_rat(g.comat) - RatMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) eqs.push_back(m.row(i));
  }
  for (auto b : t.h_base) eqs.push_back(to_rat(d.root(b)));
  if (eqs.empty()) eqs.push_back(RatVec(n));
  for (const auto& v : nullspace(RatMatrix::from_rows(eqs, n)))
    for (auto b : d.base())
      if (pair(d.root(b), v) != 0) return false;
  return true;
}

// Searches the ambient Weyl group for g carrying t1 to t2; the returned witness has been checked.
inline std::optional<WeylElt> is_isomorphic(const EndoTriple& t1, const EndoTriple& t2,
                                            Equivalence mode = Equivalence::refined) {
  if (!same_ambient(*t1.ambient, *t2.ambient))
    throw IncompatibleTriples("triples live in different ambient groups");
  if (t1.h_roots.size() != t2.h_roots.size()) return std::nullopt;
  const auto& d = t1.datum();
  const auto& W = t1.ambient->weyl();
  auto mask2 = t2.h_mask();
  for (const auto& g : W.elements()) {
    if (!detail::preserves(g.aut, t1.h_roots, mask2)) continue;
    if (!detail::s_matches(d, g.aut.on_cochar(t1.s), t2.s, mode)) continue;
    DatumAut gi = g.aut.inverse();
    bool ok = true;
    for (std::size_t i = 0; ok && i < t1.gamma_h.size(); ++i) {
      DatumAut u = g.aut * t1.gamma_h[i] * gi * t2.gamma_h[i].inverse();
      ok = detail::in_sub_weyl(d, t2.h_base, u);
    }
    if (ok) return g;
  }
  return std::nullopt;
}

struct OutGroup {
  std::vector<std::size_t> aut;   // Weyl indices of Aut(H, eta); contains W(H)
  std::vector<std::size_t> reps;  // one per class of Aut / W(H), shortest first
  std::size_t order() const { return reps.size(); }
};

inline OutGroup out_group(const EndoTriple& t, Equivalence mode = Equivalence::refined) {
  const auto& d = t.datum();
  const auto& W = t.ambient->weyl();
  auto mask = t.h_mask();
  OutGroup out;
  std::set<std::vector<int>> seen;
  for (std::size_t k = 0; k < W.size(); ++k) {
    const auto& g = W[k].aut;
    if (!detail::preserves(g, t.h_roots, mask)) continue;
    if (!detail::s_matches(d, g.on_cochar(t.s), t.s, mode)) continue;
    DatumAut gi = g.inverse();
    bool ok = true;
    for (std::size_t i = 0; ok && i < t.gamma_h.size(); ++i)
      ok = detail::in_sub_weyl(d, t.h_base, g * t.gamma_h[i] * gi * t.gamma_h[i].inverse());
    if (!ok) continue;
    out.aut.push_back(k);
    if (seen.insert(detail::normalize(d, t.h_base, g).perm).second) out.reps.push_back(k);
  }
  return out;
}

// Indices into the ambient Weyl group of W(H), the Weyl group of the endoscopic root system.
inline std::vector<std::size_t> h_weyl(const EndoTriple& t) {
  const auto& W = t.ambient->weyl();
  std::vector<std::size_t> gens;
  for (auto b : t.h_base) gens.push_back(*W.index_of(DatumAut::reflection(t.datum(), b)));
  return W.subgroup(gens);
}

// Transport of a triple by a Weyl element g: (g s, g H, g gamma_H g^{-1}).
inline EndoTriple conjugate(const EndoTriple& t, const DatumAut& g) {
  std::vector<DatumAut> raw;
  DatumAut gi = g.inverse();
  for (const auto& x : t.gamma_h) raw.push_back(g * x * gi);
  return detail::assemble(t.ambient, g.on_cochar(t.s), raw);
}

namespace detail {

inline std::string word_str(const std::vector<int>& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + std::to_string(w[i]);
  return s;
}

inline std::string rat_list(const RatVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

}  // namespace detail

// Digest shared by exactly the refined-isomorphic triples: the least (s, twists) over the Weyl orbit.
inline std::string canonical_id(const EndoTriple& t) {
  const auto& W = t.ambient->weyl();
  std::optional<std::pair<TorsionVec, std::vector<std::size_t>>> best;
  for (const auto& g : W.elements()) {
    TorsionVec s = g.aut.on_cochar(t.s);
    if (best && best->first < s) continue;
    EndoTriple c = conjugate(t, g.aut);
    std::pair<TorsionVec, std::vector<std::size_t>> key{c.s, c.twist};
    if (!best || key < *best) best = key;
  }
  std::string id = t.ambient->name() + "|s=" + detail::rat_list(best->first.lift()) + "|tw=";
  for (std::size_t i = 0; i < best->second.size(); ++i)
    id += (i ? ";" : "") + detail::word_str(W[best->second[i]].word);
  return id;
}

struct EnumerateOptions {
  int max_order = 2;
  Equivalence dedup = Equivalence::standard;
  bool elliptic_only = true;
  unsigned jobs = 1;
};

// Triples with s of order <= max_order, up to the chosen equivalence, in canonical order.
inline std::vector<EndoTriple> enumerate_triples(const AmbientPtr& amb, const EnumerateOptions& opt) {
  if (opt.max_order < 1) throw PreconditionError("order bound must be at least 1");
  const auto& d = amb->datum();
  const auto& W = amb->weyl();
  const auto& f = amb->form();
  const std::size_t r = d.rank();

  std::set<TorsionVec> grid;
  for (int n = 1; n <= opt.max_order; ++n) {
    std::vector<int> k(r, 0);
    for (;;) {
      RatVec v(r);
      for (std::size_t i = 0; i < r; ++i) v[i] = make_rational(k[i], n);
      grid.insert(TorsionVec(v));
      std::size_t i = 0;
      while (i < r && ++k[i] == n) k[i++] = 0;
      if (i == r) break;
    }
  }
  std::vector<TorsionVec> reps;
  for (const auto& s : grid) {
    bool least = true;
    for (const auto& g : W.elements())
      if (g.aut.on_cochar(s) < s) {
        least = false;
        break;
      }
    if (least) reps.push_back(s);
  }

  auto per_s = parallel_map(reps.size(), opt.jobs, [&](std::size_t idx) {
    const TorsionVec& s = reps[idx];
    auto h_roots = detail::kernel_roots(d, s);
    auto h_base = detail::subsystem_base(d, h_roots);
    std::vector<std::vector<DatumAut>> choices(f.num_gens());
    for (std::size_t i = 0; i < f.num_gens(); ++i) {
      std::set<IntMatrix> seen;
      for (const auto& w : W.elements()) {
        DatumAut x = w.aut * f.gens()[i];
        if (x.on_cochar(s) != s) continue;
        DatumAut nx = detail::normalize(d, h_base, x);
        if (seen.insert(nx.mat).second) choices[i].push_back(nx);
      }
    }
    std::vector<EndoTriple> out;
    for (const auto& c : choices)
      if (c.empty()) return out;
    std::vector<std::size_t> pick(f.num_gens(), 0);
    for (;;) {
      std::vector<DatumAut> raw;
      for (std::size_t i = 0; i < pick.size(); ++i) raw.push_back(choices[i][pick[i]]);
      if (detail::relations_hold(f, raw)) {
        EndoTriple t = detail::assemble(amb, s, raw);
        if (!opt.elliptic_only || is_elliptic(t)) out.push_back(std::move(t));
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    return out;
  });

  std::vector<EndoTriple> kept;
  for (auto& batch : per_s)
    for (auto& t : batch) {
      bool dup = false;
      for (const auto& k : kept)
        if (is_isomorphic(t, k, opt.dedup)) {
          dup = true;
          break;
        }
      if (!dup) kept.push_back(std::move(t));
    }
  return kept;
}

inline std::vector<EndoTriple> enumerate_elliptic(const GaloisForm& g, int max_order, unsigned jobs = 1) {
  EnumerateOptions opt;
  opt.max_order = max_order;
  opt.jobs = jobs;
  return enumerate_triples(dual_ambient(g), opt);
}

// Semisimple data (torsion part, valuation part) of a Frobenius-type element plus a central character.
struct SSPair {
  TorsionVec torsion;  // cocharacters of G modulo Z
  RatVec valuation;    // cocharacters of G, rationally
  TorsionVec lambda;   // characters of G modulo Z
};

inline EndoTriple ss_pair_to_triple(const AmbientPtr& dual_g, const GaloisForm& g, const SSPair& p) {
  const auto& d = g.datum();
  const std::size_t n = d.rank();
  if (p.torsion.size() != n || p.valuation.size() != n || p.lambda.size() != n)
    throw DimensionError("semisimple pair has the wrong rank");
  std::vector<bool> in(d.num_roots(), false);
  for (std::size_t i = 0; i < d.num_roots(); ++i)
    in[i] = pair(d.root(i), p.torsion) == 0 && pair(d.root(i), p.valuation) == 0;
  for (const auto& gen : g.gens())
    for (std::size_t i = 0; i < d.num_roots(); ++i)
      if (in[i] != in[gen.perm[i]]) throw PreconditionError("centralizer is not Galois-stable");
  for (std::size_t i = 0; i < d.num_roots(); ++i)
    if (in[i] && pair(d.coroot(i), p.lambda) != 0)
      throw PreconditionError("lambda is not central in the dual of the centralizer");
  for (const auto& gen : g.gens())
    if (TorsionVec(gen.mat * p.lambda.lift()) != p.lambda)
      throw PreconditionError("lambda is not Galois-fixed");
  return triple_from_element(dual_g, p.lambda);
}

}  // namespace endokit
