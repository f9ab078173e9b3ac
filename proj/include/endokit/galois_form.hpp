#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "endokit/root_datum.hpp"

namespace endokit {

// A quasi-split form: a based datum with a finite abelian group prod Z/n_i acting by pinned automorphisms.
// The action need not be faithful.
class GaloisForm {
 public:
  GaloisForm() = default;

  GaloisForm(BasedRootDatum d, std::vector<int> orders, const std::vector<IntMatrix>& gens, std::string name = {})
      : d_(std::move(d)), orders_(std::move(orders)), name_(std::move(name)) {
    if (name_.empty()) name_ = d_.name();
    if (orders_.size() != gens.size()) throw ValidationError("one order per Galois generator is required");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].rows() != d_.rank() || gens[i].cols() != d_.rank())
        throw DimensionError("Galois generator " + std::to_string(i) + " has the wrong size");
      gens_.push_back(DatumAut::from_matrix(d_, gens[i]));
    }
    check();
  }

  static GaloisForm split(BasedRootDatum d) {
    std::string n = d.name();
    return GaloisForm(std::move(d), {}, {}, n);
  }

  const BasedRootDatum& datum() const { return d_; }
  const std::string& name() const { return name_; }
  const std::vector<int>& orders() const { return orders_; }
  const std::vector<DatumAut>& gens() const { return gens_; }
  std::size_t num_gens() const { return gens_.size(); }

  std::size_t order() const {
    std::size_t n = 1;
    for (int o : orders_) n *= static_cast<std::size_t>(o);
    return n;
  }

  // All elements of the abstract group, indexed by exponent vectors in lexicographic order.
  std::vector<DatumAut> elements() const {
    std::vector<DatumAut> out{DatumAut::identity(d_)};
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      std::vector<DatumAut> next;
      for (const auto& x : out) {
        DatumAut p = x;
        for (int k = 0; k < orders_[i]; ++k) {
          next.push_back(p);
          p = p * gens_[i];
        }
      }
      out = std::move(next);
    }
    return out;
  }

  // Γ-orbits on the simple roots, as sorted label lists.
  std::vector<std::vector<int>> simple_orbits() const {
    std::vector<std::vector<int>> out;
    std::set<int> done;
    for (std::size_t k = 0; k < d_.base().size(); ++k) {
      int l = d_.labels()[k];
      if (done.count(l)) continue;
      std::set<int> orbit{l};
      std::vector<int> todo{static_cast<int>(k)};
      while (!todo.empty()) {
        int p = todo.back();
        todo.pop_back();
        for (const auto& g : gens_) {
          std::size_t img = static_cast<std::size_t>(g.perm[d_.base()[p]]);
          auto q = std::find(d_.base().begin(), d_.base().end(), img) - d_.base().begin();
          if (orbit.insert(d_.labels()[q]).second) todo.push_back(static_cast<int>(q));
        }
      }
      done.insert(orbit.begin(), orbit.end());
      out.emplace_back(orbit.begin(), orbit.end());
    }
    return out;
  }

  bool is_stable(const std::vector<int>& labels) const {
    for (const auto& orbit : simple_orbits()) {
      bool any = false, all = true;
      for (int l : orbit) {
        bool in = std::find(labels.begin(), labels.end(), l) != labels.end();
        any |= in;
        all &= in;
      }
      if (any && !all) return false;
    }
    return true;
  }

  // Γ-stable subsets of the simple labels, ordered by size then lexicographically.
  std::vector<std::vector<int>> stable_subsets() const {
    auto orbits = simple_orbits();
    std::vector<std::vector<int>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << orbits.size()); ++mask) {
      std::vector<int> s;
      for (std::size_t i = 0; i < orbits.size(); ++i)
        if (mask >> i & 1) s.insert(s.end(), orbits[i].begin(), orbits[i].end());
      std::sort(s.begin(), s.end());
      out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
  }

  GaloisForm dual() const {
    GaloisForm f;
    f.d_ = endokit::dual(d_);
    f.orders_ = orders_;
    f.name_ = "dual(" + name_ + ")";
    for (const auto& g : gens_) f.gens_.push_back(DatumAut::from_matrix(f.d_, g.comat));
    return f;
  }

  GaloisForm levi(const std::vector<int>& labels) const {
    if (!is_stable(labels)) throw PreconditionError("Levi subset is not Galois-stable");
    GaloisForm f;
    f.d_ = standard_levi(d_, labels).datum;
    f.orders_ = orders_;
    f.name_ = levi_name(name_, f.d_.labels());
    f.d_.set_name(f.name_);
    for (const auto& g : gens_) f.gens_.push_back(retarget(g, f.d_));
    return f;
  }

 private:
  void check() const {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (orders_[i] <= 0) throw ValidationError("Galois generator order must be positive");
      const auto& g = gens_[i];
      for (auto b : d_.base())
        if (std::find(d_.base().begin(), d_.base().end(), static_cast<std::size_t>(g.perm[b])) ==
            d_.base().end())
          throw ValidationError("Galois generator " + std::to_string(i) + " does not preserve the base");
      DatumAut p = DatumAut::identity(d_);
      for (int k = 0; k < orders_[i]; ++k) p = p * g;
      if (!p.is_identity())
        throw ValidationError("Galois generator " + std::to_string(i) + " does not have order dividing " +
                              std::to_string(orders_[i]));
      for (std::size_t j = 0; j < i; ++j)
        if (!(g * gens_[j] == gens_[j] * g))
          throw ValidationError("Galois generators " + std::to_string(j) + " and " + std::to_string(i) +
                                " do not commute");
    }
  }

  BasedRootDatum d_;
  std::vector<DatumAut> gens_;
  std::vector<int> orders_;
  std::string name_;
};

inline GaloisForm validate_form(const BasedRootDatum& d, const std::vector<int>& orders,
                                const std::vector<IntMatrix>& gens) {
  return GaloisForm(d, orders, gens);
}

// -w0 on characters: the automorphism defining the non-split quasi-split inner class of type A.
inline IntMatrix opposition_flip(const BasedRootDatum& d) {
  DatumAut w = DatumAut::identity(d);
  for (bool moved = true; moved;) {
    moved = false;
    for (auto b : d.base())
      if (d.is_positive(w.perm[b])) {
        w = w * DatumAut::reflection(d, b);
        moved = true;
      }
  }
  IntMatrix m = w.mat;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
  return m;
}

struct RelativeRoots {
  std::vector<RatVec> fixed_cochars;             // basis of the Γ-fixed cocharacters
  std::vector<std::vector<int>> simple_orbits;   // one entry per relative simple root
  std::vector<RatVec> restricted_simple;         // Γ-average of each orbit's simple roots
  std::size_t count() const { return simple_orbits.size(); }
};

inline RatVec gamma_average_cochar(const GaloisForm& f, const RatVec& v) {
  if (v.size() != f.datum().rank()) throw DimensionError("cocharacter has wrong rank");
  auto els = f.elements();
  RatVec s(v.size());
  for (const auto& g : els) s += g.on_cochar(v);
  s *= Rational(1, static_cast<long>(els.size()));
  return s;
}

inline RatVec gamma_average_char(const GaloisForm& f, const RatVec& v) {
  if (v.size() != f.datum().rank()) throw DimensionError("character has wrong rank");
  auto els = f.elements();
  RatVec s(v.size());
  for (const auto& g : els) s += g.on_char(v);
  s *= Rational(1, static_cast<long>(els.size()));
  return s;
}

inline RatVec gamma_average(const GaloisForm& f, const RatVec& v) { return gamma_average_cochar(f, v); }

inline RelativeRoots relative_roots(const GaloisForm& f) {
  RelativeRoots r;
  std::vector<LatAut> co;
  for (const auto& g : f.gens()) co.emplace_back(g.comat);
  r.fixed_cochars = invariant_subspace(co, f.datum().rank());
  r.simple_orbits = f.simple_orbits();
  for (const auto& orbit : r.simple_orbits) {
    auto p = *f.datum().position_of_label(orbit.front());
    r.restricted_simple.push_back(gamma_average_char(f, to_rat(f.datum().root(f.datum().base()[p]))));
  }
  return r;
}

}  // namespace endokit
