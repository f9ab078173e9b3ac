#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "endokit/lattice.hpp"

namespace endokit {

inline constexpr std::size_t kDefaultWeylLimit = 1000000;

struct RootDatum {
  std::size_t rank = 0;
  std::vector<LatVec> roots;
  std::vector<LatVec> coroots;
};

namespace detail {

inline LatVec reflect(const LatVec& x, const LatVec& root, const LatVec& coroot) {
  Integer k = pair(x, coroot).get_num();
  return x - k * root;
}

struct PermHash {
  std::size_t operator()(const std::vector<int>& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : p) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ull;
    return h;
  }
};

}  // namespace detail

// Checks the axioms and returns the datum with roots in lexicographic order.
inline RootDatum validate(const RootDatum& d) {
  if (d.roots.size() != d.coroots.size())
    throw ValidationError("roots and coroots have different counts");
  std::map<LatVec, LatVec> by_root;
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    const auto& a = d.roots[i];
    const auto& c = d.coroots[i];
    if (a.size() != d.rank || c.size() != d.rank) throw DimensionError("root vector has wrong rank");
    if (a.is_zero()) throw ValidationError("zero root");
    if (pair(a, c) != 2)
      throw ValidationError("root " + a.str() + " pairs to " + to_string(pair(a, c)) + " with its coroot");
    if (!by_root.emplace(a, c).second) throw ValidationError("duplicate root " + a.str());
  }
  for (const auto& [a, c] : by_root) {
    if (by_root.count(a + a)) throw ValidationError("non-reduced root system at " + a.str());
    for (const auto& [b, bc] : by_root) {
      LatVec sb = detail::reflect(b, a, c);
      auto it = by_root.find(sb);
      if (it == by_root.end())
        throw ValidationError("reflection in " + a.str() + " does not preserve the roots");
      if (detail::reflect(bc, c, a) != it->second)
        throw ValidationError("reflection in " + a.str() + " does not preserve the coroots");
    }
  }
  RootDatum out;
  out.rank = d.rank;
  for (const auto& [a, c] : by_root) {
    out.roots.push_back(a);
    out.coroots.push_back(c);
  }
  return out;
}

class BasedRootDatum {
 public:
  BasedRootDatum() = default;

  // `simple` lists the simple roots as vectors; `labels` name them (defaults to 0..l-1).
  BasedRootDatum(const RootDatum& raw, const std::vector<LatVec>& simple, std::vector<int> labels = {},
                 std::string name = {})
      : name_(std::move(name)) {
    RootDatum d = validate(raw);
    rank_ = d.rank;
    if (labels.empty()) {
      labels.resize(simple.size());
      std::iota(labels.begin(), labels.end(), 0);
    }
    if (labels.size() != simple.size()) throw ValidationError("label count differs from base size");
    labels_ = labels;

    std::map<LatVec, std::size_t> index;
    for (std::size_t i = 0; i < d.roots.size(); ++i) index[d.roots[i]] = i;
    for (const auto& s : simple)
      if (!index.count(s)) throw ValidationError("simple root " + s.str() + " is not a root");
    if (!simple.empty() && rank_of(to_rat(IntMatrix::from_rows(simple, rank_))) != simple.size())
      throw ValidationError("simple roots are not linearly independent");
    if (!d.roots.empty() &&
        rank_of(to_rat(IntMatrix::from_rows(d.roots, rank_))) != simple.size())
      throw ValidationError("base does not span the root space");

    std::vector<RatVec> sr;
    for (const auto& s : simple) sr.push_back(to_rat(s));
    struct Entry {
      LatVec root, coroot, coeff;
      Integer height;
      bool positive;
    };
    std::vector<Entry> pos, neg;
    for (std::size_t i = 0; i < d.roots.size(); ++i) {
      auto c = coordinates(sr, to_rat(d.roots[i]));
      if (!c) throw ValidationError("root " + d.roots[i].str() + " not in the span of the base");
      auto ci = to_lat(*c);
      if (!ci) throw ValidationError("root " + d.roots[i].str() + " is not an integral combination of the base");
      bool any_pos = false, any_neg = false;
      Integer h = 0;
      for (const auto& x : *ci) {
        if (x > 0) any_pos = true;
        if (x < 0) any_neg = true;
        h += x;
      }
      if (any_pos && any_neg) throw ValidationError("root " + d.roots[i].str() + " has mixed-sign coordinates");
      Entry e{d.roots[i], d.coroots[i], *ci, h, any_pos};
      (any_pos ? pos : neg).push_back(e);
    }
    auto order = [](const Entry& a, const Entry& b) {
      if (a.height != b.height) return a.height < b.height;
      return a.root < b.root;
    };
    std::sort(pos.begin(), pos.end(), order);
    npos_ = pos.size();
    for (const auto& e : pos) push(e.root, e.coroot, e.coeff, true);
    for (const auto& e : pos) {
      auto it = std::find_if(neg.begin(), neg.end(), [&](const Entry& n) { return n.root == -e.root; });
      if (it == neg.end()) throw ValidationError("negative of root " + e.root.str() + " is missing");
      push(it->root, it->coroot, it->coeff, false);
    }
    for (std::size_t i = 0; i < roots_.size(); ++i) root_index_[roots_[i]] = i;
    for (const auto& s : simple) base_.push_back(root_index_.at(s));
  }

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  std::size_t rank() const { return rank_; }
  std::size_t num_roots() const { return roots_.size(); }
  std::size_t num_positive() const { return npos_; }
  const LatVec& root(std::size_t i) const { return roots_[i]; }
  const LatVec& coroot(std::size_t i) const { return coroots_[i]; }
  const std::vector<LatVec>& roots() const { return roots_; }
  const std::vector<LatVec>& coroots() const { return coroots_; }
  const std::vector<std::size_t>& base() const { return base_; }
  std::size_t semisimple_rank() const { return base_.size(); }
  const std::vector<int>& labels() const { return labels_; }
  bool is_positive(std::size_t i) const { return i < npos_; }
  std::size_t negative_of(std::size_t i) const { return i < npos_ ? i + npos_ : i - npos_; }
  // Coordinates of root i in the base.
  const LatVec& coeffs(std::size_t i) const { return coeffs_[i]; }

  std::optional<std::size_t> find_root(const LatVec& v) const {
    auto it = root_index_.find(v);
    if (it == root_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> position_of_label(int label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  RootDatum raw() const { return RootDatum{rank_, roots_, coroots_}; }
  std::vector<LatVec> simple_roots() const {
    std::vector<LatVec> s;
    for (auto b : base_) s.push_back(roots_[b]);
    return s;
  }

  friend bool operator==(const BasedRootDatum& a, const BasedRootDatum& b) {
    return a.rank_ == b.rank_ && a.roots_ == b.roots_ && a.coroots_ == b.coroots_ && a.base_ == b.base_ &&
           a.labels_ == b.labels_;
  }

 private:
  void push(const LatVec& r, const LatVec& c, const LatVec& k, bool) {
    roots_.push_back(r);
    coroots_.push_back(c);
    coeffs_.push_back(k);
  }

  std::string name_;
  std::size_t rank_ = 0;
  std::size_t npos_ = 0;
  std::vector<LatVec> roots_, coroots_, coeffs_;
  std::vector<std::size_t> base_;
  std::vector<int> labels_;
  std::map<LatVec, std::size_t> root_index_;
};

inline BasedRootDatum dual(const BasedRootDatum& d) {
  RootDatum r{d.rank(), d.coroots(), d.roots()};
  std::vector<LatVec> simple;
  for (auto b : d.base()) simple.push_back(d.coroot(b));
  return BasedRootDatum(r, simple, d.labels(), d.name().empty() ? "" : "dual(" + d.name() + ")");
}

// ---- automorphisms of a datum ----

// A lattice automorphism together with its contragredient and the induced root permutation.
struct DatumAut {
  IntMatrix mat;    // on characters (where the roots live)
  IntMatrix comat;  // on cocharacters
  std::vector<int> perm;

  static DatumAut identity(const BasedRootDatum& d) {
    DatumAut a{IntMatrix::identity(d.rank()), IntMatrix::identity(d.rank()), {}};
    a.perm.resize(d.num_roots());
    std::iota(a.perm.begin(), a.perm.end(), 0);
    return a;
  }

  // Throws ValidationError unless `m` permutes the roots compatibly with the coroots.
  static DatumAut from_matrix(const BasedRootDatum& d, const IntMatrix& m) {
    LatAut g(m);
    DatumAut a{m, g.contragredient().matrix(), {}};
    a.perm.resize(d.num_roots());
    for (std::size_t i = 0; i < d.num_roots(); ++i) {
      auto j = d.find_root(m * d.root(i));
      if (!j) throw ValidationError("matrix " + m.str() + " does not permute the roots");
      if (a.comat * d.coroot(i) != d.coroot(*j))
        throw ValidationError("matrix " + m.str() + " does not respect the root-coroot bijection");
      a.perm[i] = static_cast<int>(*j);
    }
    return a;
  }

  static DatumAut reflection(const BasedRootDatum& d, std::size_t root) {
    const auto& a = d.root(root);
    const auto& c = d.coroot(root);
    const std::size_t n = d.rank();
    IntMatrix m = IntMatrix::identity(n), cm = IntMatrix::identity(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        m(r, k) -= a[r] * c[k];
        cm(r, k) -= c[r] * a[k];
      }
    DatumAut s{m, cm, {}};
    s.perm.resize(d.num_roots());
    for (std::size_t i = 0; i < d.num_roots(); ++i)
      s.perm[i] = static_cast<int>(*d.find_root(detail::reflect(d.root(i), a, c)));
    return s;
  }

  LatVec on_char(const LatVec& v) const { return mat * v; }
  RatVec on_char(const RatVec& v) const { return mat * v; }
  LatVec on_cochar(const LatVec& v) const { return comat * v; }
  RatVec on_cochar(const RatVec& v) const { return comat * v; }
  TorsionVec on_cochar(const TorsionVec& v) const { return TorsionVec(comat * v.lift()); }

  DatumAut inverse() const {
    DatumAut r{comat.transpose(), mat.transpose(), std::vector<int>(perm.size())};
    for (std::size_t i = 0; i < perm.size(); ++i) r.perm[perm[i]] = static_cast<int>(i);
    return r;
  }

  bool is_identity() const { return mat.is_identity(); }

  // Whether the positive roots (indices < npos) are preserved.
  bool preserves_positive(const BasedRootDatum& d) const {
    for (std::size_t i = 0; i < d.num_positive(); ++i)
      if (!d.is_positive(perm[i])) return false;
    return true;
  }

  friend DatumAut operator*(const DatumAut& a, const DatumAut& b) {
    DatumAut r{a.mat * b.mat, a.comat * b.comat, std::vector<int>(b.perm.size())};
    for (std::size_t i = 0; i < b.perm.size(); ++i) r.perm[i] = a.perm[b.perm[i]];
    return r;
  }
  friend bool operator==(const DatumAut& a, const DatumAut& b) { return a.mat == b.mat; }
};

// Transports an automorphism to another datum on the same lattice (e.g. a Levi or the ambient group).
inline DatumAut retarget(const DatumAut& a, const BasedRootDatum& target) {
  DatumAut r{a.mat, a.comat, std::vector<int>(target.num_roots())};
  for (std::size_t i = 0; i < target.num_roots(); ++i) {
    auto j = target.find_root(a.mat * target.root(i));
    if (!j) throw ValidationError("automorphism does not preserve the target roots");
    r.perm[i] = static_cast<int>(*j);
  }
  return r;
}

struct WeylElt {
  DatumAut aut;
  std::vector<int> word;  // simple-root positions, leftmost letter applied last
  std::size_t length() const { return word.size(); }
};

inline std::size_t inversion_count(const BasedRootDatum& d, const DatumAut& a) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < d.num_positive(); ++i)
    if (!d.is_positive(a.perm[i])) ++n;
  return n;
}

// Lexicographically least reduced word of a Weyl group element, by peeling smallest left descents.
inline std::vector<int> reduced_word(const BasedRootDatum& d, DatumAut a) {
  std::vector<int> word;
  for (;;) {
    DatumAut inv = a.inverse();
    bool found = false;
    for (std::size_t k = 0; k < d.base().size(); ++k) {
      if (!d.is_positive(inv.perm[d.base()[k]])) {
        word.push_back(static_cast<int>(k));
        a = DatumAut::reflection(d, d.base()[k]) * a;
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  if (!a.is_identity()) throw ValidationError("automorphism is not in the Weyl group");
  return word;
}

inline WeylElt weyl_from_word(const BasedRootDatum& d, const std::vector<int>& word) {
  DatumAut a = DatumAut::identity(d);
  for (int k : word) a = a * DatumAut::reflection(d, d.base().at(k));
  return WeylElt{a, reduced_word(d, a)};
}

class WeylGroup {
 public:
  explicit WeylGroup(const BasedRootDatum& d, std::size_t limit = kDefaultWeylLimit) : d_(d) {
    for (auto b : d_.base()) simple_.push_back(DatumAut::reflection(d_, b));
    add(WeylElt{DatumAut::identity(d_), {}});
    for (std::size_t head = 0; head < elts_.size(); ++head) {
      for (std::size_t k = 0; k < simple_.size(); ++k) {
        DatumAut next = elts_[head].aut * simple_[k];
        if (index_.count(next.perm)) continue;
        if (elts_.size() >= limit)
          throw EnumerationLimit("Weyl group exceeds " + std::to_string(limit) + " elements");
        auto w = elts_[head].word;
        w.push_back(static_cast<int>(k));
        add(WeylElt{std::move(next), std::move(w)});
      }
    }
  }

  const BasedRootDatum& datum() const { return d_; }
  std::size_t size() const { return elts_.size(); }
  const WeylElt& operator[](std::size_t i) const { return elts_[i]; }
  const std::vector<WeylElt>& elements() const { return elts_; }

  std::optional<std::size_t> index_of(const DatumAut& a) const {
    auto it = index_.find(a.perm);
    if (it == index_.end() || !(elts_[it->second].aut == a)) return std::nullopt;
    return it->second;
  }
  std::size_t mul(std::size_t i, std::size_t j) const {
    return index_.at((elts_[i].aut * elts_[j].aut).perm);
  }
  std::size_t inv(std::size_t i) const { return index_.at(elts_[i].aut.inverse().perm); }
  std::size_t simple(std::size_t k) const { return index_.at(simple_[k].perm); }

  // Membership in the parabolic subgroup generated by the simple positions in `mask`.
  bool in_parabolic(std::size_t i, const std::vector<bool>& mask) const {
    for (int k : elts_[i].word)
      if (!mask[k]) return false;
    return true;
  }

  // Closure of a set of elements, in canonical order.
  std::vector<std::size_t> subgroup(const std::vector<std::size_t>& gens) const {
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> out{0};
    seen[0] = true;
    for (std::size_t h = 0; h < out.size(); ++h)
      for (auto g : gens) {
        auto n = mul(out[h], g);
        if (!seen[n]) {
          seen[n] = true;
          out.push_back(n);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void add(WeylElt w) {
    index_.emplace(w.aut.perm, elts_.size());
    elts_.push_back(std::move(w));
  }

  BasedRootDatum d_;
  std::vector<DatumAut> simple_;
  std::vector<WeylElt> elts_;
  std::unordered_map<std::vector<int>, std::size_t, detail::PermHash> index_;
};

// Elements in canonical order: by length, then by lexicographically least reduced word.
inline std::vector<WeylElt> weyl_group(const BasedRootDatum& d, std::size_t limit = kDefaultWeylLimit) {
  return WeylGroup(d, limit).elements();
}

inline bool is_dominant(const BasedRootDatum& d, const RatVec& v, const std::vector<int>& labels) {
  for (std::size_t k = 0; k < d.base().size(); ++k) {
    if (std::find(labels.begin(), labels.end(), d.labels()[k]) == labels.end()) continue;
    if (pair(d.root(d.base()[k]), v) < 0) return false;
  }
  return true;
}

inline bool is_dominant(const BasedRootDatum& d, const RatVec& v) { return is_dominant(d, v, d.labels()); }

// Returns (w v, w) with w v dominant for the simple roots whose labels are listed.
inline std::pair<RatVec, WeylElt> dominant_rep(const BasedRootDatum& d, RatVec v, const std::vector<int>& labels) {
  if (v.size() != d.rank()) throw DimensionError("cocharacter has wrong rank");
  DatumAut w = DatumAut::identity(d);
  for (;;) {
    bool moved = false;
    for (std::size_t k = 0; k < d.base().size(); ++k) {
      if (std::find(labels.begin(), labels.end(), d.labels()[k]) == labels.end()) continue;
      std::size_t b = d.base()[k];
      Rational x = pair(d.root(b), v);
      if (x < 0) {
        v -= x * to_rat(d.coroot(b));
        w = DatumAut::reflection(d, b) * w;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  auto word = reduced_word(d, w);
  return {v, WeylElt{w, word}};
}

inline std::pair<RatVec, WeylElt> dominant_rep(const BasedRootDatum& d, const RatVec& v) {
  return dominant_rep(d, v, d.labels());
}

// ---- standard Levi subgroups ----

struct StdLevi {
  std::vector<int> labels;          // simple roots of the Levi, as labels of the ambient base
  BasedRootDatum datum;             // same lattice, roots supported on `labels`
  std::vector<std::size_t> root_map;  // Levi root index -> ambient root index
};

inline std::string levi_name(const std::string& ambient, const std::vector<int>& labels) {
  std::string s = ambient + "[";
  for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + std::to_string(labels[i]);
  return s + "]";
}

inline StdLevi standard_levi(const BasedRootDatum& d, std::vector<int> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<bool> in(d.base().size(), false);
  for (int l : labels) {
    auto p = d.position_of_label(l);
    if (!p) throw ValidationError("label " + std::to_string(l) + " is not a simple root of " + d.name());
    in[*p] = true;
  }
  RootDatum raw{d.rank(), {}, {}};
  for (std::size_t i = 0; i < d.num_roots(); ++i) {
    bool inside = true;
    for (std::size_t k = 0; k < in.size(); ++k)
      if (!in[k] && d.coeffs(i)[k] != 0) inside = false;
    if (inside) {
      raw.roots.push_back(d.root(i));
      raw.coroots.push_back(d.coroot(i));
    }
  }
  std::vector<LatVec> simple;
  std::vector<int> lab;
  for (std::size_t k = 0; k < in.size(); ++k)
    if (in[k]) {
      simple.push_back(d.root(d.base()[k]));
      lab.push_back(d.labels()[k]);
    }
  StdLevi m{labels, BasedRootDatum(raw, simple, lab, levi_name(d.name(), labels)), {}};
  for (const auto& r : m.datum.roots()) m.root_map.push_back(*d.find_root(r));
  return m;
}

inline StdLevi levi_from_cochar(const BasedRootDatum& d, const RatVec& nu) {
  std::vector<int> labels;
  for (std::size_t k = 0; k < d.base().size(); ++k) {
    Rational x = pair(d.root(d.base()[k]), nu);
    if (x < 0) throw PreconditionError("cocharacter " + nu.str() + " is not dominant");
    if (x == 0) labels.push_back(d.labels()[k]);
  }
  return standard_levi(d, labels);
}

// ---- builtin groups ----

namespace detail {

// Closure of simple (root, coroot) pairs under the simple reflections.
inline RootDatum generate(std::size_t rank, const std::vector<LatVec>& sr, const std::vector<LatVec>& sc) {
  std::map<LatVec, LatVec> found;
  std::deque<std::pair<LatVec, LatVec>> todo;
  for (std::size_t i = 0; i < sr.size(); ++i) todo.emplace_back(sr[i], sc[i]);
  while (!todo.empty()) {
    auto [r, c] = todo.front();
    todo.pop_front();
    if (!found.emplace(r, c).second) continue;
    for (std::size_t i = 0; i < sr.size(); ++i)
      todo.emplace_back(reflect(r, sr[i], sc[i]), reflect(c, sc[i], sr[i]));
  }
  RootDatum d{rank, {}, {}};
  for (auto& [r, c] : found) {
    d.roots.push_back(r);
    d.coroots.push_back(c);
  }
  return d;
}

inline LatVec unit(std::size_t n, std::size_t i, int k = 1) {
  LatVec v(n);
  v[i] = k;
  return v;
}

inline std::vector<std::vector<int>> cartan_a(std::size_t l) {
  std::vector<std::vector<int>> c(l, std::vector<int>(l, 0));
  for (std::size_t i = 0; i < l; ++i) {
    c[i][i] = 2;
    if (i + 1 < l) c[i][i + 1] = c[i + 1][i] = -1;
  }
  return c;
}

}  // namespace detail

// cartan[i][j] = <alpha_j, alpha_i^vee>.
inline BasedRootDatum from_cartan(const std::vector<std::vector<int>>& cartan, bool simply_connected,
                                  std::string name = {}) {
  const std::size_t l = cartan.size();
  std::vector<LatVec> sr(l, LatVec(l)), sc(l, LatVec(l));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      if (simply_connected) {
        sr[j][i] = cartan[i][j];
        sc[i] = detail::unit(l, i);
      } else {
        sr[j] = detail::unit(l, j);
        sc[i][j] = cartan[i][j];
      }
    }
  return BasedRootDatum(detail::generate(l, sr, sc), sr, {}, std::move(name));
}

inline BasedRootDatum torus(std::size_t r) {
  return BasedRootDatum(RootDatum{r, {}, {}}, {}, {}, "T" + std::to_string(r));
}

inline BasedRootDatum gl(std::size_t n, std::size_t offset = 0, std::size_t rank = 0, std::string name = {}) {
  if (rank == 0) rank = n + offset;
  std::vector<LatVec> sr, sc;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    LatVec a = detail::unit(rank, offset + i) - detail::unit(rank, offset + i + 1);
    sr.push_back(a);
    sc.push_back(a);
  }
  if (name.empty()) name = "GL" + std::to_string(n);
  return BasedRootDatum(detail::generate(rank, sr, sc), sr, {}, name);
}

// Classical groups by matrix size: GL n, SL n, PGL n, U n, Sp 2m, SO 2m+1, SO 2m, GU n, T r.
inline BasedRootDatum builtin_datum(const std::string& family, std::size_t n) {
  using detail::unit;
  if (n == 0) throw ValidationError("builtin group size must be positive");
  if (family == "T") return torus(n);
  if (family == "GL" || family == "U") return gl(n, 0, 0, family + std::to_string(n));
  if (family == "GU") return gl(n, 1, n + 1, "GU" + std::to_string(n));
  if (family == "SL" || family == "PGL") {
    if (n < 2) throw ValidationError(family + " needs n >= 2");
    return from_cartan(detail::cartan_a(n - 1), family == "SL", family + std::to_string(n));
  }
  std::string name = family + std::to_string(n);
  if (family == "Sp" || family == "SO") {
    std::size_t m = n / 2;
    bool odd = n % 2 == 1;
    if (family == "Sp" && (odd || m == 0)) throw ValidationError("Sp needs an even size");
    if (m == 0) throw ValidationError("SO needs size >= 2");
    if (family == "SO" && !odd && m == 1) {
      auto t = torus(1);
      t.set_name(name);
      return t;
    }
    std::vector<LatVec> sr, sc;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      LatVec a = unit(m, i) - unit(m, i + 1);
      sr.push_back(a);
      sc.push_back(a);
    }
    if (family == "Sp") {
      sr.push_back(unit(m, m - 1, 2));
      sc.push_back(unit(m, m - 1));
    } else if (odd) {
      sr.push_back(unit(m, m - 1));
      sc.push_back(unit(m, m - 1, 2));
    } else {
      LatVec a = unit(m, m - 2) + unit(m, m - 1);
      sr.push_back(a);
      sc.push_back(a);
    }
    return BasedRootDatum(detail::generate(m, sr, sc), sr, {}, name);
  }
  throw ValidationError("unknown builtin family '" + family + "'");
}

}  // namespace endokit
