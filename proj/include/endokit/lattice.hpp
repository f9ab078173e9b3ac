#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "endokit/errors.hpp"
#include "endokit/rational.hpp"

namespace endokit {

template <class T>
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n) : c_(n, T(0)) {}
  Vec(std::initializer_list<T> xs) : c_(xs) {}
  explicit Vec(std::vector<T> xs) : c_(std::move(xs)) {}

  std::size_t size() const { return c_.size(); }
  T& operator[](std::size_t i) { return c_[i]; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  auto begin() { return c_.begin(); }
  auto end() { return c_.end(); }
  const std::vector<T>& entries() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& x) { return x == 0; });
  }

  Vec& operator+=(const Vec& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(const T& k) {
    for (auto& x : c_) x *= k;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(const T& k, Vec a) { return a *= k; }
  Vec operator-() const {
    Vec r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend bool operator==(const Vec& a, const Vec& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }
  friend bool operator<(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += c_[i].get_str();
    }
    return s + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const Vec& v) { return os << v.str(); }

 private:
  void check_dim(const Vec& o) const {
    if (o.size() != size()) throw DimensionError("vector dimensions differ");
  }
  std::vector<T> c_;
};

using LatVec = Vec<Integer>;
using RatVec = Vec<Rational>;

inline RatVec to_rat(const LatVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

inline std::optional<LatVec> to_lat(const RatVec& v) {
  LatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integral(v[i])) return std::nullopt;
    r[i] = v[i].get_num();
  }
  return r;
}

// Element of a rational vector space modulo the integer lattice; entries kept in [0,1).
class TorsionVec {
 public:
  TorsionVec() = default;
  explicit TorsionVec(std::size_t n) : v_(n) {}
  explicit TorsionVec(const RatVec& v) : v_(v.size()) {
    for (std::size_t i = 0; i < v.size(); ++i) v_[i] = frac_of(v[i]);
  }
  TorsionVec(std::initializer_list<Rational> xs) : TorsionVec(RatVec(xs)) {}

  std::size_t size() const { return v_.size(); }
  const Rational& operator[](std::size_t i) const { return v_[i]; }
  const RatVec& lift() const { return v_; }

  bool is_zero() const { return v_.is_zero(); }

  Integer order() const {
    Integer n = 1;
    for (const auto& x : v_) n = lcm(n, Integer(x.get_den()));
    return n;
  }

  friend TorsionVec operator+(const TorsionVec& a, const TorsionVec& b) {
    return TorsionVec(a.v_ + b.v_);
  }
  friend TorsionVec operator-(const TorsionVec& a, const TorsionVec& b) {
    return TorsionVec(a.v_ - b.v_);
  }
  friend bool operator==(const TorsionVec& a, const TorsionVec& b) { return a.v_ == b.v_; }
  friend bool operator!=(const TorsionVec& a, const TorsionVec& b) { return !(a == b); }
  friend bool operator<(const TorsionVec& a, const TorsionVec& b) { return a.v_ < b.v_; }

  std::string str() const { return v_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const TorsionVec& v) { return os << v.str(); }

 private:
  RatVec v_;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
      if (row.size() != c_) throw DimensionError("ragged matrix literal");
      d_.insert(d_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vec<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

  Vec<T> row(std::size_t i) const {
    return Vec<T>(std::vector<T>(d_.begin() + i * c_, d_.begin() + (i + 1) * c_));
  }
  Vec<T> col(std::size_t j) const {
    Vec<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw DimensionError("matrix product dimension mismatch");
    Matrix p(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.c_; ++j) p(i, j) += x * b(k, j);
      }
    return p;
  }

  template <class U>
  friend Vec<U> operator*(const Matrix& a, const Vec<U>& v) {
    if (a.c_ != v.size()) throw DimensionError("matrix-vector dimension mismatch");
    Vec<U> r(a.r_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t j = 0; j < a.c_; ++j)
        if (a(i, j) != 0) r[i] += U(a(i, j)) * v[j];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r(a);
    for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] -= b.d_[i];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b) {
    return std::lexicographical_compare(a.d_.begin(), a.d_.end(), b.d_.begin(), b.d_.end());
  }

  bool is_identity() const { return *this == identity(r_); }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < r_; ++i) {
      if (i) s += ";";
      for (std::size_t j = 0; j < c_; ++j) {
        if (j) s += " ";
        s += (*this)(i, j).get_str();
      }
    }
    return s + "]";
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> d_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

// ---- linear algebra over Q ----

struct Echelon {
  RatMatrix m;
  std::vector<std::size_t> pivots;
};

inline Echelon rref(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank_of(const RatMatrix& m) { return rref(m).pivots.size(); }

// Reduced echelon basis of the row span; leading entries are 1.
inline std::vector<RatVec> row_basis(const std::vector<RatVec>& vs, std::size_t dim) {
  if (vs.empty()) return {};
  Echelon e = rref(RatMatrix::from_rows(vs, dim));
  std::vector<RatVec> out;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) out.push_back(e.m.row(i));
  return out;
}

// Basis of {x : m x = 0}, returned in reduced echelon form.
inline std::vector<RatVec> nullspace(const RatMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.m(i, f);
    basis.push_back(v);
  }
  return row_basis(basis, m.cols());
}

// Some x with m x = b, if one exists.
inline std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b) {
  if (b.size() != m.rows()) throw DimensionError("solve: right-hand side dimension");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  RatVec x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.m(i, m.cols());
  return x;
}

// Coefficients c with v = sum c_i basis_i; basis must be linearly independent.
inline std::optional<RatVec> coordinates(const std::vector<RatVec>& basis, const RatVec& v) {
  if (basis.empty()) {
    if (v.is_zero()) return RatVec();
    return std::nullopt;
  }
  RatMatrix m = RatMatrix::from_rows(basis, v.size()).transpose();
  return solve(m, v);
}

inline Rational determinant(RatMatrix m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DimensionError("inverse of non-square matrix");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.m(i, n + j);
  return inv;
}

// ---- lattice automorphisms ----

class LatAut {
 public:
  LatAut() = default;
  explicit LatAut(IntMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionError("lattice automorphism must be square");
    Rational d = determinant(to_rat(m_));
    if (d != 1 && d != -1) throw ValidationError("matrix " + m_.str() + " is not invertible over Z");
  }
  static LatAut identity(std::size_t n) { return LatAut(IntMatrix::identity(n)); }

  std::size_t rank() const { return m_.rows(); }
  const IntMatrix& matrix() const { return m_; }

  LatAut inverse() const {
    auto inv = endokit::inverse(to_rat(m_));
    IntMatrix r(rank(), rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) r(i, j) = (*inv)(i, j).get_num();
    LatAut a;
    a.m_ = std::move(r);
    return a;
  }
  // Action on the dual lattice: inverse transpose.
  LatAut contragredient() const {
    LatAut a = inverse();
    a.m_ = a.m_.transpose();
    return a;
  }

  LatVec apply(const LatVec& v) const { return m_ * v; }
  RatVec apply(const RatVec& v) const { return m_ * v; }
  TorsionVec apply(const TorsionVec& v) const { return TorsionVec(m_ * v.lift()); }

  friend LatAut operator*(const LatAut& a, const LatAut& b) {
    LatAut r;
    r.m_ = a.m_ * b.m_;
    return r;
  }
  friend bool operator==(const LatAut& a, const LatAut& b) { return a.m_ == b.m_; }
  friend bool operator<(const LatAut& a, const LatAut& b) { return a.m_ < b.m_; }

 private:
  IntMatrix m_;
};

// ---- pairings ----

template <class A, class B>
Rational pair_raw(const A& x, const B& y) {
  if (x.size() != y.size()) throw DimensionError("pairing of vectors with different ranks");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += Rational(x[i]) * Rational(y[i]);
  return s;
}

inline Rational pair(const LatVec& x, const LatVec& y) { return pair_raw(x, y); }
inline Rational pair(const RatVec& x, const RatVec& y) { return pair_raw(x, y); }
inline Rational pair(const LatVec& x, const RatVec& y) { return pair_raw(x, y); }
inline Rational pair(const RatVec& x, const LatVec& y) { return pair_raw(x, y); }
// Value in Q/Z, represented in [0,1).
inline Rational pair(const LatVec& x, const TorsionVec& t) { return frac_of(pair_raw(x, t.lift())); }
inline Rational pair(const TorsionVec& t, const LatVec& x) { return pair(x, t); }

// Fixed subspace of a set of automorphisms, as a reduced echelon basis.
inline std::vector<RatVec> invariant_subspace(std::span<const LatAut> gens, std::size_t rank) {
  std::vector<RatVec> eqs;
  for (const auto& g : gens) {
    if (g.rank() != rank) throw DimensionError("generator rank mismatch");
    RatMatrix d = to_rat(g.matrix()) - RatMatrix::identity(rank);
    for (std::size_t i = 0; i < rank; ++i) eqs.push_back(d.row(i));
  }
  if (eqs.empty()) eqs.push_back(RatVec(rank));
  return nullspace(RatMatrix::from_rows(eqs, rank));
}

// ---- integer lattices ----

// Canonical representatives for Z^n modulo the span of a set of integer vectors (Hermite form).
class LatticeQuotient {
 public:
  LatticeQuotient(const std::vector<LatVec>& gens, std::size_t dim) : dim_(dim) {
    std::vector<LatVec> rows;
    for (const auto& g : gens) {
      if (g.size() != dim) throw DimensionError("lattice generator dimension");
      if (!g.is_zero()) rows.push_back(g);
    }
    std::size_t top = 0;
    for (std::size_t col = 0; col < dim && top < rows.size(); ++col) {
      // Euclid on column entries until one nonzero remains at `top`.
      for (;;) {
        std::size_t best = rows.size();
        for (std::size_t i = top; i < rows.size(); ++i)
          if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])))
            best = i;
        if (best == rows.size()) break;
        std::swap(rows[top], rows[best]);
        bool done = true;
        for (std::size_t i = top + 1; i < rows.size(); ++i) {
          if (rows[i][col] == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
          rows[i] -= q * rows[top];
          if (rows[i][col] != 0) done = false;
        }
        if (done) break;
      }
      if (rows[top][col] == 0) continue;
      if (rows[top][col] < 0) rows[top] = -rows[top];
      for (std::size_t i = 0; i < top; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
        rows[i] -= q * rows[top];
      }
      pivots_.push_back(col);
      ++top;
    }
    rows.resize(top);
    hnf_ = std::move(rows);
  }

  LatVec reduce(LatVec v) const {
    if (v.size() != dim_) throw DimensionError("lattice quotient dimension");
    for (std::size_t i = 0; i < hnf_.size(); ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), v[pivots_[i]].get_mpz_t(), hnf_[i][pivots_[i]].get_mpz_t());
      v -= q * hnf_[i];
    }
    return v;
  }

  bool contains(const LatVec& v) const { return reduce(v).is_zero(); }
  const std::vector<LatVec>& hermite_rows() const { return hnf_; }

 private:
  std::size_t dim_;
  std::vector<LatVec> hnf_;
  std::vector<std::size_t> pivots_;
};

}  // namespace endokit
