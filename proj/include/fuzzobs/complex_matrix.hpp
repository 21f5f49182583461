#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "fuzzobs/errors.hpp"

namespace fuzzobs {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major, double precision throughout.
// Small dimensions only (operators on spaces of dimension <~ 65), so all
// arithmetic is the straightforward O(n^2)/O(n^3) kind.
class CMat {
 public:
  CMat() = default;

  explicit CMat(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {
    if (dim <= 0) throw InvariantError("matrix dimension must be positive");
  }

  CMat(int dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim <= 0) throw InvariantError("matrix dimension must be positive");
    if (entries_.size() != static_cast<std::size_t>(dim) * dim)
      throw InvariantError("matrix entry count does not match dimension");
  }

  static CMat identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }

  Complex& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  Complex operator()(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * dim_ + c];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  CMat adjoint() const {
    CMat m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : entries_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : entries_) s += std::norm(z);
    return std::sqrt(s);
  }

  bool is_finite() const {
    for (const Complex& z : entries_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  CMat& operator+=(const CMat& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }

  CMat& operator-=(const CMat& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }

  CMat& operator*=(Complex s) {
    for (Complex& z : entries_) z *= s;
    return *this;
  }

 private:
  void check_same_dim(const CMat& o) const {
    if (dim_ != o.dim_) throw DimensionMismatchError("matrix dimensions differ");
  }

  int dim_ = 0;
  std::vector<Complex> entries_;
};

inline CMat operator+(CMat a, const CMat& b) { return a += b; }
inline CMat operator-(CMat a, const CMat& b) { return a -= b; }
inline CMat operator*(Complex s, CMat a) { return a *= s; }
inline CMat operator*(CMat a, Complex s) { return a *= s; }
inline CMat operator*(double s, CMat a) { return a *= Complex(s, 0.0); }
inline CMat operator*(CMat a, double s) { return a *= Complex(s, 0.0); }

inline CMat operator*(const CMat& a, const CMat& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("matrix dimensions differ");
  const int n = a.dim();
  CMat c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline std::vector<Complex> operator*(const CMat& m, const std::vector<Complex>& v) {
  if (m.dim() != static_cast<int>(v.size()))
    throw DimensionMismatchError("matrix/vector dimensions differ");
  const int n = m.dim();
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("matrix dimensions differ");
  double m = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

// ||H - H^dagger||_max without forming the adjoint.
inline double hermitian_defect(const CMat& h) {
  double m = 0.0;
  for (int r = 0; r < h.dim(); ++r)
    for (int c = r; c < h.dim(); ++c)
      m = std::max(m, std::abs(h(r, c) - std::conj(h(c, r))));
  return m;
}

// |v><v| for a raw amplitude vector.
inline CMat outer(const std::vector<Complex>& v) {
  const int n = static_cast<int>(v.size());
  CMat m(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

inline Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace fuzzobs
