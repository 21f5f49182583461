#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fuzzobs/complex_matrix.hpp"
#include "fuzzobs/errors.hpp"

namespace fuzzobs {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEffectTol = 1e-9;
inline constexpr double kProjectionTol = 1e-9;

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  CMat eigenvectors;                // unitary, columns match eigenvalues
};

namespace detail {

inline double off_diagonal_frobenius(const CMat& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace detail

// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi rotations.
// Deterministic sweep order (row-major upper triangle); converged when the
// off-diagonal Frobenius mass drops below 1e-14 * ||H||_F.
inline EigenDecomposition hermitian_eig(const CMat& h, double tol = kHermitianTol,
                                        int max_sweeps = 100) {
  if (!h.is_finite()) throw InvariantError("matrix has non-finite entries");
  if (hermitian_defect(h) > tol) throw NotHermitianError("matrix is not Hermitian within tolerance");

  const int n = h.dim();
  // Work on the Hermitian part; the defect is already below tol.
  CMat a(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));
  CMat v = CMat::identity(n);

  const double target = 1e-14 * a.frobenius_norm();
  bool converged = detail::off_diagonal_frobenius(a) <= target;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double abs_apq = std::abs(apq);
        if (abs_apq == 0.0) continue;

        // Phase out the pivot, then apply the classic symmetric rotation:
        // with tau = (a_qq - a_pp) / (2|a_pq|), t solves t^2 + 2 tau t - 1 = 0
        // (smaller root), c = 1/sqrt(1+t^2), s = t c.
        const Complex phase = apq / abs_apq;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * abs_apq);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::hypot(1.0, tau))
                                      : 1.0 / (tau - std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex s_conj_phase = s * std::conj(phase);  // s e^{-i phi}
        const Complex s_phase = s * phase;                  // s e^{+i phi}

        // A <- A U  with U(p,p)=c, U(p,q)=s, U(q,p)=-s e^{-i phi}, U(q,q)=c e^{-i phi}
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s_conj_phase * akq;
          a(k, q) = s * akp + c * std::conj(phase) * akq;
        }
        // A <- U^dagger A
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s_phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        // V <- V U
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s_conj_phase * vkq;
          v(k, q) = s * vkp + c * std::conj(phase) * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    converged = detail::off_diagonal_frobenius(a) <= target;
  }
  if (!converged) throw NoConvergenceError("Jacobi eigensolver exceeded the sweep cap");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMat(n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

// Operator norm of a Hermitian matrix: max |eigenvalue|.
inline double operator_norm(const CMat& h, double tol = kHermitianTol) {
  const EigenDecomposition eig = hermitian_eig(h, tol);
  return std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
}

// True iff H is Hermitian within tol with spectrum in [-tol, 1+tol].
inline bool is_effect(const CMat& h, double tol = kEffectTol) {
  if (!h.is_finite()) return false;
  if (hermitian_defect(h) > tol) return false;
  const EigenDecomposition eig = hermitian_eig(h, std::max(tol, kHermitianTol));
  return eig.eigenvalues.front() >= -tol && eig.eigenvalues.back() <= 1.0 + tol;
}

// True iff H is Hermitian and idempotent within tol.
inline bool is_projection(const CMat& h, double tol = kProjectionTol) {
  if (!h.is_finite()) return false;
  if (hermitian_defect(h) > tol) return false;
  return max_abs_diff(h * h, h) <= tol;
}

// exp(i theta H) for Hermitian H, via the eigendecomposition.
inline CMat unitary_exp_i(const CMat& h, double theta, double tol = kHermitianTol) {
  const EigenDecomposition eig = hermitian_eig(h, tol);
  const int n = h.dim();
  CMat out(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k)
        s += eig.eigenvectors(r, k) * std::polar(1.0, theta * eig.eigenvalues[k]) *
             std::conj(eig.eigenvectors(c, k));
      out(r, c) = s;
    }
  }
  return out;
}

}  // namespace fuzzobs
