#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fuzzobs/complex_matrix.hpp"
#include "fuzzobs/cyclic_measure.hpp"
#include "fuzzobs/errors.hpp"
#include "fuzzobs/hermitian_eig.hpp"
#include "fuzzobs/observable.hpp"

namespace fuzzobs {

// Density operator: Hermitian, positive semidefinite, unit trace.
class StateDensity {
 public:
  explicit StateDensity(CMat matrix) : mat_(std::move(matrix)) {
    if (!mat_.is_finite()) throw InvalidStateError("state has non-finite entries");
    if (hermitian_defect(mat_) > kHermitianTol)
      throw InvalidStateError("state is not Hermitian");
    if (std::abs(mat_.trace().real() - 1.0) > 1e-10 || std::abs(mat_.trace().imag()) > 1e-10)
      throw InvalidStateError("state trace is not 1");
    const EigenDecomposition eig = hermitian_eig(mat_);
    if (eig.eigenvalues.front() < -kEffectTol)
      throw InvalidStateError("state is not positive semidefinite");
  }

  static StateDensity pure(const StateVector& psi) { return StateDensity(outer(psi.amplitudes())); }

  static StateDensity maximally_mixed(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0 / dim;
    return StateDensity(std::move(m));
  }

  int dim() const { return mat_.dim(); }
  const CMat& matrix() const { return mat_; }

 private:
  CMat mat_;
};

// V_E(T)(w) = tr[T E({w})].
inline ProbabilityMeasure statistics_map(const Observable& obs, const StateDensity& state) {
  if (obs.dim() != state.dim())
    throw DimensionMismatchError("state dimension does not match the observable");
  const int n = obs.order();
  std::vector<double> w(n, 0.0);
  for (int x = 0; x < n; ++x) {
    const CMat& atom = obs.atom(x);
    Complex t = 0.0;
    for (int i = 0; i < obs.dim(); ++i)
      for (int j = 0; j < obs.dim(); ++j) t += state.matrix()(i, j) * atom(j, i);
    if (t.real() < -2.0 * kEffectTol) throw InvariantError("negative outcome probability");
    w[x] = std::max(t.real(), 0.0);
  }
  return ProbabilityMeasure(obs.group(), std::move(w));
}

// Stochastic map on measures over Z_N; measures act as row vectors:
// (W m)(x) = sum_w m(w) matrix[w][x].
class CoarseKernel {
 public:
  CoarseKernel(CyclicGroup group, std::vector<std::vector<double>> rows)
      : group_(group), rows_(std::move(rows)) {
    if (static_cast<int>(rows_.size()) != group_.order)
      throw InvariantError("kernel row count does not match group order");
    for (const auto& row : rows_) {
      if (static_cast<int>(row.size()) != group_.order)
        throw InvariantError("kernel row length does not match group order");
      double sum = 0.0;
      for (double v : row) {
        if (!std::isfinite(v) || v < -kMeasureSumTol)
          throw InvariantError("kernel entries must be nonnegative");
        sum += v;
      }
      if (std::abs(sum - 1.0) > kMeasureSumTol)
        throw InvariantError("kernel rows must sum to 1");
    }
  }

  CyclicGroup group() const { return group_; }
  int order() const { return group_.order; }
  double entry(int w, int x) const { return rows_[w][x]; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  ProbabilityMeasure apply(const ProbabilityMeasure& m) const {
    if (m.group() != group_) throw GroupMismatchError("kernel and measure groups differ");
    std::vector<double> out(group_.order, 0.0);
    for (int w = 0; w < group_.order; ++w) {
      const double mw = m.weights()[w];
      if (mw == 0.0) continue;
      for (int x = 0; x < group_.order; ++x) out[x] += mw * rows_[w][x];
    }
    return ProbabilityMeasure(group_, std::move(out));
  }

  // Linear extension to complex measures.
  std::vector<Complex> apply(const std::vector<Complex>& m) const {
    if (static_cast<int>(m.size()) != group_.order)
      throw DimensionMismatchError("measure length does not match group order");
    std::vector<Complex> out(group_.order, Complex(0.0, 0.0));
    for (int w = 0; w < group_.order; ++w)
      for (int x = 0; x < group_.order; ++x) out[x] += m[w] * rows_[w][x];
    return out;
  }

 private:
  CyclicGroup group_;
  std::vector<std::vector<double>> rows_;
};

// A confidence kernel acts on measures as W(m)(X) = sum_w nu_w(X) m(w);
// its matrix is just the row table of the kernel.
inline CoarseKernel kernel_from_confidence(const ConfidenceKernel& nu) {
  std::vector<std::vector<double>> rows;
  rows.reserve(nu.order());
  for (int w = 0; w < nu.order(); ++w) rows.push_back(nu.row(w).weights());
  return CoarseKernel(nu.group(), std::move(rows));
}

// Coarse-graining kernel from the canonical sharp observable to e2:
// matrix[w][x] = tr[T_w e2({x})] with T_w the normalized block state. The
// factorization V_e2 = W o V_P is then verified as an operator identity;
// failure means e2 is not a coarse-graining of the canonical observable.
inline CoarseKernel solve_coarsening(const Observable& e2, const SharpObservable& sharp,
                                     double tol = 1e-10) {
  if (e2.group() != sharp.group())
    throw GroupMismatchError("coarse-graining needs a common group");
  if (e2.dim() != sharp.dim())
    throw DimensionMismatchError("observable dimensions differ");
  detail::require_canonical(sharp, "solve_coarsening");
  const int n = e2.order();
  const int mult = sharp.dim() / n;

  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (int w = 0; w < n; ++w)
    for (int x = 0; x < n; ++x) {
      Complex t = 0.0;
      for (int j = 0; j < mult; ++j) t += e2.atom(x)(w * mult + j, w * mult + j);
      rows[w][x] = std::max(t.real() / mult, 0.0);
    }

  // tr[T e2({x})] = tr[T sum_w rows[w][x] P({w})] must hold for every state T,
  // which is the operator identity below.
  for (int x = 0; x < n; ++x) {
    CMat rebuilt(sharp.dim());
    for (int w = 0; w < n; ++w)
      if (rows[w][x] != 0.0) rebuilt += rows[w][x] * sharp.atom(w);
    if (max_abs_diff(rebuilt, e2.atom(x)) > tol)
      throw FactorizationFailedError(
          "observable is not a coarse-graining of the canonical sharp observable");
  }
  return CoarseKernel(e2.group(), std::move(rows));
}

// Circulant test: matrix[w+k][x+k] = matrix[w][x] for all shifts k.
inline bool translation_commutes(const CoarseKernel& kernel, double tol = 1e-10) {
  const int n = kernel.order();
  for (int k = 1; k < n; ++k)
    for (int w = 0; w < n; ++w)
      for (int x = 0; x < n; ++x)
        if (std::abs(kernel.entry((w + k) % n, (x + k) % n) - kernel.entry(w, x)) > tol)
          return false;
  return true;
}

// For a translation-commuting kernel, W acts by convolution with its first
// row; that row is the smearing measure.
inline ProbabilityMeasure extract_smearing_measure(const CoarseKernel& kernel) {
  if (!translation_commutes(kernel, 1e-10))
    throw NotCovariantError("kernel does not commute with translations");
  return ProbabilityMeasure(kernel.group(), kernel.rows().front());
}

}  // namespace fuzzobs
