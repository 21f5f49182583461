#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzobs/complex_matrix.hpp"
#include "fuzzobs/cyclic_measure.hpp"
#include "fuzzobs/errors.hpp"
#include "fuzzobs/hermitian_eig.hpp"

namespace fuzzobs {

inline constexpr double kObservableSumTol = 1e-9;
inline constexpr double kRepresentationTol = 1e-10;
inline constexpr int kDefaultBruteForceCap = 16;

// Unit vector in C^dim.
class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amplitudes) : amp_(std::move(amplitudes)) {
    double norm2 = 0.0;
    for (const Complex& z : amp_) norm2 += std::norm(z);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
      throw InvariantError("state vector is not unit norm");
  }

  static StateVector normalized(std::vector<Complex> amplitudes) {
    double norm2 = 0.0;
    for (const Complex& z : amplitudes) norm2 += std::norm(z);
    if (norm2 <= 0.0) throw InvariantError("cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (Complex& z : amplitudes) z *= inv;
    return StateVector(std::move(amplitudes));
  }

  int dim() const { return static_cast<int>(amp_.size()); }
  const std::vector<Complex>& amplitudes() const { return amp_; }
  Complex operator[](int i) const { return amp_[i]; }

 private:
  std::vector<Complex> amp_;
};

// Observable with outcomes in Z_N: one effect atom per outcome, atoms
// summing to the identity. E(X) for a subset X is the sum of its atoms.
class Observable {
 public:
  Observable(CyclicGroup group, std::vector<CMat> atoms)
      : group_(group), atoms_(std::move(atoms)) {
    if (static_cast<int>(atoms_.size()) != group_.order)
      throw InvariantError("atom count does not match group order");
    dim_ = atoms_.front().dim();
    CMat sum(dim_);
    for (int w = 0; w < group_.order; ++w) {
      if (atoms_[w].dim() != dim_) throw InvariantError("atom dimensions differ");
      if (!is_effect(atoms_[w], kEffectTol))
        throw InvariantError("atom " + std::to_string(w) + " is not an effect");
      sum += atoms_[w];
    }
    if (max_abs_diff(sum, CMat::identity(dim_)) > kObservableSumTol)
      throw InvariantError("atoms do not sum to the identity");
  }

  CyclicGroup group() const { return group_; }
  int order() const { return group_.order; }
  int dim() const { return dim_; }
  const CMat& atom(int w) const {
    if (w < 0 || w >= group_.order) throw IndexOutOfRangeError("outcome out of range");
    return atoms_[w];
  }

  // E(X) for X given as a bitmask over {0,...,N-1}.
  CMat effect(std::uint32_t subset) const {
    if (group_.order < 32 && subset >= (std::uint32_t{1} << group_.order))
      throw IndexOutOfRangeError("subset mask out of range");
    CMat e(dim_);
    for (int w = 0; w < group_.order; ++w)
      if (subset & (std::uint32_t{1} << w)) e += atoms_[w];
    return e;
  }

 private:
  CyclicGroup group_;
  int dim_ = 0;
  std::vector<CMat> atoms_;
};

inline std::vector<int> subset_elements(std::uint32_t mask, int order) {
  std::vector<int> out;
  for (int w = 0; w < order; ++w)
    if (mask & (std::uint32_t{1} << w)) out.push_back(w);
  return out;
}

// Observable whose atoms are mutually orthogonal projections.
class SharpObservable {
 public:
  explicit SharpObservable(Observable obs) : obs_(std::move(obs)) {
    const int n = obs_.order();
    for (int w = 0; w < n; ++w)
      if (!is_projection(obs_.atom(w), kProjectionTol))
        throw InvariantError("atom " + std::to_string(w) + " is not a projection");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if ((obs_.atom(i) * obs_.atom(j)).max_abs() > kProjectionTol)
          throw InvariantError("atoms " + std::to_string(i) + " and " + std::to_string(j) +
                               " are not orthogonal");
  }

  const Observable& observable() const { return obs_; }
  CyclicGroup group() const { return obs_.group(); }
  int order() const { return obs_.order(); }
  int dim() const { return obs_.dim(); }
  const CMat& atom(int w) const { return obs_.atom(w); }
  CMat effect(std::uint32_t subset) const { return obs_.effect(subset); }

 private:
  Observable obs_;
};

// Unitary representation of Z_N: U(0) = I and U(g)U(h) = U(g+h mod N).
class Representation {
 public:
  Representation(CyclicGroup group, std::vector<CMat> matrices)
      : group_(group), mats_(std::move(matrices)) {
    if (static_cast<int>(mats_.size()) != group_.order)
      throw InvariantError("matrix count does not match group order");
    dim_ = mats_.front().dim();
    const CMat id = CMat::identity(dim_);
    if (max_abs_diff(mats_[0], id) > kRepresentationTol)
      throw InvariantError("U(0) is not the identity");
    for (int g = 0; g < group_.order; ++g) {
      if (mats_[g].dim() != dim_) throw InvariantError("representation dimensions differ");
      if (max_abs_diff(mats_[g].adjoint() * mats_[g], id) > kRepresentationTol)
        throw InvariantError("U(" + std::to_string(g) + ") is not unitary");
    }
    for (int g = 0; g < group_.order; ++g)
      for (int h = 0; h < group_.order; ++h)
        if (max_abs_diff(mats_[g] * mats_[h], mats_[(g + h) % group_.order]) >
            kRepresentationTol)
          throw InvariantError("representation is not a homomorphism");
  }

  CyclicGroup group() const { return group_; }
  int order() const { return group_.order; }
  int dim() const { return dim_; }
  const CMat& operator()(int g) const {
    if (g < 0 || g >= group_.order) throw IndexOutOfRangeError("group element out of range");
    return mats_[g];
  }

 private:
  CyclicGroup group_;
  int dim_ = 0;
  std::vector<CMat> mats_;
};

// Row-stochastic family of measures: row w is the confidence measure nu_w.
class ConfidenceKernel {
 public:
  ConfidenceKernel(CyclicGroup group, std::vector<std::vector<double>> rows) : group_(group) {
    if (static_cast<int>(rows.size()) != group_.order)
      throw InvariantError("kernel row count does not match group order");
    rows_.reserve(rows.size());
    for (auto& r : rows) rows_.emplace_back(group_, std::move(r));
  }

  static ConfidenceKernel identity(CyclicGroup group) {
    std::vector<std::vector<double>> rows(group.order, std::vector<double>(group.order, 0.0));
    for (int w = 0; w < group.order; ++w) rows[w][w] = 1.0;
    return ConfidenceKernel(group, std::move(rows));
  }

  static ConfidenceKernel uniform_rows(CyclicGroup group) {
    std::vector<std::vector<double>> rows(
        group.order, std::vector<double>(group.order, 1.0 / group.order));
    return ConfidenceKernel(group, std::move(rows));
  }

  // Rows nu_w = translate(rho, w): the covariant kernel of a smearing measure.
  static ConfidenceKernel from_translates(const ProbabilityMeasure& rho) {
    std::vector<std::vector<double>> rows;
    rows.reserve(rho.order());
    for (int w = 0; w < rho.order(); ++w) rows.push_back(translate(rho, w).weights());
    return ConfidenceKernel(rho.group(), std::move(rows));
  }

  CyclicGroup group() const { return group_; }
  int order() const { return group_.order; }
  const ProbabilityMeasure& row(int w) const {
    if (w < 0 || w >= group_.order) throw IndexOutOfRangeError("kernel row out of range");
    return rows_[w];
  }

 private:
  CyclicGroup group_;
  std::vector<ProbabilityMeasure> rows_;
};

struct CanonicalSystem {
  SharpObservable sharp;
  Representation shift;
  int multiplicity;
};

// The canonical pair on C^(N*multiplicity): the sharp observable projects
// onto coordinate blocks, the representation cyclically shifts the blocks,
// and U(g) P(X) U(g)^dagger = P(X+g) holds exactly.
inline CanonicalSystem canonical_system(int n, int multiplicity = 1) {
  if (n < 2) throw InvalidOrderError("group order must be at least 2");
  if (multiplicity < 1) throw InvalidOrderError("multiplicity must be at least 1");
  const CyclicGroup group(n);
  const int dim = n * multiplicity;

  std::vector<CMat> atoms;
  atoms.reserve(n);
  for (int w = 0; w < n; ++w) {
    CMat p(dim);
    for (int j = 0; j < multiplicity; ++j) p(w * multiplicity + j, w * multiplicity + j) = 1.0;
    atoms.push_back(std::move(p));
  }

  std::vector<CMat> shifts;
  shifts.reserve(n);
  for (int g = 0; g < n; ++g) {
    CMat u(dim);
    for (int w = 0; w < n; ++w)
      for (int j = 0; j < multiplicity; ++j)
        u(((w + g) % n) * multiplicity + j, w * multiplicity + j) = 1.0;
    shifts.push_back(std::move(u));
  }

  return CanonicalSystem{SharpObservable(Observable(group, std::move(atoms))),
                         Representation(group, std::move(shifts)), multiplicity};
}

// Smearing by a confidence kernel: atom'[x] = sum_w nu_w({x}) atom[w].
inline Observable smear(const Observable& base, const ConfidenceKernel& kernel) {
  if (base.group() != kernel.group()) throw GroupMismatchError("smear needs a common group");
  const int n = base.order();
  std::vector<CMat> atoms(n, CMat(base.dim()));
  for (int w = 0; w < n; ++w) {
    const std::vector<double>& row = kernel.row(w).weights();
    for (int x = 0; x < n; ++x) {
      if (row[x] == 0.0) continue;
      atoms[x] += row[x] * base.atom(w);
    }
  }
  return Observable(base.group(), std::move(atoms));
}

inline Observable smear(const SharpObservable& base, const ConfidenceKernel& kernel) {
  return smear(base.observable(), kernel);
}

// Covariant smearing: atom[x] = sum_w rho(x-w) P({w}). Equals smearing by
// the kernel whose rows are the translates of rho.
inline Observable smear_by_measure(const SharpObservable& base, const ProbabilityMeasure& rho) {
  if (base.group() != rho.group())
    throw GroupMismatchError("smear_by_measure needs a common group");
  const int n = base.order();
  std::vector<CMat> atoms(n, CMat(base.dim()));
  for (int x = 0; x < n; ++x)
    for (int w = 0; w < n; ++w) {
      const double weight = rho.weights()[(x - w + n) % n];
      if (weight == 0.0) continue;
      atoms[x] += weight * base.atom(w);
    }
  return Observable(base.group(), std::move(atoms));
}

// P(X~) = sum_w membership(w) P({w}) for a fuzzy event given by membership
// degrees in [0,1].
inline CMat fuzzy_event_operator(const SharpObservable& base,
                                 const std::vector<double>& membership) {
  if (static_cast<int>(membership.size()) != base.order())
    throw DimensionMismatchError("membership size does not match group order");
  CMat out(base.dim());
  for (int w = 0; w < base.order(); ++w) {
    const double m = membership[w];
    if (m < -1e-12 || m > 1.0 + 1e-12)
      throw OutOfRangeError("membership degree outside [0,1]");
    if (m == 0.0) continue;
    out += m * base.atom(w);
  }
  return out;
}

struct StandardModel {
  std::vector<ProbabilityMeasure> rows;  // one outcome distribution per eigenvalue of A
  Observable measured;                   // observable on the system space
};

namespace detail {

inline std::vector<Complex> evolve_probe(const EigenDecomposition& eig,
                                         const std::vector<Complex>& probe, double angle) {
  const int n = static_cast<int>(probe.size());
  std::vector<Complex> in_basis(n, Complex(0.0, 0.0));
  for (int k = 0; k < n; ++k) {
    Complex s = 0.0;
    for (int i = 0; i < n; ++i) s += std::conj(eig.eigenvectors(i, k)) * probe[i];
    in_basis[k] = s * std::polar(1.0, angle * eig.eigenvalues[k]);
  }
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (int k = 0; k < n; ++k) s += eig.eigenvectors(i, k) * in_basis[k];
    out[i] = s;
  }
  return out;
}

}  // namespace detail

// Measured observable of the standard measurement model: the system couples
// to a probe through exp(i lambda A (x) B) and the pointer is read out.
// spectrum_a lists the eigenvalues of the (diagonal) system observable A.
inline StandardModel standard_model_observable(const std::vector<double>& spectrum_a,
                                               const SharpObservable& pointer,
                                               const CMat& coupling, const StateVector& probe,
                                               double lambda) {
  if (spectrum_a.empty()) throw DimensionMismatchError("system spectrum is empty");
  if (coupling.dim() != pointer.dim() || probe.dim() != pointer.dim())
    throw DimensionMismatchError("probe-space dimensions do not match");
  if (hermitian_defect(coupling) > kHermitianTol)
    throw NotHermitianError("coupling operator is not Hermitian");

  const EigenDecomposition eig = hermitian_eig(coupling);
  const int d = static_cast<int>(spectrum_a.size());
  const int n = pointer.order();

  std::vector<ProbabilityMeasure> rows;
  rows.reserve(d);
  std::vector<CMat> atoms(n, CMat(d));
  for (int j = 0; j < d; ++j) {
    const std::vector<Complex> evolved =
        detail::evolve_probe(eig, probe.amplitudes(), lambda * spectrum_a[j]);
    std::vector<double> w(n, 0.0);
    for (int x = 0; x < n; ++x) {
      const double p = inner(evolved, pointer.atom(x) * evolved).real();
      w[x] = std::max(p, 0.0);
    }
    rows.emplace_back(pointer.group(), w);
    for (int x = 0; x < n; ++x) atoms[x](j, j) += rows.back().weights()[x];
  }
  return StandardModel{std::move(rows),
                       Observable(pointer.group(), std::move(atoms))};
}

struct CovarianceReport {
  bool covariant;
  double deviation;  // max over g, w of ||U(g) atom(w) U(g)^dagger - atom(w+g)||_max
};

inline CovarianceReport check_covariance(const Observable& obs, const Representation& rep,
                                         double tol = 1e-12) {
  if (obs.group() != rep.group()) throw GroupMismatchError("covariance needs a common group");
  if (obs.dim() != rep.dim()) throw DimensionMismatchError("observable/representation dims differ");
  const int n = obs.order();
  double deviation = 0.0;
  for (int g = 0; g < n; ++g) {
    const CMat& u = rep(g);
    const CMat u_dag = u.adjoint();
    for (int w = 0; w < n; ++w) {
      const CMat moved = u * obs.atom(w) * u_dag;
      deviation = std::max(deviation, max_abs_diff(moved, obs.atom((w + g) % n)));
    }
  }
  return CovarianceReport{deviation <= tol, deviation};
}

// Outcome distribution p_psi(w) = <psi| atom(w) |psi>.
inline ProbabilityMeasure distribution(const Observable& obs, const StateVector& psi) {
  if (obs.dim() != psi.dim()) throw DimensionMismatchError("state dimension does not match");
  std::vector<double> w(obs.order(), 0.0);
  for (int x = 0; x < obs.order(); ++x) {
    const double p = inner(psi.amplitudes(), obs.atom(x) * psi.amplitudes()).real();
    if (p < -2.0 * kEffectTol) throw InvariantError("negative outcome probability");
    w[x] = std::max(p, 0.0);
  }
  return ProbabilityMeasure(obs.group(), std::move(w));
}

struct NormOneReport {
  bool holds;
  std::uint32_t worst_set;  // argmin of ||E(X)|| over nonzero E(X), smallest mask on ties
  double worst_norm;
};

// Brute force over all 2^N subsets: every nonzero effect must have norm
// within tol of one.
inline NormOneReport has_norm_one_property(const Observable& obs, double tol = kEffectTol,
                                           int max_order = kDefaultBruteForceCap) {
  const int n = obs.order();
  if (n > max_order)
    throw TooLargeError("subset brute force capped at N <= " + std::to_string(max_order));
  NormOneReport report{true, 0, 1.0};
  bool first = true;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    const double norm = operator_norm(obs.effect(mask));
    if (norm <= tol) continue;  // E(X) = O
    if (norm < 1.0 - tol) report.holds = false;
    if (first || norm < report.worst_norm) {
      report.worst_set = mask;
      report.worst_norm = norm;
      first = false;
    }
  }
  return report;
}

struct RegularityReport {
  bool regular;
  std::optional<std::uint32_t> witness;  // first subset whose spectrum fails to straddle 1/2
  double witness_min_eig = 0.0;
  double witness_max_eig = 0.0;
};

// E is regular when the spectrum of every effect that is neither O nor I
// extends both below and above 1/2.
inline RegularityReport is_regular(const Observable& obs, double tol = kEffectTol,
                                   int max_order = kDefaultBruteForceCap) {
  const int n = obs.order();
  if (n > max_order)
    throw TooLargeError("subset brute force capped at N <= " + std::to_string(max_order));
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    const EigenDecomposition eig = hermitian_eig(obs.effect(mask));
    const double lo = eig.eigenvalues.front();
    const double hi = eig.eigenvalues.back();
    if (hi <= tol) continue;        // E(X) = O
    if (lo >= 1.0 - tol) continue;  // E(X) = I
    if (!(lo < 0.5 && hi > 0.5)) return RegularityReport{false, mask, lo, hi};
  }
  return RegularityReport{true, std::nullopt};
}

struct EquivalenceDecision {
  bool equivalent;
  std::vector<int> zero_characters;  // { xi : |rho_hat(xi)| <= tol }
  double min_modulus;
};

// The smearing by rho preserves the state distinction power of the sharp
// observable exactly when the transform of rho vanishes nowhere.
inline EquivalenceDecision informationally_equivalent(const ProbabilityMeasure& rho,
                                                      double tol = 1e-9) {
  const Spectrum s = fourier(rho);
  EquivalenceDecision d;
  d.min_modulus = s.min_modulus();
  for (int xi = 0; xi < rho.order(); ++xi)
    if (std::abs(s.values[xi]) <= tol) d.zero_characters.push_back(xi);
  d.equivalent = d.zero_characters.empty();
  return d;
}

struct WitnessPair {
  StateVector psi;  // distribution (1 + cos(2 pi w xi0 / N)) / N under the sharp observable
  StateVector phi;  // uniform distribution under the sharp observable
};

namespace detail {

inline void require_canonical(const SharpObservable& sharp, const char* who) {
  const int n = sharp.order();
  if (sharp.dim() % n != 0)
    throw PreconditionError(std::string(who) + " requires the canonical block layout");
  const int mult = sharp.dim() / n;
  for (int w = 0; w < n; ++w) {
    CMat block(sharp.dim());
    for (int j = 0; j < mult; ++j) block(w * mult + j, w * mult + j) = 1.0;
    if (max_abs_diff(sharp.atom(w), block) > 1e-12)
      throw PreconditionError(std::string(who) + " requires the canonical sharp observable");
  }
}

}  // namespace detail

// States that the smeared observable cannot tell apart although the sharp
// one can; valid whenever the transform of rho vanishes at zero_character.
// Both states put their multiplicity-space amplitude on the first basis
// vector, making the construction deterministic.
inline WitnessPair inequivalence_witness(const SharpObservable& sharp,
                                         const ProbabilityMeasure& rho, int zero_character) {
  if (sharp.group() != rho.group())
    throw GroupMismatchError("witness construction needs a common group");
  detail::require_canonical(sharp, "inequivalence_witness");
  const int n = rho.order();
  if (zero_character <= 0 || zero_character >= n)
    throw NonVanishingTransformError("character must be a nonzero group character");
  const Spectrum s = fourier(rho);
  if (std::abs(s.values[zero_character]) > 1e-12)
    throw NonVanishingTransformError("transform of rho does not vanish at the character");

  const int mult = sharp.dim() / n;
  std::vector<Complex> psi(sharp.dim(), Complex(0.0, 0.0));
  std::vector<Complex> phi(sharp.dim(), Complex(0.0, 0.0));
  for (int w = 0; w < n; ++w) {
    const double f1 =
        (1.0 + std::cos(2.0 * std::numbers::pi * w * zero_character / n)) / n;
    psi[w * mult] = std::sqrt(std::max(f1, 0.0));
    phi[w * mult] = std::sqrt(1.0 / n);
  }
  return WitnessPair{StateVector::normalized(std::move(psi)),
                     StateVector::normalized(std::move(phi))};
}

}  // namespace fuzzobs
