#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fuzzobs/complex_matrix.hpp"
#include "fuzzobs/errors.hpp"
#include "fuzzobs/hermitian_eig.hpp"

namespace fuzzobs::torus {

inline constexpr double kEntryTol = 1e-12;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kToeplitzTol = 1e-12;
inline constexpr double kRankTol = 1e-8;

// Coefficient matrix (c_{n,m}), |n|,|m| <= K, of a T-covariant localization
// observable truncated to the window of the first 2K+1 basis modes.
class CMatrix {
 public:
  CMatrix(int half_width, std::vector<Complex> entries)
      : k_(half_width), entries_(std::move(entries)) {
    if (k_ < 1) throw InvalidOrderError("half-width must be at least 1");
    const std::size_t side = static_cast<std::size_t>(2 * k_ + 1);
    if (entries_.size() != side * side)
      throw InvariantError("entry count does not match the window");
    for (const Complex& z : entries_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvariantError("coefficient matrix has non-finite entries");
  }

  explicit CMatrix(int half_width)
      : CMatrix(half_width,
                std::vector<Complex>(
                    static_cast<std::size_t>(2 * half_width + 1) * (2 * half_width + 1))) {}

  // All-ones coefficients: the canonical sharp localization.
  static CMatrix sharp(int half_width) {
    CMatrix c(half_width);
    for (int n = -half_width; n <= half_width; ++n)
      for (int m = -half_width; m <= half_width; ++m) c.at(n, m) = 1.0;
    return c;
  }

  // Identity coefficients: smearing by the Haar measure.
  static CMatrix haar(int half_width) {
    CMatrix c(half_width);
    for (int n = -half_width; n <= half_width; ++n) c.at(n, n) = 1.0;
    return c;
  }

  int half_width() const { return k_; }
  int side() const { return 2 * k_ + 1; }

  Complex at(int n, int m) const { return entries_[index(n, m)]; }
  Complex& at(int n, int m) { return entries_[index(n, m)]; }

  // Centered sub-window [-k, k]^2 as a dense matrix.
  CMat window(int k) const {
    CMat w(2 * k + 1);
    for (int n = -k; n <= k; ++n)
      for (int m = -k; m <= k; ++m) w(n + k, m + k) = at(n, m);
    return w;
  }

 private:
  std::size_t index(int n, int m) const {
    if (n < -k_ || n > k_ || m < -k_ || m > k_)
      throw IndexOutOfRangeError("coefficient index outside the window");
    return static_cast<std::size_t>(n + k_) * (2 * k_ + 1) + (m + k_);
  }

  int k_;
  std::vector<Complex> entries_;
};

struct CMatrixValidation {
  bool valid;
  std::string violated;  // empty, or the first failed condition:
                         // "diagonal", "hermitian", "bound", "psd(k=...)"
};

// Checks, in order: unit diagonal, Hermitian symmetry, |c| <= 1, and
// positive semidefiniteness of every centered sub-window.
inline CMatrixValidation validate_cmatrix(const CMatrix& c, double entry_tol = kEntryTol,
                                          double psd_tol = kPsdTol) {
  const int k = c.half_width();
  for (int n = -k; n <= k; ++n)
    if (std::abs(c.at(n, n) - Complex(1.0, 0.0)) > entry_tol)
      return {false, "diagonal"};
  for (int n = -k; n <= k; ++n)
    for (int m = n + 1; m <= k; ++m)
      if (std::abs(c.at(n, m) - std::conj(c.at(m, n))) > entry_tol)
        return {false, "hermitian"};
  for (int n = -k; n <= k; ++n)
    for (int m = -k; m <= k; ++m)
      if (std::abs(c.at(n, m)) > 1.0 + entry_tol) return {false, "bound"};
  for (int w = 0; w <= k; ++w) {
    const EigenDecomposition eig = hermitian_eig(c.window(w), 1e-9);
    if (eig.eigenvalues.front() < -psd_tol)
      return {false, "psd(k=" + std::to_string(w) + ")"};
  }
  return {true, ""};
}

struct ToeplitzCheck {
  bool toeplitz;
  // First violating triple (n, m, k), scanning n, then m, then k >= 1 in
  // ascending order: c(n+k, m+k) != c(n, m).
  int n = 0, m = 0, shift = 0;
};

// A coefficient matrix describes an observable commuting with the sharp
// localization exactly when it is Toeplitz on the window.
inline ToeplitzCheck commutes_with_sharp(const CMatrix& c, double tol = kToeplitzTol) {
  const int k = c.half_width();
  for (int n = -k; n <= k; ++n)
    for (int m = -k; m <= k; ++m)
      for (int s = 1; n + s <= k && m + s <= k; ++s)
        if (std::abs(c.at(n + s, m + s) - c.at(n, m)) > tol)
          return {false, n, m, s};
  return {true};
}

// Diagonal ones; off-diagonal c_{n,m} = 1 when n and m are both even, else 0.
// Valid (it is the even-lattice all-ones block plus the identity on odd
// indices) but not Toeplitz.
inline CMatrix toigo_cmatrix(int half_width) {
  if (half_width < 1) throw InvalidOrderError("half-width must be at least 1");
  CMatrix c(half_width);
  for (int n = -half_width; n <= half_width; ++n)
    for (int m = -half_width; m <= half_width; ++m) {
      if (n == m)
        c.at(n, m) = 1.0;
      else if (n % 2 == 0 && m % 2 == 0)
        c.at(n, m) = 1.0;
    }
  return c;
}

// Half-open arc [start, start + length) on the circle, angles in radians.
class Arc {
 public:
  Arc(double start, double length) : start_(normalize(start)), length_(length) {
    if (length_ < 0.0 || length_ > 2.0 * std::numbers::pi)
      throw OutOfRangeError("arc length outside [0, 2 pi]");
  }

  static Arc from_angles(double theta1, double theta2) {
    double len = std::fmod(theta2 - theta1, 2.0 * std::numbers::pi);
    if (len < 0.0) len += 2.0 * std::numbers::pi;
    return Arc(theta1, len);
  }

  static Arc full_circle() { return Arc(0.0, 2.0 * std::numbers::pi); }
  static Arc empty() { return Arc(0.0, 0.0); }

  double start() const { return start_; }
  double length() const { return length_; }
  double haar_length() const { return length_ / (2.0 * std::numbers::pi); }

 private:
  static double normalize(double t) {
    double x = std::fmod(t, 2.0 * std::numbers::pi);
    if (x < 0.0) x += 2.0 * std::numbers::pi;
    return x;
  }

  double start_;
  double length_;
};

inline std::vector<Arc> uniform_partition(int count) {
  if (count < 1) throw InvalidOrderError("partition needs at least one arc");
  std::vector<Arc> arcs;
  arcs.reserve(count);
  const double step = 2.0 * std::numbers::pi / count;
  for (int j = 0; j < count; ++j) arcs.emplace_back(j * step, step);
  return arcs;
}

// I_j(X) = (1/2pi) int_X e^{i j theta} dtheta, in the cancellation-free form
// e^{i j (start + L/2)} sin(j L / 2) / (pi j).
inline Complex arc_moment(const Arc& x, int j) {
  if (j == 0) return Complex(x.haar_length(), 0.0);
  const double half = 0.5 * x.length();
  return std::polar(std::sin(j * half) / (std::numbers::pi * j),
                    j * (x.start() + half));
}

// Truncated effect E(X): entry (n, m) = c_{n,m} I_{m-n}(X).
inline CMat arc_effect(const CMatrix& c, const Arc& x) {
  const int k = c.half_width();
  CMat e(2 * k + 1);
  for (int n = -k; n <= k; ++n)
    for (int m = -k; m <= k; ++m) e(n + k, m + k) = c.at(n, m) * arc_moment(x, m - n);
  return e;
}

// Max commutator entry over a pair of uniform arc partitions; truncation
// makes this a diagnostic rather than an exact zero test. By default the
// max runs over the whole window, where it is dominated by entries at the
// truncation edge and stays roughly K-independent. Passing a nonnegative
// center_half_width restricts the max to |n|, |m| <= center_half_width;
// on that fixed block the truncation error decays as K grows.
inline double commutator_diagnostic(const CMatrix& a, const CMatrix& b, int num_arcs,
                                    int center_half_width = -1) {
  if (a.half_width() != b.half_width())
    throw DimensionMismatchError("coefficient windows differ");
  const int k = a.half_width();
  const int cw = center_half_width < 0 ? k : std::min(center_half_width, k);
  const std::vector<Arc> arcs = uniform_partition(num_arcs);
  std::vector<CMat> ea, eb;
  ea.reserve(arcs.size());
  eb.reserve(arcs.size());
  for (const Arc& arc : arcs) {
    ea.push_back(arc_effect(a, arc));
    eb.push_back(arc_effect(b, arc));
  }
  double worst = 0.0;
  for (const CMat& p : ea)
    for (const CMat& q : eb) {
      const CMat forward = p * q;
      const CMat backward = q * p;
      for (int n = -cw; n <= cw; ++n)
        for (int m = -cw; m <= cw; ++m)
          worst = std::max(worst, std::abs(forward(n + k, m + k) - backward(n + k, m + k)));
    }
  return worst;
}

// Commutator of the observable against the sharp localization.
inline double commutator_diagnostic(const CMatrix& c, int num_arcs,
                                    int center_half_width = -1) {
  return commutator_diagnostic(CMatrix::sharp(c.half_width()), c, num_arcs, center_half_width);
}

// Positive-definite sequence Phi(k), |k| <= K, with Phi(0) = 1: the moment
// data of a unique probability measure on the circle.
class HerglotzSequence {
 public:
  HerglotzSequence(int half_width, std::vector<Complex> values)
      : k_(half_width), values_(std::move(values)) {
    if (k_ < 1) throw InvalidOrderError("half-width must be at least 1");
    if (values_.size() != static_cast<std::size_t>(2 * k_ + 1))
      throw InvariantError("value count does not match the window");
    if (std::abs(at(0) - Complex(1.0, 0.0)) > kEntryTol)
      throw InvariantError("Phi(0) must be 1");
    for (int j = 1; j <= k_; ++j)
      if (std::abs(at(-j) - std::conj(at(j))) > kEntryTol)
        throw InvariantError("Phi(-k) must conjugate Phi(k)");
    for (int j = -k_; j <= k_; ++j)
      if (std::abs(at(j)) > 1.0 + kEntryTol)
        throw InvariantError("|Phi(k)| must not exceed 1");
    const EigenDecomposition eig = hermitian_eig(toeplitz_matrix(), 1e-9);
    if (eig.eigenvalues.front() < -kPsdTol)
      throw InvariantError("sequence is not positive definite");
  }

  int half_width() const { return k_; }
  Complex at(int j) const {
    if (j < -k_ || j > k_) throw IndexOutOfRangeError("index outside the window");
    return values_[static_cast<std::size_t>(j + k_)];
  }

  // (K+1) x (K+1) matrix [Phi(n-m)], n, m = 0..K.
  CMat toeplitz_matrix() const {
    CMat t(k_ + 1);
    for (int n = 0; n <= k_; ++n)
      for (int m = 0; m <= k_; ++m) t(n, m) = at(n - m);
    return t;
  }

 private:
  int k_;
  std::vector<Complex> values_;
};

// Phi(k) = c_{k,0}; requires the Toeplitz property.
inline HerglotzSequence herglotz_sequence(const CMatrix& c) {
  const ToeplitzCheck check = commutes_with_sharp(c);
  if (!check.toeplitz)
    throw NotToeplitzError("coefficient matrix is not Toeplitz at (" +
                           std::to_string(check.n) + "," + std::to_string(check.m) +
                           ") shift " + std::to_string(check.shift));
  const int k = c.half_width();
  std::vector<Complex> values;
  values.reserve(2 * k + 1);
  for (int j = -k; j <= k; ++j) values.push_back(c.at(j, 0));
  return HerglotzSequence(k, std::move(values));
}

struct TorusAtom {
  double angle;   // in [0, 2 pi)
  double weight;  // nonnegative
};

// Probability measure on the circle: either finitely many atoms or a
// nonnegative mean-one density sampled on a uniform grid.
class TorusMeasure {
 public:
  static TorusMeasure atomic(std::vector<TorusAtom> atoms) {
    if (atoms.empty()) throw InvariantError("atomic measure needs at least one atom");
    double sum = 0.0;
    for (TorusAtom& a : atoms) {
      if (!std::isfinite(a.angle) || !std::isfinite(a.weight))
        throw InvariantError("atom data must be finite");
      if (a.weight < 0.0) {
        if (a.weight < -kEntryTol) throw InvariantError("atom weight is negative");
        a.weight = 0.0;
      }
      a.angle = std::fmod(a.angle, 2.0 * std::numbers::pi);
      if (a.angle < 0.0) a.angle += 2.0 * std::numbers::pi;
      sum += a.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvariantError("atom weights must sum to 1");
    if (std::abs(sum - 1.0) > 1e-10)
      for (TorusAtom& a : atoms) a.weight /= sum;
    TorusMeasure m;
    m.data_ = std::move(atoms);
    return m;
  }

  static TorusMeasure grid(std::vector<double> samples) {
    if (samples.size() < 2) throw InvariantError("grid measure needs at least two samples");
    double mean = 0.0;
    for (double v : samples) {
      if (!std::isfinite(v)) throw InvariantError("grid samples must be finite");
      if (v < -kPsdTol) throw InvariantError("grid sample is negative");
      mean += v;
    }
    mean /= static_cast<double>(samples.size());
    if (std::abs(mean - 1.0) > 1e-9) throw InvariantError("grid density mean must be 1");
    if (std::abs(mean - 1.0) > 1e-10)
      for (double& v : samples) v /= mean;
    TorusMeasure m;
    m.data_ = std::move(samples);
    return m;
  }

  bool is_atomic() const { return std::holds_alternative<std::vector<TorusAtom>>(data_); }
  const std::vector<TorusAtom>& atoms() const { return std::get<std::vector<TorusAtom>>(data_); }
  const std::vector<double>& samples() const { return std::get<std::vector<double>>(data_); }

 private:
  TorusMeasure() = default;
  std::variant<std::vector<TorusAtom>, std::vector<double>> data_;
};

// k-th moment int z^k drho: a finite sum for atomic measures, uniform-grid
// quadrature (periodic trapezoid) for densities.
inline Complex moment(const TorusMeasure& rho, int k) {
  Complex acc = 0.0;
  if (rho.is_atomic()) {
    for (const TorusAtom& a : rho.atoms()) acc += a.weight * std::polar(1.0, k * a.angle);
  } else {
    const int m = static_cast<int>(rho.samples().size());
    for (int j = 0; j < m; ++j) {
      // Reduce k*j mod M before forming the phase to keep angles small.
      const long long r = ((static_cast<long long>(k) * j) % m + m) % m;
      acc += rho.samples()[j] *
             std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / m);
    }
    acc /= static_cast<double>(m);
  }
  return acc;
}

// c_{n,m} = moment(n - m).
inline CMatrix cmatrix_from_measure(const TorusMeasure& rho, int half_width) {
  if (half_width < 1) throw InvalidOrderError("half-width must be at least 1");
  std::vector<Complex> moments(4 * half_width + 1);
  for (int j = -2 * half_width; j <= 2 * half_width; ++j)
    moments[j + 2 * half_width] = moment(rho, j);
  CMatrix c(half_width);
  for (int n = -half_width; n <= half_width; ++n)
    for (int m = -half_width; m <= half_width; ++m)
      c.at(n, m) = moments[(n - m) + 2 * half_width];
  return c;
}

enum class ReconstructionMode { fejer, caratheodory };

namespace detail {

// Roots of a monic-normalized complex polynomial by Durand-Kerner iteration;
// adequate for the short, simple-rooted annihilating polynomials that arise
// from rank-deficient Toeplitz moment matrices.
inline std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs) {
  // coeffs[0] w^d + ... + coeffs[d]
  const int degree = static_cast<int>(coeffs.size()) - 1;
  for (int i = degree; i >= 0; --i) coeffs[i] /= coeffs[0];
  std::vector<Complex> roots(degree);
  const Complex seed(0.4, 0.9);
  Complex p = 1.0;
  for (int i = 0; i < degree; ++i) {
    p *= seed;
    roots[i] = p;
  }
  for (int iter = 0; iter < 500; ++iter) {
    double shift = 0.0;
    for (int i = 0; i < degree; ++i) {
      Complex value = 0.0;
      for (const Complex& c : coeffs) value = value * roots[i] + c;
      Complex denom = 1.0;
      for (int j = 0; j < degree; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      const Complex delta = value / denom;
      roots[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-14) break;
  }
  return roots;
}

// Nonnegative least squares by active-set elimination on the normal
// equations; the systems here are tiny (a handful of atoms).
inline std::vector<double> nonnegative_least_squares(const std::vector<std::vector<double>>& a,
                                                     const std::vector<double>& b) {
  const int cols = static_cast<int>(a.front().size());
  const int rows = static_cast<int>(a.size());
  std::vector<int> active(cols);
  for (int i = 0; i < cols; ++i) active[i] = i;

  std::vector<double> solution(cols, 0.0);
  while (!active.empty()) {
    const int na = static_cast<int>(active.size());
    CMat gram(na);
    std::vector<double> rhs(na, 0.0);
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < na; ++j) {
        double s = 0.0;
        for (int r = 0; r < rows; ++r) s += a[r][active[i]] * a[r][active[j]];
        gram(i, j) = s;
      }
      double s = 0.0;
      for (int r = 0; r < rows; ++r) s += a[r][active[i]] * b[r];
      rhs[i] = s;
    }
    const EigenDecomposition eig = hermitian_eig(gram, 1e-8);
    const double cutoff = 1e-12 * std::max(1.0, eig.eigenvalues.back());
    std::vector<double> x(na, 0.0);
    for (int k = 0; k < na; ++k) {
      if (eig.eigenvalues[k] <= cutoff) continue;
      Complex proj = 0.0;
      for (int i = 0; i < na; ++i) proj += std::conj(eig.eigenvectors(i, k)) * rhs[i];
      proj /= eig.eigenvalues[k];
      for (int i = 0; i < na; ++i) x[i] += (eig.eigenvectors(i, k) * proj).real();
    }
    int most_negative = -1;
    double worst = -1e-12;
    for (int i = 0; i < na; ++i)
      if (x[i] < worst) {
        worst = x[i];
        most_negative = i;
      }
    if (most_negative < 0) {
      for (int i = 0; i < na; ++i) solution[active[i]] = std::max(x[i], 0.0);
      return solution;
    }
    active.erase(active.begin() + most_negative);
  }
  return solution;
}

}  // namespace detail

// Constructive half of the moment problem for a finite window.
//
// fejer: grid density sum_k (1 - |k|/(K+1)) Phi(k) e^{-ik theta}; always
// real and nonnegative (up to roundoff) for a positive-definite sequence,
// with moments damped by the triangular factor.
//
// caratheodory: when the Toeplitz moment matrix is rank deficient (rank
// r <= K), the measure is a sum of r atoms. The annihilating polynomial is
// read off the null space of the (r+1)-window, its roots give the atom
// positions, and the weights come from a nonnegative moment fit.
inline TorusMeasure herglotz_reconstruct(const HerglotzSequence& phi, ReconstructionMode mode,
                                         int grid_size = 256, double rank_tol = kRankTol) {
  const int k = phi.half_width();
  if (mode == ReconstructionMode::fejer) {
    if (grid_size < 2 * k + 2)
      throw PreconditionError("grid must resolve the window (need M >= 2K+2)");
    std::vector<double> density(grid_size, 0.0);
    for (int j = 0; j < grid_size; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / grid_size;
      Complex acc = 0.0;
      for (int s = -k; s <= k; ++s) {
        const double damp = 1.0 - std::abs(s) / static_cast<double>(k + 1);
        acc += damp * phi.at(s) * std::polar(1.0, -s * theta);
      }
      density[j] = acc.real();
    }
    return TorusMeasure::grid(std::move(density));
  }

  const CMat toeplitz = phi.toeplitz_matrix();
  const EigenDecomposition eig = hermitian_eig(toeplitz, 1e-9);
  const double cutoff = rank_tol * std::max(eig.eigenvalues.back(), 0.0);
  int rank = 0;
  for (double v : eig.eigenvalues)
    if (v > cutoff) ++rank;
  if (rank > k)
    throw RankDeficiencyError(
        "moment matrix has full numerical rank; no finite atomic representation "
        "inside the window (use the fejer mode)");

  // Null vector of the (rank+1)-window gives the annihilating polynomial
  // u_0 w^r + ... + u_r whose roots are the atom positions.
  CMat sub(rank + 1);
  for (int n = 0; n <= rank; ++n)
    for (int m = 0; m <= rank; ++m) sub(n, m) = phi.at(n - m);
  const EigenDecomposition sub_eig = hermitian_eig(sub, 1e-9);
  std::vector<Complex> coeffs(rank + 1);
  for (int i = 0; i <= rank; ++i) coeffs[i] = sub_eig.eigenvectors(i, 0);

  std::vector<Complex> roots = detail::polynomial_roots(std::move(coeffs));
  std::vector<double> angles;
  angles.reserve(roots.size());
  for (const Complex& r : roots) {
    double angle = std::arg(r);
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;
    angles.push_back(angle);
  }
  std::sort(angles.begin(), angles.end());

  // Fit weights to the full window of moments, Re/Im stacked.
  std::vector<std::vector<double>> design;
  std::vector<double> target;
  for (int j = -k; j <= k; ++j) {
    std::vector<double> re_row(angles.size()), im_row(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i) {
      re_row[i] = std::cos(j * angles[i]);
      im_row[i] = std::sin(j * angles[i]);
    }
    design.push_back(std::move(re_row));
    target.push_back(phi.at(j).real());
    design.push_back(std::move(im_row));
    target.push_back(phi.at(j).imag());
  }
  const std::vector<double> weights = detail::nonnegative_least_squares(design, target);

  std::vector<TorusAtom> atoms;
  for (std::size_t i = 0; i < angles.size(); ++i)
    atoms.push_back(TorusAtom{angles[i], weights[i]});
  return TorusMeasure::atomic(std::move(atoms));
}

// Density 1 + cos(theta) on a uniform grid: the circle version of the
// band-limited triangular-transform example, with moments 1, 1/2, 0, 0, ...
inline TorusMeasure triangle_density_fixture(int grid_size) {
  if (grid_size < 64) throw PreconditionError("fixture grid must have at least 64 points");
  std::vector<double> density(grid_size, 0.0);
  for (int j = 0; j < grid_size; ++j)
    density[j] = 1.0 + std::cos(2.0 * std::numbers::pi * j / grid_size);
  return TorusMeasure::grid(std::move(density));
}

}  // namespace fuzzobs::torus
