#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "fuzzobs/complex_matrix.hpp"
#include "fuzzobs/errors.hpp"

namespace fuzzobs {

inline constexpr double kMeasureSumTol = 1e-12;
inline constexpr double kMeasureRenormTol = 1e-9;
inline constexpr int kMaxTransformOrder = 4096;

// The finite cyclic group Z_N, written additively.
struct CyclicGroup {
  explicit CyclicGroup(int n) : order(n) {
    if (n < 2) throw InvalidOrderError("cyclic group order must be at least 2");
  }
  int order;

  friend bool operator==(const CyclicGroup& a, const CyclicGroup& b) {
    return a.order == b.order;
  }
  friend bool operator!=(const CyclicGroup& a, const CyclicGroup& b) { return !(a == b); }
};

// Probability measure on Z_N: nonnegative weights summing to one. Small
// normalization defects (up to 1e-9) are repaired on construction; anything
// larger is rejected.
class ProbabilityMeasure {
 public:
  ProbabilityMeasure(CyclicGroup group, std::vector<double> weights)
      : group_(group), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != group_.order)
      throw InvariantError("weight count does not match group order");
    double sum = 0.0;
    for (double& w : weights_) {
      if (!std::isfinite(w)) throw InvariantError("measure weight is not finite");
      if (w < 0.0) {
        if (w < -kMeasureSumTol) throw InvariantError("measure weight is negative");
        w = 0.0;
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > kMeasureRenormTol)
      throw InvariantError("measure weights sum to " + std::to_string(sum) + ", not 1");
    // Repair defects beyond the invariant; weights already summing to one
    // within 1e-12 are kept bit-exact.
    if (std::abs(sum - 1.0) > kMeasureSumTol)
      for (double& w : weights_) w /= sum;
  }

  CyclicGroup group() const { return group_; }
  int order() const { return group_.order; }
  const std::vector<double>& weights() const { return weights_; }

  double at(int omega) const {
    if (omega < 0 || omega >= group_.order)
      throw IndexOutOfRangeError("group element out of range");
    return weights_[omega];
  }

 private:
  CyclicGroup group_;
  std::vector<double> weights_;
};

// Point mass at omega.
inline ProbabilityMeasure dirac(CyclicGroup group, int omega) {
  if (omega < 0 || omega >= group.order)
    throw IndexOutOfRangeError("dirac point out of range");
  std::vector<double> w(group.order, 0.0);
  w[omega] = 1.0;
  return ProbabilityMeasure(group, std::move(w));
}

// Normalized counting (Haar) measure.
inline ProbabilityMeasure uniform_measure(CyclicGroup group) {
  return ProbabilityMeasure(group, std::vector<double>(group.order, 1.0 / group.order));
}

inline ProbabilityMeasure convolve(const ProbabilityMeasure& mu, const ProbabilityMeasure& rho) {
  if (mu.group() != rho.group()) throw GroupMismatchError("convolution needs a common group");
  const int n = mu.order();
  std::vector<double> out(n, 0.0);
  for (int y = 0; y < n; ++y) {
    const double my = mu.weights()[y];
    if (my == 0.0) continue;
    for (int x = 0; x < n; ++x) out[x] += my * rho.weights()[(x - y + n) % n];
  }
  return ProbabilityMeasure(mu.group(), std::move(out));
}

inline ProbabilityMeasure translate(const ProbabilityMeasure& rho, int omega) {
  const int n = rho.order();
  if (omega < 0 || omega >= n) throw IndexOutOfRangeError("translation amount out of range");
  std::vector<double> out(n, 0.0);
  for (int x = 0; x < n; ++x) out[x] = rho.weights()[(x - omega + n) % n];
  return ProbabilityMeasure(rho.group(), std::move(out));
}

// Fourier(-Stieltjes) data indexed by the characters of Z_N.
struct Spectrum {
  std::vector<Complex> values;

  double min_modulus() const {
    double m = std::abs(values.front());
    for (const Complex& z : values) m = std::min(m, std::abs(z));
    return m;
  }
};

// DFT of the weight vector: values[xi] = sum_w rho(w) exp(-2 pi i w xi / N).
// Direct O(N^2) summation; the product w*xi is reduced mod N before the
// phase is formed so character values stay accurate for large N.
inline Spectrum fourier(const ProbabilityMeasure& rho) {
  const int n = rho.order();
  if (n > kMaxTransformOrder) throw TooLargeError("group order exceeds the transform cap");
  Spectrum s;
  s.values.resize(n);
  const double step = -2.0 * std::numbers::pi / n;
  for (int xi = 0; xi < n; ++xi) {
    Complex acc = 0.0;
    for (int w = 0; w < n; ++w) {
      const double weight = rho.weights()[w];
      if (weight == 0.0) continue;
      const std::int64_t k = (static_cast<std::int64_t>(w) * xi) % n;
      acc += weight * std::polar(1.0, step * static_cast<double>(k));
    }
    s.values[xi] = acc;
  }
  return s;
}

// Inverse DFT back to weights (real part; imaginary parts cancel for
// spectra of real measures).
inline std::vector<double> inverse_fourier(const Spectrum& s) {
  const int n = static_cast<int>(s.values.size());
  std::vector<double> out(n, 0.0);
  const double step = 2.0 * std::numbers::pi / n;
  for (int w = 0; w < n; ++w) {
    Complex acc = 0.0;
    for (int xi = 0; xi < n; ++xi) {
      const std::int64_t k = (static_cast<std::int64_t>(w) * xi) % n;
      acc += s.values[xi] * std::polar(1.0, step * static_cast<double>(k));
    }
    out[w] = acc.real() / n;
  }
  return out;
}

inline std::vector<int> support(const ProbabilityMeasure& rho, double tol = 1e-12) {
  std::vector<int> out;
  for (int w = 0; w < rho.order(); ++w)
    if (rho.weights()[w] > tol) out.push_back(w);
  return out;
}

// Total-variation distance (1/2) sum |p - q|.
inline double total_variation(const ProbabilityMeasure& p, const ProbabilityMeasure& q) {
  if (p.group() != q.group()) throw GroupMismatchError("total variation needs a common group");
  double s = 0.0;
  for (int w = 0; w < p.order(); ++w) s += std::abs(p.weights()[w] - q.weights()[w]);
  return 0.5 * s;
}

}  // namespace fuzzobs
