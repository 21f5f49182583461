#pragma once

#include <algorithm>
#include <cmath>

#include "fuzzobs/complex_matrix.hpp"
#include "fuzzobs/errors.hpp"
#include "fuzzobs/observable.hpp"

namespace fuzzobs {

// Two-valued spin observable measured by a beam-splitting experiment whose
// screen detection is imperfect. In the spin basis the effects are diagonal:
//   E_up = a P[up] + b P[down],   E_down = (1-a) P[up] + (1-b) P[down],
// where a and b are the detection probabilities of the two spin components
// in the upper half of the screen.
struct SGModel {
  double a;
  double b;
  CMat e_up;
  CMat e_down;
};

struct SGReport {
  bool is_sharp;
  bool has_norm_one;
  bool is_regular;
  bool is_info_equivalent;
  double norm_up;
  double norm_down;
};

inline SGModel build_sg(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
    throw OutOfRangeError("detection probabilities must lie in [0,1]");
  CMat up(2), down(2);
  up(0, 0) = a;
  up(1, 1) = b;
  down(0, 0) = 1.0 - a;
  down(1, 1) = 1.0 - b;
  return SGModel{a, b, std::move(up), std::move(down)};
}

// The model as a two-outcome observable on Z_2.
inline Observable sg_observable(const SGModel& model) {
  return Observable(CyclicGroup(2), {model.e_up, model.e_down});
}

inline SGReport analyze_sg(const SGModel& model, double tol = 1e-9) {
  const double a = model.a;
  const double b = model.b;
  SGReport r{};
  r.norm_up = std::max(a, b);
  r.norm_down = std::max(1.0 - a, 1.0 - b);

  // Sharp exactly when the effects are the two spin projections.
  const bool binary = (std::min(a, 1.0 - a) <= tol) && (std::min(b, 1.0 - b) <= tol);
  r.is_sharp = binary && std::abs(a - b) > tol;

  // Both effect norms must reach one, which singles out (1,0) and (0,1).
  r.has_norm_one = r.norm_up >= 1.0 - tol && r.norm_down >= 1.0 - tol;

  // Every effect that is neither O nor I must have spectrum on both sides
  // of 1/2; the spectra here are {a, b} and {1-a, 1-b}.
  r.is_regular = true;
  for (const auto& spectrum : {std::pair{a, b}, std::pair{1.0 - a, 1.0 - b}}) {
    const double lo = std::min(spectrum.first, spectrum.second);
    const double hi = std::max(spectrum.first, spectrum.second);
    if (hi <= tol) continue;        // effect is O
    if (lo >= 1.0 - tol) continue;  // effect is I
    if (!(lo < 0.5 && hi > 0.5)) r.is_regular = false;
  }

  // The outcome statistics b + (a-b)|c_up|^2 determine |c_up|^2 exactly
  // when a differs from b.
  r.is_info_equivalent = std::abs(a - b) > tol;
  return r;
}

}  // namespace fuzzobs
