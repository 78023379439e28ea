#pragma once

#include "cartan/types.hpp"

namespace cartan {

/// Central-difference settings. Every derivative is taken at `step` and
/// `step / 2`; the pair is Richardson-extrapolated and their gap is checked
/// against `richardson_tol * max(1, |derivative|)`.
struct FiniteDifference {
  double step = 1e-5;
  double richardson_tol = 1e-6;
};

struct DerivativeEstimate {
  Vector value;        // Richardson-extrapolated, O(h^4)
  Vector coarse;       // central difference at h
  Vector fine;         // central difference at h/2
  double gap = 0.0;    // |coarse - fine|
};

/// Derivative of `f` at `x` along `direction` (not normalized: the result is
/// linear in `direction`). Does not throw on Richardson disagreement.
DerivativeEstimate estimate_directional_derivative(const VectorField& f, const Vector& x,
                                                   const Vector& direction,
                                                   const FiniteDifference& fd);

/// As above, but throws StepSizeError when the h/(h/2) estimates disagree.
Vector directional_derivative(const VectorField& f, const Vector& x, const Vector& direction,
                              const FiniteDifference& fd);

/// Lie bracket [V, W] = DW[V] - DV[W] of two vector fields on R^d.
Vector vector_field_bracket(const VectorField& v, const VectorField& w, const Vector& x,
                            const FiniteDifference& fd);

}  // namespace cartan
