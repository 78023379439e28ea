#pragma once

#include <functional>

#include "cartan/types.hpp"

namespace cartan {

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_cells = 4000;
};

struct QuadResult {
  Vector value;
  double error = 0.0;  // sum of |Kronrod - Gauss| over the final cells
  int cells = 0;
  int evaluations = 0;
  bool converged = false;
};

using Integrand1D = std::function<Vector(double)>;
using Integrand2D = std::function<Vector(double, double)>;

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b].
QuadResult integrate_1d(const Integrand1D& f, double a, double b, const QuadOptions& opts = {});

/// Globally adaptive tensor-product Gauss-Kronrod 7/15 on [s0,s1] x [t0,t1].
/// The cell with the largest error estimate is bisected along the direction
/// whose one-dimensional Kronrod/Gauss gap is larger.
QuadResult integrate_2d(const Integrand2D& f, double s0, double s1, double t0, double t1,
                        const QuadOptions& opts = {});

}  // namespace cartan
