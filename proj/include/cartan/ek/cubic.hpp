#pragma once

#include <array>
#include <vector>

#include "cartan/types.hpp"

namespace cartan::ek {

/// Leaf invariants of the extremal Kahler algebroid at (K, X, Y, U).
double invariant_i1(const Vector& x);
double invariant_i2(const Vector& x);
Vector invariant_i1_gradient(const Vector& x);
Vector invariant_i2_gradient(const Vector& x);

struct Root {
  double value = 0.0;
  int multiplicity = 1;
};

/// p(K) = -K^3/12 + c1 K + c2 on the level set {I1 = c1, I2 = c2}.
struct CubicProfile {
  double c1 = 0.0;
  double c2 = 0.0;
  std::array<double, 4> coeffs{};  // constant term first
  double delta = 0.0;              // (16 c1^3 - 9 c2^2) / 48
  /// Sign of delta after merging roots closer than 1e-8 * scale (0 when degenerate).
  int delta_sign = 0;
  std::vector<Root> roots;  // real roots, ascending

  double p(double k) const;
  double dp(double k) const;
  /// Largest |root| floored at 1; the length scale used by tolerances.
  double scale() const;
  bool triple_root() const { return roots.size() == 1 && roots[0].multiplicity == 3; }
};

/// Real roots by the trigonometric (three real) or Cardano (one real) formula,
/// Newton-polished. A pair whose separation, estimated from the critical value
/// p(+-2 sqrt(c1)), is below 1e-8 * scale is reported as one double root.
CubicProfile cubic_profile(double c1, double c2);

double discriminant(double c1, double c2);

}  // namespace cartan::ek
