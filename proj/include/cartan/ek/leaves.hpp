#pragma once

#include "cartan/ek/cubic.hpp"
#include "cartan/monodromy.hpp"

namespace cartan::ek {

/// gamma(K, theta) = (K, sqrt(p) cos theta, sqrt(p) sin theta, K^2/4 - c1) on the level set.
Vector leaf_point(const CubicProfile& profile, double k, double theta);

/// The flat section s0 = (-Y, X, U) of the isotropy bundle.
Vector flat_section(const Vector& x);
/// Coordinate fields d/dK and d/dtheta at a leaf point with T != 0.
Vector tangent_k(const Vector& x);
Vector tangent_theta(const Vector& x);

/// Coefficient of s0 in Omega_sigma(d/dK, d/dtheta), i.e. -d/dK [U / (p + U^2)].
double omega_closed(const CubicProfile& profile, double k);
/// Leaf metric in the (K, theta) frame: diag(1/(4p), p/(p + U^2)).
Matrix leaf_metric_closed(const CubicProfile& profile, double k);

/// Closed-form periods of a sphere leaf [r2, r3] (three simple roots, c1 > 0).
struct SpherePeriods {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  double k_max = 0.0;  // 2 sqrt(c1), where the U(1)-orbit meets U = 0
  double a = 0.0;      // r3^2 - 4 c1
  double b = 0.0;      // 4 c1 - r2^2
  double sphere = 0.0; // 8 pi (1/a + 1/b)
  double cap = 0.0;    // [k_max, r3]: 8 pi / a
  double lower = 0.0;  // [r2, k_max]: 8 pi / b
  double ratio = 0.0;  // b / a = cap / lower
};

/// Throws DomainError unless the level set has a sphere leaf.
SpherePeriods sphere_periods(const CubicProfile& profile);

/// Patches in (s, t) with theta = 2 pi s and K increasing in t. The endpoint
/// roots are reached through K = r -+ tau^2 (or a cosine substitution for the
/// whole sphere) so the pulled-back integrand is smooth.
DiskPatch sphere_patch(const CubicProfile& profile);
DiskPatch cap_patch(const CubicProfile& profile);
DiskPatch lower_patch(const CubicProfile& profile);

/// pi_2 generator and the two orbit disks (lower, cap) of a sphere leaf.
LeafCycles sphere_cycles(const CubicProfile& profile);
/// Plane or cylinder leaf: pi_2 = 1 and the G-monodromy is trivial.
LeafCycles trivial_cycles(const std::string& leaf, const std::string& note);

/// c2 in (-4/3 c1^{3/2}, 4/3 c1^{3/2}) with sphere ratio b/a equal to `ratio`
/// in (0, 1), by bisection. Throws DomainError outside that range.
double parameters_for_ratio(double c1, double ratio);

}  // namespace cartan::ek
