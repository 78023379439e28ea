#include "cartan/ek/leaves.hpp"

#include <cmath>
#include <numbers>

#include "cartan/errors.hpp"

namespace cartan::ek {
namespace {

constexpr double pi = std::numbers::pi;

Vector point(double k, double q, double theta, double c1) {
  Vector x(4);
  x << k, q * std::cos(theta), q * std::sin(theta), k * k / 4 - c1;
  return x;
}

/// Jacobian of (s, t) -> point(K(t), q(t), 2 pi s) given K, K', q, q'.
Matrix jacobian(double k, double dk, double q, double dq, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Matrix j(4, 2);
  j.col(0) << 0.0, -2 * pi * q * s, 2 * pi * q * c, 0.0;
  j.col(1) << dk, dq * c, dq * s, k * dk / 2;
  return j;
}

struct Roots {
  double r1, r2, r3;
};

Roots simple_roots(const CubicProfile& profile) {
  if (profile.c1 <= 0.0 || profile.roots.size() != 3) {
    throw DomainError("level set has no sphere leaf (needs three simple real roots)");
  }
  return {profile.roots[0].value, profile.roots[1].value, profile.roots[2].value};
}

}  // namespace

Vector leaf_point(const CubicProfile& profile, double k, double theta) {
  return point(k, std::sqrt(std::max(profile.p(k), 0.0)), theta, profile.c1);
}

Vector flat_section(const Vector& x) {
  Vector s(3);
  s << -x[2], x[1], x[3];
  return s;
}

Vector tangent_k(const Vector& x) {
  const double p = x[1] * x[1] + x[2] * x[2];
  if (p == 0.0) throw SingularityError("d/dK is undefined where T = 0");
  Vector v(4);
  v << 1.0, -x[3] * x[1] / (2 * p), -x[3] * x[2] / (2 * p), x[0] / 2;
  return v;
}

Vector tangent_theta(const Vector& x) {
  Vector v(4);
  v << 0.0, -x[2], x[1], 0.0;
  return v;
}

double omega_closed(const CubicProfile& profile, double k) {
  const double u = k * k / 4 - profile.c1;
  const double p = profile.p(k);
  const double den = p + u * u;
  return -(k / 2 * den - u * (-u + u * k)) / (den * den);
}

Matrix leaf_metric_closed(const CubicProfile& profile, double k) {
  const double u = k * k / 4 - profile.c1;
  const double p = profile.p(k);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0 / (4 * p);
  m(1, 1) = p / (p + u * u);
  return m;
}

SpherePeriods sphere_periods(const CubicProfile& profile) {
  const Roots r = simple_roots(profile);
  SpherePeriods out;
  out.r1 = r.r1;
  out.r2 = r.r2;
  out.r3 = r.r3;
  out.k_max = 2 * std::sqrt(profile.c1);
  out.a = r.r3 * r.r3 - 4 * profile.c1;
  out.b = 4 * profile.c1 - r.r2 * r.r2;
  out.cap = 8 * pi / out.a;
  out.lower = 8 * pi / out.b;
  out.sphere = out.cap + out.lower;
  out.ratio = out.b / out.a;
  return out;
}

DiskPatch sphere_patch(const CubicProfile& profile) {
  const Roots r = simple_roots(profile);
  const double c1 = profile.c1, half = (r.r3 - r.r2) / 2;
  auto state = [=](double t, double& k, double& dk, double& q, double& dq) {
    k = r.r2 + half * (1 - std::cos(pi * t));
    dk = half * pi * std::sin(pi * t);
    const double g = std::sqrt((k - r.r1) / 12);
    q = half * std::sin(pi * t) * g;
    dq = half * pi * std::cos(pi * t) * g + half * std::sin(pi * t) * dk / (24 * g);
  };
  DiskPatch patch;
  patch.label = "sphere";
  patch.boundary = BoundaryClass::contractible_sphere_cycle;
  patch.param = [=](double s, double t) {
    double k, dk, q, dq;
    state(t, k, dk, q, dq);
    return point(k, q, 2 * pi * s, c1);
  };
  patch.jacobian = [=](double s, double t) {
    double k, dk, q, dq;
    state(t, k, dk, q, dq);
    return jacobian(k, dk, q, dq, 2 * pi * s);
  };
  return patch;
}

DiskPatch cap_patch(const CubicProfile& profile) {
  const Roots r = simple_roots(profile);
  const double c1 = profile.c1, w = std::sqrt(r.r3 - 2 * std::sqrt(c1));
  // K = r3 - tau^2 with tau = (1 - t) w, so K runs from the orbit up to r3.
  auto state = [=](double t, double& k, double& dk, double& q, double& dq) {
    const double tau = (1 - t) * w;
    k = r.r3 - tau * tau;
    dk = 2 * tau * w;
    const double h = (k - r.r1) * (k - r.r2) / 12;
    const double g = std::sqrt(h);
    const double dh = ((k - r.r2) + (k - r.r1)) / 12 * dk;
    q = tau * g;
    dq = -w * g + tau * dh / (2 * g);
  };
  DiskPatch patch;
  patch.label = "cap";
  patch.boundary = BoundaryClass::g_orbit_boundary;
  patch.param = [=](double s, double t) {
    double k, dk, q, dq;
    state(t, k, dk, q, dq);
    return point(k, q, 2 * pi * s, c1);
  };
  patch.jacobian = [=](double s, double t) {
    double k, dk, q, dq;
    state(t, k, dk, q, dq);
    return jacobian(k, dk, q, dq, 2 * pi * s);
  };
  return patch;
}

DiskPatch lower_patch(const CubicProfile& profile) {
  const Roots r = simple_roots(profile);
  const double c1 = profile.c1, w = std::sqrt(2 * std::sqrt(c1) - r.r2);
  // K = r2 + tau^2 with tau = t w, so K runs from r2 up to the orbit.
  auto state = [=](double t, double& k, double& dk, double& q, double& dq) {
    const double tau = t * w;
    k = r.r2 + tau * tau;
    dk = 2 * tau * w;
    const double h = (k - r.r1) * (r.r3 - k) / 12;
    const double g = std::sqrt(h);
    const double dh = ((r.r3 - k) - (k - r.r1)) / 12 * dk;
    q = tau * g;
    dq = w * g + tau * dh / (2 * g);
  };
  DiskPatch patch;
  patch.label = "lower";
  patch.boundary = BoundaryClass::g_orbit_boundary;
  patch.param = [=](double s, double t) {
    double k, dk, q, dq;
    state(t, k, dk, q, dq);
    return point(k, q, 2 * pi * s, c1);
  };
  patch.jacobian = [=](double s, double t) {
    double k, dk, q, dq;
    state(t, k, dk, q, dq);
    return jacobian(k, dk, q, dq, 2 * pi * s);
  };
  return patch;
}

LeafCycles sphere_cycles(const CubicProfile& profile) {
  const SpherePeriods per = sphere_periods(profile);
  LeafCycles cycles;
  cycles.leaf = "sphere";
  cycles.spheres = {sphere_patch(profile)};
  cycles.orbit_disks = {lower_patch(profile), cap_patch(profile)};
  cycles.frame = [](const Vector& x) -> Matrix { return flat_section(x); };
  cycles.orbit_point = leaf_point(profile, per.k_max, 0.0);
  cycles.reference_spheres = {per.sphere};
  cycles.reference_disks = {per.lower, per.cap};
  return cycles;
}

LeafCycles trivial_cycles(const std::string& leaf, const std::string& note) {
  LeafCycles cycles;
  cycles.leaf = leaf;
  cycles.topologically_trivial = true;
  cycles.topology_note = note;
  return cycles;
}

double parameters_for_ratio(double c1, double ratio) {
  if (c1 <= 0.0 || !(ratio > 0.0 && ratio < 1.0)) {
    throw DomainError("sphere ratios lie in (0, 1) and need c1 > 0");
  }
  const double c2max = 4.0 / 3.0 * std::pow(c1, 1.5);
  // The ratio decreases from 1 to 0 as c2 runs over the open interval.
  double lo = -c2max, hi = c2max;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const CubicProfile prof = cubic_profile(c1, mid);
    if (prof.roots.size() != 3) {
      (mid < 0 ? lo : hi) = mid;
      continue;
    }
    (sphere_periods(prof).ratio > ratio ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace cartan::ek
