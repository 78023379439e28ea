#include "cartan/ek/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cartan::ek {
namespace {

constexpr double kMergeTol = 1e-8;
constexpr double kTripleTol = 1e-12;

double polish(const CubicProfile& prof, double k) {
  for (int it = 0; it < 4; ++it) {
    const double d = prof.dp(k);
    if (std::fabs(d) < 1e-14 * prof.scale()) break;
    const double step = prof.p(k) / d;
    k -= step;
    if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(k))) break;
  }
  return k;
}

}  // namespace

double invariant_i1(const Vector& x) { return x[0] * x[0] / 4.0 - x[3]; }

double invariant_i2(const Vector& x) {
  return x[1] * x[1] + x[2] * x[2] + x[0] * x[3] - x[0] * x[0] * x[0] / 6.0;
}

Vector invariant_i1_gradient(const Vector& x) {
  Vector g(4);
  g << x[0] / 2.0, 0.0, 0.0, -1.0;
  return g;
}

Vector invariant_i2_gradient(const Vector& x) {
  Vector g(4);
  g << x[3] - x[0] * x[0] / 2.0, 2.0 * x[1], 2.0 * x[2], x[0];
  return g;
}

double discriminant(double c1, double c2) { return (16.0 * c1 * c1 * c1 - 9.0 * c2 * c2) / 48.0; }

double CubicProfile::p(double k) const { return -k * k * k / 12.0 + c1 * k + c2; }

double CubicProfile::dp(double k) const { return -k * k / 4.0 + c1; }

double CubicProfile::scale() const {
  double s = 1.0;
  for (const Root& r : roots) s = std::max(s, std::fabs(r.value));
  return s;
}

CubicProfile cubic_profile(double c1, double c2) {
  CubicProfile prof;
  prof.c1 = c1;
  prof.c2 = c2;
  prof.coeffs = {c2, c1, 0.0, -1.0 / 12.0};
  prof.delta = discriminant(c1, c2);

  if (std::fabs(c1) <= kTripleTol && std::fabs(c2) <= kTripleTol) {
    prof.roots = {{0.0, 3}};
    prof.delta_sign = 0;
    return prof;
  }

  // K^3 + P K + Q = 0 with P = -12 c1, Q = -12 c2.
  const double P = -12.0 * c1;
  const double Q = -12.0 * c2;
  std::vector<double> raw;
  if (c1 > 0.0 && prof.delta >= 0.0) {
    const double m = 4.0 * std::sqrt(c1);  // 2 sqrt(-P/3)
    const double arg = std::clamp((3.0 * Q / (2.0 * P)) * std::sqrt(-3.0 / P), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) raw.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
  } else {
    const double disc = Q * Q / 4.0 + P * P * P / 27.0;
    const double s = std::sqrt(std::max(disc, 0.0));
    // Avoid cancellation: take the larger-magnitude cube root first.
    const double big = std::cbrt(-Q / 2.0 + (Q <= 0.0 ? s : -s));
    const double small = big != 0.0 ? -P / (3.0 * big) : 0.0;
    raw.push_back(big + small);
  }
  std::sort(raw.begin(), raw.end());
  CubicProfile probe = prof;
  for (double r : raw) probe.roots.push_back({r, 1});
  for (double& r : raw) r = polish(probe, r);

  // Near-double roots sit around a critical point +-2 sqrt(c1) where p'' = -K/2.
  const double scale = probe.scale();
  if (c1 > 0.0) {
    for (double kc : {-2.0 * std::sqrt(c1), 2.0 * std::sqrt(c1)}) {
      const double curvature = std::fabs(kc) / 2.0;
      // Rounding in p(kc) alone would fake a separation of order sqrt(eps).
      const double noise = 4.0 * std::numeric_limits<double>::epsilon() *
                           (std::fabs(kc * kc * kc) / 12.0 + std::fabs(c1 * kc) + std::fabs(c2));
      const double value = std::max(std::fabs(prof.p(kc)) - noise, 0.0);
      const double separation = 2.0 * std::sqrt(2.0 * value / curvature);
      if (separation < kMergeTol * scale) {
        std::vector<Root> roots;
        for (double r : raw) {
          if (std::fabs(r - kc) > 0.5 * std::fabs(kc)) roots.push_back({polish(probe, r), 1});
        }
        if (roots.empty()) {
          // Only the one real root was found; the other simple root is -2 kc.
          roots.push_back({polish(probe, -2.0 * kc), 1});
        }
        roots.push_back({kc, 2});
        std::sort(roots.begin(), roots.end(),
                  [](const Root& a, const Root& b) { return a.value < b.value; });
        prof.roots = std::move(roots);
        prof.delta_sign = 0;
        return prof;
      }
    }
  }
  for (double r : raw) prof.roots.push_back({r, 1});
  prof.delta_sign = prof.roots.size() == 3 ? 1 : -1;
  return prof;
}

}  // namespace cartan::ek
