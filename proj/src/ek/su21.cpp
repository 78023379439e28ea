#include "cartan/ek/su21.hpp"

#include <cmath>

#include "cartan/ek/cubic.hpp"

namespace cartan::ek {

SU21Point su21_embed(double a, double b, Complex u) {
  const Complex i(0.0, 1.0);
  SU21Point pt{a, b, u, Eigen::Matrix3cd::Zero()};
  auto& x = pt.matrix;
  x(0, 0) = i * (a - b / 2.0);
  x(0, 1) = u;
  x(0, 2) = 1.0 - a;
  x(1, 0) = -std::conj(u);
  x(1, 1) = i * b;
  x(1, 2) = -i * std::conj(u);
  x(2, 0) = 1.0 - a;
  x(2, 1) = i * u;
  x(2, 2) = -i * (a + b / 2.0);
  return pt;
}

SU21Invariants su21_invariants(const SU21Point& pt) {
  return {(pt.matrix * pt.matrix).trace().real(), pt.matrix.determinant()};
}

double su21_casimir_closed(double a, double b) { return 2.0 - 4.0 * a - 1.5 * b * b; }

Complex su21_det_closed(double a, double b, Complex u) {
  const double poly = 4.0 * b - 8.0 * a * b + b * b * b + 8.0 * std::norm(u);
  return Complex(0.0, -0.25 * poly);
}

Vector ek_from_su21(const Vector& abu) {
  const double a = abu[0], b = abu[1], u1 = abu[2], u2 = abu[3];
  Vector x(4);
  x << 1.5 * b, 0.75 * u2, -0.75 * u1, 3.0 / 64.0 * (4.0 - 8.0 * a + 9.0 * b * b);
  return x;
}

Vector su21_from_ek(const Vector& x) {
  const double b = 2.0 * x[0] / 3.0;
  Vector abu(4);
  abu << (4.0 + 9.0 * b * b - 64.0 * x[3] / 3.0) / 8.0, b, -4.0 * x[2] / 3.0, 4.0 * x[1] / 3.0;
  return abu;
}

Matrix ek_from_su21_jacobian(const Vector& abu) {
  Matrix j = Matrix::Zero(4, 4);
  j(0, 1) = 1.5;
  j(1, 3) = 0.75;
  j(2, 2) = -0.75;
  j(3, 0) = -3.0 / 8.0;
  j(3, 1) = 27.0 / 32.0 * abu[1];
  return j;
}

Matrix su21_poisson(const Vector& abu) {
  const double a = abu[0], b = abu[1], u1 = abu[2], u2 = abu[3];
  Matrix pi = Matrix::Zero(4, 4);
  pi(0, 2) = -0.75 * b * u2;
  pi(0, 3) = 0.75 * b * u1;
  pi(1, 2) = u2;
  pi(1, 3) = -u1;
  pi(2, 3) = (4.0 - 8.0 * a + 9.0 * b * b) / 16.0;
  return pi - pi.transpose();
}

Matrix su21_reduced_brackets(double a, double b) {
  // [dx_i, dx_j] = d{x_i, x_j}. Entries of Pi and the Casimir are quadratic, so a
  // central difference with any step is exact up to rounding.
  Vector p(4);
  p << a, b, 0.0, 0.0;
  constexpr double h = 0.5;
  auto gradient = [&](auto&& f) {
    Vector g(4);
    for (int k = 0; k < 4; ++k) {
      Vector lo = p, hi = p;
      lo[k] -= h;
      hi[k] += h;
      g[k] = (f(hi) - f(lo)) / (2.0 * h);
    }
    return g;
  };
  const Vector dc = gradient([](const Vector& q) { return su21_casimir_closed(q[0], q[1]); });
  // Frame (e1, e2, e3) = (du1, du2, db); eliminate da using dC = 0.
  auto reduce = [&](const Vector& form) {
    const Vector r = form - (form[0] / dc[0]) * dc;
    Vector out(3);
    out << r[2], r[3], r[1];
    return out;
  };
  const int index[3] = {2, 3, 1};
  Matrix out(3, 3);
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int c = 0; c < 3; ++c) {
    const int i = index[pairs[c][0]], j = index[pairs[c][1]];
    out.col(c) = reduce(gradient([&](const Vector& q) { return su21_poisson(q)(i, j); }));
  }
  return out;
}

KernelReport su21_kernel_closed(double a, double b, std::int64_t bound, double tol) {
  KernelReport r;
  r.a = a;
  r.b = b;
  r.mu_squared = 1.0 - 2.0 * a;
  Vector abu(4);
  abu << a, b, 0.0, 0.0;
  const Vector x = ek_from_su21(abu);
  r.delta = discriminant(invariant_i1(x), invariant_i2(x));
  const double u2 = x[3] * x[3];
  r.delta_stated = -3.0 / 16.0 * u2 * r.mu_squared;
  r.delta_corrected = -1.0 / 16.0 * u2 * r.mu_squared;
  if (r.mu_squared >= 0.0) {
    r.closure = KernelClosure::closed;
  } else {
    r.closure = KernelClosure::closed_iff_rational;
    r.ratio = b / std::sqrt(-r.mu_squared);
    r.rationality = test_rationality(r.ratio, bound, tol);
  }
  const double scale = std::max(1.0, std::fabs(r.delta_corrected)) * 1e-12;
  const bool delta_nonpositive = r.delta <= scale;
  r.sign_agrees = (r.closure == KernelClosure::closed) == delta_nonpositive;
  return r;
}

}  // namespace cartan::ek
