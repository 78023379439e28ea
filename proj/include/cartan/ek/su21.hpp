#pragma once

#include <complex>

#include <Eigen/Dense>

#include "cartan/rational.hpp"
#include "cartan/types.hpp"

namespace cartan::ek {

using Complex = std::complex<double>;

/// A point of the 4-dimensional affine transversal in su(2,1).
struct SU21Point {
  double a = 0.0;
  double b = 0.0;
  Complex u;
  Eigen::Matrix3cd matrix;
};

SU21Point su21_embed(double a, double b, Complex u);

struct SU21Invariants {
  double casimir = 0.0;  // tr(x^2)
  Complex det;
};

/// Invariants computed from the matrix itself.
SU21Invariants su21_invariants(const SU21Point& pt);
/// Closed forms: C = 2 - 4a - 3b^2/2 and det = -i/4 (4b - 8ab + b^3 + 8|u|^2).
double su21_casimir_closed(double a, double b);
Complex su21_det_closed(double a, double b, Complex u);

/// Change of variables between (a, b, u1, u2) and (K, X, Y, U):
/// X = 3 u2/4, Y = -3 u1/4, K = 3b/2, U = 3/64 (4 - 8a + 9b^2).
Vector ek_from_su21(const Vector& abu);
Vector su21_from_ek(const Vector& x);
/// Jacobian d(K,X,Y,U)/d(a,b,u1,u2).
Matrix ek_from_su21_jacobian(const Vector& abu);

/// Linear Poisson structure on the transversal, Pi(i, j) = {x_i, x_j} in
/// coordinates (a, b, u1, u2).
Matrix su21_poisson(const Vector& abu);

/// Brackets [du1, du2], [du1, db], [du2, db] of the cotangent algebroid at
/// (a, b, 0, 0), reduced modulo the Casimir differential dC and expressed in
/// the frame (e1, e2, e3) = (du1, du2, db). Columns are the three brackets.
Matrix su21_reduced_brackets(double a, double b);

enum class KernelClosure { closed, closed_iff_rational };

struct KernelReport {
  double a = 0.0;
  double b = 0.0;
  double mu_squared = 0.0;  // 1 - 2a
  KernelClosure closure = KernelClosure::closed;
  double ratio = 0.0;  // b / |mu| when mu is imaginary
  RationalityVerdict rationality;
  /// Discriminant of the leaf through (a, b, 0, 0) from its invariants (c1, c2).
  double delta = 0.0;
  /// -(3/16) U^2 (1 - 2a) as stated alongside the closedness criterion.
  double delta_stated = 0.0;
  /// -(1/16) U^2 (1 - 2a), the identity that holds for the change of variables above.
  double delta_corrected = 0.0;
  /// closed <=> delta <= 0 (the sphere leaves are exactly the mu-imaginary ones).
  bool sign_agrees = false;
};

KernelReport su21_kernel_closed(double a, double b, std::int64_t bound = 1'000'000,
                                double tol = 1e-12);

}  // namespace cartan::ek
