#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartan/model.hpp"

namespace cartan {

struct VerifyOptions {
  int points = 100;
  int triples = 10;
  int group_samples = 32;
  std::uint64_t seed = 20240517;
  /// 0 selects the default: 1e-8 for closed-form models, 1e-6 otherwise.
  double tolerance = 0.0;
  FiniteDifference fd;
};

double default_tolerance(const CartanModel& model);

struct BianchiResidual {
  Vector first;   // R^n
  Vector second;  // algebra coefficients
};

/// Cyclic sums (LHS - RHS) of the two Bianchi identities at x. Directional
/// derivatives F(u)(c(v,w)), F(u)(R(v,w)) are taken by finite differences.
BianchiResidual check_bianchi(const CartanModel& model, const Vector& x, const Vector& u,
                              const Vector& v, const Vector& w, const FiniteDifference& fd = {});

/// Jacobiator [[e1,e2],e3] + cyclic of constant sections; the inner bracket is
/// a non-constant section handled by the Leibniz extension.
Vector check_jacobi(const CartanModel& model, const Vector& x, const Vector& e1, const Vector& e2,
                    const Vector& e3, const FiniteDifference& fd = {});

/// rho([e1,e2]) - [rho(e1), rho(e2)] for constant sections.
Vector check_anchor_compatibility(const CartanModel& model, const Vector& x, const Vector& e1,
                                  const Vector& e2, const FiniteDifference& fd = {});

/// Residual norms of the four structure conditions, evaluated directly on the
/// frame and algebra parts of a triple:
///   lie_jacobi      Jacobi identity of the structure algebra
///   representation  [a,b]u = a(bu) - b(au)
///   equivariance    psi(a)R(u,v) + [a,R(u,v)] = R(au,v) + R(u,av), same for c with a.c
///   bianchi         both Bianchi identities
struct StructureConditions {
  double lie_jacobi = 0.0;
  double representation = 0.0;
  double equivariance = 0.0;
  double bianchi = 0.0;
  double max() const;
};

StructureConditions structure_conditions(const CartanModel& model, const Vector& x,
                                         const Vector& e1, const Vector& e2, const Vector& e3,
                                         const FiniteDifference& fd = {});

struct EquivarianceResiduals {
  double finite_c = 0.0;
  double finite_r = 0.0;
  double finite_f = 0.0;
  double infinitesimal_c = 0.0;
  double infinitesimal_r = 0.0;
  double infinitesimal_f = 0.0;
};

/// Finite residuals at x for one group element g:
///   c(xg)(g^-1 u, g^-1 v) - g^-1 c(x)(u,v)
///   R(xg)(g^-1 u, g^-1 v) - Ad_{g^-1} R(x)(u,v)
///   F(xg, g^-1 u) - d(R_g)_x F(x,u)
struct EquivarianceSample {
  Vector c;
  Vector r;
  Vector f;
};

EquivarianceSample finite_equivariance(const CartanModel& model, const Vector& x, const Matrix& g,
                                       const Vector& u, const Vector& v,
                                       const FiniteDifference& fd = {});
/// The t-derivative at t = 0 of the finite residuals for g = exp(t alpha).
EquivarianceSample infinitesimal_equivariance(const CartanModel& model, const Vector& x,
                                              const Vector& alpha, const Vector& u,
                                              const Vector& v, const FiniteDifference& fd = {});

/// Maximum residuals over seeded samples.
EquivarianceResiduals check_equivariance(const CartanModel& model, const VerifyOptions& opts = {});

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string model;
  std::uint64_t seed = 0;
  int sample_count = 0;
  double tolerance = 0.0;
  double jacobi_max_residual = 0.0;
  double bianchi1_max_residual = 0.0;
  double bianchi2_max_residual = 0.0;
  double anchor_max_residual = 0.0;
  EquivarianceResiduals equivariance;
  std::vector<CheckResult> checks;
  /// Largest identity residual (Jacobi, Bianchi, anchor) at each sampled point.
  std::vector<double> point_max_residual;
  /// Points where check_jacobi and structure_conditions disagree on pass/fail.
  int condition_disagreements = 0;

  bool pass() const;
  /// Fraction of sampled points whose identity residual exceeds `threshold`.
  double fraction_above(double threshold) const;
};

VerificationReport verify_model(const CartanModel& model, const VerifyOptions& opts = {});

struct GeometricType {
  bool metric = false;
  bool almost_symplectic = false;
  bool symplectic = false;
  bool almost_complex = false;
  bool complex = false;
  bool almost_hermitian = false;
  bool kahler = false;
  /// Residual behind each flag (0 for exact basis-membership tests that pass).
  std::vector<std::pair<std::string, double>> evidence;
};

/// Residual of the cyclic torsion sum Omega(c(u,v),w) + cyclic; throws
/// DimensionError for odd n.
double symplectic_residual(const CartanModel& model, const VerifyOptions& opts = {});
/// Residual of the C^n component of the Nijenhuis tensor; throws DimensionError for odd n.
double nijenhuis_residual(const CartanModel& model, const VerifyOptions& opts = {});

GeometricType classify_type(const CartanModel& model, const VerifyOptions& opts = {});

/// Standard complex structure on R^n = C^{n/2}, coordinates paired (x1, y1, x2, y2, ...).
Matrix complex_structure(int n);

}  // namespace cartan
