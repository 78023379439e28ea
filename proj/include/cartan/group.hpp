#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "cartan/types.hpp"

namespace cartan {

using Rng = std::mt19937_64;

/// A closed subgroup G of GL(n, R) given by a basis of its Lie algebra.
///
/// Algebra elements are passed around as coefficient vectors over the basis;
/// to_matrix / to_coeffs convert between the two pictures.
class StructureGroup {
 public:
  StructureGroup(std::string name, int n, std::vector<Matrix> basis);

  const std::string& name() const { return name_; }
  int frame_dim() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }

  Matrix to_matrix(const Vector& coeffs) const;
  /// Least-squares coordinates of `m`; throws RepresentationError when `m` is
  /// farther than `tol * max(1, |m|)` from the span of the basis.
  Vector to_coeffs(const Matrix& m, double tol = 1e-9) const;

  /// Commutator [a, b] in coefficients.
  Vector bracket(const Vector& a, const Vector& b) const;
  /// Action of the algebra element on R^n.
  Vector act(const Vector& alpha, const Vector& u) const { return to_matrix(alpha) * u; }

  Matrix exp(const Vector& coeffs) const;
  /// Ad_g(alpha) = g alpha g^{-1}.
  Vector adjoint(const Matrix& g, const Vector& alpha) const;

  /// exp(t alpha) for `count` draws of a unit alpha and t uniform in [0, 2 pi).
  std::vector<Matrix> sample_elements(Rng& rng, int count) const;
  Vector sample_algebra(Rng& rng) const;

  /// max over basis pairs of the distance of [E_i, E_j] from span(basis).
  double closure_residual() const;
  bool antisymmetric_basis(double tol = 1e-12) const;
  /// Gram matrix of (a, b) -> tr(a^T b) / 2 over the basis.
  const Matrix& gram() const { return gram_; }

  static StructureGroup special_orthogonal(int n);
  /// U(1) acting on C = R^2 by rotations; basis element is multiplication by i.
  static StructureGroup unitary_one();

 private:
  std::string name_;
  int n_;
  std::vector<Matrix> basis_;
  Matrix flat_;  // n^2 x m, column j = vec(E_j)
  Eigen::ColPivHouseholderQR<Matrix> flat_qr_;
  Matrix gram_;
};

}  // namespace cartan
