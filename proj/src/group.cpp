#include "cartan/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "cartan/errors.hpp"

namespace cartan {

StructureGroup::StructureGroup(std::string name, int n, std::vector<Matrix> basis)
    : name_(std::move(name)), n_(n), basis_(std::move(basis)) {
  const int m = dim();
  flat_.resize(static_cast<Eigen::Index>(n_) * n_, m);
  for (int j = 0; j < m; ++j) {
    if (basis_[j].rows() != n_ || basis_[j].cols() != n_) {
      throw DimensionError("structure group basis matrix has the wrong shape");
    }
    flat_.col(j) = basis_[j].reshaped();
  }
  if (m > 0) {
    flat_qr_.compute(flat_);
    if (flat_qr_.rank() != m) throw RepresentationError("structure group basis is not independent");
  }
  gram_ = 0.5 * flat_.transpose() * flat_;
}

Matrix StructureGroup::to_matrix(const Vector& coeffs) const {
  if (coeffs.size() != dim()) {
    std::ostringstream msg;
    msg << "algebra coefficient vector has size " << coeffs.size() << ", expected " << dim();
    throw RepresentationError(msg.str());
  }
  Matrix out = Matrix::Zero(n_, n_);
  for (int j = 0; j < dim(); ++j) out += coeffs[j] * basis_[j];
  return out;
}

Vector StructureGroup::to_coeffs(const Matrix& m, double tol) const {
  if (m.rows() != n_ || m.cols() != n_) throw RepresentationError("matrix has the wrong shape");
  if (dim() == 0) {
    if (m.norm() > tol * std::max(1.0, m.norm())) {
      throw RepresentationError("nonzero matrix outside the trivial algebra");
    }
    return Vector::Zero(0);
  }
  const Vector flat = m.reshaped();
  Vector coeffs = flat_qr_.solve(flat);
  const double residual = (flat_ * coeffs - flat).norm();
  if (residual > tol * std::max(1.0, flat.norm())) {
    std::ostringstream msg;
    msg << "matrix lies outside span(lie_algebra_basis) (residual " << residual << ")";
    throw RepresentationError(msg.str());
  }
  return coeffs;
}

Vector StructureGroup::bracket(const Vector& a, const Vector& b) const {
  const Matrix ma = to_matrix(a);
  const Matrix mb = to_matrix(b);
  return to_coeffs(ma * mb - mb * ma);
}

Matrix StructureGroup::exp(const Vector& coeffs) const { return to_matrix(coeffs).exp(); }

Vector StructureGroup::adjoint(const Matrix& g, const Vector& alpha) const {
  return to_coeffs(g * to_matrix(alpha) * g.inverse());
}

Vector StructureGroup::sample_algebra(Rng& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector alpha(dim());
  for (int j = 0; j < dim(); ++j) alpha[j] = normal(rng);
  return alpha;
}

std::vector<Matrix> StructureGroup::sample_elements(Rng& rng, int count) const {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Matrix> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    if (dim() == 0) {
      out.push_back(Matrix::Identity(n_, n_));
      continue;
    }
    Vector alpha = sample_algebra(rng);
    alpha /= std::max(alpha.norm(), 1e-300);
    out.push_back(exp(angle(rng) * alpha));
  }
  return out;
}

double StructureGroup::closure_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) {
      const Vector flat = (basis_[i] * basis_[j] - basis_[j] * basis_[i]).reshaped();
      const Vector proj = flat_ * flat_qr_.solve(flat);
      worst = std::max(worst, (proj - flat).norm());
    }
  }
  return worst;
}

bool StructureGroup::antisymmetric_basis(double tol) const {
  return std::all_of(basis_.begin(), basis_.end(), [tol](const Matrix& e) {
    return (e + e.transpose()).norm() <= tol * std::max(1.0, e.norm());
  });
}

StructureGroup StructureGroup::special_orthogonal(int n) {
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      basis.push_back(std::move(e));
    }
  }
  return StructureGroup("SO(" + std::to_string(n) + ")", n, std::move(basis));
}

StructureGroup StructureGroup::unitary_one() {
  Matrix j(2, 2);
  j << 0.0, -1.0, 1.0, 0.0;
  return StructureGroup("U(1)", 2, {j});
}

}  // namespace cartan
