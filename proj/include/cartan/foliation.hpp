#pragma once

#include <string>
#include <vector>

#include "cartan/model.hpp"

namespace cartan {

struct RankOptions {
  /// Singular values above threshold * max(sigma_max, 1) count towards the rank.
  double threshold = 1e-9;
};

int leaf_rank(const CartanModel& model, const Vector& x, const RankOptions& opts = {});

/// Orthonormal basis (columns, fiber coordinates) of ker rho_x.
Matrix isotropy_basis(const CartanModel& model, const Vector& x, const RankOptions& opts = {});

struct LeafProbe {
  Vector x0;
  int leaf_dim = 0;
  Matrix isotropy;  // columns span ker rho_{x0}
  int orbit_dim = 0;
};

LeafProbe probe_leaf(const CartanModel& model, const Vector& x, const RankOptions& opts = {});

/// Bracket of isotropy elements is the bracket of constant sections at x (the
/// derivative terms carry rho = 0). Returns the largest component of
/// [k_i, k_j] orthogonal to ker rho_x.
double isotropy_closure_residual(const CartanModel& model, const Vector& x,
                                 const RankOptions& opts = {});

/// A three-dimensional isotropy algebra in an adapted basis.
struct IsotropyAlgebra {
  int dim = 0;
  /// "so(3)", "sl(2)", "e(2)" (= so(2) x| R^2), or "other".
  std::string label;
  /// Adapted basis f1, f2, f3 as fiber vectors (columns).
  Matrix basis;
  /// structure(k, i*dim + j) = coefficient of f_k in [f_i, f_j].
  Matrix structure;
  /// Largest deviation of `structure` from the reference constants of `label`.
  double reference_residual = 0.0;
  double closure_residual = 0.0;
};

/// Reference constants (same layout as IsotropyAlgebra::structure):
///   so(3): [f1,f2] = f3, [f2,f3] = f1, [f3,f1] = f2
///   sl(2): [f1,f2] = -f3, [f2,f3] = f1, [f3,f1] = f2
///   e(2):  [f1,f2] = 0,  [f3,f1] = f2, [f3,f2] = -f1
Matrix reference_structure(const std::string& label);

/// Identifies a 3-dimensional isotropy algebra from its Killing form; throws
/// DimensionError when ker rho_x is not 3-dimensional.
IsotropyAlgebra classify_isotropy(const CartanModel& model, const Vector& x,
                                  const RankOptions& opts = {});

struct FlowOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 1e-3;
  double min_step = 1e-14;
};

struct FlowPath {
  std::vector<double> times;
  std::vector<Vector> points;
  const Vector& end() const { return points.back(); }
};

/// Integral curve of rho(section) through x0 by an adaptive Dormand-Prince 5(4)
/// stepper. Throws DomainError when the path leaves the domain or blows up and
/// StepSizeError when the step underflows.
FlowPath flow(const CartanModel& model, const Vector& x0, const Section& section, double t_final,
              const FlowOptions& opts = {});

using ScalarField = std::function<double(const Vector&)>;

/// Gradient by central differences (Richardson-checked).
Vector numeric_gradient(const ScalarField& f, const Vector& x, const FiniteDifference& fd = {});

/// max over sample points and fiber basis directions of |df . rho(e)|.
/// `gradient` may be empty, in which case it is taken numerically.
double check_invariant(const CartanModel& model, const ScalarField& f, const VectorField& gradient,
                       const std::vector<Vector>& samples);

/// max_t |f(x(t)) - f(x(0))| along a path.
double invariant_drift(const FlowPath& path, const ScalarField& f);

}  // namespace cartan
