#include "cartan/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "cartan/errors.hpp"

namespace cartan {
namespace {

double rank_cutoff(const Vector& sv, const RankOptions& opts) {
  const double top = sv.size() > 0 ? sv[0] : 0.0;
  return opts.threshold * std::max(top, 1.0);
}

/// Orthonormal complement of span(range) in R^k, from a full SVD.
Matrix null_space(const Matrix& a, const RankOptions& opts) {
  const int k = static_cast<int>(a.cols());
  if (a.rows() == 0) return Matrix::Identity(k, k);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector sv = svd.singularValues();
  const double cut = rank_cutoff(sv, opts);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) rank += sv[i] > cut ? 1 : 0;
  return svd.matrixV().rightCols(k - rank);
}

int matrix_rank(const Matrix& a, const RankOptions& opts) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector sv = svd.singularValues();
  const double cut = rank_cutoff(sv, opts);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) rank += sv[i] > cut ? 1 : 0;
  return rank;
}

/// Structure constants of span(basis) in that basis, plus the off-span residual.
Matrix structure_in(const CartanModel& model, const Vector& x, const Matrix& basis,
                    double* residual) {
  const int m = static_cast<int>(basis.cols());
  Matrix out = Matrix::Zero(m, m * m);
  const Eigen::ColPivHouseholderQR<Matrix> qr(basis);
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Vector br = bracket_constant(model, x, basis.col(i), basis.col(j));
      const Vector coeffs = qr.solve(br);
      worst = std::max(worst, (basis * coeffs - br).norm());
      out.col(i * m + j) = coeffs;
    }
  }
  if (residual != nullptr) *residual = worst;
  return out;
}

Matrix killing_form(const Matrix& structure, int m) {
  // ad(f_i)_{k j} = structure(k, i*m + j)
  std::vector<Matrix> ad(m, Matrix::Zero(m, m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) ad[i].col(j) = structure.col(i * m + j);
  }
  Matrix b(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) b(i, j) = (ad[i] * ad[j]).trace();
  }
  return b;
}

void set_bracket(Matrix& s, int i, int j, int k, double coeff) {
  s(k, i * 3 + j) = coeff;
  s(k, j * 3 + i) = -coeff;
}

}  // namespace

int leaf_rank(const CartanModel& model, const Vector& x, const RankOptions& opts) {
  return matrix_rank(anchor_matrix(model, x), opts);
}

Matrix isotropy_basis(const CartanModel& model, const Vector& x, const RankOptions& opts) {
  return null_space(anchor_matrix(model, x), opts);
}

LeafProbe probe_leaf(const CartanModel& model, const Vector& x, const RankOptions& opts) {
  LeafProbe probe;
  probe.x0 = x;
  const Matrix rho = anchor_matrix(model, x);
  probe.leaf_dim = matrix_rank(rho, opts);
  probe.isotropy = null_space(rho, opts);
  probe.orbit_dim = matrix_rank(rho.rightCols(model.algebra_dim()), opts);
  return probe;
}

double isotropy_closure_residual(const CartanModel& model, const Vector& x,
                                 const RankOptions& opts) {
  const Matrix basis = isotropy_basis(model, x, opts);
  if (basis.cols() == 0) return 0.0;
  double residual = 0.0;
  structure_in(model, x, basis, &residual);
  return residual;
}

Matrix reference_structure(const std::string& label) {
  Matrix s = Matrix::Zero(3, 9);
  if (label == "so(3)") {
    set_bracket(s, 0, 1, 2, 1.0);
    set_bracket(s, 1, 2, 0, 1.0);
    set_bracket(s, 2, 0, 1, 1.0);
  } else if (label == "sl(2)") {
    set_bracket(s, 0, 1, 2, -1.0);
    set_bracket(s, 1, 2, 0, 1.0);
    set_bracket(s, 2, 0, 1, 1.0);
  } else if (label == "e(2)") {
    set_bracket(s, 2, 0, 1, 1.0);
    set_bracket(s, 2, 1, 0, -1.0);
  } else {
    throw LookupError("no reference structure for '" + label + "'");
  }
  return s;
}

IsotropyAlgebra classify_isotropy(const CartanModel& model, const Vector& x,
                                  const RankOptions& opts) {
  const Matrix k = isotropy_basis(model, x, opts);
  if (k.cols() != 3) {
    std::ostringstream msg;
    msg << "isotropy algebra at this point has dimension " << k.cols() << ", expected 3";
    throw DimensionError(msg.str());
  }
  IsotropyAlgebra out;
  out.dim = 3;
  const Matrix s0 = structure_in(model, x, k, &out.closure_residual);
  const Matrix b = killing_form(s0, 3);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(b);
  const Vector lam = eig.eigenvalues();  // ascending
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  const double zero = 1e-9 * scale;
  int negative = 0, positive = 0;
  for (int i = 0; i < 3; ++i) {
    negative += lam[i] < -zero ? 1 : 0;
    positive += lam[i] > zero ? 1 : 0;
  }

  Matrix coeffs(3, 3);  // adapted basis in isotropy coordinates
  if (negative + positive == 3) {
    // B-orthonormal basis with B(f,f) = -2 (compact) or +2; compact direction last.
    out.label = negative == 3 ? "so(3)" : (negative == 1 ? "sl(2)" : "other");
    std::vector<int> order;
    for (int i = 2; i >= 0; --i) {
      if (lam[i] > 0) order.push_back(i);
    }
    for (int i = 0; i < 3; ++i) {
      if (lam[i] < 0) order.push_back(i);
    }
    for (int c = 0; c < 3; ++c) {
      coeffs.col(c) = eig.eigenvectors().col(order[c]) / std::sqrt(std::fabs(lam[order[c]]) / 2.0);
    }
  } else if (negative == 1 && positive == 0) {
    out.label = "e(2)";
    // f3 spans the compact direction; f1 in the radical, f2 = [f3, f1].
    const Vector f3 = eig.eigenvectors().col(0) / std::sqrt(std::fabs(lam[0]) / 2.0);
    const Vector f1 = eig.eigenvectors().col(2);
    Vector f2 = Vector::Zero(3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) f2 += f3[i] * f1[j] * s0.col(i * 3 + j);
    }
    coeffs << f1, f2, f3;
  } else {
    out.label = "other";
    coeffs.setIdentity();
  }
  out.basis = k * coeffs;
  out.structure = structure_in(model, x, out.basis, nullptr);
  if (out.label == "other") return out;
  // Orientation: the sign of [f1, f2] relative to f3 is fixed by the reference.
  if (out.label != "e(2)") {
    const Matrix ref = reference_structure(out.label);
    if (out.structure(2, 1) * ref(2, 1) < 0.0) {
      out.basis.col(2) *= -1.0;
      out.structure = structure_in(model, x, out.basis, nullptr);
    }
  }
  out.reference_residual = (out.structure - reference_structure(out.label)).cwiseAbs().maxCoeff();
  return out;
}

FlowPath flow(const CartanModel& model, const Vector& x0, const Section& section, double t_final,
              const FlowOptions& opts) {
  namespace ode = boost::numeric::odeint;
  using State = std::vector<double>;
  model.require_domain(x0);
  const int d = model.base_dim();
  auto rhs = [&](const State& s, State& ds, double) {
    const Vector x = Eigen::Map<const Vector>(s.data(), d);
    const Vector v = anchor(model, x, section(x));
    Eigen::Map<Vector>(ds.data(), d) = v;
  };
  auto stepper = ode::make_controlled(opts.atol, opts.rtol, ode::runge_kutta_dopri5<State>());

  FlowPath path;
  State s(x0.data(), x0.data() + d);
  double t = 0.0;
  double dt = std::min(opts.initial_step, std::max(t_final, 0.0));
  path.times.push_back(t);
  path.points.push_back(x0);
  while (t < t_final) {
    dt = std::min(dt, t_final - t);
    if (stepper.try_step(rhs, s, t, dt) == ode::fail) {
      if (dt < opts.min_step * std::max(1.0, std::fabs(t))) {
        std::ostringstream msg;
        msg << "flow step underflow at t=" << t;
        throw StepSizeError(msg.str());
      }
      continue;
    }
    const Vector x = Eigen::Map<const Vector>(s.data(), d);
    if (!x.allFinite() || !model.contains(x)) {
      std::ostringstream msg;
      msg << "flow left the domain at t=" << t;
      throw DomainError(msg.str());
    }
    path.times.push_back(t);
    path.points.push_back(x);
  }
  return path;
}

Vector numeric_gradient(const ScalarField& f, const Vector& x, const FiniteDifference& fd) {
  const VectorField wrapped = [&f](const Vector& y) {
    Vector out(1);
    out[0] = f(y);
    return out;
  };
  Vector g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    g[i] = directional_derivative(wrapped, x, Vector::Unit(x.size(), i), fd)[0];
  }
  return g;
}

double check_invariant(const CartanModel& model, const ScalarField& f, const VectorField& gradient,
                       const std::vector<Vector>& samples) {
  double worst = 0.0;
  for (const Vector& x : samples) {
    const Vector grad = gradient ? gradient(x) : numeric_gradient(f, x);
    const Matrix rho = anchor_matrix(model, x);
    worst = std::max(worst, (grad.transpose() * rho).cwiseAbs().maxCoeff());
  }
  return worst;
}

double invariant_drift(const FlowPath& path, const ScalarField& f) {
  const double f0 = f(path.points.front());
  double worst = 0.0;
  for (const Vector& x : path.points) worst = std::max(worst, std::fabs(f(x) - f0));
  return worst;
}

}  // namespace cartan
