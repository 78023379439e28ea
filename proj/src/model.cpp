#include "cartan/model.hpp"

#include <algorithm>
#include <sstream>

#include "cartan/errors.hpp"

namespace cartan {

CartanModel::CartanModel(CartanData data) : data_(std::move(data)) {
  const int n = frame_dim();
  const int m = algebra_dim();
  gram_ = Matrix::Zero(n + m, n + m);
  gram_.topLeftCorner(n, n).setIdentity();
  gram_.bottomRightCorner(m, m) = data_.group.gram();
  if (data_.base.sample_lo.size() != data_.base.dim) {
    data_.base.sample_lo = Vector::Constant(data_.base.dim, -1.0);
  }
  if (data_.base.sample_hi.size() != data_.base.dim) {
    data_.base.sample_hi = Vector::Constant(data_.base.dim, 1.0);
  }
}

bool CartanModel::contains(const Vector& x) const {
  if (x.size() != base_dim()) return false;
  return !data_.base.contains || data_.base.contains(x);
}

void CartanModel::require_domain(const Vector& x) const {
  if (x.size() != base_dim()) {
    std::ostringstream msg;
    msg << "base point has dimension " << x.size() << ", model '" << name() << "' expects "
        << base_dim();
    throw DomainError(msg.str());
  }
  if (data_.base.contains && !data_.base.contains(x)) {
    std::ostringstream msg;
    msg << "base point (" << x.transpose() << ") is outside the domain of '" << name() << "'";
    throw DomainError(msg.str());
  }
}

Vector CartanModel::torsion(const Vector& x, const Vector& u, const Vector& v) const {
  return data_.torsion(x, u, v);
}

Vector CartanModel::curvature(const Vector& x, const Vector& u, const Vector& v) const {
  return data_.curvature(x, u, v);
}

Vector CartanModel::coupling(const Vector& x, const Vector& u) const {
  return data_.coupling(x, u);
}

Vector CartanModel::psi(const Vector& x, const Vector& alpha) const {
  if (alpha.size() != algebra_dim()) {
    throw RepresentationError("algebra coefficient vector has the wrong size");
  }
  if (!data_.base.infinitesimal_action) return Vector::Zero(base_dim());
  return data_.base.infinitesimal_action(x, alpha);
}

Vector CartanModel::act(const Vector& x, const Matrix& g) const {
  if (!data_.base.act) return x;
  return data_.base.act(x, g);
}

Vector CartanModel::join(const Vector& u, const Vector& alpha) const {
  Vector out(fiber_dim());
  out << u, alpha;
  return out;
}

Vector AlgebroidElement::fiber() const {
  Vector out(u.size() + alpha.size());
  out << u, alpha;
  return out;
}

AlgebroidElement AlgebroidElement::from_fiber(const CartanModel& model, const Vector& x,
                                              const Vector& fiber) {
  if (fiber.size() != model.fiber_dim()) {
    throw RepresentationError("fiber vector has the wrong size");
  }
  return {x, model.frame_part(fiber), model.algebra_part(fiber)};
}

AlgebroidElement action_morphism(const CartanModel& model, const Vector& x, const Vector& alpha) {
  if (alpha.size() != model.algebra_dim()) {
    throw RepresentationError("algebra coefficient vector has the wrong size");
  }
  return {x, Vector::Zero(model.frame_dim()), alpha};
}

Vector anchor(const CartanModel& model, const AlgebroidElement& e) {
  model.require_domain(e.x);
  if (e.u.size() != model.frame_dim()) throw RepresentationError("frame component has the wrong size");
  return model.coupling(e.x, e.u) + model.psi(e.x, e.alpha);
}

Vector anchor(const CartanModel& model, const Vector& x, const Vector& fiber) {
  return anchor(model, AlgebroidElement::from_fiber(model, x, fiber));
}

Matrix anchor_matrix(const CartanModel& model, const Vector& x) {
  model.require_domain(x);
  const int k = model.fiber_dim();
  Matrix out(model.base_dim(), k);
  for (int j = 0; j < k; ++j) {
    out.col(j) = anchor(model, x, Vector::Unit(k, j));
  }
  return out;
}

Vector bracket_constant(const CartanModel& model, const Vector& x, const Vector& e1,
                        const Vector& e2) {
  model.require_domain(x);
  if (e1.size() != model.fiber_dim() || e2.size() != model.fiber_dim()) {
    throw RepresentationError("fiber vector has the wrong size");
  }
  const StructureGroup& g = model.group();
  const Vector u = model.frame_part(e1);
  const Vector alpha = model.algebra_part(e1);
  const Vector v = model.frame_part(e2);
  const Vector beta = model.algebra_part(e2);
  const Vector frame = g.act(alpha, v) - g.act(beta, u) - model.torsion(x, u, v);
  const Vector algebra = g.bracket(alpha, beta) - model.curvature(x, u, v);
  return model.join(frame, algebra);
}

Section constant_section(Vector fiber) {
  return [fiber = std::move(fiber)](const Vector&) { return fiber; };
}

BracketEstimate estimate_bracket_sections(const CartanModel& model, const Section& s1,
                                          const Section& s2, const Vector& x,
                                          const FiniteDifference& fd) {
  const Vector a = s1(x);
  const Vector b = s2(x);
  const Vector algebraic = bracket_constant(model, x, a, b);
  const DerivativeEstimate d2 = estimate_directional_derivative(s2, x, anchor(model, x, a), fd);
  const DerivativeEstimate d1 = estimate_directional_derivative(s1, x, anchor(model, x, b), fd);
  BracketEstimate out;
  out.coarse = d2.coarse - d1.coarse;
  out.fine = d2.fine - d1.fine;
  out.value = algebraic + d2.value - d1.value;
  out.gap = (out.coarse - out.fine).norm();
  return out;
}

Vector bracket_sections(const CartanModel& model, const Section& s1, const Section& s2,
                        const Vector& x, const FiniteDifference& fd) {
  BracketEstimate est = estimate_bracket_sections(model, s1, s2, x, fd);
  const double scale = std::max(1.0, est.value.norm());
  if (est.gap > fd.richardson_tol * scale) {
    std::ostringstream msg;
    msg << "Leibniz derivative terms at h=" << fd.step << " and h/2 disagree by " << est.gap;
    throw StepSizeError(msg.str());
  }
  return std::move(est.value);
}

Vector sample_point(const CartanModel& model, Rng& rng) {
  const BaseManifold& base = model.base();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vector x(base.dim);
    for (int i = 0; i < base.dim; ++i) {
      x[i] = base.sample_lo[i] + unit(rng) * (base.sample_hi[i] - base.sample_lo[i]);
    }
    if (model.contains(x)) return x;
  }
  throw DomainError("could not sample a point inside the domain of '" + model.name() + "'");
}

Vector sample_fiber(const CartanModel& model, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector out(model.fiber_dim());
  for (int i = 0; i < out.size(); ++i) out[i] = normal(rng);
  return out;
}

}  // namespace cartan
