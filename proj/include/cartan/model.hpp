#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cartan/group.hpp"
#include "cartan/numdiff.hpp"
#include "cartan/types.hpp"

namespace cartan {

/// The G-manifold X, realized as an open subset of R^d with global coordinates.
struct BaseManifold {
  int dim = 0;
  std::vector<std::string> coordinate_names;
  std::function<bool(const Vector&)> contains;
  /// psi(x, alpha): infinitesimal right action, linear in alpha.
  std::function<Vector(const Vector&, const Vector&)> infinitesimal_action;
  /// x . g for g in G (matrix form).
  std::function<Vector(const Vector&, const Matrix&)> act;
  /// Box used when sampling generic points for verification.
  Vector sample_lo;
  Vector sample_hi;
};

/// Cartan data (G, X, c, R, F) in canonical form. Maps take the base point first;
/// the torsion returns R^n vectors and the curvature returns algebra coefficients.
struct CartanData {
  std::string name;
  std::map<std::string, double> params;
  StructureGroup group;
  BaseManifold base;
  std::function<Vector(const Vector&, const Vector&, const Vector&)> torsion{};
  std::function<Vector(const Vector&, const Vector&, const Vector&)> curvature{};
  std::function<Vector(const Vector&, const Vector&)> coupling{};
  /// True when c, R, F are closed-form (tighter default tolerance applies).
  bool closed_form = true;
};

/// Immutable G-structure algebroid A = X x (R^n + g) in canonical form.
class CartanModel {
 public:
  explicit CartanModel(CartanData data);

  const std::string& name() const { return data_.name; }
  const std::map<std::string, double>& params() const { return data_.params; }
  const StructureGroup& group() const { return data_.group; }
  const BaseManifold& base() const { return data_.base; }
  bool closed_form() const { return data_.closed_form; }

  int frame_dim() const { return data_.group.frame_dim(); }
  int algebra_dim() const { return data_.group.dim(); }
  int fiber_dim() const { return frame_dim() + algebra_dim(); }
  int base_dim() const { return data_.base.dim; }

  bool contains(const Vector& x) const;
  /// Throws DomainError unless x is a point of X.
  void require_domain(const Vector& x) const;

  Vector torsion(const Vector& x, const Vector& u, const Vector& v) const;
  Vector curvature(const Vector& x, const Vector& u, const Vector& v) const;
  Vector coupling(const Vector& x, const Vector& u) const;
  Vector psi(const Vector& x, const Vector& alpha) const;
  Vector act(const Vector& x, const Matrix& g) const;

  /// Fiber metric tilde K_A = <u,v> + tr(alpha^T beta)/2, as a Gram matrix.
  const Matrix& fiber_gram() const { return gram_; }

  Vector frame_part(const Vector& fiber) const { return fiber.head(frame_dim()); }
  Vector algebra_part(const Vector& fiber) const { return fiber.tail(algebra_dim()); }
  Vector join(const Vector& u, const Vector& alpha) const;

 private:
  CartanData data_;
  Matrix gram_;
};

/// A fiber element (x; u, alpha) of A.
struct AlgebroidElement {
  Vector x;
  Vector u;
  Vector alpha;

  /// Tautological projection.
  const Vector& theta() const { return u; }
  /// Connection projection.
  const Vector& omega() const { return alpha; }
  Vector fiber() const;

  static AlgebroidElement from_fiber(const CartanModel& model, const Vector& x,
                                     const Vector& fiber);
};

/// Action morphism i(x, alpha) = (x; 0, alpha).
AlgebroidElement action_morphism(const CartanModel& model, const Vector& x, const Vector& alpha);

/// rho(u, alpha) = F(u) + psi(alpha).
Vector anchor(const CartanModel& model, const AlgebroidElement& e);
Vector anchor(const CartanModel& model, const Vector& x, const Vector& fiber);
/// d x (n + dim g) matrix of the anchor at x.
Matrix anchor_matrix(const CartanModel& model, const Vector& x);

/// Bracket of constant sections:
/// (alpha v - beta u - c(u,v), [alpha,beta] - R(u,v)).
Vector bracket_constant(const CartanModel& model, const Vector& x, const Vector& e1,
                        const Vector& e2);

/// A section of A: base point -> fiber coefficients.
using Section = std::function<Vector(const Vector&)>;

Section constant_section(Vector fiber);

struct BracketEstimate {
  Vector value;
  Vector coarse;  // derivative terms at h
  Vector fine;    // derivative terms at h/2
  double gap = 0.0;
};

/// Bracket of arbitrary sections by the Leibniz rule:
/// [s1, s2](x) = C_x(s1, s2) + Ds2[rho(s1)] - Ds1[rho(s2)].
BracketEstimate estimate_bracket_sections(const CartanModel& model, const Section& s1,
                                          const Section& s2, const Vector& x,
                                          const FiniteDifference& fd = {});
/// As above; throws StepSizeError on Richardson disagreement.
Vector bracket_sections(const CartanModel& model, const Section& s1, const Section& s2,
                        const Vector& x, const FiniteDifference& fd = {});

/// Draw a generic point from the model's sampling box.
Vector sample_point(const CartanModel& model, Rng& rng);
Vector sample_fiber(const CartanModel& model, Rng& rng);

}  // namespace cartan
