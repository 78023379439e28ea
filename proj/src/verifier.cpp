#include "cartan/verifier.hpp"

#include <algorithm>
#include <array>

#include "cartan/errors.hpp"

namespace cartan {
namespace {

using Bilinear = std::function<Vector(const Vector&, const Vector&, const Vector&)>;

/// y -> map(y)(u, v) as a vector field for directional derivatives.
VectorField frozen(const Bilinear& map, const Vector& u, const Vector& v) {
  return [&map, u, v](const Vector& y) { return map(y, u, v); };
}

Vector derivative_along(const Bilinear& map, const Vector& x, const Vector& dir, const Vector& u,
                        const Vector& v, const FiniteDifference& fd) {
  return directional_derivative(frozen(map, u, v), x, dir, fd);
}

Bilinear torsion_of(const CartanModel& m) {
  return [&m](const Vector& y, const Vector& u, const Vector& v) { return m.torsion(y, u, v); };
}

Bilinear curvature_of(const CartanModel& m) {
  return [&m](const Vector& y, const Vector& u, const Vector& v) { return m.curvature(y, u, v); };
}

struct Split {
  Vector u;
  Vector alpha;
};

Split split(const CartanModel& m, const Vector& e) { return {m.frame_part(e), m.algebra_part(e)}; }

double norm_or_zero(const Vector& v) { return v.size() == 0 ? 0.0 : v.norm(); }

}  // namespace

double default_tolerance(const CartanModel& model) { return model.closed_form() ? 1e-8 : 1e-6; }

BianchiResidual check_bianchi(const CartanModel& model, const Vector& x, const Vector& u,
                              const Vector& v, const Vector& w, const FiniteDifference& fd) {
  model.require_domain(x);
  const StructureGroup& g = model.group();
  const Bilinear c = torsion_of(model);
  const Bilinear r = curvature_of(model);
  BianchiResidual out{Vector::Zero(model.frame_dim()), Vector::Zero(model.algebra_dim())};
  const std::array<const Vector*, 3> t{&u, &v, &w};
  for (int k = 0; k < 3; ++k) {
    const Vector& a = *t[k];
    const Vector& b = *t[(k + 1) % 3];
    const Vector& e = *t[(k + 2) % 3];
    const Vector flow = model.coupling(x, a);
    const Vector cab = model.torsion(x, a, b);
    out.first += derivative_along(c, x, flow, b, e, fd) + model.torsion(x, cab, e) -
                 g.act(model.curvature(x, a, b), e);
    out.second += derivative_along(r, x, flow, b, e, fd) + model.curvature(x, cab, e);
  }
  return out;
}

Vector check_jacobi(const CartanModel& model, const Vector& x, const Vector& e1, const Vector& e2,
                    const Vector& e3, const FiniteDifference& fd) {
  model.require_domain(x);
  const std::array<const Vector*, 3> t{&e1, &e2, &e3};
  Vector out = Vector::Zero(model.fiber_dim());
  for (int k = 0; k < 3; ++k) {
    const Vector a = *t[k];
    const Vector b = *t[(k + 1) % 3];
    const Section inner = [&model, a, b](const Vector& y) { return bracket_constant(model, y, a, b); };
    out += bracket_sections(model, inner, constant_section(*t[(k + 2) % 3]), x, fd);
  }
  return out;
}

Vector check_anchor_compatibility(const CartanModel& model, const Vector& x, const Vector& e1,
                                  const Vector& e2, const FiniteDifference& fd) {
  const VectorField v1 = [&model, e1](const Vector& y) { return anchor(model, y, e1); };
  const VectorField v2 = [&model, e2](const Vector& y) { return anchor(model, y, e2); };
  return anchor(model, x, bracket_constant(model, x, e1, e2)) - vector_field_bracket(v1, v2, x, fd);
}

double StructureConditions::max() const {
  return std::max({lie_jacobi, representation, equivariance, bianchi});
}

StructureConditions structure_conditions(const CartanModel& model, const Vector& x,
                                         const Vector& e1, const Vector& e2, const Vector& e3,
                                         const FiniteDifference& fd) {
  model.require_domain(x);
  const StructureGroup& g = model.group();
  const std::array<Split, 3> s{split(model, e1), split(model, e2), split(model, e3)};
  StructureConditions out;

  Vector jac = Vector::Zero(model.algebra_dim());
  for (int k = 0; k < 3; ++k) {
    const Vector& a = s[k].alpha;
    const Vector& b = s[(k + 1) % 3].alpha;
    const Vector& c = s[(k + 2) % 3].alpha;
    jac += g.bracket(g.bracket(a, b), c);
  }
  out.lie_jacobi = norm_or_zero(jac);

  const Bilinear c = torsion_of(model);
  const Bilinear r = curvature_of(model);
  for (int k = 0; k < 3; ++k) {
    const Vector& a = s[k].alpha;
    const Vector& b = s[(k + 1) % 3].alpha;
    const Vector& w = s[(k + 2) % 3].u;
    const Vector rep = g.act(g.bracket(a, b), w) - g.act(a, g.act(b, w)) + g.act(b, g.act(a, w));
    out.representation = std::max(out.representation, norm_or_zero(rep));

    // One algebra part against the other two frame parts.
    const Vector& u = s[(k + 1) % 3].u;
    const Vector& v = s[(k + 2) % 3].u;
    const Vector dir = model.psi(x, a);
    const Vector ruv = model.curvature(x, u, v);
    const Vector req = derivative_along(r, x, dir, u, v, fd) + g.bracket(a, ruv) -
                       model.curvature(x, g.act(a, u), v) - model.curvature(x, u, g.act(a, v));
    const Vector ceq = derivative_along(c, x, dir, u, v, fd) + g.act(a, model.torsion(x, u, v)) -
                       model.torsion(x, g.act(a, u), v) - model.torsion(x, u, g.act(a, v));
    out.equivariance = std::max({out.equivariance, norm_or_zero(req), norm_or_zero(ceq)});
  }

  const BianchiResidual b = check_bianchi(model, x, s[0].u, s[1].u, s[2].u, fd);
  out.bianchi = std::max(norm_or_zero(b.first), norm_or_zero(b.second));
  return out;
}

EquivarianceSample finite_equivariance(const CartanModel& model, const Vector& x, const Matrix& g,
                                       const Vector& u, const Vector& v,
                                       const FiniteDifference& fd) {
  model.require_domain(x);
  const StructureGroup& grp = model.group();
  const Matrix ginv = g.inverse();
  const Vector xg = model.act(x, g);
  const Vector gu = ginv * u;
  const Vector gv = ginv * v;
  EquivarianceSample out;
  out.c = model.torsion(xg, gu, gv) - ginv * model.torsion(x, u, v);
  out.r = model.curvature(xg, gu, gv) - grp.adjoint(ginv, model.curvature(x, u, v));
  const VectorField right = [&model, &g](const Vector& y) { return model.act(y, g); };
  out.f = model.coupling(xg, gu) - directional_derivative(right, x, model.coupling(x, u), fd);
  return out;
}

EquivarianceSample infinitesimal_equivariance(const CartanModel& model, const Vector& x,
                                              const Vector& alpha, const Vector& u,
                                              const Vector& v, const FiniteDifference& fd) {
  model.require_domain(x);
  const StructureGroup& g = model.group();
  const Vector dir = model.psi(x, alpha);
  const Vector au = g.act(alpha, u);
  const Vector av = g.act(alpha, v);
  EquivarianceSample out;
  out.c = derivative_along(torsion_of(model), x, dir, u, v, fd) +
          g.act(alpha, model.torsion(x, u, v)) - model.torsion(x, au, v) - model.torsion(x, u, av);
  out.r = derivative_along(curvature_of(model), x, dir, u, v, fd) +
          g.bracket(alpha, model.curvature(x, u, v)) - model.curvature(x, au, v) -
          model.curvature(x, u, av);
  const VectorField fu = [&model, u](const Vector& y) { return model.coupling(y, u); };
  const VectorField psi = [&model, alpha](const Vector& y) { return model.psi(y, alpha); };
  out.f = directional_derivative(fu, x, dir, fd) - model.coupling(x, au) -
          directional_derivative(psi, x, model.coupling(x, u), fd);
  return out;
}

EquivarianceResiduals check_equivariance(const CartanModel& model, const VerifyOptions& opts) {
  Rng rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  EquivarianceResiduals out;
  const int n = model.frame_dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  auto frame = [&] {
    Vector u(n);
    for (int i = 0; i < n; ++i) u[i] = normal(rng);
    return u;
  };
  for (int p = 0; p < opts.points; ++p) {
    const Vector x = sample_point(model, rng);
    const Vector u = frame();
    const Vector v = frame();
    for (const Matrix& g : model.group().sample_elements(rng, opts.group_samples)) {
      const EquivarianceSample s = finite_equivariance(model, x, g, u, v, opts.fd);
      out.finite_c = std::max(out.finite_c, norm_or_zero(s.c));
      out.finite_r = std::max(out.finite_r, norm_or_zero(s.r));
      out.finite_f = std::max(out.finite_f, norm_or_zero(s.f));
    }
    if (model.algebra_dim() > 0) {
      const EquivarianceSample s =
          infinitesimal_equivariance(model, x, model.group().sample_algebra(rng), u, v, opts.fd);
      out.infinitesimal_c = std::max(out.infinitesimal_c, norm_or_zero(s.c));
      out.infinitesimal_r = std::max(out.infinitesimal_r, norm_or_zero(s.r));
      out.infinitesimal_f = std::max(out.infinitesimal_f, norm_or_zero(s.f));
    }
  }
  return out;
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

double VerificationReport::fraction_above(double threshold) const {
  if (point_max_residual.empty()) return 0.0;
  const auto count = std::count_if(point_max_residual.begin(), point_max_residual.end(),
                                   [threshold](double r) { return r > threshold; });
  return static_cast<double>(count) / static_cast<double>(point_max_residual.size());
}

VerificationReport verify_model(const CartanModel& model, const VerifyOptions& opts) {
  VerificationReport rep;
  rep.model = model.name();
  rep.seed = opts.seed;
  rep.tolerance = opts.tolerance > 0.0 ? opts.tolerance : default_tolerance(model);
  Rng rng(opts.seed);
  for (int p = 0; p < opts.points; ++p) {
    const Vector x = sample_point(model, rng);
    double point_max = 0.0;
    for (int t = 0; t < opts.triples; ++t) {
      const Vector e1 = sample_fiber(model, rng);
      const Vector e2 = sample_fiber(model, rng);
      const Vector e3 = sample_fiber(model, rng);
      const double jac = norm_or_zero(check_jacobi(model, x, e1, e2, e3, opts.fd));
      const BianchiResidual b =
          check_bianchi(model, x, model.frame_part(e1), model.frame_part(e2), model.frame_part(e3), opts.fd);
      const double anc = norm_or_zero(check_anchor_compatibility(model, x, e1, e2, opts.fd));
      const StructureConditions cond = structure_conditions(model, x, e1, e2, e3, opts.fd);
      rep.jacobi_max_residual = std::max(rep.jacobi_max_residual, jac);
      rep.bianchi1_max_residual = std::max(rep.bianchi1_max_residual, norm_or_zero(b.first));
      rep.bianchi2_max_residual = std::max(rep.bianchi2_max_residual, norm_or_zero(b.second));
      rep.anchor_max_residual = std::max(rep.anchor_max_residual, anc);
      point_max = std::max({point_max, jac, norm_or_zero(b.first), norm_or_zero(b.second), anc});
      if ((jac < rep.tolerance) != (cond.max() < rep.tolerance)) ++rep.condition_disagreements;
      ++rep.sample_count;
    }
    rep.point_max_residual.push_back(point_max);
  }
  rep.equivariance = check_equivariance(model, opts);

  auto add = [&rep](std::string name, double residual) {
    rep.checks.push_back({std::move(name), residual, rep.tolerance, residual < rep.tolerance});
  };
  add("jacobi", rep.jacobi_max_residual);
  add("bianchi1", rep.bianchi1_max_residual);
  add("bianchi2", rep.bianchi2_max_residual);
  add("anchor", rep.anchor_max_residual);
  add("equivariance_c", rep.equivariance.finite_c);
  add("equivariance_R", rep.equivariance.finite_r);
  add("equivariance_F", rep.equivariance.finite_f);
  add("equivariance_c_infinitesimal", rep.equivariance.infinitesimal_c);
  add("equivariance_R_infinitesimal", rep.equivariance.infinitesimal_r);
  add("equivariance_F_infinitesimal", rep.equivariance.infinitesimal_f);
  return rep;
}

Matrix complex_structure(int n) {
  if (n % 2 != 0) throw DimensionError("a complex structure needs even n");
  Matrix j = Matrix::Zero(n, n);
  for (int k = 0; k < n; k += 2) {
    j(k + 1, k) = 1.0;
    j(k, k + 1) = -1.0;
  }
  return j;
}

double symplectic_residual(const CartanModel& model, const VerifyOptions& opts) {
  const int n = model.frame_dim();
  const Matrix omega = complex_structure(n).transpose();  // Omega(u,v) = <J u, v>
  Rng rng(opts.seed ^ 0x5bd1e995ULL);
  double worst = 0.0;
  for (int p = 0; p < opts.points; ++p) {
    const Vector x = sample_point(model, rng);
    for (int t = 0; t < opts.triples; ++t) {
      const Vector u = model.frame_part(sample_fiber(model, rng));
      const Vector v = model.frame_part(sample_fiber(model, rng));
      const Vector w = model.frame_part(sample_fiber(model, rng));
      const double s = model.torsion(x, u, v).dot(omega * w) +
                       model.torsion(x, v, w).dot(omega * u) + model.torsion(x, w, u).dot(omega * v);
      worst = std::max(worst, std::fabs(s));
    }
  }
  return worst;
}

double nijenhuis_residual(const CartanModel& model, const VerifyOptions& opts) {
  const int n = model.frame_dim();
  const Matrix j = complex_structure(n);
  Rng rng(opts.seed ^ 0x27d4eb2fULL);
  double worst = 0.0;
  for (int p = 0; p < opts.points; ++p) {
    const Vector x = sample_point(model, rng);
    for (int t = 0; t < opts.triples; ++t) {
      const Vector u = model.frame_part(sample_fiber(model, rng));
      const Vector v = model.frame_part(sample_fiber(model, rng));
      const Vector iu = j * u;
      const Vector iv = j * v;
      const Vector nij = -model.torsion(x, iu, iv) + j * model.torsion(x, iu, v) +
                         j * model.torsion(x, u, iv) + model.torsion(x, u, v);
      worst = std::max(worst, norm_or_zero(nij));
    }
  }
  return worst;
}

GeometricType classify_type(const CartanModel& model, const VerifyOptions& opts) {
  GeometricType t;
  const double tol = opts.tolerance > 0.0 ? opts.tolerance : default_tolerance(model);
  const StructureGroup& g = model.group();
  const int n = model.frame_dim();

  Rng rng(opts.seed ^ 0x85ebca6bULL);
  double torsion_max = 0.0;
  for (int p = 0; p < opts.points; ++p) {
    const Vector x = sample_point(model, rng);
    const Vector u = model.frame_part(sample_fiber(model, rng));
    const Vector v = model.frame_part(sample_fiber(model, rng));
    torsion_max = std::max(torsion_max, norm_or_zero(model.torsion(x, u, v)));
  }
  const bool orthogonal = g.antisymmetric_basis();
  t.metric = orthogonal && torsion_max < tol;
  t.evidence.emplace_back("torsion", torsion_max);

  if (n % 2 == 0) {
    const Matrix j = complex_structure(n);
    const Matrix omega = j.transpose();
    double sp = 0.0, cx = 0.0;
    for (const Matrix& e : g.basis()) {
      sp = std::max(sp, (e.transpose() * omega + omega * e).norm());
      cx = std::max(cx, (e * j - j * e).norm());
    }
    t.evidence.emplace_back("symplectic_algebra", sp);
    t.evidence.emplace_back("complex_algebra", cx);
    t.almost_symplectic = sp < 1e-12;
    t.almost_complex = cx < 1e-12;
    if (t.almost_symplectic) {
      const double r = symplectic_residual(model, opts);
      t.evidence.emplace_back("cyclic_torsion", r);
      t.symplectic = r < tol;
    }
    if (t.almost_complex) {
      const double r = nijenhuis_residual(model, opts);
      t.evidence.emplace_back("nijenhuis", r);
      t.complex = r < tol;
    }
  }
  t.almost_hermitian = orthogonal && t.almost_complex;
  t.kahler = t.almost_hermitian && t.metric && t.symplectic && t.complex;
  return t;
}

}  // namespace cartan
