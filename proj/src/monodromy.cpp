#include "cartan/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cartan/errors.hpp"

namespace cartan {

Splitting::Splitting(const CartanModel& model, RankOptions rank)
    : Splitting(model, model.fiber_gram(), rank) {}

Splitting::Splitting(const CartanModel& model, Matrix metric, RankOptions rank)
    : model_(&model), metric_(std::move(metric)), rank_(rank) {
  const int k = model.fiber_dim();
  if (metric_.rows() != k || metric_.cols() != k) throw DimensionError("fiber metric has the wrong size");
  const Eigen::LLT<Matrix> llt(metric_);
  if (llt.info() != Eigen::Success) throw DomainError("fiber metric is not positive definite");
  const Matrix l = llt.matrixL();
  l_inv_t_ = l.transpose().triangularView<Eigen::Upper>().solve(Matrix::Identity(k, k));
}

namespace {

/// Pseudo-inverse by a Jacobi SVD of b zero-padded to a square matrix. Padding
/// adds only zero singular values and lets the SVD skip its QR preconditioner.
template <class Square>
Matrix padded_pinv(const Matrix& b, double threshold, double* smallest) {
  const Eigen::Index n = std::max(b.rows(), b.cols());
  Square sq = Square::Zero(n, n);
  sq.topLeftCorner(b.rows(), b.cols()) = b;
  Eigen::JacobiSVD<Square, Eigen::NoQRPreconditioner> svd(sq, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = threshold * std::max(sv.size() > 0 ? sv[0] : 0.0, 1.0);
  Matrix pinv = Matrix::Zero(b.cols(), b.rows());
  double low = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] <= cut) break;
    pinv.noalias() += svd.matrixV().col(i).head(b.cols()) * (svd.matrixU().col(i).head(b.rows()).transpose() / sv[i]);
    low = sv[i];
  }
  if (smallest != nullptr) *smallest = low;
  return pinv;
}

}  // namespace

Matrix Splitting::sigma_matrix(const Vector& x, double* smallest) const {
  const Matrix b = anchor_matrix(*model_, x) * l_inv_t_;
  const Matrix pinv = padded_pinv<Matrix>(b, rank_.threshold, smallest);
  return l_inv_t_ * pinv;
}

Vector Splitting::sigma(const Vector& x, const Vector& v) const { return sigma_matrix(x) * v; }

Vector splitting_curvature(const Splitting& split, const Vector& x, const Vector& v,
                           const Vector& w, const FiniteDifference& fd) {
  const CartanModel& model = split.model();
  model.require_domain(x);
  const double nv = v.norm(), nw = w.norm();
  if (nv == 0.0 || nw == 0.0) return Vector::Zero(model.fiber_dim());
  double smallest = 0.0;
  const Matrix sig = split.sigma_matrix(x, &smallest);
  if (smallest < 1e-6) {
    std::ostringstream msg;
    msg << "anchor is close to a rank drop at (" << x.transpose() << "); smallest singular value "
        << smallest;
    throw SingularityError(msg.str());
  }
  const Vector vh = v / nv, wh = w / nw;
  const int k = model.fiber_dim(), d = model.base_dim();
  // y -> (sigma_y(dir), rho_y sigma_y(dir)): one finite difference serves both
  // the Lie bracket of the extensions and the derivative terms of the algebroid bracket.
  auto lifted = [&split, &model, k, d](const Vector& dir) -> VectorField {
    return [&split, &model, dir, k, d](const Vector& y) {
      const Vector s = split.sigma(y, dir);
      Vector out(k + d);
      out << s, anchor(model, y, s);
      return out;
    };
  };
  const Vector sv = sig * vh, sw = sig * wh;
  const Vector ev = anchor(model, x, sv), ew = anchor(model, x, sw);
  const Vector dw_v = directional_derivative(lifted(wh), x, ev, fd);
  const Vector dv_w = directional_derivative(lifted(vh), x, ew, fd);
  const Vector lie = dw_v.tail(d) - dv_w.tail(d);
  const Vector bracket = bracket_constant(model, x, sv, sw) + dw_v.head(k) - dv_w.head(k);
  const Vector omega = sig * lie - bracket;
  return nv * nw * omega;
}

std::string to_string(BoundaryClass b) {
  return b == BoundaryClass::g_orbit_boundary ? "g_orbit_boundary" : "contractible_sphere_cycle";
}

Matrix DiskPatch::jacobian_at(double s, double t) const {
  if (jacobian) return jacobian(s, t);
  constexpr double h = 1e-6;
  const Vector ds = (param(s + h, t) - param(s - h, t)) / (2 * h);
  const Vector dt = (param(s, t + h) - param(s, t - h)) / (2 * h);
  Matrix j(ds.size(), 2);
  j << ds, dt;
  return j;
}

DiskPatch restrict_patch(const DiskPatch& patch, double s0, double s1, double t0, double t1) {
  DiskPatch out = patch;
  out.param = [patch, s0, s1, t0, t1](double s, double t) {
    return patch.param(s0 + (s1 - s0) * s, t0 + (t1 - t0) * t);
  };
  out.jacobian = [patch, s0, s1, t0, t1](double s, double t) {
    Matrix j = patch.jacobian_at(s0 + (s1 - s0) * s, t0 + (t1 - t0) * t);
    j.col(0) *= s1 - s0;
    j.col(1) *= t1 - t0;
    return j;
  };
  return out;
}

DiskPatch reverse_patch(const DiskPatch& patch) {
  DiskPatch out = patch;
  out.param = [patch](double s, double t) { return patch.param(1.0 - s, t); };
  out.jacobian = [patch](double s, double t) {
    Matrix j = patch.jacobian_at(1.0 - s, t);
    j.col(0) *= -1.0;
    return j;
  };
  return out;
}

PeriodResult period(const Splitting& split, const DiskPatch& patch, const FlatFrame& frame,
                    const PeriodOptions& opts) {
  const CartanModel& model = split.model();
  const Matrix& g = split.metric();
  int checked = 0;
  const Integrand2D integrand = [&](double s, double t) -> Vector {
    const Vector x = patch.param(s, t);
    const Matrix j = patch.jacobian_at(s, t);
    const Vector omega = splitting_curvature(split, x, j.col(0), j.col(1), opts.fd);
    if (checked < opts.centrality_checks) {
      ++checked;
      const Matrix iso = isotropy_basis(model, x);
      for (int c = 0; c < iso.cols(); ++c) {
        const double br = bracket_constant(model, x, omega, iso.col(c)).norm();
        if (br > opts.centrality_tol * std::max(1.0, omega.norm())) {
          std::ostringstream msg;
          msg << "splitting curvature is not central at (" << x.transpose() << "): |[Omega, k]| = " << br;
          throw CentralityError(msg.str());
        }
      }
    }
    const Matrix f = frame(x);
    const Matrix gram = f.transpose() * g * f;
    return gram.ldlt().solve(f.transpose() * g * omega);
  };
  const QuadResult q = integrate_2d(integrand, 0.0, 1.0, 0.0, 1.0, opts.quad);
  return {q.value, q.error, q.cells, q.evaluations, q.converged};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undecided: return "undecided";
  }
  return "undecided";
}

namespace {

void add_generators(MonodromyReport& rep, const Splitting& split, const LeafCycles& cycles,
                    const std::vector<DiskPatch>& patches, const std::vector<double>& refs,
                    const std::string& source, const MonodromyOptions& opts) {
  for (std::size_t i = 0; i < patches.size(); ++i) {
    const PeriodResult p = period(split, patches[i], cycles.frame, opts.period);
    if (p.value.size() != 1) throw UnsupportedError("period groups are computed for rank-one isotropy only");
    Generator gen;
    gen.source = source;
    gen.label = patches[i].label;
    gen.value = p.value[0];
    gen.error = p.error;
    if (i < refs.size()) {
      gen.reference = refs[i];
      gen.reference_agrees =
          std::fabs(gen.value - refs[i]) <= std::max(opts.agree_rel * std::fabs(refs[i]), 10.0 * p.error);
    }
    rep.generators.push_back(gen);
  }
}

/// Rank-one period group: discrete iff every generator is a rational multiple of the base.
void decide(MonodromyReport& rep, std::size_t base_index, std::size_t ratio_index,
            const MonodromyOptions& opts) {
  rep.used_reference = !rep.generators.empty();
  for (const Generator& g : rep.generators) rep.used_reference = rep.used_reference && g.reference_agrees;
  auto value = [&](const Generator& g) { return rep.used_reference ? *g.reference : g.value; };
  auto error = [&](const Generator& g) { return rep.used_reference ? 0.0 : g.error; };

  if (rep.generators.size() <= 1) {
    rep.discrete = Verdict::yes;  // a cyclic subgroup of R is discrete
    return;
  }
  const Generator& base = rep.generators[base_index];
  const double b = value(base);
  if (b == 0.0) {
    rep.discrete = Verdict::undecided;
    return;
  }
  bool all_rational = true, any_irrational = false;
  for (std::size_t i = 0; i < rep.generators.size(); ++i) {
    if (i == base_index) continue;
    const Generator& g = rep.generators[i];
    const double r = value(g) / b;
    const double unc = error(g) / std::fabs(b) + std::fabs(value(g)) * error(base) / (b * b);
    const RationalityVerdict v = test_rationality(r, opts.denominator_bound, opts.rationality_tol, unc);
    if (i == ratio_index) {
      rep.ratio = r;
      rep.rationality = v;
    }
    all_rational = all_rational && v.kind == Rationality::rational;
    any_irrational = any_irrational || v.kind == Rationality::irrational;
  }
  rep.discrete = all_rational ? Verdict::yes : (any_irrational ? Verdict::no : Verdict::undecided);
}

MonodromyReport blank_report(const std::string& kind, const LeafCycles& cycles,
                             const MonodromyOptions& opts) {
  MonodromyReport rep;
  rep.group_kind = kind;
  rep.leaf = cycles.leaf;
  rep.quad_tol = opts.period.quad.rel_tol;
  rep.denominator_bound = opts.denominator_bound;
  rep.rationality_tol = opts.rationality_tol;
  return rep;
}

}  // namespace

MonodromyReport monodromy(const Splitting& split, const LeafCycles& cycles,
                          const MonodromyOptions& opts) {
  MonodromyReport rep = blank_report("monodromy", cycles, opts);
  if (cycles.spheres.empty()) {
    rep.discrete = Verdict::yes;
    rep.integrable = Verdict::yes;
    rep.method = "pi_2(L) = 1: trivial monodromy";
    return rep;
  }
  add_generators(rep, split, cycles, cycles.spheres, cycles.reference_spheres, "sphere", opts);
  decide(rep, 0, 1, opts);
  rep.integrable = rep.discrete;
  rep.method = "sphere periods of the metric splitting curvature";
  return rep;
}

MonodromyReport g_monodromy(const Splitting& split, const LeafCycles& cycles,
                            const MonodromyOptions& opts) {
  MonodromyReport rep = blank_report("g_monodromy", cycles, opts);
  if (cycles.topologically_trivial) {
    rep.discrete = Verdict::yes;
    rep.integrable = Verdict::yes;
    rep.g_splitting = true;
    rep.method = "topological: " + cycles.topology_note;
    return rep;
  }
  const CartanModel& model = split.model();
  if (cycles.orbit_point.size() == model.base_dim()) {
    const Matrix sig = split.sigma_matrix(cycles.orbit_point);
    for (int j = 0; j < model.algebra_dim(); ++j) {
      const Vector alpha = Vector::Unit(model.algebra_dim(), j);
      const Vector lifted = sig * model.psi(cycles.orbit_point, alpha);
      const Vector expected = action_morphism(model, cycles.orbit_point, alpha).fiber();
      rep.g_splitting_residual = std::max(rep.g_splitting_residual, (lifted - expected).norm());
    }
    rep.g_splitting = rep.g_splitting_residual <= opts.g_splitting_tol;
  }
  add_generators(rep, split, cycles, cycles.spheres, cycles.reference_spheres, "sphere", opts);
  const std::size_t first_disk = rep.generators.size();
  add_generators(rep, split, cycles, cycles.orbit_disks, cycles.reference_disks, "orbit_disk", opts);
  if (!rep.g_splitting) {
    rep.discrete = Verdict::undecided;
    rep.integrable = Verdict::undecided;
    rep.method = "undecided by this method: the splitting is not a G-splitting along the orbit";
    return rep;
  }
  const bool has_disks = rep.generators.size() > first_disk;
  decide(rep, has_disks ? first_disk : 0, has_disks ? first_disk + 1 : 1, opts);
  rep.integrable = rep.discrete;
  rep.method = rep.used_reference
                   ? "rational dependence of closed-form periods confirmed by quadrature"
                   : "rational dependence of quadrature periods";
  return rep;
}

}  // namespace cartan
