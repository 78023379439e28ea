#include "cartan/builtins.hpp"

#include "cartan/errors.hpp"
#include "cartan/ek/su21.hpp"

namespace cartan {
namespace {

double param(const Params& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::string& model, const Params& params,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw LookupError("model '" + model + "' has no parameter '" + key + "'");
  }
}

int dimension_param(const Params& params, int fallback) {
  const double n = param(params, "n", fallback);
  if (n < 1 || n != static_cast<int>(n)) throw DimensionError("n must be a positive integer");
  return static_cast<int>(n);
}

/// u0 v1 - u1 v0 style area form on the (i, j) coordinates.
double area(const Vector& u, const Vector& v, int i, int j) { return u[i] * v[j] - u[j] * v[i]; }

// Shared U(1) data for both coordinate systems of the extremal Kahler algebroid.
Vector ek_curvature(double k, const Vector& z, const Vector& w) {
  Vector out(1);
  out[0] = k * (z[1] * w[0] - z[0] * w[1]);
  return out;
}

Vector rotate_inverse(const Vector& x, const Matrix& g, int first) {
  Vector out = x;
  out.segment(first, 2) = g.transpose() * x.segment(first, 2);
  return out;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"trivial", "constant_curvature", "extremal_kahler", "ek_su21"};
}

CartanModel builtin_model(const std::string& name, const Params& params) {
  if (name == "trivial") {
    reject_unknown(name, params, {"n"});
    return trivial_model(dimension_param(params, 2));
  }
  if (name == "constant_curvature") {
    reject_unknown(name, params, {"n", "bianchi_defect"});
    return constant_curvature_model(dimension_param(params, 3), param(params, "bianchi_defect", 0.0));
  }
  if (name == "extremal_kahler") {
    reject_unknown(name, params, {"curvature_scale"});
    return extremal_kahler_model(param(params, "curvature_scale", 1.0));
  }
  if (name == "ek_su21") {
    reject_unknown(name, params, {});
    return ek_su21_model();
  }
  throw LookupError("unknown model '" + name + "'");
}

CartanModel trivial_model(int n) {
  StructureGroup group = StructureGroup::special_orthogonal(n);
  const int m = group.dim();
  CartanData d{.name = "trivial",
               .params = {{"n", n}},
               .group = std::move(group),
               .base = {}};
  d.base.dim = 0;
  d.torsion = [n](const Vector&, const Vector&, const Vector&) { return Vector::Zero(n).eval(); };
  d.curvature = [m](const Vector&, const Vector&, const Vector&) { return Vector::Zero(m).eval(); };
  d.coupling = [](const Vector&, const Vector&) { return Vector::Zero(0).eval(); };
  return CartanModel(std::move(d));
}

CartanModel constant_curvature_model(int n, double bianchi_defect) {
  StructureGroup group = StructureGroup::special_orthogonal(n);
  const int m = group.dim();
  CartanData d{.name = "constant_curvature",
               .params = {{"n", n}, {"bianchi_defect", bianchi_defect}},
               .group = std::move(group),
               .base = {}};
  d.base.dim = 1;
  d.base.coordinate_names = {"x"};
  d.base.sample_lo = Vector::Constant(1, -2.0);
  d.base.sample_hi = Vector::Constant(1, 2.0);
  d.torsion = [n](const Vector&, const Vector&, const Vector&) { return Vector::Zero(n).eval(); };
  d.curvature = [n, m, bianchi_defect](const Vector& x, const Vector& u, const Vector& v) {
    // Coefficient on E_ij = e_i e_j^T - e_j e_i^T, in special_orthogonal order.
    Vector out(m);
    int k = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) out[k++] = x[0] * area(u, v, i, j);
    }
    if (bianchi_defect != 0.0 && n >= 3) out[1] += bianchi_defect * area(u, v, 0, 1);
    return out;
  };
  d.coupling = [](const Vector&, const Vector&) { return Vector::Zero(1).eval(); };
  return CartanModel(std::move(d));
}

CartanModel extremal_kahler_model(double curvature_scale) {
  CartanData d{.name = "extremal_kahler",
               .params = {{"curvature_scale", curvature_scale}},
               .group = StructureGroup::unitary_one(),
               .base = {}};
  d.base.dim = 4;
  d.base.coordinate_names = {"K", "X", "Y", "U"};
  d.base.sample_lo = Vector::Constant(4, -2.0);
  d.base.sample_hi = Vector::Constant(4, 2.0);
  d.base.infinitesimal_action = [](const Vector& x, const Vector& alpha) {
    Vector out(4);
    out << 0.0, alpha[0] * x[2], -alpha[0] * x[1], 0.0;
    return out;
  };
  d.base.act = [](const Vector& x, const Matrix& g) { return rotate_inverse(x, g, 1); };
  d.torsion = [](const Vector&, const Vector&, const Vector&) { return Vector::Zero(2).eval(); };
  d.curvature = [curvature_scale](const Vector& x, const Vector& z, const Vector& w) {
    return ek_curvature(curvature_scale * x[0], z, w);
  };
  d.coupling = [](const Vector& x, const Vector& z) {
    const double k = x[0], tx = x[1], ty = x[2], u = x[3];
    const double re = z[0] * tx + z[1] * ty;  // Re(z conj(T))
    Vector out(4);
    out << -2.0 * re, z[0] * u, z[1] * u, -k * re;
    return out;
  };
  return CartanModel(std::move(d));
}

CartanModel ek_su21_model() {
  CartanData d{.name = "ek_su21", .params = {}, .group = StructureGroup::unitary_one(), .base = {}};
  d.base.dim = 4;
  d.base.coordinate_names = {"a", "b", "u1", "u2"};
  d.base.sample_lo = Vector::Constant(4, -1.0);
  d.base.sample_hi = Vector::Constant(4, 1.0);
  d.base.infinitesimal_action = [](const Vector& x, const Vector& alpha) {
    return (alpha[0] * ek::su21_poisson(x).row(1).transpose()).eval();
  };
  d.base.act = [](const Vector& x, const Matrix& g) { return rotate_inverse(x, g, 2); };
  d.torsion = [](const Vector&, const Vector&, const Vector&) { return Vector::Zero(2).eval(); };
  d.curvature = [](const Vector& x, const Vector& z, const Vector& w) {
    return ek_curvature(1.5 * x[1], z, w);
  };
  d.coupling = [](const Vector& x, const Vector& z) {
    const Matrix pi = ek::su21_poisson(x);
    return (z[0] * pi.row(2).transpose() + z[1] * pi.row(3).transpose()).eval();
  };
  return CartanModel(std::move(d));
}

}  // namespace cartan
