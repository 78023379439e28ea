#pragma once

#include <map>
#include <string>
#include <vector>

#include "cartan/model.hpp"

namespace cartan {

using Params = std::map<std::string, double>;

/// Built-in models by name:
///   trivial             n (default 2)
///   constant_curvature  n (default 3), bianchi_defect (default 0)
///   extremal_kahler     curvature_scale (default 1)
///   ek_su21             (none)
/// Throws LookupError for unknown names or parameters.
CartanModel builtin_model(const std::string& name, const Params& params = {});

std::vector<std::string> builtin_names();

CartanModel trivial_model(int n);
/// X = R, G = SO(n) acting trivially, c = 0, F = 0,
/// R(x)(u,v)w = x(<w,v>u - <w,u>v). A nonzero `bianchi_defect` adds
/// eps * (u0 v1 - u1 v0) E_02, which breaks the first Bianchi identity (n >= 3).
CartanModel constant_curvature_model(int n, double bianchi_defect = 0.0);
/// X = R^4 with coordinates (K, X, Y, U), T = X + iY, G = U(1).
/// `curvature_scale` multiplies R (1 is the genuine model).
CartanModel extremal_kahler_model(double curvature_scale = 1.0);
/// The same algebroid on the su(2,1) transversal with coordinates (a, b, u1, u2);
/// the anchor is the Poisson vector field of du1, du2, db.
CartanModel ek_su21_model();

}  // namespace cartan
