#include "cartan/metric_analysis.hpp"

#include <cmath>
#include <sstream>

#include "cartan/errors.hpp"

namespace cartan {
namespace {

void require_metric_type(const Splitting& split, const Vector& x) {
  const CartanModel& model = split.model();
  if (!model.group().antisymmetric_basis()) {
    throw TypeError("leaf metric needs a metric-type model: structure algebra is not in so(n)");
  }
  const int n = model.frame_dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (model.torsion(x, Vector::Unit(n, i), Vector::Unit(n, j)).norm() > 1e-12) {
        throw TypeError("leaf metric needs a metric-type model: torsion does not vanish");
      }
    }
  }
}

double eval_poly(const std::vector<double>& c, double k) {
  double out = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) out = out * k + *it;
  return out;
}

int degree(const std::vector<double>& c) {
  for (int d = static_cast<int>(c.size()) - 1; d >= 0; --d) {
    if (c[d] != 0.0) return d;
  }
  return -1;
}

EndBehaviour classify_end(const ProfileEnd& end, int deg) {
  if (end.infinite) return deg > 2 ? EndBehaviour::finite_infinite_end : EndBehaviour::complete_end;
  if (end.multiplicity >= 2) return EndBehaviour::complete_end;
  return end.included ? EndBehaviour::closes_smoothly : EndBehaviour::finite_simple_root;
}

std::string describe(const char* side, const ProfileEnd& end, EndBehaviour b) {
  std::ostringstream msg;
  msg << side << " end ";
  if (end.infinite) {
    msg << (end.value < 0 ? "-inf" : "+inf");
  } else {
    msg << "K=" << end.value << " (root of multiplicity " << end.multiplicity << ")";
  }
  msg << ": " << to_string(b);
  return msg.str();
}

/// Sum of dK/(2 sqrt p) over successive decades towards one end.
std::vector<double> decade_increments(const ProfileCurve& curve, const ProfileEnd& end,
                                      double inner, double direction, double cutoff) {
  std::vector<double> out;
  const int decades = static_cast<int>(std::lround(std::log10(cutoff)));
  for (int k = 0; k < decades; ++k) {
    // Distances from the end (finite) or from `inner` (infinite) spanning one decade.
    const double lo = end.infinite ? std::pow(10.0, k) : std::pow(10.0, -(k + 1));
    const double hi = end.infinite ? std::pow(10.0, k + 1) : std::pow(10.0, -k);
    const Integrand1D f = [&](double u) {
      const double dist = std::exp(u);
      const double kk = end.infinite ? inner + direction * dist : end.value - direction * dist;
      const double p = eval_poly(curve.coeffs, kk);
      Vector v(1);
      v[0] = p > 0.0 ? dist / (2.0 * std::sqrt(p)) : 0.0;
      return v;
    };
    out.push_back(integrate_1d(f, std::log(lo), std::log(hi), {1e-14, 1e-10, 200}).value[0]);
  }
  return out;
}

bool looks_finite(const std::vector<double>& inc) {
  // Convergent tails shrink geometrically per decade; logarithmic divergence keeps them level.
  if (inc.size() < 2) return true;
  const double last = inc.back(), prev = inc[inc.size() - 2];
  return last < 0.5 * prev;
}

}  // namespace

double leaf_metric(const Splitting& split, const Vector& x, const Vector& v, const Vector& w) {
  require_metric_type(split, x);
  const Matrix sig = split.sigma_matrix(x);
  return (sig * v).dot(split.metric() * (sig * w));
}

Matrix leaf_metric_matrix(const Splitting& split, const Vector& x, const Matrix& frame) {
  require_metric_type(split, x);
  const Matrix lifted = split.sigma_matrix(x) * frame;
  return lifted.transpose() * split.metric() * lifted;
}

std::string to_string(EndBehaviour e) {
  switch (e) {
    case EndBehaviour::closes_smoothly: return "simple root, closes smoothly";
    case EndBehaviour::complete_end: return "infinite length";
    case EndBehaviour::finite_infinite_end: return "unbounded end at finite length (cubic growth)";
    case EndBehaviour::finite_simple_root: return "simple root at finite length";
  }
  return "";
}

CompletenessVerdict completeness_verdict(const ProfileCurve& curve) {
  if (curve.coeffs.empty()) throw UnsupportedError("completeness is decided for polynomial profiles only");
  const int deg = degree(curve.coeffs);
  CompletenessVerdict v;
  v.lower = classify_end(curve.lower, deg);
  v.upper = classify_end(curve.upper, deg);
  auto bad = [](EndBehaviour b) {
    return b == EndBehaviour::finite_infinite_end || b == EndBehaviour::finite_simple_root;
  };
  v.complete = !bad(v.lower) && !bad(v.upper);
  v.reason = describe("lower", curve.lower, v.lower) + "; " + describe("upper", curve.upper, v.upper);
  return v;
}

LengthProbe probe_lengths(const ProfileCurve& curve, double cutoff) {
  if (curve.coeffs.empty()) throw UnsupportedError("completeness is decided for polynomial profiles only");
  LengthProbe probe;
  // Interior reference point for infinite ends.
  const double lo_ref = curve.upper.infinite ? curve.lower.value : curve.upper.value;
  const double hi_ref = curve.lower.infinite ? curve.upper.value : curve.lower.value;
  probe.lower_increments = decade_increments(curve, curve.lower, lo_ref, -1.0, cutoff);
  probe.upper_increments = decade_increments(curve, curve.upper, hi_ref, 1.0, cutoff);
  probe.lower_finite = looks_finite(probe.lower_increments);
  probe.upper_finite = looks_finite(probe.upper_increments);
  return probe;
}

SolutionReport complete_solution_report(const CompletenessVerdict& metric, Verdict g_integrable,
                                        bool simply_connected, const std::string& solution_label) {
  SolutionReport rep;
  rep.solution_label = solution_label;
  std::ostringstream why;
  if (g_integrable != Verdict::yes) {
    why << "leaf is not known to be G-integrable (" << to_string(g_integrable) << ")";
  } else if (!metric.complete) {
    why << "leaf metric is incomplete: " << metric.reason;
  } else {
    rep.complete_solution = true;
    rep.source_fiber = simply_connected;
    why << "G-integrable leaf with complete metric";
    if (simply_connected) why << "; the 1-connected solution is the quotient of a source fiber of the G-integration";
  }
  rep.justification = why.str();
  return rep;
}

}  // namespace cartan
