#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cartan/monodromy.hpp"

namespace cartan {

/// K_L(v, w) = K_A(sigma v, sigma w) for leaf-tangent v, w. Throws TypeError
/// unless the model is of metric type at x (G in O(n), c = 0).
double leaf_metric(const Splitting& split, const Vector& x, const Vector& v, const Vector& w);
/// Gram matrix of the columns of `frame` (d x r tangent vectors) under K_L.
Matrix leaf_metric_matrix(const Splitting& split, const Vector& x, const Matrix& frame);

/// One end of a profile interval: a root of p of given multiplicity, or an infinite end.
struct ProfileEnd {
  double value = 0.0;
  bool infinite = false;
  int multiplicity = 0;  // for finite ends
  bool included = true;  // whether the root itself belongs to the leaf
};

/// Profile curve K in I with length element dK / (2 sqrt(p(K))), p polynomial.
struct ProfileCurve {
  std::vector<double> coeffs;  // ascending powers; empty means not polynomial
  ProfileEnd lower;
  ProfileEnd upper;
};

enum class EndBehaviour {
  closes_smoothly,       // simple root, included: a pole of the surface
  complete_end,          // infinite length (double/triple root, or growth <= 2 at infinity)
  finite_infinite_end,   // unbounded end at finite distance (growth > 2)
  finite_simple_root,    // excluded simple root at finite distance
};

std::string to_string(EndBehaviour e);

struct CompletenessVerdict {
  bool complete = false;
  std::string reason;
  EndBehaviour lower = EndBehaviour::closes_smoothly;
  EndBehaviour upper = EndBehaviour::closes_smoothly;
};

/// Analytic decision from root multiplicities and the degree of p. Throws
/// UnsupportedError when p is not given as a polynomial.
CompletenessVerdict completeness_verdict(const ProfileCurve& curve);

/// Numerical cross-check: partial lengths of dK / (2 sqrt p) towards each end
/// over six decades (distance 10^-k from a root, cutoff 10^k at infinity).
struct LengthProbe {
  std::vector<double> lower_increments;
  std::vector<double> upper_increments;
  bool lower_finite = true;
  bool upper_finite = true;
};

LengthProbe probe_lengths(const ProfileCurve& curve, double cutoff = 1e6);

/// Metric completeness plus G-integrability gives a complete solution.
struct SolutionReport {
  bool complete_solution = false;
  std::string solution_label;
  std::string justification;
  /// Set when the solution is realized as the quotient of a source fiber of a G-integration.
  bool source_fiber = false;
};

SolutionReport complete_solution_report(const CompletenessVerdict& metric, Verdict g_integrable,
                                        bool simply_connected, const std::string& solution_label);

}  // namespace cartan
