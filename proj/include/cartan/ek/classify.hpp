#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cartan/ek/cubic.hpp"
#include "cartan/metric_analysis.hpp"
#include "cartan/monodromy.hpp"
#include "cartan/rational.hpp"

namespace cartan::ek {

enum class LeafKind { point, cylinder, plane, sphere };

std::string to_string(LeafKind k);

/// One leaf of the level set {I1 = c1, I2 = c2}.
struct LeafFamily {
  LeafKind kind = LeafKind::point;
  /// K-range of the leaf; for a point leaf lower.value == upper.value is its K.
  ProfileCurve curve;
  std::string pi1;
  std::string pi2;
  Verdict integrable = Verdict::undecided;
  std::optional<double> ratio;  // sphere leaves: (4c1 - r2^2) / (r3^2 - 4c1)
  std::optional<RationalityVerdict> rationality;
  CompletenessVerdict completeness;
  SolutionReport solution;
  std::string solution_label;
  std::string frame_bundle_label;
  /// Constant curvature solutions sit over point leaves.
  bool constant_curvature = false;

  double point_k() const { return curve.lower.value; }
};

struct ClassifyOptions {
  std::int64_t denominator_bound = 1'000'000;
  double rationality_tol = 1e-12;
};

/// All leaves of the level set, ordered by K.
std::vector<LeafFamily> classify(double c1, double c2, const ClassifyOptions& opts = {});

/// c1, c2 of the level set through the constant-curvature point (k, 0, 0, 0).
std::pair<double, double> constant_curvature_level(double k);

struct GermSymmetry {
  std::string group;  // "U(1)" or "trivial"
  double t_norm = 0.0;
  /// |T| is within the band where the verdict is sensitive to rounding.
  bool near_degenerate = false;
  double tolerance = 0.0;
};

/// Symmetry group of the germ of a solution through x: U(1) iff T = 0.
/// The warning band is [tol/10, 1e-6].
GermSymmetry germ_symmetry(const Vector& x, double tol = 1e-10);

/// A row of the table of 1-connected solutions. Rows with two leaf families
/// carry one sub-entry per family.
struct ClassificationRow {
  std::string condition;
  std::vector<std::string> frame_bundle;
  std::string solution;
  std::vector<std::string> completeness;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// The nine rows, each produced by classifying a representative level set.
std::vector<ClassificationRow> table1();
/// Aligned text table; byte-stable.
std::string render_table1(const std::vector<ClassificationRow>& rows);

}  // namespace cartan::ek
