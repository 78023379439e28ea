#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cartan/foliation.hpp"
#include "cartan/model.hpp"
#include "cartan/quadrature.hpp"
#include "cartan/rational.hpp"

namespace cartan {

/// Metric splitting sigma: TL -> (ker rho)^perp of 0 -> ker rho -> A|_L -> TL -> 0.
/// The model must outlive the splitting.
class Splitting {
 public:
  /// Uses the model's fiber metric <u,v> + tr(a^T b)/2.
  explicit Splitting(const CartanModel& model, RankOptions rank = {});
  Splitting(const CartanModel& model, Matrix metric, RankOptions rank = {});

  const CartanModel& model() const { return *model_; }
  const Matrix& metric() const { return metric_; }

  /// sigma_x(v): the metric-least-norm preimage of v (of its projection onto
  /// the leaf tangent space when v is not tangent).
  Vector sigma(const Vector& x, const Vector& v) const;
  /// k x d matrix of sigma_x, and the smallest retained singular value.
  Matrix sigma_matrix(const Vector& x, double* smallest = nullptr) const;

 private:
  const CartanModel* model_;
  Matrix metric_;
  Matrix l_inv_t_;  // L^{-T} with metric = L L^T
  RankOptions rank_;
};

/// Omega_sigma(v, w) = sigma([V, W]) - [sigma V, sigma W] at x, with V, W the
/// leaf-tangent extensions y -> rho_y sigma_y(v). Throws SingularityError when
/// x is close to a rank drop of the anchor.
Vector splitting_curvature(const Splitting& split, const Vector& x, const Vector& v,
                           const Vector& w, const FiniteDifference& fd = {});

enum class BoundaryClass { contractible_sphere_cycle, g_orbit_boundary };

std::string to_string(BoundaryClass b);

/// A map [0,1]^2 -> leaf. The Jacobian (d x 2, columns d/ds, d/dt) is taken by
/// finite differences when not supplied.
struct DiskPatch {
  std::function<Vector(double, double)> param;
  std::function<Matrix(double, double)> jacobian;
  BoundaryClass boundary = BoundaryClass::contractible_sphere_cycle;
  std::string label;

  Matrix jacobian_at(double s, double t) const;
};

/// Sub-rectangle [s0,s1] x [t0,t1] rescaled to the unit square.
DiskPatch restrict_patch(const DiskPatch& patch, double s0, double s1, double t0, double t1);
/// Same image with the orientation reversed (s -> 1 - s).
DiskPatch reverse_patch(const DiskPatch& patch);

/// Flat frame of ker rho along the leaf: x -> k x r matrix of fiber vectors.
using FlatFrame = std::function<Matrix(const Vector&)>;

struct PeriodOptions {
  QuadOptions quad{1e-12, 1e-9, 4000};
  FiniteDifference fd;
  /// Number of integrand evaluations on which centrality is spot-checked.
  int centrality_checks = 8;
  double centrality_tol = 1e-7;
};

struct PeriodResult {
  Vector value;  // coefficients over the flat frame
  double error = 0.0;
  int cells = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Integral of the pulled-back Omega_sigma over the patch, as coefficients
/// over the flat frame. Throws CentralityError when a spot check finds
/// [Omega, k] != 0 for an isotropy element k.
PeriodResult period(const Splitting& split, const DiskPatch& patch, const FlatFrame& frame,
                    const PeriodOptions& opts = {});

/// Cycles through a base point of a leaf that generate its (G-)monodromy.
struct LeafCycles {
  std::string leaf;
  std::vector<DiskPatch> spheres;      // generators of pi_2(L)
  std::vector<DiskPatch> orbit_disks;  // disks with boundary on the orbit x.G
  FlatFrame frame;
  /// Point on the boundary orbit, where the G-splitting condition is checked.
  Vector orbit_point;
  /// Optional closed-form values for the periods, in the same order.
  std::vector<double> reference_spheres;
  std::vector<double> reference_disks;
  /// Set when pi_2(L) = 1 and the restricted G-monodromy is trivial for topological reasons.
  bool topologically_trivial = false;
  std::string topology_note;
};

enum class Verdict { yes, no, undecided };

std::string to_string(Verdict v);

struct Generator {
  std::string source;  // "sphere" or "orbit_disk"
  std::string label;
  double value = 0.0;  // coefficient over the flat section (rank-one isotropy)
  double error = 0.0;
  std::optional<double> reference;
  bool reference_agrees = false;
};

struct MonodromyReport {
  std::string group_kind;  // "monodromy" or "g_monodromy"
  std::string leaf;
  std::vector<Generator> generators;
  Verdict discrete = Verdict::undecided;
  Verdict integrable = Verdict::undecided;
  /// Rationality of the ratio of the second orbit-disk period to the first.
  std::optional<RationalityVerdict> rationality;
  std::optional<double> ratio;
  bool used_reference = false;
  bool g_splitting = false;
  double g_splitting_residual = 0.0;
  std::string method;
  double quad_tol = 0.0;
  std::int64_t denominator_bound = 0;
  double rationality_tol = 0.0;
};

struct MonodromyOptions {
  PeriodOptions period;
  std::int64_t denominator_bound = 1'000'000;
  double rationality_tol = 1e-12;
  double g_splitting_tol = 1e-8;
  /// Reference and quadrature agree when |num - ref| <= max(agree_rel |ref|, 10 err).
  double agree_rel = 1e-6;
};

/// Periods over the pi_2 generators.
MonodromyReport monodromy(const Splitting& split, const LeafCycles& cycles,
                          const MonodromyOptions& opts = {});
/// Periods over pi_2 generators and orbit disks; discreteness by rational
/// dependence of the generators. Undecided when the splitting is not a
/// G-splitting along the boundary orbit.
MonodromyReport g_monodromy(const Splitting& split, const LeafCycles& cycles,
                            const MonodromyOptions& opts = {});

}  // namespace cartan
