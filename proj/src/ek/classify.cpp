#include "cartan/ek/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cartan/ek/leaves.hpp"

namespace cartan::ek {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

ProfileEnd minus_infinity() { return {-inf, true, 0, false}; }
ProfileEnd root_end(const Root& r, bool included) { return {r.value, false, r.multiplicity, included}; }

LeafFamily two_dim(const CubicProfile& prof, LeafKind kind, ProfileEnd lower, ProfileEnd upper) {
  LeafFamily fam;
  fam.kind = kind;
  fam.curve.coeffs.assign(prof.coeffs.begin(), prof.coeffs.end());
  fam.curve.lower = lower;
  fam.curve.upper = upper;
  fam.completeness = completeness_verdict(fam.curve);
  return fam;
}

/// Planes and cylinders have pi_2 = 1, so the U(1)-monodromy is trivial.
LeafFamily open_leaf(const CubicProfile& prof, LeafKind kind, ProfileEnd lower, ProfileEnd upper) {
  LeafFamily fam = two_dim(prof, kind, lower, upper);
  fam.pi1 = kind == LeafKind::cylinder ? "Z" : "1";
  fam.pi2 = "1";
  fam.integrable = Verdict::yes;
  fam.solution_label = "ℝ²";
  fam.frame_bundle_label = kind == LeafKind::cylinder ? "(ℝ²×ℝ)/ℤ" : "ℝ²×𝕊¹";
  fam.solution = complete_solution_report(fam.completeness, fam.integrable, true, fam.solution_label);
  return fam;
}

LeafFamily point_leaf(const CubicProfile& prof, const Root& r) {
  LeafFamily fam;
  fam.kind = LeafKind::point;
  fam.curve.coeffs.assign(prof.coeffs.begin(), prof.coeffs.end());
  fam.curve.lower = root_end(r, true);
  fam.curve.upper = root_end(r, true);
  fam.pi1 = "1";
  fam.pi2 = "1";
  fam.integrable = Verdict::yes;
  fam.constant_curvature = true;
  fam.completeness.complete = true;
  fam.completeness.reason = "point leaf: the solution is the complete space form of curvature K";
  const double k = r.value;
  const double tiny = 1e-12 * prof.scale();
  if (std::fabs(k) <= tiny) {
    fam.solution_label = "ℝ²";
    fam.frame_bundle_label = "SO(2)⋉ℝ²";
  } else if (k > 0) {
    fam.solution_label = "𝕊²";
    fam.frame_bundle_label = "𝕊³";
  } else {
    fam.solution_label = "ℍ²";
    fam.frame_bundle_label = "SO(2,1)";
  }
  fam.solution = complete_solution_report(fam.completeness, fam.integrable, true, fam.solution_label);
  return fam;
}

LeafFamily sphere_leaf(const CubicProfile& prof, const ClassifyOptions& opts) {
  const Root& r2 = prof.roots[1];
  const Root& r3 = prof.roots[2];
  LeafFamily fam = two_dim(prof, LeafKind::sphere, root_end(r2, true), root_end(r3, true));
  fam.pi1 = "1";
  fam.pi2 = "Z";
  fam.ratio = sphere_periods(prof).ratio;
  fam.rationality = test_rationality(*fam.ratio, opts.denominator_bound, opts.rationality_tol);
  switch (fam.rationality->kind) {
    case Rationality::rational: {
      fam.integrable = Verdict::yes;
      std::ostringstream label;
      label << "ℂℙ¹_{" << fam.rationality->p << "," << fam.rationality->q << "}";
      fam.solution_label = label.str();
      fam.frame_bundle_label = "𝕊³";
      break;
    }
    case Rationality::irrational:
      fam.integrable = Verdict::no;
      fam.solution_label = "none";
      fam.frame_bundle_label = "none";
      break;
    case Rationality::undecided:
      fam.integrable = Verdict::undecided;
      fam.solution_label = "undecided";
      fam.frame_bundle_label = "undecided";
      break;
  }
  fam.solution = complete_solution_report(fam.completeness, fam.integrable, true, fam.solution_label);
  return fam;
}

std::size_t codepoints(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width - std::min(width, codepoints(s)), ' ');
}

}  // namespace

std::string to_string(LeafKind k) {
  switch (k) {
    case LeafKind::point: return "point";
    case LeafKind::cylinder: return "cylinder";
    case LeafKind::plane: return "plane";
    case LeafKind::sphere: return "sphere";
  }
  return "point";
}

std::vector<LeafFamily> classify(double c1, double c2, const ClassifyOptions& opts) {
  const CubicProfile prof = cubic_profile(c1, c2);
  std::vector<LeafFamily> out;
  if (prof.triple_root()) {
    out.push_back(open_leaf(prof, LeafKind::cylinder, minus_infinity(), root_end(prof.roots[0], false)));
    out.push_back(point_leaf(prof, prof.roots[0]));
  } else if (prof.roots.size() == 2) {
    const bool first_double = prof.roots[0].multiplicity == 2;
    const Root& dbl = first_double ? prof.roots[0] : prof.roots[1];
    const Root& simple = first_double ? prof.roots[1] : prof.roots[0];
    if (first_double) {
      // Double root below the simple one (c2 > 0): the double root splits the
      // positive set of p into a cylinder and a plane.
      out.push_back(open_leaf(prof, LeafKind::cylinder, minus_infinity(), root_end(dbl, false)));
      out.push_back(point_leaf(prof, dbl));
      out.push_back(open_leaf(prof, LeafKind::plane, root_end(dbl, false), root_end(simple, true)));
    } else {
      out.push_back(open_leaf(prof, LeafKind::plane, minus_infinity(), root_end(simple, true)));
      out.push_back(point_leaf(prof, dbl));
    }
  } else if (prof.roots.size() == 1) {
    out.push_back(open_leaf(prof, LeafKind::plane, minus_infinity(), root_end(prof.roots[0], true)));
  } else {
    out.push_back(open_leaf(prof, LeafKind::plane, minus_infinity(), root_end(prof.roots[0], true)));
    out.push_back(sphere_leaf(prof, opts));
  }
  return out;
}

std::pair<double, double> constant_curvature_level(double k) {
  return {k * k / 4, -k * k * k / 6};
}

GermSymmetry germ_symmetry(const Vector& x, double tol) {
  GermSymmetry g;
  g.tolerance = tol;
  g.t_norm = std::hypot(x[1], x[2]);
  g.group = g.t_norm < tol ? "U(1)" : "trivial";
  g.near_degenerate = g.t_norm >= tol / 10 && g.t_norm <= 1e-6;
  return g;
}

std::vector<ClassificationRow> table1() {
  struct Representative {
    const char* condition;
    double c1, c2;
    std::vector<LeafKind> kinds;
  };
  const auto cc_pos = constant_curvature_level(1.0);
  const auto cc_neg = constant_curvature_level(-1.0);
  const std::vector<Representative> representatives = {
      {"K=0", 0.0, 0.0, {LeafKind::point}},
      {"K=c>0", cc_pos.first, cc_pos.second, {LeafKind::point}},
      {"K=c<0", cc_neg.first, cc_neg.second, {LeafKind::point}},
      {"Δ=0, c1=c2=0", 0.0, 0.0, {LeafKind::cylinder}},
      {"Δ=0, c2<0", 1.0, -4.0 / 3.0, {LeafKind::plane}},
      {"Δ=0, c2>0", 1.0, 4.0 / 3.0, {LeafKind::cylinder, LeafKind::plane}},
      {"Δ<0", 0.0, 1.0, {LeafKind::plane}},
      {"Δ>0", 1.0, 0.0, {LeafKind::plane}},
      {"(if (4c1-r2²)/(r3²-4c1)=p/q)", 1.0, 0.0, {LeafKind::sphere}},
  };
  std::vector<ClassificationRow> rows;
  for (const Representative& rep : representatives) {
    ClassificationRow row;
    row.condition = rep.condition;
    row.c1 = rep.c1;
    row.c2 = rep.c2;
    const std::vector<LeafFamily> leaves = classify(rep.c1, rep.c2);
    for (LeafKind kind : rep.kinds) {
      const auto it = std::find_if(leaves.begin(), leaves.end(), [kind](const LeafFamily& f) { return f.kind == kind; });
      if (it == leaves.end()) continue;
      std::string frame = it->frame_bundle_label;
      // A second family in the same row is listed as the alternative bundle.
      if (!row.frame_bundle.empty()) frame = "(" + frame + ")";
      row.frame_bundle.push_back(frame);
      row.completeness.push_back(it->completeness.complete ? "complete" : "incomplete");
      // Sphere rows hold for any rational ratio p/q, so the label stays generic.
      row.solution = kind == LeafKind::sphere ? "ℂℙ¹_{p,q}" : it->solution_label;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string render_table1(const std::vector<ClassificationRow>& rows) {
  const std::string head[3] = {"Conditions", "U(1)-frame bundle", "Solutions"};
  std::size_t w[3] = {codepoints(head[0]), codepoints(head[1]), codepoints(head[2])};
  for (const ClassificationRow& r : rows) {
    w[0] = std::max(w[0], codepoints(r.condition));
    for (const std::string& f : r.frame_bundle) w[1] = std::max(w[1], codepoints(f));
    w[2] = std::max(w[2], codepoints(r.solution));
  }
  std::ostringstream out;
  auto line = [&](const std::string& a, const std::string& b, const std::string& c) {
    std::string s = pad(a, w[0]) + " | " + pad(b, w[1]) + " | " + c;
    s.erase(s.find_last_not_of(' ') + 1);
    out << s << '\n';
  };
  line(head[0], head[1], head[2]);
  out << std::string(w[0], '-') << "-+-" << std::string(w[1], '-') << "-+-" << std::string(w[2], '-') << '\n';
  for (const ClassificationRow& r : rows) {
    for (std::size_t i = 0; i < std::max<std::size_t>(1, r.frame_bundle.size()); ++i) {
      line(i == 0 ? r.condition : "", i < r.frame_bundle.size() ? r.frame_bundle[i] : "", i == 0 ? r.solution : "");
    }
  }
  return out.str();
}

}  // namespace cartan::ek
